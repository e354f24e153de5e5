#include "fracpow/rational.hpp"

#include <charconv>
#include <numeric>

namespace fracpow {

  namespace {
    __extension__ typedef __int128 i128;

    Rational make(i128 n, i128 d) {
      if (d == 0) {
        throw std::domain_error("zero denominator");
      }
      if (d < 0) {
        n = -n;
        d = -d;
      }
      i128 a = n < 0 ? -n : n;
      i128 b = d;
      while (b != 0) {
        i128 t = a % b;
        a      = b;
        b      = t;
      }
      if (a > 1) {
        n /= a;
        d /= a;
      }
      constexpr i128 lim = INT64_MAX;
      if (n > lim || n < -lim || d > lim) {
        throw std::overflow_error("rational overflow");
      }
      return Rational(static_cast<std::int64_t>(n), static_cast<std::int64_t>(d));
    }

    std::int64_t parse_int(std::string_view s) {
      std::int64_t v   = 0;
      auto         res = std::from_chars(s.data(), s.data() + s.size(), v);
      if (res.ec != std::errc{} || res.ptr != s.data() + s.size() || s.empty()) {
        throw std::invalid_argument("bad integer '" + std::string(s) + "'");
      }
      return v;
    }

    std::string_view trim(std::string_view s) {
      while (!s.empty() && s.front() == ' ') {
        s.remove_prefix(1);
      }
      while (!s.empty() && s.back() == ' ') {
        s.remove_suffix(1);
      }
      return s;
    }
  }  // namespace

  Rational::Rational(std::int64_t n, std::int64_t d) {
    if (d == 0) {
      throw std::domain_error("zero denominator");
    }
    if (d < 0) {
      n = -n;
      d = -d;
    }
    std::int64_t g = std::gcd(n, d);
    num_           = n / g;
    den_           = d / g;
  }

  Rational Rational::parse(std::string_view text) {
    text     = trim(text);
    auto pos = text.find('/');
    if (pos == std::string_view::npos) {
      return Rational(parse_int(text));
    }
    return Rational(parse_int(trim(text.substr(0, pos))), parse_int(trim(text.substr(pos + 1))));
  }

  std::string Rational::str() const {
    if (den_ == 1) {
      return std::to_string(num_);
    }
    return std::to_string(num_) + "/" + std::to_string(den_);
  }

  std::int64_t Rational::floor() const {
    std::int64_t q = num_ / den_;
    if (num_ % den_ != 0 && num_ < 0) {
      --q;
    }
    return q;
  }

  std::int64_t Rational::ceil() const {
    std::int64_t q = num_ / den_;
    if (num_ % den_ != 0 && num_ > 0) {
      ++q;
    }
    return q;
  }

  Rational operator+(Rational const& x, Rational const& y) {
    return make(i128{x.num_} * y.den_ + i128{y.num_} * x.den_, i128{x.den_} * y.den_);
  }
  Rational operator-(Rational const& x, Rational const& y) {
    return make(i128{x.num_} * y.den_ - i128{y.num_} * x.den_, i128{x.den_} * y.den_);
  }
  Rational operator*(Rational const& x, Rational const& y) {
    return make(i128{x.num_} * y.num_, i128{x.den_} * y.den_);
  }
  Rational operator/(Rational const& x, Rational const& y) {
    return make(i128{x.num_} * y.den_, i128{x.den_} * y.num_);
  }

  std::strong_ordering operator<=>(Rational const& x, Rational const& y) {
    i128 l = i128{x.num_} * y.den_;
    i128 r = i128{y.num_} * x.den_;
    return l < r ? std::strong_ordering::less : l > r ? std::strong_ordering::greater : std::strong_ordering::equal;
  }

  RationalInterval RationalInterval::parse(std::string_view text) {
    text = trim(text);
    RationalInterval out;
    if (!text.empty() && (text.front() == '[' || text.front() == '(')) {
      out.lower_closed = text.front() == '[';
      text.remove_prefix(1);
    }
    if (!text.empty() && (text.back() == ']' || text.back() == ')')) {
      out.upper_closed = text.back() == ']';
      text.remove_suffix(1);
    }
    auto pos = text.find("..");
    if (pos == std::string_view::npos) {
      throw std::invalid_argument("interval needs the form p/q..r/s");
    }
    out.lower = Rational::parse(text.substr(0, pos));
    out.upper = Rational::parse(text.substr(pos + 2));
    if (out.upper < out.lower || (out.upper == out.lower && !(out.lower_closed && out.upper_closed))) {
      throw std::invalid_argument("empty interval");
    }
    return out;
  }

  bool RationalInterval::contains(Rational const& x) const {
    bool lo = lower_closed ? lower <= x : lower < x;
    bool hi = upper_closed ? x <= upper : x < upper;
    return lo && hi;
  }

  std::string RationalInterval::str() const {
    return std::string(lower_closed ? "[" : "(") + lower.str() + ".." + upper.str() + (upper_closed ? "]" : ")");
  }

}  // namespace fracpow
