#include "fracpow/word.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <numeric>
#include <sstream>

namespace fracpow {

  Fraction::Fraction(std::uint32_t num, std::uint32_t den) : a(num), b(den) {
    if (num == 0 || den == 0) {
      throw std::invalid_argument("exponent terms must be positive");
    }
    if (std::gcd(num, den) != 1) {
      throw std::invalid_argument("exponent " + std::to_string(num) + "/"
                                  + std::to_string(den) + " is not reduced");
    }
    if (num <= den) {
      throw std::invalid_argument(
          "exponent " + std::to_string(num) + "/" + std::to_string(den)
          + " must exceed 1: every word of length a is then a power");
    }
  }

  namespace {
    std::uint32_t parse_uint(std::string_view s) {
      std::uint32_t v = 0;
      auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
      if (ec != std::errc() || p != s.data() + s.size() || s.empty()) {
        throw std::invalid_argument("bad integer '" + std::string(s) + "'");
      }
      return v;
    }
  }  // namespace

  Fraction Fraction::parse(std::string_view text) {
    auto slash = text.find('/');
    if (slash == std::string_view::npos) {
      return Fraction(parse_uint(text), 1);
    }
    return Fraction(parse_uint(text.substr(0, slash)),
                    parse_uint(text.substr(slash + 1)));
  }

  std::string Fraction::str() const {
    if (b == 1) {
      return std::to_string(a);
    }
    return std::to_string(a) + "/" + std::to_string(b);
  }

  AvoidMode parse_mode(std::string_view text) {
    if (text == "exact") {
      return AvoidMode::exact;
    }
    if (text == "geq") {
      return AvoidMode::at_least;
    }
    if (text == "gt") {
      return AvoidMode::greater;
    }
    throw std::invalid_argument("unknown mode '" + std::string(text) + "'");
  }

  std::string_view mode_name(AvoidMode mode) {
    switch (mode) {
      case AvoidMode::exact:
        return "exact";
      case AvoidMode::at_least:
        return "geq";
      case AvoidMode::greater:
        return "gt";
    }
    return "exact";
  }

  Word parse_word(std::string_view text) {
    Word        w;
    std::size_t i = 0;
    while (i < text.size()) {
      if (std::isspace(static_cast<unsigned char>(text[i]))) {
        ++i;
        continue;
      }
      std::size_t j = i;
      while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) {
        ++j;
      }
      if (j == i) {
        throw std::invalid_argument("unexpected character in word: '"
                                    + std::string(1, text[i]) + "'");
      }
      auto v = parse_uint(text.substr(i, j - i));
      if (j < text.size() && text[j] == '\'') {
        w.push_back(Letter::primed(v));
        ++j;
      } else {
        if (v > Letter::kMaxValue) {
          throw std::out_of_range("letter value too large");
        }
        w.emplace_back(v);
      }
      i = j;
    }
    return w;
  }

  std::string format_word(Word const& w, std::string_view sep) {
    std::string out;
    out.reserve(w.size() * 2);
    for (std::size_t i = 0; i < w.size(); ++i) {
      if (i != 0) {
        out += sep;
      }
      out += std::to_string(w[i].value());
      if (w[i].is_primed()) {
        out += '\'';
      }
    }
    return out;
  }

  std::string format_digits(Word const& w) {
    return format_word(w, "");
  }

  Word digits(std::string_view text) {
    Word w;
    for (std::size_t i = 0; i < text.size(); ++i) {
      char c = text[i];
      if (std::isspace(static_cast<unsigned char>(c))) {
        continue;
      }
      if (!std::isdigit(static_cast<unsigned char>(c))) {
        throw std::invalid_argument("digits: unexpected character");
      }
      std::uint32_t v = static_cast<std::uint32_t>(c - '0');
      if (i + 1 < text.size() && text[i + 1] == '\'') {
        w.push_back(Letter::primed(v));
        ++i;
      } else {
        w.emplace_back(v);
      }
    }
    return w;
  }

  Word coded(Word const& w) {
    Word out;
    out.reserve(w.size());
    for (Letter l : w) {
      out.push_back(l.coded());
    }
    return out;
  }

  bool is_fractional_power(Word const& w, Fraction f) {
    std::size_t n = w.size();
    if (n == 0 || n % f.a != 0) {
      return false;
    }
    std::size_t p = n / f.a * f.b;
    for (std::size_t i = p; i < n; ++i) {
      if (w[i].value() != w[i - p].value()) {
        return false;
      }
    }
    return true;
  }

  std::optional<PowerFactor> find_power_factor(Word const& w, Fraction f) {
    std::size_t                n = w.size();
    std::optional<PowerFactor> best;
    for (std::size_t m = 1; m * f.a <= n; ++m) {
      std::size_t p    = m * f.b;
      std::size_t need = m * (f.a - f.b);
      std::size_t run  = 0;
      // A factor of length m * a starting at s has period p iff the run of
      // matches w[j] = w[j - p] ending at j = s + m * a - 1 has length `need`.
      for (std::size_t j = p; j < n; ++j) {
        run = (w[j].value() == w[j - p].value()) ? run + 1 : 0;
        if (run >= need) {
          std::size_t start = j + 1 - m * f.a;
          if (!best || start < best->start) {
            best = PowerFactor{start, m};
          }
          break;
        }
        if (best && j + 1 >= m * f.a && j + 1 - m * f.a >= best->start) {
          break;
        }
      }
    }
    return best;
  }

  std::optional<SuffixPower> power_suffix(Word const& w,
                                          Fraction    f,
                                          AvoidMode   mode) {
    std::size_t n = w.size();
    if (mode == AvoidMode::exact) {
      for (std::size_t m = 1; m * f.a <= n; ++m) {
        std::size_t p    = m * f.b;
        std::size_t need = m * (f.a - f.b);
        std::size_t j    = 0;
        while (j < need && w[n - 1 - j].value() == w[n - 1 - j - p].value()) {
          ++j;
        }
        if (j == need) {
          return SuffixPower{m * f.a, p};
        }
      }
      return std::nullopt;
    }
    // Longest matching run for each period q, then the shortest length with
    // length / q inside the mode's range.
    std::optional<SuffixPower> best;
    for (std::size_t q = 1; q < n; ++q) {
      std::size_t run = 0;
      while (q + run < n
             && w[n - 1 - run].value() == w[n - 1 - run - q].value()) {
        ++run;
      }
      // Minimal length L with L / q >= a / b (or > a / b).
      std::size_t len = mode == AvoidMode::at_least
                            ? (q * f.a + f.b - 1) / f.b
                            : q * f.a / f.b + 1;
      if (len <= q + run && (!best || len < best->length)) {
        best = SuffixPower{len, q};
      }
    }
    return best;
  }

  std::strong_ordering compare_lex(Word const& w1, Word const& w2) {
    std::size_t n = std::min(w1.size(), w2.size());
    for (std::size_t i = 0; i < n; ++i) {
      auto c = w1[i].value() <=> w2[i].value();
      if (c != 0) {
        return c;
      }
    }
    return std::strong_ordering::equal;
  }

  std::map<std::uint32_t, std::size_t> first_occurrences(Word const& w) {
    std::map<std::uint32_t, std::size_t> out;
    for (std::size_t i = 0; i < w.size(); ++i) {
      out.emplace(w[i].value(), i);
    }
    return out;
  }

}  // namespace fracpow
