// Exact rationals and rational intervals with endpoint closedness.

#ifndef FRACPOW_RATIONAL_HPP_
#define FRACPOW_RATIONAL_HPP_

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace fracpow {

  class Rational {
   public:
    Rational() = default;
    Rational(std::int64_t n) : num_(n), den_(1) {}  // NOLINT(google-explicit-constructor)
    Rational(std::int64_t n, std::int64_t d);

    static Rational parse(std::string_view text);

    std::int64_t num() const noexcept {
      return num_;
    }
    std::int64_t den() const noexcept {
      return den_;
    }
    std::string str() const;

    // Smallest integer >= this, largest integer <= this.
    std::int64_t ceil() const;
    std::int64_t floor() const;

    friend Rational operator+(Rational const& x, Rational const& y);
    friend Rational operator-(Rational const& x, Rational const& y);
    friend Rational operator*(Rational const& x, Rational const& y);
    friend Rational operator/(Rational const& x, Rational const& y);
    Rational        operator-() const {
      return Rational(-num_, den_);
    }

    friend bool operator==(Rational const&, Rational const&) = default;
    friend std::strong_ordering operator<=>(Rational const& x, Rational const& y);

   private:
    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
  };

  // An interval of rationals; "(5/3..2)" is open, "[5/3..2)" half-open.
  struct RationalInterval {
    Rational lower;
    Rational upper;
    bool     lower_closed = false;
    bool     upper_closed = false;

    static RationalInterval open(Rational lo, Rational hi) {
      return {lo, hi, false, false};
    }
    static RationalInterval parse(std::string_view text);

    bool        contains(Rational const& x) const;
    bool        contains_interior(Rational const& x) const {
      return lower < x && x < upper;
    }
    std::string str() const;

    friend bool operator==(RationalInterval const&, RationalInterval const&) = default;
  };

}  // namespace fracpow

#endif  // FRACPOW_RATIONAL_HPP_
