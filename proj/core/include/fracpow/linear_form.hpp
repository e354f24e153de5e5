// Integer affine forms alpha*a + beta*b + gamma, extended with two window
// parameters i and j.

#ifndef FRACPOW_LINEAR_FORM_HPP_
#define FRACPOW_LINEAR_FORM_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "fracpow/rational.hpp"

namespace fracpow {

  struct LinearForm {
    std::int64_t alpha = 0;
    std::int64_t beta  = 0;
    std::int64_t gamma = 0;
    std::int64_t ci    = 0;
    std::int64_t cj    = 0;

    static LinearForm constant(std::int64_t c) {
      return {0, 0, c, 0, 0};
    }
    static LinearForm of(std::int64_t alpha, std::int64_t beta, std::int64_t gamma = 0) {
      return {alpha, beta, gamma, 0, 0};
    }
    static LinearForm param_i() {
      return {0, 0, 0, 1, 0};
    }
    static LinearForm param_j() {
      return {0, 0, 0, 0, 1};
    }

    // Parses "2a-2b-1", "-a+2b", "7", "a" (no parameters).
    static LinearForm parse(std::string_view text);

    bool is_zero() const noexcept {
      return alpha == 0 && beta == 0 && gamma == 0 && ci == 0 && cj == 0;
    }
    bool is_constant() const noexcept {
      return alpha == 0 && beta == 0 && ci == 0 && cj == 0;
    }
    bool has_params() const noexcept {
      return ci != 0 || cj != 0;
    }
    LinearForm homogeneous() const {
      return {alpha, beta, 0, 0, 0};
    }
    LinearForm without_params() const {
      return {alpha, beta, gamma, 0, 0};
    }

    std::int64_t eval(std::int64_t a, std::int64_t b, std::int64_t i = 0, std::int64_t j = 0) const;

    // Replace i (or j) by another form that has no i (resp. j).
    LinearForm substitute_i(LinearForm const& v) const;
    LinearForm substitute_j(LinearForm const& v) const;

    // The ratio a/b at which the homogeneous part vanishes, if alpha != 0.
    std::optional<Rational> root() const;

    std::string str() const;

    LinearForm operator-() const {
      return {-alpha, -beta, -gamma, -ci, -cj};
    }
    friend LinearForm operator+(LinearForm const& x, LinearForm const& y) {
      return {x.alpha + y.alpha, x.beta + y.beta, x.gamma + y.gamma, x.ci + y.ci, x.cj + y.cj};
    }
    friend LinearForm operator-(LinearForm const& x, LinearForm const& y) {
      return x + (-y);
    }
    friend LinearForm operator*(std::int64_t c, LinearForm const& x) {
      return {c * x.alpha, c * x.beta, c * x.gamma, c * x.ci, c * x.cj};
    }
    LinearForm& operator+=(LinearForm const& y) {
      return *this = *this + y;
    }
    LinearForm& operator-=(LinearForm const& y) {
      return *this = *this - y;
    }
    friend bool operator==(LinearForm const&, LinearForm const&) = default;
    friend auto operator<=>(LinearForm const&, LinearForm const&) = default;
  };

}  // namespace fracpow

#endif  // FRACPOW_LINEAR_FORM_HPP_
