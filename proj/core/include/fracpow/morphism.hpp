// Uniform morphisms of the form phi(n) = u (n + d) on the natural numbers,
// optionally extended by a transient image for 0' and explicit images for
// primed letters.

#ifndef FRACPOW_MORPHISM_HPP_
#define FRACPOW_MORPHISM_HPP_

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "fracpow/word.hpp"

namespace fracpow {

  class NotProlongable : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
  };

  class UnknownLetter : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
  };

  struct ExplicitMorphism {
    std::uint32_t k = 2;
    Word          u;  // length k - 1; may contain primed letters
    std::uint32_t d = 1;
    // phi(n) ends with shift_exceptions[n] instead of n + d.
    std::map<std::uint32_t, std::uint32_t> shift_exceptions;
    // When nonempty, phi(0') = transient . phi(0); transient[0] must be 0'.
    Word transient;
    // Full images for primed letters, keyed by Letter::bits().
    std::map<std::uint32_t, Word> primed_overrides;

    // Uniform shift morphism phi(n) = u (n + d).
    static ExplicitMorphism shift(Word u, std::uint32_t d);

    std::uint32_t last(std::uint32_t n) const;
    // True iff some n >= 0 has last(n) == c.
    bool achievable(std::uint32_t c) const;
    bool has_image(Letter c) const;
    Word image(Letter c) const;
    // Image of n >= 0 restricted to the natural numbers: u(n + d) coded.
    Word image_coded(std::uint32_t n) const;
    Letter start() const;
    bool   constant_shift() const noexcept {
      return shift_exceptions.empty();
    }
    bool has_primes() const;

    friend bool operator==(ExplicitMorphism const&, ExplicitMorphism const&) = default;
  };

  Word apply(ExplicitMorphism const& m, Word const& w);

  // Length-n prefix of tau(phi^infinity(start)).
  Word expand_fixed_point(ExplicitMorphism const& m, std::size_t n);
  // Same, without applying the coding.
  Word expand_fixed_point_raw(ExplicitMorphism const& m, std::size_t n);

  // w(i) from the base-k recurrence; falls back to expansion when primed
  // letters are involved.
  std::uint32_t letter_at(ExplicitMorphism const& m, std::uint64_t i);

  struct CheckResult {
    std::string name;
    bool        passed;
    std::string detail;
  };

  std::vector<CheckResult> validate(ExplicitMorphism const& m);
  bool                     all_passed(std::vector<CheckResult> const& checks);

  // Smallest n for which u (n + d) is an a-power for some integer a >= 2.
  std::optional<std::uint32_t> image_power_witness(ExplicitMorphism const& m);

}  // namespace fracpow

#endif  // FRACPOW_MORPHISM_HPP_
