// Words over the natural numbers extended by the primed letters 0' and 1',
// exponents a/b, and fractional-power detection.

#ifndef FRACPOW_WORD_HPP_
#define FRACPOW_WORD_HPP_

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace fracpow {

  class Letter {
   public:
    static constexpr std::uint32_t kPrimeBit = 0x80000000u;
    static constexpr std::uint32_t kMaxValue = 0x7fffffffu;

    constexpr Letter() = default;
    constexpr Letter(std::uint32_t value) : bits_(value) {}  // NOLINT

    static Letter primed(std::uint32_t value) {
      if (value > 1) {
        throw std::invalid_argument("only 0 and 1 may be primed");
      }
      Letter l;
      l.bits_ = value | kPrimeBit;
      return l;
    }

    // Letter value after the coding 0' -> 0, 1' -> 1.
    constexpr std::uint32_t value() const noexcept {
      return bits_ & kMaxValue;
    }
    constexpr bool is_primed() const noexcept {
      return (bits_ & kPrimeBit) != 0;
    }
    constexpr std::uint32_t bits() const noexcept {
      return bits_;
    }
    constexpr Letter coded() const noexcept {
      return Letter(value());
    }

    // Structural comparison: 0' and 0 are different letters.
    friend constexpr bool operator==(Letter, Letter) = default;
    friend constexpr auto operator<=>(Letter, Letter) = default;

   private:
    std::uint32_t bits_ = 0;
  };

  using Word = std::vector<Letter>;

  // Exponent a/b with gcd(a, b) = 1 and a/b > 1.
  struct Fraction {
    std::uint32_t a = 2;
    std::uint32_t b = 1;

    Fraction() = default;
    Fraction(std::uint32_t num, std::uint32_t den);

    // Parses "a/b" or a bare integer.
    static Fraction parse(std::string_view text);

    std::string str() const;
    bool is_integer() const noexcept {
      return b == 1;
    }
    // True when 1 < a/b < 2.
    bool below_two() const noexcept {
      return a < 2 * b;
    }

    friend bool operator==(Fraction const&, Fraction const&) = default;
  };

  enum class AvoidMode { exact, at_least, greater };

  AvoidMode parse_mode(std::string_view text);
  std::string_view mode_name(AvoidMode mode);

  // Word text format: decimal values separated by whitespace, primes as 0'.
  Word        parse_word(std::string_view text);
  std::string format_word(Word const& w, std::string_view sep = " ");
  // Compact rendering without separators; only sensible for letters < 10.
  std::string format_digits(Word const& w);
  // Parses a digit string such as "0102" (letters 0..9, optional primes).
  Word digits(std::string_view text);

  Word coded(Word const& w);

  bool is_fractional_power(Word const& w, Fraction f);

  struct PowerFactor {
    std::size_t start;
    std::size_t m;
    friend bool operator==(PowerFactor const&, PowerFactor const&) = default;
  };

  // Leftmost, then shortest, factor of w that is an a/b-power.
  std::optional<PowerFactor> find_power_factor(Word const& w, Fraction f);

  struct SuffixPower {
    std::size_t length;  // length of the forbidden suffix
    std::size_t period;  // its period; for exact mode period = m * b
    friend bool operator==(SuffixPower const&, SuffixPower const&) = default;
  };

  // Shortest forbidden power suffix of w under the given mode.  In exact mode
  // the suffix lengths tested are m * a; in the other modes every suffix whose
  // exponent |suffix| / period lies in the mode's range is forbidden.
  std::optional<SuffixPower> power_suffix(Word const& w,
                                          Fraction    f,
                                          AvoidMode   mode = AvoidMode::exact);

  // Exponent m of an exact-mode suffix power.
  inline std::size_t suffix_multiplier(SuffixPower const& s, Fraction f) {
    return s.period / f.b;
  }

  // Lexicographic comparison by coded value; a proper prefix compares equal.
  std::strong_ordering compare_lex(Word const& w1, Word const& w2);

  std::map<std::uint32_t, std::size_t> first_occurrences(Word const& w);

}  // namespace fracpow

#endif  // FRACPOW_WORD_HPP_
