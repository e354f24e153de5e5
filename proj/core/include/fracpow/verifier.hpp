// Explicit verification that a uniform morphism is a/b-power-free and that
// its fixed point is the lexicographically least a/b-power-free word.

#ifndef FRACPOW_VERIFIER_HPP_
#define FRACPOW_VERIFIER_HPP_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "fracpow/morphism.hpp"
#include "fracpow/word.hpp"

namespace fracpow {

  enum class Status { proved, refuted, inconclusive, hypothesis_violation };

  std::string_view status_name(Status s);
  int              exit_code(Status s);

  class HypothesisViolation : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
  };

  class NoLocatingLength : public std::runtime_error {
   public:
    NoLocatingLength(std::string const& what, std::size_t p, std::size_t q)
        : std::runtime_error(what), first(p), second(q) {}
    std::size_t first;
    std::size_t second;
  };

  class NoUniqueFactor : public std::runtime_error {
   public:
    NoUniqueFactor(std::string const& what, std::size_t pos)
        : std::runtime_error(what), position(pos) {}
    std::size_t position;
  };

  // The word tau(v) phi(n_0) phi(n_1) ... in which every image-final letter is
  // an independent unknown ranging over the values last(n).
  class SymbolicStream {
   public:
    static constexpr std::uint32_t kSymbol = 0xffffffffu;

    explicit SymbolicStream(ExplicitMorphism const& m, bool with_transient = false);

    // Letter value, or kSymbol for an image-final letter.
    std::uint32_t at(std::uint64_t g) const noexcept {
      if (g < vlen_) {
        return v_[g];
      }
      std::uint64_t off = (g - vlen_) % k_;
      return off + 1 == k_ ? kSymbol : u_[off];
    }
    // Index of the image containing position g >= |v|.
    std::uint64_t block(std::uint64_t g) const noexcept {
      return (g - vlen_) / k_;
    }
    bool compatible(std::uint32_t symbol_value) const {
      return m_->achievable(symbol_value);
    }
    std::uint64_t transient_length() const noexcept {
      return vlen_;
    }
    std::uint32_t k() const noexcept {
      return k_;
    }
    ExplicitMorphism const& morphism() const noexcept {
      return *m_;
    }

   private:
    ExplicitMorphism const*    m_;
    std::vector<std::uint32_t> u_;
    std::vector<std::uint32_t> v_;
    std::uint32_t              k_;
    std::uint64_t              vlen_;
  };

  struct LocatingResult {
    std::size_t length = 0;
    // Two positions whose factors of length `length - 1` can coincide.
    std::size_t witness_first  = 0;
    std::size_t witness_second = 0;
  };

  // Minimal length located by the restriction of m to the natural numbers.
  LocatingResult locating_length_explicit(ExplicitMorphism const& m);

  struct Violation {
    std::uint32_t m;
    std::uint64_t start;  // position in the symbolic stream
    std::string   witness;
  };

  // First window of length mult * a in phi(n_0) phi(n_1) ... whose x and z
  // halves can be equal.
  std::optional<Violation> window_scan(ExplicitMorphism const& m, Fraction f, std::uint32_t mult);

  struct WindowResult {
    std::uint32_t            m;
    std::optional<Violation> violation;
  };

  struct AnchorHint {
    std::size_t position;
    std::size_t length;
  };

  struct ProofReport {
    Fraction      fraction;
    std::uint32_t k = 0;
    std::uint32_t d = 0;
    std::string   method = "locating";
    std::size_t   locating_length = 0;
    std::size_t   minimality_first = 0;
    std::size_t   minimality_second = 0;
    std::int64_t  m_max = 0;
    bool          short_words_check = false;
    std::vector<WindowResult> window_results;

    std::optional<std::size_t>   transient_unique_length;
    std::optional<AnchorHint>    anchor;
    std::int64_t                 transient_m_max = 0;
    std::uint32_t                transient_m_checked = 0;
    std::vector<WindowResult>    transient_window_results;

    bool                                 leastness_checked = false;
    std::uint32_t                        leastness_cap = 0;
    std::map<std::string, std::uint32_t> leastness_witnesses;
    std::vector<std::string>             unresolved;

    Status                   status = Status::inconclusive;
    std::vector<std::string> notes;
  };

  struct VerifyOptions {
    unsigned jobs = 1;
    // Transient window sweep stops here unless deep is set.
    std::uint32_t max_window_m = 200;
    bool          deep         = false;
    std::uint32_t resume_from  = 0;  // first transient m to scan
    std::function<void(std::uint32_t)> on_window_done;
    std::optional<AnchorHint>          anchor;
  };

  ProofReport verify_free_explicit(ExplicitMorphism const& m, Fraction f, VerifyOptions const& opt = {});

  struct TransientUniqueness {
    std::size_t length;
    std::size_t witness_first;
    std::size_t witness_second;
  };

  // Length l' such that each factor of length l' starting inside the
  // transient occurs once.  Positions listed in `skip` are excluded.
  TransientUniqueness transient_unique_length(ExplicitMorphism const&  m,
                                              std::vector<std::size_t> skip = {});

  // Checks that the anchor factor occurs exactly once in a long expansion.
  bool check_anchor(ExplicitMorphism const& m, AnchorHint const& hint, std::size_t expand_to);

  ProofReport verify_transient_free(ExplicitMorphism const& m, Fraction f, VerifyOptions const& opt = {});

  std::uint32_t default_cap(std::size_t ell, Fraction f);

  // Decrement search; fills the leastness fields of `report`.
  void verify_lex_least(ExplicitMorphism const& m, Fraction f, std::uint32_t cap, ProofReport& report);

  // Brute-force leastness replay on a concrete prefix: for every nonzero
  // letter and every smaller value, the modified prefix ends with a power.
  // Returns the first failing position.
  std::optional<std::size_t> replay_leastness(Word const& w, Fraction f);

}  // namespace fracpow

#endif  // FRACPOW_VERIFIER_HPP_
