// Morphisms whose run lengths are affine in a and b, and a prover that
// establishes a/b-power-freeness for every rational in an interval.

#ifndef FRACPOW_SYMBOLIC_HPP_
#define FRACPOW_SYMBOLIC_HPP_

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "fracpow/linear_form.hpp"
#include "fracpow/morphism.hpp"
#include "fracpow/rational.hpp"
#include "fracpow/verifier.hpp"

namespace fracpow {

  class OutOfInterval : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
  };
  class GcdViolation : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
  };
  class ExceptionRational : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
  };
  class UndecidableComparison : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
  };

  // An explicit letter, or the image-final letter n_id + d.
  struct SymLetter {
    bool          symbol = false;
    std::uint32_t value  = 0;
    std::uint32_t id     = 0;

    static SymLetter lit(std::uint32_t v) {
      return {false, v, 0};
    }
    static SymLetter sym(std::uint32_t id) {
      return {true, 0, id};
    }
    friend bool operator==(SymLetter const&, SymLetter const&) = default;
  };

  struct SymBlock {
    SymLetter  letter;
    LinearForm exp;
    friend bool operator==(SymBlock const&, SymBlock const&) = default;
  };

  struct SymbolicWord {
    std::vector<SymBlock> blocks;

    // Renders e.g. "0^{a-1} 1 0^{a-b-1} (n0+1)".
    std::string str(std::uint32_t d) const;
  };

  struct SymbolicMorphism {
    std::string name;
    // phi(n) = blocks (n + d); blocks use explicit letters only.
    std::vector<SymBlock>     blocks;
    std::uint32_t             d = 1;
    LinearForm                k;
    RationalInterval          interval;
    std::vector<std::int64_t> gcd_condition;  // gcd(b, g) = 1 for each g
    std::vector<Rational>     exceptions;
    std::optional<LinearForm> stated_locating;

    // Sum of the block exponents plus one.
    LinearForm image_length() const;
    bool       gcd_ok(std::int64_t b) const;
    // Coprime, inside the interval, gcd condition met, not an exception.
    bool admits(std::int64_t a, std::int64_t b) const;

    friend bool operator==(SymbolicMorphism const&, SymbolicMorphism const&) = default;
  };

  // Checks that the block lengths sum to k - 1 and that nonzero letters
  // appear singly; throws std::invalid_argument otherwise.
  void check_shape(SymbolicMorphism const& m);

  ExplicitMorphism instantiate(SymbolicMorphism const& m, Fraction f);
  // Evaluates the run lengths at (a, b) with only a nonnegativity check.
  ExplicitMorphism instantiate_unchecked(SymbolicMorphism const& m, std::int64_t a, std::int64_t b);

  enum class Verdict { less, less_equal, equal, greater_equal, greater, split, unknown };
  std::string_view verdict_name(Verdict v);

  struct Comparison {
    Verdict                 verdict = Verdict::unknown;
    std::optional<Rational> split_at;
  };

  // Sign of f - g for coprime integers a, b with a/b in I.
  Comparison lf_compare(LinearForm const& f, LinearForm const& g, RationalInterval const& I);

  // a*alpha + b*beta >= min, with (alpha, beta) primitive.
  struct HalfPlane {
    std::int64_t alpha = 0;
    std::int64_t beta  = 0;
    std::int64_t min   = 0;
    friend bool  operator==(HalfPlane const&, HalfPlane const&) = default;
  };

  // Integer points (a, b): either a cone p < a/b < q cut by half-planes, or
  // a line (a0 + a1 s, b0 + b1 s) for s in [s_lo, s_hi].
  struct Domain {
    enum class Kind { cone, line };
    Kind                        kind = Kind::cone;
    RationalInterval            interval;
    std::vector<HalfPlane>      bounds;
    std::int64_t                a0 = 0, a1 = 0, b0 = 0, b1 = 0;
    std::int64_t                s_lo = 0;
    std::optional<std::int64_t> s_hi;

    static Domain cone(Rational lo, Rational hi) {
      Domain d;
      d.interval = RationalInterval::open(lo, hi);
      return d;
    }
    bool        contains(std::int64_t a, std::int64_t b) const;
    std::string str() const;
  };

  struct FactorRow {
    std::vector<SymbolicWord> parts;
    // Window shifts i in [i_lo, i_hi] when parametric; otherwise i = 0.
    bool       parametric = false;
    LinearForm i_lo;
    LinearForm i_hi;
    // Block of the image where the window starts, and its offset there.
    std::size_t start_block = 0;
    LinearForm  start_offset;
  };

  struct FactorTable {
    Domain                 domain;
    std::vector<FactorRow> rows;
  };

  struct SymOptions {
    int      candidate_bound = 10;
    unsigned jobs            = 1;
    // Ignore the morphism's stated exceptions and report what is found.
    bool discover_exceptions = false;
    std::optional<RationalInterval> interval;
    // Extra rationals to exclude, as if stated.
    std::vector<Rational> exclude;
  };

  // Prefix of length L of phi(n_0) phi(n_1) ... on a domain.
  SymbolicWord sym_take(SymbolicMorphism const& m, Domain const& dom, LinearForm const& L);

  // Windows of length mult * a, split as x | y | z.  The interval is split as
  // needed; one table per resulting domain.  Points split off are listed in
  // `points` when given.
  std::vector<FactorTable> sym_factor_table(SymbolicMorphism const&  m,
                                            std::uint32_t            mult,
                                            RationalInterval const&  I,
                                            std::vector<Rational>*   points = nullptr);

  struct ParamRange {
    LinearForm lo;
    LinearForm hi;
  };

  // Unequal when no parameter values make x and z equal.  The words may use
  // parameter i (range pi) and j (range pj).
  enum class Inequality { unequal, unknown };
  Inequality sym_unequal(SymbolicWord const&              x,
                         SymbolicWord const&              z,
                         Domain const&                    dom,
                         std::uint32_t                    d,
                         std::optional<ParamRange> const& pi = std::nullopt,
                         std::optional<ParamRange> const& pj = std::nullopt);

  class NoSymbolicLocatingLength : public std::runtime_error {
   public:
    NoSymbolicLocatingLength(std::string const& what, std::string pair, std::vector<Rational> obstructions)
        : std::runtime_error(what), colliding(std::move(pair)), obstructions(std::move(obstructions)) {}
    std::string           colliding;
    std::vector<Rational> obstructions;
  };

  struct LeafRecord {
    Domain      domain;
    bool        proved = false;
    std::string failure;
  };

  struct PointRecord {
    Rational    ratio;
    std::string origin;  // endpoint, split, family or obstruction
    bool        admissible = false;
    Status      status     = Status::inconclusive;
    std::string detail;
  };

  struct SymbolicLocating {
    LinearForm   ell;
    std::int64_t cc    = 0;
    std::int64_t dd    = 0;
    std::int64_t m_max = 0;
    std::size_t  candidates_tried = 0;
  };

  struct SymbolicProof {
    std::string      name;
    RationalInterval interval;
    LinearForm       ell;
    std::int64_t     cc    = 0;
    std::int64_t     dd    = 0;
    std::int64_t     m_max = 0;
    Rational         i_min;
    std::int64_t     a_min = 0;
    Rational         short_words_bound;
    bool             short_words_ok = false;
    std::vector<LeafRecord>  leaves;
    std::vector<PointRecord> points;
    std::vector<Rational>    exceptions;
    Status                   status = Status::inconclusive;
    std::vector<std::string> notes;

    std::size_t subinterval_count() const;
  };

  // Smallest m_max candidate cc*a - dd*b that phi locates on the interval.
  SymbolicLocating sym_locating_length(SymbolicMorphism const& m, SymOptions const& opt = {});

  SymbolicProof sym_verify_free(SymbolicMorphism const& m, SymOptions const& opt = {});

  // Rationals in the interval with denominator <= max_den for which some
  // image phi(n) is a perfect power.
  std::vector<Rational> power_obstructions(SymbolicMorphism const& m, RationalInterval const& I, std::int64_t max_den = 100);

  // m_max = ceil((cc * i_min - dd) / (i_min - 1)) - 1.
  std::int64_t big_m_bound(std::int64_t cc, std::int64_t dd, Rational const& i_min);

  // Smallest numerator of a rational strictly inside I whose denominator is
  // coprime to s.
  std::int64_t smallest_numerator(RationalInterval const& I, std::int64_t s);

  // The morphism X (YZ)^{r-2} B A Y B^{r-2} C Y B^{r-3} Y A 0^{a-b-1} (n+1).
  SymbolicMorphism conj4r_morphism(int r);

}  // namespace fracpow

#endif  // FRACPOW_SYMBOLIC_HPP_
