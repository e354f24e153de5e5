// Structure conjectures read off a prefix of w_{a/b}: the row width k, the
// transient, the shift of the self-similar column, and symbolic families
// generalizing pairs of explicit morphisms.

#ifndef FRACPOW_MINER_HPP_
#define FRACPOW_MINER_HPP_

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "fracpow/morphism.hpp"
#include "fracpow/rational.hpp"
#include "fracpow/symbolic.hpp"
#include "fracpow/word.hpp"

namespace fracpow {

  class NoCandidate : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
  };
  class Inconsistent : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
  };
  class EmptyInterval : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
  };

  struct KCandidate {
    std::uint32_t k;
    std::string   method;  // "gcd", "period" or "lag"
    std::string   evidence;
    friend bool   operator==(KCandidate const&, KCandidate const&) = default;
  };

  // Candidates from the gcd, period and lag methods, in that order;
  // duplicates merged.
  std::vector<KCandidate> detect_k(Word const& prefix);

  struct MinerOptions {
    std::uint32_t period_cap = 16;
    std::uint32_t min_rows   = 50;
  };

  enum class ColumnKind { constant, periodic, self_similar };
  std::string_view column_kind_name(ColumnKind c);

  struct ColumnClass {
    ColumnKind    kind   = ColumnKind::self_similar;
    std::uint32_t period = 0;
    // First row from which the column repeats with this period.
    std::size_t stable_from = 0;
    Word        values;  // one period of eventual values
  };

  struct ColumnProfile {
    std::uint32_t            k = 0;
    std::size_t              rows = 0;
    std::vector<ColumnClass> columns;
    std::size_t              transient_rows = 0;
  };

  ColumnProfile column_profile(Word const& prefix, std::uint32_t k, MinerOptions const& opt = {});

  enum class ShiftKind { constant, letter_map, periodic_increment, none };
  std::string_view shift_kind_name(ShiftKind s);

  struct StructureConjecture {
    Fraction      fraction;
    std::uint32_t k = 0;
    std::size_t   transient_rows = 0;
    std::size_t   transient_length = 0;
    std::size_t   self_similar_column = 0;
    ShiftKind     shift = ShiftKind::none;
    std::uint32_t d     = 0;
    std::map<std::uint32_t, std::uint32_t> letter_map;  // exceptions to n + d
    std::vector<std::int64_t>              increments;  // periodic-increment data
    Word          u;
    Word          v;
    ColumnProfile profile;
    double        confidence = 0.0;
    std::optional<ExplicitMorphism> morphism;
    std::vector<KCandidate>         candidates;
    // Bundled theorem whose morphism equals `morphism`, filled in by callers.
    std::optional<std::string> catalog_match;
  };

  // Tries the candidates of detect_k (or only `k` when given) and returns the
  // first whose morphism reproduces the prefix.
  StructureConjecture conjecture_structure(Word const&                  prefix,
                                           Fraction                     f,
                                           std::optional<std::uint32_t> k   = std::nullopt,
                                           MinerOptions const&          opt = {});

  // Rows of width k as text, for looking at columns.
  std::string render_array(Word const& prefix, std::uint32_t k, std::size_t rows, std::size_t offset = 0);

  // Writes each zero run of m1 and m2 as i*a + j*b - 1 and solves for i, j.
  std::optional<SymbolicMorphism> generalize_pair(ExplicitMorphism const& m1,
                                                  Fraction                f1,
                                                  ExplicitMorphism const& m2,
                                                  Fraction                f2);

  // Rationals in (1, 2) on which every run length is eventually positive.
  RationalInterval guess_interval(SymbolicMorphism const& m);

}  // namespace fracpow

#endif  // FRACPOW_MINER_HPP_
