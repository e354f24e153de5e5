// Text formats: morphism files, symbolic morphism files and reports, all in
// one JSON dialect with a fixed field order.

#ifndef FRACPOW_FORMAT_HPP_
#define FRACPOW_FORMAT_HPP_

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "fracpow/miner.hpp"
#include "fracpow/morphism.hpp"
#include "fracpow/symbolic.hpp"
#include "fracpow/verifier.hpp"

namespace fracpow {

  class FormatError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
  };

  // A morphism file: the morphism plus optional metadata.
  struct MorphismFile {
    std::string                name;
    std::optional<Fraction>    fraction;
    ExplicitMorphism           morphism;
    std::optional<AnchorHint>  anchor;
    // Values a theorem states, kept for cross-checks.
    std::optional<std::size_t> locating_length;
    std::optional<std::size_t> transient_unique_length;

    friend bool operator==(MorphismFile const& x, MorphismFile const& y) {
      auto anchor_eq = [](std::optional<AnchorHint> const& p, std::optional<AnchorHint> const& q) {
        return p.has_value() == q.has_value() && (!p || (p->position == q->position && p->length == q->length));
      };
      return x.name == y.name && x.fraction == y.fraction && x.morphism == y.morphism && anchor_eq(x.anchor, y.anchor) &&
             x.locating_length == y.locating_length && x.transient_unique_length == y.transient_unique_length;
    }
  };

  MorphismFile parse_morphism(std::string_view text);
  std::string  format_morphism(MorphismFile const& f);

  SymbolicMorphism parse_symbolic(std::string_view text);
  std::string      format_symbolic(SymbolicMorphism const& m);

  std::string format_report(ProofReport const& r);
  std::string format_proof(SymbolicProof const& p);
  std::string format_conjecture(StructureConjecture const& c);

  std::string read_text(std::filesystem::path const& path);

  // Locates the bundled catalog: $FRACPOW_CATALOG, the source tree, or the
  // install prefix.
  std::filesystem::path catalog_dir();

  // Name of the catalog theorem whose morphism at f equals m: an explicit
  // file for f, or a symbolic family admitting f.
  std::optional<std::string> find_in_catalog(ExplicitMorphism const& m, Fraction f, std::filesystem::path const& dir);

}  // namespace fracpow

#endif  // FRACPOW_FORMAT_HPP_
