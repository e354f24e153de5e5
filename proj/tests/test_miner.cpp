#include <doctest.h>

#include <algorithm>

#include "fracpow/format.hpp"
#include "fracpow/generator.hpp"
#include "fracpow/miner.hpp"
#include "oracles.hpp"

using namespace fracpow;

namespace {

  std::filesystem::path const kCatalog(FRACPOW_TEST_CATALOG);

  MorphismFile load(char const* name) {
    return parse_morphism(read_text(kCatalog / name));
  }

  bool has_k(std::vector<KCandidate> const& cs, std::uint32_t k) {
    return std::any_of(cs.begin(), cs.end(), [k](KCandidate const& c) { return c.k == k; });
  }

}  // namespace

TEST_CASE("row width candidates") {
  CHECK(has_k(detect_k(generate_lexleast(Fraction(5, 3), 10000)), 7));
  CHECK(has_k(detect_k(generate_lexleast(Fraction(3, 2), 10000)), 6));
  CHECK(has_k(detect_k(generate_lexleast(Fraction(6, 5), 100000)), 1001));
  CHECK_THROWS(conjecture_structure(Word(10, Letter(0)), Fraction(5, 3)));
}

TEST_CASE("column profile of w_5/3") {
  ColumnProfile p = column_profile(generate_lexleast(Fraction(5, 3), 7000), 7);
  CHECK(p.k == 7);
  CHECK(p.rows == 1000);
  REQUIRE(p.columns.size() == 7);
  for (std::size_t c = 0; c < 6; ++c) {
    CHECK(p.columns[c].kind == ColumnKind::constant);
  }
  CHECK(p.columns[6].kind == ColumnKind::self_similar);
  CHECK(p.transient_rows == 0);
}

TEST_CASE("structure conjectures reproduce the known morphisms") {
  struct Case {
    Fraction    f;
    std::size_t n;
    char const* file;
  };
  for (Case c : {Case{Fraction(5, 3), 10000, "thm_5_3.json"}, Case{Fraction(9, 5), 100000, "thm_9_5.json"},
                 Case{Fraction(8, 5), 60000, "thm_8_5.json"}, Case{Fraction(4, 3), 100000, "thm_4_3.json"}}) {
    CAPTURE(c.file);
    auto conj = conjecture_structure(generate_lexleast(c.f, c.n), c.f);
    REQUIRE(conj.morphism.has_value());
    auto want = load(c.file).morphism;
    CHECK(conj.k == want.k);
    CHECK(conj.d == want.d);
    CHECK(*conj.morphism == want);
    CHECK(find_in_catalog(*conj.morphism, c.f, kCatalog).has_value());
  }
}

TEST_CASE("structure conjecture with a given k") {
  auto conj = conjecture_structure(generate_lexleast(Fraction(5, 3), 10000), Fraction(5, 3), 7);
  CHECK(conj.k == 7);
  CHECK(conj.shift == ShiftKind::constant);
  CHECK(render_array(generate_lexleast(Fraction(5, 3), 21), 7, 3) == "0000101\n0000101\n0000101\n");
}

TEST_CASE("generalizing 5/3 and 9/5 recovers 2(2a-b)") {
  auto g = generalize_pair(load("thm_5_3.json").morphism, Fraction(5, 3), load("thm_9_5.json").morphism,
                           Fraction(9, 5));
  REQUIRE(g.has_value());
  auto want = parse_symbolic(read_text(kCatalog / "thm_2_2a_b.json"));
  CHECK(g->blocks == want.blocks);
  CHECK(g->k == want.k);
  CHECK(g->interval.contains(Rational(5, 3)));
  CHECK(g->interval.contains(Rational(9, 5)));
}

TEST_CASE("generalizing two instances of each family recovers it") {
  for (auto const& p : oracle::catalog_files(kCatalog)) {
    std::string text = read_text(p);
    if (!oracle::is_symbolic_file(text)) {
      continue;
    }
    auto m = parse_symbolic(text);
    CAPTURE(m.name);
    std::vector<std::pair<std::int64_t, std::int64_t>> pts;
    for (auto [a, b] : oracle::sample_rationals(m, 200)) {
      bool positive = std::all_of(m.blocks.begin(), m.blocks.end(),
                                  [&](SymBlock const& blk) { return blk.exp.eval(a, b) >= 1; });
      if (positive) {
        pts.emplace_back(a, b);
      }
      if (pts.size() == 2) {
        break;
      }
    }
    REQUIRE(pts.size() == 2);
    Fraction f1(static_cast<std::uint32_t>(pts[0].first), static_cast<std::uint32_t>(pts[0].second));
    Fraction f2(static_cast<std::uint32_t>(pts[1].first), static_cast<std::uint32_t>(pts[1].second));
    auto g = generalize_pair(instantiate(m, f1), f1, instantiate(m, f2), f2);
    REQUIRE(g.has_value());
    CHECK(g->blocks == m.blocks);
    auto I = guess_interval(m);
    CHECK(I.lower <= m.interval.lower);
    CHECK(m.interval.upper <= I.upper);
  }
}
