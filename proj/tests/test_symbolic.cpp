#include <doctest.h>

#include <algorithm>

#include "fracpow/format.hpp"
#include "fracpow/symbolic.hpp"
#include "fracpow/verifier.hpp"
#include "oracles.hpp"

using namespace fracpow;

namespace {

  std::filesystem::path const kCatalog(FRACPOW_TEST_CATALOG);

  SymbolicMorphism load_symbolic(std::string const& name) {
    return parse_symbolic(read_text(kCatalog / name));
  }

  std::vector<SymbolicMorphism> all_symbolic() {
    std::vector<SymbolicMorphism> out;
    for (auto const& p : oracle::catalog_files(kCatalog)) {
      std::string text = read_text(p);
      if (oracle::is_symbolic_file(text)) {
        out.push_back(parse_symbolic(text));
      }
    }
    return out;
  }

  LinearForm lf(char const* s) {
    return LinearForm::parse(s);
  }

}  // namespace

TEST_CASE("linear forms") {
  CHECK(lf("2a-2b-1") == LinearForm::of(2, -2, -1));
  CHECK(lf("-a+2b") == LinearForm::of(-1, 2));
  CHECK(lf("7").is_constant());
  CHECK(lf("5a-4b").str() == "5a-4b");
  CHECK(lf("5a-4b").eval(7, 4) == 19);
  CHECK((lf("a") - lf("b")).root() == Rational(1));
  CHECK(lf("3a-5b").root() == Rational(5, 3));
  CHECK_FALSE(lf("b+1").root().has_value());
  LinearForm p = LinearForm::param_i() + lf("a");
  CHECK(p.has_params());
  CHECK(p.eval(5, 3, 2) == 7);
  CHECK(p.substitute_i(lf("b")) == lf("a+b"));
}

TEST_CASE("comparisons of linear forms on an interval") {
  auto I = RationalInterval::open(Rational(1), Rational(2));
  CHECK(lf_compare(lf("a"), lf("b"), I).verdict == Verdict::greater);
  CHECK(lf_compare(lf("b"), lf("a"), I).verdict == Verdict::less);
  CHECK(lf_compare(lf("a-b"), lf("1"), I).verdict == Verdict::greater_equal);
  CHECK(lf_compare(lf("2a+1"), lf("2a+1"), I).verdict == Verdict::equal);
  auto c = lf_compare(lf("2a"), lf("3b"), I);
  CHECK(c.verdict == Verdict::split);
  CHECK(c.split_at == std::optional<Rational>(Rational(3, 2)));
  auto J = RationalInterval::parse("[5/3..2)");
  CHECK(lf_compare(lf("3a"), lf("5b"), J).verdict == Verdict::greater_equal);
}

TEST_CASE("every catalog family is well formed") {
  auto all = all_symbolic();
  CHECK(all.size() == 30);
  for (auto const& m : all) {
    CAPTURE(m.name);
    CHECK_NOTHROW(check_shape(m));
    CHECK(m.image_length() == m.k);
  }
}

TEST_CASE("instantiation reproduces explicit morphisms") {
  auto s = load_symbolic("thm_2_2a_b.json");
  auto m53 = parse_morphism(read_text(kCatalog / "thm_5_3.json")).morphism;
  auto m95 = parse_morphism(read_text(kCatalog / "thm_9_5.json")).morphism;
  CHECK(instantiate(s, Fraction(5, 3)) == m53);
  CHECK(instantiate(s, Fraction(9, 5)) == m95);
  CHECK_THROWS_AS(instantiate(s, Fraction(3, 2)), OutOfInterval);
  CHECK_THROWS_AS(instantiate(s, Fraction(7, 4)), GcdViolation);
  auto e = load_symbolic("thm_6_4a_2b_I.json");
  CHECK_THROWS_AS(instantiate(e, Fraction(5, 3)), ExceptionRational);
}

TEST_CASE("conj4r expands to the catalog families") {
  char const* names[] = {"thm_8_5a_3b.json", "thm_12_7a_5b.json", "thm_16_9a_7b.json", "thm_20_11a_9b.json",
                         "thm_24_13a_11b.json"};
  for (int r = 2; r <= 6; ++r) {
    CAPTURE(r);
    auto c = conj4r_morphism(r);
    auto t = load_symbolic(names[r - 2]);
    CHECK(c.blocks == t.blocks);
    CHECK(c.k == t.k);
    CHECK(c.d == t.d);
  }
}

TEST_CASE("symbolic factor tables agree with explicit windows") {
  for (auto const& m : all_symbolic()) {
    CAPTURE(m.name);
    for (std::uint32_t mult = 1; mult <= 2; ++mult) {
      auto tables  = sym_factor_table(m, mult, m.interval);
      auto samples = oracle::covered_samples(m, tables, 3);
      REQUIRE(samples.size() == 3);
      for (auto [a, b] : samples) {
        CAPTURE(a);
        CAPTURE(b);
        CHECK(oracle::factor_tables_agree(m, tables, mult, a, b) == "");
      }
    }
  }
}

TEST_CASE("symbolic words render and compare") {
  auto     s   = load_symbolic("thm_2_2a_b.json");
  Domain   dom = Domain::cone(Rational(5, 3), Rational(2));
  auto     w   = sym_take(s, dom, lf("2a-b"));
  CHECK(w.str(1) == "0^{a-1} 1 0^{a-b-1} (n0+1)");
  SymbolicWord x{{{SymLetter::lit(0), lf("a")}}};
  SymbolicWord z{{{SymLetter::lit(0), lf("a-1")}, {SymLetter::lit(1), lf("1")}}};
  CHECK(sym_unequal(x, z, dom, 1) == Inequality::unequal);
}

TEST_CASE("small theorems are proved") {
  struct Case {
    char const* file;
    char const* ell;
    std::int64_t m_max;
  };
  for (Case c : {Case{"thm_2_2a_b.json", "a", 2}, Case{"thm_3_a.json", "3a-3b", 2},
                 Case{"thm_4_5a_4b.json", "5a-5b", 4}}) {
    CAPTURE(c.file);
    SymbolicProof p = sym_verify_free(load_symbolic(c.file));
    CHECK(p.status == Status::proved);
    CHECK(p.ell == lf(c.ell));
    CHECK(p.m_max == c.m_max);
    CHECK(p.exceptions.empty());
  }
}

TEST_CASE("a square image blocks the locating search") {
  auto m = load_symbolic("thm_14_6a_b_I.json");
  auto obs = power_obstructions(m, m.interval);
  CHECK(std::find(obs.begin(), obs.end(), Rational(17, 12)) != obs.end());
  try {
    sym_locating_length(m);
    FAIL("expected NoSymbolicLocatingLength");
  } catch (NoSymbolicLocatingLength const& e) {
    CHECK(std::find(e.obstructions.begin(), e.obstructions.end(), Rational(17, 12)) != e.obstructions.end());
  }
}

TEST_CASE("bounds") {
  CHECK(big_m_bound(1, 0, Rational(5, 3)) == 2);
  CHECK(smallest_numerator(RationalInterval::parse("(4/3..2)"), 1) == 3);
  CHECK(smallest_numerator(RationalInterval::parse("(5/3..2)"), 2) == 9);
}
