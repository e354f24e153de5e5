#include <doctest.h>

#include <random>

#include "fracpow/rational.hpp"
#include "fracpow/word.hpp"
#include "oracles.hpp"

using namespace fracpow;

TEST_CASE("fraction parsing and validation") {
  CHECK(Fraction::parse("5/3") == Fraction(5, 3));
  CHECK(Fraction::parse("4").is_integer());
  CHECK(Fraction(7, 4).str() == "7/4");
  CHECK(Fraction(7, 4).below_two());
  CHECK_FALSE(Fraction(7, 3).below_two());
  CHECK_THROWS_AS(Fraction(4, 2), std::invalid_argument);
  CHECK_THROWS_AS(Fraction(3, 5), std::invalid_argument);
  CHECK_THROWS_AS(Fraction(1, 1), std::invalid_argument);
  CHECK_THROWS(Fraction::parse("x/2"));
}

TEST_CASE("rationals and intervals") {
  CHECK(Rational(6, 4) == Rational(3, 2));
  CHECK(Rational(-7, 2).floor() == -4);
  CHECK(Rational(-7, 2).ceil() == -3);
  CHECK(Rational(5, 3) < Rational(12, 7));
  CHECK(Rational::parse("17/12") == Rational(17, 12));
  auto I = RationalInterval::parse("[5/3..2)");
  CHECK(I.contains(Rational(5, 3)));
  CHECK_FALSE(I.contains(Rational(2)));
  CHECK_FALSE(I.contains_interior(Rational(5, 3)));
  CHECK(I.str() == "[5/3..2)");
  CHECK(RationalInterval::parse("(11/8..3/2)").str() == "(11/8..3/2)");
}

TEST_CASE("word text format round-trips primes") {
  Word w = parse_word("0 1' 0' 12 3");
  REQUIRE(w.size() == 5);
  CHECK(w[1] == Letter::primed(1));
  CHECK(w[1].value() == 1);
  CHECK(w[3].value() == 12);
  CHECK(format_word(w) == "0 1' 0' 12 3");
  CHECK(format_digits(digits("0102")) == "0102");
  CHECK(coded(w) == parse_word("0 1 0 12 3"));
  CHECK_THROWS(Letter::primed(2));
}

TEST_CASE("fractional powers on small examples") {
  CHECK(is_fractional_power(digits("01010"), Fraction(5, 2)));
  CHECK(is_fractional_power(digits("00"), Fraction(2, 1)));
  CHECK(is_fractional_power(digits("01001"), Fraction(5, 3)));
  CHECK_FALSE(is_fractional_power(digits("01002"), Fraction(5, 3)));
  CHECK_FALSE(is_fractional_power(digits("0100"), Fraction(5, 3)));
}

TEST_CASE("find_power_factor agrees with a brute-force scan") {
  std::mt19937 rng(7);
  Fraction const fracs[] = {Fraction(2, 1), Fraction(3, 2), Fraction(5, 3), Fraction(7, 4), Fraction(7, 5),
                            Fraction(5, 2)};
  for (int trial = 0; trial < 400; ++trial) {
    Fraction f = fracs[trial % 6];
    std::size_t n = 5 + rng() % 40;
    Word w;
    for (std::size_t i = 0; i < n; ++i) {
      w.emplace_back(rng() % 3);
    }
    auto got  = find_power_factor(w, f);
    auto want = oracle::find_power(w, f);
    REQUIRE(got.has_value() == want.has_value());
    if (got) {
      CHECK(got->start == want->first);
      CHECK(got->m == want->second);
    }
  }
}

TEST_CASE("power_suffix agrees with the definition in every mode") {
  std::mt19937 rng(11);
  AvoidMode const modes[] = {AvoidMode::exact, AvoidMode::at_least, AvoidMode::greater};
  for (int trial = 0; trial < 600; ++trial) {
    Fraction    f    = trial % 2 ? Fraction(3, 2) : Fraction(7, 5);
    AvoidMode   mode = modes[trial % 3];
    std::size_t n    = 2 + rng() % 30;
    Word        w;
    for (std::size_t i = 0; i < n; ++i) {
      w.emplace_back(rng() % 2);
    }
    CHECK(power_suffix(w, f, mode).has_value() == oracle::ends_with_power(oracle::values(w), f, mode));
  }
}

TEST_CASE("mode names") {
  CHECK(parse_mode("geq") == AvoidMode::at_least);
  CHECK(parse_mode("gt") == AvoidMode::greater);
  CHECK(mode_name(AvoidMode::exact) == "exact");
  CHECK_THROWS(parse_mode("ge"));
}

TEST_CASE("compare_lex uses coded values and treats prefixes as equal") {
  CHECK(compare_lex(digits("0102"), digits("0110")) == std::strong_ordering::less);
  CHECK(compare_lex(digits("011"), digits("01")) == std::strong_ordering::equal);
  CHECK(compare_lex(parse_word("0' 1"), parse_word("0 1")) == std::strong_ordering::equal);
  CHECK(compare_lex(digits("2"), digits("10")) == std::strong_ordering::greater);
}

TEST_CASE("first occurrences") {
  auto occ = first_occurrences(digits("0010200103"));
  CHECK(occ.at(0) == 0);
  CHECK(occ.at(1) == 2);
  CHECK(occ.at(2) == 4);
  CHECK(occ.at(3) == 9);
}
