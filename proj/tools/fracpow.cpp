// Command-line front end: generate, check, verify, prove, mine, generalize,
// instantiate, conj4r.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "fracpow/format.hpp"
#include "fracpow/generator.hpp"
#include "fracpow/miner.hpp"
#include "fracpow/morphism.hpp"
#include "fracpow/symbolic.hpp"
#include "fracpow/verifier.hpp"
#include "fracpow/word.hpp"

namespace {

  using namespace fracpow;

  constexpr int kUsage = 64;

  struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
  };

  Fraction fraction_of(std::uint32_t a, std::uint32_t b) {
    try {
      return Fraction(a, b);
    } catch (std::exception const& e) {
      throw UsageError(e.what());
    }
  }

  unsigned default_jobs() {
    unsigned n = std::thread::hardware_concurrency();
    return n == 0 ? 1 : n;
  }

  // Rough cost of the window sweep in letter comparisons, and the budget that
  // --deep lifts (about ten minutes).
  constexpr double kComparisonsPerSecond = 2e8;
  constexpr double kBudgetSeconds        = 600;

  double projected_seconds(ExplicitMorphism const& m, Fraction f, std::size_t ell) {
    double mmax    = static_cast<double>((ell + (f.a - f.b) - 1) / (f.a - f.b));
    double windows = mmax;
    double per     = static_cast<double>(m.k) * f.a * mmax / 2;
    return windows * per / kComparisonsPerSecond;
  }

  int cmd_generate(std::uint32_t a, std::uint32_t b, std::size_t length, std::string const& mode, std::string const& out) {
    Fraction f    = fraction_of(a, b);
    Word     w    = generate_lexleast(f, length, parse_mode(mode));
    std::string s = format_word(w) + "\n";
    if (out.empty()) {
      std::cout << s;
    } else {
      std::ofstream file(out, std::ios::binary);
      if (!file) {
        throw UsageError("cannot write " + out);
      }
      file << s;
    }
    return 0;
  }

  int cmd_check(std::string const& path, std::uint32_t a, std::uint32_t b) {
    Fraction f = fraction_of(a, b);
    Word     w = parse_word(read_text(path));
    auto     p = find_power_factor(w, f);
    std::cout << "{\n  \"fraction\": \"" << f.str() << "\",\n  \"length\": " << w.size()
              << ",\n  \"power_free\": " << (p ? "false" : "true");
    if (p) {
      std::cout << ",\n  \"factor\": [" << p->start << ", " << p->m << "]";
    }
    std::cout << "\n}\n";
    return p ? 1 : 0;
  }

  int cmd_verify(std::string const& path,
                 std::uint32_t      a,
                 std::uint32_t      b,
                 bool               lex_least,
                 std::optional<std::uint32_t> cap,
                 bool               deep,
                 unsigned           jobs) {
    Fraction     f    = fraction_of(a, b);
    MorphismFile file = parse_morphism(read_text(path));
    if (file.fraction && !(*file.fraction == f)) {
      std::cerr << "note: file is for " << file.fraction->str() << "\n";
    }
    ExplicitMorphism const& m = file.morphism;
    if (!deep && m.transient.empty()) {
      std::size_t ell  = locating_length_explicit(m).length;
      double      secs = projected_seconds(m, f, ell);
      if (secs > kBudgetSeconds) {
        std::cerr << "projected " << static_cast<long long>(secs) << " s for the window sweep (k = " << m.k
                  << ", l = " << ell << "); rerun with --deep\n";
        return 2;
      }
    }
    VerifyOptions opt;
    opt.jobs   = jobs;
    opt.deep   = deep;
    opt.anchor = file.anchor;
    ProofReport r = m.transient.empty() ? verify_free_explicit(m, f, opt) : verify_transient_free(m, f, opt);
    if (lex_least && r.status != Status::refuted) {
      verify_lex_least(m, f, cap.value_or(default_cap(r.locating_length, f)), r);
    }
    std::cout << format_report(r);
    return exit_code(r.status);
  }

  int cmd_prove(std::string const&             path,
                std::optional<std::string> const& interval,
                int                            bound,
                bool                           discover,
                std::vector<std::string> const& exclude,
                unsigned                       jobs) {
    SymbolicMorphism m = parse_symbolic(read_text(path));
    SymOptions       opt;
    opt.candidate_bound     = bound;
    opt.jobs                = jobs;
    opt.discover_exceptions = discover;
    try {
      if (interval) {
        opt.interval = RationalInterval::parse(*interval);
      }
      for (std::string const& r : exclude) {
        opt.exclude.push_back(Rational::parse(r));
      }
    } catch (std::exception const& e) {
      throw UsageError(e.what());
    }
    SymbolicProof p = sym_verify_free(m, opt);
    std::cout << format_proof(p);
    return exit_code(p.status);
  }

  int cmd_mine(std::string const& path,
               std::uint32_t      a,
               std::uint32_t      b,
               std::optional<std::uint32_t> k,
               std::size_t        length,
               std::size_t        array_rows) {
    Fraction f = fraction_of(a, b);
    Word     w = path.empty() ? generate_lexleast(f, length) : parse_word(read_text(path));
    StructureConjecture c = conjecture_structure(w, f, k);
    if (c.morphism) {
      try {
        c.catalog_match = find_in_catalog(*c.morphism, f, catalog_dir());
      } catch (FormatError const& e) {
        std::cerr << "note: " << e.what() << "\n";
      }
    }
    std::cout << format_conjecture(c);
    if (array_rows > 0) {
      std::cout << render_array(w, c.k, array_rows);
    }
    return c.morphism ? 0 : 2;
  }

  int cmd_generalize(std::string const& p1, std::string const& p2) {
    MorphismFile f1 = parse_morphism(read_text(p1));
    MorphismFile f2 = parse_morphism(read_text(p2));
    if (!f1.fraction || !f2.fraction) {
      throw UsageError("both morphism files need a \"fraction\" field");
    }
    auto s = generalize_pair(f1.morphism, *f1.fraction, f2.morphism, *f2.fraction);
    if (!s) {
      std::cerr << "no integral family through both morphisms\n";
      return 1;
    }
    try {
      s->interval = guess_interval(*s);
    } catch (EmptyInterval const& e) {
      std::cerr << "note: " << e.what() << "\n";
    }
    std::cout << format_symbolic(*s);
    return 0;
  }

  int cmd_instantiate(std::string const& path, std::uint32_t a, std::uint32_t b) {
    Fraction         f = fraction_of(a, b);
    SymbolicMorphism m = parse_symbolic(read_text(path));
    MorphismFile     out;
    out.name     = m.name + " at " + f.str();
    out.fraction = f;
    out.morphism = instantiate(m, f);
    std::cout << format_morphism(out);
    return 0;
  }

  int cmd_conj4r(int r) {
    if (r < 2) {
      throw UsageError("--r must be at least 2");
    }
    std::cout << format_symbolic(conj4r_morphism(r));
    return 0;
  }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lexicographically least a/b-power-free words and their morphisms"};
  app.require_subcommand(1);
  unsigned jobs = default_jobs();
  app.add_option("--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber);

  std::uint32_t a = 0, b = 0;
  auto          add_ab = [&](CLI::App* sub) {
    sub->add_option("--a", a, "Numerator")->required();
    sub->add_option("--b", b, "Denominator")->required();
  };

  auto*       gen = app.add_subcommand("generate", "Prefix of the lexicographically least word");
  std::size_t length = 100;
  std::string mode = "exact", out;
  add_ab(gen);
  gen->add_option("--length", length, "Number of letters");
  gen->add_option("--mode", mode, "exact, geq or gt")->check(CLI::IsMember({"exact", "geq", "gt"}));
  gen->add_option("--out", out, "Output file");

  auto*       chk = app.add_subcommand("check", "Search a word file for an a/b-power");
  std::string word_file;
  chk->add_option("--word", word_file, "Word file")->required()->check(CLI::ExistingFile);
  add_ab(chk);

  auto*       ver = app.add_subcommand("verify", "Prove an explicit morphism a/b-power-free");
  std::string morphism_file;
  bool        lex_least = false, deep = false;
  std::optional<std::uint32_t> cap;
  ver->add_option("--morphism", morphism_file, "Morphism file")->required()->check(CLI::ExistingFile);
  add_ab(ver);
  ver->add_flag("--lex-least", lex_least, "Also prove lexicographic leastness");
  ver->add_option("--cap", cap, "Largest power multiplier tried by the decrement search");
  ver->add_flag("--deep", deep, "Allow sweeps projected to take longer than ten minutes");

  auto*       prv = app.add_subcommand("prove", "Prove a symbolic morphism on its interval");
  std::string symbolic_file;
  std::optional<std::string> interval;
  int         bound    = 10;
  bool        discover = false;
  std::vector<std::string> exclude;
  prv->add_option("--symbolic", symbolic_file, "Symbolic morphism file")->required()->check(CLI::ExistingFile);
  prv->add_option("--interval", interval, "Interval such as (5/3..2) or [5/3..2)");
  prv->add_option("--candidate-bound", bound, "Largest c in locating candidates c*a - d*b")->check(CLI::PositiveNumber);
  prv->add_flag("--discover", discover, "Ignore stated exceptions and report those found");
  prv->add_option("--exclude", exclude, "Extra rationals to exclude")->delimiter(',');

  auto*       mine = app.add_subcommand("mine", "Conjecture a morphism from a prefix");
  std::optional<std::uint32_t> k;
  std::size_t mine_length = 100000, array_rows = 0;
  mine->add_option("--word", word_file, "Word file (default: generate)")->check(CLI::ExistingFile);
  add_ab(mine);
  mine->add_option("--k", k, "Row width to use instead of detecting it");
  mine->add_option("--length", mine_length, "Prefix length when generating");
  mine->add_option("--array", array_rows, "Also print this many rows of width k");

  auto*       gnl = app.add_subcommand("generalize", "Fit a symbolic family through two morphisms");
  std::string m1, m2;
  gnl->add_option("--m1", m1, "First morphism file")->required()->check(CLI::ExistingFile);
  gnl->add_option("--m2", m2, "Second morphism file")->required()->check(CLI::ExistingFile);

  auto* ins = app.add_subcommand("instantiate", "Evaluate a symbolic morphism at a/b");
  ins->add_option("--symbolic", symbolic_file, "Symbolic morphism file")->required()->check(CLI::ExistingFile);
  add_ab(ins);

  auto* c4r = app.add_subcommand("conj4r", "Print the family morphism for r");
  int   r   = 2;
  c4r->add_option("--r", r, "r >= 2")->required();

  try {
    app.parse(argc, argv);
  } catch (CLI::CallForHelp const& e) {
    return app.exit(e);
  } catch (CLI::CallForAllHelp const& e) {
    return app.exit(e);
  } catch (CLI::ParseError const& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (gen->parsed()) {
      return cmd_generate(a, b, length, mode, out);
    }
    if (chk->parsed()) {
      return cmd_check(word_file, a, b);
    }
    if (ver->parsed()) {
      return cmd_verify(morphism_file, a, b, lex_least, cap, deep, jobs);
    }
    if (prv->parsed()) {
      return cmd_prove(symbolic_file, interval, bound, discover, exclude, jobs);
    }
    if (mine->parsed()) {
      return cmd_mine(word_file, a, b, k, mine_length, array_rows);
    }
    if (gnl->parsed()) {
      return cmd_generalize(m1, m2);
    }
    if (ins->parsed()) {
      return cmd_instantiate(symbolic_file, a, b);
    }
    if (c4r->parsed()) {
      return cmd_conj4r(r);
    }
  } catch (UsageError const& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (FormatError const& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (HypothesisViolation const& e) {
    std::cerr << "hypothesis violation: " << e.what() << "\n";
    return 3;
  } catch (OutOfInterval const& e) {
    std::cerr << "hypothesis violation: " << e.what() << "\n";
    return 3;
  } catch (GcdViolation const& e) {
    std::cerr << "hypothesis violation: " << e.what() << "\n";
    return 3;
  } catch (ExceptionRational const& e) {
    std::cerr << "hypothesis violation: " << e.what() << "\n";
    return 3;
  } catch (std::invalid_argument const& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (std::exception const& e) {
    std::cerr << "inconclusive: " << e.what() << "\n";
    return 2;
  }
  return kUsage;
}
