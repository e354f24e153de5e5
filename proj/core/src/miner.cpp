#include "fracpow/miner.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace fracpow {

  namespace {

    constexpr std::size_t kMaxPeriodSearch = 4000;

    // Most frequent value; ties go to the smaller one.
    template <typename T>
    T mode_of(std::vector<T> const& xs) {
      std::map<T, std::size_t> count;
      for (T const& x : xs) {
        ++count[x];
      }
      return std::max_element(count.begin(), count.end(), [](auto const& p, auto const& q) {
               return p.second < q.second;
             })->first;
    }

    std::optional<KCandidate> gcd_candidate(Word const& prefix) {
      std::uint32_t top = 0;
      for (Letter l : prefix) {
        top = std::max(top, l.value());
      }
      std::vector<std::vector<std::size_t>> by_value(top + 1);
      for (std::size_t i = 0; i < prefix.size(); ++i) {
        by_value[prefix[i].value()].push_back(i);
      }
      std::optional<std::size_t> ref;
      std::size_t                g     = 0;
      std::size_t                count = 0;
      std::optional<KCandidate>  best;
      for (std::uint32_t c = top; c >= 1; --c) {
        for (std::size_t p : by_value[c]) {
          if (!ref) {
            ref = p;
          } else {
            g = std::gcd(g, p > *ref ? p - *ref : *ref - p);
          }
          ++count;
        }
        if (g == 1) {
          break;
        }
        if (g > 1 && count >= 3 && prefix.size() >= 10 * g) {
          best = KCandidate{static_cast<std::uint32_t>(g),
                            "gcd",
                            std::to_string(count) + " positions of letters >= " + std::to_string(c)};
        }
      }
      return best;
    }

    std::optional<KCandidate> period_candidate(Word const& prefix) {
      std::vector<std::size_t> ones;
      for (std::size_t i = 0; i < prefix.size(); ++i) {
        if (prefix[i].value() == 1) {
          ones.push_back(i);
        }
      }
      if (ones.size() < 8) {
        return std::nullopt;
      }
      std::vector<std::size_t> diff(ones.size() - 1);
      for (std::size_t i = 0; i + 1 < ones.size(); ++i) {
        diff[i] = ones[i + 1] - ones[i];
      }
      std::size_t const start = diff.size() / 2;
      for (std::size_t p = 1; p <= std::min(kMaxPeriodSearch, (diff.size() - start) / 3); ++p) {
        std::size_t checked = 0, bad = 0;
        for (std::size_t i = start; i + p < diff.size(); ++i, ++checked) {
          bad += diff[i] != diff[i + p];
        }
        if (checked == 0 || bad * 10 > checked) {
          continue;
        }
        std::vector<std::size_t> sums;
        for (std::size_t s = start; s + p <= diff.size(); s += p) {
          sums.push_back(std::accumulate(diff.begin() + s, diff.begin() + s + p, std::size_t{0}));
        }
        std::size_t k = mode_of(sums);
        if (k < 2 || prefix.size() < 10 * k) {
          return std::nullopt;
        }
        return KCandidate{static_cast<std::uint32_t>(k),
                          "period",
                          "differences of positions of 1 repeat with period " + std::to_string(p)};
      }
      return std::nullopt;
    }

    // Smallest lag p at which, in the second half of the prefix, every
    // mismatch w(i) != w(i + p) falls in one residue class mod p.
    std::optional<KCandidate> lag_candidate(Word const& prefix) {
      std::size_t const n     = prefix.size();
      std::size_t const start = n / 2;
      for (std::size_t p = 2; 10 * p <= n && start + 2 * p < n; ++p) {
        std::optional<std::size_t> residue;
        std::size_t                mismatches = 0;
        bool                       ok         = true;
        for (std::size_t i = start; i + p < n; ++i) {
          if (prefix[i].value() != prefix[i + p].value()) {
            if (residue && *residue != i % p) {
              ok = false;
              break;
            }
            residue = i % p;
            ++mismatches;
          }
        }
        if (ok && mismatches > 0) {
          return KCandidate{static_cast<std::uint32_t>(p),
                            "lag",
                            std::to_string(mismatches) + " mismatches at lag " + std::to_string(p) + ", all at residue " +
                                std::to_string(*residue)};
        }
      }
      return std::nullopt;
    }

    ColumnClass classify(std::vector<std::uint32_t> const& col, MinerOptions const& opt) {
      ColumnClass best;
      std::size_t const rows = col.size();
      std::optional<std::size_t> best_stable;
      for (std::uint32_t p = 1; p <= opt.period_cap && p < rows; ++p) {
        std::size_t stable = 0;
        for (std::size_t r = rows - p; r-- > 0;) {
          if (col[r] != col[r + p]) {
            stable = r + 1;
            break;
          }
        }
        // The periodic tail must outlast both min_rows and the rows before it.
        if (rows < stable + std::max<std::size_t>(opt.min_rows, stable) + p) {
          continue;
        }
        if (!best_stable || stable < *best_stable) {
          best_stable      = stable;
          best.kind        = p == 1 ? ColumnKind::constant : ColumnKind::periodic;
          best.period      = p;
          best.stable_from = stable;
        }
      }
      if (best_stable) {
        best.values.resize(best.period);
        for (std::size_t r = best.stable_from; r < best.stable_from + best.period; ++r) {
          best.values[r % best.period] = Letter(col[r]);
        }
      }
      return best;
    }

    struct Attempt {
      StructureConjecture conj;
      std::string         failure;
    };

    Attempt attempt(Word const& prefix, Fraction f, std::uint32_t k, MinerOptions const& opt) {
      Attempt a;
      StructureConjecture& c = a.conj;
      c.fraction             = f;
      c.k                    = k;
      c.profile              = column_profile(prefix, k, opt);
      c.transient_rows       = c.profile.transient_rows;
      std::vector<std::size_t> self;
      for (std::size_t j = 0; j < k; ++j) {
        if (c.profile.columns[j].kind == ColumnKind::self_similar) {
          self.push_back(j);
        }
      }
      if (self.size() != 1) {
        a.failure = std::to_string(self.size()) + " columns are not eventually periodic for k = " + std::to_string(k);
        return a;
      }
      std::size_t const col   = self.front();
      std::size_t const phase = (col + 1) % k;
      c.self_similar_column   = col;

      bool all_constant = true;
      c.u.resize(k - 1);
      for (std::size_t j = 0; j + 1 < k; ++j) {
        ColumnClass const& cl = c.profile.columns[(phase + j) % k];
        all_constant          = all_constant && cl.kind == ColumnKind::constant;
        c.u[j]                = cl.values.empty() ? Letter(0) : cl.values.front();
      }
      if (!all_constant) {
        c.shift   = ShiftKind::none;
        a.failure = "some columns are periodic but not constant; no morphism of the form u (n + d)";
        return a;
      }

      std::optional<std::size_t> bad;
      for (std::size_t p = prefix.size(); p-- > 0;) {
        std::size_t j = (p + k - phase) % k;
        if (j != k - 1 && prefix[p].value() != c.u[j].value()) {
          bad = p;
          break;
        }
      }
      std::size_t L = phase;
      if (bad && *bad + 1 > phase) {
        L = phase + k * ((*bad + 1 - phase + k - 1) / k);
      }
      c.transient_length = L;
      c.v.assign(prefix.begin(), prefix.begin() + static_cast<std::ptrdiff_t>(std::min(L, prefix.size())));

      std::map<std::uint32_t, std::set<std::uint32_t>> seen;
      std::vector<std::int64_t>                        incr;
      for (std::size_t i = 0; L + k * i + k - 1 < prefix.size(); ++i) {
        std::uint32_t n    = prefix[i].value();
        std::uint32_t last = prefix[L + k * i + k - 1].value();
        seen[n].insert(last);
        if (incr.size() < 64) {
          incr.push_back(std::int64_t{last} - n);
        }
      }
      bool consistent = std::all_of(seen.begin(), seen.end(), [](auto const& p) { return p.second.size() == 1; });
      if (!consistent || seen.empty()) {
        c.shift      = ShiftKind::periodic_increment;
        c.increments = incr;
        a.failure    = "the self-similar column is not a letter map of the word";
        return a;
      }
      std::vector<std::int64_t> deltas;
      for (auto const& [n, lasts] : seen) {
        if (n >= 1 || seen.size() == 1) {
          deltas.push_back(std::int64_t{*lasts.begin()} - n);
        }
      }
      std::int64_t d = mode_of(deltas);
      if (d < 0) {
        c.shift   = ShiftKind::none;
        a.failure = "the self-similar column decreases letters";
        return a;
      }
      c.d = static_cast<std::uint32_t>(d);
      for (auto const& [n, lasts] : seen) {
        if (std::int64_t{*lasts.begin()} != std::int64_t{n} + d) {
          c.letter_map[n] = *lasts.begin();
        }
      }
      c.shift = c.letter_map.empty() ? ShiftKind::constant : ShiftKind::letter_map;

      ExplicitMorphism m  = ExplicitMorphism::shift(c.u, c.d);
      m.shift_exceptions  = c.letter_map;
      if (L > 0) {
        m.transient    = c.v;
        m.transient[0] = Letter::primed(0);
      }
      Word expanded;
      try {
        expanded = expand_fixed_point(m, prefix.size());
      } catch (std::exception const& e) {
        a.failure = e.what();
        return a;
      }
      std::size_t agree = 0;
      while (agree < prefix.size() && agree < expanded.size() && expanded[agree].value() == prefix[agree].value()) {
        ++agree;
      }
      c.confidence = static_cast<double>(agree) / static_cast<double>(prefix.size());
      if (agree != prefix.size()) {
        a.failure = "expansion differs from the prefix at position " + std::to_string(agree);
        return a;
      }
      c.morphism = std::move(m);
      return a;
    }

  }  // namespace

  std::vector<KCandidate> detect_k(Word const& prefix) {
    std::vector<KCandidate> out;
    for (auto const& c : {gcd_candidate(prefix), period_candidate(prefix), lag_candidate(prefix)}) {
      if (c && std::none_of(out.begin(), out.end(), [&](KCandidate const& x) { return x.k == c->k; })) {
        out.push_back(*c);
      }
    }
    if (out.empty()) {
      throw NoCandidate("no candidate row width found in a prefix of length " + std::to_string(prefix.size()));
    }
    return out;
  }

  std::string_view column_kind_name(ColumnKind c) {
    switch (c) {
      case ColumnKind::constant: return "constant";
      case ColumnKind::periodic: return "periodic";
      case ColumnKind::self_similar: return "self-similar";
    }
    return "self-similar";
  }

  std::string_view shift_kind_name(ShiftKind s) {
    switch (s) {
      case ShiftKind::constant: return "constant";
      case ShiftKind::letter_map: return "letter-map";
      case ShiftKind::periodic_increment: return "periodic-increment";
      case ShiftKind::none: return "none";
    }
    return "none";
  }

  ColumnProfile column_profile(Word const& prefix, std::uint32_t k, MinerOptions const& opt) {
    if (k == 0 || prefix.size() < 3 * std::size_t{k}) {
      throw std::invalid_argument("column profile needs at least 3 rows");
    }
    ColumnProfile prof;
    prof.k    = k;
    prof.rows = prefix.size() / k;
    prof.columns.resize(k);
    std::vector<std::uint32_t> col(prof.rows);
    for (std::uint32_t j = 0; j < k; ++j) {
      for (std::size_t r = 0; r < prof.rows; ++r) {
        col[r] = prefix[r * k + j].value();
      }
      prof.columns[j] = classify(col, opt);
      if (prof.columns[j].kind != ColumnKind::self_similar) {
        prof.transient_rows = std::max(prof.transient_rows, prof.columns[j].stable_from);
      }
    }
    return prof;
  }

  StructureConjecture conjecture_structure(Word const&                  prefix,
                                           Fraction                     f,
                                           std::optional<std::uint32_t> k,
                                           MinerOptions const&          opt) {
    std::vector<KCandidate> cands;
    if (k) {
      cands.push_back({*k, "given", "supplied by the caller"});
    } else {
      cands = detect_k(prefix);
    }
    std::string failures;
    for (KCandidate const& c : cands) {
      if (prefix.size() < 3 * std::size_t{c.k}) {
        failures += "k = " + std::to_string(c.k) + ": prefix too short; ";
        continue;
      }
      Attempt a         = attempt(prefix, f, c.k, opt);
      a.conj.candidates = cands;
      if (a.failure.empty()) {
        if (!k) {
          // A power of the morphism also works; prefer the smallest width.
          for (std::uint32_t q = 2; q < c.k; ++q) {
            if (c.k % q == 0 && prefix.size() >= 10 * std::size_t{q}) {
              Attempt smaller = attempt(prefix, f, q, opt);
              if (smaller.failure.empty()) {
                smaller.conj.candidates = cands;
                return smaller.conj;
              }
            }
          }
        }
        return a.conj;
      }
      failures += "k = " + std::to_string(c.k) + ": " + a.failure + "; ";
    }
    throw Inconsistent(failures.empty() ? "no usable candidate" : failures.substr(0, failures.size() - 2));
  }

  std::string render_array(Word const& prefix, std::uint32_t k, std::size_t rows, std::size_t offset) {
    bool small = std::all_of(prefix.begin(), prefix.end(), [](Letter l) { return l.value() < 10 && !l.is_primed(); });
    std::string out;
    for (std::size_t r = 0; r < rows; ++r) {
      std::size_t from = offset + r * k;
      if (from >= prefix.size()) {
        break;
      }
      Word row(prefix.begin() + static_cast<std::ptrdiff_t>(from),
               prefix.begin() + static_cast<std::ptrdiff_t>(std::min(prefix.size(), from + k)));
      out += (small ? format_digits(row) : format_word(row)) + "\n";
    }
    return out;
  }

  namespace {

    struct Runs {
      std::vector<std::uint32_t> zeros;    // N + 1 zero-run lengths
      std::vector<Letter>        letters;  // N nonzero letters
    };

    Runs runs_of(Word const& u) {
      Runs r;
      r.zeros.push_back(0);
      for (Letter l : u) {
        if (l.value() == 0 && !l.is_primed()) {
          ++r.zeros.back();
        } else {
          r.letters.push_back(l);
          r.zeros.push_back(0);
        }
      }
      return r;
    }

  }  // namespace

  std::optional<SymbolicMorphism> generalize_pair(ExplicitMorphism const& m1,
                                                  Fraction                f1,
                                                  ExplicitMorphism const& m2,
                                                  Fraction                f2) {
    if (m1.d != m2.d || m1.shift_exceptions != m2.shift_exceptions || !m1.transient.empty() || !m2.transient.empty()) {
      return std::nullopt;
    }
    Runs r1 = runs_of(m1.u);
    Runs r2 = runs_of(m2.u);
    if (r1.letters != r2.letters) {
      return std::nullopt;
    }
    std::int64_t const a1 = f1.a, b1 = f1.b, a2 = f2.a, b2 = f2.b;
    std::int64_t const det = a1 * b2 - a2 * b1;
    if (det == 0) {
      return std::nullopt;
    }
    SymbolicMorphism m;
    m.name = "generalized";
    m.d    = m1.d;
    for (std::size_t t = 0; t < r1.zeros.size(); ++t) {
      std::int64_t l1 = std::int64_t{r1.zeros[t]} + 1;
      std::int64_t l2 = std::int64_t{r2.zeros[t]} + 1;
      std::int64_t in = l1 * b2 - l2 * b1;
      std::int64_t jn = a1 * l2 - a2 * l1;
      if (in % det != 0 || jn % det != 0) {
        return std::nullopt;
      }
      LinearForm run = LinearForm::of(in / det, jn / det, -1);
      if (!run.is_zero()) {
        m.blocks.push_back({SymLetter::lit(0), run});
      }
      if (t < r1.letters.size()) {
        m.blocks.push_back({SymLetter::lit(r1.letters[t].value()), LinearForm::constant(1)});
      }
    }
    m.k = m.image_length();
    try {
      m.interval = guess_interval(m);
    } catch (EmptyInterval const&) {
      m.interval = RationalInterval::open(Rational(1), Rational(2));
    }
    return m;
  }

  RationalInterval guess_interval(SymbolicMorphism const& m) {
    RationalInterval I = RationalInterval::open(Rational(1), Rational(2));
    for (SymBlock const& blk : m.blocks) {
      LinearForm const& e = blk.exp;
      if (e.alpha == 0) {
        if (e.beta < 0 || (e.beta == 0 && e.gamma < 0)) {
          throw EmptyInterval("run length " + e.str() + " is negative for large b");
        }
        continue;
      }
      Rational root(-e.beta, e.alpha);
      bool     closed = e.gamma >= 0;
      if (e.alpha > 0) {
        if (root > I.lower) {
          I.lower        = root;
          I.lower_closed = closed;
        } else if (root == I.lower) {
          I.lower_closed = I.lower_closed && closed;
        }
      } else {
        if (root < I.upper) {
          I.upper        = root;
          I.upper_closed = closed;
        } else if (root == I.upper) {
          I.upper_closed = I.upper_closed && closed;
        }
      }
    }
    if (I.upper < I.lower || (I.upper == I.lower && !(I.lower_closed && I.upper_closed))) {
      throw EmptyInterval("run lengths admit no rational in (1, 2)");
    }
    return I;
  }

}  // namespace fracpow
