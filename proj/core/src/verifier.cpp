#include "fracpow/verifier.hpp"

#include "parallel.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <mutex>
#include <numeric>
#include <set>

namespace fracpow {

  std::string_view status_name(Status s) {
    switch (s) {
      case Status::proved:
        return "proved";
      case Status::refuted:
        return "refuted";
      case Status::inconclusive:
        return "inconclusive";
      case Status::hypothesis_violation:
        return "hypothesis-violation";
    }
    return "inconclusive";
  }

  int exit_code(Status s) {
    switch (s) {
      case Status::proved:
        return 0;
      case Status::refuted:
        return 1;
      case Status::inconclusive:
        return 2;
      case Status::hypothesis_violation:
        return 3;
    }
    return 2;
  }

  SymbolicStream::SymbolicStream(ExplicitMorphism const& m, bool with_transient)
      : m_(&m), k_(m.k), vlen_(with_transient ? m.transient.size() : 0) {
    u_.reserve(m.u.size());
    for (Letter l : m.u) {
      u_.push_back(l.value());
    }
    if (with_transient) {
      for (Letter l : m.transient) {
        v_.push_back(l.value());
      }
    }
  }

  namespace {
    std::uint64_t ceil_div(std::uint64_t p, std::uint64_t q) {
      return (p + q - 1) / q;
    }

    // Position-set refinement.  Each set holds positions whose factors of the
    // current length could still be equal; a set is split by the next letter,
    // with image-final letters joining every group they could match.
    struct RefineOutcome {
      std::size_t length;
      std::size_t first;
      std::size_t second;
      bool        stalled;
    };

    RefineOutcome refine(SymbolicStream const&              s,
                         std::vector<std::uint64_t>         positions,
                         std::function<bool(std::vector<std::uint64_t> const&)> const& keep,
                         std::size_t                         max_length) {
      using Set = std::vector<std::uint64_t>;
      std::vector<Set> sets;
      if (positions.size() >= 2 && keep(positions)) {
        sets.push_back(std::move(positions));
      }
      std::size_t length = 0;
      std::size_t first  = 0;
      std::size_t second = 0;

      std::vector<std::uint32_t> values;
      std::vector<Set>           groups;
      Set                        symbols;
      while (!sets.empty()) {
        if (length >= max_length) {
          return {length, sets[0][0], sets[0][1], true};
        }
        first  = sets[0][0];
        second = sets[0][1];
        std::vector<Set> next;
        bool             duplicated = false;
        for (Set const& set : sets) {
          values.clear();
          groups.clear();
          symbols.clear();
          for (std::uint64_t p : set) {
            std::uint32_t c = s.at(p + length);
            if (c == SymbolicStream::kSymbol) {
              symbols.push_back(p);
              continue;
            }
            std::size_t g = 0;
            while (g < values.size() && values[g] != c) {
              ++g;
            }
            if (g == values.size()) {
              values.push_back(c);
              groups.emplace_back();
            }
            groups[g].push_back(p);
          }
          std::size_t joined = 0;
          for (std::size_t g = 0; g < groups.size(); ++g) {
            Set out;
            if (!symbols.empty() && s.compatible(values[g])) {
              out.resize(groups[g].size() + symbols.size());
              std::merge(groups[g].begin(), groups[g].end(), symbols.begin(), symbols.end(), out.begin());
              ++joined;
            } else {
              out = std::move(groups[g]);
            }
            if (out.size() >= 2 && keep(out)) {
              next.push_back(std::move(out));
            }
          }
          if (!symbols.empty() && joined == 0 && symbols.size() >= 2 && keep(symbols)) {
            next.push_back(symbols);
          }
          duplicated = duplicated || joined > 1;
        }
        if (duplicated) {
          std::sort(next.begin(), next.end());
          next.erase(std::unique(next.begin(), next.end()), next.end());
        }
        sets = std::move(next);
        ++length;
      }
      return {length, first, second, false};
    }

    // Reusable union-find over the unknown letters of one window.
    class WindowSolver {
     public:
      explicit WindowSolver(SymbolicStream const& s) : s_(s) {}

      // True iff the window of length mult * a at `start` can be an a/b-power.
      bool satisfiable(std::uint64_t start, std::uint32_t mult, Fraction f) {
        std::uint64_t const xlen  = std::uint64_t{mult} * (f.a - f.b);
        std::uint64_t const shift = std::uint64_t{mult} * f.b;
        ++epoch_;
        base_ = start < s_.transient_length() ? 0 : s_.block(start);
        for (std::uint64_t t = 0; t < xlen; ++t) {
          std::uint32_t x = s_.at(start + t);
          std::uint32_t z = s_.at(start + shift + t);
          if (x != SymbolicStream::kSymbol && z != SymbolicStream::kSymbol) {
            if (x != z) {
              return false;
            }
            continue;
          }
          if (!unify(start + t, x, start + shift + t, z)) {
            return false;
          }
        }
        return true;
      }

     private:
      std::size_t node(std::uint64_t g) {
        std::size_t id = static_cast<std::size_t>(s_.block(g) - base_);
        if (id >= parent_.size()) {
          parent_.resize(id + 1);
          value_.resize(id + 1);
          stamp_.resize(id + 1, 0);
        }
        if (stamp_[id] != epoch_) {
          stamp_[id]  = epoch_;
          parent_[id] = id;
          value_[id]  = SymbolicStream::kSymbol;
        }
        return id;
      }

      std::size_t find(std::size_t x) {
        while (parent_[x] != x) {
          parent_[x] = parent_[parent_[x]];
          x          = parent_[x];
        }
        return x;
      }

      bool bind(std::size_t r, std::uint32_t c) {
        if (value_[r] == SymbolicStream::kSymbol) {
          if (!s_.compatible(c)) {
            return false;
          }
          value_[r] = c;
          return true;
        }
        return value_[r] == c;
      }

      bool unify(std::uint64_t gx, std::uint32_t x, std::uint64_t gz, std::uint32_t z) {
        if (x == SymbolicStream::kSymbol && z == SymbolicStream::kSymbol) {
          std::size_t rx = find(node(gx));
          std::size_t rz = find(node(gz));
          if (rx == rz) {
            return true;
          }
          std::uint32_t vx = value_[rx];
          std::uint32_t vz = value_[rz];
          if (vx != SymbolicStream::kSymbol && vz != SymbolicStream::kSymbol && vx != vz) {
            return false;
          }
          parent_[rx] = rz;
          if (vz == SymbolicStream::kSymbol) {
            value_[rz] = vx;
          }
          return true;
        }
        if (x == SymbolicStream::kSymbol) {
          return bind(find(node(gx)), z);
        }
        return bind(find(node(gz)), x);
      }

      SymbolicStream const&      s_;
      std::uint64_t              base_ = 0;
      std::vector<std::size_t>   parent_;
      std::vector<std::uint32_t> value_;
      std::vector<std::uint64_t> stamp_;
      std::uint64_t              epoch_ = 0;
    };

    std::string render_window(SymbolicStream const& s, std::uint64_t start, std::uint32_t mult, Fraction f) {
      std::uint64_t const xlen  = std::uint64_t{mult} * (f.a - f.b);
      std::uint64_t const shift = std::uint64_t{mult} * f.b;
      std::uint64_t const len   = std::uint64_t{mult} * f.a;
      std::uint64_t const base  = start < s.transient_length() ? 0 : s.block(start);
      std::string         out;
      for (std::uint64_t t = 0; t < len; ++t) {
        if (t == xlen || t == shift) {
          out += " |";
        }
        if (t != 0) {
          out += ' ';
        }
        std::uint32_t c = s.at(start + t);
        if (c == SymbolicStream::kSymbol) {
          out += "last(n" + std::to_string(s.block(start + t) - base) + ")";
        } else {
          out += std::to_string(c);
        }
      }
      return out;
    }

    bool supported_shape(ExplicitMorphism const& m, ProofReport& r) {
      if (m.has_primes()) {
        r.status = Status::hypothesis_violation;
        r.notes.push_back("primed letters are not supported by the explicit verifier");
        return false;
      }
      return true;
    }

    // Verification for a/b >= 2 through the divisibility argument: the
    // morphism must be 0^{a-1} (n + 1).
    ProofReport verify_large(ExplicitMorphism const& m, Fraction f) {
      ProofReport r;
      r.fraction = f;
      r.k        = m.k;
      r.d        = m.d;
      r.method   = "divisibility";
      bool shape = m.k == f.a && m.d == 1 && m.shift_exceptions.empty() && m.transient.empty()
                   && !m.has_primes()
                   && std::all_of(m.u.begin(), m.u.end(), [](Letter l) { return l == Letter(0); });
      if (!shape) {
        r.status = Status::inconclusive;
        r.notes.push_back("for a/b >= 2 only the morphism 0^{a-1}(n+1) is supported");
        return r;
      }
      // Every power would have period divisible by a; deleting zeros and
      // subtracting one yields a shorter power, so none exists.
      r.short_words_check = true;
      Word w              = expand_fixed_point(m, 20000);
      if (auto p = find_power_factor(w, f)) {
        r.status = Status::refuted;
        r.notes.push_back("power found at position " + std::to_string(p->start));
        return r;
      }
      r.status = Status::proved;
      return r;
    }
  }  // namespace

  LocatingResult locating_length_explicit(ExplicitMorphism const& m) {
    SymbolicStream             s(m);
    std::vector<std::uint64_t> positions(m.k);
    std::iota(positions.begin(), positions.end(), 0);
    auto out = refine(
        s, std::move(positions), [](auto const&) { return true; }, std::size_t{m.k} + 1);
    if (out.stalled) {
      throw NoLocatingLength("factors at positions " + std::to_string(out.first) + " and "
                                 + std::to_string(out.second)
                                 + " of the image never separate",
                             out.first,
                             out.second);
    }
    return {out.length, out.first, out.second};
  }

  std::optional<Violation> window_scan(ExplicitMorphism const& m, Fraction f, std::uint32_t mult) {
    SymbolicStream s(m);
    WindowSolver   solver(s);
    for (std::uint64_t r = 0; r < m.k; ++r) {
      if (solver.satisfiable(r, mult, f)) {
        return Violation{mult, r, render_window(s, r, mult, f)};
      }
    }
    return std::nullopt;
  }

  ProofReport verify_free_explicit(ExplicitMorphism const& m, Fraction f, VerifyOptions const& opt) {
    if (!f.below_two()) {
      return verify_large(m, f);
    }
    ProofReport r;
    r.fraction = f;
    r.k        = m.k;
    r.d        = m.d;
    if (!supported_shape(m, r)) {
      return r;
    }
    for (auto const& c : validate(m)) {
      if (!c.passed && c.name != "prolongable") {
        r.status = Status::hypothesis_violation;
        r.notes.push_back(c.name + ": " + c.detail);
      }
    }
    if (std::gcd(f.b, m.k) != 1) {
      r.status = Status::hypothesis_violation;
      r.notes.push_back("gcd(b, k) = " + std::to_string(std::gcd(f.b, m.k)));
    }
    if (r.status == Status::hypothesis_violation) {
      return r;
    }
    try {
      auto loc            = locating_length_explicit(m);
      r.locating_length   = loc.length;
      r.minimality_first  = loc.witness_first;
      r.minimality_second = loc.witness_second;
    } catch (NoLocatingLength const& e) {
      r.status = Status::hypothesis_violation;
      r.notes.push_back(e.what());
      return r;
    }
    std::uint64_t const ab = f.a - f.b;
    r.m_max                = static_cast<std::int64_t>(ceil_div(r.locating_length, ab)) - 1;
    std::uint64_t lhs      = r.m_max == 0 ? 0 : ceil_div(r.m_max * std::uint64_t{f.a} - 1, m.k);
    r.short_words_check    = lhs + 1 <= f.a - 1;

    std::vector<WindowResult> results(static_cast<std::size_t>(r.m_max));
    SymbolicStream            s(m);
    detail::parallel_for(1, static_cast<std::uint32_t>(r.m_max) + 1, opt.jobs, [&](std::uint64_t mm) {
      auto const mult = static_cast<std::uint32_t>(mm);
      WindowSolver  solver(s);
      WindowResult& out = results[mult - 1];
      out.m             = mult;
      for (std::uint64_t start = 0; start < m.k; ++start) {
        if (solver.satisfiable(start, mult, f)) {
          out.violation = Violation{mult, start, render_window(s, start, mult, f)};
          break;
        }
      }
    });
    r.window_results = std::move(results);

    bool clean = std::all_of(r.window_results.begin(), r.window_results.end(), [](auto const& w) {
      return !w.violation.has_value();
    });
    if (!r.short_words_check) {
      r.status = Status::inconclusive;
      r.notes.push_back("short-words inequality fails; preimages may contain powers");
    } else {
      r.status = clean ? Status::proved : Status::refuted;
    }
    return r;
  }

  TransientUniqueness transient_unique_length(ExplicitMorphism const& m, std::vector<std::size_t> skip) {
    SymbolicStream      s(m, true);
    std::uint64_t const v = m.transient.size();
    std::sort(skip.begin(), skip.end());
    std::vector<std::uint64_t> positions;
    for (std::uint64_t p = 0; p < v + m.k; ++p) {
      if (p < v && std::binary_search(skip.begin(), skip.end(), p)) {
        continue;
      }
      positions.push_back(p);
    }
    auto keep = [v](std::vector<std::uint64_t> const& set) { return set.front() < v; };
    auto out  = refine(s, std::move(positions), keep, v + m.k + 1);
    if (out.stalled) {
      throw NoUniqueFactor("no uniquely occurring factor starts at position "
                               + std::to_string(out.first),
                           out.first);
    }
    return {out.length, out.first, out.second};
  }

  bool check_anchor(ExplicitMorphism const& m, AnchorHint const& hint, std::size_t expand_to) {
    Word w = expand_fixed_point(m, std::max(expand_to, hint.position + hint.length));
    if (hint.position + hint.length > w.size()) {
      return false;
    }
    std::vector<std::uint32_t> text(w.size());
    for (std::size_t i = 0; i < w.size(); ++i) {
      text[i] = w[i].value();
    }
    auto first = text.begin() + static_cast<std::ptrdiff_t>(hint.position);
    auto last  = first + static_cast<std::ptrdiff_t>(hint.length);
    std::boyer_moore_horspool_searcher searcher(first, last);
    std::size_t                        count = 0;
    for (auto it = text.begin();;) {
      auto [b, e] = searcher(it, text.end());
      if (b == text.end()) {
        break;
      }
      ++count;
      if (static_cast<std::size_t>(b - text.begin()) != hint.position) {
        return false;
      }
      it = b + 1;
    }
    return count == 1;
  }

  ProofReport verify_transient_free(ExplicitMorphism const& m, Fraction f, VerifyOptions const& opt) {
    ProofReport r = verify_free_explicit(m, f, opt);
    if (m.transient.empty() || r.status != Status::proved) {
      return r;
    }
    std::size_t const v = m.transient.size();
    std::size_t       unique_len;
    try {
      if (opt.anchor) {
        if (opt.anchor->position >= v) {
          throw std::invalid_argument("anchor must start inside the transient");
        }
        std::size_t horizon = std::max<std::size_t>(2'000'000, 4 * (opt.anchor->position + opt.anchor->length));
        if (!check_anchor(m, *opt.anchor, horizon)) {
          r.status = Status::inconclusive;
          r.notes.push_back("anchor factor is not unique in the expanded prefix");
          return r;
        }
        r.anchor   = opt.anchor;
        auto rest  = transient_unique_length(m, {opt.anchor->position});
        unique_len = std::max(rest.length, opt.anchor->length);
      } else {
        unique_len = transient_unique_length(m).length;
      }
    } catch (NoUniqueFactor const& e) {
      r.status = Status::inconclusive;
      r.notes.push_back(std::string(e.what()) + "; supply an anchor hint");
      return r;
    }
    r.transient_unique_length = unique_len;
    std::uint64_t const ab    = f.a - f.b;
    r.transient_m_max         = static_cast<std::int64_t>(ceil_div(unique_len, ab)) - 1;
    std::uint32_t limit       = static_cast<std::uint32_t>(r.transient_m_max);
    if (!opt.deep) {
      limit = std::min(limit, opt.max_window_m);
    }
    r.transient_m_checked = limit;

    // Windows starting inside the transient lie in a finite prefix of the
    // actual word, so they are checked on the expansion itself.
    std::size_t const need = v + std::size_t{limit} * f.a + 1;
    Word const        w    = expand_fixed_point(m, need);
    std::vector<std::uint32_t> text(w.size());
    for (std::size_t i = 0; i < w.size(); ++i) {
      text[i] = w[i].value();
    }
    std::uint32_t const first = std::max<std::uint32_t>(1, opt.resume_from);
    std::vector<WindowResult> results(limit >= first ? limit - first + 1 : 0);
    std::mutex                progress;
    detail::parallel_for(first, std::uint64_t{limit} + 1, opt.jobs, [&](std::uint64_t mm) {
      auto const mult = static_cast<std::uint32_t>(mm);
      std::size_t const xlen  = std::size_t{mult} * (f.a - f.b);
      std::size_t const shift = std::size_t{mult} * f.b;
      WindowResult&     out   = results[mult - first];
      out.m                   = mult;
      for (std::size_t i = 0; i < v; ++i) {
        std::size_t t = 0;
        while (t < xlen && text[i + t] == text[i + shift + t]) {
          ++t;
        }
        if (t == xlen) {
          Word window(w.begin() + static_cast<std::ptrdiff_t>(i),
                      w.begin() + static_cast<std::ptrdiff_t>(i + std::size_t{mult} * f.a));
          out.violation = Violation{mult, i, format_word(window)};
          break;
        }
      }
      if (opt.on_window_done) {
        std::lock_guard lock(progress);
        opt.on_window_done(mult);
      }
    });
    r.transient_window_results = std::move(results);
    bool clean = std::all_of(r.transient_window_results.begin(),
                             r.transient_window_results.end(),
                             [](auto const& x) { return !x.violation.has_value(); });
    if (!clean) {
      r.status = Status::refuted;
    } else if (limit < r.transient_m_max) {
      r.status = Status::inconclusive;
      r.notes.push_back("transient window sweep stopped at m = " + std::to_string(limit) + " of "
                        + std::to_string(r.transient_m_max) + "; rerun with --deep");
    } else if (first > 1) {
      r.notes.push_back("resumed at m = " + std::to_string(first));
    }
    return r;
  }

  std::uint32_t default_cap(std::size_t ell, Fraction f) {
    std::uint64_t c = 2 * ceil_div(ell, f.a - f.b);
    return static_cast<std::uint32_t>(std::max<std::uint64_t>(256, c));
  }

  namespace {
    // Smallest power length m (in units of a) ending at position p when the
    // letter there is replaced by c; `at` returns letters of the word.
    template <typename At, typename Equal>
    std::optional<std::uint32_t> power_ending_at(std::uint64_t p,
                                                 std::uint32_t c,
                                                 Fraction      f,
                                                 std::uint32_t cap,
                                                 At const&     at,
                                                 Equal const&  equal) {
      for (std::uint32_t m = 1; m <= cap; ++m) {
        std::uint64_t const len   = std::uint64_t{m} * f.a;
        std::uint64_t const shift = std::uint64_t{m} * f.b;
        std::uint64_t const xlen  = std::uint64_t{m} * (f.a - f.b);
        if (len > p + 1) {
          break;
        }
        if (!equal(c, at(p - shift))) {
          continue;
        }
        std::uint64_t t = 1;
        while (t < xlen && equal(at(p - t), at(p - t - shift))) {
          ++t;
        }
        if (t == xlen) {
          return m;
        }
      }
      return std::nullopt;
    }

    // Value c < last(n) is inductive for n when some c' < n has last(c') = c.
    bool inductive(ExplicitMorphism const& m, std::uint32_t c, std::uint32_t n) {
      for (auto [x, l] : m.shift_exceptions) {
        if (l == c && x < n) {
          return true;
        }
      }
      if (c >= m.d) {
        std::uint32_t x = c - m.d;
        return x < n && m.shift_exceptions.count(x) == 0;
      }
      return false;
    }

    // Values c that are non-inductive for some n with c < last(n).
    std::vector<std::uint32_t> non_inductive_targets(ExplicitMorphism const& m) {
      std::uint32_t bound = m.d + 4;
      for (auto [x, l] : m.shift_exceptions) {
        bound = std::max(bound, std::max(x, l) + m.d + 4);
      }
      std::set<std::uint32_t> out;
      for (std::uint32_t n = 0; n <= bound; ++n) {
        for (std::uint32_t c = 0; c < m.last(n); ++c) {
          if (!inductive(m, c, n)) {
            out.insert(c);
          }
        }
      }
      return {out.begin(), out.end()};
    }

    void record(std::map<std::string, std::uint32_t>& w, std::string const& key, std::uint32_t m) {
      auto& slot = w[key];
      slot       = std::max(slot, m);
    }
  }  // namespace

  void verify_lex_least(ExplicitMorphism const& m, Fraction f, std::uint32_t cap, ProofReport& report) {
    report.leastness_checked = true;
    report.leastness_cap     = cap;
    if (m.has_primes()) {
      report.unresolved.push_back("primed letters are not supported");
      if (report.status == Status::proved) {
        report.status = Status::inconclusive;
      }
      return;
    }
    std::uint64_t const v  = m.transient.size();
    std::uint64_t const k  = m.k;
    std::uint64_t const i0 = ceil_div(std::uint64_t{cap} * f.a, k) + 1;

    // Concrete part: every position before image index i0.
    std::size_t const          n = static_cast<std::size_t>(v + i0 * k);
    Word const                 w = expand_fixed_point(m, n);
    std::vector<std::uint32_t> text(w.size());
    for (std::size_t i = 0; i < w.size(); ++i) {
      text[i] = w[i].value();
    }
    auto at_text = [&](std::uint64_t g) { return text[g]; };
    auto eq      = [](std::uint32_t x, std::uint32_t y) { return x == y; };
    for (std::uint64_t i = 0; i < text.size(); ++i) {
      std::uint32_t letter = text[i];
      if (letter == 0) {
        continue;
      }
      std::string   cls;
      bool          final_letter = false;
      std::uint32_t pre          = 0;
      if (i < v) {
        cls = "v";
      } else {
        std::uint64_t r = (i - v) % k;
        if (r + 1 < k) {
          cls = "u:" + std::to_string(r);
        } else {
          cls          = "last";
          final_letter = true;
          pre          = text[(i - v) / k];
        }
      }
      for (std::uint32_t c = 0; c < letter; ++c) {
        if (final_letter && inductive(m, c, pre)) {
          continue;
        }
        // The prefix is finite, so every power length fitting before i is tried.
        auto found = power_ending_at(i, c, f, std::numeric_limits<std::uint32_t>::max(), at_text, eq);
        if (found) {
          record(report.leastness_witnesses, cls + ":" + std::to_string(c), *found);
        } else {
          report.unresolved.push_back(cls + "@" + std::to_string(i) + ":" + std::to_string(c));
        }
      }
    }

    // Symbolic part: positions in images with index >= i0 see only images
    // phi(n) to their left, so a witness must hold for every choice of n.
    SymbolicStream s(m);
    auto           at_sym = [&](std::uint64_t g) { return s.at(g); };
    auto           eq_sym = [](std::uint32_t x, std::uint32_t y) {
      return x == y && x != SymbolicStream::kSymbol;
    };
    std::uint64_t const base = i0 * k;
    for (std::uint64_t r = 0; r + 1 < k; ++r) {
      std::uint32_t letter = s.at(r);
      for (std::uint32_t c = 0; c < letter; ++c) {
        auto found = power_ending_at(base + r, c, f, cap, at_sym, eq_sym);
        std::string key = "u:" + std::to_string(r) + ":" + std::to_string(c);
        if (found) {
          record(report.leastness_witnesses, key, *found);
        } else {
          report.unresolved.push_back(key + " (symbolic)");
        }
      }
    }
    for (std::uint32_t c : non_inductive_targets(m)) {
      auto found = power_ending_at(base + k - 1, c, f, cap, at_sym, eq_sym);
      std::string key = "last:" + std::to_string(c);
      if (found) {
        record(report.leastness_witnesses, key, *found);
      } else {
        report.unresolved.push_back(key + " (symbolic)");
      }
    }
    if (!report.unresolved.empty() && report.status == Status::proved) {
      report.status = Status::inconclusive;
      report.notes.push_back("leastness search exceeded cap " + std::to_string(cap));
    }
  }

  std::optional<std::size_t> replay_leastness(Word const& w, Fraction f) {
    Word prefix;
    prefix.reserve(w.size());
    for (std::size_t i = 0; i < w.size(); ++i) {
      std::uint32_t letter = w[i].value();
      for (std::uint32_t c = 0; c < letter; ++c) {
        prefix.emplace_back(c);
        bool found = false;
        for (std::size_t len = f.a; len <= prefix.size() && !found; len += f.a) {
          Word suffix(prefix.end() - static_cast<std::ptrdiff_t>(len), prefix.end());
          found = is_fractional_power(suffix, f);
        }
        prefix.pop_back();
        if (!found) {
          return i;
        }
      }
      prefix.push_back(w[i].coded());
    }
    return std::nullopt;
  }

}  // namespace fracpow
