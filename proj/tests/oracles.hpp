// Brute-force reference implementations used as test oracles.  They follow
// the definitions directly and are only fast enough for short words.

#ifndef FRACPOW_TESTS_ORACLES_HPP_
#define FRACPOW_TESTS_ORACLES_HPP_

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "fracpow/format.hpp"
#include "fracpow/morphism.hpp"
#include "fracpow/symbolic.hpp"
#include "fracpow/word.hpp"

namespace oracle {

  using fracpow::AvoidMode;
  using fracpow::Fraction;
  using fracpow::Word;

  inline std::vector<std::uint32_t> values(Word const& w) {
    std::vector<std::uint32_t> v;
    v.reserve(w.size());
    for (auto l : w) {
      v.push_back(l.value());
    }
    return v;
  }

  // Does w[s, s + len) have period p?
  inline bool has_period(std::vector<std::uint32_t> const& w, std::size_t s, std::size_t len, std::size_t p) {
    for (std::size_t t = 0; t + p < len; ++t) {
      if (w[s + t] != w[s + t + p]) {
        return false;
      }
    }
    return true;
  }

  // Is the suffix of w of length len with period p forbidden in this mode?
  inline bool forbidden(std::size_t len, std::size_t p, Fraction f, AvoidMode mode) {
    if (p == 0 || p >= len) {
      return false;
    }
    switch (mode) {
      case AvoidMode::exact:
        return p % f.b == 0 && len * f.b == p * f.a;
      case AvoidMode::at_least:
        return len * f.b >= p * f.a;
      case AvoidMode::greater:
        return len * f.b > p * f.a;
    }
    return false;
  }

  inline bool ends_with_power(std::vector<std::uint32_t> const& w, Fraction f, AvoidMode mode) {
    std::size_t n = w.size();
    if (mode == AvoidMode::exact) {
      for (std::size_t m = 1; m * f.a <= n; ++m) {
        if (has_period(w, n - m * f.a, m * f.a, m * f.b)) {
          return true;
        }
      }
      return false;
    }
    for (std::size_t len = 2; len <= n; ++len) {
      for (std::size_t p = 1; p < len; ++p) {
        if (forbidden(len, p, f, mode) && has_period(w, n - len, len, p)) {
          return true;
        }
      }
    }
    return false;
  }

  // First (start, m) with w[start, start + m a) an a/b-power.
  inline std::optional<std::pair<std::size_t, std::size_t>> find_power(Word const& word, Fraction f) {
    auto w = values(word);
    for (std::size_t s = 0; s < w.size(); ++s) {
      for (std::size_t m = 1; s + m * f.a <= w.size(); ++m) {
        if (has_period(w, s, m * f.a, m * f.b)) {
          return std::pair{s, m};
        }
      }
    }
    return std::nullopt;
  }

  // Greedy letter-by-letter construction straight from the definition.
  inline Word generate(Fraction f, std::size_t n, AvoidMode mode = AvoidMode::exact) {
    std::vector<std::uint32_t> w;
    Word                       out;
    while (w.size() < n) {
      for (std::uint32_t c = 0;; ++c) {
        w.push_back(c);
        if (!ends_with_power(w, f, mode)) {
          out.push_back(c);
          break;
        }
        w.pop_back();
      }
    }
    return out;
  }

  // Every smaller value at every position completes a power.
  inline bool least_by_replay(Word const& word, Fraction f) {
    auto w = values(word);
    for (std::size_t i = 0; i < w.size(); ++i) {
      std::vector<std::uint32_t> pre(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(i));
      for (std::uint32_t c = 0; c < w[i]; ++c) {
        pre.push_back(c);
        bool blocked = ends_with_power(pre, f, AvoidMode::exact);
        pre.pop_back();
        if (!blocked) {
          return false;
        }
      }
    }
    return true;
  }

  // Minimal length located by m on the natural numbers.  Every image-final
  // letter ranges over values that are either letters of u or one fresh
  // value, which is enough to realize every coincidence pattern among
  // windows spanning at most `images` images.
  inline std::size_t locating_length(fracpow::ExplicitMorphism const& m, std::size_t images = 4) {
    std::uint32_t top = 0;
    for (auto l : m.u) {
      top = std::max(top, l.value());
    }
    std::vector<std::uint32_t> lasts;
    for (std::uint32_t n = 0; n <= top + 2 + m.d; ++n) {
      lasts.push_back(m.last(n));
    }
    std::sort(lasts.begin(), lasts.end());
    lasts.erase(std::unique(lasts.begin(), lasts.end()), lasts.end());

    std::size_t const k = m.k;
    std::vector<std::vector<std::uint32_t>> texts;
    std::vector<std::size_t>                pick(images, 0);
    for (;;) {
      std::vector<std::uint32_t> t;
      for (std::size_t j = 0; j < images; ++j) {
        for (auto l : m.u) {
          t.push_back(l.value());
        }
        t.push_back(lasts[pick[j]]);
      }
      texts.push_back(std::move(t));
      std::size_t j = 0;
      while (j < images && ++pick[j] == lasts.size()) {
        pick[j++] = 0;
      }
      if (j == images) {
        break;
      }
    }
    for (std::size_t ell = 1; ell + k <= images * k; ++ell) {
      std::map<std::vector<std::uint32_t>, std::set<std::size_t>> seen;
      bool                                                        ok = true;
      for (auto const& t : texts) {
        for (std::size_t s = 0; s < k && ok; ++s) {
          std::vector<std::uint32_t> x(t.begin() + static_cast<std::ptrdiff_t>(s),
                                       t.begin() + static_cast<std::ptrdiff_t>(s + ell));
          auto& offs = seen[x];
          offs.insert(s);
          ok = offs.size() == 1;
        }
        if (!ok) {
          break;
        }
      }
      if (ok) {
        return ell;
      }
    }
    return 0;
  }

  // Windows of length mult * a of phi(n_0) phi(n_1) ... starting in the
  // first image; literal letters are kept, image-final letters become
  // -(image index + 1).
  inline std::vector<std::vector<std::int64_t>> explicit_windows(fracpow::ExplicitMorphism const& m,
                                                                 std::size_t                      len) {
    std::size_t const         k = m.k;
    std::vector<std::int64_t> stream;
    for (std::size_t img = 0; stream.size() < k + len; ++img) {
      for (auto l : m.u) {
        stream.push_back(l.value());
      }
      stream.push_back(-static_cast<std::int64_t>(img) - 1);
    }
    std::vector<std::vector<std::int64_t>> out;
    for (std::size_t s = 0; s < k; ++s) {
      out.emplace_back(stream.begin() + static_cast<std::ptrdiff_t>(s),
                       stream.begin() + static_cast<std::ptrdiff_t>(s + len));
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  inline std::vector<std::int64_t> instantiate_word(fracpow::SymbolicWord const& w,
                                                    std::int64_t                 a,
                                                    std::int64_t                 b,
                                                    std::int64_t                 i) {
    std::vector<std::int64_t> out;
    for (auto const& blk : w.blocks) {
      std::int64_t e = blk.exp.eval(a, b, i);
      std::int64_t v = blk.letter.symbol ? -static_cast<std::int64_t>(blk.letter.id) - 1
                                         : static_cast<std::int64_t>(blk.letter.value);
      out.insert(out.end(), static_cast<std::size_t>(std::max<std::int64_t>(e, 0)), v);
    }
    return out;
  }

  // Instantiates the symbolic factor table at a/b and compares it, window
  // by window, with the explicit windows.  Returns an empty string on
  // agreement.
  inline std::string factor_tables_agree(fracpow::SymbolicMorphism const&        m,
                                         std::vector<fracpow::FactorTable> const& tables,
                                         std::uint32_t                           mult,
                                         std::int64_t                            a,
                                         std::int64_t                            b) {
    fracpow::FactorTable const* hit = nullptr;
    for (auto const& t : tables) {
      if (t.domain.contains(a, b)) {
        hit = &t;
        break;
      }
    }
    if (!hit) {
      return "no domain contains " + std::to_string(a) + "/" + std::to_string(b);
    }
    std::size_t const part_len[3] = {static_cast<std::size_t>(mult * (a - b)),
                                     static_cast<std::size_t>(mult * (2 * b - a)),
                                     static_cast<std::size_t>(mult * (a - b))};
    std::vector<std::vector<std::int64_t>> sym;
    for (auto const& row : hit->rows) {
      std::int64_t lo = row.parametric ? row.i_lo.eval(a, b) : 0;
      std::int64_t hi = row.parametric ? row.i_hi.eval(a, b) : 0;
      for (std::int64_t i = lo; i <= hi; ++i) {
        std::vector<std::int64_t> w;
        for (std::size_t p = 0; p < 3; ++p) {
          auto part = instantiate_word(row.parts[p], a, b, i);
          if (part.size() != part_len[p]) {
            return "part " + std::to_string(p) + " has length " + std::to_string(part.size());
          }
          w.insert(w.end(), part.begin(), part.end());
        }
        sym.push_back(std::move(w));
      }
    }
    std::sort(sym.begin(), sym.end());
    auto ex = explicit_windows(fracpow::instantiate_unchecked(m, a, b), mult * static_cast<std::size_t>(a));
    if (sym.size() != ex.size()) {
      return std::to_string(sym.size()) + " symbolic windows vs " + std::to_string(ex.size()) + " explicit";
    }
    if (sym != ex) {
      return "window contents differ";
    }
    return {};
  }

  // The first `count` rationals admitted by m, by increasing denominator.
  inline std::vector<std::pair<std::int64_t, std::int64_t>> sample_rationals(fracpow::SymbolicMorphism const& m,
                                                                             std::size_t count) {
    std::vector<std::pair<std::int64_t, std::int64_t>> out;
    for (std::int64_t b = 1; b < 400 && out.size() < count; ++b) {
      for (std::int64_t a = b + 1; a < 2 * b && out.size() < count; ++a) {
        if (std::gcd(a, b) == 1 && m.admits(a, b)) {
          out.emplace_back(a, b);
        }
      }
    }
    return out;
  }

  // The first `count` admitted rationals lying in a leaf of the tables;
  // rationals the partition splits off belong to no leaf.
  inline std::vector<std::pair<std::int64_t, std::int64_t>> covered_samples(
      fracpow::SymbolicMorphism const&         m,
      std::vector<fracpow::FactorTable> const& tables,
      std::size_t                              count) {
    std::vector<std::pair<std::int64_t, std::int64_t>> out;
    for (auto [a, b] : sample_rationals(m, 500)) {
      bool covered = std::any_of(tables.begin(), tables.end(),
                                 [&, a = a, b = b](fracpow::FactorTable const& t) { return t.domain.contains(a, b); });
      if (covered) {
        out.emplace_back(a, b);
      }
      if (out.size() == count) {
        break;
      }
    }
    return out;
  }

  inline std::vector<std::filesystem::path> catalog_files(std::filesystem::path const& dir) {
    std::vector<std::filesystem::path> out;
    for (auto const& e : std::filesystem::directory_iterator(dir)) {
      if (e.path().extension() == ".json") {
        out.push_back(e.path());
      }
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  inline bool is_symbolic_file(std::string const& text) {
    return text.find("\"kind\": \"symbolic\"") != std::string::npos;
  }

}  // namespace oracle

#endif  // FRACPOW_TESTS_ORACLES_HPP_
