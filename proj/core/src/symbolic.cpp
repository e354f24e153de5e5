#include "fracpow/symbolic.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <set>
#include <sstream>

#include "parallel.hpp"

namespace fracpow {

  namespace {

    using i64  = std::int64_t;
    __extension__ typedef __int128 i128;

    i64 floor_div(i128 n, i128 d) {
      if (d < 0) {
        n = -n;
        d = -d;
      }
      i128 q = n / d;
      if (n % d != 0 && n < 0) {
        --q;
      }
      return static_cast<i64>(q);
    }

    i64 ceil_div(i128 n, i128 d) {
      return -floor_div(-n, d);
    }

    i64 narrow(i128 v) {
      if (v > INT64_MAX || v < INT64_MIN) {
        throw std::overflow_error("integer overflow in symbolic arithmetic");
      }
      return static_cast<i64>(v);
    }

    // Value of alpha*x + beta at a rational x.
    Rational affine_at(i64 alpha, i64 beta, Rational const& x) {
      return Rational(alpha) * x + Rational(beta);
    }

    // x = u*a + v*b with a*x0 + b*y0 = gcd(a, b).
    void ext_gcd(i64 a, i64 b, i64& x, i64& y, i64& g) {
      i64 old_r = a, r = b, old_s = 1, s = 0, old_t = 0, t = 1;
      while (r != 0) {
        i64 q = old_r / r;
        i64 tmp;
        tmp   = old_r - q * r;
        old_r = r;
        r     = tmp;
        tmp   = old_s - q * s;
        old_s = s;
        s     = tmp;
        tmp   = old_t - q * t;
        old_t = t;
        t     = tmp;
      }
      if (old_r < 0) {
        old_r = -old_r;
        old_s = -old_s;
        old_t = -old_t;
      }
      g = old_r;
      x = old_s;
      y = old_t;
    }

    // A split request raised while deciding a comparison.
    struct NeedSplit {
      enum class Kind { ratio, peel, line, isolate } kind = Kind::ratio;
      Rational at;
      i64      alpha = 0, beta = 0, from = 0, to = 0;  // peel: h0 = from..to
      i64      s     = 0;                              // line: s < s0 | s >= s0
    };

    struct Undecidable {
      std::string what;
    };

    constexpr i64 kPeelCap       = 64;
    constexpr i64 kExplicitLine  = 256;
    constexpr i64 kLatticeBCap   = 200000;
    constexpr std::size_t kLeafCap = 4000;

    struct ConeInfo {
      bool                    interior_root = false;
      Rational                root;
      i64                     g     = 0;
      int                     sigma = 1;
      i64                     a0 = 0, b0 = 0;  // oriented primitive h0 = a0*a + b0*b
      i64                     lb0 = 1;
    };

    // Exact lower bound of h0 = alpha*a + beta*b over integer points with
    // p < a/b < q, given h0 > 0 there and delta = min of alpha*x + beta over
    // the endpoints.
    i64 lattice_min(i64 alpha, i64 beta, Rational const& p, Rational const& q, Rational const& delta) {
      i64 best = INT64_MAX;
      for (i64 b = 1; b <= kLatticeBCap; ++b) {
        if (best != INT64_MAX && Rational(b) * delta >= Rational(best)) {
          return best;
        }
        i64 lo = (p * Rational(b)).floor() + 1;
        i64 hi = (q * Rational(b)).ceil() - 1;
        if (lo > hi) {
          continue;
        }
        i64 v = std::min(narrow(i128{alpha} * lo + i128{beta} * b), narrow(i128{alpha} * hi + i128{beta} * b));
        best  = std::min(best, v);
      }
      i64 tail = (Rational(kLatticeBCap) * delta).floor();
      return std::max<i64>(1, std::min(best, tail));
    }

    class Oracle {
     public:
      explicit Oracle(Domain const& dom) : dom_(dom) {}

      bool allow_ratio = true;
      bool allow_peel  = true;

      Domain const& domain() const {
        return dom_;
      }

      // Lower and upper bounds of a parameter-free form on the domain.
      struct Range {
        std::optional<i64> lo, hi;
      };

      Range range(LinearForm const& f) {
        if (f.has_params()) {
          throw std::logic_error("range of a form with window parameters");
        }
        if (f.alpha == 0 && f.beta == 0) {
          return {f.gamma, f.gamma};
        }
        if (dom_.kind == Domain::Kind::line) {
          auto [f1, f0] = on_line(f);
          Range r;
          if (f1 == 0) {
            return {f0, f0};
          }
          i64 at_lo = narrow(i128{f1} * dom_.s_lo + f0);
          std::optional<i64> at_hi;
          if (dom_.s_hi) {
            at_hi = narrow(i128{f1} * *dom_.s_hi + f0);
          }
          if (f1 > 0) {
            r.lo = at_lo;
            r.hi = at_hi;
          } else {
            r.hi = at_lo;
            r.lo = at_hi;
          }
          return r;
        }
        ConeInfo const& ci = cone_info(f.alpha, f.beta);
        if (ci.interior_root) {
          return {};
        }
        Range r;
        if (ci.sigma > 0) {
          r.lo = narrow(i128{ci.g} * ci.lb0 + f.gamma);
        } else {
          r.hi = narrow(-i128{ci.g} * ci.lb0 + f.gamma);
        }
        return r;
      }

      // f >= c on the whole domain (true), nowhere (false), or a split.
      bool ge(LinearForm const& f, i64 c) {
        Range r = range(f);
        if (r.lo && *r.lo >= c) {
          return true;
        }
        if (r.hi && *r.hi < c) {
          return false;
        }
        if (dom_.kind == Domain::Kind::line) {
          if (!allow_peel) {
            throw Undecidable{"sign of " + f.str() + " varies on " + dom_.str()};
          }
          auto [f1, f0] = on_line(f);
          NeedSplit s;
          s.kind = NeedSplit::Kind::line;
          s.s    = f1 > 0 ? ceil_div(i128{c} - f0, f1) : floor_div(i128{f0} - c, -f1) + 1;
          throw s;
        }
        ConeInfo const& ci = cone_info(f.alpha, f.beta);
        if (ci.interior_root) {
          if (!allow_ratio) {
            throw Undecidable{"sign of " + f.str() + " changes at " + ci.root.str()};
          }
          NeedSplit s;
          s.kind = NeedSplit::Kind::ratio;
          s.at   = ci.root;
          throw s;
        }
        i64 to = ci.sigma > 0 ? ceil_div(i128{c} - f.gamma, ci.g) - 1 : floor_div(i128{f.gamma} - c, ci.g);
        if (!allow_peel || to - ci.lb0 + 1 > kPeelCap) {
          throw Undecidable{"cannot decide " + f.str() + " >= " + std::to_string(c) + " on " + dom_.str()};
        }
        NeedSplit s;
        s.kind  = NeedSplit::Kind::peel;
        s.alpha = ci.a0;
        s.beta  = ci.b0;
        s.from  = ci.lb0;
        s.to    = to;
        throw s;
      }

      std::optional<bool> try_ge(LinearForm const& f, i64 c) {
        try {
          return ge(f, c);
        } catch (NeedSplit const&) {
          return std::nullopt;
        } catch (Undecidable const&) {
          return std::nullopt;
        }
      }

      // Requests that the point (a, b) be split off the domain.
      [[noreturn]] void isolate(i64 a, i64 b) {
        NeedSplit s;
        if (dom_.kind == Domain::Kind::cone) {
          s.kind = NeedSplit::Kind::ratio;
          s.at   = Rational(a, b);
        } else {
          s.kind = NeedSplit::Kind::isolate;
          s.s    = dom_.b1 != 0 ? (b - dom_.b0) / dom_.b1 : (a - dom_.a0) / dom_.a1;
        }
        throw s;
      }

     private:
      std::pair<i64, i64> on_line(LinearForm const& f) const {
        i64 f1 = narrow(i128{f.alpha} * dom_.a1 + i128{f.beta} * dom_.b1);
        i64 f0 = narrow(i128{f.alpha} * dom_.a0 + i128{f.beta} * dom_.b0 + f.gamma);
        return {f1, f0};
      }

      ConeInfo const& cone_info(i64 alpha, i64 beta) {
        auto key = std::make_pair(alpha, beta);
        auto it  = cache_.find(key);
        if (it != cache_.end()) {
          return it->second;
        }
        ConeInfo ci;
        ci.g   = std::gcd(alpha, beta);
        i64 a0 = alpha / ci.g;
        i64 b0 = beta / ci.g;
        Rational const& p = dom_.interval.lower;
        Rational const& q = dom_.interval.upper;
        Rational vp = affine_at(a0, b0, p);
        Rational vq = affine_at(a0, b0, q);
        if ((vp > Rational(0) && vq < Rational(0)) || (vp < Rational(0) && vq > Rational(0))) {
          ci.interior_root = true;
          ci.root          = Rational(-b0, a0);
          return cache_.emplace(key, ci).first->second;
        }
        ci.sigma = (vp > Rational(0) || vq > Rational(0)) ? 1 : -1;
        if (ci.sigma < 0) {
          a0 = -a0;
          b0 = -b0;
          vp = -vp;
          vq = -vq;
        }
        ci.a0  = a0;
        ci.b0  = b0;
        ci.lb0 = 1;
        for (HalfPlane const& h : dom_.bounds) {
          if (h.alpha == a0 && h.beta == b0) {
            ci.lb0 = std::max(ci.lb0, h.min);
          }
        }
        Rational delta = std::min(vp, vq);
        if (delta > Rational(0)) {
          ci.lb0 = std::max(ci.lb0, lattice_min(a0, b0, p, q, delta));
        }
        return cache_.emplace(key, ci).first->second;
      }

      Domain const&                              dom_;
      std::map<std::pair<i64, i64>, ConeInfo>    cache_;
    };

    // ---- Domain splitting ----

    struct SplitPoint {
      Rational    ratio;
      std::string origin;
    };

    // Constraint c0 + c1*s >= 0 accumulated into [lo, hi].
    struct SRange {
      std::optional<i64> lo, hi;
      bool               empty = false;
      void add(i128 c0, i128 c1) {
        if (c1 == 0) {
          empty = empty || c0 < 0;
        } else if (c1 > 0) {
          i64 v = ceil_div(-c0, c1);
          lo    = lo ? std::max(*lo, v) : v;
        } else {
          i64 v = floor_div(c0, -c1);
          hi    = hi ? std::min(*hi, v) : v;
        }
      }
    };

    void add_points(Domain const& line, std::vector<SplitPoint>& points, std::string const& origin) {
      for (i64 s = line.s_lo; s <= *line.s_hi; ++s) {
        i64 a = line.a0 + line.a1 * s;
        i64 b = line.b0 + line.b1 * s;
        if (b >= 1 && std::gcd(a, b) == 1) {
          points.push_back({Rational(a, b), origin});
        }
      }
    }

    // Lines with few points are replaced by the points themselves.
    void push_line(Domain line, std::vector<Domain>& out, std::vector<SplitPoint>& points) {
      if (line.s_hi && *line.s_hi < line.s_lo) {
        return;
      }
      if (line.s_hi && *line.s_hi - line.s_lo < kExplicitLine) {
        add_points(line, points, "family");
        return;
      }
      out.push_back(std::move(line));
    }

    // The integer points of a cone leaf on alpha*a + beta*b = v.
    std::optional<Domain> make_line(Domain const& cone, i64 alpha, i64 beta, i64 v) {
      i64 x, y, g;
      ext_gcd(alpha, beta, x, y, g);
      Domain d;
      d.kind     = Domain::Kind::line;
      d.interval = cone.interval;
      d.bounds   = cone.bounds;
      d.a0       = narrow(i128{v} * x);
      d.b0       = narrow(i128{v} * y);
      d.a1       = -beta;
      d.b1       = alpha;
      if (d.b1 < 0 || (d.b1 == 0 && d.a1 < 0)) {
        d.a1 = -d.a1;
        d.b1 = -d.b1;
      }
      SRange r;
      r.add(i128{d.b0} - 1, d.b1);
      Rational const& p = cone.interval.lower;
      Rational const& q = cone.interval.upper;
      r.add(i128{p.den()} * d.a0 - i128{p.num()} * d.b0 - 1, i128{p.den()} * d.a1 - i128{p.num()} * d.b1);
      r.add(i128{q.num()} * d.b0 - i128{q.den()} * d.a0 - 1, i128{q.num()} * d.b1 - i128{q.den()} * d.a1);
      for (HalfPlane const& h : cone.bounds) {
        r.add(i128{h.alpha} * d.a0 + i128{h.beta} * d.b0 - h.min, i128{h.alpha} * d.a1 + i128{h.beta} * d.b1);
      }
      if (r.empty || (r.lo && r.hi && *r.hi < *r.lo)) {
        return std::nullopt;
      }
      if (!r.lo) {
        if (!r.hi) {
          throw std::logic_error("unbounded line in a cone");
        }
        d.a1   = -d.a1;
        d.b1   = -d.b1;
        d.s_lo = -*r.hi;
      } else {
        d.s_lo = *r.lo;
        d.s_hi = r.hi;
      }
      // Re-anchor so that s starts at 0.
      d.a0 += d.a1 * d.s_lo;
      d.b0 += d.b1 * d.s_lo;
      if (d.s_hi) {
        d.s_hi = *d.s_hi - d.s_lo;
      }
      d.s_lo = 0;
      return d;
    }

    std::vector<Domain> split_leaf(Domain const& leaf, NeedSplit const& ns, std::vector<SplitPoint>& points) {
      std::vector<Domain> out;
      switch (ns.kind) {
        case NeedSplit::Kind::ratio: {
          Domain left           = leaf;
          left.interval.upper   = ns.at;
          Domain right          = leaf;
          right.interval.lower  = ns.at;
          out.push_back(left);
          out.push_back(right);
          points.push_back({ns.at, "split"});
          break;
        }
        case NeedSplit::Kind::peel: {
          Domain rest  = leaf;
          bool   found = false;
          for (HalfPlane& h : rest.bounds) {
            if (h.alpha == ns.alpha && h.beta == ns.beta) {
              h.min = std::max(h.min, ns.to + 1);
              found = true;
            }
          }
          if (!found) {
            rest.bounds.push_back({ns.alpha, ns.beta, ns.to + 1});
          }
          out.push_back(rest);
          for (i64 v = ns.from; v <= ns.to; ++v) {
            if (auto line = make_line(leaf, ns.alpha, ns.beta, v)) {
              push_line(*line, out, points);
            }
          }
          break;
        }
        case NeedSplit::Kind::line:
        case NeedSplit::Kind::isolate: {
          i64    cut   = ns.s;
          Domain lower = leaf;
          lower.s_hi   = cut - 1;
          push_line(lower, out, points);
          Domain upper = leaf;
          upper.a0 += upper.a1 * cut;
          upper.b0 += upper.b1 * cut;
          upper.s_lo = 0;
          if (leaf.s_hi) {
            upper.s_hi = *leaf.s_hi - cut;
          }
          if (ns.kind == NeedSplit::Kind::isolate) {
            Domain one = upper;
            one.s_hi   = 0;
            add_points(one, points, "family");
            upper.a0 += upper.a1;
            upper.b0 += upper.b1;
            if (upper.s_hi) {
              upper.s_hi = *upper.s_hi - 1;
            }
          }
          push_line(upper, out, points);
          break;
        }
      }
      return out;
    }

    // ---- Listing windows of phi(n_0) phi(n_1) ... ----

    class Engine {
     public:
      struct Cut {
        i64         img = 0;
        std::size_t blk = 0;
        LinearForm  off;
      };

      Engine(SymbolicMorphism const& m, Oracle& o) : o_(o) {
        for (SymBlock const& b : m.blocks) {
          if (o_.ge(b.exp, 1)) {
            img_.push_back(b);
          } else if (!o_.ge(b.exp, 0)) {
            throw Undecidable{"negative run length " + b.exp.str() + " on " + o_.domain().str()};
          }
        }
        img_.push_back({SymLetter::sym(0), LinearForm::constant(1)});
      }

      Cut locate(LinearForm x) {
        Cut c;
        while (o_.ge(x - len(c), 0)) {
          x -= len(c);
          next(c);
        }
        c.off = o_.ge(x, 1) ? x : LinearForm{};
        return c;
      }

      SymbolicWord between(Cut p, Cut const& q, LinearForm const& shift) {
        SymbolicWord w;
        if (p.img == q.img && p.blk == q.blk) {
          push(w, letter(p), q.off - p.off);
          return w;
        }
        push(w, letter(p), len(p) - p.off - shift);
        next(p);
        while (!(p.img == q.img && p.blk == q.blk)) {
          push(w, letter(p), len(p));
          next(p);
        }
        push(w, letter(q), q.off + shift);
        return w;
      }

      // One row per run of start positions inside the first image; the
      // window is cut into consecutive parts of the given lengths.
      std::vector<FactorRow> rows(std::vector<LinearForm> const& parts) {
        std::size_t const K = parts.size();
        std::vector<Cut>  cuts(K + 1);
        LinearForm        acc;
        for (std::size_t p = 0; p < K; ++p) {
          acc += parts[p];
          cuts[p + 1] = locate(acc);
        }
        std::vector<FactorRow> out;
        while (cuts[0].img == 0) {
          std::vector<LinearForm> rem(K + 1);
          std::size_t             best = 0;
          for (std::size_t c = 0; c <= K; ++c) {
            rem[c] = len(cuts[c]) - cuts[c].off;
            if (c > 0 && !o_.ge(rem[c] - rem[best], 0)) {
              best = c;
            }
          }
          LinearForm const D = rem[best];
          out.push_back(row(cuts, LinearForm{}, false, {}, {}));
          if (o_.ge(D, 2)) {
            out.push_back(row(cuts, LinearForm::param_i(), true, LinearForm::constant(1), D - LinearForm::constant(1)));
          }
          for (std::size_t c = 0; c <= K; ++c) {
            if (c == best || !o_.ge(rem[c] - D, 1)) {
              next(cuts[c]);
            } else {
              cuts[c].off += D;
            }
          }
        }
        return out;
      }

     private:
      FactorRow row(std::vector<Cut> const& cuts, LinearForm const& shift, bool parametric, LinearForm lo, LinearForm hi) {
        FactorRow r;
        for (std::size_t p = 0; p + 1 < cuts.size(); ++p) {
          r.parts.push_back(between(cuts[p], cuts[p + 1], shift));
        }
        r.parametric   = parametric;
        r.i_lo         = lo;
        r.i_hi         = hi;
        r.start_block  = cuts[0].blk;
        r.start_offset = cuts[0].off;
        return r;
      }

      LinearForm const& len(Cut const& c) const {
        return img_[c.blk].exp;
      }
      void next(Cut& c) const {
        if (++c.blk == img_.size()) {
          c.blk = 0;
          ++c.img;
        }
        c.off = LinearForm{};
      }
      SymLetter letter(Cut const& c) const {
        SymLetter l = img_[c.blk].letter;
        if (l.symbol) {
          l.id = static_cast<std::uint32_t>(c.img);
        }
        return l;
      }
      static void push(SymbolicWord& w, SymLetter l, LinearForm const& e) {
        if (!e.is_zero()) {
          w.blocks.push_back({l, e});
        }
      }

      Oracle&               o_;
      std::vector<SymBlock> img_;
    };

    // ---- Inequality of symbolic words ----

    struct ParamBox {
      std::optional<ParamRange> i, j;
    };

    struct Skeleton {
      bool                    ok = true;
      std::vector<SymLetter>  letters;
      std::vector<LinearForm> runs;
    };

    // Nonzero letters in order, and the zero runs around them.
    Skeleton skeleton(SymbolicWord const& w) {
      Skeleton s;
      s.runs.emplace_back();
      for (SymBlock const& b : w.blocks) {
        if (!b.letter.symbol && b.letter.value == 0) {
          s.runs.back() += b.exp;
          continue;
        }
        if (!b.exp.is_constant() || b.exp.gamma < 0) {
          s.ok = false;
          return s;
        }
        for (i64 t = 0; t < b.exp.gamma; ++t) {
          s.letters.push_back(b.letter);
          s.runs.emplace_back();
        }
      }
      return s;
    }

    std::optional<std::vector<LinearForm>> corners(LinearForm const& f, ParamBox const& box) {
      std::vector<LinearForm> out{f};
      for (int which = 0; which < 2; ++which) {
        std::vector<LinearForm> next;
        for (LinearForm const& g : out) {
          i64 c = which == 0 ? g.cj : g.ci;
          if (c == 0) {
            next.push_back(g);
            continue;
          }
          auto const& r = which == 0 ? box.j : box.i;
          if (!r) {
            return std::nullopt;
          }
          for (LinearForm const* v : {&r->lo, &r->hi}) {
            next.push_back(which == 0 ? g.substitute_j(*v) : g.substitute_i(*v));
          }
        }
        out = std::move(next);
      }
      return out;
    }

    // f >= 1 everywhere or f <= -1 everywhere on domain and box.
    bool never_zero(LinearForm const& f, ParamBox const& box, Oracle& o) {
      auto cs = corners(f, box);
      if (!cs) {
        return false;
      }
      bool pos = true, neg = true;
      for (LinearForm const& c : *cs) {
        pos = pos && o.try_ge(c, 1).value_or(false);
        neg = neg && o.try_ge(-c, 1).value_or(false);
      }
      return pos || neg;
    }

    // lo <= f <= hi is impossible on domain and box.
    bool outside(LinearForm const& f, ParamRange const& r, ParamBox const& box, Oracle& o) {
      auto below = corners(r.lo - f, box);
      auto above = corners(f - r.hi, box);
      auto all_pos = [&](std::optional<std::vector<LinearForm>> const& cs) {
        if (!cs) {
          return false;
        }
        return std::all_of(cs->begin(), cs->end(), [&](LinearForm const& c) { return o.try_ge(c, 1).value_or(false); });
      };
      return all_pos(below) || all_pos(above);
    }

    struct SolveResult {
      bool                                  unsolvable = false;
      std::optional<std::pair<i64, i64>>    point;  // the unique solution (a, b) in the domain
    };

    // Decides whether the run equations E = 0 have no solution.
    SolveResult solve_runs(std::vector<LinearForm> eqs, ParamBox box, Oracle& o) {
      SolveResult res;
      for (bool progress = true; progress;) {
        progress = false;
        std::erase_if(eqs, [](LinearForm const& e) { return e.is_zero(); });
        for (LinearForm const& e : eqs) {
          if (never_zero(e, box, o)) {
            res.unsolvable = true;
            return res;
          }
        }
        for (std::size_t n = 0; n < eqs.size() && !progress; ++n) {
          for (int which = 0; which < 2 && !progress; ++which) {
            LinearForm const& e = eqs[n];
            i64               c = which == 0 ? e.ci : e.cj;
            auto&             r = which == 0 ? box.i : box.j;
            if ((c != 1 && c != -1) || !r) {
              continue;
            }
            LinearForm rest = e;
            (which == 0 ? rest.ci : rest.cj) = 0;
            LinearForm value = -c * rest;
            ParamRange range = *r;
            r.reset();
            if (outside(value, range, box, o)) {
              res.unsolvable = true;
              return res;
            }
            std::vector<LinearForm> next;
            for (std::size_t t = 0; t < eqs.size(); ++t) {
              if (t != n) {
                next.push_back(which == 0 ? eqs[t].substitute_i(value) : eqs[t].substitute_j(value));
              }
            }
            eqs      = std::move(next);
            progress = true;
          }
        }
      }
      std::vector<LinearForm> plain;
      for (LinearForm const& e : eqs) {
        if (!e.has_params()) {
          plain.push_back(e);
        }
      }
      for (std::size_t x = 0; x < plain.size(); ++x) {
        for (std::size_t y = x + 1; y < plain.size(); ++y) {
          LinearForm const& e = plain[x];
          LinearForm const& f = plain[y];
          i128 det = i128{e.alpha} * f.beta - i128{f.alpha} * e.beta;
          if (det == 0) {
            // Parallel homogeneous parts: consistent only if proportional.
            i128 lhs = i128{e.gamma} * (f.alpha != 0 ? f.alpha : f.beta);
            i128 rhs = i128{f.gamma} * (e.alpha != 0 ? e.alpha : e.beta);
            if (lhs != rhs) {
              res.unsolvable = true;
              return res;
            }
            continue;
          }
          i128 an = -i128{e.gamma} * f.beta + i128{f.gamma} * e.beta;
          i128 bn = -i128{e.alpha} * f.gamma + i128{f.alpha} * e.gamma;
          if (an % det != 0 || bn % det != 0) {
            res.unsolvable = true;
            return res;
          }
          i64 a = narrow(an / det);
          i64 b = narrow(bn / det);
          if (b < 1 || std::gcd(a, b) != 1 || !o.domain().contains(a, b)) {
            res.unsolvable = true;
            return res;
          }
          res.point = std::make_pair(a, b);
          return res;
        }
      }
      return res;
    }

    // Core of sym_unequal.  With `allow_split`, undecided comparisons are
    // turned into split requests.
    Inequality unequal(SymbolicWord const& x,
                       SymbolicWord const& z,
                       Oracle&             o,
                       std::uint32_t       d,
                       ParamBox const&     box,
                       bool                allow_split) {
      Skeleton sx = skeleton(x);
      Skeleton sz = skeleton(z);
      if (!sx.ok || !sz.ok) {
        return Inequality::unknown;
      }
      if (sx.letters.size() != sz.letters.size()) {
        return Inequality::unequal;
      }
      // Letters: explicit values, or symbols n_id + d with n_id >= 0.
      std::map<std::uint32_t, std::uint32_t>                parent;
      std::map<std::uint32_t, std::optional<std::uint32_t>> bound;
      auto find = [&](std::uint32_t id) {
        parent.try_emplace(id, id);
        while (parent[id] != id) {
          id = parent[id] = parent[parent[id]];
        }
        return id;
      };
      auto bind = [&](std::uint32_t id, std::uint32_t value) {
        auto& slot = bound[find(id)];
        if (slot && *slot != value) {
          return false;
        }
        slot = value;
        return true;
      };
      for (std::size_t n = 0; n < sx.letters.size(); ++n) {
        SymLetter const& p = sx.letters[n];
        SymLetter const& q = sz.letters[n];
        if (!p.symbol && !q.symbol) {
          if (p.value != q.value) {
            return Inequality::unequal;
          }
        } else if (p.symbol != q.symbol) {
          SymLetter const& s = p.symbol ? p : q;
          SymLetter const& c = p.symbol ? q : p;
          if (c.value < d || !bind(s.id, c.value)) {
            return Inequality::unequal;
          }
        } else {
          std::uint32_t rp = find(p.id);
          std::uint32_t rq = find(q.id);
          if (rp != rq) {
            auto vp = bound[rp];
            auto vq = bound[rq];
            if (vp && vq && *vp != *vq) {
              return Inequality::unequal;
            }
            parent[rp] = rq;
            if (vp) {
              bound[rq] = vp;
            }
          }
        }
      }
      std::vector<LinearForm> eqs;
      for (std::size_t n = 0; n < sx.runs.size(); ++n) {
        eqs.push_back(sx.runs[n] - sz.runs[n]);
      }
      SolveResult sr = solve_runs(eqs, box, o);
      if (sr.unsolvable) {
        return Inequality::unequal;
      }
      if (!allow_split) {
        return Inequality::unknown;
      }
      if (sr.point) {
        o.isolate(sr.point->first, sr.point->second);
      }
      for (LinearForm const& e : eqs) {
        if (auto cs = corners(e, box)) {
          for (LinearForm const& c : *cs) {
            o.ge(c, 1);
            o.ge(-c, 1);
          }
        }
      }
      return Inequality::unknown;
    }

    // Moves the window parameter i of a word to j.
    SymbolicWord rename_i(SymbolicWord w) {
      for (SymBlock& b : w.blocks) {
        b.exp.cj = b.exp.ci;
        b.exp.ci = 0;
      }
      return w;
    }

    // Substitutes i -> i + j.
    SymbolicWord slide(SymbolicWord w) {
      for (SymBlock& b : w.blocks) {
        b.exp.cj += b.exp.ci;
      }
      return w;
    }

    SymbolicWord offset_ids(SymbolicWord w, std::uint32_t by) {
      for (SymBlock& b : w.blocks) {
        if (b.letter.symbol) {
          b.letter.id += by;
        }
      }
      return w;
    }

    std::string describe_row(FactorRow const& r, std::uint32_t d) {
      std::string out;
      for (std::size_t p = 0; p < r.parts.size(); ++p) {
        out += (p ? " | " : "") + r.parts[p].str(d);
      }
      if (r.parametric) {
        out += "  (" + r.i_lo.str() + " <= i <= " + r.i_hi.str() + ")";
      }
      return out;
    }

    // ---- Leaf partition driven by split requests ----

    struct JobOutcome {
      enum class Kind { ok, fail, split } kind = Kind::ok;
      NeedSplit   split;
      std::string message;
    };

    class Partition {
     public:
      std::vector<Domain>      leaves;
      std::vector<std::string> failures;  // parallel to leaves; empty = fine
      std::vector<SplitPoint>  points;

      // Runs `job` on every leaf not yet failed, refining leaves on split
      // requests.  Returns the number of leaves that failed in this run.
      template <typename Job>
      std::size_t run(Job const& job, unsigned jobs) {
        std::vector<char> todo(leaves.size());
        for (std::size_t n = 0; n < leaves.size(); ++n) {
          todo[n] = failures[n].empty();
        }
        std::size_t failed = 0;
        while (std::find(todo.begin(), todo.end(), 1) != todo.end()) {
          std::vector<std::size_t> idx;
          for (std::size_t n = 0; n < todo.size(); ++n) {
            if (todo[n]) {
              idx.push_back(n);
            }
          }
          std::vector<JobOutcome> out(idx.size());
          detail::parallel_for(0, idx.size(), jobs, [&](std::uint64_t t) { out[t] = guarded(job, leaves[idx[t]]); });
          std::vector<Domain>      next;
          std::vector<std::string> next_fail;
          std::vector<char>        next_todo;
          std::size_t              t = 0;
          for (std::size_t n = 0; n < leaves.size(); ++n) {
            if (!todo[n]) {
              next.push_back(leaves[n]);
              next_fail.push_back(failures[n]);
              next_todo.push_back(0);
              continue;
            }
            JobOutcome const& o = out[t++];
            if (o.kind == JobOutcome::Kind::split && leaves.size() < kLeafCap) {
              for (Domain& child : split_leaf(leaves[n], o.split, points)) {
                next.push_back(std::move(child));
                next_fail.emplace_back();
                next_todo.push_back(1);
              }
              continue;
            }
            next.push_back(leaves[n]);
            if (o.kind == JobOutcome::Kind::ok) {
              next_fail.emplace_back();
            } else {
              next_fail.push_back(o.kind == JobOutcome::Kind::split ? "leaf limit reached" : o.message);
              ++failed;
            }
            next_todo.push_back(0);
          }
          leaves   = std::move(next);
          failures = std::move(next_fail);
          todo     = std::move(next_todo);
        }
        return failed;
      }

     private:
      template <typename Job>
      static JobOutcome guarded(Job const& job, Domain const& dom) {
        JobOutcome o;
        try {
          o.message = job(dom);
          o.kind    = o.message.empty() ? JobOutcome::Kind::ok : JobOutcome::Kind::fail;
        } catch (NeedSplit const& s) {
          o.kind  = JobOutcome::Kind::split;
          o.split = s;
        } catch (Undecidable const& u) {
          o.kind    = JobOutcome::Kind::fail;
          o.message = u.what;
        } catch (std::exception const& e) {
          o.kind    = JobOutcome::Kind::fail;
          o.message = e.what();
        }
        return o;
      }
    };

    // Initial leaves: the open interval cut at the excluded rationals.
    Partition initial_partition(RationalInterval const& I, std::vector<Rational> const& excluded) {
      std::vector<Rational> cuts{I.lower};
      for (Rational const& r : excluded) {
        if (I.contains_interior(r)) {
          cuts.push_back(r);
        }
      }
      cuts.push_back(I.upper);
      std::sort(cuts.begin(), cuts.end());
      cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
      Partition part;
      for (std::size_t n = 0; n + 1 < cuts.size(); ++n) {
        part.leaves.push_back(Domain::cone(cuts[n], cuts[n + 1]));
        part.failures.emplace_back();
      }
      if (I.lower_closed) {
        part.points.push_back({I.lower, "endpoint"});
      }
      if (I.upper_closed) {
        part.points.push_back({I.upper, "endpoint"});
      }
      return part;
    }

    // Empty string when phi locates words of length L on the leaf.
    std::string locates_on(SymbolicMorphism const& m, LinearForm const& L, Domain const& dom) {
      Oracle o(dom);
      Engine e(m, o);
      std::vector<FactorRow> rows = e.rows({L});
      std::vector<char>      multi(rows.size(), 0);
      for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].parametric) {
          multi[r] = o.ge(rows[r].i_hi - rows[r].i_lo, 1);
        }
      }
      o.allow_ratio = false;
      o.allow_peel  = false;
      constexpr std::uint32_t kOther = 1u << 20;
      for (std::size_t r = 0; r < rows.size(); ++r) {
        ParamBox box;
        if (rows[r].parametric) {
          box.i = ParamRange{rows[r].i_lo, rows[r].i_hi};
        }
        if (multi[r]) {
          ParamBox same;
          same.i = ParamRange{rows[r].i_lo, rows[r].i_hi - LinearForm::constant(1)};
          same.j = ParamRange{LinearForm::constant(1), rows[r].i_hi - rows[r].i_lo};
          SymbolicWord const& w = rows[r].parts[0];
          if (unequal(w, offset_ids(slide(w), kOther), o, m.d, same, false) == Inequality::unknown) {
            return "factor " + describe_row(rows[r], m.d) + " may recur within its row";
          }
        }
        for (std::size_t q = r + 1; q < rows.size(); ++q) {
          ParamBox pair = box;
          if (rows[q].parametric) {
            pair.j = ParamRange{rows[q].i_lo, rows[q].i_hi};
          }
          SymbolicWord z = offset_ids(rename_i(rows[q].parts[0]), kOther);
          if (unequal(rows[r].parts[0], z, o, m.d, pair, false) == Inequality::unknown) {
            return "factors " + describe_row(rows[r], m.d) + " and " + describe_row(rows[q], m.d) + " may coincide";
          }
        }
      }
      return {};
    }

    // Empty string when no window of length mult*a on the leaf is a power.
    std::string free_on(SymbolicMorphism const& m, std::int64_t mult, Domain const& dom) {
      Oracle     o(dom);
      Engine     e(m, o);
      LinearForm xa = mult * LinearForm::of(1, -1);
      LinearForm ya = mult * LinearForm::of(-1, 2);
      for (FactorRow const& row : e.rows({xa, ya, xa})) {
        ParamBox box;
        if (row.parametric) {
          box.i = ParamRange{row.i_lo, row.i_hi};
        }
        if (unequal(row.parts[0], row.parts[2], o, m.d, box, true) == Inequality::unknown) {
          return "m = " + std::to_string(mult) + ": " + describe_row(row, m.d);
        }
      }
      return {};
    }

    struct Candidate {
      i64 cc, dd, m_max;
    };

    std::vector<Candidate> candidates(SymbolicMorphism const& m, RationalInterval const& I, int bound) {
      i64 const s     = m.k.alpha;
      i64 const t     = -m.k.beta;
      i64 const a_min = smallest_numerator(I, s);
      Rational  limit = (Rational(s) - Rational(t) / I.lower) * Rational(a_min - 2);
      std::vector<Candidate> out;
      for (i64 cc = 1; cc <= bound; ++cc) {
        for (i64 dd = 0; dd <= cc; ++dd) {
          i64 mm = big_m_bound(cc, dd, I.lower);
          if (Rational(mm) <= limit) {
            out.push_back({cc, dd, mm});
          }
        }
      }
      std::stable_sort(out.begin(), out.end(), [](Candidate const& x, Candidate const& y) { return x.m_max < y.m_max; });
      return out;
    }

    std::vector<Rational> excluded_set(SymbolicMorphism const& m, SymOptions const& opt) {
      std::vector<Rational> out = opt.exclude;
      if (!opt.discover_exceptions) {
        out.insert(out.end(), m.exceptions.begin(), m.exceptions.end());
      }
      return out;
    }

    // Split-off rationals are not covered by the leaves; check them directly.
    std::string point_locates(SymbolicMorphism const&        m,
                              LinearForm const&              L,
                              RationalInterval const&        I,
                              std::vector<SplitPoint> const& points,
                              unsigned                       jobs) {
      std::vector<Rational> todo;
      for (SplitPoint const& p : points) {
        if ((p.origin == "split" || p.origin == "family") && I.contains_interior(p.ratio) && p.ratio > Rational(1)) {
          todo.push_back(p.ratio);
        }
      }
      std::sort(todo.begin(), todo.end());
      todo.erase(std::unique(todo.begin(), todo.end()), todo.end());
      std::vector<std::string> out(todo.size());
      detail::parallel_for(0, todo.size(), jobs, [&](std::uint64_t n) {
        i64 a = todo[n].num();
        i64 b = todo[n].den();
        try {
          LocatingResult r = locating_length_explicit(instantiate_unchecked(m, a, b));
          if (static_cast<i64>(r.length) > L.eval(a, b)) {
            out[n] = "fails at " + todo[n].str() + " (needs " + std::to_string(r.length) + ")";
          }
        } catch (NoLocatingLength const& e) {
          out[n] = "fails at " + todo[n].str() + ": " + e.what();
        } catch (std::invalid_argument const&) {
        }
      });
      for (std::string const& s : out) {
        if (!s.empty()) {
          return s;
        }
      }
      return {};
    }

    SymbolicLocating locate_on(SymbolicMorphism const& m,
                               RationalInterval const& I,
                               Partition&              part,
                               SymOptions const&       opt) {
      SymbolicLocating res;
      std::string      last_failure;
      for (Candidate const& c : candidates(m, I, opt.candidate_bound)) {
        ++res.candidates_tried;
        LinearForm L = LinearForm::of(c.cc, -c.dd);
        Partition  trial = part;
        std::size_t failed = trial.run([&](Domain const& dom) { return locates_on(m, L, dom); }, opt.jobs);
        if (failed == 0) {
          std::string bad = point_locates(m, L, I, trial.points, opt.jobs);
          if (!bad.empty()) {
            last_failure = L.str() + ": " + bad;
            continue;
          }
          part      = std::move(trial);
          res.ell   = L;
          res.cc    = c.cc;
          res.dd    = c.dd;
          res.m_max = c.m_max;
          return res;
        }
        for (std::string const& f : trial.failures) {
          if (!f.empty()) {
            last_failure = L.str() + ": " + f;
            break;
          }
        }
      }
      auto obstructions = power_obstructions(m, I);
      std::string what  = "no locating length cc*a - dd*b with cc <= " + std::to_string(opt.candidate_bound) + " on " + I.str();
      if (!obstructions.empty()) {
        what += "; phi(n) is a perfect power at";
        for (Rational const& r : obstructions) {
          what += " " + r.str();
        }
      }
      throw NoSymbolicLocatingLength(what, last_failure, std::move(obstructions));
    }

  }  // namespace

  // ---- Plain helpers ----

  std::string SymbolicWord::str(std::uint32_t d) const {
    std::string out;
    for (SymBlock const& b : blocks) {
      if (!out.empty()) {
        out += ' ';
      }
      std::string letter = b.letter.symbol ? "(n" + std::to_string(b.letter.id) + "+" + std::to_string(d) + ")"
                                           : std::to_string(b.letter.value);
      if (b.exp == LinearForm::constant(1)) {
        out += letter;
      } else {
        out += letter + "^{" + b.exp.str() + "}";
      }
    }
    return out;
  }

  LinearForm SymbolicMorphism::image_length() const {
    LinearForm sum = LinearForm::constant(1);
    for (SymBlock const& b : blocks) {
      sum += b.exp;
    }
    return sum;
  }

  bool SymbolicMorphism::gcd_ok(std::int64_t b) const {
    return std::all_of(gcd_condition.begin(), gcd_condition.end(), [&](std::int64_t g) { return std::gcd(b, g) == 1; });
  }

  bool SymbolicMorphism::admits(std::int64_t a, std::int64_t b) const {
    if (b < 1 || std::gcd(a, b) != 1) {
      return false;
    }
    Rational r(a, b);
    return interval.contains(r) && gcd_ok(b) && std::find(exceptions.begin(), exceptions.end(), r) == exceptions.end();
  }

  void check_shape(SymbolicMorphism const& m) {
    if (m.image_length() != m.k) {
      throw std::invalid_argument("block lengths sum to " + (m.image_length() - LinearForm::constant(1)).str() +
                                  ", expected k - 1 = " + (m.k - LinearForm::constant(1)).str());
    }
    for (SymBlock const& b : m.blocks) {
      if (b.letter.symbol) {
        throw std::invalid_argument("symbolic letters are not allowed inside u");
      }
      if (b.letter.value != 0 && b.exp != LinearForm::constant(1)) {
        throw std::invalid_argument("nonzero letter " + std::to_string(b.letter.value) + " must occur singly");
      }
      if (b.exp.has_params()) {
        throw std::invalid_argument("run lengths may not use window parameters");
      }
    }
  }

  ExplicitMorphism instantiate_unchecked(SymbolicMorphism const& m, std::int64_t a, std::int64_t b) {
    Word u;
    for (SymBlock const& blk : m.blocks) {
      std::int64_t e = blk.exp.eval(a, b);
      if (e < 0) {
        throw std::invalid_argument("run length " + blk.exp.str() + " is negative at " + std::to_string(a) + "/" +
                                    std::to_string(b));
      }
      u.insert(u.end(), static_cast<std::size_t>(e), Letter(blk.letter.value));
    }
    return ExplicitMorphism::shift(std::move(u), m.d);
  }

  ExplicitMorphism instantiate(SymbolicMorphism const& m, Fraction f) {
    Rational r(f.a, f.b);
    if (!m.interval.contains(r)) {
      throw OutOfInterval(f.str() + " is outside " + m.interval.str());
    }
    if (!m.gcd_ok(f.b)) {
      throw GcdViolation(f.str() + " violates the gcd condition on b");
    }
    if (std::find(m.exceptions.begin(), m.exceptions.end(), r) != m.exceptions.end()) {
      throw ExceptionRational(f.str() + " is an excluded rational");
    }
    return instantiate_unchecked(m, f.a, f.b);
  }

  std::string_view verdict_name(Verdict v) {
    switch (v) {
      case Verdict::less: return "less";
      case Verdict::less_equal: return "less-or-equal";
      case Verdict::equal: return "equal";
      case Verdict::greater_equal: return "greater-or-equal";
      case Verdict::greater: return "greater";
      case Verdict::split: return "split";
      case Verdict::unknown: return "unknown";
    }
    return "unknown";
  }

  Comparison lf_compare(LinearForm const& f, LinearForm const& g, RationalInterval const& I) {
    LinearForm h = (f - g).without_params();
    if (h.is_zero()) {
      return {Verdict::equal, std::nullopt};
    }
    Domain dom = Domain::cone(I.lower, I.upper);
    Oracle o(dom);
    o.allow_peel = false;
    std::optional<i64> lo, hi;
    try {
      auto r = o.range(h);
      if (r.lo || r.hi) {
        lo = r.lo;
        hi = r.hi;
      } else if (auto root = h.root(); root && I.contains_interior(*root)) {
        return {Verdict::split, *root};
      }
    } catch (std::exception const&) {
      return {};
    }
    if (!lo && !hi) {
      return {};
    }
    auto widen = [&](Rational const& x) {
      i64 v = h.eval(x.num(), x.den());
      if (lo) {
        lo = std::min(*lo, v);
      }
      if (hi) {
        hi = std::max(*hi, v);
      }
    };
    if (I.lower_closed) {
      widen(I.lower);
    }
    if (I.upper_closed) {
      widen(I.upper);
    }
    if (lo && *lo >= 1) {
      return {Verdict::greater, std::nullopt};
    }
    if (hi && *hi <= -1) {
      return {Verdict::less, std::nullopt};
    }
    if (lo && *lo >= 0) {
      return {Verdict::greater_equal, std::nullopt};
    }
    if (hi && *hi <= 0) {
      return {Verdict::less_equal, std::nullopt};
    }
    return {};
  }

  bool Domain::contains(std::int64_t a, std::int64_t b) const {
    if (b < 1) {
      return false;
    }
    if (kind == Kind::line) {
      i64 s;
      if (b1 != 0) {
        if ((b - b0) % b1 != 0) {
          return false;
        }
        s = (b - b0) / b1;
      } else {
        if (b != b0 || a1 == 0 || (a - a0) % a1 != 0) {
          return false;
        }
        s = (a - a0) / a1;
      }
      return a == a0 + a1 * s && s >= s_lo && (!s_hi || s <= *s_hi);
    }
    if (!interval.contains_interior(Rational(a, b))) {
      return false;
    }
    return std::all_of(bounds.begin(), bounds.end(), [&](HalfPlane const& h) { return h.alpha * a + h.beta * b >= h.min; });
  }

  std::string Domain::str() const {
    std::ostringstream os;
    if (kind == Kind::line) {
      os << "a = " << a0 << (a1 < 0 ? "-" : "+") << std::abs(a1) << "s, b = " << b0 << (b1 < 0 ? "-" : "+")
         << std::abs(b1) << "s, s in [" << s_lo << ".." << (s_hi ? std::to_string(*s_hi) : "inf") << "]";
      return os.str();
    }
    os << interval.str();
    for (HalfPlane const& h : bounds) {
      os << ", " << LinearForm::of(h.alpha, h.beta).str() << " >= " << h.min;
    }
    return os.str();
  }

  std::size_t SymbolicProof::subinterval_count() const {
    return static_cast<std::size_t>(std::count_if(leaves.begin(), leaves.end(), [](LeafRecord const& l) {
      return l.domain.kind == Domain::Kind::cone;
    }));
  }

  std::int64_t big_m_bound(std::int64_t cc, std::int64_t dd, Rational const& i_min) {
    Rational x = (Rational(cc) * i_min - Rational(dd)) / (i_min - Rational(1));
    return x.ceil() - 1;
  }

  std::int64_t smallest_numerator(RationalInterval const& I, std::int64_t s) {
    for (i64 a = 2;; ++a) {
      for (i64 b = 1; b < a; ++b) {
        if (std::gcd(a, b) == 1 && std::gcd(b, s) == 1 && I.contains_interior(Rational(a, b))) {
          return a;
        }
      }
      if (a > 1000000) {
        throw std::invalid_argument("interval " + I.str() + " has no suitable rational");
      }
    }
  }

  // ---- Listing ----

  SymbolicWord sym_take(SymbolicMorphism const& m, Domain const& dom, LinearForm const& L) {
    Oracle o(dom);
    o.allow_ratio = false;
    o.allow_peel  = false;
    try {
      Engine e(m, o);
      return e.between(Engine::Cut{}, e.locate(L), LinearForm{});
    } catch (Undecidable const& u) {
      throw UndecidableComparison(u.what);
    }
  }

  std::vector<FactorTable> sym_factor_table(SymbolicMorphism const& m,
                                            std::uint32_t           mult,
                                            RationalInterval const& I,
                                            std::vector<Rational>*  points) {
    LinearForm xa = static_cast<i64>(mult) * LinearForm::of(1, -1);
    LinearForm ya = static_cast<i64>(mult) * LinearForm::of(-1, 2);
    Partition  part = initial_partition(I, {});
    auto       list = [&](Domain const& dom) {
      Oracle o(dom);
      Engine e(m, o);
      e.rows({xa, ya, xa});
      return std::string{};
    };
    part.run(list, 1);
    std::vector<FactorTable> out;
    for (std::size_t n = 0; n < part.leaves.size(); ++n) {
      if (!part.failures[n].empty()) {
        throw UndecidableComparison(part.failures[n]);
      }
      Oracle o(part.leaves[n]);
      Engine e(m, o);
      out.push_back({part.leaves[n], e.rows({xa, ya, xa})});
    }
    if (points) {
      for (SplitPoint const& p : part.points) {
        points->push_back(p.ratio);
      }
    }
    return out;
  }

  Inequality sym_unequal(SymbolicWord const&              x,
                         SymbolicWord const&              z,
                         Domain const&                    dom,
                         std::uint32_t                    d,
                         std::optional<ParamRange> const& pi,
                         std::optional<ParamRange> const& pj) {
    Oracle o(dom);
    o.allow_ratio = false;
    o.allow_peel  = false;
    return unequal(x, z, o, d, ParamBox{pi, pj}, false);
  }

  // ---- Locating and freeness ----

  SymbolicLocating sym_locating_length(SymbolicMorphism const& m, SymOptions const& opt) {
    check_shape(m);
    RationalInterval I    = opt.interval.value_or(m.interval);
    Partition        part = initial_partition(I, excluded_set(m, opt));
    return locate_on(m, I, part, opt);
  }

  std::vector<Rational> power_obstructions(SymbolicMorphism const& m, RationalInterval const& I, std::int64_t max_den) {
    std::vector<Rational> out;
    for (i64 b = 1; b <= max_den; ++b) {
      for (i64 a = (I.lower * Rational(b)).floor(); a <= (I.upper * Rational(b)).ceil(); ++a) {
        if (a <= b || std::gcd(a, b) != 1 || !I.contains(Rational(a, b))) {
          continue;
        }
        try {
          if (image_power_witness(instantiate_unchecked(m, a, b))) {
            out.emplace_back(a, b);
          }
        } catch (std::exception const&) {
        }
      }
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  SymbolicProof sym_verify_free(SymbolicMorphism const& m, SymOptions const& opt) {
    check_shape(m);
    SymbolicProof proof;
    proof.name     = m.name;
    proof.interval = opt.interval.value_or(m.interval);
    RationalInterval const& I = proof.interval;
    std::vector<Rational>   excluded = excluded_set(m, opt);

    i64 const s = m.k.alpha;
    i64 const t = -m.k.beta;
    proof.i_min             = I.lower;
    proof.a_min             = smallest_numerator(I, s);
    proof.short_words_bound = (Rational(s) - Rational(t) / I.lower) * Rational(proof.a_min - 2);

    Partition             part = initial_partition(I, excluded);
    bool                  leaves_ok = true;
    std::vector<Rational> obstructions;
    try {
      SymbolicLocating loc;
      for (;;) {
        try {
          loc = locate_on(m, I, part, opt);
          break;
        } catch (NoSymbolicLocatingLength const& e) {
          // Obstructions become interior endpoints, then the search reruns.
          std::vector<Rational> fresh;
          for (Rational const& r : e.obstructions) {
            if (std::find(obstructions.begin(), obstructions.end(), r) == obstructions.end()) {
              fresh.push_back(r);
            }
          }
          if (fresh.empty()) {
            throw;
          }
          for (Rational const& r : fresh) {
            obstructions.push_back(r);
            proof.notes.push_back("phi(n) is a perfect power at " + r.str() + "; excluded from the search");
          }
          std::vector<Rational> cut = excluded;
          cut.insert(cut.end(), obstructions.begin(), obstructions.end());
          part = initial_partition(I, cut);
          for (Rational const& r : obstructions) {
            part.points.push_back({r, "obstruction"});
          }
        }
      }
      proof.ell            = loc.ell;
      proof.cc             = loc.cc;
      proof.dd             = loc.dd;
      proof.m_max          = loc.m_max;
      proof.short_words_ok = Rational(loc.m_max) <= proof.short_words_bound;
      for (i64 mult = 1; mult <= proof.m_max; ++mult) {
        part.run([&](Domain const& dom) { return free_on(m, mult, dom); }, opt.jobs);
      }
    } catch (NoSymbolicLocatingLength const& e) {
      proof.notes.emplace_back(e.what());
      if (!e.colliding.empty()) {
        proof.notes.push_back("colliding factors " + e.colliding);
      }
      leaves_ok = false;
    }

    for (std::size_t n = 0; n < part.leaves.size(); ++n) {
      bool ok = leaves_ok && part.failures[n].empty();
      proof.leaves.push_back({part.leaves[n], ok, part.failures[n]});
    }
    bool all_leaves = leaves_ok && std::all_of(proof.leaves.begin(), proof.leaves.end(), [](LeafRecord const& l) {
                        return l.proved;
                      });

    std::map<Rational, std::string> unique;
    for (SplitPoint const& p : part.points) {
      unique.try_emplace(p.ratio, p.origin);
    }
    for (Rational const& r : excluded) {
      unique.erase(r);
    }
    for (auto const& [r, origin] : unique) {
      PointRecord rec;
      rec.ratio      = r;
      rec.origin     = origin;
      rec.admissible = I.contains(r) && r > Rational(1) && m.gcd_ok(r.den());
      proof.points.push_back(rec);
    }
    std::mutex mu;
    detail::parallel_for(0, proof.points.size(), opt.jobs, [&](std::uint64_t n) {
      PointRecord& rec = proof.points[n];
      if (!rec.admissible) {
        rec.detail = "outside the hypotheses";
        return;
      }
      try {
        Fraction    f(static_cast<std::uint32_t>(rec.ratio.num()), static_cast<std::uint32_t>(rec.ratio.den()));
        ProofReport rep = verify_free_explicit(instantiate_unchecked(m, rec.ratio.num(), rec.ratio.den()), f);
        rec.status      = rep.status;
        rec.detail      = "k = " + std::to_string(rep.k) + ", l = " + std::to_string(rep.locating_length);
        if (!rep.notes.empty()) {
          rec.detail += "; " + rep.notes.front();
        }
      } catch (std::exception const& e) {
        std::lock_guard lock(mu);
        rec.status = Status::hypothesis_violation;
        rec.detail = e.what();
      }
    });

    bool points_ok = true;
    for (PointRecord const& rec : proof.points) {
      if (!rec.admissible) {
        continue;
      }
      if (rec.status == Status::refuted || rec.status == Status::hypothesis_violation) {
        proof.exceptions.push_back(rec.ratio);
      } else if (rec.status != Status::proved) {
        points_ok = false;
      }
    }
    std::sort(proof.exceptions.begin(), proof.exceptions.end());

    if (!all_leaves || !points_ok) {
      proof.status = Status::inconclusive;
    } else if (!proof.short_words_ok) {
      proof.status = Status::inconclusive;
      proof.notes.emplace_back("m_max exceeds the short-words bound");
    } else if (!proof.exceptions.empty() && !opt.discover_exceptions) {
      proof.status = Status::refuted;
      proof.notes.emplace_back("power-freeness fails at rationals that are not stated exceptions");
    } else {
      proof.status = Status::proved;
    }
    return proof;
  }

  // ---- The conj4r family ----

  namespace {

    struct Run {
      int        gen;
      LinearForm exp;
    };
    using FreeWord = std::vector<Run>;

    FreeWord inverse(FreeWord const& w) {
      FreeWord out;
      for (auto it = w.rbegin(); it != w.rend(); ++it) {
        out.push_back({it->gen, -it->exp});
      }
      return out;
    }

    FreeWord power(FreeWord const& w, int e) {
      FreeWord base = e < 0 ? inverse(w) : w;
      FreeWord out;
      for (int n = 0; n < std::abs(e); ++n) {
        out.insert(out.end(), base.begin(), base.end());
      }
      return out;
    }

    // Free reduction: merge equal neighbours and drop empty runs.
    FreeWord reduce(FreeWord const& w) {
      FreeWord out;
      for (Run const& r : w) {
        if (!out.empty() && out.back().gen == r.gen) {
          out.back().exp += r.exp;
          if (out.back().exp.is_zero()) {
            out.pop_back();
          }
        } else if (!r.exp.is_zero()) {
          out.push_back(r);
        }
      }
      return out;
    }

  }  // namespace

  SymbolicMorphism conj4r_morphism(int r) {
    if (r < 2) {
      throw std::invalid_argument("conj4r needs r >= 2");
    }
    auto block = [](i64 alpha, i64 beta) {
      return FreeWord{{0, LinearForm::of(alpha, beta, -1)}, {1, LinearForm::constant(1)}};
    };
    FreeWord A = block(1, -1);
    FreeWord B = block(2, -2);
    FreeWord C = block(3, -3);
    FreeWord X = block(2 * r + 1, -(2 * r + 2));
    FreeWord Y = block(-(2 * r - 2), 2 * r - 1);
    FreeWord Z = block(2 * r, -(2 * r + 1));
    FreeWord YZ = Y;
    YZ.insert(YZ.end(), Z.begin(), Z.end());

    FreeWord w;
    for (FreeWord const& part :
         {X, power(YZ, r - 2), B, A, Y, power(B, r - 2), C, Y, power(B, r - 3), Y, A}) {
      w.insert(w.end(), part.begin(), part.end());
    }
    w.push_back({0, LinearForm::of(1, -1, -1)});
    w = reduce(w);

    SymbolicMorphism m;
    m.name = "conj4r(" + std::to_string(r) + ")";
    for (Run const& run : w) {
      if (run.gen == 1) {
        if (run.exp != LinearForm::constant(1) && !run.exp.is_constant()) {
          throw std::logic_error("nonconstant run of 1s");
        }
        for (i64 n = 0; n < run.exp.gamma; ++n) {
          m.blocks.push_back({SymLetter::lit(1), LinearForm::constant(1)});
        }
        if (run.exp.gamma < 0) {
          throw std::logic_error("negative run of 1s survives reduction");
        }
      } else {
        m.blocks.push_back({SymLetter::lit(0), run.exp});
      }
    }
    m.d        = 1;
    m.k        = m.image_length();
    m.interval = RationalInterval::open(Rational(2 * r + 1, 2 * r), Rational(2 * r, 2 * r - 1));
    m.gcd_condition = {2 * r + 1};
    m.exceptions    = {Rational(4 * r + 1, 4 * r - 1)};
    return m;
  }

}  // namespace fracpow
