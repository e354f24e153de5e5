#include "fracpow/morphism.hpp"

#include <algorithm>

namespace fracpow {

  ExplicitMorphism ExplicitMorphism::shift(Word u, std::uint32_t d) {
    ExplicitMorphism m;
    m.k = static_cast<std::uint32_t>(u.size() + 1);
    m.u = std::move(u);
    m.d = d;
    return m;
  }

  std::uint32_t ExplicitMorphism::last(std::uint32_t n) const {
    auto it = shift_exceptions.find(n);
    if (it != shift_exceptions.end()) {
      return it->second;
    }
    std::uint64_t v = std::uint64_t{n} + d;
    if (v > Letter::kMaxValue) {
      throw std::overflow_error("letter value exceeds 31 bits");
    }
    return static_cast<std::uint32_t>(v);
  }

  bool ExplicitMorphism::achievable(std::uint32_t c) const {
    for (auto [n, l] : shift_exceptions) {
      if (l == c) {
        return true;
      }
    }
    if (c < d) {
      return false;
    }
    return shift_exceptions.count(c - d) == 0;
  }

  bool ExplicitMorphism::has_image(Letter c) const {
    if (!c.is_primed()) {
      return true;
    }
    if (primed_overrides.count(c.bits()) != 0) {
      return true;
    }
    return c.value() == 0 && !transient.empty();
  }

  Word ExplicitMorphism::image(Letter c) const {
    if (c.is_primed()) {
      auto it = primed_overrides.find(c.bits());
      if (it != primed_overrides.end()) {
        return it->second;
      }
      if (c.value() == 0 && !transient.empty()) {
        Word out = transient;
        out.insert(out.end(), u.begin(), u.end());
        out.emplace_back(last(0));
        return out;
      }
      throw UnknownLetter("no image for letter " + std::to_string(c.value()) + "'");
    }
    Word out = u;
    out.emplace_back(last(c.value()));
    return out;
  }

  Word ExplicitMorphism::image_coded(std::uint32_t n) const {
    Word out;
    out.reserve(k);
    for (Letter l : u) {
      out.push_back(l.coded());
    }
    out.emplace_back(last(n));
    return out;
  }

  Letter ExplicitMorphism::start() const {
    Letter p = Letter::primed(0);
    if (!transient.empty() || primed_overrides.count(p.bits()) != 0) {
      return p;
    }
    return Letter(0);
  }

  bool ExplicitMorphism::has_primes() const {
    if (!primed_overrides.empty()) {
      return true;
    }
    return std::any_of(u.begin(), u.end(), [](Letter l) { return l.is_primed(); });
  }

  Word apply(ExplicitMorphism const& m, Word const& w) {
    Word out;
    for (Letter l : w) {
      if (!m.has_image(l)) {
        throw UnknownLetter("no image for letter " + std::to_string(l.value()) + "'");
      }
      Word img = m.image(l);
      out.insert(out.end(), img.begin(), img.end());
    }
    return out;
  }

  Word expand_fixed_point_raw(ExplicitMorphism const& m, std::size_t n) {
    Letter s   = m.start();
    Word   out = m.image(s);
    if (out.empty() || out[0] != s) {
      throw NotProlongable("image of the start letter does not begin with it");
    }
    if (out.size() < 2) {
      throw NotProlongable("image of the start letter has length 1");
    }
    out.reserve(std::max(n, out.size()));
    // The word reads itself: out[i] is already known when its image is needed.
    for (std::size_t i = 1; out.size() < n; ++i) {
      Word img = m.image(out[i]);
      out.insert(out.end(), img.begin(), img.end());
    }
    out.resize(std::min(n, out.size()));
    return out;
  }

  Word expand_fixed_point(ExplicitMorphism const& m, std::size_t n) {
    Word out = expand_fixed_point_raw(m, n);
    for (Letter& l : out) {
      l = l.coded();
    }
    return out;
  }

  std::uint32_t letter_at(ExplicitMorphism const& m, std::uint64_t i) {
    if (m.has_primes()) {
      return expand_fixed_point(m, i + 1)[i].value();
    }
    std::uint64_t const v      = m.transient.size();
    std::size_t         shifts = 0;
    // Walk down the base-k digits, counting how many shifts to apply.
    while (true) {
      std::uint32_t c;
      if (i < v) {
        c = m.transient[i].value();
      } else if ((i - v) % m.k + 1 < m.k) {
        c = m.u[(i - v) % m.k].value();
      } else {
        i = (i - v) / m.k;
        ++shifts;
        continue;
      }
      for (std::size_t t = 0; t < shifts; ++t) {
        c = m.last(c);
      }
      return c;
    }
  }

  namespace {
    bool u_has_period(ExplicitMorphism const& m, std::size_t p) {
      for (std::size_t j = 0; j + p + 1 < m.k; ++j) {
        if (m.u[j].value() != m.u[j + p].value()) {
          return false;
        }
      }
      return true;
    }
  }  // namespace

  std::optional<std::uint32_t> image_power_witness(ExplicitMorphism const& m) {
    std::optional<std::uint32_t> best;
    for (std::size_t p = 1; p < m.k; ++p) {
      if (m.k % p != 0 || !u_has_period(m, p)) {
        continue;
      }
      std::uint32_t c = m.u[m.k - 1 - p].value();
      if (!m.achievable(c)) {
        continue;
      }
      // Smallest n with last(n) == c.
      std::optional<std::uint32_t> n;
      for (auto [x, l] : m.shift_exceptions) {
        if (l == c) {
          n = x;
          break;
        }
      }
      if (!n && c >= m.d) {
        n = c - m.d;
      }
      if (n && (!best || *n < *best)) {
        best = n;
      }
    }
    return best;
  }

  std::vector<CheckResult> validate(ExplicitMorphism const& m) {
    std::vector<CheckResult> out;

    bool uniform = m.k >= 2 && m.u.size() + 1 == m.k;
    std::string detail = "k = " + std::to_string(m.k);
    for (auto const& [bits, img] : m.primed_overrides) {
      if (img.size() != m.k) {
        uniform = false;
        detail  = "override image has length " + std::to_string(img.size());
      }
    }
    out.push_back({"uniform", uniform, detail});

    bool        prolongable = false;
    std::string pdetail;
    try {
      Letter s    = m.start();
      Word   img  = m.image(s);
      prolongable = img.size() >= 2 && img[0] == s;
      pdetail     = prolongable ? "start letter " + format_word({s})
                                : "image of " + format_word({s}) + " does not begin with it";
    } catch (std::exception const& e) {
      pdetail = e.what();
    }
    out.push_back({"prolongable", prolongable, pdetail});

    if (!m.transient.empty()) {
      Letter p  = Letter::primed(0);
      bool   ok = m.transient[0] == p;
      for (std::size_t i = 1; i < m.transient.size(); ++i) {
        ok = ok && m.transient[i] != p;
      }
      ok = ok && std::none_of(m.u.begin(), m.u.end(), [&](Letter l) { return l == p; });
      out.push_back({"transient", ok, "|v| = " + std::to_string(m.transient.size())});
    }

    if (uniform) {
      auto w = image_power_witness(m);
      out.push_back({"image-not-power",
                     !w.has_value(),
                     w ? "phi(" + std::to_string(*w) + ") is a perfect power"
                       : "no image is a perfect power"});
    }

    bool one_position = true;
    for (auto const& [bits, img] : m.primed_overrides) {
      if (img.size() != m.k) {
        continue;
      }
      std::size_t diff = 0;
      for (std::size_t j = 0; j + 1 < m.k; ++j) {
        diff += img[j].value() != m.u[j].value();
      }
      if (diff > 0) {
        one_position = false;
      }
    }
    out.push_back({"one-position",
                   one_position,
                   one_position ? "images differ only in the last letter"
                                : "a primed image differs inside u"});
    return out;
  }

  bool all_passed(std::vector<CheckResult> const& checks) {
    return std::all_of(checks.begin(), checks.end(), [](auto const& c) { return c.passed; });
  }

}  // namespace fracpow
