#include "fracpow/generator.hpp"

#include <algorithm>
#include <stdexcept>
#include <type_traits>

namespace fracpow {

  static_assert(sizeof(Letter) == sizeof(std::uint32_t));
  static_assert(std::is_standard_layout_v<Letter>);

  namespace {
    constexpr std::size_t kNone = static_cast<std::size_t>(-1);

    // Largest j in [lo, hi) with w[j] != w[j - p], or kNone.
    std::size_t last_mismatch(std::uint32_t const* w,
                              std::size_t          lo,
                              std::size_t          hi,
                              std::size_t          p) {
      constexpr std::size_t kChunk = 16;
      std::size_t           j      = hi;
      while (j >= lo + kChunk) {
        std::uint32_t const* x    = w + j - kChunk;
        std::uint32_t const* y    = x - p;
        std::uint32_t        diff = 0;
        for (std::size_t t = 0; t < kChunk; ++t) {
          diff |= x[t] ^ y[t];
        }
        if (diff != 0) {
          break;
        }
        j -= kChunk;
      }
      while (j > lo) {
        --j;
        if (w[j] != w[j - p]) {
          return j;
        }
      }
      return kNone;
    }
  }  // namespace

  LexLeastGenerator::LexLeastGenerator(Fraction f, AvoidMode mode)
      : f_(f), mode_(mode) {}

  void LexLeastGenerator::schedule(std::int32_t r, std::size_t time) {
    if (time >= bucket_.size()) {
      bucket_.resize(std::max(time + 1, bucket_.size() * 2 + 64), -1);
    }
    rules_[r].next = bucket_[time];
    bucket_[time]  = r;
  }

  // Adds every rule whose shortest forbidden suffix has length <= time + 1.
  void LexLeastGenerator::add_rules_up_to(std::size_t time) {
    std::uint64_t const a = f_.a;
    std::uint64_t const b = f_.b;
    while (true) {
      std::uint64_t q = next_index_;
      std::uint64_t period;
      std::uint64_t threshold;
      if (mode_ == AvoidMode::exact) {
        period    = q * b;
        threshold = q * (a - b);
      } else if (mode_ == AvoidMode::at_least) {
        period    = q;
        threshold = (q * a + b - 1) / b - q;
      } else {
        period    = q;
        threshold = q * a / b + 1 - q;
      }
      std::uint64_t entry = period + threshold - 1;
      if (entry > time) {
        return;
      }
      if (rules_.size() >= static_cast<std::size_t>(INT32_MAX)) {
        throw std::length_error("generator rule table overflow");
      }
      rules_.push_back(Rule{static_cast<std::uint32_t>(period),
                            static_cast<std::uint32_t>(threshold),
                            static_cast<std::uint32_t>(period),
                            -1});
      schedule(static_cast<std::int32_t>(rules_.size() - 1), entry);
      ++next_index_;
    }
  }

  std::uint32_t LexLeastGenerator::step() {
    std::size_t const i = word_.size();
    add_rules_up_to(i);
    auto const* w = reinterpret_cast<std::uint32_t const*>(word_.data());

    active_.clear();
    std::int32_t r = i < bucket_.size() ? bucket_[i] : -1;
    if (i < bucket_.size()) {
      bucket_[i] = -1;
    }
    while (r != -1) {
      Rule&        rule = rules_[r];
      std::int32_t next = rule.next;
      std::size_t  j    = last_mismatch(w, rule.verified, i, rule.period);
      rule.verified     = static_cast<std::uint32_t>(i);
      if (j == kNone) {
        active_.push_back(r);
      } else {
        schedule(r, j + rule.threshold);
      }
      r = next;
    }

    forbidden_.clear();
    for (std::int32_t a : active_) {
      forbidden_.push_back(w[i - rules_[a].period]);
    }
    std::sort(forbidden_.begin(), forbidden_.end());
    std::uint64_t c = 0;
    for (std::uint32_t v : forbidden_) {
      if (v == c) {
        ++c;
      } else if (v > c) {
        break;
      }
    }
    if (c > Letter::kMaxValue) {
      throw std::overflow_error("letter value exceeds 31 bits");
    }
    word_.emplace_back(static_cast<std::uint32_t>(c));
    for (std::int32_t a : active_) {
      rules_[a].verified = static_cast<std::uint32_t>(i + 1);
      schedule(a, i + rules_[a].threshold);
    }
    return static_cast<std::uint32_t>(c);
  }

  void LexLeastGenerator::extend(std::size_t length) {
    if (length > word_.capacity()) {
      word_.reserve(std::max(length, word_.capacity() * 2));
    }
    while (word_.size() < length) {
      step();
    }
  }

  Word generate_lexleast(Fraction f, std::size_t n, AvoidMode mode) {
    LexLeastGenerator gen(f, mode);
    gen.extend(n);
    return gen.word();
  }

}  // namespace fracpow
