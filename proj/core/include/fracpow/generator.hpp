// Greedy construction of the lexicographically least word on Z>=0 avoiding a
// set of fractional powers.

#ifndef FRACPOW_GENERATOR_HPP_
#define FRACPOW_GENERATOR_HPP_

#include <cstddef>
#include <cstdint>
#include <vector>

#include "fracpow/word.hpp"

namespace fracpow {

  // Incremental generator.  Appending a letter costs time proportional to the
  // number of periods whose current match run is long enough to matter, plus
  // amortized rescans; each period is rescanned only when its run could have
  // reached the forbidden length.
  class LexLeastGenerator {
   public:
    explicit LexLeastGenerator(Fraction f, AvoidMode mode = AvoidMode::exact);

    void extend(std::size_t length);

    Word const& word() const noexcept {
      return word_;
    }
    Fraction fraction() const noexcept {
      return f_;
    }
    AvoidMode mode() const noexcept {
      return mode_;
    }

   private:
    struct Rule {
      std::uint32_t period;
      std::uint32_t threshold;  // matches needed, counting the new letter
      std::uint32_t verified;   // first position not yet compared
      std::int32_t  next;
    };

    void          add_rules_up_to(std::size_t time);
    void          schedule(std::int32_t rule, std::size_t time);
    std::uint32_t step();

    Fraction                  f_;
    AvoidMode                 mode_;
    Word                      word_;
    std::vector<Rule>         rules_;
    std::vector<std::int32_t> bucket_;
    std::vector<std::int32_t> active_;
    std::vector<std::uint32_t> forbidden_;
    std::uint64_t             next_index_ = 1;  // m or q of the next rule
  };

  Word generate_lexleast(Fraction f, std::size_t n, AvoidMode mode = AvoidMode::exact);

}  // namespace fracpow

#endif  // FRACPOW_GENERATOR_HPP_
