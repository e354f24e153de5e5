#include "fracpow/linear_form.hpp"

#include <cctype>
#include <stdexcept>

namespace fracpow {

  std::int64_t LinearForm::eval(std::int64_t a, std::int64_t b, std::int64_t i, std::int64_t j) const {
    return alpha * a + beta * b + gamma + ci * i + cj * j;
  }

  LinearForm LinearForm::substitute_i(LinearForm const& v) const {
    LinearForm out = *this;
    out.ci         = 0;
    return out + ci * v;
  }

  LinearForm LinearForm::substitute_j(LinearForm const& v) const {
    LinearForm out = *this;
    out.cj         = 0;
    return out + cj * v;
  }

  std::optional<Rational> LinearForm::root() const {
    if (alpha == 0) {
      return std::nullopt;
    }
    return Rational(-beta, alpha);
  }

  LinearForm LinearForm::parse(std::string_view text) {
    LinearForm  out;
    std::size_t p = 0;
    auto        skip = [&] {
      while (p < text.size() && std::isspace(static_cast<unsigned char>(text[p]))) {
        ++p;
      }
    };
    skip();
    if (p == text.size()) {
      throw std::invalid_argument("empty linear form");
    }
    while (p < text.size()) {
      std::int64_t sign = 1;
      if (text[p] == '+' || text[p] == '-') {
        sign = text[p] == '-' ? -1 : 1;
        ++p;
        skip();
      }
      bool         digits = false;
      std::int64_t coeff  = 0;
      while (p < text.size() && std::isdigit(static_cast<unsigned char>(text[p]))) {
        coeff  = coeff * 10 + (text[p] - '0');
        digits = true;
        ++p;
      }
      skip();
      if (p < text.size() && text[p] == '*') {
        ++p;
        skip();
      }
      char var = 0;
      if (p < text.size() && std::isalpha(static_cast<unsigned char>(text[p]))) {
        var = text[p++];
      }
      if (!digits && var == 0) {
        throw std::invalid_argument("bad linear form '" + std::string(text) + "'");
      }
      std::int64_t c = sign * (digits ? coeff : 1);
      switch (var) {
        case 0:
          out.gamma += c;
          break;
        case 'a':
          out.alpha += c;
          break;
        case 'b':
          out.beta += c;
          break;
        case 'i':
          out.ci += c;
          break;
        case 'j':
          out.cj += c;
          break;
        default:
          throw std::invalid_argument(std::string("unknown variable '") + var + "'");
      }
      skip();
    }
    return out;
  }

  std::string LinearForm::str() const {
    std::string out;
    auto        term = [&](std::int64_t c, char const* var) {
      if (c == 0) {
        return;
      }
      if (c < 0) {
        out += '-';
      } else if (!out.empty()) {
        out += '+';
      }
      std::int64_t m = c < 0 ? -c : c;
      if (m != 1 || *var == 0) {
        out += std::to_string(m);
      }
      out += var;
    };
    term(alpha, "a");
    term(beta, "b");
    term(ci, "i");
    term(cj, "j");
    term(gamma, "");
    return out.empty() ? "0" : out;
  }

}  // namespace fracpow
