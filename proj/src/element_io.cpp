#include "galembed/element_io.hpp"

#include "galembed/errors.hpp"

#include <cctype>
#include <optional>
#include <sstream>

namespace galembed {

namespace {

// nullopt stands for the zero element while a sum is being built
using Value = std::optional<FieldElement>;

class Parser {
 public:
  Parser(const std::string& text, const Arena& arena) : s_(text), arena_(arena) {}

  FieldElement run() {
    skip();
    if (pos_ >= s_.size()) throw ParseError("empty element", pos_);
    Value v = expr();
    skip();
    if (pos_ < s_.size()) throw ParseError(std::string("unexpected '") + s_[pos_] + "'", pos_);
    if (!v) throw InvalidInput("zero is not an element of K^x");
    return *v;
  }

 private:
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Value plus(const Value& a, const Value& b) {
    if (!a) return b;
    if (!b) return a;
    return field_add(*a, *b);
  }

  Value negate(const Value& a) {
    if (!a) return a;
    return *a * arena_.constant(arena_.field()->neg(1));
  }

  Value expr() {
    Value v = term();
    for (;;) {
      if (eat('+'))
        v = plus(v, term());
      else if (eat('-'))
        v = plus(v, negate(term()));
      else
        return v;
    }
  }

  Value term() {
    Value v = unary();
    for (;;) {
      skip();
      const std::size_t at = pos_;
      if (eat('*')) {
        Value w = unary();
        v = (v && w) ? Value(*v * *w) : std::nullopt;
      } else if (eat('/')) {
        Value w = unary();
        if (!w) throw ParseError("division by zero", at);
        if (v) v = *v / *w;
      } else {
        return v;
      }
    }
  }

  Value unary() {
    if (eat('-')) return negate(unary());
    return power();
  }

  long integer(bool allow_sign) {
    skip();
    bool neg = false;
    if (allow_sign && pos_ < s_.size() && s_[pos_] == '-') {
      neg = true;
      ++pos_;
      skip();
    }
    if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_])))
      throw ParseError("expected an integer", pos_);
    long n = 0;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
      if (n > 100000000L) throw ParseError("integer too large", pos_);
      n = n * 10 + (s_[pos_] - '0');
      ++pos_;
    }
    return neg ? -n : n;
  }

  Value power() {
    Value v = base();
    skip();
    const std::size_t at = pos_;
    if (eat('^')) {
      const long e = integer(true);
      if (!v) {
        if (e < 0) throw ParseError("zero to a negative power", at);
        if (e == 0) return arena_.one();
        return v;
      }
      return v->pow(e);
    }
    return v;
  }

  Value base() {
    skip();
    if (pos_ >= s_.size()) throw ParseError("unexpected end of input", pos_);
    const char c = s_[pos_];
    const std::size_t at = pos_;
    if (c == '(') {
      ++pos_;
      Value v = expr();
      if (!eat(')')) throw ParseError("expected ')'", pos_);
      return v;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      const long n = integer(false);
      const auto e = arena_.field()->from_int(n);
      if (e == 0) return std::nullopt;
      return arena_.constant(e);
    }
    ++pos_;
    if (c == 's') {
      if (arena_.variant() != Variant::R) throw ParseError("variable s is not used in arena C (use t)", at);
      return arena_.variable_element();
    }
    if (c == 't') return arena_.t();
    if (c == 'z') {
      if (arena_.field()->degree() == 1)
        throw ParseError("constant not in the constants field (z needs a non-prime field)", at);
      return arena_.constant(arena_.field()->generator());
    }
    throw ParseError(std::string("unexpected '") + c + "'", at);
  }

  const std::string& s_;
  const Arena& arena_;
  std::size_t pos_ = 0;
};

std::string wrap_constant(GaloisField::Elem c, const GaloisField& F) {
  const std::string s = F.to_string(c);
  return F.is_single_term(c) ? s : "(" + s + ")";
}

std::string render_atom(const Poly& atom, long e, const GaloisField& F, char var) {
  std::string base = atom == Poly::x() ? std::string(1, var) : "(" + render_poly(atom, F, var) + ")";
  if (e == 1) return base;
  return base + "^" + std::to_string(e);
}

}  // namespace

FieldElement parse_element(const std::string& text, const Arena& arena) {
  return Parser(text, arena).run();
}

std::string render_constant(GaloisField::Elem c, const GaloisField& F) { return F.to_string(c); }

std::string render_poly(const Poly& p, const GaloisField& F, char var) {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int k = p.degree(); k >= 0; --k) {
    const auto c = p.coeff(k);
    if (c == 0) continue;
    if (!first) os << "+";
    first = false;
    if (k == 0) {
      os << wrap_constant(c, F);
      continue;
    }
    if (c != 1) os << wrap_constant(c, F) << "*";
    os << var;
    if (k > 1) os << "^" << k;
  }
  return os.str();
}

std::string render(const FieldElement& x, const Arena& arena) {
  const GaloisField& F = *x.field();
  const char var = arena.variable();
  const auto& factors = x.factors();
  if (factors.empty()) return F.to_string(x.unit());
  if (x.unit() == 1 && factors.size() == 1 && factors.begin()->second == 1)
    return render_poly(factors.begin()->first, F, var);

  std::vector<std::string> parts;
  if (x.unit() != 1) parts.push_back(wrap_constant(x.unit(), F));
  for (const auto& [atom, e] : factors)
    if (e > 0) parts.push_back(render_atom(atom, e, F, var));
  for (const auto& [atom, e] : factors)
    if (e < 0) parts.push_back(render_atom(atom, e, F, var));
  std::string out;
  for (std::size_t k = 0; k < parts.size(); ++k) {
    if (k > 0) out += "*";
    out += parts[k];
  }
  return out;
}

}  // namespace galembed
