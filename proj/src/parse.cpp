#include "froblift/parse.hpp"

#include <cctype>
#include <limits>
#include <set>

#include "froblift/error.hpp"

namespace froblift {

namespace {

bool is_name_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool is_name_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }
bool is_digit(char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; }

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  std::unique_ptr<PolyExpr> run() {
    auto e = expr();
    skip_space();
    if (pos_ != text_.size()) fail(std::string("unexpected '") + text_[pos_] + "'");
    return e;
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t column_ = 1;

  [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, line_, column_); }
  [[noreturn]] static void fail_at(const std::string& what, std::size_t line, std::size_t column) {
    throw ParseError(what, line, column);
  }

  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    ++pos_;
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) advance();
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      advance();
      return true;
    }
    return false;
  }

  std::unique_ptr<PolyExpr> node(PolyExpr::Kind kind, std::size_t line, std::size_t column) {
    auto n = std::make_unique<PolyExpr>();
    n->kind = kind;
    n->line = line;
    n->column = column;
    return n;
  }

  std::unique_ptr<PolyExpr> binary(PolyExpr::Kind kind, std::unique_ptr<PolyExpr> l, std::unique_ptr<PolyExpr> r) {
    auto n = node(kind, l->line, l->column);
    n->lhs = std::move(l);
    n->rhs = std::move(r);
    return n;
  }

  std::unique_ptr<PolyExpr> expr() {
    auto left = term();
    while (true) {
      if (accept('+'))
        left = binary(PolyExpr::Kind::Add, std::move(left), term());
      else if (accept('-'))
        left = binary(PolyExpr::Kind::Subtract, std::move(left), term());
      else
        return left;
    }
  }

  std::unique_ptr<PolyExpr> term() {
    auto left = unary();
    while (accept('*')) left = binary(PolyExpr::Kind::Multiply, std::move(left), unary());
    return left;
  }

  std::unique_ptr<PolyExpr> unary() {
    skip_space();
    const std::size_t line = line_, column = column_;
    if (accept('-')) {
      auto n = node(PolyExpr::Kind::Negate, line, column);
      n->lhs = unary();
      return n;
    }
    return power();
  }

  std::unique_ptr<PolyExpr> power() {
    auto base = atom();
    if (!accept('^')) return base;
    skip_space();
    if (pos_ >= text_.size() || !is_digit(text_[pos_])) fail("expected a nonnegative integer exponent");
    const std::size_t line = line_, column = column_;
    const std::string digits = read_digits();
    std::uint64_t e = 0;
    for (char c : digits) {
      if (e > (std::numeric_limits<std::uint32_t>::max() - (c - '0')) / 10) fail_at("exponent too large", line, column);
      e = e * 10 + static_cast<std::uint64_t>(c - '0');
    }
    auto n = node(PolyExpr::Kind::Power, base->line, base->column);
    n->lhs = std::move(base);
    n->exponent = e;
    return n;
  }

  std::string read_digits() {
    std::string out;
    while (pos_ < text_.size() && is_digit(text_[pos_])) {
      out.push_back(text_[pos_]);
      advance();
    }
    return out;
  }

  std::unique_ptr<PolyExpr> atom() {
    skip_space();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    const std::size_t line = line_, column = column_;
    const char c = text_[pos_];
    if (is_digit(c)) {
      auto n = node(PolyExpr::Kind::Integer, line, column);
      n->text = read_digits();
      return n;
    }
    if (is_name_start(c)) {
      auto n = node(PolyExpr::Kind::Variable, line, column);
      while (pos_ < text_.size() && is_name_char(text_[pos_])) {
        n->text.push_back(text_[pos_]);
        advance();
      }
      return n;
    }
    if (accept('(')) {
      auto inner = expr();
      if (!accept(')')) fail(pos_ < text_.size() ? "expected ')'" : "unexpected end of input");
      return inner;
    }
    fail(std::string("unexpected '") + c + "'");
  }
};

}  // namespace

std::unique_ptr<PolyExpr> parse_expression(std::string_view text) { return Parser(text).run(); }

MultiPoly evaluate_expression(const PolyExpr& e, const std::vector<std::string>& vars, const Prime& prime,
                              Level level) {
  const std::size_t n = vars.size();
  switch (e.kind) {
    case PolyExpr::Kind::Integer: {
      const Coeff m = level == Level::ModP ? prime.value() : prime.square();
      Coeff v = 0;
      for (char c : e.text) v = (v * 10 + static_cast<Coeff>(c - '0')) % m;
      return MultiPoly::constant(prime, n, level, v);
    }
    case PolyExpr::Kind::Variable:
      for (std::size_t i = 0; i < n; ++i)
        if (vars[i] == e.text) return MultiPoly::variable(prime, n, level, i);
      throw UnknownVariable(e.text);
    case PolyExpr::Kind::Negate:
      return -evaluate_expression(*e.lhs, vars, prime, level);
    case PolyExpr::Kind::Add:
      return evaluate_expression(*e.lhs, vars, prime, level) + evaluate_expression(*e.rhs, vars, prime, level);
    case PolyExpr::Kind::Subtract:
      return evaluate_expression(*e.lhs, vars, prime, level) - evaluate_expression(*e.rhs, vars, prime, level);
    case PolyExpr::Kind::Multiply:
      return evaluate_expression(*e.lhs, vars, prime, level) * evaluate_expression(*e.rhs, vars, prime, level);
    case PolyExpr::Kind::Power:
      return evaluate_expression(*e.lhs, vars, prime, level).pow(e.exponent);
  }
  throw InternalInconsistency("unhandled expression kind");
}

MultiPoly parse_poly(std::string_view text, const std::vector<std::string>& vars, const Prime& prime, Level level) {
  validate_variable_names(vars);
  return evaluate_expression(*parse_expression(text), vars, prime, level);
}

void validate_variable_names(const std::vector<std::string>& vars) {
  std::set<std::string> seen;
  for (const std::string& v : vars) {
    if (v.empty() || !is_name_start(v.front())) throw Error("invalid variable name '" + v + "'");
    for (char c : v)
      if (!is_name_char(c)) throw Error("invalid variable name '" + v + "'");
    if (!seen.insert(v).second) throw Error("duplicate variable name '" + v + "'");
  }
}

}  // namespace froblift
