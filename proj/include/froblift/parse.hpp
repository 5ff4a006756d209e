#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "froblift/poly.hpp"

namespace froblift {

/// Parse tree for polynomial expressions.
///
///   expr  := term (('+' | '-') term)*
///   term  := unary ('*' unary)*
///   unary := '-' unary | power
///   power := atom ('^' INT)?
///   atom  := INT | NAME | '(' expr ')'
struct PolyExpr {
  enum class Kind { Integer, Variable, Negate, Add, Subtract, Multiply, Power };

  Kind kind = Kind::Integer;
  std::string text;              // digits of an Integer, name of a Variable
  std::uint64_t exponent = 0;    // Power only
  std::unique_ptr<PolyExpr> lhs;  // operand of Negate/Power, left operand otherwise
  std::unique_ptr<PolyExpr> rhs;
  std::size_t line = 1;
  std::size_t column = 1;
};

/// Throws ParseError with the 1-based line and column of the offending token.
std::unique_ptr<PolyExpr> parse_expression(std::string_view text);

/// Evaluates the tree with variable i bound to vars[i]. Throws UnknownVariable.
MultiPoly evaluate_expression(const PolyExpr& expr, const std::vector<std::string>& vars, const Prime& prime,
                              Level level);

/// parse_expression followed by evaluate_expression.
MultiPoly parse_poly(std::string_view text, const std::vector<std::string>& vars, const Prime& prime, Level level);

/// Throws Error unless every name is a distinct identifier.
void validate_variable_names(const std::vector<std::string>& vars);

}  // namespace froblift
