#pragma once

#include <memory>
#include <string>
#include <string_view>

#include "spbvp/jet.hpp"

namespace spbvp {

enum class Op { kConstant, kVariable, kPi, kNeg, kExp, kSin, kCos, kAdd, kSub, kMul, kDiv, kPow };

// Immutable expression tree in the variable t. Nodes are shared, so copies are
// cheap and concurrent evaluation is safe.
//
// Constants are stored non-negative: Expr::constant(-2) builds neg(2), which is
// also what parsing "-2" produces.
class Expr {
 public:
  static Expr constant(double value);
  static Expr variable();
  static Expr pi();
  static Expr neg(Expr x);
  static Expr exp(Expr x);
  static Expr sin(Expr x);
  static Expr cos(Expr x);
  static Expr pow(Expr base, unsigned exponent);
  static Expr binary(Op op, Expr lhs, Expr rhs);

  Op op() const { return node_->op; }
  double value() const { return node_->value; }
  unsigned exponent() const { return node_->exponent; }
  // Operand of unary nodes and pow is lhs().
  Expr lhs() const { return Expr(node_->lhs); }
  Expr rhs() const { return Expr(node_->rhs); }

  std::size_t depth() const;

  friend bool operator==(const Expr& x, const Expr& y);

 private:
  struct Node {
    Op op = Op::kConstant;
    double value = 0.0;
    unsigned exponent = 0;
    std::shared_ptr<const Node> lhs;
    std::shared_ptr<const Node> rhs;
  };

  explicit Expr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

  std::shared_ptr<const Node> node_;
};

inline Expr operator+(Expr x, Expr y) { return Expr::binary(Op::kAdd, std::move(x), std::move(y)); }
inline Expr operator-(Expr x, Expr y) { return Expr::binary(Op::kSub, std::move(x), std::move(y)); }
inline Expr operator*(Expr x, Expr y) { return Expr::binary(Op::kMul, std::move(x), std::move(y)); }
inline Expr operator/(Expr x, Expr y) { return Expr::binary(Op::kDiv, std::move(x), std::move(y)); }
inline Expr operator-(Expr x) { return Expr::neg(std::move(x)); }

// Parses the grammar
//   expr   := term (('+'|'-') term)*
//   term   := factor (('*'|'/') factor)*
//   factor := atom ('^' integer)? | '-' factor
//   atom   := number | 't' | 'pi' | func '(' expr ')' | '(' expr ')'
//   func   := 'exp' | 'sin' | 'cos'
// Throws SyntaxError or UnknownIdentifier.
Expr parse_expr(std::string_view src);

// Text that parse_expr maps back to a structurally identical tree.
std::string to_string(const Expr& e);

// Value and first three Taylor coefficients at t. Throws DomainError when a
// denominator has magnitude below min_denominator.
Jet3 eval_jet(const Expr& e, double t, double min_denominator = 1e-8);

}  // namespace spbvp
