#include "spbvp/expr.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <numbers>
#include <sstream>

#include "spbvp/errors.hpp"

namespace spbvp {

Expr Expr::constant(double value) {
  if (!std::isfinite(value)) throw InvalidArgument("non-finite constant in expression");
  if (std::signbit(value) && value != 0.0) return neg(constant(-value));
  auto n = std::make_shared<Node>();
  n->op = Op::kConstant;
  n->value = value == 0.0 ? 0.0 : value;
  return Expr(std::move(n));
}

Expr Expr::variable() {
  auto n = std::make_shared<Node>();
  n->op = Op::kVariable;
  return Expr(std::move(n));
}

Expr Expr::pi() {
  auto n = std::make_shared<Node>();
  n->op = Op::kPi;
  return Expr(std::move(n));
}

namespace {

template <typename NodeT, typename ExprT>
std::shared_ptr<NodeT> Unary(Op op, const ExprT& x) {
  auto n = std::make_shared<NodeT>();
  n->op = op;
  n->lhs = x;
  return n;
}

}  // namespace

Expr Expr::neg(Expr x) { return Expr(Unary<Node>(Op::kNeg, x.node_)); }
Expr Expr::exp(Expr x) { return Expr(Unary<Node>(Op::kExp, x.node_)); }
Expr Expr::sin(Expr x) { return Expr(Unary<Node>(Op::kSin, x.node_)); }
Expr Expr::cos(Expr x) { return Expr(Unary<Node>(Op::kCos, x.node_)); }

Expr Expr::pow(Expr base, unsigned exponent) {
  auto n = Unary<Node>(Op::kPow, base.node_);
  n->exponent = exponent;
  return Expr(std::move(n));
}

Expr Expr::binary(Op op, Expr lhs, Expr rhs) {
  if (op != Op::kAdd && op != Op::kSub && op != Op::kMul && op != Op::kDiv) {
    throw InvalidArgument("Expr::binary requires an arithmetic operator");
  }
  auto n = std::make_shared<Node>();
  n->op = op;
  n->lhs = std::move(lhs.node_);
  n->rhs = std::move(rhs.node_);
  return Expr(std::move(n));
}

std::size_t Expr::depth() const {
  std::size_t d = 0;
  if (node_->lhs) d = std::max(d, lhs().depth());
  if (node_->rhs) d = std::max(d, rhs().depth());
  return d + 1;
}

bool operator==(const Expr& x, const Expr& y) {
  if (x.node_ == y.node_) return true;
  if (x.op() != y.op() || x.value() != y.value() || x.exponent() != y.exponent()) return false;
  if (static_cast<bool>(x.node_->lhs) != static_cast<bool>(y.node_->lhs)) return false;
  if (static_cast<bool>(x.node_->rhs) != static_cast<bool>(y.node_->rhs)) return false;
  if (x.node_->lhs && !(x.lhs() == y.lhs())) return false;
  if (x.node_->rhs && !(x.rhs() == y.rhs())) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Parser

namespace {

class Parser {
 public:
  explicit Parser(std::string_view src) : src_(src) {}

  Expr Parse() {
    for (std::size_t i = 0; i < src_.size(); ++i) {
      if (static_cast<unsigned char>(src_[i]) > 0x7f) {
        throw SyntaxError(i, "ASCII character", "non-ASCII byte");
      }
    }
    Expr e = ParseExpr();
    SkipSpace();
    if (pos_ != src_.size()) throw SyntaxError(pos_, "operator or end of input", Describe());
    return e;
  }

 private:
  void SkipSpace() {
    while (pos_ < src_.size() && (src_[pos_] == ' ' || src_[pos_] == '\t' ||
                                  src_[pos_] == '\n' || src_[pos_] == '\r')) {
      ++pos_;
    }
  }

  char Peek() {
    SkipSpace();
    return pos_ < src_.size() ? src_[pos_] : '\0';
  }

  std::string Describe() {
    SkipSpace();
    if (pos_ >= src_.size()) return "end of input";
    return std::string("'") + src_[pos_] + "'";
  }

  void Expect(char c) {
    if (Peek() != c) throw SyntaxError(pos_, std::string("'") + c + "'", Describe());
    ++pos_;
  }

  Expr ParseExpr() {
    Expr lhs = ParseTerm();
    for (char c = Peek(); c == '+' || c == '-'; c = Peek()) {
      ++pos_;
      Expr rhs = ParseTerm();
      lhs = Expr::binary(c == '+' ? Op::kAdd : Op::kSub, std::move(lhs), std::move(rhs));
    }
    return lhs;
  }

  Expr ParseTerm() {
    Expr lhs = ParseFactor();
    for (char c = Peek(); c == '*' || c == '/'; c = Peek()) {
      ++pos_;
      Expr rhs = ParseFactor();
      lhs = Expr::binary(c == '*' ? Op::kMul : Op::kDiv, std::move(lhs), std::move(rhs));
    }
    return lhs;
  }

  Expr ParseFactor() {
    if (Peek() == '-') {
      ++pos_;
      return Expr::neg(ParseFactor());
    }
    Expr base = ParseAtom();
    if (Peek() == '^') {
      ++pos_;
      SkipSpace();
      const std::size_t start = pos_;
      unsigned exponent = 0;
      const auto [end, ec] = std::from_chars(src_.data() + pos_, src_.data() + src_.size(), exponent);
      if (ec != std::errc() || end == src_.data() + start) {
        throw SyntaxError(start, "non-negative integer exponent", Describe());
      }
      pos_ = static_cast<std::size_t>(end - src_.data());
      if (pos_ < src_.size() && (src_[pos_] == '.' || src_[pos_] == 'e' || src_[pos_] == 'E')) {
        throw SyntaxError(pos_, "non-negative integer exponent", "non-integer exponent");
      }
      return Expr::pow(std::move(base), exponent);
    }
    return base;
  }

  Expr ParseAtom() {
    const char c = Peek();
    if (c == '(') {
      ++pos_;
      Expr inner = ParseExpr();
      Expect(')');
      return inner;
    }
    if ((c >= '0' && c <= '9') || c == '.') return ParseNumber();
    if (std::isalpha(static_cast<unsigned char>(c))) return ParseIdentifier();
    throw SyntaxError(pos_, "number, 't', 'pi', function or '('", Describe());
  }

  Expr ParseNumber() {
    const std::size_t start = pos_;
    double value = 0.0;
    const auto [end, ec] = std::from_chars(src_.data() + pos_, src_.data() + src_.size(), value,
                                           std::chars_format::general);
    if (ec != std::errc() || end == src_.data() + start) {
      throw SyntaxError(start, "number", Describe());
    }
    if (!std::isfinite(value)) throw SyntaxError(start, "finite number", "out-of-range literal");
    pos_ = static_cast<std::size_t>(end - src_.data());
    return Expr::constant(value);
  }

  Expr ParseIdentifier() {
    const std::size_t start = pos_;
    while (pos_ < src_.size() && std::isalnum(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    const std::string_view name = src_.substr(start, pos_ - start);
    if (name == "t") return Expr::variable();
    if (name == "pi") return Expr::pi();
    if (name == "exp" || name == "sin" || name == "cos") {
      Expect('(');
      Expr arg = ParseExpr();
      Expect(')');
      if (name == "exp") return Expr::exp(std::move(arg));
      if (name == "sin") return Expr::sin(std::move(arg));
      return Expr::cos(std::move(arg));
    }
    throw UnknownIdentifier(start, std::string(name));
  }

  std::string_view src_;
  std::size_t pos_ = 0;
};

void Print(const Expr& e, std::string& out) {
  switch (e.op()) {
    case Op::kConstant: {
      char buf[32];
      const auto res = std::to_chars(buf, buf + sizeof(buf), e.value());
      out.append(buf, res.ptr);
      return;
    }
    case Op::kVariable:
      out += 't';
      return;
    case Op::kPi:
      out += "pi";
      return;
    case Op::kNeg:
      out += "-(";
      Print(e.lhs(), out);
      out += ')';
      return;
    case Op::kExp:
    case Op::kSin:
    case Op::kCos:
      out += e.op() == Op::kExp ? "exp(" : e.op() == Op::kSin ? "sin(" : "cos(";
      Print(e.lhs(), out);
      out += ')';
      return;
    case Op::kPow:
      out += '(';
      Print(e.lhs(), out);
      out += ")^";
      out += std::to_string(e.exponent());
      return;
    case Op::kAdd:
    case Op::kSub:
    case Op::kMul:
    case Op::kDiv: {
      static constexpr char kSymbol[] = {'+', '-', '*', '/'};
      out += '(';
      Print(e.lhs(), out);
      out += ' ';
      out += kSymbol[static_cast<int>(e.op()) - static_cast<int>(Op::kAdd)];
      out += ' ';
      Print(e.rhs(), out);
      out += ')';
      return;
    }
  }
}

}  // namespace

Expr parse_expr(std::string_view src) { return Parser(src).Parse(); }

std::string to_string(const Expr& e) {
  std::string out;
  Print(e, out);
  return out;
}

Jet3 eval_jet(const Expr& e, double t, double min_denominator) {
  switch (e.op()) {
    case Op::kConstant:
      return Jet3::constant(e.value());
    case Op::kVariable:
      return Jet3::variable(t);
    case Op::kPi:
      return Jet3::constant(std::numbers::pi);
    case Op::kNeg:
      return -eval_jet(e.lhs(), t, min_denominator);
    case Op::kExp:
      return exp(eval_jet(e.lhs(), t, min_denominator));
    case Op::kSin:
      return sin(eval_jet(e.lhs(), t, min_denominator));
    case Op::kCos:
      return cos(eval_jet(e.lhs(), t, min_denominator));
    case Op::kPow:
      return pow(eval_jet(e.lhs(), t, min_denominator), e.exponent());
    case Op::kAdd:
      return eval_jet(e.lhs(), t, min_denominator) + eval_jet(e.rhs(), t, min_denominator);
    case Op::kSub:
      return eval_jet(e.lhs(), t, min_denominator) - eval_jet(e.rhs(), t, min_denominator);
    case Op::kMul:
      return eval_jet(e.lhs(), t, min_denominator) * eval_jet(e.rhs(), t, min_denominator);
    case Op::kDiv: {
      const Jet3 den = eval_jet(e.rhs(), t, min_denominator);
      if (!(std::abs(den.c[0]) >= min_denominator)) {
        std::ostringstream os;
        os.precision(17);
        os << "DomainError: denominator " << to_string(e.rhs()) << " = " << den.c[0]
           << " at t = " << t;
        throw DomainError(os.str());
      }
      return eval_jet(e.lhs(), t, min_denominator) / den;
    }
  }
  throw InvalidArgument("corrupt expression node");
}

}  // namespace spbvp
