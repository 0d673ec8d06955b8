#include "vexlab/expr.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <sstream>

namespace vexlab {
namespace detail {

enum class Op {
  kConst,
  kCoord,
  kAdd,
  kSub,
  kMul,
  kDiv,
  kGdiv,
  kPow,
  kNeg,
  kAbs,
  kSign,
  kSin,
  kCos,
  kExp,
  kLog,
  kSqrt,
  kNorm,
};

struct Node {
  Op op;
  double value = 0.0;  // kConst
  int axis = 0;        // kCoord, 0-based
  std::vector<NodePtr> kids;
};

namespace {

NodePtr constant(double v) {
  return std::make_shared<Node>(Node{Op::kConst, v, 0, {}});
}

NodePtr coord(int axis) {
  return std::make_shared<Node>(Node{Op::kCoord, 0.0, axis, {}});
}

NodePtr make(Op op, std::vector<NodePtr> kids) {
  return std::make_shared<Node>(Node{op, 0.0, 0, std::move(kids)});
}

bool is_const(const NodePtr& n, double v) {
  return n->op == Op::kConst && n->value == v;
}

// Light algebraic simplification keeps derivative trees readable and avoids
// spurious 0*inf products at evaluation time.
NodePtr add(NodePtr a, NodePtr b) {
  if (is_const(a, 0.0)) return b;
  if (is_const(b, 0.0)) return a;
  if (a->op == Op::kConst && b->op == Op::kConst)
    return constant(a->value + b->value);
  return make(Op::kAdd, {a, b});
}

NodePtr sub(NodePtr a, NodePtr b) {
  if (is_const(b, 0.0)) return a;
  if (a->op == Op::kConst && b->op == Op::kConst)
    return constant(a->value - b->value);
  if (is_const(a, 0.0)) return make(Op::kNeg, {b});
  return make(Op::kSub, {a, b});
}

NodePtr mul(NodePtr a, NodePtr b) {
  if (is_const(a, 0.0) || is_const(b, 0.0)) return constant(0.0);
  if (is_const(a, 1.0)) return b;
  if (is_const(b, 1.0)) return a;
  if (a->op == Op::kConst && b->op == Op::kConst)
    return constant(a->value * b->value);
  return make(Op::kMul, {a, b});
}

NodePtr div(NodePtr a, NodePtr b) {
  if (is_const(a, 0.0)) return constant(0.0);
  if (is_const(b, 1.0)) return a;
  return make(Op::kDiv, {a, b});
}

NodePtr gdiv(NodePtr a, NodePtr b) {
  if (is_const(a, 0.0)) return constant(0.0);
  if (is_const(b, 1.0)) return a;
  return make(Op::kGdiv, {a, b});
}

NodePtr pow_node(NodePtr a, NodePtr b) {
  if (is_const(b, 1.0)) return a;
  if (is_const(b, 0.0)) return constant(1.0);
  return make(Op::kPow, {a, b});
}

double eval_node(const Node& n, const std::array<double, 3>& x) {
  switch (n.op) {
    case Op::kConst:
      return n.value;
    case Op::kCoord:
      return x[n.axis];
    case Op::kAdd:
      return eval_node(*n.kids[0], x) + eval_node(*n.kids[1], x);
    case Op::kSub:
      return eval_node(*n.kids[0], x) - eval_node(*n.kids[1], x);
    case Op::kMul:
      return eval_node(*n.kids[0], x) * eval_node(*n.kids[1], x);
    case Op::kDiv:
      return eval_node(*n.kids[0], x) / eval_node(*n.kids[1], x);
    case Op::kGdiv: {
      const double den = eval_node(*n.kids[1], x);
      if (den == 0.0) return 0.0;
      return eval_node(*n.kids[0], x) / den;
    }
    case Op::kPow:
      return std::pow(eval_node(*n.kids[0], x), eval_node(*n.kids[1], x));
    case Op::kNeg:
      return -eval_node(*n.kids[0], x);
    case Op::kAbs:
      return std::fabs(eval_node(*n.kids[0], x));
    case Op::kSign: {
      const double v = eval_node(*n.kids[0], x);
      return (v > 0.0) - (v < 0.0);
    }
    case Op::kSin:
      return std::sin(eval_node(*n.kids[0], x));
    case Op::kCos:
      return std::cos(eval_node(*n.kids[0], x));
    case Op::kExp:
      return std::exp(eval_node(*n.kids[0], x));
    case Op::kLog:
      return std::log(eval_node(*n.kids[0], x));
    case Op::kSqrt:
      return std::sqrt(eval_node(*n.kids[0], x));
    case Op::kNorm: {
      double s = 0.0;
      for (const auto& k : n.kids) {
        const double v = eval_node(*k, x);
        s += v * v;
      }
      return std::sqrt(s);
    }
  }
  return 0.0;
}

NodePtr diff(const NodePtr& n, int axis);

NodePtr diff(const NodePtr& n, int axis) {
  switch (n->op) {
    case Op::kConst:
      return constant(0.0);
    case Op::kCoord:
      return constant(n->axis == axis ? 1.0 : 0.0);
    case Op::kAdd:
      return add(diff(n->kids[0], axis), diff(n->kids[1], axis));
    case Op::kSub:
      return sub(diff(n->kids[0], axis), diff(n->kids[1], axis));
    case Op::kMul:
      return add(mul(diff(n->kids[0], axis), n->kids[1]),
                 mul(n->kids[0], diff(n->kids[1], axis)));
    case Op::kDiv:
      // (f/g)' = f'/g - f g'/g^2
      return sub(div(diff(n->kids[0], axis), n->kids[1]),
                 div(mul(n->kids[0], diff(n->kids[1], axis)),
                     mul(n->kids[1], n->kids[1])));
    case Op::kGdiv:
      return sub(gdiv(diff(n->kids[0], axis), n->kids[1]),
                 gdiv(mul(n->kids[0], diff(n->kids[1], axis)),
                      mul(n->kids[1], n->kids[1])));
    case Op::kPow: {
      const NodePtr& f = n->kids[0];
      const NodePtr& g = n->kids[1];
      if (g->op == Op::kConst) {
        // c f^{c-1} f'
        return mul(mul(constant(g->value), pow_node(f, constant(g->value - 1))),
                   diff(f, axis));
      }
      // f^g (g' log f + g f'/f)
      return mul(pow_node(f, g),
                 add(mul(diff(g, axis), make(Op::kLog, {f})),
                     div(mul(g, diff(f, axis)), f)));
    }
    case Op::kNeg:
      return make(Op::kNeg, {diff(n->kids[0], axis)});
    case Op::kAbs:
      return mul(make(Op::kSign, {n->kids[0]}), diff(n->kids[0], axis));
    case Op::kSign:
      return constant(0.0);  // derivative 0 away from the jump, 0 at it
    case Op::kSin:
      return mul(make(Op::kCos, {n->kids[0]}), diff(n->kids[0], axis));
    case Op::kCos:
      return make(Op::kNeg,
                  {mul(make(Op::kSin, {n->kids[0]}), diff(n->kids[0], axis))});
    case Op::kExp:
      return mul(make(Op::kExp, {n->kids[0]}), diff(n->kids[0], axis));
    case Op::kLog:
      return div(diff(n->kids[0], axis), n->kids[0]);
    case Op::kSqrt:
      return div(diff(n->kids[0], axis),
                 mul(constant(2.0), make(Op::kSqrt, {n->kids[0]})));
    case Op::kNorm: {
      // d||a|| = (sum a_i a_i') / ||a||, with value 0 where the norm vanishes.
      NodePtr num = constant(0.0);
      for (const auto& k : n->kids) num = add(num, mul(k, diff(k, axis)));
      return gdiv(num, n);
    }
  }
  return constant(0.0);
}

void print_node(const Node& n, std::ostream& os);

void print_call(const char* name, const Node& n, std::ostream& os) {
  os << name << '(';
  for (std::size_t i = 0; i < n.kids.size(); ++i) {
    if (i) os << ", ";
    print_node(*n.kids[i], os);
  }
  os << ')';
}

void print_node(const Node& n, std::ostream& os) {
  switch (n.op) {
    case Op::kConst: {
      std::ostringstream tmp;
      tmp.precision(17);
      tmp << n.value;
      os << tmp.str();
      break;
    }
    case Op::kCoord:
      os << 'x' << (n.axis + 1);
      break;
    case Op::kAdd:
      os << '(';
      print_node(*n.kids[0], os);
      os << " + ";
      print_node(*n.kids[1], os);
      os << ')';
      break;
    case Op::kSub:
      os << '(';
      print_node(*n.kids[0], os);
      os << " - ";
      print_node(*n.kids[1], os);
      os << ')';
      break;
    case Op::kMul:
      os << '(';
      print_node(*n.kids[0], os);
      os << " * ";
      print_node(*n.kids[1], os);
      os << ')';
      break;
    case Op::kDiv:
      os << '(';
      print_node(*n.kids[0], os);
      os << " / ";
      print_node(*n.kids[1], os);
      os << ')';
      break;
    case Op::kGdiv:
      print_call("gdiv", n, os);
      break;
    case Op::kPow:
      os << '(';
      print_node(*n.kids[0], os);
      os << " ^ ";
      print_node(*n.kids[1], os);
      os << ')';
      break;
    case Op::kNeg:
      os << "(-";
      print_node(*n.kids[0], os);
      os << ')';
      break;
    case Op::kAbs:
      print_call("abs", n, os);
      break;
    case Op::kSign:
      print_call("sign", n, os);
      break;
    case Op::kSin:
      print_call("sin", n, os);
      break;
    case Op::kCos:
      print_call("cos", n, os);
      break;
    case Op::kExp:
      print_call("exp", n, os);
      break;
    case Op::kLog:
      print_call("log", n, os);
      break;
    case Op::kSqrt:
      print_call("sqrt", n, os);
      break;
    case Op::kNorm:
      print_call("norm", n, os);
      break;
  }
}

int max_coord_of(const Node& n) {
  int m = (n.op == Op::kCoord) ? n.axis + 1 : 0;
  for (const auto& k : n.kids) m = std::max(m, max_coord_of(*k));
  return m;
}

// ---------------------------------------------------------------------------
// Recursive-descent parser.

struct Token {
  enum Kind { kNumber, kIdent, kOp, kEnd } kind;
  std::string text;
  double number = 0.0;
  std::size_t pos = 0;
};

class Lexer {
 public:
  explicit Lexer(const std::string& s) : src_(s) { advance(); }

  const Token& peek() const { return tok_; }

  Token take() {
    Token t = tok_;
    advance();
    return t;
  }

 private:
  void advance() {
    while (i_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[i_])))
      ++i_;
    tok_.pos = i_;
    if (i_ >= src_.size()) {
      tok_ = Token{Token::kEnd, "", 0.0, i_};
      return;
    }
    const char c = src_[i_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      const char* begin = src_.c_str() + i_;
      char* end = nullptr;
      const double v = std::strtod(begin, &end);
      if (end == begin) throw ParseError("malformed number", i_);
      tok_ = Token{Token::kNumber, std::string(begin, end), v, i_};
      i_ += static_cast<std::size_t>(end - begin);
      return;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i_;
      while (j < src_.size() &&
             (std::isalnum(static_cast<unsigned char>(src_[j])) ||
              src_[j] == '_'))
        ++j;
      tok_ = Token{Token::kIdent, src_.substr(i_, j - i_), 0.0, i_};
      i_ = j;
      return;
    }
    static const std::string ops = "+-*/^(),";
    if (ops.find(c) != std::string::npos) {
      tok_ = Token{Token::kOp, std::string(1, c), 0.0, i_};
      ++i_;
      return;
    }
    throw ParseError(std::string("unexpected character '") + c + "'", i_);
  }

  const std::string& src_;
  std::size_t i_ = 0;
  Token tok_;
};

class Parser {
 public:
  explicit Parser(const std::string& s) : lex_(s) {}

  NodePtr parse() {
    NodePtr e = expression();
    if (lex_.peek().kind != Token::kEnd)
      throw ParseError("expected operator or end of input, got '" +
                           lex_.peek().text + "'",
                       lex_.peek().pos);
    return e;
  }

 private:
  NodePtr expression() {
    NodePtr e = term();
    while (lex_.peek().kind == Token::kOp &&
           (lex_.peek().text == "+" || lex_.peek().text == "-")) {
      const std::string op = lex_.take().text;
      NodePtr rhs = term();
      e = (op == "+") ? make(Op::kAdd, {e, rhs}) : make(Op::kSub, {e, rhs});
    }
    return e;
  }

  NodePtr term() {
    NodePtr e = unary();
    while (lex_.peek().kind == Token::kOp &&
           (lex_.peek().text == "*" || lex_.peek().text == "/")) {
      const std::string op = lex_.take().text;
      NodePtr rhs = unary();
      e = (op == "*") ? make(Op::kMul, {e, rhs}) : make(Op::kDiv, {e, rhs});
    }
    return e;
  }

  NodePtr unary() {
    if (lex_.peek().kind == Token::kOp && lex_.peek().text == "-") {
      lex_.take();
      return make(Op::kNeg, {unary()});
    }
    if (lex_.peek().kind == Token::kOp && lex_.peek().text == "+") {
      lex_.take();
      return unary();
    }
    return power();
  }

  NodePtr power() {
    NodePtr base = atom();
    if (lex_.peek().kind == Token::kOp && lex_.peek().text == "^") {
      lex_.take();
      // right associative; exponent may carry a unary sign
      return make(Op::kPow, {base, unary()});
    }
    return base;
  }

  NodePtr atom() {
    const Token t = lex_.take();
    if (t.kind == Token::kNumber) return constant(t.number);
    if (t.kind == Token::kIdent) return ident(t);
    if (t.kind == Token::kOp && t.text == "(") {
      NodePtr e = expression();
      expect(")");
      return e;
    }
    throw ParseError("expected number, identifier or '(', got " +
                         (t.kind == Token::kEnd ? std::string("end of input")
                                                : "'" + t.text + "'"),
                     t.pos);
  }

  NodePtr ident(const Token& t) {
    if (t.text == "pi") return constant(M_PI);
    if (t.text.size() == 2 && t.text[0] == 'x' && t.text[1] >= '1' &&
        t.text[1] <= '3')
      return coord(t.text[1] - '1');

    struct Fn {
      const char* name;
      Op op;
      int min_args, max_args;
    };
    static const Fn fns[] = {
        {"abs", Op::kAbs, 1, 1},  {"sign", Op::kSign, 1, 1},
        {"sin", Op::kSin, 1, 1},  {"cos", Op::kCos, 1, 1},
        {"exp", Op::kExp, 1, 1},  {"log", Op::kLog, 1, 1},
        {"sqrt", Op::kSqrt, 1, 1}, {"norm", Op::kNorm, 1, 3},
        {"gdiv", Op::kGdiv, 2, 2},
    };
    for (const Fn& f : fns) {
      if (t.text == f.name) {
        expect("(");
        std::vector<NodePtr> args;
        args.push_back(expression());
        while (lex_.peek().kind == Token::kOp && lex_.peek().text == ",") {
          lex_.take();
          args.push_back(expression());
        }
        expect(")");
        if (static_cast<int>(args.size()) < f.min_args ||
            static_cast<int>(args.size()) > f.max_args)
          throw ParseError(std::string(f.name) + ": wrong argument count",
                           t.pos);
        return make(f.op, std::move(args));
      }
    }
    throw ParseError("unknown identifier '" + t.text + "'", t.pos);
  }

  void expect(const std::string& op) {
    const Token t = lex_.take();
    if (t.kind != Token::kOp || t.text != op)
      throw ParseError("expected '" + op + "', got " +
                           (t.kind == Token::kEnd ? std::string("end of input")
                                                  : "'" + t.text + "'"),
                       t.pos);
  }

  Lexer lex_;
};

}  // namespace
}  // namespace detail

Expr Expr::parse(const std::string& source) {
  if (source.empty()) throw ParseError("empty expression", 0);
  detail::Parser p(source);
  detail::NodePtr root = p.parse();
  return Expr(root, detail::max_coord_of(*root));
}

double Expr::eval(const std::array<double, 3>& x) const {
  return detail::eval_node(*root_, x);
}

Expr Expr::derivative(int axis) const {
  detail::NodePtr d = detail::diff(root_, axis);
  return Expr(d, detail::max_coord_of(*d));
}

std::string Expr::to_string() const {
  std::ostringstream os;
  detail::print_node(*root_, os);
  return os.str();
}

ScalarField eval_on_grid(const Expr& e, GridPtr g) {
  if (e.max_coord() > g->dim)
    throw std::invalid_argument("expression mentions x" +
                                std::to_string(e.max_coord()) +
                                " but the grid has dim " +
                                std::to_string(g->dim));
  ScalarField out = make_field(g);
  for (int i = 0; i < g->node_count(); ++i) {
    const double v = e.eval(g->coord(i));
    if (!std::isfinite(v)) {
      const auto x = g->coord(i);
      throw EvalError("domain error at node " + std::to_string(i) + " (x=" +
                      std::to_string(x[0]) + ", " + std::to_string(x[1]) +
                      ", " + std::to_string(x[2]) + ")");
    }
    out.values[i] = v;
  }
  return out;
}

VectorField grad_on_grid(const Expr& e, GridPtr g) {
  if (e.max_coord() > g->dim)
    throw std::invalid_argument("expression arity exceeds grid dim");
  VectorField out{g, std::vector<double>(
                         static_cast<std::size_t>(g->dim) * g->node_count(),
                         0.0)};
  for (int k = 0; k < g->dim; ++k) {
    const Expr dk = e.derivative(k);
    for (int i = 0; i < g->node_count(); ++i) {
      const double v = dk.eval(g->coord(i));
      if (!std::isfinite(v))
        throw EvalError("domain error in derivative at node " +
                        std::to_string(i));
      out.comp(k, i) = v;
    }
  }
  return out;
}

}  // namespace vexlab
