#pragma once

#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "vexlab/grid.hpp"

namespace vexlab {

/// Syntax error with the byte offset of the offending token and a short
/// description of what was expected there.
struct ParseError : std::runtime_error {
  ParseError(const std::string& msg, std::size_t pos)
      : std::runtime_error(msg + " (at position " + std::to_string(pos) + ")"),
        position(pos) {}
  std::size_t position;
};

/// Domain error raised when evaluating an expression at a point where it is
/// undefined (log of a nonpositive value, division by zero, ...).
struct EvalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

namespace detail {
struct Node;
using NodePtr = std::shared_ptr<const Node>;
}  // namespace detail

/// A parsed closed-form expression over coordinates x1..x3.
///
/// Grammar: + - * / ^ (right assoc), unary minus, parentheses, decimal
/// constants, `pi`, coordinates x1/x2/x3, and the functions abs, sign, sin,
/// cos, exp, log, sqrt, norm(a1,...,ak) = sqrt(a1^2+...+ak^2), and
/// gdiv(u,v) = u/v with the convention gdiv(u,0) = 0 (guarded division;
/// produced by differentiation of norm and usable directly).
class Expr {
 public:
  /// Parses `source`; throws ParseError with position info on bad input.
  static Expr parse(const std::string& source);

  /// Value at the point x (only the first max_coord() entries are read).
  double eval(const std::array<double, 3>& x) const;

  /// Exact partial derivative with respect to coordinate `axis` (0-based).
  /// abs/sign/norm are differentiated with the derivative-at-kink = 0
  /// convention.
  Expr derivative(int axis) const;

  /// Renders the tree back to parseable text.
  std::string to_string() const;

  /// Highest coordinate index mentioned, 1-based (0 for constants).
  int max_coord() const { return max_coord_; }

 private:
  Expr(detail::NodePtr root, int max_coord)
      : root_(std::move(root)), max_coord_(max_coord) {}
  detail::NodePtr root_;
  int max_coord_;
};

/// Nodewise evaluation on the grid. Throws EvalError naming the first node
/// where the value is not finite. Requires expr.max_coord() <= grid dim.
ScalarField eval_on_grid(const Expr& e, GridPtr g);

/// Symbolic gradient evaluated nodewise (exact, unlike discrete_gradient).
VectorField grad_on_grid(const Expr& e, GridPtr g);

}  // namespace vexlab
