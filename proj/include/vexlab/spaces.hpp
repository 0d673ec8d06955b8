#pragma once

#include <vector>

#include "vexlab/grid.hpp"

namespace vexlab {

/// Nodal samples of a variable exponent p with 1 < p_minus <= p_plus < inf.
struct ExponentField {
  GridPtr grid;
  std::vector<double> values;
  double p_minus = 0.0;
  double p_plus = 0.0;
};

/// Validates finiteness and 1 < min; computes the extremes.
ExponentField make_exponent_field(const ScalarField& p);
ExponentField make_exponent_field(GridPtr g, std::vector<double> values);
ExponentField constant_exponent(GridPtr g, double p);

/// Nodewise p + delta (used for the p(x)+1 and p(x)-1 norm terms).
ExponentField shift_exponent(const ExponentField& p, double delta);

/// The modular rho(u) = integral of |u|^{p(x)} over the box.
double modular(const ScalarField& u, const ExponentField& p);

/// Luxemburg norm inf{mu > 0 : rho(u/mu) <= 1}, located by bracketing and
/// bisection on the strictly decreasing map mu -> rho(u/mu). Returns 0 for
/// the zero field. Guarantees |rho(u/mu*) - 1| <= tol at the returned mu*;
/// throws std::runtime_error when tol cannot be met in the iteration budget.
double luxemburg_norm(const ScalarField& u, const ExponentField& p,
                      double tol = 1e-12);

struct HolderReport {
  double lhs = 0.0;       // |integral of u v|
  double rhs = 0.0;       // (1/p^- + 1/q^-) |u|_p |v|_q
  double norm_u = 0.0;
  double norm_v = 0.0;
  bool holds = false;
};

/// Evaluates both sides of the Hoelder-type inequality for conjugate
/// exponents. Requires 1/p(x) + 1/q(x) = 1 at every node within 1e-12.
HolderReport holder_pairing(const ScalarField& u, const ScalarField& v,
                            const ExponentField& p, const ExponentField& q);

struct TrichotomyReport {
  double norm = 0.0;
  double rho = 0.0;
  double lower = 0.0;  // applicable modular lower bound
  double upper = 0.0;  // applicable modular upper bound
  bool sign_consistent = false;
  bool bounds_hold = false;
  bool pass = false;
};

/// Checks the norm/modular trichotomy on the given field:
/// sign(|u|_p - 1) = sign(rho(u) - 1), and the power bounds
/// |u|^{p^-} <= rho <= |u|^{p^+} (norm > 1) resp. the reversed pair (norm < 1).
TrichotomyReport check_trichotomy(const ScalarField& u, const ExponentField& p,
                                  double slack = 1e-9);

struct ModularConvergenceReport {
  std::vector<double> norms;
  std::vector<double> modulars;
  bool norms_vanish = false;
  bool modulars_vanish = false;
  bool equivalent = false;  // both vanish together or neither does
  double tol = 0.0;
};

/// Finite-sequence check that |u_n - u|_p -> 0 and rho(u_n - u) -> 0 happen
/// together.
ModularConvergenceReport check_modular_convergence(
    const std::vector<ScalarField>& seq, const ScalarField& u,
    const ExponentField& p, double tol = 1e-8);

}  // namespace vexlab
