#include "vexlab/spaces.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace vexlab {

namespace {

void check_grid(const GridPtr& a, const GridPtr& b, const char* what) {
  if (a != b) throw std::invalid_argument(std::string(what) + ": grid mismatch");
}

int cmp_with_slack(double x, double ref, double slack) {
  if (x > ref + slack) return 1;
  if (x < ref - slack) return -1;
  return 0;
}

}  // namespace

ExponentField make_exponent_field(const ScalarField& p) {
  double lo = p.values.empty() ? 0.0 : p.values[0];
  double hi = lo;
  for (double v : p.values) {
    if (!std::isfinite(v))
      throw std::invalid_argument("exponent field has a non-finite node");
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  if (!(lo > 1.0))
    throw std::invalid_argument("exponent field requires p(x) > 1, min is " +
                                std::to_string(lo));
  return ExponentField{p.grid, p.values, lo, hi};
}

ExponentField make_exponent_field(GridPtr g, std::vector<double> values) {
  return make_exponent_field(make_field(std::move(g), std::move(values)));
}

ExponentField constant_exponent(GridPtr g, double p) {
  return make_exponent_field(make_field(std::move(g), p));
}

ExponentField shift_exponent(const ExponentField& p, double delta) {
  std::vector<double> v = p.values;
  for (double& x : v) x += delta;
  return make_exponent_field(p.grid, std::move(v));
}

double modular(const ScalarField& u, const ExponentField& p) {
  check_grid(u.grid, p.grid, "modular");
  const Grid& g = *u.grid;
  double s = 0.0;
  for (int i = 0; i < g.node_count(); ++i)
    s += g.quad_w[i] * std::pow(std::fabs(u.values[i]), p.values[i]);
  return s;
}

double luxemburg_norm(const ScalarField& u, const ExponentField& p,
                      double tol) {
  check_grid(u.grid, p.grid, "luxemburg_norm");
  if (!(tol > 0.0)) throw std::invalid_argument("luxemburg_norm: tol <= 0");

  double umax = 0.0;
  for (double v : u.values) umax = std::max(umax, std::fabs(v));
  if (umax == 0.0) return 0.0;

  const auto residual = [&](double mu) {
    ScalarField scaled = u;
    const double inv = 1.0 / mu;
    for (double& v : scaled.values) v *= inv;
    return modular(scaled, p) - 1.0;
  };

  // Initial scale, then grow/shrink by factors of 2 until the root of the
  // strictly decreasing residual is bracketed.
  double mu0 = umax * std::pow(u.grid->measure(), 1.0 / p.p_minus);
  if (!(mu0 > 0.0) || !std::isfinite(mu0)) mu0 = umax;
  double lo = mu0, hi = mu0;
  double r_lo = residual(lo);
  int guard = 0;
  while (r_lo < 0.0 && guard++ < 2000) {
    lo *= 0.5;
    r_lo = residual(lo);
  }
  double r_hi = residual(hi);
  guard = 0;
  while (r_hi > 0.0 && guard++ < 2000) {
    hi *= 2.0;
    r_hi = residual(hi);
  }
  if (r_lo < 0.0 || r_hi > 0.0)
    throw std::runtime_error("luxemburg_norm: failed to bracket the root");

  double mid = 0.5 * (lo + hi);
  double r_mid = residual(mid);
  for (int it = 0; it < 200 && std::fabs(r_mid) > tol; ++it) {
    if (r_mid > 0.0)
      lo = mid;
    else
      hi = mid;
    mid = 0.5 * (lo + hi);
    r_mid = residual(mid);
  }
  if (std::fabs(r_mid) > tol)
    throw std::runtime_error(
        "luxemburg_norm: bisection did not reach tol = " + std::to_string(tol));
  return mid;
}

HolderReport holder_pairing(const ScalarField& u, const ScalarField& v,
                            const ExponentField& p, const ExponentField& q) {
  check_grid(u.grid, v.grid, "holder_pairing");
  check_grid(u.grid, p.grid, "holder_pairing");
  check_grid(u.grid, q.grid, "holder_pairing");
  for (std::size_t i = 0; i < p.values.size(); ++i) {
    const double c = 1.0 / p.values[i] + 1.0 / q.values[i];
    if (std::fabs(c - 1.0) > 1e-12)
      throw std::invalid_argument(
          "holder_pairing: exponents not conjugate at node " +
          std::to_string(i));
  }

  ScalarField prod = u;
  for (std::size_t i = 0; i < prod.values.size(); ++i)
    prod.values[i] *= v.values[i];

  HolderReport rep;
  rep.lhs = std::fabs(integrate(prod));
  rep.norm_u = luxemburg_norm(u, p);
  rep.norm_v = luxemburg_norm(v, q);
  rep.rhs = (1.0 / p.p_minus + 1.0 / q.p_minus) * rep.norm_u * rep.norm_v;
  rep.holds = rep.lhs <= rep.rhs + 1e-10;
  return rep;
}

TrichotomyReport check_trichotomy(const ScalarField& u, const ExponentField& p,
                                  double slack) {
  TrichotomyReport rep;
  rep.rho = modular(u, p);
  rep.norm = luxemburg_norm(u, p, std::min(slack * 1e-3, 1e-12));

  const int sn = cmp_with_slack(rep.norm, 1.0, slack);
  const int sr = cmp_with_slack(rep.rho, 1.0, slack);
  rep.sign_consistent = (sn == sr) || sn == 0 || sr == 0;

  if (rep.norm == 0.0) {
    rep.lower = rep.upper = 0.0;
    rep.bounds_hold = (rep.rho == 0.0);
  } else if (sn > 0) {
    rep.lower = std::pow(rep.norm, p.p_minus);
    rep.upper = std::pow(rep.norm, p.p_plus);
    rep.bounds_hold =
        rep.lower <= rep.rho + slack && rep.rho <= rep.upper + slack;
  } else if (sn < 0) {
    rep.lower = std::pow(rep.norm, p.p_plus);
    rep.upper = std::pow(rep.norm, p.p_minus);
    rep.bounds_hold =
        rep.lower <= rep.rho + slack && rep.rho <= rep.upper + slack;
  } else {
    // |u|_p within slack of 1: the modular must sit next to 1 as well,
    // up to the local slope of t -> rho(t u) which is bounded by p^+.
    rep.lower = rep.upper = 1.0;
    rep.bounds_hold = std::fabs(rep.rho - 1.0) <= slack * (p.p_plus + 1.0);
  }
  rep.pass = rep.sign_consistent && rep.bounds_hold;
  return rep;
}

ModularConvergenceReport check_modular_convergence(
    const std::vector<ScalarField>& seq, const ScalarField& u,
    const ExponentField& p, double tol) {
  ModularConvergenceReport rep;
  rep.tol = tol;
  for (const ScalarField& un : seq) {
    check_same_grid(un, u);
    ScalarField diff = un;
    for (std::size_t i = 0; i < diff.values.size(); ++i)
      diff.values[i] -= u.values[i];
    rep.modulars.push_back(modular(diff, p));
    rep.norms.push_back(luxemburg_norm(diff, p));
  }
  rep.norms_vanish = !rep.norms.empty() && rep.norms.back() <= tol;
  rep.modulars_vanish = !rep.modulars.empty() && rep.modulars.back() <= tol;
  rep.equivalent = (rep.norms_vanish == rep.modulars_vanish);
  return rep;
}

}  // namespace vexlab
