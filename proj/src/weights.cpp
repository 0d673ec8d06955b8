#include "vexlab/weights.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace vexlab {

namespace {

double dist_to(const Grid& g, int node, const std::array<double, 3>& x0) {
  const auto x = g.coord(node);
  double s = 0.0;
  for (int k = 0; k < g.dim; ++k) {
    const double d = x[k] - x0[k];
    s += d * d;
  }
  return std::sqrt(s);
}

}  // namespace

SingularSpec make_singular_spec(const Grid& g, std::array<double, 3> x0,
                                double r, double s) {
  if (!(s > 1.0))
    throw std::invalid_argument("singular spec requires s > 1");
  if (!(r > 0.0))
    throw std::invalid_argument("singular spec requires r > 0");
  for (int k = 0; k < g.dim; ++k) {
    if (x0[k] - r < g.lo[k] || x0[k] + r > g.hi[k])
      throw std::invalid_argument(
          "singular spec: ball B(x0, r) leaves the domain on axis " +
          std::to_string(k));
  }
  return SingularSpec{x0, r, s};
}

WeightFields build_weights(const ScalarField& a, const VectorField& grad_a,
                           const ExponentField& p, const VectorField& grad_p) {
  check_same_grid(a, ScalarField{p.grid, {}});
  if (grad_a.grid != a.grid || grad_p.grid != a.grid)
    throw std::invalid_argument("build_weights: grid mismatch");
  const Grid& g = *a.grid;

  WeightFields w{make_field(a.grid), make_field(a.grid), make_field(a.grid),
                 make_field(a.grid)};
  for (int i = 0; i < g.node_count(); ++i) {
    const double av = std::fabs(a.values[i]);
    const double pv = p.values[i];
    const double ga = grad_a.norm_at(i);
    const double gp = grad_p.norm_at(i);
    // |a|^{p-1} with a = 0 extends continuously to 0 (p > 1).
    const double ap1 = (av == 0.0) ? 0.0 : std::pow(av, pv - 1.0);
    const double ap = (av == 0.0) ? 0.0 : std::pow(av, pv);
    w.A.values[i] = ap1 * ga;
    w.B.values[i] = ap;
    w.C.values[i] = ap1 * gp;
    w.D.values[i] = ap * gp;
  }
  return w;
}

WeightAReport validate_A(const ScalarField& a, const VectorField& grad_a,
                         const SingularSpec& spec) {
  const Grid& g = *a.grid;
  if (grad_a.grid != a.grid)
    throw std::invalid_argument("validate_A: grid mismatch");

  WeightAReport rep;
  double best = std::numeric_limits<double>::infinity();
  for (int i = 0; i < g.node_count(); ++i) {
    const double d = dist_to(g, i, spec.x0);
    if (d < best) {
      best = d;
      rep.center_node = i;
    }
  }
  for (int i = 0; i < g.node_count(); ++i) {
    for (int k = 0; k < g.dim; ++k)
      if (!std::isfinite(grad_a.comp(k, i))) rep.grad_finite = false;
    const double av = std::fabs(a.values[i]);
    if (i != rep.center_node && av == 0.0)
      rep.nonvanishing_violations.push_back(i);
    const double d = dist_to(g, i, spec.x0);
    if (d <= spec.r && av < std::pow(d, spec.s) * (1.0 - 1e-12))
      rep.ball_violations.push_back(i);
  }
  rep.pass = rep.grad_finite && rep.nonvanishing_violations.empty() &&
             rep.ball_violations.empty();
  return rep;
}

ExponentPReport validate_P(const ExponentField& p, int dim, Mode mode) {
  ExponentPReport rep;
  rep.mode = mode;
  rep.window_nonempty = dim > 2;
  for (std::size_t i = 0; i < p.values.size(); ++i) {
    const double v = p.values[i];
    const bool ok = (mode == Mode::kStrict) ? (v > 2.0 && v < double(dim))
                                            : (v > 2.0);
    if (!ok) rep.violations.push_back(static_cast<int>(i));
  }
  rep.pass = rep.violations.empty();
  return rep;
}

ExponentQReport validate_Q(const ExponentField& q, const ExponentField& p,
                           const SingularSpec& spec, int dim) {
  ExponentQReport rep;
  double min_p_minus_1 = std::numeric_limits<double>::infinity();
  for (double v : p.values) min_p_minus_1 = std::min(min_p_minus_1, v - 1.0);
  const double upper =
      dim * p.p_minus / (dim + spec.s * p.p_plus);

  const auto push = [&](const std::string& name, double lhs, double rhs) {
    rep.checks.push_back({name, lhs, rhs, lhs < rhs});
  };
  push("1 < q^-", 1.0, q.p_minus);
  push("q^- < min(p-1)", q.p_minus, min_p_minus_1);
  push("min(p-1) < q^+", min_p_minus_1, q.p_plus);
  push("q^+ < N p^-/(N + s p^+)", q.p_plus, upper);
  rep.checks.push_back(
      {"p^- > 1 + s", p.p_minus, 1.0 + spec.s, p.p_minus > 1.0 + spec.s});

  rep.pass_chain = rep.checks[0].pass && rep.checks[1].pass &&
                   rep.checks[2].pass && rep.checks[3].pass;
  rep.pass_embedding = rep.checks[4].pass;
  rep.pass = rep.pass_chain && rep.pass_embedding;
  rep.pass_solve_essential = rep.checks[0].pass && rep.checks[1].pass;
  return rep;
}

}  // namespace vexlab
