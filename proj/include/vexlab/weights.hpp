#pragma once

#include <array>
#include <string>
#include <vector>

#include "vexlab/grid.hpp"
#include "vexlab/spaces.hpp"

namespace vexlab {

/// Location and strength of the admissible degeneracy of a(x):
/// |a| >= |x - x0|^s on the ball B(x0, r).
struct SingularSpec {
  std::array<double, 3> x0{};
  double r = 0.0;
  double s = 0.0;
};

/// Validates B(x0, r) inside the box and s > 1.
SingularSpec make_singular_spec(const Grid& g, std::array<double, 3> x0,
                                double r, double s);

/// The four coefficient fields of the weighted norm and of the functional:
/// A = |a|^{p-1}|grad a|, B = |a|^p, C = |a|^{p-1}|grad p|, D = B|grad p|.
struct WeightFields {
  ScalarField A, B, C, D;
};

WeightFields build_weights(const ScalarField& a, const VectorField& grad_a,
                           const ExponentField& p, const VectorField& grad_p);

/// One comparison of a hypothesis chain, with the two numbers compared.
struct HypothesisCheck {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  bool pass = false;
};

struct WeightAReport {
  bool pass = false;
  bool grad_finite = true;
  int center_node = -1;                    // node nearest x0, exempt from (1)
  std::vector<int> nonvanishing_violations;  // |a| = 0 away from x0
  std::vector<int> ball_violations;          // |a| < |x-x0|^s inside B(x0,r)
};

/// Checks the degeneracy hypothesis on a: nonvanishing away from x0 and the
/// lower bound |a| >= |x-x0|^s on the ball.
WeightAReport validate_A(const ScalarField& a, const VectorField& grad_a,
                         const SingularSpec& spec);

enum class Mode { kStrict, kRelaxed };

struct ExponentPReport {
  Mode mode = Mode::kStrict;
  bool pass = false;
  bool window_nonempty = true;  // false when 2 < p < N is infeasible (N <= 2)
  std::vector<int> violations;
};

/// strict: 2 < p(x) < N nodewise; relaxed: p(x) > 2 only.
ExponentPReport validate_P(const ExponentField& p, int dim, Mode mode);

struct ExponentQReport {
  std::vector<HypothesisCheck> checks;  // the chain plus the embedding side condition
  bool pass_chain = false;              // full chain
  bool pass_embedding = false;          // p^- > 1 + s
  bool pass = false;                    // everything
  // subset sufficient for the discrete solve certificates:
  // q^- > 1 and q^- < min(p) - 1
  bool pass_solve_essential = false;
};

/// Checks 1 < q^- < min(p(x)-1) < q^+ < N p^- / (N + s p^+) and the
/// embedding side condition p^- > 1 + s, reporting each comparison.
ExponentQReport validate_Q(const ExponentField& q, const ExponentField& p,
                           const SingularSpec& spec, int dim);

}  // namespace vexlab
