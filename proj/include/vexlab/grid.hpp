#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <vector>

namespace vexlab {

/// Uniform tensor-product grid over a box in R^N (N = 1, 2, 3) with
/// Dirichlet boundary flags and composite-trapezoid quadrature weights.
/// Node ids are lexicographic with axis 0 fastest.
struct Grid {
  int dim = 0;
  std::array<double, 3> lo{};
  std::array<double, 3> hi{};
  std::array<int, 3> n{1, 1, 1};
  std::array<double, 3> h{};
  std::vector<std::uint8_t> boundary;  // 1 on the outer faces of the box
  std::vector<double> quad_w;          // tensor-product trapezoid weights
  std::vector<int> interior;           // ids of non-boundary nodes

  int node_count() const { return static_cast<int>(quad_w.size()); }
  int interior_count() const { return static_cast<int>(interior.size()); }

  std::array<int, 3> unpack(int id) const;
  int pack(int i0, int i1, int i2) const;
  std::array<double, 3> coord(int id) const;

  /// Box measure |Omega|.
  double measure() const;
};

using GridPtr = std::shared_ptr<const Grid>;

/// Nodal samples of a scalar function on a grid.
struct ScalarField {
  GridPtr grid;
  std::vector<double> values;
};

/// Nodal samples of a vector function; axis-major layout,
/// comps[axis * node_count + node].
struct VectorField {
  GridPtr grid;
  std::vector<double> comps;

  double comp(int axis, int node) const {
    return comps[static_cast<std::size_t>(axis) * grid->node_count() + node];
  }
  double& comp(int axis, int node) {
    return comps[static_cast<std::size_t>(axis) * grid->node_count() + node];
  }
  /// Euclidean length of the vector at a node.
  double norm_at(int node) const;
};

/// Builds a grid over the box prod_k [extent[k][0], extent[k][1]] with n[k]
/// nodes per axis. Requires dim in {1,2,3}, n[k] >= 3 (nonempty interior)
/// and extent[k][0] < extent[k][1].
GridPtr build_grid(int dim, const std::vector<std::array<double, 2>>& extent,
                   const std::vector<int>& n);

ScalarField make_field(GridPtr g, double fill = 0.0);
ScalarField make_field(GridPtr g, std::vector<double> values);

/// Throws std::invalid_argument unless both fields live on the same grid.
void check_same_grid(const ScalarField& a, const ScalarField& b);

/// Composite trapezoidal quadrature of f over the box.
double integrate(const ScalarField& f);

/// Central differences at nodes interior along an axis, one-sided two-point
/// differences on the faces. Exact for affine fields.
VectorField discrete_gradient(const ScalarField& u);

/// Adjoint of the discrete gradient: (G^T F)_j = sum_{i,k} dG_k(u)_i/du_j F_k,i.
ScalarField gradient_adjoint(const VectorField& flux);

/// Zeroes the boundary nodes in place.
void apply_dirichlet_mask(ScalarField& u);

/// True iff u vanishes exactly on every boundary node.
bool in_dirichlet_class(const ScalarField& u);

/// Throws std::invalid_argument when u carries nonzero boundary values.
void require_dirichlet(const ScalarField& u);

}  // namespace vexlab
