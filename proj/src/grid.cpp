#include "vexlab/grid.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace vexlab {

std::array<int, 3> Grid::unpack(int id) const {
  std::array<int, 3> idx{0, 0, 0};
  idx[0] = id % n[0];
  id /= n[0];
  idx[1] = id % n[1];
  idx[2] = id / n[1];
  return idx;
}

int Grid::pack(int i0, int i1, int i2) const {
  return i0 + n[0] * (i1 + n[1] * i2);
}

std::array<double, 3> Grid::coord(int id) const {
  const auto idx = unpack(id);
  std::array<double, 3> x{0.0, 0.0, 0.0};
  for (int k = 0; k < dim; ++k) x[k] = lo[k] + idx[k] * h[k];
  return x;
}

double Grid::measure() const {
  double m = 1.0;
  for (int k = 0; k < dim; ++k) m *= hi[k] - lo[k];
  return m;
}

double VectorField::norm_at(int node) const {
  double s = 0.0;
  for (int k = 0; k < grid->dim; ++k) {
    const double c = comp(k, node);
    s += c * c;
  }
  return std::sqrt(s);
}

GridPtr build_grid(int dim, const std::vector<std::array<double, 2>>& extent,
                   const std::vector<int>& n) {
  if (dim < 1 || dim > 3)
    throw std::invalid_argument("build_grid: dim must be 1, 2 or 3, got " +
                                std::to_string(dim));
  if (static_cast<int>(extent.size()) < dim ||
      static_cast<int>(n.size()) < dim)
    throw std::invalid_argument("build_grid: extent/n shorter than dim");

  auto g = std::make_shared<Grid>();
  g->dim = dim;
  int total = 1;
  for (int k = 0; k < dim; ++k) {
    if (n[k] < 3)
      throw std::invalid_argument("build_grid: n[" + std::to_string(k) +
                                  "] < 3 leaves no interior");
    if (!(extent[k][0] < extent[k][1]))
      throw std::invalid_argument("build_grid: empty extent on axis " +
                                  std::to_string(k));
    g->lo[k] = extent[k][0];
    g->hi[k] = extent[k][1];
    g->n[k] = n[k];
    g->h[k] = (g->hi[k] - g->lo[k]) / (n[k] - 1);
    total *= n[k];
  }

  g->boundary.resize(total);
  g->quad_w.resize(total);
  for (int id = 0; id < total; ++id) {
    const auto idx = g->unpack(id);
    bool on_face = false;
    double w = 1.0;
    for (int k = 0; k < dim; ++k) {
      const bool edge = (idx[k] == 0 || idx[k] == g->n[k] - 1);
      on_face = on_face || edge;
      w *= g->h[k] * (edge ? 0.5 : 1.0);
    }
    g->boundary[id] = on_face ? 1 : 0;
    g->quad_w[id] = w;
    if (!on_face) g->interior.push_back(id);
  }
  return g;
}

ScalarField make_field(GridPtr g, double fill) {
  return ScalarField{g, std::vector<double>(g->node_count(), fill)};
}

ScalarField make_field(GridPtr g, std::vector<double> values) {
  if (static_cast<int>(values.size()) != g->node_count())
    throw std::invalid_argument("make_field: values length != node count");
  return ScalarField{g, std::move(values)};
}

void check_same_grid(const ScalarField& a, const ScalarField& b) {
  if (a.grid != b.grid)
    throw std::invalid_argument("fields live on different grids");
}

double integrate(const ScalarField& f) {
  const Grid& g = *f.grid;
  if (static_cast<int>(f.values.size()) != g.node_count())
    throw std::invalid_argument("integrate: malformed field length");
  double s = 0.0;
  for (int i = 0; i < g.node_count(); ++i) s += g.quad_w[i] * f.values[i];
  return s;
}

namespace {

// Enumerates the two-point stencil of the discrete d/dx_k at node id:
// calls emit(node, coeff) for each touched node.
template <class F>
void for_stencil(const Grid& g, int id, int axis, F&& emit) {
  const auto idx = g.unpack(id);
  const int stride = (axis == 0) ? 1 : (axis == 1 ? g.n[0] : g.n[0] * g.n[1]);
  const double h = g.h[axis];
  const int i = idx[axis];
  if (i == 0) {
    emit(id + stride, 1.0 / h);
    emit(id, -1.0 / h);
  } else if (i == g.n[axis] - 1) {
    emit(id, 1.0 / h);
    emit(id - stride, -1.0 / h);
  } else {
    emit(id + stride, 0.5 / h);
    emit(id - stride, -0.5 / h);
  }
}

}  // namespace

VectorField discrete_gradient(const ScalarField& u) {
  const Grid& g = *u.grid;
  if (static_cast<int>(u.values.size()) != g.node_count())
    throw std::invalid_argument("discrete_gradient: malformed field length");
  VectorField out{u.grid, std::vector<double>(
                              static_cast<std::size_t>(g.dim) * g.node_count(),
                              0.0)};
  for (int k = 0; k < g.dim; ++k) {
    for (int id = 0; id < g.node_count(); ++id) {
      double v = 0.0;
      for_stencil(g, id, k,
                  [&](int j, double c) { v += c * u.values[j]; });
      out.comp(k, id) = v;
    }
  }
  return out;
}

ScalarField gradient_adjoint(const VectorField& flux) {
  const Grid& g = *flux.grid;
  ScalarField out = make_field(flux.grid, 0.0);
  for (int k = 0; k < g.dim; ++k) {
    for (int id = 0; id < g.node_count(); ++id) {
      const double f = flux.comp(k, id);
      if (f == 0.0) continue;
      for_stencil(g, id, k,
                  [&](int j, double c) { out.values[j] += c * f; });
    }
  }
  return out;
}

void apply_dirichlet_mask(ScalarField& u) {
  const Grid& g = *u.grid;
  for (int i = 0; i < g.node_count(); ++i)
    if (g.boundary[i]) u.values[i] = 0.0;
}

bool in_dirichlet_class(const ScalarField& u) {
  const Grid& g = *u.grid;
  for (int i = 0; i < g.node_count(); ++i)
    if (g.boundary[i] && u.values[i] != 0.0) return false;
  return true;
}

void require_dirichlet(const ScalarField& u) {
  if (!in_dirichlet_class(u))
    throw std::invalid_argument(
        "field violates the Dirichlet boundary condition");
}

}  // namespace vexlab
