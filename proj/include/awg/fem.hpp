// Q1 finite-element discretization of 2D linear elasticity on uniform
// rectangular meshes: layered Young's modulus, left-edge Dirichlet condition
// eliminated by deletion.
#pragma once

#include <array>
#include <string>
#include <utility>
#include <vector>

#include "awg/sparse.hpp"

namespace awg {

struct MeshSpec {
  double domain_width = 0.0;
  double domain_height = 0.0;
  double h = 0.0;  // element size; width/h and height/h must be integers

  int elems_x() const;
  int elems_y() const;
  int nodes_x() const { return elems_x() + 1; }
  int nodes_y() const { return elems_y() + 1; }
  int node_index(int ix, int iy) const { return iy * nodes_x() + ix; }
};

// Young's modulus is e_hard on horizontal bands of the fractional part of y
// (band membership tested at the element centroid) and e_soft elsewhere.
// The band rule is stated on floor(y) - y, which is non-positive for y >= 0;
// the fractional part y - floor(y) is what produces the documented layer
// count (two bands per unit cell for the default six-layer distribution),
// so that is the quantity tested here.
struct CoefficientField {
  double nu = 0.3;
  double e_hard = 1e11;
  double e_soft = 1e7;
  std::vector<std::pair<double, double>> bands;  // [lo, hi] on y - floor(y)

  static CoefficientField constant(double e, double nu);
  // n_layers per unit cell: 1 -> [1/7,2/7]; 2 -> +[3/7,4/7]; 3 -> +[5/7,6/7]
  static CoefficientField layered(double e_hard, double e_soft, double nu, int n_bands = 2);
};

// (E, nu) at a point; the fractional-part band rule above.
std::pair<double, double> coefficient_at(const CoefficientField& coeff, double x, double y);

struct AssembledSystem {
  SparseSymMatrix a;
  std::vector<double> b;
  std::vector<std::array<int, 2>> node_dofs;  // per node (dof_x, dof_y), -1 if clamped
  int n = 0;                                  // free dof count
  MeshSpec mesh;
};

/// Stiffness of one unconstrained square element of size h: 8x8, dof order
/// (ux, uy) per node, nodes (0,0), (1,0), (1,1), (0,1). 2x2 Gauss quadrature
/// of 2 mu eps(u):eps(v) + L div(u) div(v) with mu = E/(2(1+nu)),
/// L = E nu/((1+nu)(1-2 nu)).
DenseMatrix element_stiffness(double h, double e, double nu);

/// Assemble the global system; both components of every node on the x = 0
/// edge are eliminated before storage. load is the body force density g.
AssembledSystem assemble(const MeshSpec& mesh, const CoefficientField& coeff,
                         const std::array<double, 2>& load = {0.0, -9.81});

// Matrix + rhs + dof-map sidecar (node index, x, y, dof ids) under a prefix.
void export_system(const AssembledSystem& sys, const std::string& prefix);

}  // namespace awg
