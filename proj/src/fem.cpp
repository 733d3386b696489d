#include "awg/fem.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace awg {

namespace {

int checked_count(double length, double h, const char* what) {
  const double ratio = length / h;
  const int count = static_cast<int>(std::llround(ratio));
  if (count <= 0 || std::abs(ratio - count) > 1e-9 * std::max(1.0, std::abs(ratio)))
    throw std::invalid_argument(std::string("mesh: ") + what + "/h is not a positive integer");
  return count;
}

}  // namespace

int MeshSpec::elems_x() const { return checked_count(domain_width, h, "width"); }
int MeshSpec::elems_y() const { return checked_count(domain_height, h, "height"); }

CoefficientField CoefficientField::constant(double e, double nu) {
  CoefficientField c;
  c.nu = nu;
  c.e_hard = e;
  c.e_soft = e;
  return c;
}

CoefficientField CoefficientField::layered(double e_hard, double e_soft, double nu, int n_bands) {
  CoefficientField c;
  c.nu = nu;
  c.e_hard = e_hard;
  c.e_soft = e_soft;
  if (n_bands < 0 || n_bands > 3)
    throw std::invalid_argument("CoefficientField: supported band counts are 0..3");
  const double s = 1.0 / 7.0;
  if (n_bands >= 1) c.bands.emplace_back(1 * s, 2 * s);
  if (n_bands >= 2) c.bands.emplace_back(3 * s, 4 * s);
  if (n_bands >= 3) c.bands.emplace_back(5 * s, 6 * s);
  return c;
}

std::pair<double, double> coefficient_at(const CoefficientField& coeff, double /*x*/, double y) {
  const double frac = y - std::floor(y);
  for (const auto& [lo, hi] : coeff.bands)
    if (frac >= lo && frac <= hi) return {coeff.e_hard, coeff.nu};
  return {coeff.e_soft, coeff.nu};
}

DenseMatrix element_stiffness(double h, double e, double nu) {
  const double mu = e / (2.0 * (1.0 + nu));
  const double lame = e * nu / ((1.0 + nu) * (1.0 - 2.0 * nu));
  // Constitutive matrix on (eps_xx, eps_yy, gamma_xy).
  const double d00 = 2.0 * mu + lame;
  const double d01 = lame;
  const double d22 = mu;

  const double g = 1.0 / std::sqrt(3.0);
  const double gp[2] = {-g, g};
  const double detj = h * h / 4.0;
  const double dscale = 2.0 / h;  // d/dx = (2/h) d/dxi

  DenseMatrix ke(8, 8);
  for (int gx = 0; gx < 2; ++gx) {
    for (int gy = 0; gy < 2; ++gy) {
      const double xi = gp[gx], eta = gp[gy];
      // Nodes (0,0), (1,0), (1,1), (0,1) on the reference square [-1,1]^2.
      const double dndxi[4] = {-(1 - eta) / 4, (1 - eta) / 4, (1 + eta) / 4, -(1 + eta) / 4};
      const double dndeta[4] = {-(1 - xi) / 4, -(1 + xi) / 4, (1 + xi) / 4, (1 - xi) / 4};
      double dndx[4], dndy[4];
      for (int a = 0; a < 4; ++a) {
        dndx[a] = dndxi[a] * dscale;
        dndy[a] = dndeta[a] * dscale;
      }
      for (int a = 0; a < 4; ++a) {
        for (int b = 0; b < 4; ++b) {
          // (ux_a, ux_b), (ux_a, uy_b), (uy_a, ux_b), (uy_a, uy_b)
          const double kxx = d00 * dndx[a] * dndx[b] + d22 * dndy[a] * dndy[b];
          const double kxy = d01 * dndx[a] * dndy[b] + d22 * dndy[a] * dndx[b];
          const double kyx = d01 * dndy[a] * dndx[b] + d22 * dndx[a] * dndy[b];
          const double kyy = d00 * dndy[a] * dndy[b] + d22 * dndx[a] * dndx[b];
          ke(2 * a, 2 * b) += detj * kxx;
          ke(2 * a, 2 * b + 1) += detj * kxy;
          ke(2 * a + 1, 2 * b) += detj * kyx;
          ke(2 * a + 1, 2 * b + 1) += detj * kyy;
        }
      }
    }
  }
  // Mirror the upper triangle so both halves are bit-identical.
  for (int j = 0; j < 8; ++j)
    for (int i = 0; i < j; ++i) ke(j, i) = ke(i, j);
  return ke;
}

AssembledSystem assemble(const MeshSpec& mesh, const CoefficientField& coeff,
                         const std::array<double, 2>& load) {
  const int nex = mesh.elems_x();
  const int ney = mesh.elems_y();
  if (nex == 0 || ney == 0) throw std::invalid_argument("assemble: degenerate mesh");
  const int nnx = mesh.nodes_x();
  const int nny = mesh.nodes_y();

  AssembledSystem sys;
  sys.mesh = mesh;
  sys.node_dofs.assign(static_cast<std::size_t>(nnx) * nny, {-1, -1});
  int next_dof = 0;
  for (int iy = 0; iy < nny; ++iy)
    for (int ix = 0; ix < nnx; ++ix) {
      if (ix == 0) continue;  // Dirichlet: both components clamped on x = 0
      auto& d = sys.node_dofs[mesh.node_index(ix, iy)];
      d[0] = next_dof++;
      d[1] = next_dof++;
    }
  sys.n = next_dof;

  TripletBuilder builder(sys.n);
  sys.b.assign(sys.n, 0.0);

  const double g = 1.0 / std::sqrt(3.0);
  const double gp[2] = {-g, g};
  const double detj = mesh.h * mesh.h / 4.0;

  for (int ey = 0; ey < ney; ++ey) {
    for (int ex = 0; ex < nex; ++ex) {
      const double cx = (ex + 0.5) * mesh.h;
      const double cy = (ey + 0.5) * mesh.h;
      const auto [e_val, nu_val] = coefficient_at(coeff, cx, cy);
      const DenseMatrix ke = element_stiffness(mesh.h, e_val, nu_val);

      const int nodes[4] = {mesh.node_index(ex, ey), mesh.node_index(ex + 1, ey),
                            mesh.node_index(ex + 1, ey + 1), mesh.node_index(ex, ey + 1)};
      int dofs[8];
      for (int a = 0; a < 4; ++a) {
        dofs[2 * a] = sys.node_dofs[nodes[a]][0];
        dofs[2 * a + 1] = sys.node_dofs[nodes[a]][1];
      }
      for (int la = 0; la < 8; ++la) {
        if (dofs[la] < 0) continue;
        for (int lb = 0; lb < 8; ++lb) {
          if (dofs[lb] < 0) continue;
          builder.add(dofs[la], dofs[lb], ke(la, lb));
        }
      }
      // Body force: integral of N_a g over the element.
      for (int gx = 0; gx < 2; ++gx)
        for (int gy = 0; gy < 2; ++gy) {
          const double xi = gp[gx], eta = gp[gy];
          const double shape[4] = {(1 - xi) * (1 - eta) / 4, (1 + xi) * (1 - eta) / 4,
                                   (1 + xi) * (1 + eta) / 4, (1 - xi) * (1 + eta) / 4};
          for (int a = 0; a < 4; ++a)
            for (int d = 0; d < 2; ++d)
              if (dofs[2 * a + d] >= 0) sys.b[dofs[2 * a + d]] += detj * shape[a] * load[d];
        }
    }
  }
  sys.a = builder.build();
  return sys;
}

void export_system(const AssembledSystem& sys, const std::string& prefix) {
  write_matrix_market(sys.a, prefix + ".mtx");
  write_vector(sys.b, prefix + ".rhs");
  std::FILE* f = std::fopen((prefix + ".dofmap").c_str(), "w");
  if (!f) throw std::runtime_error("cannot open for writing: " + prefix + ".dofmap");
  const int nnx = sys.mesh.nodes_x();
  const int nny = sys.mesh.nodes_y();
  for (int iy = 0; iy < nny; ++iy)
    for (int ix = 0; ix < nnx; ++ix) {
      const int node = sys.mesh.node_index(ix, iy);
      std::fprintf(f, "%d %.17g %.17g %d %d\n", node, ix * sys.mesh.h, iy * sys.mesh.h,
                   sys.node_dofs[node][0], sys.node_dofs[node][1]);
    }
  std::fclose(f);
}

}  // namespace awg
