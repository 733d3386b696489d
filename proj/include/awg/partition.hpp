// Overlapping subdomain index sets, partition-of-unity weights, minimal
// overlap validation and the subdomain interaction coloring.
#pragma once

#include <string>
#include <utility>
#include <vector>

#include "awg/fem.hpp"
#include "awg/sparse.hpp"

namespace awg {

struct Partition {
  // omega[s]: sorted, duplicate-free global dof indices of subdomain s. The
  // restriction R^s selects exactly these rows.
  std::vector<std::vector<int>> omega;
  int n = 0;  // global dimension

  int count() const { return static_cast<int>(omega.size()); }
  int size_of(int s) const { return static_cast<int>(omega[s].size()); }
};

struct PartitionOfUnity {
  std::vector<int> multiplicity;        // per global dof
  std::vector<std::vector<double>> ds;  // per subdomain, 1/multiplicity on omega[s]
};

/// Subdomains as closed node rectangles of a sub_w x sub_h grid of the mesh;
/// interface nodes belong to every touching subdomain.
Partition grid_partition(const AssembledSystem& sys, int sub_w, int sub_h);

/// Greedy BFS partition of the adjacency graph of `a` into n_parts disjoint
/// parts, each then expanded by its one-ring so the minimal overlap
/// condition holds. No balance guarantees.
Partition auto_partition(const SparseSymMatrix& a, int n_parts);

PartitionOfUnity build_pou(const Partition& p);  // throws on uncovered dof

/// Pairs (i,j) with a stored entry of A but no subdomain containing both.
std::vector<std::pair<int, int>> check_minimal_overlap(const SparseSymMatrix& a,
                                                       const Partition& p);

struct Coloring {
  int n_colors = 0;
  std::vector<int> color;  // per subdomain
};

/// Greedy coloring of the subdomain interaction graph of `a` (s and t
/// interact when some stored entry couples omega[s] to omega[t]); an upper
/// bound on the true coloring constant.
Coloring coloring_constant(const SparseSymMatrix& a, const Partition& p);

/// Same, for A+ = A + A-: the low-rank A- blocks additionally couple any two
/// subdomains that both touch a subdomain with negative modes.
Coloring coloring_constant_aplus(const SparseSymMatrix& a, const Partition& p,
                                 const std::vector<char>& has_negative_modes);

// Text format: line s lists the 0-based global indices of omega[s].
void write_partition(const Partition& p, const std::string& path);
Partition read_partition(const std::string& path, int n);

}  // namespace awg
