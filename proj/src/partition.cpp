#include "awg/partition.hpp"

#include <algorithm>
#include <cstdio>
#include <deque>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace awg {

Partition grid_partition(const AssembledSystem& sys, int sub_w, int sub_h) {
  const int nex = sys.mesh.elems_x();
  const int ney = sys.mesh.elems_y();
  if (sub_w <= 0 || sub_h <= 0 || nex % sub_w != 0 || ney % sub_h != 0)
    throw std::invalid_argument("grid_partition: subdomain grid does not divide the mesh");
  const int ew = nex / sub_w;  // elements per subdomain in x
  const int eh = ney / sub_h;

  Partition p;
  p.n = sys.n;
  for (int sy = 0; sy < sub_h; ++sy) {
    for (int sx = 0; sx < sub_w; ++sx) {
      std::vector<int> dofs;
      // Closed node rectangle: interface nodes are owned by every neighbor.
      for (int iy = sy * eh; iy <= (sy + 1) * eh; ++iy)
        for (int ix = sx * ew; ix <= (sx + 1) * ew; ++ix) {
          const auto& d = sys.node_dofs[sys.mesh.node_index(ix, iy)];
          if (d[0] >= 0) {
            dofs.push_back(d[0]);
            dofs.push_back(d[1]);
          }
        }
      std::sort(dofs.begin(), dofs.end());
      if (dofs.empty()) throw std::runtime_error("grid_partition: empty subdomain");
      p.omega.push_back(std::move(dofs));
    }
  }
  return p;
}

Partition auto_partition(const SparseSymMatrix& a, int n_parts) {
  if (n_parts <= 0 || n_parts > a.n)
    throw std::invalid_argument("auto_partition: bad part count");
  const int n = a.n;
  std::vector<int> part(n, -1);
  const int target = (n + n_parts - 1) / n_parts;

  int next_seed = 0;
  for (int s = 0; s < n_parts; ++s) {
    while (next_seed < n && part[next_seed] >= 0) ++next_seed;
    if (next_seed >= n) break;
    std::deque<int> queue{next_seed};
    part[next_seed] = s;
    int grown = 1;
    const int cap = (s == n_parts - 1) ? n : target;
    while (!queue.empty() && grown < cap) {
      const int i = queue.front();
      queue.pop_front();
      for (int k = a.row_offsets[i]; k < a.row_offsets[i + 1] && grown < cap; ++k) {
        const int j = a.col_indices[k];
        if (part[j] < 0) {
          part[j] = s;
          queue.push_back(j);
          ++grown;
        }
      }
    }
  }
  // Sweep up anything unreached (disconnected graph): append to last part.
  for (int i = 0; i < n; ++i)
    if (part[i] < 0) part[i] = n_parts - 1;

  Partition p;
  p.n = n;
  p.omega.assign(n_parts, {});
  std::vector<std::vector<char>> member(n_parts, std::vector<char>(n, 0));
  for (int i = 0; i < n; ++i) member[part[i]][i] = 1;
  // One-ring closure: every stored coupling of a part member joins the part,
  // which guarantees minimal overlap.
  for (int s = 0; s < n_parts; ++s) {
    std::vector<char> grown = member[s];
    for (int i = 0; i < n; ++i) {
      if (!member[s][i]) continue;
      for (int k = a.row_offsets[i]; k < a.row_offsets[i + 1]; ++k) grown[a.col_indices[k]] = 1;
    }
    for (int i = 0; i < n; ++i)
      if (grown[i]) p.omega[s].push_back(i);
    if (p.omega[s].empty()) throw std::runtime_error("auto_partition: empty part");
  }
  return p;
}

PartitionOfUnity build_pou(const Partition& p) {
  PartitionOfUnity pou;
  pou.multiplicity.assign(p.n, 0);
  for (const auto& om : p.omega)
    for (int i : om) ++pou.multiplicity[i];
  for (int i = 0; i < p.n; ++i)
    if (pou.multiplicity[i] == 0)
      throw std::runtime_error("partition does not cover dof " + std::to_string(i));
  pou.ds.resize(p.count());
  for (int s = 0; s < p.count(); ++s) {
    pou.ds[s].resize(p.size_of(s));
    for (int k = 0; k < p.size_of(s); ++k) pou.ds[s][k] = 1.0 / pou.multiplicity[p.omega[s][k]];
  }
  return pou;
}

namespace {

// Per-dof membership lists (dof -> subdomains containing it).
std::vector<std::vector<int>> memberships(const Partition& p) {
  std::vector<std::vector<int>> subs(p.n);
  for (int s = 0; s < p.count(); ++s)
    for (int i : p.omega[s]) subs[i].push_back(s);
  return subs;
}

Coloring greedy_color(int n_sub, const std::vector<std::vector<char>>& interacts) {
  Coloring c;
  c.color.assign(n_sub, -1);
  for (int s = 0; s < n_sub; ++s) {
    std::vector<char> used(n_sub, 0);
    for (int t = 0; t < s; ++t)
      if (interacts[s][t]) used[c.color[t]] = 1;
    int col = 0;
    while (used[col]) ++col;
    c.color[s] = col;
    c.n_colors = std::max(c.n_colors, col + 1);
  }
  return c;
}

}  // namespace

std::vector<std::pair<int, int>> check_minimal_overlap(const SparseSymMatrix& a,
                                                       const Partition& p) {
  const auto subs = memberships(p);
  std::vector<std::pair<int, int>> violations;
  for (int i = 0; i < a.n; ++i) {
    for (int k = a.row_offsets[i]; k < a.row_offsets[i + 1]; ++k) {
      const int j = a.col_indices[k];
      if (j < i) continue;  // pairs reported once
      bool covered = false;
      for (int s : subs[i]) {
        if (std::binary_search(p.omega[s].begin(), p.omega[s].end(), j)) {
          covered = true;
          break;
        }
      }
      if (!covered) violations.emplace_back(i, j);
    }
  }
  return violations;
}

Coloring coloring_constant(const SparseSymMatrix& a, const Partition& p) {
  const int ns = p.count();
  const auto subs = memberships(p);
  std::vector<std::vector<char>> interacts(ns, std::vector<char>(ns, 0));
  for (int i = 0; i < a.n; ++i)
    for (int k = a.row_offsets[i]; k < a.row_offsets[i + 1]; ++k) {
      const int j = a.col_indices[k];
      for (int s : subs[i])
        for (int t : subs[j])
          if (s != t) interacts[s][t] = interacts[t][s] = 1;
    }
  return greedy_color(ns, interacts);
}

Coloring coloring_constant_aplus(const SparseSymMatrix& a, const Partition& p,
                                 const std::vector<char>& has_negative_modes) {
  const int ns = p.count();
  const auto subs = memberships(p);
  std::vector<std::vector<char>> interacts(ns, std::vector<char>(ns, 0));
  for (int i = 0; i < a.n; ++i)
    for (int k = a.row_offsets[i]; k < a.row_offsets[i + 1]; ++k) {
      const int j = a.col_indices[k];
      for (int s : subs[i])
        for (int t : subs[j])
          if (s != t) interacts[s][t] = interacts[t][s] = 1;
    }
  // A- term: the dense block of subdomain u couples every pair of
  // subdomains overlapping u, provided u carries negative modes.
  std::vector<std::vector<char>> touches(ns, std::vector<char>(ns, 0));
  for (int i = 0; i < p.n; ++i)
    for (int s : subs[i])
      for (int t : subs[i]) touches[s][t] = 1;
  for (int u = 0; u < ns; ++u) {
    if (!has_negative_modes[u]) continue;
    for (int s = 0; s < ns; ++s) {
      if (!touches[u][s]) continue;
      for (int t = 0; t < ns; ++t)
        if (touches[u][t] && s != t) interacts[s][t] = interacts[t][s] = 1;
    }
  }
  return greedy_color(ns, interacts);
}

void write_partition(const Partition& p, const std::string& path) {
  std::FILE* f = std::fopen(path.c_str(), "w");
  if (!f) throw std::runtime_error("cannot open for writing: " + path);
  for (const auto& om : p.omega) {
    for (std::size_t k = 0; k < om.size(); ++k)
      std::fprintf(f, k ? " %d" : "%d", om[k]);
    std::fprintf(f, "\n");
  }
  std::fclose(f);
}

Partition read_partition(const std::string& path, int n) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open: " + path);
  Partition p;
  p.n = n;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream s(line);
    std::vector<int> dofs;
    int v = 0;
    while (s >> v) {
      if (v < 0 || v >= n) throw std::runtime_error("partition index out of range: " + path);
      dofs.push_back(v);
    }
    std::sort(dofs.begin(), dofs.end());
    dofs.erase(std::unique(dofs.begin(), dofs.end()), dofs.end());
    if (!dofs.empty()) p.omega.push_back(std::move(dofs));
  }
  if (p.omega.empty()) throw std::runtime_error("empty partition file: " + path);
  return p;
}

}  // namespace awg
