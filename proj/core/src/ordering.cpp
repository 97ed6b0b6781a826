// Copyright 2026 The qpsplit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qpsplit/ordering.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <utility>

namespace qpsplit {

std::vector<Index> natural_order(Index n) {
  std::vector<Index> perm(n);
  std::iota(perm.begin(), perm.end(), Index{0});
  return perm;
}

std::vector<Index> invert_permutation(const std::vector<Index>& perm) {
  std::vector<Index> iperm(perm.size());
  for (size_t k = 0; k < perm.size(); ++k) iperm[perm[k]] = static_cast<Index>(k);
  return iperm;
}

std::vector<Index> amd_order(const CscMatrix& pattern) {
  if (pattern.nrows != pattern.ncols) {
    throw DimensionError("ordering needs a square pattern");
  }
  const Index n = pattern.ncols;

  // Variable-variable adjacency A_i, variable-element adjacency E_i and the
  // variable lists L_e of eliminated nodes (elements).
  std::vector<std::vector<Index>> adj_vars(n);
  std::vector<std::vector<Index>> adj_elems(n);
  std::vector<std::vector<Index>> elem_vars(n);
  for (Index j = 0; j < n; ++j) {
    for (Index p = pattern.colptr[j]; p < pattern.colptr[j + 1]; ++p) {
      const Index i = pattern.rowind[p];
      if (i == j) continue;
      adj_vars[i].push_back(j);
      adj_vars[j].push_back(i);
    }
  }
  for (auto& a : adj_vars) {
    std::sort(a.begin(), a.end());
    a.erase(std::unique(a.begin(), a.end()), a.end());
  }

  std::vector<Index> degree(n);
  std::set<std::pair<Index, Index>> queue;
  for (Index i = 0; i < n; ++i) {
    degree[i] = static_cast<Index>(adj_vars[i].size());
    queue.emplace(degree[i], i);
  }

  std::vector<char> eliminated(n, 0);
  std::vector<char> absorbed(n, 0);
  std::vector<Index> in_pivot(n, -1);    // stamp: member of current L_p
  std::vector<Index> weight_stamp(n, -1);
  std::vector<Index> weight(n, 0);       // |L_e \ L_p|
  std::vector<Index> perm;
  perm.reserve(n);

  for (Index k = 0; k < n; ++k) {
    const Index p = queue.begin()->second;
    queue.erase(queue.begin());
    perm.push_back(p);
    eliminated[p] = 1;

    // L_p = (A_p U (union of L_e over e in E_p)) \ {p}
    std::vector<Index> pivot_vars;
    in_pivot[p] = k;
    for (Index v : adj_vars[p]) {
      if (!eliminated[v] && in_pivot[v] != k) {
        in_pivot[v] = k;
        pivot_vars.push_back(v);
      }
    }
    for (Index e : adj_elems[p]) {
      for (Index v : elem_vars[e]) {
        if (!eliminated[v] && in_pivot[v] != k) {
          in_pivot[v] = k;
          pivot_vars.push_back(v);
        }
      }
      absorbed[e] = 1;
      elem_vars[e].clear();
      elem_vars[e].shrink_to_fit();
    }
    adj_vars[p].clear();
    adj_elems[p].clear();

    for (Index i : pivot_vars) {
      auto& elems = adj_elems[i];
      std::erase_if(elems, [&](Index e) { return absorbed[e] != 0; });
      elems.push_back(p);
      std::erase_if(adj_vars[i], [&](Index v) {
        return eliminated[v] || in_pivot[v] == k;
      });
    }

    for (Index i : pivot_vars) {
      for (Index e : adj_elems[i]) {
        if (e == p) continue;
        if (weight_stamp[e] != k) {
          weight_stamp[e] = k;
          weight[e] = static_cast<Index>(elem_vars[e].size());
        }
        --weight[e];
      }
    }

    const Index pivot_size = static_cast<Index>(pivot_vars.size());
    const Index remaining = n - k - 1;
    for (Index i : pivot_vars) {
      Index bound = static_cast<Index>(adj_vars[i].size()) + pivot_size - 1;
      for (Index e : adj_elems[i]) {
        if (e != p) bound += weight[e];
      }
      const Index d = std::min({remaining - 1, degree[i] + pivot_size - 1,
                                bound});
      queue.erase({degree[i], i});
      degree[i] = std::max<Index>(d, 0);
      queue.emplace(degree[i], i);
    }
    elem_vars[p] = std::move(pivot_vars);
  }
  return perm;
}

}  // namespace qpsplit
