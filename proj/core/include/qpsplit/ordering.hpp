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

#ifndef QPSPLIT_ORDERING_HPP
#define QPSPLIT_ORDERING_HPP

#include <vector>

#include "qpsplit/sparse.hpp"

namespace qpsplit {

enum class Ordering { kNatural, kAmd };

/// Fill-reducing ordering of a symmetric matrix given by its upper (or
/// full) pattern. Returns perm with perm[k] = original index of pivot k.
///
/// Minimum degree on a quotient graph with the Amestoy-Davis-Duff
/// approximate external degree. Values are never read.
std::vector<Index> amd_order(const CscMatrix& pattern);

std::vector<Index> natural_order(Index n);

std::vector<Index> invert_permutation(const std::vector<Index>& perm);

}  // namespace qpsplit

#endif  // QPSPLIT_ORDERING_HPP
