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

#ifndef QPSPLIT_TOOLS_SWEEP_HPP
#define QPSPLIT_TOOLS_SWEEP_HPP

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "qpsplit/probgen.hpp"

namespace qpsplit::cli {

/// Parses "7", "1,2,5" or "a:b[:step]" (end exclusive), or a mix such as
/// "1,4:8". Throws std::invalid_argument on malformed input.
std::vector<std::int64_t> parse_int_list(std::string_view text);

/// "all" or a comma-separated list of class names.
std::vector<ProblemClass> parse_class_list(std::string_view text);

std::string instance_name(const GenSpec& spec);

}  // namespace qpsplit::cli

#endif  // QPSPLIT_TOOLS_SWEEP_HPP
