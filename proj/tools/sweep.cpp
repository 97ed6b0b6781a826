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

#include "sweep.hpp"

#include <charconv>
#include <stdexcept>

namespace qpsplit::cli {

namespace {

std::int64_t to_int(std::string_view s) {
  std::int64_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
    throw std::invalid_argument("not an integer: '" + std::string(s) + "'");
  }
  return v;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = s.find(sep, start);
    parts.push_back(s.substr(start, pos == std::string_view::npos ? pos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

}  // namespace

std::vector<std::int64_t> parse_int_list(std::string_view text) {
  std::vector<std::int64_t> out;
  for (std::string_view item : split(text, ',')) {
    const auto range = split(item, ':');
    if (range.size() == 1) {
      out.push_back(to_int(item));
      continue;
    }
    if (range.size() > 3) throw std::invalid_argument("bad range '" + std::string(item) + "'");
    const std::int64_t lo = to_int(range[0]);
    const std::int64_t hi = to_int(range[1]);
    const std::int64_t step = range.size() == 3 ? to_int(range[2]) : 1;
    if (step <= 0) throw std::invalid_argument("range step must be positive");
    for (std::int64_t v = lo; v < hi; v += step) out.push_back(v);
  }
  if (out.empty()) throw std::invalid_argument("empty list '" + std::string(text) + "'");
  return out;
}

std::vector<ProblemClass> parse_class_list(std::string_view text) {
  if (text == "all") return all_problem_classes();
  std::vector<ProblemClass> out;
  for (std::string_view name : split(text, ',')) {
    auto cls = problem_class_from_string(name);
    if (!cls) throw std::invalid_argument("unknown problem class '" + std::string(name) + "'");
    out.push_back(*cls);
  }
  return out;
}

std::string instance_name(const GenSpec& spec) {
  return std::string(to_string(spec.cls)) + "_d" + std::to_string(spec.dim) + "_s" +
         std::to_string(spec.seed);
}

}  // namespace qpsplit::cli
