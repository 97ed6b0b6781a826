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

#ifndef QPSPLIT_QPIO_HPP
#define QPSPLIT_QPIO_HPP

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "qpsplit/probgen.hpp"
#include "qpsplit/problem.hpp"
#include "qpsplit/solver.hpp"

namespace qpsplit {

inline constexpr int kQpFormatVersion = 1;

/// Malformed file, unsupported version or violated invariant.
class QpFormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct QpMetadata {
  std::string cls;
  std::optional<Index> dim;
  std::optional<std::uint64_t> seed;
  std::string name;
  GenOptions options;

  friend bool operator==(const QpMetadata&, const QpMetadata&) = default;
};

QpMetadata metadata_for(const GenSpec& spec, std::string name = {});
/// Reconstructs the generator spec recorded in the metadata, if complete.
std::optional<GenSpec> spec_from_metadata(const QpMetadata& meta);

struct QpFile {
  ProblemData problem;
  std::optional<QpMetadata> metadata;
};

/// JSON text with a fixed key order. Real values are hex-float strings;
/// infinite bounds are written as +-1e30.
std::string qp_to_json(const ProblemData& problem,
                       const std::optional<QpMetadata>& metadata = std::nullopt);
QpFile qp_from_json(std::string_view text);

void write_qp(const ProblemData& problem, const std::filesystem::path& path,
              const std::optional<QpMetadata>& metadata = std::nullopt);
QpFile read_qp_file(const std::filesystem::path& path);
ProblemData read_qp(const std::filesystem::path& path);

/// Lossless text form of a double ("%a"); parse_real also accepts decimal.
std::string format_real(double v);
double parse_real(std::string_view text);

std::string result_to_json(const SolveResult& result);
SolveResult result_from_json(std::string_view text);
void write_result(const SolveResult& result, const std::filesystem::path& path);
SolveResult read_result(const std::filesystem::path& path);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view text);

}  // namespace qpsplit

#endif  // QPSPLIT_QPIO_HPP
