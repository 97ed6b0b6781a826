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

#include "qpsplit/qpio.hpp"

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace qpsplit {

namespace {

using Json = nlohmann::ordered_json;

[[noreturn]] void fail(const std::string& what) { throw QpFormatError(what); }

const Json& field(const Json& obj, const char* key, const std::string& where) {
  if (!obj.is_object()) fail(where + ": expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) fail(where + ": missing field '" + key + "'");
  return *it;
}

double real_of(const Json& v, const std::string& where) {
  if (v.is_number()) return v.get<double>();
  if (v.is_string()) {
    try {
      return parse_real(v.get_ref<const std::string&>());
    } catch (const QpFormatError& e) {
      fail(where + ": " + e.what());
    }
  }
  fail(where + ": expected a real number");
}

Index index_of(const Json& v, const std::string& where) {
  if (!v.is_number_integer()) fail(where + ": expected an integer");
  return v.get<Index>();
}

Json real_array(std::span<const double> values, bool bounds = false) {
  Json arr = Json::array();
  for (double v : values) {
    if (bounds && std::isinf(v)) v = v > 0 ? kInfinityThreshold : -kInfinityThreshold;
    arr.push_back(format_real(v));
  }
  return arr;
}

Vector read_real_array(const Json& arr, const std::string& where, Index expected) {
  if (!arr.is_array()) fail(where + ": expected an array");
  if (expected >= 0 && static_cast<Index>(arr.size()) != expected) {
    fail(where + ": expected " + std::to_string(expected) + " entries, found " +
         std::to_string(arr.size()));
  }
  Vector out;
  out.reserve(arr.size());
  for (std::size_t k = 0; k < arr.size(); ++k) {
    out.push_back(real_of(arr[k], where + "[" + std::to_string(k) + "]"));
  }
  return out;
}

Json triplet_object(const CscMatrix& m) {
  const Triplets t = to_triplets(m);
  Json obj = Json::object();
  obj["rows"] = t.rows;
  obj["cols"] = t.cols;
  obj["vals"] = real_array(t.vals);
  return obj;
}

CscMatrix read_triplets(const Json& obj, const std::string& name, Index nrows, Index ncols,
                        bool upper) {
  const Json& rows = field(obj, "rows", name);
  const Json& cols = field(obj, "cols", name);
  if (!rows.is_array() || !cols.is_array()) fail(name + ": rows and cols must be arrays");
  const Vector vals = read_real_array(field(obj, "vals", name), name + ".vals", -1);
  if (rows.size() != vals.size() || cols.size() != vals.size()) {
    fail(name + ": rows, cols and vals differ in length");
  }
  Triplets t;
  for (std::size_t k = 0; k < vals.size(); ++k) {
    const std::string where = name + " entry " + std::to_string(k);
    const Index r = index_of(rows[k], where + " row");
    const Index c = index_of(cols[k], where + " col");
    if (r < 0 || r >= nrows || c < 0 || c >= ncols) {
      fail(where + ": index (" + std::to_string(r) + ", " + std::to_string(c) +
           ") out of range");
    }
    if (upper && r > c) {
      fail(where + ": (" + std::to_string(r) + ", " + std::to_string(c) +
           ") lies below the diagonal");
    }
    if (!std::isfinite(vals[k])) fail(where + ": value is not finite");
    t.rows.push_back(r);
    t.cols.push_back(c);
    t.vals.push_back(vals[k]);
  }
  return csc_from_triplets(t.rows, t.cols, t.vals, nrows, ncols);
}

Json metadata_json(const QpMetadata& meta) {
  Json obj = Json::object();
  obj["class"] = meta.cls;
  if (meta.dim) obj["dim"] = *meta.dim;
  if (meta.seed) obj["seed"] = *meta.seed;
  obj["name"] = meta.name;
  const GenOptions& o = meta.options;
  Json opts = Json::object();
  if (o.rows) opts["rows"] = *o.rows;
  if (o.horizon) opts["horizon"] = *o.horizon;
  if (o.assets) opts["assets"] = *o.assets;
  if (o.lambda) opts["lambda"] = format_real(*o.lambda);
  if (!o.noise) opts["noise"] = false;
  if (!opts.empty()) obj["options"] = std::move(opts);
  return obj;
}

QpMetadata read_metadata(const Json& obj) {
  if (!obj.is_object()) fail("metadata: expected an object");
  QpMetadata meta;
  auto str = [&](const char* key) -> std::string {
    auto it = obj.find(key);
    if (it == obj.end()) return {};
    if (!it->is_string()) fail(std::string("metadata.") + key + ": expected a string");
    return it->get<std::string>();
  };
  meta.cls = str("class");
  meta.name = str("name");
  if (auto it = obj.find("dim"); it != obj.end()) meta.dim = index_of(*it, "metadata.dim");
  if (auto it = obj.find("seed"); it != obj.end()) {
    if (!it->is_number_unsigned() && !it->is_number_integer()) fail("metadata.seed: expected an integer");
    meta.seed = it->get<std::uint64_t>();
  }
  if (auto it = obj.find("options"); it != obj.end()) {
    const Json& o = *it;
    if (!o.is_object()) fail("metadata.options: expected an object");
    if (auto r = o.find("rows"); r != o.end()) meta.options.rows = index_of(*r, "options.rows");
    if (auto h = o.find("horizon"); h != o.end()) meta.options.horizon = index_of(*h, "options.horizon");
    if (auto a = o.find("assets"); a != o.end()) meta.options.assets = index_of(*a, "options.assets");
    if (auto l = o.find("lambda"); l != o.end()) meta.options.lambda = real_of(*l, "options.lambda");
    if (auto nz = o.find("noise"); nz != o.end()) {
      if (!nz->is_boolean()) fail("options.noise: expected a boolean");
      meta.options.noise = nz->get<bool>();
    }
  }
  return meta;
}

Json parse_json(std::string_view text) {
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const Json::parse_error& e) {
    fail(std::string("invalid JSON: ") + e.what());
  }
}

Json optional_real(double v) {
  if (std::isnan(v)) return nullptr;
  return format_real(v);
}

double read_optional_real(const Json& obj, const char* key) {
  auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) return std::numeric_limits<double>::quiet_NaN();
  return real_of(*it, key);
}

}  // namespace

std::string format_real(double v) {
  if (std::isnan(v)) fail("cannot encode NaN");
  if (std::isinf(v)) fail("cannot encode an infinite value");
  char buf[64];
  std::snprintf(buf, sizeof buf, "%a", v);
  return buf;
}

double parse_real(std::string_view text) {
  const std::string s(text);
  if (s.empty()) throw QpFormatError("empty number");
  char* end = nullptr;
  errno = 0;
  const double v = std::strtod(s.c_str(), &end);
  if (end != s.c_str() + s.size()) throw QpFormatError("malformed number '" + s + "'");
  if (std::isnan(v) || std::isinf(v)) throw QpFormatError("non-finite number '" + s + "'");
  return v;
}

QpMetadata metadata_for(const GenSpec& spec, std::string name) {
  QpMetadata meta;
  meta.cls = std::string(to_string(spec.cls));
  meta.dim = spec.dim;
  meta.seed = spec.seed;
  meta.name = std::move(name);
  meta.options = spec.options;
  return meta;
}

std::optional<GenSpec> spec_from_metadata(const QpMetadata& meta) {
  auto cls = problem_class_from_string(meta.cls);
  if (!cls || !meta.dim || !meta.seed) return std::nullopt;
  return GenSpec{*cls, *meta.dim, *meta.seed, meta.options};
}

std::string qp_to_json(const ProblemData& problem, const std::optional<QpMetadata>& metadata) {
  problem.validate();
  Json doc = Json::object();
  doc["format_version"] = kQpFormatVersion;
  doc["n"] = problem.n();
  doc["m"] = problem.m();
  doc["P"] = triplet_object(problem.P);
  doc["q"] = real_array(problem.q);
  doc["A"] = triplet_object(problem.A);
  doc["l"] = real_array(problem.l, true);
  doc["u"] = real_array(problem.u, true);
  if (metadata) doc["metadata"] = metadata_json(*metadata);
  return doc.dump(1) + "\n";
}

QpFile qp_from_json(std::string_view text) {
  const Json doc = parse_json(text);
  if (!doc.is_object()) fail("top level: expected an object");
  const Json& version = field(doc, "format_version", "top level");
  if (!version.is_number_integer() || version.get<int>() != kQpFormatVersion) {
    fail("unsupported format_version " + version.dump() + " (expected " +
         std::to_string(kQpFormatVersion) + ")");
  }
  const Index n = index_of(field(doc, "n", "top level"), "n");
  const Index m = index_of(field(doc, "m", "top level"), "m");
  if (n < 0 || m < 0) fail("n and m must be nonnegative");

  QpFile file;
  ProblemData& p = file.problem;
  p.P = read_triplets(field(doc, "P", "top level"), "P", n, n, true);
  p.q = read_real_array(field(doc, "q", "top level"), "q", n);
  p.A = read_triplets(field(doc, "A", "top level"), "A", m, n, false);
  p.l = read_real_array(field(doc, "l", "top level"), "l", m);
  p.u = read_real_array(field(doc, "u", "top level"), "u", m);
  for (Index j = 0; j < n; ++j) {
    if (!std::isfinite(p.q[j])) fail("q[" + std::to_string(j) + "] is not finite");
  }
  for (Index i = 0; i < m; ++i) {
    p.l[i] = canonical_bound(p.l[i]);
    p.u[i] = canonical_bound(p.u[i]);
    if (p.l[i] > p.u[i]) {
      fail("row " + std::to_string(i) + ": l[" + std::to_string(i) + "] > u[" +
           std::to_string(i) + "]");
    }
  }
  if (auto it = doc.find("metadata"); it != doc.end()) file.metadata = read_metadata(*it);
  return file;
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

void write_qp(const ProblemData& problem, const std::filesystem::path& path,
              const std::optional<QpMetadata>& metadata) {
  write_text_file(path, qp_to_json(problem, metadata));
}

QpFile read_qp_file(const std::filesystem::path& path) {
  try {
    return qp_from_json(read_text_file(path));
  } catch (const QpFormatError& e) {
    throw QpFormatError(path.string() + ": " + e.what());
  }
}

ProblemData read_qp(const std::filesystem::path& path) { return read_qp_file(path).problem; }

std::string result_to_json(const SolveResult& r) {
  Json doc = Json::object();
  doc["status"] = std::string(to_string(r.status));
  doc["objective"] = optional_real(r.objective);
  doc["prim_res"] = optional_real(r.prim_res);
  doc["dual_res"] = optional_real(r.dual_res);
  doc["iterations"] = r.iterations;
  doc["rho_updates"] = r.rho_updates;
  doc["rho_estimate"] = format_real(r.rho_estimate);
  doc["polish"] = std::string(to_string(r.polish));
  doc["timings"] = Json{{"setup", r.timings.setup},
                        {"solve", r.timings.solve},
                        {"polish", r.timings.polish},
                        {"total", r.timings.total()}};
  doc["x"] = real_array(r.x);
  doc["y"] = real_array(r.y);
  doc["z"] = real_array(r.z);
  doc["primal_infeasibility_certificate"] = real_array(r.primal_infeasibility_certificate);
  doc["dual_infeasibility_certificate"] = real_array(r.dual_infeasibility_certificate);
  return doc.dump(1) + "\n";
}

SolveResult result_from_json(std::string_view text) {
  const Json doc = parse_json(text);
  if (!doc.is_object()) fail("result: expected an object");
  SolveResult r;
  const Json& status = field(doc, "status", "result");
  if (!status.is_string()) fail("result.status: expected a string");
  auto parsed = status_from_string(status.get<std::string>());
  if (!parsed) fail("result.status: unknown status '" + status.get<std::string>() + "'");
  r.status = *parsed;
  r.objective = read_optional_real(doc, "objective");
  r.prim_res = read_optional_real(doc, "prim_res");
  r.dual_res = read_optional_real(doc, "dual_res");
  if (auto it = doc.find("iterations"); it != doc.end()) r.iterations = index_of(*it, "iterations");
  if (auto it = doc.find("rho_updates"); it != doc.end()) r.rho_updates = index_of(*it, "rho_updates");
  if (auto it = doc.find("rho_estimate"); it != doc.end()) r.rho_estimate = real_of(*it, "rho_estimate");
  if (auto it = doc.find("polish"); it != doc.end() && it->is_string()) {
    const auto s = it->get<std::string>();
    r.polish = s == "accepted"   ? PolishStatus::kAccepted
               : s == "rejected" ? PolishStatus::kRejected
                                 : PolishStatus::kNotRun;
  }
  if (auto it = doc.find("timings"); it != doc.end() && it->is_object()) {
    r.timings.setup = it->value("setup", 0.0);
    r.timings.solve = it->value("solve", 0.0);
    r.timings.polish = it->value("polish", 0.0);
  }
  auto vec = [&](const char* key) -> Vector {
    auto it = doc.find(key);
    if (it == doc.end()) return {};
    return read_real_array(*it, key, -1);
  };
  r.x = vec("x");
  r.y = vec("y");
  r.z = vec("z");
  r.primal_infeasibility_certificate = vec("primal_infeasibility_certificate");
  r.dual_infeasibility_certificate = vec("dual_infeasibility_certificate");
  return r;
}

void write_result(const SolveResult& result, const std::filesystem::path& path) {
  write_text_file(path, result_to_json(result));
}

SolveResult read_result(const std::filesystem::path& path) {
  try {
    return result_from_json(read_text_file(path));
  } catch (const QpFormatError& e) {
    throw QpFormatError(path.string() + ": " + e.what());
  }
}

}  // namespace qpsplit
