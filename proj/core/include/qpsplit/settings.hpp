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

#ifndef QPSPLIT_SETTINGS_HPP
#define QPSPLIT_SETTINGS_HPP

#include <string>

#include "qpsplit/linsys.hpp"

namespace qpsplit {

struct Settings {
  // ADMM step sizes.
  double rho = 0.1;
  double sigma = 1e-6;
  double alpha = 1.6;

  // Termination.
  double eps_abs = 1e-3;
  double eps_rel = 1e-3;
  double eps_prim_inf = 1e-4;
  double eps_dual_inf = 1e-4;
  Index max_iter = 4000;
  double time_limit = 0.0;  // seconds; 0 disables the limit
  Index check_termination = 25;

  // Equilibration.
  Index scaling_iters = 10;
  double scaling_eps = 1e-3;
  bool freeze_scaling = false;  // keep D, E, c across matrix updates

  // Step-size adaptation.
  bool adaptive_rho = true;
  double adaptive_rho_fraction = 0.4;
  double adaptive_rho_tolerance = 5.0;
  Index adaptive_rho_max_updates = 50;
  bool adaptive_rho_wall_clock = false;  // default gate uses a flop model
  double rho_min = 1e-6;
  double rho_max = 1e6;
  double rho_eq_scale = 1e3;

  // Polishing.
  bool polish = true;
  double delta = 1e-6;
  Index polish_refine_iter = 3;

  // Linear system.
  LinsysBackend linsys_backend = LinsysBackend::kDirect;
  Ordering ordering = Ordering::kAmd;
  double cg_tol = 1e-10;
  Index cg_max_iter = 500;

  /// Throws std::invalid_argument on an out-of-range field.
  void validate() const;
};

/// High-accuracy preset (eps_abs = eps_rel = 1e-5).
Settings high_accuracy_settings();

}  // namespace qpsplit

#endif  // QPSPLIT_SETTINGS_HPP
