// Copyright 2026 The mbark Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef MBARK_DYNAMICS_HPP
#define MBARK_DYNAMICS_HPP

#include <functional>
#include <memory>
#include <utility>

#include "mbark/model.hpp"
#include "mbark/qinfo.hpp"

namespace mbark {

struct PropagatorConfig {
  double rel_tol = 1e-8;
  double abs_tol = 1e-10;
  int dense_spectral_max_dim = 4096;
  double initial_step = 0.0;  // us; 0 = auto (min pulse width / 50)

  // The user tolerances are trajectory-level targets; the embedded
  // Runge-Kutta stepper controls each step against tol * step_tol_fraction
  // so that accumulated error (norm drift in particular) stays at the
  // requested level rather than N_steps times it.
  double step_tol_fraction = 1e-3;
  long max_steps = 50'000'000;
  int krylov_max_dim = 48;

  void validate() const;
};

struct IntegrationError : std::runtime_error {
  double time;
  IntegrationError(const std::string& what, double t)
      : std::runtime_error(what + " at t = " + std::to_string(t) + " us"), time(t) {}
};

/// Interaction-picture reduced mBAR states along one trajectory.
struct TrajectoryResult {
  DensityMatrix reference_state;  // rho_R at the end of the pulses
  double reference_time = 0.0;    // t_R
  std::vector<std::pair<double, DensityMatrix>> snapshots;  // one per measure time
};

/// Cached Hermitian eigendecomposition; immutable and shareable across threads.
class SpectralCache {
 public:
  explicit SpectralCache(const CMat& hermitian);

  /// exp(i * phase_sign * t * H) psi
  CVec apply_exp(const CVec& psi, double t, double phase_sign) const;
  const RVec& eigenvalues() const { return evals_; }
  const CMat& eigenvectors() const { return evecs_; }

 private:
  RVec evals_;
  CMat evecs_;
};

/// Matrix-free action of the static Hamiltonian terms (number operators,
/// Kerr, qubit-mode couplings). Scales as O(dim) per application, so the
/// propagators never need the assembled matrix on large composite spaces.
class StaticAction {
 public:
  StaticAction(const DeviceParams& device, bool include_kerr);

  /// y = H_static x  (y is overwritten; scratch must have the same size)
  void apply(const CVec& x, CVec& y, CVec& scratch) const;
  long dim() const { return diag_.size(); }
  const ModeLayout& layout() const { return layout_; }

 private:
  ModeLayout layout_;
  RVec diag_;
  std::vector<double> couplings_;
};

/// Krylov (Lanczos) approximation of exp(i * phase_sign * t * H) psi with
/// adaptive time substepping; `matvec` must be Hermitian.
CVec krylov_exp(const std::function<void(const CVec&, CVec&)>& matvec, const CVec& psi, double t,
                double phase_sign, double tol, int max_dim);

/// Time evolution for one device: adaptive integration through pulses, exact
/// static propagation afterwards, interaction-picture snapshots. Spectral
/// caches are built once in the constructor (dense route up to
/// dense_spectral_max_dim, Krylov beyond) and shared read-only, so one
/// Propagator can serve many schedules, including concurrently.
class Propagator {
 public:
  Propagator(DeviceParams device, PropagatorConfig config = {});

  const DeviceParams& device() const { return device_; }
  const PropagatorConfig& config() const { return config_; }
  long dim() const { return device_.layout.total_dim(); }
  bool dense_spectral() const { return static_eig_ != nullptr; }

  /// Solution of i d|psi>/dt = H(t)|psi> from t0 to t1 (Dormand-Prince 5(4),
  /// per-step error control, no renormalization).
  StateVector integrate(const StateVector& psi0, const DriveSchedule& schedule, double t0,
                        double t1) const;

  /// exp(-i H_static dt) psi with H_static = h_lin + h_kerr.
  StateVector propagate_static(const StateVector& psi, double dt) const;

  /// exp(+i h_lin t) psi
  StateVector to_interaction_picture(const StateVector& psi, double t) const;

  /// Full per-sample pipeline from the composite vacuum.
  TrajectoryResult run_schedule(const DriveSchedule& schedule) const;

 private:
  DeviceParams device_;
  PropagatorConfig config_;
  StaticAction full_action_;  // h_lin + h_kerr
  StaticAction lin_action_;   // h_lin only (interaction-picture rotations)
  std::shared_ptr<const SpectralCache> static_eig_;
  std::shared_ptr<const SpectralCache> lin_eig_;
};

// Free-function forms of the per-operation contracts.

StateVector integrate_tdse(const StateVector& psi0, const DeviceParams& device,
                           const DriveSchedule& schedule, double t0, double t1,
                           const PropagatorConfig& config = {});

/// exp(-i H dt) psi for an explicit Hermitian operator.
StateVector propagate_static(const StateVector& psi, const Operator& h, double dt,
                             const PropagatorConfig& config = {});

StateVector to_interaction_picture(const StateVector& psi, const DeviceParams& device, double t,
                                   const PropagatorConfig& config = {});

TrajectoryResult run_schedule(const DeviceParams& device, const DriveSchedule& schedule,
                              const PropagatorConfig& config = {});

}  // namespace mbark

#endif  // MBARK_DYNAMICS_HPP
