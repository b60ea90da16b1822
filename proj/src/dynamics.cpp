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

#include "mbark/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <set>

#include "hermitian_eig.hpp"
#include "mbark/site_ops.hpp"

namespace mbark {

void PropagatorConfig::validate() const {
  if (rel_tol <= 0.0 || abs_tol <= 0.0)
    throw std::invalid_argument("PropagatorConfig: tolerances must be > 0");
  if (step_tol_fraction <= 0.0 || step_tol_fraction > 1.0)
    throw std::invalid_argument("PropagatorConfig: step_tol_fraction must be in (0, 1]");
  if (dense_spectral_max_dim < 1 || krylov_max_dim < 4 || max_steps < 1)
    throw std::invalid_argument("PropagatorConfig: invalid limits");
}

// ---------------------------------------------------------------------------
// Spectral cache

SpectralCache::SpectralCache(const CMat& hermitian) {
  auto eig = detail::hermitian_eig(hermitian, true);
  evals_ = std::move(eig.values);
  evecs_ = std::move(eig.vectors);
}

CVec SpectralCache::apply_exp(const CVec& psi, double t, double phase_sign) const {
  CVec w(psi.size());
  gemv_adjoint(evecs_, psi, w);
  for (long i = 0; i < w.size(); ++i)
    w(i) *= std::exp(Complex(0.0, phase_sign * t * evals_(i)));
  CVec out(psi.size());
  gemv(evecs_, w, out);
  return out;
}

// ---------------------------------------------------------------------------
// Matrix-free static action

StaticAction::StaticAction(const DeviceParams& device, bool include_kerr)
    : layout_(device.layout), couplings_(device.couplings) {
  device.validate();
  const long dim = layout_.total_dim();
  diag_.resize(dim);
  for (long idx = 0; idx < dim; ++idx) {
    long rest = idx;
    double v = 0.0;
    for (int s = layout_.num_sites() - 1; s >= 0; --s) {
      const int n = static_cast<int>(rest % layout_.dims[s]);
      rest /= layout_.dims[s];
      if (s == 0) {
        v += -device.delta_q * n;
        if (include_kerr) v += -device.kerr * n * (n - 1);
      } else {
        v += -device.deltas[s - 1] * n;
      }
    }
    diag_(idx) = v;
  }
}

void StaticAction::apply(const CVec& x, CVec& y, CVec& scratch) const {
  apply_diag(diag_, x, y);
  bool any_coupling = false;
  for (double g : couplings_)
    if (g != 0.0) any_coupling = true;
  if (!any_coupling) return;

  // g_i (a' b_i + b_i' a) summed over modes: factor a' out of the first sum
  // and a out of the second so each needs one qubit-site application.
  scratch.setZero();
  for (int i = 0; i < static_cast<int>(couplings_.size()); ++i)
    if (couplings_[i] != 0.0) apply_lowering(layout_, i + 1, couplings_[i], x, scratch);
  apply_raising(layout_, 0, 1.0, scratch, y);

  scratch.setZero();
  apply_lowering(layout_, 0, 1.0, x, scratch);
  for (int i = 0; i < static_cast<int>(couplings_.size()); ++i)
    if (couplings_[i] != 0.0) apply_raising(layout_, i + 1, couplings_[i], scratch, y);
}

// ---------------------------------------------------------------------------
// Drive coefficient: the pulses all address the qubit, so H_drive(t) is
// c(t) a' + conj(c(t)) a with c(t) = sum_j Omega_j(t) e^{+i delta_j t}.

namespace {

Complex drive_coefficient(const DriveSchedule& schedule, double t) {
  Complex c(0.0, 0.0);
  for (const auto& p : schedule.pulses) {
    const double env = pulse_envelope(p, t);
    if (env == 0.0) continue;
    c += env * std::exp(Complex(0.0, p.drive_detuning * t));
  }
  return c;
}

struct Rhs {
  const StaticAction& stat;
  const DriveSchedule& schedule;
  const ModeLayout& layout;
  mutable CVec scratch;

  void operator()(double t, const CVec& psi, CVec& out) const {
    stat.apply(psi, out, scratch);
    const Complex c = drive_coefficient(schedule, t);
    if (c != Complex(0.0)) {
      apply_raising(layout, 0, c, psi, out);
      apply_lowering(layout, 0, std::conj(c), psi, out);
    }
    out *= Complex(0.0, -1.0);
  }
};

// Dormand-Prince 5(4) coefficients.
constexpr double kA21 = 1.0 / 5.0;
constexpr double kA31 = 3.0 / 40.0, kA32 = 9.0 / 40.0;
constexpr double kA41 = 44.0 / 45.0, kA42 = -56.0 / 15.0, kA43 = 32.0 / 9.0;
constexpr double kA51 = 19372.0 / 6561.0, kA52 = -25360.0 / 2187.0, kA53 = 64448.0 / 6561.0,
                 kA54 = -212.0 / 729.0;
constexpr double kA61 = 9017.0 / 3168.0, kA62 = -355.0 / 33.0, kA63 = 46732.0 / 5247.0,
                 kA64 = 49.0 / 176.0, kA65 = -5103.0 / 18656.0;
constexpr double kB1 = 35.0 / 384.0, kB3 = 500.0 / 1113.0, kB4 = 125.0 / 192.0,
                 kB5 = -2187.0 / 6784.0, kB6 = 11.0 / 84.0;
constexpr double kE1 = 71.0 / 57600.0, kE3 = -71.0 / 16695.0, kE4 = 71.0 / 1920.0,
                 kE5 = -17253.0 / 339200.0, kE6 = 22.0 / 525.0, kE7 = -1.0 / 40.0;
constexpr double kC2 = 1.0 / 5.0, kC3 = 3.0 / 10.0, kC4 = 4.0 / 5.0, kC5 = 8.0 / 9.0;

struct StepBudget {
  long remaining;
};

// Integrates one smooth segment [t0, t1] with the embedded 5(4) pair, FSAL
// and a PI step-size controller (Hairer's dopri5 settings).
template <typename F>
void dopri5_segment(const F& rhs, CVec& y, double t0, double t1, double h0, double atol,
                    double rtol, StepBudget& budget) {
  const long n = y.size();
  CVec k1(n), k2(n), k3(n), k4(n), k5(n), k6(n), k7(n), ytmp(n), ynew(n), err_vec(n);

  const double span = t1 - t0;
  double t = t0;
  double h = std::clamp(h0, 0.0, span);
  if (h <= 0.0) h = span / 100.0;

  rhs(t, y, k1);

  constexpr double kBeta = 0.04;
  constexpr double kExpo1 = 0.2 - kBeta * 0.75;
  constexpr double kSafe = 0.9;
  constexpr double kMaxScale = 10.0;
  constexpr double kMinScale = 0.2;
  double facold = 1e-4;
  bool last_rejected = false;

  while (t < t1) {
    if (--budget.remaining < 0) throw IntegrationError("integrate_tdse: step budget exhausted", t);
    if (h < 1e-14 * std::max(1.0, std::abs(t)))
      throw IntegrationError("integrate_tdse: step size underflow", t);
    const bool final_step = t + h >= t1;
    if (final_step) h = t1 - t;

    ytmp = y + h * (kA21 * k1);
    rhs(t + kC2 * h, ytmp, k2);
    ytmp = y + h * (kA31 * k1 + kA32 * k2);
    rhs(t + kC3 * h, ytmp, k3);
    ytmp = y + h * (kA41 * k1 + kA42 * k2 + kA43 * k3);
    rhs(t + kC4 * h, ytmp, k4);
    ytmp = y + h * (kA51 * k1 + kA52 * k2 + kA53 * k3 + kA54 * k4);
    rhs(t + kC5 * h, ytmp, k5);
    ytmp = y + h * (kA61 * k1 + kA62 * k2 + kA63 * k3 + kA64 * k4 + kA65 * k5);
    rhs(t + h, ytmp, k6);
    ynew = y + h * (kB1 * k1 + kB3 * k3 + kB4 * k4 + kB5 * k5 + kB6 * k6);
    rhs(t + h, ynew, k7);

    err_vec = h * (kE1 * k1 + kE3 * k3 + kE4 * k4 + kE5 * k5 + kE6 * k6 + kE7 * k7);
    const double scale = atol + rtol * std::max(y.norm(), ynew.norm());
    const double err = err_vec.norm() / scale;

    if (err <= 1.0) {
      t += h;
      y.swap(ynew);
      k1.swap(k7);
      const double fac11 = std::pow(std::max(err, 1e-32), kExpo1);
      double fac = fac11 / std::pow(facold, kBeta);
      fac = std::max(1.0 / kMaxScale, std::min(1.0 / kMinScale, fac / kSafe));
      double hnew = h / fac;
      if (last_rejected) hnew = std::min(hnew, h);
      h = hnew;
      facold = std::max(err, 1e-4);
      last_rejected = false;
    } else {
      const double fac11 = std::pow(err, kExpo1);
      h = h / std::min(1.0 / kMinScale, fac11 / kSafe);
      last_rejected = true;
    }
  }
}

// Segment boundaries: the envelope jumps to exactly zero at the cutoff, so
// restart the stepper at each pulse-support edge.
std::vector<double> segment_points(const DriveSchedule& schedule, double t0, double t1) {
  std::set<double> pts{t0, t1};
  for (const auto& p : schedule.pulses) {
    for (double edge : {p.support_begin(), p.support_end()})
      if (edge > t0 && edge < t1) pts.insert(edge);
  }
  return {pts.begin(), pts.end()};
}

double auto_initial_step(const DriveSchedule& schedule, double t0, double t1,
                         const PropagatorConfig& config) {
  if (config.initial_step > 0.0) return config.initial_step;
  double w = std::numeric_limits<double>::infinity();
  for (const auto& p : schedule.pulses) w = std::min(w, p.width);
  if (std::isfinite(w)) return w / 50.0;
  return (t1 - t0) / 100.0;
}

StateVector integrate_impl(const StaticAction& stat, const StateVector& psi0,
                           const DriveSchedule& schedule, double t0, double t1,
                           const PropagatorConfig& config) {
  if (!(t1 > t0)) throw std::invalid_argument("integrate_tdse: requires t1 > t0");
  if (std::abs(psi0.norm() - 1.0) > 1e-6)
    throw std::invalid_argument("integrate_tdse: initial state must be normalized");

  const double atol = config.abs_tol * config.step_tol_fraction;
  const double rtol = config.rel_tol * config.step_tol_fraction;
  const double h0 = auto_initial_step(schedule, t0, t1, config);

  Rhs rhs{stat, schedule, stat.layout(), CVec(stat.dim())};
  CVec y = psi0.amps;
  StepBudget budget{config.max_steps};
  const std::vector<double> pts = segment_points(schedule, t0, t1);
  for (size_t i = 0; i + 1 < pts.size(); ++i)
    dopri5_segment(rhs, y, pts[i], pts[i + 1], h0, atol, rtol, budget);
  return {psi0.layout, std::move(y)};
}

}  // namespace

// ---------------------------------------------------------------------------
// Krylov exponential action (Lanczos, adaptive substeps)

CVec krylov_exp(const std::function<void(const CVec&, CVec&)>& matvec, const CVec& psi, double t,
                double phase_sign, double tol, int max_dim) {
  if (t == 0.0) return psi;
  const long n = psi.size();
  const int m_max = std::min<long>(max_dim, n);

  CVec v = psi;
  double remaining = t;
  CMat basis(n, m_max);
  RVec alpha(m_max), beta(m_max);
  CVec w(n);

  // Per-unit-time error budget so substep errors accumulate to ~tol overall.
  const double tol_rate = tol * std::max(1.0, psi.norm()) / t;

  while (remaining > 0.0) {
    const double vnorm = v.norm();
    if (vnorm == 0.0) return v;

    // tau-independent Lanczos factorization from the current vector.
    int m = 0;
    basis.col(0) = v / vnorm;
    double next_beta = 0.0;
    for (int j = 0; j < m_max; ++j) {
      matvec(basis.col(j), w);
      alpha(j) = std::real(basis.col(j).dot(w));
      w -= alpha(j) * basis.col(j);
      if (j > 0) w -= beta(j - 1) * basis.col(j - 1);
      m = j + 1;
      next_beta = w.norm();
      if (j + 1 < m_max) {
        if (next_beta < 1e-14 * std::max(1.0, std::abs(alpha(j)))) break;  // happy breakdown
        beta(j) = next_beta;
        basis.col(j + 1) = w / next_beta;
      }
    }

    Eigen::SelfAdjointEigenSolver<RMat> small;
    RMat tri = RMat::Zero(m, m);
    for (int i = 0; i < m; ++i) {
      tri(i, i) = alpha(i);
      if (i + 1 < m) tri(i, i + 1) = tri(i + 1, i) = beta(i);
    }
    small.compute(tri);
    const RMat& q = small.eigenvectors();
    const RVec& lam = small.eigenvalues();
    const RVec q0 = q.row(0).transpose();

    // Largest tau <= remaining whose truncation estimate meets the budget.
    double tau = remaining;
    CVec u(m);
    for (int halvings = 0;; ++halvings) {
      for (int i = 0; i < m; ++i)
        u(i) = std::exp(Complex(0.0, phase_sign * tau * lam(i))) * q0(i);
      CVec coeff = q.cast<Complex>() * u;
      const double err = vnorm * next_beta * std::abs(coeff(m - 1));
      if (err <= tol_rate * tau || m == static_cast<int>(n) || next_beta == 0.0) {
        v = vnorm * (basis.leftCols(m) * coeff);
        break;
      }
      if (halvings > 60)
        throw std::runtime_error("krylov_exp: failed to reach tolerance (substep underflow)");
      tau *= 0.5;
    }
    remaining -= tau;
  }
  return v;
}

// ---------------------------------------------------------------------------
// Propagator

Propagator::Propagator(DeviceParams device, PropagatorConfig config)
    : device_(std::move(device)),
      config_(config),
      full_action_(device_, true),
      lin_action_(device_, false) {
  config_.validate();
  if (dim() <= config_.dense_spectral_max_dim) {
    static_eig_ = std::make_shared<SpectralCache>(h_lin(device_).mat + h_kerr(device_).mat);
    lin_eig_ = device_.kerr == 0.0 ? static_eig_
                                   : std::make_shared<SpectralCache>(h_lin(device_).mat);
  }
}

StateVector Propagator::integrate(const StateVector& psi0, const DriveSchedule& schedule,
                                  double t0, double t1) const {
  return integrate_impl(full_action_, psi0, schedule, t0, t1, config_);
}

StateVector Propagator::propagate_static(const StateVector& psi, double dt) const {
  if (dt < 0.0) throw std::invalid_argument("propagate_static: dt must be >= 0");
  if (dt == 0.0) return psi;
  if (static_eig_) return {psi.layout, static_eig_->apply_exp(psi.amps, dt, -1.0)};
  CVec scratch(dim());
  auto mv = [this, &scratch](const CVec& x, CVec& y) { full_action_.apply(x, y, scratch); };
  return {psi.layout, krylov_exp(mv, psi.amps, dt, -1.0, config_.abs_tol, config_.krylov_max_dim)};
}

StateVector Propagator::to_interaction_picture(const StateVector& psi, double t) const {
  if (t == 0.0) return psi;
  if (lin_eig_) return {psi.layout, lin_eig_->apply_exp(psi.amps, std::abs(t), t >= 0 ? 1.0 : -1.0)};
  CVec scratch(dim());
  auto mv = [this, &scratch](const CVec& x, CVec& y) { lin_action_.apply(x, y, scratch); };
  return {psi.layout, krylov_exp(mv, psi.amps, std::abs(t), t >= 0 ? 1.0 : -1.0, config_.abs_tol,
                                 config_.krylov_max_dim)};
}

TrajectoryResult Propagator::run_schedule(const DriveSchedule& schedule) const {
  schedule.validate();
  if (device_.n_modes() < 1)
    throw std::invalid_argument("run_schedule: device must have at least one resonator mode");

  std::vector<int> keep(device_.n_modes());
  std::iota(keep.begin(), keep.end(), 1);
  const auto reduce = [&](const StateVector& psi, double t) {
    // Rotation precedes tracing: h_lin couples qubit and modes.
    return partial_trace(to_interaction_picture(psi, t), keep);
  };

  StateVector psi = vacuum_state(device_.layout);
  const double t_r = schedule.pulses_end();
  if (t_r > 0.0) psi = integrate(psi, schedule, 0.0, t_r);

  TrajectoryResult result;
  result.reference_time = t_r;
  result.reference_state = reduce(psi, t_r);

  std::vector<double> unique_times = schedule.measure_times;
  unique_times.erase(std::unique(unique_times.begin(), unique_times.end()), unique_times.end());

  std::vector<std::pair<double, DensityMatrix>> computed;
  computed.reserve(unique_times.size());
  double t_cur = t_r;
  StateVector psi_cur = psi;
  for (double t : unique_times) {
    psi_cur = propagate_static(psi_cur, t - t_cur);
    t_cur = t;
    computed.emplace_back(t, reduce(psi_cur, t));
  }

  size_t k = 0;
  for (double t : schedule.measure_times) {
    while (computed[k].first != t) ++k;
    result.snapshots.push_back(computed[k]);
  }
  return result;
}

// ---------------------------------------------------------------------------
// Free-function forms

StateVector integrate_tdse(const StateVector& psi0, const DeviceParams& device,
                           const DriveSchedule& schedule, double t0, double t1,
                           const PropagatorConfig& config) {
  config.validate();
  const StaticAction stat(device, true);
  return integrate_impl(stat, psi0, schedule, t0, t1, config);
}

StateVector propagate_static(const StateVector& psi, const Operator& h, double dt,
                             const PropagatorConfig& config) {
  config.validate();
  if (dt < 0.0) throw std::invalid_argument("propagate_static: dt must be >= 0");
  if (dt == 0.0) return psi;
  if (!h.is_hermitian(1e-9)) throw std::invalid_argument("propagate_static: H must be Hermitian");
  if (h.dim() <= config.dense_spectral_max_dim) {
    const SpectralCache cache(h.mat);
    return {psi.layout, cache.apply_exp(psi.amps, dt, -1.0)};
  }
  auto mv = [&h](const CVec& x, CVec& y) { y.noalias() = h.mat * x; };
  return {psi.layout, krylov_exp(mv, psi.amps, dt, -1.0, config.abs_tol, config.krylov_max_dim)};
}

StateVector to_interaction_picture(const StateVector& psi, const DeviceParams& device, double t,
                                   const PropagatorConfig& config) {
  config.validate();
  if (t == 0.0) return psi;
  if (device.layout.total_dim() <= config.dense_spectral_max_dim) {
    const SpectralCache cache(h_lin(device).mat);
    return {psi.layout, cache.apply_exp(psi.amps, std::abs(t), t >= 0 ? 1.0 : -1.0)};
  }
  const StaticAction lin(device, false);
  CVec scratch(lin.dim());
  auto mv = [&lin, &scratch](const CVec& x, CVec& y) { lin.apply(x, y, scratch); };
  return {psi.layout,
          krylov_exp(mv, psi.amps, std::abs(t), t >= 0 ? 1.0 : -1.0, config.abs_tol,
                     config.krylov_max_dim)};
}

TrajectoryResult run_schedule(const DeviceParams& device, const DriveSchedule& schedule,
                              const PropagatorConfig& config) {
  return Propagator(device, config).run_schedule(schedule);
}

}  // namespace mbark
