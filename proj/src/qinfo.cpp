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

#include "mbark/qinfo.hpp"

#include <algorithm>
#include <cmath>

#include "hermitian_eig.hpp"

namespace mbark {

namespace {

constexpr double kEigenvalueFloor = 1e-12;

void check_keep(const ModeLayout& layout, std::span<const int> keep) {
  if (keep.empty()) throw std::invalid_argument("partial_trace: keep set must be nonempty");
  int prev = -1;
  for (int s : keep) {
    if (s < 0 || s >= layout.num_sites())
      throw std::out_of_range("partial_trace: subsystem index out of range");
    if (s <= prev) throw std::invalid_argument("partial_trace: keep indices must be ascending");
    prev = s;
  }
}

struct TraceIndexer {
  // Enumerates flat indices as a function of (kept multi-index, traced multi-index).
  std::vector<long> kept_offsets;    // size = prod kept dims
  std::vector<long> traced_offsets;  // size = prod traced dims
  ModeLayout kept_layout;

  TraceIndexer(const ModeLayout& layout, std::span<const int> keep) {
    const int sites = layout.num_sites();
    std::vector<bool> is_kept(sites, false);
    std::vector<int> kept_dims;
    for (int s : keep) {
      is_kept[s] = true;
      kept_dims.push_back(layout.dims[s]);
    }
    kept_layout = ModeLayout(kept_dims);

    kept_offsets.assign(1, 0);
    traced_offsets.assign(1, 0);
    for (int s = 0; s < sites; ++s) {
      const long stride = layout.stride(s);
      auto& offsets = is_kept[s] ? kept_offsets : traced_offsets;
      std::vector<long> next;
      next.reserve(offsets.size() * layout.dims[s]);
      for (long base : offsets)
        for (int k = 0; k < layout.dims[s]; ++k) next.push_back(base + k * stride);
      offsets = std::move(next);
    }
  }
};

RVec hermitian_eigenvalues(const CMat& m) {
  return detail::hermitian_eig(m, false).values;
}

CMat hermitian_sqrt(const CMat& m) {
  auto eig = detail::hermitian_eig(m, true);
  RVec vals = eig.values;
  for (int i = 0; i < vals.size(); ++i) vals(i) = vals(i) < kEigenvalueFloor ? 0.0 : std::sqrt(vals(i));
  return eig.vectors * vals.asDiagonal() * eig.vectors.adjoint();
}

}  // namespace

void DensityMatrix::check_valid(double tol) const {
  if (mat.rows() != mat.cols()) throw std::invalid_argument("DensityMatrix: not square");
  if (mat.rows() != layout.total_dim())
    throw std::invalid_argument("DensityMatrix: layout/matrix dimension mismatch");
  if ((mat - mat.adjoint()).cwiseAbs().maxCoeff() > tol)
    throw std::runtime_error("DensityMatrix: not Hermitian");
  if (std::abs(trace() - 1.0) > tol) throw std::runtime_error("DensityMatrix: trace != 1");
  const RVec vals = hermitian_eigenvalues(0.5 * (mat + mat.adjoint()));
  if (vals.minCoeff() < -tol) throw std::runtime_error("DensityMatrix: negative eigenvalue");
}

DensityMatrix pure_density(const StateVector& psi) {
  return {psi.layout, psi.amps * psi.amps.adjoint()};
}

DensityMatrix partial_trace(const StateVector& psi, std::span<const int> keep) {
  check_keep(psi.layout, keep);
  const TraceIndexer ix(psi.layout, keep);
  const long dk = static_cast<long>(ix.kept_offsets.size());

  CMat out = CMat::Zero(dk, dk);
  for (long t : ix.traced_offsets) {
    for (long i = 0; i < dk; ++i) {
      const Complex ai = psi.amps(ix.kept_offsets[i] + t);
      if (ai == Complex(0.0)) continue;
      for (long j = 0; j < dk; ++j)
        out(i, j) += ai * std::conj(psi.amps(ix.kept_offsets[j] + t));
    }
  }
  return {ix.kept_layout, std::move(out)};
}

DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const int> keep) {
  check_keep(rho.layout, keep);
  const TraceIndexer ix(rho.layout, keep);
  const long dk = static_cast<long>(ix.kept_offsets.size());

  CMat out = CMat::Zero(dk, dk);
  for (long t : ix.traced_offsets)
    for (long i = 0; i < dk; ++i)
      for (long j = 0; j < dk; ++j)
        out(i, j) += rho.mat(ix.kept_offsets[i] + t, ix.kept_offsets[j] + t);
  return {ix.kept_layout, std::move(out)};
}

namespace {

double fidelity_from_sqrt(const CMat& sqrt_rho, const CMat& sigma) {
  const CMat inner = sqrt_rho * sigma * sqrt_rho;
  const RVec vals = hermitian_eigenvalues(0.5 * (inner + inner.adjoint()));
  double f = 0.0;
  for (int i = 0; i < vals.size(); ++i)
    if (vals(i) > kEigenvalueFloor) f += std::sqrt(vals(i));
  return std::clamp(f, 0.0, 1.0);
}

}  // namespace

double uhlmann_fidelity(const DensityMatrix& rho, const DensityMatrix& sigma) {
  if (rho.dim() != sigma.dim())
    throw std::invalid_argument("uhlmann_fidelity: dimension mismatch");
  return fidelity_from_sqrt(hermitian_sqrt(rho.mat), sigma.mat);
}

FidelityReference::FidelityReference(const DensityMatrix& ref) : sqrt_ref_(hermitian_sqrt(ref.mat)) {}

double FidelityReference::fidelity(const DensityMatrix& rho) const {
  if (rho.mat.rows() != sqrt_ref_.rows())
    throw std::invalid_argument("FidelityReference: dimension mismatch");
  return fidelity_from_sqrt(sqrt_ref_, rho.mat);
}

CMat partial_transpose(const DensityMatrix& rho, std::span<const int> partition) {
  const ModeLayout& layout = rho.layout;
  if (layout.num_sites() < 2)
    throw std::invalid_argument("partial_transpose: state must span >= 2 subsystems");
  if (partition.empty() || static_cast<int>(partition.size()) >= layout.num_sites())
    throw std::invalid_argument("partial_transpose: partition must be proper and nonempty");
  std::vector<bool> transposed(layout.num_sites(), false);
  for (int s : partition) {
    if (s < 0 || s >= layout.num_sites())
      throw std::out_of_range("partial_transpose: subsystem index out of range");
    transposed[s] = true;
  }

  const long dim = layout.total_dim();
  CMat out(dim, dim);
  std::vector<int> oi, oj;
  for (long i = 0; i < dim; ++i) {
    oi = layout.unflatten(i);
    for (long j = 0; j < dim; ++j) {
      oj = layout.unflatten(j);
      std::vector<int> ri = oi, rj = oj;
      for (int s = 0; s < layout.num_sites(); ++s)
        if (transposed[s]) std::swap(ri[s], rj[s]);
      out(layout.flat_index(ri), layout.flat_index(rj)) = rho.mat(i, j);
    }
  }
  return out;
}

double log_negativity(const DensityMatrix& rho, std::span<const int> partition) {
  const CMat pt = partial_transpose(rho, partition);
  const RVec vals = hermitian_eigenvalues(0.5 * (pt + pt.adjoint()));
  const double trace_norm = vals.cwiseAbs().sum();
  return std::log2(trace_norm);
}

double mean_occupation(const StateVector& psi, int site) {
  if (site < 0 || site >= psi.layout.num_sites())
    throw std::out_of_range("mean_occupation: site out of range");
  const long post = psi.layout.stride(site);
  const int d = psi.layout.dims[site];
  double total = 0.0;
  for (long i = 0; i < psi.layout.total_dim(); ++i) {
    const int n = static_cast<int>((i / post) % d);
    total += n * std::norm(psi.amps(i));
  }
  return total;
}

double mean_occupation(const DensityMatrix& rho, int site) {
  if (site < 0 || site >= rho.layout.num_sites())
    throw std::out_of_range("mean_occupation: site out of range");
  const long post = rho.layout.stride(site);
  const int d = rho.layout.dims[site];
  double total = 0.0;
  for (long i = 0; i < rho.layout.total_dim(); ++i) {
    const int n = static_cast<int>((i / post) % d);
    total += n * rho.mat(i, i).real();
  }
  return total;
}

}  // namespace mbark
