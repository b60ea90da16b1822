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

#include "mbark/hilbert.hpp"

#include <cmath>

namespace mbark {

ModeLayout ModeLayout::with_modes(int n_modes, int qubit_dim, int mode_dim) {
  std::vector<int> d;
  d.push_back(qubit_dim);
  for (int i = 0; i < n_modes; ++i) d.push_back(mode_dim);
  return ModeLayout(std::move(d));
}

long ModeLayout::total_dim() const {
  long total = 1;
  for (int d : dims) total *= d;
  return total;
}

long ModeLayout::stride(int site) const {
  long s = 1;
  for (int j = site + 1; j < num_sites(); ++j) s *= dims[j];
  return s;
}

long ModeLayout::flat_index(std::span<const int> occupations) const {
  if (static_cast<int>(occupations.size()) != num_sites())
    throw std::invalid_argument("flat_index: occupation list length mismatch");
  long idx = 0;
  for (int s = 0; s < num_sites(); ++s) {
    if (occupations[s] < 0 || occupations[s] >= dims[s])
      throw std::out_of_range("flat_index: occupation " + std::to_string(occupations[s]) +
                              " out of range at site " + std::to_string(s));
    idx = idx * dims[s] + occupations[s];
  }
  return idx;
}

std::vector<int> ModeLayout::unflatten(long index) const {
  if (index < 0 || index >= total_dim()) throw std::out_of_range("unflatten: index out of range");
  std::vector<int> occ(dims.size());
  for (int s = num_sites() - 1; s >= 0; --s) {
    occ[s] = static_cast<int>(index % dims[s]);
    index /= dims[s];
  }
  return occ;
}

void ModeLayout::validate() const {
  if (dims.empty()) throw std::invalid_argument("ModeLayout: no subsystems");
  for (int d : dims)
    if (d < 2) throw std::invalid_argument("ModeLayout: all dims must be >= 2");
}

bool Operator::is_hermitian(double tol) const {
  return (mat - mat.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

Operator annihilation_op(int dim) {
  if (dim < 2) throw std::invalid_argument("annihilation_op: dim must be >= 2");
  CMat m = CMat::Zero(dim, dim);
  for (int n = 1; n < dim; ++n) m(n - 1, n) = std::sqrt(static_cast<double>(n));
  return {ModeLayout({dim}), std::move(m)};
}

Operator creation_op(int dim) { return annihilation_op(dim).adjoint(); }

Operator number_op(int dim) {
  if (dim < 2) throw std::invalid_argument("number_op: dim must be >= 2");
  CMat m = CMat::Zero(dim, dim);
  for (int n = 0; n < dim; ++n) m(n, n) = static_cast<double>(n);
  return {ModeLayout({dim}), std::move(m)};
}

Operator identity_op(int dim) {
  if (dim < 2) throw std::invalid_argument("identity_op: dim must be >= 2");
  return {ModeLayout({dim}), CMat::Identity(dim, dim)};
}

Operator embed(const Operator& local, int site, const ModeLayout& layout) {
  layout.validate();
  if (site < 0 || site >= layout.num_sites())
    throw std::out_of_range("embed: site " + std::to_string(site) + " out of range");
  const int d = layout.dims[site];
  if (local.dim() != d)
    throw std::invalid_argument("embed: local operator dim " + std::to_string(local.dim()) +
                                " != layout dim " + std::to_string(d) + " at site " +
                                std::to_string(site));
  const long post = layout.stride(site);
  const long pre = layout.total_dim() / (post * d);

  CMat out = CMat::Zero(layout.total_dim(), layout.total_dim());
  for (long p = 0; p < pre; ++p) {
    const long base = p * d * post;
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) {
        const Complex v = local.mat(i, j);
        if (v == Complex(0.0)) continue;
        for (long q = 0; q < post; ++q) out(base + i * post + q, base + j * post + q) = v;
      }
  }
  return {layout, std::move(out)};
}

StateVector basis_state(const ModeLayout& layout, std::span<const int> occupations) {
  layout.validate();
  CVec amps = CVec::Zero(layout.total_dim());
  amps(layout.flat_index(occupations)) = 1.0;
  return {layout, std::move(amps)};
}

StateVector vacuum_state(const ModeLayout& layout) {
  std::vector<int> occ(layout.dims.size(), 0);
  return basis_state(layout, occ);
}

}  // namespace mbark
