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

#include "mbark/site_ops.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "mbark/parallel.hpp"

namespace mbark {

namespace {

// Below this size the OpenMP fork/join overhead dominates.
constexpr long kParallelCutoff = 4096;

struct SiteGeometry {
  long pre, post;
  int d;
};

SiteGeometry geometry(const ModeLayout& layout, int site) {
  if (site < 0 || site >= layout.num_sites())
    throw std::out_of_range("site_ops: site index out of range");
  const long post = layout.stride(site);
  const int d = layout.dims[site];
  const long pre = layout.total_dim() / (post * d);
  return {pre, post, d};
}

std::vector<double> sqrt_table(int d) {
  std::vector<double> s(d);
  for (int n = 0; n < d; ++n) s[n] = std::sqrt(static_cast<double>(n));
  return s;
}

}  // namespace

namespace serial {

void apply_lowering(const ModeLayout& layout, int site, Complex alpha, const CVec& x, CVec& y) {
  const auto [pre, post, d] = geometry(layout, site);
  const auto sq = sqrt_table(d);
  for (long p = 0; p < pre; ++p) {
    const long base = p * d * post;
    for (int n = 1; n < d; ++n) {
      const Complex c = alpha * sq[n];
      const long src = base + n * post;
      const long dst = base + (n - 1) * post;
      for (long q = 0; q < post; ++q) y(dst + q) += c * x(src + q);
    }
  }
}

void apply_raising(const ModeLayout& layout, int site, Complex alpha, const CVec& x, CVec& y) {
  const auto [pre, post, d] = geometry(layout, site);
  const auto sq = sqrt_table(d);
  for (long p = 0; p < pre; ++p) {
    const long base = p * d * post;
    for (int n = 1; n < d; ++n) {
      const Complex c = alpha * sq[n];
      const long src = base + (n - 1) * post;
      const long dst = base + n * post;
      for (long q = 0; q < post; ++q) y(dst + q) += c * x(src + q);
    }
  }
}

void apply_diag(const RVec& diag, const CVec& x, CVec& y) {
  for (long i = 0; i < x.size(); ++i) y(i) = diag(i) * x(i);
}

void gemv(const CMat& a, const CVec& x, CVec& y) {
  y.setZero();
  for (long j = 0; j < a.cols(); ++j) y += x(j) * a.col(j);
}

void gemv_adjoint(const CMat& a, const CVec& x, CVec& y) {
  for (long i = 0; i < a.cols(); ++i) y(i) = a.col(i).dot(x);
}

}  // namespace serial

namespace par {

void apply_lowering(const ModeLayout& layout, int site, Complex alpha, const CVec& x, CVec& y) {
  const auto [pre, post, d] = geometry(layout, site);
  const auto sq = sqrt_table(d);
#pragma omp parallel for collapse(2) schedule(static)
  for (long p = 0; p < pre; ++p)
    for (long q = 0; q < post; ++q) {
      const long base = p * d * post + q;
      for (int n = 1; n < d; ++n) y(base + (n - 1) * post) += alpha * sq[n] * x(base + n * post);
    }
}

void apply_raising(const ModeLayout& layout, int site, Complex alpha, const CVec& x, CVec& y) {
  const auto [pre, post, d] = geometry(layout, site);
  const auto sq = sqrt_table(d);
#pragma omp parallel for collapse(2) schedule(static)
  for (long p = 0; p < pre; ++p)
    for (long q = 0; q < post; ++q) {
      const long base = p * d * post + q;
      for (int n = 1; n < d; ++n) y(base + n * post) += alpha * sq[n] * x(base + (n - 1) * post);
    }
}

void apply_diag(const RVec& diag, const CVec& x, CVec& y) {
#pragma omp parallel for schedule(static)
  for (long i = 0; i < x.size(); ++i) y(i) = diag(i) * x(i);
}

void gemv(const CMat& a, const CVec& x, CVec& y) {
  const long rows = a.rows();
#pragma omp parallel
  {
    const int nt = omp_get_num_threads();
    const int id = omp_get_thread_num();
    const long chunk = (rows + nt - 1) / nt;
    const long r0 = std::min<long>(id * chunk, rows);
    const long len = std::min<long>(chunk, rows - r0);
    if (len > 0) {
      y.segment(r0, len).setZero();
      for (long j = 0; j < a.cols(); ++j)
        y.segment(r0, len) += x(j) * a.col(j).segment(r0, len);
    }
  }
}

void gemv_adjoint(const CMat& a, const CVec& x, CVec& y) {
#pragma omp parallel for schedule(static)
  for (long i = 0; i < a.cols(); ++i) y(i) = a.col(i).dot(x);
}

}  // namespace par

void apply_lowering(const ModeLayout& layout, int site, Complex alpha, const CVec& x, CVec& y) {
  if (x.size() >= kParallelCutoff && !in_parallel_region())
    par::apply_lowering(layout, site, alpha, x, y);
  else
    serial::apply_lowering(layout, site, alpha, x, y);
}

void apply_raising(const ModeLayout& layout, int site, Complex alpha, const CVec& x, CVec& y) {
  if (x.size() >= kParallelCutoff && !in_parallel_region())
    par::apply_raising(layout, site, alpha, x, y);
  else
    serial::apply_raising(layout, site, alpha, x, y);
}

void apply_diag(const RVec& diag, const CVec& x, CVec& y) {
  if (x.size() >= kParallelCutoff && !in_parallel_region())
    par::apply_diag(diag, x, y);
  else
    serial::apply_diag(diag, x, y);
}

void gemv(const CMat& a, const CVec& x, CVec& y) {
  if (a.rows() * a.cols() >= kParallelCutoff * 16 && !in_parallel_region())
    par::gemv(a, x, y);
  else
    serial::gemv(a, x, y);
}

void gemv_adjoint(const CMat& a, const CVec& x, CVec& y) {
  if (a.rows() * a.cols() >= kParallelCutoff * 16 && !in_parallel_region())
    par::gemv_adjoint(a, x, y);
  else
    serial::gemv_adjoint(a, x, y);
}

}  // namespace mbark
