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

#ifndef MBARK_SITE_OPS_HPP
#define MBARK_SITE_OPS_HPP

#include "mbark/hilbert.hpp"

namespace mbark {

// Hot inner kernels of the propagators: matrix-free applications of local
// bosonic operators to a composite-space vector, plus the dense mat-vecs used
// by the spectral caches. Each kernel has a serial reference implementation
// and an OpenMP one with identical summation order, so outputs match bitwise;
// the serial versions stay as the comparison baseline for tests and for the
// parallel_bench target.

namespace serial {

/// y += alpha * (b_site x), lowering operator at `site`.
void apply_lowering(const ModeLayout& layout, int site, Complex alpha, const CVec& x, CVec& y);

/// y += alpha * (b_site' x), raising operator at `site`.
void apply_raising(const ModeLayout& layout, int site, Complex alpha, const CVec& x, CVec& y);

/// y = diag .* x (elementwise, real diagonal).
void apply_diag(const RVec& diag, const CVec& x, CVec& y);

/// y = A x
void gemv(const CMat& a, const CVec& x, CVec& y);

/// y = A' x
void gemv_adjoint(const CMat& a, const CVec& x, CVec& y);

}  // namespace serial

namespace par {

void apply_lowering(const ModeLayout& layout, int site, Complex alpha, const CVec& x, CVec& y);
void apply_raising(const ModeLayout& layout, int site, Complex alpha, const CVec& x, CVec& y);
void apply_diag(const RVec& diag, const CVec& x, CVec& y);
void gemv(const CMat& a, const CVec& x, CVec& y);
void gemv_adjoint(const CMat& a, const CVec& x, CVec& y);

}  // namespace par

// Dispatchers: OpenMP path for large vectors outside existing parallel
// regions, serial otherwise.

void apply_lowering(const ModeLayout& layout, int site, Complex alpha, const CVec& x, CVec& y);
void apply_raising(const ModeLayout& layout, int site, Complex alpha, const CVec& x, CVec& y);
void apply_diag(const RVec& diag, const CVec& x, CVec& y);
void gemv(const CMat& a, const CVec& x, CVec& y);
void gemv_adjoint(const CMat& a, const CVec& x, CVec& y);

}  // namespace mbark

#endif  // MBARK_SITE_OPS_HPP
