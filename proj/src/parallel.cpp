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

#include "mbark/parallel.hpp"

#include <omp.h>

#include <Eigen/Core>

// Present when OpenBLAS is linked; weak so the build also works without it.
extern "C" void openblas_set_num_threads(int) __attribute__((weak));

namespace mbark {

int max_threads() { return omp_get_max_threads(); }

void set_global_threads(int n) {
  if (n < 1) n = 1;
  omp_set_num_threads(n);
  Eigen::setNbThreads(n);
  if (openblas_set_num_threads) openblas_set_num_threads(n);
}

bool in_parallel_region() { return omp_in_parallel() != 0; }

ThreadLimitGuard::ThreadLimitGuard(int n) : saved_(omp_get_max_threads()) {
  set_global_threads(n);
}

ThreadLimitGuard::~ThreadLimitGuard() { set_global_threads(saved_); }

}  // namespace mbark
