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

#ifndef MBARK_PARALLEL_HPP
#define MBARK_PARALLEL_HPP

namespace mbark {

/// Threads OpenMP will use for parallel regions opened by this library.
int max_threads();

/// Sets OpenMP, Eigen and (when linked) OpenBLAS thread counts.
void set_global_threads(int n);

/// True when called from inside an OpenMP parallel region; inner kernels
/// fall back to their serial paths in that case.
bool in_parallel_region();

/// RAII scope forcing a thread count (used by the timing harness, which is
/// single-threaded by contract).
class ThreadLimitGuard {
 public:
  explicit ThreadLimitGuard(int n);
  ~ThreadLimitGuard();
  ThreadLimitGuard(const ThreadLimitGuard&) = delete;
  ThreadLimitGuard& operator=(const ThreadLimitGuard&) = delete;

 private:
  int saved_;
};

}  // namespace mbark

#endif  // MBARK_PARALLEL_HPP
