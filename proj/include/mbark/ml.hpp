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

#ifndef MBARK_ML_HPP
#define MBARK_ML_HPP

#include <cstdint>

#include "mbark/kernel.hpp"

namespace mbark {

/// Mesh points plus the two labeled reference points appended at the end
/// (the references are generally off-mesh; training indices only ever range
/// over the mesh part).
struct LabeledDataset {
  std::vector<Sample> points;
  std::vector<int> labels;  // in {1, 2}
  int mesh_resolution = 0;
  int mesh_size = 0;  // = mesh_resolution^2; points[mesh_size..] are the references
  uint64_t seed = 0;

  std::string to_csv() const;  // x1,x2,label
  void validate() const;
};

/// Dual soft-margin C-SVM state over a precomputed kernel.
struct SvmModel {
  std::vector<double> alpha;       // one per training sample, 0 <= alpha <= C
  std::vector<int8_t> y;           // +1 for class label 1, -1 for class label 2
  std::vector<std::string> ids;    // training sample ids
  double bias = 0.0;
  double c = 0.0;
  bool converged = true;
  long iterations = 0;

  std::vector<int> support_indices() const;
  std::string to_json() const;
};

struct GridSpec {
  std::vector<double> c_grid;           // 50 log-spaced over 1e-2..1e1
  std::vector<double> gamma_grid;       // 50 linear over 1..1000
  std::vector<double> extended_c_grid;  // 500 linear over 1..3e6

  static GridSpec paper_default();
  void validate() const;
};

struct TuneResult {
  double c = 0.0;
  double gamma = 0.0;  // 0 when not applicable
  double accuracy = 0.0;
};

std::vector<Sample> make_mesh(int resolution);

/// Labels each mesh point by comparing kernel_entry against the two
/// references; ties go to label 2, references carry their own labels.
LabeledDataset generate_labels(std::span<const Sample> mesh, const Sample& ref1,
                               const Sample& ref2, const EncodingConfig& enc,
                               const Propagator& prop, RhoCache& cache);

/// Uniform sample of mesh indices without replacement; deterministic for a
/// given seed across platforms.
std::vector<int> sample_training(const LabeledDataset& dataset, int size, uint64_t seed);

double rbf_kernel(std::span<const double> x, std::span<const double> y, double gamma);

/// SMO (maximal-violating-pair) to KKT tolerance 1e-3.
SvmModel svm_train(const KernelMatrix& gram, std::span<const int> labels, double c);

double svm_decision(const SvmModel& model, std::span<const double> kernel_row);

/// sign of the decision value mapped back to {1, 2}; exact zero maps to 2.
int svm_predict(const SvmModel& model, std::span<const double> kernel_row);

/// Grid search over C on a precomputed Gram; `full_gram` spans all dataset
/// points so both training blocks and evaluation rows can be sliced from it.
/// Ties prefer smaller C.
TuneResult tune_precomputed(const RMat& full_gram, std::span<const int> labels,
                            std::span<const int> train_idx, std::span<const int> eval_idx,
                            std::span<const double> c_grid);

/// Grid search over (C, gamma) for the RBF baseline. Ties prefer smaller C,
/// then smaller gamma.
TuneResult tune_rbf(std::span<const Sample> points, std::span<const int> labels,
                    std::span<const int> train_idx, std::span<const int> eval_idx,
                    std::span<const double> c_grid, std::span<const double> gamma_grid);

}  // namespace mbark

#endif  // MBARK_ML_HPP
