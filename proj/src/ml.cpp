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

#include "mbark/ml.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <sstream>

#include <json.hpp>

#include "mbark/io.hpp"

namespace mbark {

namespace {

constexpr double kKktTol = 1e-3;
constexpr long kMaxSmoIterations = 2'000'000;

uint64_t bounded_draw(std::mt19937_64& rng, uint64_t bound) {
  // Rejection sampling; unlike std::uniform_int_distribution this is
  // identical across standard library implementations.
  const uint64_t limit = std::numeric_limits<uint64_t>::max() -
                         (std::numeric_limits<uint64_t>::max() % bound);
  uint64_t v;
  do {
    v = rng();
  } while (v >= limit);
  return v % bound;
}

}  // namespace

// ---------------------------------------------------------------------------
// Dataset

std::vector<Sample> make_mesh(int resolution) {
  if (resolution < 2) throw std::invalid_argument("make_mesh: resolution must be >= 2");
  std::vector<Sample> mesh;
  mesh.reserve(static_cast<size_t>(resolution) * resolution);
  const double step = 1.0 / (resolution - 1);
  int k = 0;
  for (int i = 0; i < resolution; ++i)
    for (int j = 0; j < resolution; ++j)
      mesh.push_back({"m" + std::to_string(k++), {i * step, j * step}});
  return mesh;
}

LabeledDataset generate_labels(std::span<const Sample> mesh, const Sample& ref1,
                               const Sample& ref2, const EncodingConfig& enc,
                               const Propagator& prop, RhoCache& cache) {
  const std::array<Sample, 2> refs{ref1, ref2};
  cache.ensure(refs, enc, prop);
  cache.ensure(mesh, enc, prop);

  const auto& rho_ref1 = cache.get(ref1.id);
  const auto& rho_ref2 = cache.get(ref2.id);

  LabeledDataset ds;
  ds.mesh_size = static_cast<int>(mesh.size());
  ds.mesh_resolution = static_cast<int>(std::lround(std::sqrt(double(mesh.size()))));
  for (const auto& p : mesh) {
    const auto& rho = cache.get(p.id);
    const double k1 = kernel_entry(rho, rho_ref1);
    const double k2 = kernel_entry(rho, rho_ref2);
    ds.points.push_back(p);
    ds.labels.push_back(k1 > k2 ? 1 : 2);  // ties break toward label 2
  }
  ds.points.push_back(ref1);
  ds.labels.push_back(1);
  ds.points.push_back(ref2);
  ds.labels.push_back(2);
  ds.validate();
  return ds;
}

void LabeledDataset::validate() const {
  if (points.size() != labels.size())
    throw std::invalid_argument("LabeledDataset: points/labels length mismatch");
  bool has1 = false, has2 = false;
  for (int l : labels) {
    if (l == 1) has1 = true;
    else if (l == 2) has2 = true;
    else throw std::invalid_argument("LabeledDataset: labels must be 1 or 2");
  }
  if (!has1 || !has2) throw std::invalid_argument("LabeledDataset: both classes must be nonempty");
}

std::string LabeledDataset::to_csv() const {
  std::ostringstream out;
  out << "x1,x2,label\n";
  for (size_t i = 0; i < points.size(); ++i) {
    const auto& f = points[i].features;
    out << format_double(f.at(0)) << ',' << format_double(f.at(1)) << ',' << labels[i] << '\n';
  }
  return out.str();
}

std::vector<int> sample_training(const LabeledDataset& dataset, int size, uint64_t seed) {
  const int pool = dataset.mesh_size;
  if (size < 1 || size > pool)
    throw std::invalid_argument("sample_training: size must be in [1, mesh size]");
  std::vector<int> idx(pool);
  std::iota(idx.begin(), idx.end(), 0);
  std::mt19937_64 rng(seed);
  for (int k = 0; k < size; ++k) {
    const auto r = k + static_cast<int>(bounded_draw(rng, static_cast<uint64_t>(pool - k)));
    std::swap(idx[k], idx[r]);
  }
  idx.resize(size);
  std::sort(idx.begin(), idx.end());
  return idx;
}

// ---------------------------------------------------------------------------
// Kernels

double rbf_kernel(std::span<const double> x, std::span<const double> y, double gamma) {
  if (x.size() != y.size()) throw std::invalid_argument("rbf_kernel: dimension mismatch");
  double d2 = 0.0;
  for (size_t i = 0; i < x.size(); ++i) d2 += (x[i] - y[i]) * (x[i] - y[i]);
  return std::exp(-gamma * d2);
}

GridSpec GridSpec::paper_default() {
  GridSpec g;
  for (int k = 0; k < 50; ++k) g.c_grid.push_back(std::pow(10.0, -2.0 + 3.0 * k / 49.0));
  for (int k = 0; k < 50; ++k) g.gamma_grid.push_back(1.0 + 999.0 * k / 49.0);
  for (int k = 0; k < 500; ++k)
    g.extended_c_grid.push_back(1.0 + (3.0e6 - 1.0) * k / 499.0);
  return g;
}

void GridSpec::validate() const {
  for (const auto* grid : {&c_grid, &gamma_grid}) {
    if (grid->empty()) throw std::invalid_argument("GridSpec: empty grid");
    if (!std::is_sorted(grid->begin(), grid->end()))
      throw std::invalid_argument("GridSpec: grids must be ascending");
  }
}

// ---------------------------------------------------------------------------
// SMO

SvmModel svm_train(const KernelMatrix& gram, std::span<const int> labels, double c) {
  const long n = gram.entries.rows();
  if (gram.entries.cols() != n) throw std::invalid_argument("svm_train: Gram must be square");
  if (static_cast<long>(labels.size()) != n)
    throw std::invalid_argument("svm_train: labels length mismatch");
  if (c <= 0.0) throw std::invalid_argument("svm_train: C must be > 0");

  SvmModel model;
  model.c = c;
  model.ids = gram.row_ids;
  model.y.resize(n);
  bool has1 = false, has2 = false;
  for (long i = 0; i < n; ++i) {
    if (labels[i] == 1) {
      model.y[i] = +1;
      has1 = true;
    } else if (labels[i] == 2) {
      model.y[i] = -1;
      has2 = true;
    } else {
      throw std::invalid_argument("svm_train: labels must be in {1, 2}");
    }
  }
  if (!has1 || !has2) throw std::invalid_argument("svm_train: need both classes");

  const RMat& k = gram.entries;
  std::vector<double> alpha(n, 0.0), grad(n, -1.0);
  const auto& y = model.y;

  double final_m = 0.0, final_mm = 0.0;
  long iter = 0;
  for (; iter < kMaxSmoIterations; ++iter) {
    // maximal violating pair
    long i = -1, j = -1;
    double m = -std::numeric_limits<double>::infinity();
    double mm = std::numeric_limits<double>::infinity();
    for (long t = 0; t < n; ++t) {
      const double v = -y[t] * grad[t];
      const bool in_up = (y[t] > 0 && alpha[t] < c) || (y[t] < 0 && alpha[t] > 0);
      const bool in_low = (y[t] > 0 && alpha[t] > 0) || (y[t] < 0 && alpha[t] < c);
      if (in_up && v > m) {
        m = v;
        i = t;
      }
      if (in_low && v < mm) {
        mm = v;
        j = t;
      }
    }
    final_m = m;
    final_mm = mm;
    if (i < 0 || j < 0 || m - mm < kKktTol) break;

    double quad = k(i, i) + k(j, j) - 2.0 * k(i, j);
    if (quad <= 0.0) quad = 1e-12;  // indefinite Gram accepted as-is
    double lambda = (m - mm) / quad;

    // keep both multipliers inside [0, C]; step preserves sum_t alpha_t y_t
    double hi = std::numeric_limits<double>::infinity();
    double lo = -std::numeric_limits<double>::infinity();
    if (y[i] > 0) {
      hi = std::min(hi, c - alpha[i]);
      lo = std::max(lo, -alpha[i]);
    } else {
      hi = std::min(hi, alpha[i]);
      lo = std::max(lo, alpha[i] - c);
    }
    if (y[j] > 0) {
      hi = std::min(hi, alpha[j]);
      lo = std::max(lo, alpha[j] - c);
    } else {
      hi = std::min(hi, c - alpha[j]);
      lo = std::max(lo, -alpha[j]);
    }
    lambda = std::clamp(lambda, lo, hi);

    alpha[i] += y[i] * lambda;
    alpha[j] -= y[j] * lambda;
    for (long t = 0; t < n; ++t) grad[t] += y[t] * lambda * (k(t, i) - k(t, j));
  }
  model.iterations = iter;
  model.converged = iter < kMaxSmoIterations;
  model.alpha = std::move(alpha);

  // bias from support vectors strictly inside the box
  double b_sum = 0.0;
  int b_count = 0;
  for (long t = 0; t < n; ++t)
    if (model.alpha[t] > 1e-12 && model.alpha[t] < c - 1e-12) {
      b_sum += -y[t] * grad[t];
      ++b_count;
    }
  model.bias = b_count > 0 ? b_sum / b_count : -0.5 * (final_m + final_mm);
  return model;
}

double svm_decision(const SvmModel& model, std::span<const double> kernel_row) {
  if (kernel_row.size() != model.alpha.size())
    throw std::invalid_argument("svm_decision: kernel row length mismatch");
  double f = model.bias;
  for (size_t t = 0; t < model.alpha.size(); ++t)
    if (model.alpha[t] != 0.0) f += model.alpha[t] * model.y[t] * kernel_row[t];
  return f;
}

int svm_predict(const SvmModel& model, std::span<const double> kernel_row) {
  return svm_decision(model, kernel_row) > 0.0 ? 1 : 2;
}

std::vector<int> SvmModel::support_indices() const {
  std::vector<int> out;
  for (size_t t = 0; t < alpha.size(); ++t)
    if (alpha[t] > 0.0) out.push_back(static_cast<int>(t));
  return out;
}

std::string SvmModel::to_json() const {
  nlohmann::ordered_json j;
  j["c"] = c;
  j["bias"] = bias;
  j["alpha"] = alpha;
  j["y"] = y;
  j["ids"] = ids;
  auto sup = nlohmann::ordered_json::array();
  for (int t : support_indices()) sup.push_back(ids.at(t));
  j["support_ids"] = std::move(sup);
  j["converged"] = converged;
  j["iterations"] = iterations;
  return j.dump(2);
}

// ---------------------------------------------------------------------------
// Hyperparameter search

namespace {

KernelMatrix slice_gram(const RMat& full, std::span<const int> idx,
                        const std::vector<std::string>* ids = nullptr) {
  KernelMatrix out;
  const long n = static_cast<long>(idx.size());
  out.entries.resize(n, n);
  for (long a = 0; a < n; ++a) {
    out.row_ids.push_back(ids ? ids->at(idx[a]) : "t" + std::to_string(idx[a]));
    for (long b = 0; b < n; ++b) out.entries(a, b) = full(idx[a], idx[b]);
  }
  out.col_ids = out.row_ids;
  return out;
}

double mesh_accuracy(const SvmModel& model, const RMat& eval_rows,
                     std::span<const int> eval_idx, std::span<const int> labels) {
  long correct = 0;
  std::vector<double> row(eval_rows.cols());
  for (long e = 0; e < eval_rows.rows(); ++e) {
    for (long t = 0; t < eval_rows.cols(); ++t) row[t] = eval_rows(e, t);
    if (svm_predict(model, row) == labels[eval_idx[e]]) ++correct;
  }
  return static_cast<double>(correct) / static_cast<double>(eval_rows.rows());
}

}  // namespace

TuneResult tune_precomputed(const RMat& full_gram, std::span<const int> labels,
                            std::span<const int> train_idx, std::span<const int> eval_idx,
                            std::span<const double> c_grid) {
  if (c_grid.empty()) throw std::invalid_argument("tune_precomputed: empty C grid");
  const KernelMatrix train_gram = slice_gram(full_gram, train_idx);
  std::vector<int> train_labels;
  for (int t : train_idx) train_labels.push_back(labels[t]);

  RMat eval_rows(static_cast<long>(eval_idx.size()), static_cast<long>(train_idx.size()));
  for (long e = 0; e < eval_rows.rows(); ++e)
    for (long t = 0; t < eval_rows.cols(); ++t)
      eval_rows(e, t) = full_gram(eval_idx[e], train_idx[t]);

  std::vector<double> acc(c_grid.size());
#pragma omp parallel for schedule(dynamic)
  for (long g = 0; g < static_cast<long>(c_grid.size()); ++g) {
    const SvmModel model = svm_train(train_gram, train_labels, c_grid[g]);
    acc[g] = mesh_accuracy(model, eval_rows, eval_idx, labels);
  }

  TuneResult best{c_grid[0], 0.0, acc[0]};
  for (size_t g = 1; g < c_grid.size(); ++g)
    if (acc[g] > best.accuracy) best = {c_grid[g], 0.0, acc[g]};
  return best;
}

TuneResult tune_rbf(std::span<const Sample> points, std::span<const int> labels,
                    std::span<const int> train_idx, std::span<const int> eval_idx,
                    std::span<const double> c_grid, std::span<const double> gamma_grid) {
  if (c_grid.empty() || gamma_grid.empty()) throw std::invalid_argument("tune_rbf: empty grid");
  const long nt = static_cast<long>(train_idx.size());
  const long ne = static_cast<long>(eval_idx.size());

  // squared distances once; per-gamma grams are elementwise exponentials
  RMat d2_train(nt, nt), d2_eval(ne, nt);
  for (long a = 0; a < nt; ++a)
    for (long b = 0; b < nt; ++b) {
      const auto &xa = points[train_idx[a]].features, &xb = points[train_idx[b]].features;
      double d2 = 0.0;
      for (size_t f = 0; f < xa.size(); ++f) d2 += (xa[f] - xb[f]) * (xa[f] - xb[f]);
      d2_train(a, b) = d2;
    }
  for (long e = 0; e < ne; ++e)
    for (long b = 0; b < nt; ++b) {
      const auto &xe = points[eval_idx[e]].features, &xb = points[train_idx[b]].features;
      double d2 = 0.0;
      for (size_t f = 0; f < xe.size(); ++f) d2 += (xe[f] - xb[f]) * (xe[f] - xb[f]);
      d2_eval(e, b) = d2;
    }

  std::vector<int> train_labels;
  for (int t : train_idx) train_labels.push_back(labels[t]);
  std::vector<std::string> train_ids;
  for (int t : train_idx) train_ids.push_back("t" + std::to_string(t));

  const long ng = static_cast<long>(gamma_grid.size());
  const long nc = static_cast<long>(c_grid.size());
  RMat acc(nc, ng);
#pragma omp parallel for schedule(dynamic)
  for (long g = 0; g < ng; ++g) {
    KernelMatrix train_gram;
    train_gram.row_ids = train_gram.col_ids = train_ids;
    train_gram.entries = (-gamma_grid[g] * d2_train).array().exp();
    const RMat eval_rows = (-gamma_grid[g] * d2_eval).array().exp();
    for (long ci = 0; ci < nc; ++ci) {
      const SvmModel model = svm_train(train_gram, train_labels, c_grid[ci]);
      acc(ci, g) = mesh_accuracy(model, eval_rows, eval_idx, labels);
    }
  }

  TuneResult best{c_grid[0], gamma_grid[0], acc(0, 0)};
  for (long ci = 0; ci < nc; ++ci)
    for (long g = 0; g < ng; ++g)
      if (acc(ci, g) > best.accuracy) best = {c_grid[ci], gamma_grid[g], acc(ci, g)};
  return best;
}

}  // namespace mbark
