// Copyright 2026 The sdee Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <Eigen/Core>
#include <cstdint>

#include "sdee/baselines/features.hpp"

namespace sdee::baselines {

/// Weights of a one-hidden-layer ReLU regressor.
template <typename Scalar>
struct MlpParams {
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
  Matrix w1;  // hidden x p
  Vector b1;  // hidden
  Vector w2;  // hidden
  Scalar b2 = 0;

  static MlpParams zeros_like(const MlpParams& o) {
    return {Matrix::Zero(o.w1.rows(), o.w1.cols()), Vector::Zero(o.b1.size()), Vector::Zero(o.w2.size()), Scalar(0)};
  }
};

/// Mean squared error of the network on rows of `x` (one sample per row)
/// against `y`, halved: L = sum_n (f(x_n) - y_n)^2 / (2N). When `grad` is
/// given it receives dL/dparams (ReLU derivative taken as 0 at 0).
template <typename Scalar, typename DX, typename DY>
Scalar mlp_loss(const MlpParams<Scalar>& p, const Eigen::MatrixBase<DX>& x, const Eigen::MatrixBase<DY>& y,
                MlpParams<Scalar>* grad = nullptr) {
  using Matrix = typename MlpParams<Scalar>::Matrix;
  using Vector = typename MlpParams<Scalar>::Vector;
  const auto n = x.rows();
  // pre: N x hidden
  Matrix pre = (x.template cast<Scalar>() * p.w1.transpose()).rowwise() + p.b1.transpose();
  Matrix act = pre.cwiseMax(Scalar(0));
  Vector out = (act * p.w2).array() + p.b2;
  Vector err = out - y.template cast<Scalar>();
  const Scalar loss = err.squaredNorm() / (Scalar(2) * static_cast<Scalar>(n));
  if (grad) {
    const Vector d_out = err / static_cast<Scalar>(n);
    grad->w2 = act.transpose() * d_out;
    grad->b2 = d_out.sum();
    Matrix d_pre = (d_out * p.w2.transpose()).array() * (pre.array() > Scalar(0)).template cast<Scalar>();
    grad->w1 = d_pre.transpose() * x.template cast<Scalar>();
    grad->b1 = d_pre.colwise().sum().transpose();
  }
  return loss;
}

struct MlpOptions {
  int hidden = 16;
  int epochs = 3000;
  double learning_rate = 0.05;
  std::uint64_t seed = 1;
};

/// A fitted network with its input normalization and target scaling.
struct MlpNetwork {
  MlpParams<double> params;
  MinMax norm;
  double target_mean = 0.0;
  double target_scale = 1.0;
  std::vector<double> loss_history;  // training loss per epoch, scaled targets

  double predict(const Eigen::VectorXd& raw_query) const;
};

/// Full-batch gradient descent on min-max normalized features and
/// standardized targets, weights seeded from `options.seed`. Throws
/// InputError on an empty training set and Divergence when the loss stops
/// being finite.
MlpNetwork mlp_fit(const FeatureMatrix& train, const MlpOptions& options = {});

}  // namespace sdee::baselines
