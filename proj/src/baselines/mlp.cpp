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

#include "sdee/baselines/mlp.hpp"

#include <cmath>

#include "sdee/common/random.hpp"

namespace sdee::baselines {

double MlpNetwork::predict(const Eigen::VectorXd& raw_query) const {
  const Eigen::VectorXd x = norm.apply(raw_query);
  const Eigen::VectorXd hidden = (params.w1 * x + params.b1).cwiseMax(0.0);
  return (hidden.dot(params.w2) + params.b2) * target_scale + target_mean;
}

MlpNetwork mlp_fit(const FeatureMatrix& train, const MlpOptions& options) {
  if (train.size() == 0) throw InputError("MLP needs at least one training row");
  if (options.hidden < 1 || options.epochs < 0 || !(options.learning_rate > 0.0)) {
    throw InputError("MLP needs hidden >= 1, epochs >= 0 and a positive learning rate");
  }
  MlpNetwork net;
  net.norm = MinMax::fit(train.rows);
  const Eigen::MatrixXd x = net.norm.transform(train.rows);
  net.target_mean = train.targets.mean();
  const double sd =
      train.size() > 1 ? std::sqrt((train.targets.array() - net.target_mean).square().sum() / static_cast<double>(train.size() - 1)) : 0.0;
  net.target_scale = sd > 0.0 ? sd : 1.0;
  const Eigen::VectorXd y = (train.targets.array() - net.target_mean) / net.target_scale;

  // He-style uniform initialisation for ReLU units.
  Rng rng(options.seed);
  const auto p = train.features();
  const double bound1 = std::sqrt(6.0 / static_cast<double>(p));
  const double bound2 = std::sqrt(6.0 / static_cast<double>(options.hidden));
  auto& w = net.params;
  w.w1.resize(options.hidden, p);
  for (Eigen::Index i = 0; i < w.w1.size(); ++i) w.w1.data()[i] = (2.0 * rng.uniform() - 1.0) * bound1;
  w.b1 = Eigen::VectorXd::Constant(options.hidden, 0.01);
  w.w2.resize(options.hidden);
  for (Eigen::Index i = 0; i < w.w2.size(); ++i) w.w2[i] = (2.0 * rng.uniform() - 1.0) * bound2;
  w.b2 = 0.0;

  auto grad = MlpParams<double>::zeros_like(w);
  const double lr = options.learning_rate;
  for (int epoch = 0; epoch < options.epochs; ++epoch) {
    const double loss = mlp_loss(w, x, y, &grad);
    if (!std::isfinite(loss)) {
      throw Divergence("MLP loss became non-finite at epoch " + std::to_string(epoch + 1) +
                       "; try a smaller learning rate");
    }
    net.loss_history.push_back(loss);
    w.w1 -= lr * grad.w1;
    w.b1 -= lr * grad.b1;
    w.w2 -= lr * grad.w2;
    w.b2 -= lr * grad.b2;
  }
  if (!w.w1.allFinite() || !w.w2.allFinite() || !std::isfinite(w.b2)) {
    throw Divergence("MLP weights became non-finite; try a smaller learning rate");
  }
  return net;
}

}  // namespace sdee::baselines
