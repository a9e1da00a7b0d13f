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

#include "sdee/baselines/atlm.hpp"

#include <Eigen/QR>

namespace sdee::baselines {

namespace {

// Relative pivot threshold below which a scaled column counts as dependent.
constexpr double kRankTolerance = 1e-10;

using MatrixXld = Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic>;
using VectorXld = Eigen::Matrix<long double, Eigen::Dynamic, 1>;

Eigen::Index scaled_rank(const Eigen::MatrixXd& scaled) {
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(scaled);
  qr.setThreshold(kRankTolerance);
  return qr.rank();
}

}  // namespace

double AtlmModel::predict(const Eigen::VectorXd& x) const {
  if (x.size() + 1 != beta.size()) throw InputError("ATLM query has the wrong number of features");
  return beta[0] + beta.tail(x.size()).dot(x);
}

AtlmModel atlm_fit(const Eigen::MatrixXd& x, const Eigen::VectorXd& y, std::vector<std::string> names) {
  const Eigen::Index n = x.rows();
  const Eigen::Index p = x.cols() + 1;
  if (y.size() != n) throw InputError("ATLM: feature rows and targets differ in count");
  if (n < p) throw InputError("ATLM needs at least as many rows as coefficients");
  if (names.empty()) {
    for (Eigen::Index j = 0; j < x.cols(); ++j) names.push_back("x" + std::to_string(j + 1));
  }
  if (static_cast<Eigen::Index>(names.size()) != x.cols()) throw InputError("ATLM: one name per feature column");

  Eigen::MatrixXd design(n, p);
  design.col(0).setOnes();
  design.rightCols(x.cols()) = x;

  // Unit-norm columns make the rank test independent of feature units.
  Eigen::VectorXd scale(p);
  for (Eigen::Index j = 0; j < p; ++j) {
    const double norm = design.col(j).norm();
    if (norm == 0.0) throw SingularFit(static_cast<std::size_t>(j), "column '" + (j == 0 ? std::string("intercept") : names[static_cast<std::size_t>(j - 1)]) + "' is all zero");
    scale[j] = norm;
  }
  const Eigen::MatrixXd scaled = design * scale.cwiseInverse().asDiagonal();

  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(scaled);
  qr.setThreshold(kRankTolerance);
  if (qr.rank() < p) {
    for (Eigen::Index j = 1; j < p; ++j) {
      if (scaled_rank(scaled.leftCols(j + 1)) <= j) {
        throw SingularFit(static_cast<std::size_t>(j), "column '" + names[static_cast<std::size_t>(j - 1)] +
                                                           "' is collinear with the intercept or earlier columns");
      }
    }
    throw SingularFit(static_cast<std::size_t>(p - 1), "design matrix is rank deficient");
  }

  Eigen::VectorXd gamma = qr.solve(y);
  // Refinement against a residual computed in extended precision.
  const MatrixXld design_l = design.cast<long double>();
  const VectorXld y_l = y.cast<long double>();
  auto residual = [&](const Eigen::VectorXd& b) -> VectorXld {
    const VectorXld beta_l = scale.cwiseInverse().cwiseProduct(b).cast<long double>();
    return y_l - design_l * beta_l;
  };
  for (int pass = 0; pass < 2; ++pass) {
    const Eigen::VectorXd r = residual(gamma).cast<double>();
    gamma += qr.solve(r);
  }

  AtlmModel model;
  model.beta = scale.cwiseInverse().cwiseProduct(gamma);
  model.names = std::move(names);
  const VectorXld r = y_l - design_l * model.beta.cast<long double>();
  model.normal_residual = static_cast<double>((design_l.transpose() * r).cwiseAbs().maxCoeff());
  return model;
}

AtlmModel atlm_fit(const FeatureMatrix& train) { return atlm_fit(train.rows, train.targets, train.names); }

}  // namespace sdee::baselines
