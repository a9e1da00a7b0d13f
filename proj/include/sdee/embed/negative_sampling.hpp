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
#include <cmath>

namespace sdee::embed {

template <typename Scalar>
Scalar log_sigmoid(Scalar x) {
  return x >= Scalar(0) ? -std::log1p(std::exp(-x)) : x - std::log1p(std::exp(x));
}

template <typename Scalar>
Scalar sigmoid(Scalar x) {
  if (x >= Scalar(0)) return Scalar(1) / (Scalar(1) + std::exp(-x));
  const Scalar e = std::exp(x);
  return e / (Scalar(1) + e);
}

/// Negative-sampling loss of one (document, word) observation:
///
///   L = -log s(u_0 . d) - sum_{j>=1} log s(-u_j . d)
///
/// where row 0 of `targets` is the observed word's output vector and the
/// remaining rows are the sampled noise words. Gradients with respect to
/// the document vector and each target row are written when requested.
template <typename DocDerived, typename TargetDerived>
typename DocDerived::Scalar negative_sampling_loss(
    const Eigen::MatrixBase<DocDerived>& doc, const Eigen::MatrixBase<TargetDerived>& targets,
    Eigen::Matrix<typename DocDerived::Scalar, Eigen::Dynamic, 1>* grad_doc = nullptr,
    Eigen::Matrix<typename DocDerived::Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>* grad_targets =
        nullptr) {
  using Scalar = typename DocDerived::Scalar;
  const Eigen::Index rows = targets.rows();
  if (grad_doc) grad_doc->setZero(doc.size());
  if (grad_targets) grad_targets->setZero(rows, targets.cols());
  Scalar loss(0);
  for (Eigen::Index j = 0; j < rows; ++j) {
    const Scalar f = targets.row(j).dot(doc.transpose());
    const bool positive = j == 0;
    loss -= positive ? log_sigmoid(f) : log_sigmoid(-f);
    // d(-log s(f))/df = s(f) - 1;  d(-log s(-f))/df = s(f)
    const Scalar g = sigmoid(f) - (positive ? Scalar(1) : Scalar(0));
    if (grad_doc) grad_doc->noalias() += g * targets.row(j).transpose();
    if (grad_targets) grad_targets->row(j) = g * doc.transpose();
  }
  return loss;
}

}  // namespace sdee::embed
