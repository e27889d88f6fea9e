// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The tvisi Authors

#pragma once

#include <Eigen/Cholesky>
#include <Eigen/Core>
#include <Eigen/Eigenvalues>

namespace tvisi {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Log-determinant (natural log) of a symmetric positive-definite matrix via Cholesky.
/// Throws NotPositiveDefinite when the factorization fails.
double log_det_spd(const Matrix& a);

/// Smallest / largest eigenvalue of a symmetric matrix.
double lambda_min_sym(const Matrix& a);
double lambda_max_sym(const Matrix& a);

/// Spectral norm ||A||, computed from the largest eigenvalue of the smaller Gram matrix.
double operator_norm(const Matrix& a);

/// Symmetric positive-definite square root U diag(sqrt(d)) U^T.
Matrix spd_sqrt(const Matrix& a);

} // namespace tvisi
