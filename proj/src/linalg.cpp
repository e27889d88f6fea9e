// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The tvisi Authors

#include "tvisi/linalg.hpp"

#include "tvisi/errors.hpp"

#include <algorithm>
#include <cmath>

namespace tvisi {

double log_det_spd(const Matrix& a)
{
    Eigen::LLT<Matrix> llt(a);
    if (llt.info() != Eigen::Success) throw NotPositiveDefinite("log_det_spd: Cholesky factorization failed");
    const auto diag = llt.matrixL().nestedExpression().diagonal();
    double acc = 0.0;
    for (Eigen::Index i = 0; i < diag.size(); ++i) acc += std::log(diag(i));
    return 2.0 * acc;
}

double lambda_min_sym(const Matrix& a)
{
    Eigen::SelfAdjointEigenSolver<Matrix> es(a, Eigen::EigenvaluesOnly);
    return es.eigenvalues()(0);
}

double lambda_max_sym(const Matrix& a)
{
    Eigen::SelfAdjointEigenSolver<Matrix> es(a, Eigen::EigenvaluesOnly);
    return es.eigenvalues()(es.eigenvalues().size() - 1);
}

double operator_norm(const Matrix& a)
{
    if (a.size() == 0) return 0.0;
    const Matrix gram = a.rows() >= a.cols() ? Matrix(a.transpose() * a) : Matrix(a * a.transpose());
    return std::sqrt(std::max(lambda_max_sym(gram), 0.0));
}

Matrix spd_sqrt(const Matrix& a)
{
    Eigen::SelfAdjointEigenSolver<Matrix> es(a);
    const Vector root = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
    return es.eigenvectors() * root.asDiagonal() * es.eigenvectors().transpose();
}

} // namespace tvisi
