#pragma once

// Operator norm ||T|| and minimum norm m(T) = inf ||Tx|| over the unit sphere.
//
// Closed forms (computed on W T W^{-1}, where the norm is unweighted):
//   diagonal T, any 1-unconditional norm: max / min |d_i|
//   l2: extreme singular values
//   l1: max column sum, l-infinity: max row sum
//   m(T) on l1 / l-infinity: 1 / ||T^{-1}||
// Everything else goes through the multi-start search with grid cross-check.

#include <Eigen/LU>
#include <Eigen/SVD>

#include "crawford/engine.hpp"

namespace crawford {

namespace detail {

struct NormWitness {
    double value;
    CVector y;  // unweighted coordinates of an attaining unit vector
};

inline NormWitness l1_norm_closed(const CMatrix& b) {
    Eigen::Index j = 0;
    const double v = b.cwiseAbs().colwise().sum().maxCoeff(&j);
    CVector y = CVector::Zero(b.cols());
    y(j) = 1.0;
    return {v, y};
}

inline NormWitness linf_norm_closed(const CMatrix& b) {
    Eigen::Index i = 0;
    const double v = b.cwiseAbs().rowwise().sum().maxCoeff(&i);
    CVector y(b.cols());
    for (Eigen::Index j = 0; j < b.cols(); ++j) y(j) = std::conj(unit_phase(b(i, j)));
    return {v, y};
}

inline Vector normalized(const SpaceDescriptor& s, const CVector& y) {
    Vector x = from_unweighted(s, y);
    x.coords /= norm(s, x);
    return x;
}

inline bool real_svd_needed(const Operator& T) { return !T.space.is_complex(); }

struct Singular {
    Eigen::VectorXd values;
    CMatrix v;
};

inline Singular singular(const Operator& T) {
    const CMatrix b = unweighted_matrix(T);
    if (real_svd_needed(T)) {
        Eigen::JacobiSVD<Eigen::MatrixXd> svd(b.real(), Eigen::ComputeFullV);
        return {svd.singularValues(), svd.matrixV().cast<Scalar>()};
    }
    Eigen::JacobiSVD<CMatrix> svd(b, Eigen::ComputeFullV);
    return {svd.singularValues(), svd.matrixV()};
}

}  // namespace detail

inline ComputeResult operator_norm(const Operator& T, const SolveOptions& opt = {}) {
    validate(T.space);
    const SpaceDescriptor& s = T.space;
    const double fast_tol = opt.tol.value_or(kFastPathTol);
    if (opt.strategy == Strategy::grid_oracle) return detail::search_quantity(T, Quantity::opnorm, opt, {}, true);
    if (opt.strategy == Strategy::multistart)
        return detail::search_quantity(T, Quantity::opnorm, opt, detail::spectral_seeds(T));

    if (is_diagonal(T)) {
        Eigen::Index i = 0;
        const double v = T.matrix.diagonal().cwiseAbs().maxCoeff(&i);
        return detail::certify(T, Quantity::opnorm, Vector::basis(s.dim, static_cast<int>(i), 1.0 / s.weight(i)), v,
                               fast_tol, "diagonal");
    }
    if (s.p() == 2.0) {
        const auto sv = detail::singular(T);
        return detail::certify(T, Quantity::opnorm, detail::normalized(s, sv.v.col(0)), sv.values(0), fast_tol, "svd");
    }
    if (s.p() == 1.0) {
        const auto w = detail::l1_norm_closed(unweighted_matrix(T));
        return detail::certify(T, Quantity::opnorm, detail::normalized(s, w.y), w.value, fast_tol, "column_sum");
    }
    if (s.p() == kInfinity) {
        const auto w = detail::linf_norm_closed(unweighted_matrix(T));
        return detail::certify(T, Quantity::opnorm, detail::normalized(s, w.y), w.value, fast_tol, "row_sum");
    }
    return detail::search_quantity(T, Quantity::opnorm, opt, detail::spectral_seeds(T));
}

inline ComputeResult minimum_norm(const Operator& T, const SolveOptions& opt = {}) {
    validate(T.space);
    const SpaceDescriptor& s = T.space;
    const double fast_tol = opt.tol.value_or(kFastPathTol);
    if (opt.strategy == Strategy::grid_oracle) return detail::search_quantity(T, Quantity::minnorm, opt, {}, true);
    if (opt.strategy == Strategy::multistart)
        return detail::search_quantity(T, Quantity::minnorm, opt, detail::spectral_seeds(T));

    if (is_diagonal(T)) {
        Eigen::Index i = 0;
        const double v = T.matrix.diagonal().cwiseAbs().minCoeff(&i);
        return detail::certify(T, Quantity::minnorm, Vector::basis(s.dim, static_cast<int>(i), 1.0 / s.weight(i)), v,
                               fast_tol, "diagonal");
    }
    const auto sv = detail::singular(T);
    const int n = s.dim;
    const double smax = sv.values(0);
    const double smin = sv.values(n - 1);
    if (smin <= 1e-13 * std::max(smax, 1e-300)) {
        // Kernel vector: norm independent.
        const Vector x = detail::normalized(s, sv.v.col(n - 1));
        Objective obj(T, Quantity::minnorm);
        const double v = obj.certify(x).first;
        return detail::certify(T, Quantity::minnorm, x, v, fast_tol, "kernel");
    }
    if (s.p() == 2.0)
        return detail::certify(T, Quantity::minnorm, detail::normalized(s, sv.v.col(n - 1)), smin, fast_tol, "svd");
    if (s.p() == 1.0 || s.p() == kInfinity) {
        const CMatrix inv = unweighted_matrix(T).fullPivLu().inverse();
        const auto w = s.p() == 1.0 ? detail::l1_norm_closed(inv) : detail::linf_norm_closed(inv);
        const CVector y = inv * w.y;
        return detail::certify(T, Quantity::minnorm, detail::normalized(s, y), 1.0 / w.value, fast_tol,
                               s.p() == 1.0 ? "inverse_column_sum" : "inverse_row_sum");
    }
    return detail::search_quantity(T, Quantity::minnorm, opt, detail::spectral_seeds(T));
}

}  // namespace crawford
