#pragma once

// Support-function sweep of the field of values W(B) = {y^H B y : |y|_2 = 1},
// B = W T W^{-1}. W(B) is convex, so for the complex field
//   nu = max_theta lambda_max(H(e^{i theta} B)),  c = max(0, -min_theta lambda_max(H(e^{i theta} B)))
// with H the Hermitian part. For the real field W(B) is the interval
// [lambda_min, lambda_max] of (B + B^T)/2.

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "crawford/operator.hpp"

namespace crawford {

struct SweepResult {
    double c = 0.0;
    double nu = 0.0;
    std::vector<double> theta;
    std::vector<Scalar> boundary;  // y_theta^H B y_theta for top eigenvectors y_theta
    std::vector<double> support;   // lambda_max(H(e^{i theta} B))
    State c_state;                 // attains c (up to sweep resolution)
    State nu_state;
};

namespace detail {

struct HermitianPart {
    double lmin, lmax;
    CVector vmin, vmax;
};

inline HermitianPart rotated_hermitian(const CMatrix& b, double theta) {
    const CMatrix r = std::polar(1.0, theta) * b;
    Eigen::SelfAdjointEigenSolver<CMatrix> eig((r + r.adjoint()) / 2.0);
    const int n = static_cast<int>(b.rows());
    return {eig.eigenvalues()(0), eig.eigenvalues()(n - 1), eig.eigenvectors().col(0), eig.eigenvectors().col(n - 1)};
}

/// Golden-section maximization of g on [a, b].
template <class G>
double golden_max(G&& g, double a, double b, double tol = 1e-13) {
    const double r = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = b - r * (b - a), x2 = a + r * (b - a);
    double f1 = g(x1), f2 = g(x2);
    while (b - a > tol) {
        if (f1 < f2) {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + r * (b - a);
            f2 = g(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - r * (b - a);
            f1 = g(x1);
        }
    }
    return f1 >= f2 ? x1 : x2;
}

inline State hilbert_state(const SpaceDescriptor& s, const CVector& y) {
    return make_state(s, from_unweighted(s, y));
}

/// Unit y with y^H B y = 0 built from the extreme eigenvectors of H(e^{i theta} B),
/// when lambda_min < 0 < lambda_max and the skew part allows it.
inline bool zero_state(const CMatrix& b, double theta, CVector& y) {
    const CMatrix r = std::polar(1.0, theta) * b;
    const HermitianPart h = rotated_hermitian(b, theta);
    if (!(h.lmin < 0.0 && h.lmax > 0.0)) return false;
    const double a = std::sqrt(h.lmax / (h.lmax - h.lmin));
    const double bb = std::sqrt(-h.lmin / (h.lmax - h.lmin));
    const CMatrix k = (r - r.adjoint()) / Scalar(0.0, 2.0);
    const double k11 = (h.vmin.adjoint() * k * h.vmin)(0).real();
    const double k22 = (h.vmax.adjoint() * k * h.vmax)(0).real();
    const Scalar k12 = (h.vmin.adjoint() * k * h.vmax)(0);
    const double target = -(a * a * k11 + bb * bb * k22) / (2.0 * a * bb);
    if (std::abs(k12) < std::abs(target) - 1e-15) return false;
    const double phi =
        std::abs(k12) > 0.0 ? std::acos(std::clamp(target / std::abs(k12), -1.0, 1.0)) - std::arg(k12) : 0.0;
    y = a * h.vmin + bb * std::polar(1.0, phi) * h.vmax;
    return true;
}

}  // namespace detail

inline SweepResult hilbert_sweep(const Operator& T, int samples = 720) {
    validate(T.space);
    if (!T.space.is_hilbert()) throw InputError("hilbert_sweep needs an L2 space");
    if (samples < 8) throw InputError("hilbert_sweep needs samples >= 8");
    const SpaceDescriptor& s = T.space;
    const CMatrix b = unweighted_matrix(T);
    SweepResult out;
    out.theta.resize(samples);
    out.boundary.resize(samples);
    out.support.resize(samples);
    const double step = 2.0 * std::numbers::pi / samples;

    if (!s.is_complex()) {
        const Eigen::MatrixXd br = b.real();
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig((br + br.transpose()) / 2.0);
        const int n = s.dim;
        const double lmin = eig.eigenvalues()(0), lmax = eig.eigenvalues()(n - 1);
        const CVector vmin = eig.eigenvectors().col(0).cast<Scalar>();
        const CVector vmax = eig.eigenvectors().col(n - 1).cast<Scalar>();
        for (int k = 0; k < samples; ++k) {
            const double t = k * step;
            const double up = std::cos(t) * lmax, down = std::cos(t) * lmin;
            out.theta[k] = t;
            out.support[k] = std::max(up, down);
            out.boundary[k] = up >= down ? lmax : lmin;
        }
        if (lmin > 0.0) {
            out.c = lmin;
            out.c_state = detail::hilbert_state(s, vmin);
        } else if (lmax < 0.0) {
            out.c = -lmax;
            out.c_state = detail::hilbert_state(s, vmax);
        } else {
            out.c = 0.0;
            if (lmax == lmin) {
                out.c_state = detail::hilbert_state(s, vmin);
            } else {
                const double a = std::sqrt(lmax / (lmax - lmin));
                const double bb = std::sqrt(-lmin / (lmax - lmin));
                out.c_state = detail::hilbert_state(s, a * vmin + bb * vmax);
            }
        }
        if (std::abs(lmin) > std::abs(lmax)) {
            out.nu = std::abs(lmin);
            out.nu_state = detail::hilbert_state(s, vmin);
        } else {
            out.nu = std::abs(lmax);
            out.nu_state = detail::hilbert_state(s, vmax);
        }
        return out;
    }

    int kmax = 0, kmin = 0;
    for (int k = 0; k < samples; ++k) {
        const double t = k * step;
        const auto h = detail::rotated_hermitian(b, t);
        out.theta[k] = t;
        out.support[k] = h.lmax;
        out.boundary[k] = (h.vmax.adjoint() * b * h.vmax)(0);
        if (h.lmax > out.support[kmax]) kmax = k;
        if (h.lmax < out.support[kmin]) kmin = k;
    }
    auto top = [&](double t) { return detail::rotated_hermitian(b, t).lmax; };
    const double t_nu = detail::golden_max(top, (kmax - 1) * step, (kmax + 1) * step);
    const auto h_nu = detail::rotated_hermitian(b, t_nu);
    out.nu = std::max(h_nu.lmax, out.support[kmax]);
    out.nu_state = detail::hilbert_state(s, h_nu.lmax >= out.support[kmax]
                                                ? h_nu.vmax
                                                : detail::rotated_hermitian(b, kmax * step).vmax);

    const double t_c = detail::golden_max([&](double t) { return -top(t); }, (kmin - 1) * step, (kmin + 1) * step);
    const auto h_c = detail::rotated_hermitian(b, t_c);
    const double m = std::min(h_c.lmax, out.support[kmin]);
    out.c = std::max(0.0, -m);
    if (out.c > 0.0) {
        out.c_state = detail::hilbert_state(s, h_c.lmax <= out.support[kmin]
                                                   ? h_c.vmax
                                                   : detail::rotated_hermitian(b, kmin * step).vmax);
        return out;
    }
    CVector y;
    bool found = detail::zero_state(b, t_c, y);
    for (int k = 0; !found && k < samples; ++k) found = detail::zero_state(b, out.theta[k], y);
    out.c_state = detail::hilbert_state(s, found ? y : h_c.vmax);
    return out;
}

}  // namespace crawford
