#pragma once

// Minimum-norm points of polytopes given by vertices (Wolfe's algorithm), and
// the perturbation of a linear functional that makes |x*| attain its minimum
// over a polytope C = conv(points) at an explicit point.

#include <Eigen/Dense>
#include <algorithm>
#include <vector>

#include "crawford/space.hpp"

namespace crawford {

using RealVector = Eigen::VectorXd;

struct MinNormPoint {
    RealVector point;
    std::vector<double> weights;  // barycentric, one per input point
};

/// Euclidean minimum-norm point of conv(points).
inline MinNormPoint min_norm_point(const std::vector<RealVector>& points, double tol = 1e-13) {
    if (points.empty()) throw InputError("min_norm_point: no points");
    const int m = static_cast<int>(points.size());
    const int d = static_cast<int>(points[0].size());
    double scale = 0.0;
    for (const auto& p : points) {
        if (p.size() != d) throw DimensionMismatch("min_norm_point: point dimensions");
        scale = std::max(scale, p.squaredNorm());
    }
    int start = 0;
    for (int i = 1; i < m; ++i)
        if (points[i].squaredNorm() < points[start].squaredNorm()) start = i;
    std::vector<int> active{start};
    std::vector<double> lambda{1.0};
    RealVector x = points[start];

    for (int major = 0; major < 50 * m + 50; ++major) {
        int j = 0;
        for (int i = 1; i < m; ++i)
            if (x.dot(points[i]) < x.dot(points[j])) j = i;
        if (x.squaredNorm() - x.dot(points[j]) <= tol * std::max(scale, 1e-300)) break;
        if (std::find(active.begin(), active.end(), j) != active.end()) break;
        active.push_back(j);
        lambda.push_back(0.0);
        for (int minor = 0; minor < 50 * m + 50; ++minor) {
            const int k = static_cast<int>(active.size());
            // Affine minimizer: min |P a| subject to sum a = 1.
            Eigen::MatrixXd kkt = Eigen::MatrixXd::Zero(k + 1, k + 1);
            Eigen::VectorXd rhs = Eigen::VectorXd::Zero(k + 1);
            for (int a = 0; a < k; ++a) {
                for (int b = 0; b < k; ++b) kkt(a, b) = points[active[a]].dot(points[active[b]]);
                kkt(a, k) = kkt(k, a) = 1.0;
            }
            rhs(k) = 1.0;
            const Eigen::VectorXd sol = kkt.completeOrthogonalDecomposition().solve(rhs);
            bool interior = true;
            for (int a = 0; a < k; ++a) interior = interior && sol(a) > tol;
            if (interior) {
                for (int a = 0; a < k; ++a) lambda[a] = sol(a);
                break;
            }
            double theta = 1.0;
            for (int a = 0; a < k; ++a)
                if (sol(a) <= tol && lambda[a] - sol(a) > 0.0) theta = std::min(theta, lambda[a] / (lambda[a] - sol(a)));
            std::vector<int> keep_idx;
            std::vector<double> keep_w;
            for (int a = 0; a < k; ++a) {
                const double w = lambda[a] + theta * (sol(a) - lambda[a]);
                if (w > tol) {
                    keep_idx.push_back(active[a]);
                    keep_w.push_back(w);
                }
            }
            if (keep_idx.empty()) {
                keep_idx.push_back(active.back());
                keep_w.push_back(1.0);
            }
            double total = 0.0;
            for (double w : keep_w) total += w;
            for (double& w : keep_w) w /= total;
            active = keep_idx;
            lambda = keep_w;
        }
        x = RealVector::Zero(d);
        for (std::size_t a = 0; a < active.size(); ++a) x += lambda[a] * points[active[a]];
    }
    MinNormPoint out{x, std::vector<double>(m, 0.0)};
    for (std::size_t a = 0; a < active.size(); ++a) out.weights[active[a]] = lambda[a];
    return out;
}

/// Vertex set of C intersected with {lo <= f <= hi}: vertices inside the slab
/// plus the crossings of every vertex pair with the two bounding planes.
inline std::vector<RealVector> slab_points(const std::vector<RealVector>& points, const RealVector& f, double lo,
                                           double hi) {
    std::vector<RealVector> out;
    std::vector<double> v;
    for (const auto& p : points) v.push_back(f.dot(p));
    for (std::size_t i = 0; i < points.size(); ++i)
        if (v[i] >= lo && v[i] <= hi) out.push_back(points[i]);
    for (double level : {lo, hi}) {
        for (std::size_t i = 0; i < points.size(); ++i)
            for (std::size_t j = i + 1; j < points.size(); ++j) {
                const double a = v[i] - level, b = v[j] - level;
                if ((a < 0.0 && b > 0.0) || (a > 0.0 && b < 0.0)) {
                    const double t = a / (a - b);
                    out.push_back(points[i] + t * (points[j] - points[i]));
                }
            }
        if (lo == hi) break;
    }
    return out;
}

enum class PolytopeCase { contains_origin, touches_zero, perturbed, sign_definite };

struct PolytopeAttainment {
    Functional xstar;
    Vector attain_point;
    double minimum = 0.0;  // min over C of |xstar|, attained at attain_point
    PolytopeCase kind = PolytopeCase::perturbed;
};

namespace detail {

inline RealVector real_part_checked(const CVector& c, const char* what) {
    for (Eigen::Index i = 0; i < c.size(); ++i)
        if (c(i).imag() != 0.0) throw InputError(std::string(what) + ": real field only");
    return c.real();
}

}  // namespace detail

/// For C = conv(points) and a functional x0star, returns xstar with
/// ||xstar - x0star||_2 <= eps such that min_C |xstar| is attained at attain_point.
inline PolytopeAttainment min_attain_polytope(const std::vector<Vector>& points, const Functional& x0star, double eps) {
    if (points.empty()) throw InputError("min_attain_polytope: empty vertex list");
    if (!(eps > 0.0)) throw InputError("min_attain_polytope: eps must be > 0");
    const RealVector f = detail::real_part_checked(x0star.coords, "min_attain_polytope");
    std::vector<RealVector> pts;
    for (const auto& p : points) {
        if (p.size() != f.size()) throw DimensionMismatch("min_attain_polytope: vertex vs functional");
        pts.push_back(detail::real_part_checked(p.coords, "min_attain_polytope"));
    }
    auto as_vector = [](const RealVector& r) { return Vector{r.cast<Scalar>()}; };
    std::vector<double> vals;
    for (const auto& p : pts) vals.push_back(f.dot(p));
    const double lo = *std::min_element(vals.begin(), vals.end());
    const double hi = *std::max_element(vals.begin(), vals.end());

    PolytopeAttainment out;
    out.xstar = x0star;
    if (lo > 0.0 || hi < 0.0) {
        std::size_t k = 0;
        for (std::size_t i = 1; i < vals.size(); ++i)
            if (std::abs(vals[i]) < std::abs(vals[k])) k = i;
        out.attain_point = points[k];
        out.minimum = std::abs(vals[k]);
        out.kind = PolytopeCase::sign_definite;
        return out;
    }
    const MinNormPoint whole = min_norm_point(pts);
    if (whole.point.norm() <= 1e-12 * std::max(1.0, f.norm())) {
        out.attain_point = Vector::zero(static_cast<int>(f.size()));
        out.kind = PolytopeCase::contains_origin;
        return out;
    }
    for (std::size_t i = 0; i < vals.size(); ++i)
        if (vals[i] == 0.0) {
            out.attain_point = points[i];
            out.kind = PolytopeCase::touches_zero;
            return out;
        }

    const MinNormPoint slab = min_norm_point(slab_points(pts, f, -eps, eps));
    const double lambda = slab.point.norm();
    const double fm = f.dot(slab.point);
    RealVector x0 = slab.point;
    if (fm != 0.0) {
        const RealVector xz = min_norm_point(slab_points(pts, f, 0.0, 0.0)).point;
        const double shrink = std::min(1.0, lambda * eps / (2.0 * std::abs(fm)));
        x0 = xz + shrink * (slab.point - xz);
    }
    // z* = x0^T / |x0|_2; x* = f - (z*(.) / z*(x0)) f(x0).
    const RealVector xs = f - x0 * (f.dot(x0) / x0.squaredNorm());
    out.xstar = Functional{xs.cast<Scalar>()};
    out.attain_point = as_vector(x0);
    out.minimum = std::abs(xs.dot(x0));
    out.kind = PolytopeCase::perturbed;
    return out;
}

}  // namespace crawford
