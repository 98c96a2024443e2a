#pragma once

// Brute-force reference computations used to derive expected values. Nothing
// here calls into the library: norms, duality faces and sphere grids are
// written out from their definitions, and extremal values are found by
// enumeration.

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

using cd = std::complex<double>;
using CVec = Eigen::VectorXcd;
using CMat = Eigen::MatrixXcd;

inline constexpr double inf = std::numeric_limits<double>::infinity();

struct Space {
    int n = 2;
    double p = 2.0;
    std::vector<double> w;  // empty: unweighted
    bool complex = false;

    double weight(int i) const { return w.empty() ? 1.0 : w[i]; }
};

inline double lp(const std::vector<double>& a, double p) {
    if (p == inf) return *std::max_element(a.begin(), a.end());
    double s = 0.0;
    for (double v : a) s += std::pow(v, p);
    return std::pow(s, 1.0 / p);
}

inline double norm(const Space& s, const CVec& x) {
    std::vector<double> a(s.n);
    for (int i = 0; i < s.n; ++i) a[i] = s.weight(i) * std::abs(x(i));
    return lp(a, s.p);
}

/// ||f||_* = ||(f_i / w_i)||_q.
inline double dual_norm(const Space& s, const CVec& f) {
    const double q = s.p == 1.0 ? inf : s.p == inf ? 1.0 : s.p / (s.p - 1.0);
    std::vector<double> a(s.n);
    for (int i = 0; i < s.n; ++i) a[i] = std::abs(f(i)) / s.weight(i);
    return lp(a, q);
}

inline cd sgn(cd z) { return std::abs(z) == 0.0 ? cd(0.0) : z / std::abs(z); }

/// Points of a real interval or complex disk of radius r on a k-grid.
inline std::vector<cd> ball_grid(double r, bool complex, int k) {
    std::vector<cd> out;
    if (!complex) {
        for (int j = 0; j <= k; ++j) out.emplace_back(r * (-1.0 + 2.0 * j / k));
        return out;
    }
    out.emplace_back(0.0);
    for (int a = 1; a <= k; ++a)
        for (int b = 0; b < 4 * k; ++b) out.push_back(std::polar(r * a / k, std::numbers::pi * b / (2.0 * k)));
    return out;
}

/// Samples of {f : ||f||_* = 1, f(x) = 1} for unit x, written from the
/// definition of the norm (k controls density on non-singleton faces).
inline std::vector<CVec> face(const Space& s, const CVec& x, int k) {
    const int n = s.n;
    std::vector<CVec> out;
    CVec y(n);
    for (int i = 0; i < n; ++i) y(i) = s.weight(i) * x(i);
    if (s.p > 1.0 && s.p < inf) {
        CVec f(n);
        for (int i = 0; i < n; ++i) f(i) = s.weight(i) * std::conj(sgn(y(i))) * std::pow(std::abs(y(i)), s.p - 1.0);
        out.push_back(f);
        return out;
    }
    if (s.p == 1.0) {
        CVec base(n);
        std::vector<int> freec;
        for (int i = 0; i < n; ++i) {
            if (std::abs(y(i)) > 1e-12) {
                base(i) = s.weight(i) * std::conj(sgn(y(i)));
            } else {
                base(i) = 0.0;
                freec.push_back(i);
            }
        }
        out.push_back(base);
        for (int i : freec) {
            std::vector<CVec> next;
            for (const CVec& f : out)
                for (cd t : ball_grid(s.weight(i), s.complex, k)) {
                    CVec g = f;
                    g(i) = t;
                    next.push_back(g);
                }
            out.swap(next);
        }
        return out;
    }
    std::vector<CVec> ext;
    for (int i = 0; i < n; ++i)
        if (std::abs(y(i)) >= 1.0 - 1e-12) {
            CVec e = CVec::Zero(n);
            e(i) = s.weight(i) * std::conj(sgn(y(i)));
            ext.push_back(e);
        }
    const int m = static_cast<int>(ext.size());
    if (m == 1) return ext;
    // barycentric grid with step 1/k
    std::vector<int> c(m, 0);
    auto rec = [&](auto&& self, int i, int left) -> void {
        if (i == m - 1) {
            c[i] = left;
            CVec f = CVec::Zero(n);
            for (int j = 0; j < m; ++j) f += (static_cast<double>(c[j]) / k) * ext[j];
            out.push_back(f);
            return;
        }
        for (int a = 0; a <= left; ++a) {
            c[i] = a;
            self(self, i + 1, left - a);
        }
    };
    rec(rec, 0, k);
    return out;
}

/// Unit vectors on an angular grid of step pi / res, one representative per
/// scalar-multiple class where the quantities are invariant under it.
inline std::vector<CVec> sphere(const Space& s, int res) {
    const double h = std::numbers::pi / res;
    std::vector<CVec> out;
    auto push = [&](CVec v) {
        v /= norm(s, v);
        out.push_back(v);
        // l-infinity faces are simplices only at corners, which a grid misses: snap nearby ones
        if (s.p == inf) {
            bool moved = false;
            for (int i = 0; i < s.n; ++i) {
                const double y = s.weight(i) * std::abs(v(i));
                if (y < 1.0 && y > 1.0 - 2.0 * h) {
                    v(i) *= 1.0 / y;
                    moved = true;
                }
            }
            if (moved) out.push_back(v);
        }
    };
    if (!s.complex && s.n == 2) {
        for (int a = 0; a < res; ++a) push(CVec{{cd(std::cos(a * h)), cd(std::sin(a * h))}});
    } else if (!s.complex && s.n == 3) {
        for (int a = 0; a <= res; ++a)
            for (int b = 0; b < 2 * res; ++b)
                push(CVec{{cd(std::sin(a * h) * std::cos(b * h)), cd(std::sin(a * h) * std::sin(b * h)),
                           cd(std::cos(a * h))}});
    } else if (s.complex && s.n == 2) {
        for (int a = 0; a <= res / 2; ++a)
            for (int b = 0; b < 2 * res; ++b)
                push(CVec{{cd(std::cos(a * h)), std::polar(std::sin(a * h), b * h)}});
    }
    return out;
}

enum class Q { crawford, radius, minnorm, opnorm };

/// Extremal value by enumeration over the sphere grid and face samples.
inline double brute(const Space& s, const CMat& a, Q q, int res, int face_k = 40) {
    const bool lower = q == Q::crawford || q == Q::minnorm;
    double best = lower ? inf : -inf;
    for (const CVec& x : sphere(s, res)) {
        const CVec tx = a * x;
        double v;
        if (q == Q::minnorm || q == Q::opnorm) {
            v = norm(s, tx);
        } else {
            v = lower ? inf : -inf;
            for (const CVec& f : face(s, x, face_k)) {
                const double m = std::abs(f.cwiseProduct(tx).sum());
                v = lower ? std::min(v, m) : std::max(v, m);
            }
        }
        best = lower ? std::min(best, v) : std::max(best, v);
    }
    return best;
}

/// Field of values of a Hilbert-space matrix sampled directly: x^H A x over the grid.
inline std::vector<cd> numerical_range(const CMat& a, int res) {
    Space s{static_cast<int>(a.rows()), 2.0, {}, true};
    std::vector<cd> out;
    for (const CVec& x : sphere(s, res)) out.push_back(x.dot(a * x));
    return out;
}

/// min and max of a real linear functional over conv(points), by vertex enumeration.
inline std::pair<double, double> lp_range(const std::vector<Eigen::VectorXd>& pts, const Eigen::VectorXd& f) {
    double lo = inf, hi = -inf;
    for (const auto& p : pts) {
        lo = std::min(lo, f.dot(p));
        hi = std::max(hi, f.dot(p));
    }
    return {lo, hi};
}

}  // namespace oracle
