#pragma once

// Norm geometry of finite-dimensional, 1-unconditional sequence spaces:
// (weighted) lp norms over the real or complex field, their duals, duality
// faces, moduli of convexity and sphere sampling.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "crawford/error.hpp"

namespace crawford {

using Scalar = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;

/// Global tolerance for the state invariants ||x|| = ||x*|| = x*(x) = 1.
inline constexpr double kStateTol = 1e-12;
inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

enum class Field { real, complex };
enum class NormKind { lp, weighted_lp };
enum class Extremum { min, max };

/// True when `candidate` beats `incumbent` in the given sense.
inline bool improves(Extremum sense, double candidate, double incumbent) {
    return sense == Extremum::min ? candidate < incumbent : candidate > incumbent;
}

struct NormSpec {
    NormKind kind = NormKind::lp;
    double p = 2.0;
    std::vector<double> weights;  // only for weighted_lp

    friend bool operator==(const NormSpec&, const NormSpec&) = default;
};

/// A finite-dimensional Banach space K^n with ||x|| = ||(w_i x_i)_i||_p.
struct SpaceDescriptor {
    int dim = 1;
    Field field = Field::real;
    NormSpec norm;

    static SpaceDescriptor lp(int dim, double p, Field field = Field::real) {
        return SpaceDescriptor{dim, field, NormSpec{NormKind::lp, p, {}}};
    }
    static SpaceDescriptor weighted_lp(double p, std::vector<double> weights, Field field = Field::real) {
        const int n = static_cast<int>(weights.size());
        return SpaceDescriptor{n, field, NormSpec{NormKind::weighted_lp, p, std::move(weights)}};
    }

    double p() const { return norm.p; }
    double weight(int i) const { return norm.kind == NormKind::weighted_lp ? norm.weights[i] : 1.0; }
    bool is_complex() const { return field == Field::complex; }
    bool is_hilbert() const { return norm.p == 2.0; }
    bool is_smooth() const { return norm.p > 1.0 && norm.p < kInfinity; }

    friend bool operator==(const SpaceDescriptor&, const SpaceDescriptor&) = default;
};

inline void validate(const SpaceDescriptor& s) {
    if (s.dim < 1) throw InputError("space dimension must be >= 1");
    if (!(s.norm.p >= 1.0)) throw InputError("norm exponent p must be >= 1");
    if (s.norm.kind == NormKind::weighted_lp) {
        if (static_cast<int>(s.norm.weights.size()) != s.dim)
            throw DimensionMismatch("weights vs dim");
        for (double w : s.norm.weights)
            if (!(w > 0.0) || !std::isfinite(w)) throw InputError("weights must be finite and > 0");
    }
}

/// Point of the space, in basis coordinates.
struct Vector {
    CVector coords;

    int size() const { return static_cast<int>(coords.size()); }
    static Vector zero(int n) { return Vector{CVector::Zero(n)}; }
    static Vector basis(int n, int i, Scalar s = 1.0) {
        Vector v = zero(n);
        v.coords(i) = s;
        return v;
    }
};

/// Element of the dual; acts by x -> sum_i coords_i x_i (no conjugation).
struct Functional {
    CVector coords;

    int size() const { return static_cast<int>(coords.size()); }
    Scalar operator()(const Vector& x) const {
        if (x.size() != size()) throw DimensionMismatch("functional applied to vector");
        return coords.cwiseProduct(x.coords).sum();
    }
};

/// (x, x*) with ||x|| = ||x*|| = 1 and x*(x) = 1.
struct State {
    Vector x;
    Functional xstar;
};

inline double conjugate_exponent(double p) {
    if (p == 1.0) return kInfinity;
    if (p == kInfinity) return 1.0;
    if (p == 2.0) return 2.0;
    return p / (p - 1.0);
}

inline SpaceDescriptor dual_space(const SpaceDescriptor& s) {
    SpaceDescriptor d = s;
    d.norm.p = conjugate_exponent(s.norm.p);
    for (double& w : d.norm.weights) w = 1.0 / w;
    return d;
}

namespace detail {

inline double lp_of_moduli(const double* a, int n, double p) {
    double m = 0.0;
    for (int i = 0; i < n; ++i) m = std::max(m, a[i]);
    if (p == kInfinity || m == 0.0) return m;
    if (p == 1.0) {
        double s = 0.0;
        for (int i = 0; i < n; ++i) s += a[i];
        return s;
    }
    double s = 0.0;
    if (p == 2.0) {
        for (int i = 0; i < n; ++i) s += (a[i] / m) * (a[i] / m);
        return m * std::sqrt(s);
    }
    for (int i = 0; i < n; ++i) s += std::pow(a[i] / m, p);
    return m * std::pow(s, 1.0 / p);
}

inline double norm_raw(const SpaceDescriptor& s, const Scalar* x, double* moduli) {
    for (int i = 0; i < s.dim; ++i) moduli[i] = s.weight(i) * std::abs(x[i]);
    return lp_of_moduli(moduli, s.dim, s.norm.p);
}

inline Scalar unit_phase(Scalar z) {
    const double a = std::abs(z);
    return a == 0.0 ? Scalar(1.0) : z / a;
}

inline void require_dim(const SpaceDescriptor& s, int n, const char* what) {
    if (n != s.dim) throw DimensionMismatch(what);
}

}  // namespace detail

inline double norm(const SpaceDescriptor& s, const Vector& v) {
    detail::require_dim(s, v.size(), "vector vs space");
    std::vector<double> moduli(s.dim);
    return detail::norm_raw(s, v.coords.data(), moduli.data());
}

/// Norm of a functional in the dual space.
inline double dual_norm(const SpaceDescriptor& s, const Functional& f) {
    return norm(dual_space(s), Vector{f.coords});
}

// ---------------------------------------------------------------------------
// Duality faces
// ---------------------------------------------------------------------------

enum class FaceKind { singleton, box, simplex };

/// Free coordinate of an l1 face: the functional coordinate ranges over the
/// closed interval (real) or disk (complex) of the given radius.
struct FreeCoordinate {
    int index;
    double radius;
};

/// The set {x* : (x, x*) in Pi(X)} for fixed unit x.
///   singleton: {fixed}
///   box:       fixed + sum_j t_j e_j*, |t_j| <= radius_j over the free coordinates
///   simplex:   conv(extremes); fixed holds the uniform combination
struct FaceDescriptor {
    Vector base;
    FaceKind kind = FaceKind::singleton;
    Field field = Field::real;
    Functional fixed;
    std::vector<FreeCoordinate> free;
    std::vector<Functional> extremes;
};

namespace detail {

// Coordinates of y = Wx below this modulus are treated as zero on l1 spheres.
inline constexpr double kSupportTol = 1e-14;
// Coordinates of y within this relative distance of max |y_i| are active on l-infinity spheres.
inline constexpr double kActiveTol = 1e-13;

inline double cross(Scalar a, Scalar b) { return a.real() * b.imag() - a.imag() * b.real(); }

/// Distance from 0 to conv{z_0..z_{k-1}} in the complex plane, with convex
/// weights of a nearest point. Exact up to rounding: 0 lies in the hull iff it
/// lies in a point, segment or triangle (Caratheodory in the plane).
inline double min_modulus_hull(const Scalar* z, int k, double* weights) {
    double best = kInfinity;
    int bi = -1, bj = -1, bl = -1;
    double bt = 0.0, bu = 0.0;
    auto take = [&](double d, int i, int j, int l, double t, double u) {
        if (d < best) {
            best = d;
            bi = i; bj = j; bl = l; bt = t; bu = u;
        }
    };
    for (int i = 0; i < k; ++i) take(std::abs(z[i]), i, -1, -1, 0.0, 0.0);
    for (int i = 0; i < k && best > 0.0; ++i)
        for (int j = i + 1; j < k; ++j) {
            const Scalar d = z[j] - z[i];
            const double dd = std::norm(d);
            if (dd == 0.0) continue;
            const double t = -(z[i].real() * d.real() + z[i].imag() * d.imag()) / dd;
            if (t <= 0.0 || t >= 1.0) continue;
            take(std::abs(z[i] + t * d), i, j, -1, t, 0.0);
        }
    for (int i = 0; i < k && best > 0.0; ++i)
        for (int j = i + 1; j < k; ++j)
            for (int l = j + 1; l < k; ++l) {
                const double D = cross(z[j], z[l]) + cross(z[i], z[j]) + cross(z[l], z[i]);
                if (D == 0.0) continue;
                const double a = cross(z[j], z[l]) / D;
                const double b = cross(z[l], z[i]) / D;
                const double c = cross(z[i], z[j]) / D;
                if (a >= 0.0 && b >= 0.0 && c >= 0.0) take(0.0, i, j, l, b, c);
            }
    if (weights) {
        std::fill(weights, weights + k, 0.0);
        if (bl >= 0) {
            weights[bi] = 1.0 - bt - bu;
            weights[bj] = bt;
            weights[bl] = bu;
        } else if (bj >= 0) {
            weights[bi] = 1.0 - bt;
            weights[bj] = bt;
        } else {
            weights[bi] = 1.0;
        }
    }
    return best;
}

/// Reusable buffers for face_extremum.
struct FaceScratch {
    std::vector<double> moduli;
    std::vector<Scalar> values;
    std::vector<double> weights;
    std::vector<int> index;

    void reserve(int n) {
        moduli.resize(n);
        values.resize(n);
        weights.resize(n);
        index.resize(n);
    }
};

/// Extremum of |x*(v)| over the duality face at unit x, evaluated directly
/// from coordinates. Writes a face element attaining it into `witness` if
/// non-null. Caller guarantees ||x|| = 1.
inline double face_extremum(const SpaceDescriptor& s, const Scalar* x, const Scalar* v, Extremum mode,
                            FaceScratch& sc, Scalar* witness) {
    const int n = s.dim;
    const double p = s.norm.p;
    sc.reserve(n);
    if (s.is_smooth()) {
        Scalar gx = 0.0, gv = 0.0;
        for (int i = 0; i < n; ++i) {
            const double w = s.weight(i);
            const Scalar y = w * x[i];
            const double a = std::abs(y);
            Scalar g = 0.0;
            if (a > 0.0) g = p == 2.0 ? w * std::conj(y) : w * std::conj(y) * std::pow(a, p - 2.0);
            gx += g * x[i];
            gv += g * v[i];
            if (witness) witness[i] = g;
        }
        if (witness)
            for (int i = 0; i < n; ++i) witness[i] /= gx;
        return std::abs(gv / gx);
    }
    if (p == 1.0) {
        Scalar a = 0.0;
        double radius = 0.0;
        for (int i = 0; i < n; ++i) {
            const double w = s.weight(i);
            const Scalar y = w * x[i];
            const double m = std::abs(y);
            if (m > kSupportTol) {
                const Scalar g = w * std::conj(y) / m;
                a += g * v[i];
                if (witness) witness[i] = g;
            } else {
                radius += w * std::abs(v[i]);
                if (witness) witness[i] = 0.0;
            }
        }
        const double am = std::abs(a);
        const Scalar u = unit_phase(a);
        double value, scale;
        Scalar dir;
        if (mode == Extremum::min) {
            value = std::max(0.0, am - radius);
            scale = am >= radius ? 1.0 : am / radius;
            dir = -u;
        } else {
            value = am + radius;
            scale = 1.0;
            dir = u;
        }
        if (witness) {
            for (int i = 0; i < n; ++i) {
                const double w = s.weight(i);
                if (std::abs(w * x[i]) > kSupportTol) continue;
                const double vm = std::abs(v[i]);
                if (vm == 0.0) continue;
                witness[i] = dir * std::conj(v[i]) / vm * (w * scale);
            }
        }
        return value;
    }
    // p = infinity: simplex over the active coordinates.
    const double top = norm_raw(s, x, sc.moduli.data());
    int k = 0;
    for (int i = 0; i < n; ++i) {
        if (sc.moduli[i] >= top * (1.0 - kActiveTol)) {
            const Scalar y = s.weight(i) * x[i];
            sc.values[k] = s.weight(i) * std::conj(y) / std::abs(y) * v[i];
            sc.index[k] = i;
            ++k;
        }
    }
    double value;
    if (mode == Extremum::max) {
        int best = 0;
        for (int j = 1; j < k; ++j)
            if (std::abs(sc.values[j]) > std::abs(sc.values[best])) best = j;
        value = std::abs(sc.values[best]);
        std::fill(sc.weights.begin(), sc.weights.begin() + k, 0.0);
        sc.weights[best] = 1.0;
    } else {
        value = min_modulus_hull(sc.values.data(), k, sc.weights.data());
    }
    if (witness) {
        for (int i = 0; i < n; ++i) witness[i] = 0.0;
        for (int j = 0; j < k; ++j) {
            const int i = sc.index[j];
            const Scalar y = s.weight(i) * x[i];
            witness[i] = sc.weights[j] * s.weight(i) * std::conj(y) / std::abs(y);
        }
    }
    return value;
}

}  // namespace detail

inline void require_unit(const SpaceDescriptor& s, const Vector& x) {
    const double nx = norm(s, x);
    if (std::abs(nx - 1.0) > kStateTol) throw NotOnSphere(nx);
}

/// Exact parametrization of the duality face at a unit vector.
inline FaceDescriptor duality_face(const SpaceDescriptor& s, const Vector& x) {
    require_unit(s, x);
    const int n = s.dim;
    FaceDescriptor face;
    face.base = x;
    face.field = s.field;
    face.fixed = Functional{CVector::Zero(n)};
    if (s.is_smooth()) {
        detail::FaceScratch sc;
        detail::face_extremum(s, x.coords.data(), x.coords.data(), Extremum::min, sc, face.fixed.coords.data());
        face.kind = FaceKind::singleton;
        return face;
    }
    if (s.p() == 1.0) {
        for (int i = 0; i < n; ++i) {
            const Scalar y = s.weight(i) * x.coords(i);
            if (std::abs(y) > detail::kSupportTol)
                face.fixed.coords(i) = s.weight(i) * std::conj(y) / std::abs(y);
            else
                face.free.push_back({i, s.weight(i)});
        }
        face.kind = face.free.empty() ? FaceKind::singleton : FaceKind::box;
        return face;
    }
    std::vector<double> moduli(n);
    const double top = detail::norm_raw(s, x.coords.data(), moduli.data());
    for (int i = 0; i < n; ++i) {
        if (moduli[i] < top * (1.0 - detail::kActiveTol)) continue;
        const Scalar y = s.weight(i) * x.coords(i);
        face.extremes.push_back(Functional{CVector::Zero(n)});
        face.extremes.back().coords(i) = s.weight(i) * std::conj(y) / std::abs(y);
    }
    for (const auto& e : face.extremes) face.fixed.coords += e.coords / static_cast<double>(face.extremes.size());
    face.kind = face.extremes.size() == 1 ? FaceKind::singleton : FaceKind::simplex;
    return face;
}

struct FaceExtremum {
    double value;
    Functional witness;
};

/// Extremum of |x*(y)| over the face, with a face element attaining it.
inline FaceExtremum face_extremize_abs(const FaceDescriptor& face, const Vector& y, Extremum mode) {
    const int n = face.fixed.size();
    if (y.size() != n) throw DimensionMismatch("face vs vector");
    switch (face.kind) {
        case FaceKind::singleton:
            return {std::abs(face.fixed(y)), face.fixed};
        case FaceKind::box: {
            const Scalar a = face.fixed(y);
            double radius = 0.0;
            for (const auto& f : face.free) radius += f.radius * std::abs(y.coords(f.index));
            const double am = std::abs(a);
            Functional w = face.fixed;
            double value, scale;
            Scalar dir = detail::unit_phase(a);
            if (mode == Extremum::min) {
                value = std::max(0.0, am - radius);
                scale = am >= radius ? 1.0 : am / radius;
                dir = -dir;
            } else {
                value = am + radius;
                scale = 1.0;
            }
            for (const auto& f : face.free) {
                const Scalar yi = y.coords(f.index);
                if (std::abs(yi) == 0.0) continue;
                w.coords(f.index) = dir * std::conj(yi) / std::abs(yi) * (f.radius * scale);
            }
            return {value, w};
        }
        case FaceKind::simplex: {
            const int k = static_cast<int>(face.extremes.size());
            std::vector<Scalar> z(k);
            for (int j = 0; j < k; ++j) z[j] = face.extremes[j](y);
            std::vector<double> weights(k, 0.0);
            double value;
            if (mode == Extremum::max) {
                int best = 0;
                for (int j = 1; j < k; ++j)
                    if (std::abs(z[j]) > std::abs(z[best])) best = j;
                value = std::abs(z[best]);
                weights[best] = 1.0;
            } else {
                value = detail::min_modulus_hull(z.data(), k, weights.data());
            }
            Functional w{CVector::Zero(n)};
            for (int j = 0; j < k; ++j) w.coords += weights[j] * face.extremes[j].coords;
            return {value, w};
        }
    }
    return {0.0, face.fixed};
}

/// (x/||x||, canonical face element): the singleton, the zero-filled fixed
/// part (p = 1), or the uniform simplex combination (p = infinity).
inline State make_state(const SpaceDescriptor& s, const Vector& x) {
    const double nx = norm(s, x);
    if (!(nx > 0.0)) throw InputError("make_state: zero vector");
    Vector u{x.coords / nx};
    Functional f = duality_face(s, u).fixed;
    const Scalar fx = f(u);
    f.coords /= fx;
    return State{std::move(u), std::move(f)};
}

/// Largest deviation from the state invariants.
inline double state_defect(const SpaceDescriptor& s, const State& st) {
    return std::max({std::abs(norm(s, st.x) - 1.0), std::abs(dual_norm(s, st.xstar) - 1.0),
                     std::abs(st.xstar(st.x) - 1.0)});
}

inline bool is_state(const SpaceDescriptor& s, const State& st, double tol = kStateTol) {
    return state_defect(s, st) <= tol;
}

/// Multiplies the pair by a common phase: (u x, conj(u) x*) keeps x*(x).
inline State rotate(const State& st, Scalar u) {
    return State{Vector{st.x.coords * u}, Functional{st.xstar.coords * std::conj(u)}};
}

/// Phase making the first coordinate of significant modulus real and positive.
inline Scalar canonical_phase(const Vector& x) {
    const double top = x.coords.cwiseAbs().maxCoeff();
    for (int i = 0; i < x.size(); ++i)
        if (std::abs(x.coords(i)) > 1e-9 * top) return std::conj(detail::unit_phase(x.coords(i)));
    return 1.0;
}

// ---------------------------------------------------------------------------
// Moduli of convexity
// ---------------------------------------------------------------------------

/// A lower bound for delta_X(eps): exact for p >= 2 (Clarkson), (p-1) eps^2/8 for 1 < p < 2.
inline double modulus_of_convexity(const SpaceDescriptor& s, double eps) {
    if (!s.is_smooth()) throw NotUniformlyConvex();
    if (!(eps > 0.0 && eps <= 2.0)) throw InputError("modulus of convexity needs eps in (0, 2]");
    const double p = s.p();
    if (p == 2.0) return 1.0 - std::sqrt(1.0 - eps * eps / 4.0);
    if (p > 2.0) return 1.0 - std::pow(1.0 - std::pow(eps / 2.0, p), 1.0 / p);
    return (p - 1.0) * eps * eps / 8.0;
}

/// Inverse of modulus_of_convexity: the eps with delta(eps) = d, clamped to 2.
/// If x, y are unit and ||(x+y)/2|| >= 1 - d then ||x - y|| <= this value.
inline double modulus_inverse(const SpaceDescriptor& s, double d) {
    if (!s.is_smooth()) throw NotUniformlyConvex();
    if (d <= 0.0) return 0.0;
    const double p = s.p();
    if (d >= modulus_of_convexity(s, 2.0)) return 2.0;
    double eps;
    if (p == 2.0)
        eps = 2.0 * std::sqrt(1.0 - (1.0 - d) * (1.0 - d));
    else if (p > 2.0)
        eps = 2.0 * std::pow(1.0 - std::pow(1.0 - d, p), 1.0 / p);
    else
        eps = std::sqrt(8.0 * d / (p - 1.0));
    return std::min(2.0, eps);
}

// ---------------------------------------------------------------------------
// Sampling
// ---------------------------------------------------------------------------

inline Vector random_vector(const SpaceDescriptor& s, std::mt19937_64& rng) {
    std::normal_distribution<double> normal;
    Vector v = Vector::zero(s.dim);
    for (int i = 0; i < s.dim; ++i) {
        const double re = normal(rng);
        const double im = s.is_complex() ? normal(rng) : 0.0;
        v.coords(i) = Scalar(re, im);
    }
    return v;
}

/// Random unimodular scalar of the field (a sign for real spaces).
inline Scalar random_phase(Field field, std::mt19937_64& rng) {
    if (field == Field::real) return std::bernoulli_distribution(0.5)(rng) ? 1.0 : -1.0;
    return std::polar(1.0, std::uniform_real_distribution<double>(0.0, 2.0 * M_PI)(rng));
}

/// `count` unit vectors; the batch starts with e1, -e1, e2, -e2, ... (scaled to
/// the sphere) and continues with normalized Gaussian directions.
inline std::vector<Vector> sample_sphere(const SpaceDescriptor& s, std::uint64_t seed, int count) {
    validate(s);
    if (count < 1) throw InputError("sample_sphere: count must be >= 1");
    std::vector<Vector> out;
    out.reserve(count);
    for (int i = 0; i < s.dim && static_cast<int>(out.size()) < count; ++i) {
        out.push_back(Vector::basis(s.dim, i, 1.0 / s.weight(i)));
        if (static_cast<int>(out.size()) < count) out.push_back(Vector::basis(s.dim, i, -1.0 / s.weight(i)));
    }
    std::mt19937_64 rng(seed);
    while (static_cast<int>(out.size()) < count) {
        Vector v = random_vector(s, rng);
        const double nv = norm(s, v);
        if (nv == 0.0) continue;
        v.coords /= nv;
        out.push_back(std::move(v));
    }
    return out;
}

}  // namespace crawford
