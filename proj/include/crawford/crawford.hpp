#pragma once

// Crawford number c(T) = inf |x*(Tx)| and numerical radius nu(T) = sup |x*(Tx)|
// over states, computed as sphere extrema of the exact inner face extremum.

#include <string>
#include <vector>

#include "crawford/norms.hpp"
#include "crawford/sweep.hpp"

namespace crawford {

/// phi_T(x) = min over the face at x/||x|| of |x*(T(x/||x||))|, divided by ||x||; +inf at 0.
inline double phi(const SpaceDescriptor& s, const Operator& T, const Vector& x) {
    detail::require_dim(s, x.size(), "phi");
    const double nx = norm(s, x);
    if (nx > 1.0 + kStateTol) throw InputError("phi: point outside the closed unit ball");
    if (nx == 0.0) return kInfinity;
    const Vector u{x.coords / nx};
    const FaceDescriptor face = duality_face(s, u);
    return face_extremize_abs(face, apply(T, u), Extremum::min).value / nx;
}

namespace detail {

/// Closed-form Hilbert answer, compared against the coordinate states and
/// polished if the witness does not reproduce the value.
inline ComputeResult sweep_quantity(const Operator& T, Quantity q, const SolveOptions& opt) {
    const double tol = opt.tol.value_or(kFastPathTol);
    const SweepResult sw = hilbert_sweep(T, opt.sweep_samples);
    const bool lower = q == Quantity::crawford;
    const double sweep_value = lower ? sw.c : sw.nu;
    Objective obj(T, q);
    std::vector<Vector> cands = coordinate_seeds(T.space);
    cands.push_back(lower ? sw.c_state.x : sw.nu_state.x);
    std::size_t best = 0;
    double best_w = obj.certify(cands[0]).first;
    for (std::size_t i = 1; i < cands.size(); ++i) {
        const double w = obj.certify(cands[i]).first;
        if (improves(obj.sense(), w, best_w + (lower ? -1e-15 : 1e-15))) {
            best = i;
            best_w = w;
        }
    }
    const double value = lower ? std::min(sweep_value, best_w) : std::max(sweep_value, best_w);
    ComputeResult r = certify(T, q, cands[best], value, tol, "hilbert_sweep");
    if (!r.attained) r = polish(T, q, r, opt);
    return r;
}

/// Diagonal T: x*_i x_i >= 0 with sum 1 on every state of a 1-unconditional
/// norm, and every such weight vector occurs, so the state values fill conv{d_i}.
inline ComputeResult diagonal_quantity(const Operator& T, Quantity q, const SolveOptions& opt) {
    const SpaceDescriptor& s = T.space;
    const int n = s.dim;
    const CVector d = T.matrix.diagonal();
    const double tol = opt.tol.value_or(kFastPathTol);
    if (q == Quantity::radius) {
        Eigen::Index i = 0;
        const double v = d.cwiseAbs().maxCoeff(&i);
        return certify(T, q, Vector::basis(n, static_cast<int>(i), 1.0 / s.weight(i)), v, tol, "diagonal");
    }
    std::vector<double> lambda(n);
    const double v = min_modulus_hull(d.data(), n, lambda.data());
    Vector x = Vector::zero(n);
    for (int i = 0; i < n; ++i) {
        const double l = std::max(lambda[i], 0.0);
        const double y = s.p() == kInfinity ? (l > 0.0 ? 1.0 : 0.0) : std::pow(l, 1.0 / s.p());
        x.coords(i) = y / s.weight(i);
    }
    x.coords /= norm(s, x);
    return certify(T, q, x, v, tol, "diagonal");
}

inline ComputeResult solve_face_quantity(const Operator& T, Quantity q, const SolveOptions& opt) {
    validate(T.space);
    switch (opt.strategy) {
        case Strategy::grid_oracle:
            return search_quantity(T, q, opt, {}, true);
        case Strategy::hilbert_sweep:
            return sweep_quantity(T, q, opt);
        case Strategy::multistart:
            return search_quantity(T, q, opt, spectral_seeds(T));
        case Strategy::automatic:
            break;
    }
    if (q == Quantity::crawford) {
        // Non-injective: any state at a kernel vector gives x*(Tx) = 0.
        const auto sv = singular(T);
        const int n = T.dim();
        if (sv.values(n - 1) <= 1e-13 * std::max(sv.values(0), 1e-300)) {
            const Vector x = normalized(T.space, sv.v.col(n - 1));
            const double v = Objective(T, q).certify(x).first;
            return certify(T, q, x, v, opt.tol.value_or(kFastPathTol), "kernel");
        }
    }
    if (is_diagonal(T)) return diagonal_quantity(T, q, opt);
    if (T.space.is_hilbert()) return sweep_quantity(T, q, opt);
    return search_quantity(T, q, opt, spectral_seeds(T));
}

}  // namespace detail

inline ComputeResult crawford_number(const Operator& T, const SolveOptions& opt = {}) {
    return detail::solve_face_quantity(T, Quantity::crawford, opt);
}

inline ComputeResult numerical_radius(const Operator& T, const SolveOptions& opt = {}) {
    return detail::solve_face_quantity(T, Quantity::radius, opt);
}

inline ComputeResult compute(const Operator& T, Quantity q, const SolveOptions& opt = {}) {
    switch (q) {
        case Quantity::crawford:
            return crawford_number(T, opt);
        case Quantity::radius:
            return numerical_radius(T, opt);
        case Quantity::minnorm:
            return minimum_norm(T, opt);
        case Quantity::opnorm:
            return operator_norm(T, opt);
    }
    throw InputError("unknown quantity");
}

/// Exhaustive angular grid (dim <= 3 real, dim <= 2 complex).
inline double grid_oracle(const Operator& T, Quantity q, int resolution, int zoom = 2) {
    validate(T.space);
    if (!grid_supported(T.space)) throw OracleTooLarge(T.space.dim);
    Objective obj(T, q);
    return grid_search(T.space, [&obj](const Scalar* x) { return obj(x); }, obj.sense(), resolution, zoom).value;
}

struct WitnessMargin {
    int n;  // 1-based
    int k;
    double margin;
};

struct WitnessReport {
    std::vector<WitnessMargin> margins;
    bool all_satisfied = true;
};

/// Finite-prefix check of
///   1 + delta_n |x*_{n+k}(T x_n)| <= |x*_{n+k}(x_n)| + delta_n c + eps_n
/// for every n and every k with n + k inside the prefix; margin = rhs - lhs.
inline WitnessReport witness_check(const Operator& T, const std::vector<State>& states,
                                   const std::vector<double>& deltas, const std::vector<double>& epsilons,
                                   double c_value) {
    const std::size_t len = states.size();
    if (len == 0) throw InputError("witness_check: empty sequence");
    if (deltas.size() != len || epsilons.size() != len) throw DimensionMismatch("witness_check: sequence lengths");
    for (double d : deltas)
        if (!(d > 0.0)) throw InputError("witness_check: deltas must be > 0");
    WitnessReport rep;
    for (std::size_t n = 0; n < len; ++n) {
        const Vector tx = apply(T, states[n].x);
        for (std::size_t m = n; m < len; ++m) {
            const Functional& f = states[m].xstar;
            const double lhs = 1.0 + deltas[n] * std::abs(f(tx));
            const double rhs = std::abs(f(states[n].x)) + deltas[n] * c_value + epsilons[n];
            const double margin = rhs - lhs;
            rep.margins.push_back({static_cast<int>(n + 1), static_cast<int>(m - n), margin});
            if (margin < -1e-10) rep.all_satisfied = false;
        }
    }
    return rep;
}

}  // namespace crawford
