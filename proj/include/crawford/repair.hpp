#pragma once

// Perturbations S of T with ||S - T|| < eps that attain the Crawford number at
// an explicit state:
//   zero         S = T - x0*(T x0) I                 (c(T) < eps)
//   compact      S = T - x0*(.) T x0                 (m(T) < eps)
//   exposing     S = T - lambda z*(.) x0             (c(T) > 0)
// where, for the exposing kind, x0 maximizes |z*(x)| - phi_T(x) over the sphere.

#include <optional>
#include <random>
#include <string>

#include "crawford/crawford.hpp"

namespace crawford {

inline constexpr double kRepairTol = 1e-6;

enum class RepairKind { zero, compact_style, exposing };

inline const char* to_string(RepairKind k) {
    switch (k) {
        case RepairKind::zero:
            return "zero";
        case RepairKind::compact_style:
            return "compactStyle";
        case RepairKind::exposing:
            return "exposing";
    }
    return "?";
}

struct RepairOptions {
    SolveOptions solve;         // used for every inner c, m computation
    double repair_tol = kRepairTol;
    int max_retries = 8;
    std::uint64_t seed = 0;
};

struct RepairOutcome {
    Operator S;
    State certificate;
    double distance = 0.0;          // ||S - T||
    RepairKind kind = RepairKind::zero;
    std::optional<Functional> zstar;
    double certificate_value = 0.0;  // |x0*(S x0)|
    ComputeResult crawford_of_s;     // c(S), computed independently
};

namespace detail {

inline RepairOutcome finish_repair(const Operator& T, Operator S, State cert, RepairKind kind,
                                   std::optional<Functional> zstar, double distance, const RepairOptions& opt) {
    RepairOutcome out{std::move(S), std::move(cert), distance, kind, std::move(zstar), 0.0, {}};
    (void)T;
    out.certificate_value = std::abs(out.certificate.xstar(apply(out.S, out.certificate.x)));
    out.crawford_of_s = crawford_number(out.S, opt.solve);
    return out;
}

inline bool attains(const RepairOutcome& r, double repair_tol) {
    return r.certificate_value <= r.crawford_of_s.value + repair_tol;
}

}  // namespace detail

inline RepairOutcome zero_crawford_repair(const Operator& T, double eps, const RepairOptions& opt = {}) {
    if (!(eps > 0.0)) throw InputError("repair: eps must be > 0");
    const ComputeResult c = crawford_number(T, opt.solve);
    if (c.value >= eps)
        throw PreconditionFailed("zero repair needs c(T) < eps (c(T) = " + std::to_string(c.value) + ")");
    const State& st = c.certificate;
    const Scalar a = st.xstar(apply(T, st.x));
    if (std::abs(a) >= eps) throw AttainmentUnverified("zero repair: certificate value is not below eps");
    Operator S{T.space, T.matrix - a * CMatrix::Identity(T.dim(), T.dim())};
    return detail::finish_repair(T, std::move(S), st, RepairKind::zero, std::nullopt, std::abs(a), opt);
}

inline RepairOutcome compact_style_repair(const Operator& T, double eps, const RepairOptions& opt = {}) {
    if (!(eps > 0.0)) throw InputError("repair: eps must be > 0");
    const ComputeResult m = minimum_norm(T, opt.solve);
    if (m.value >= eps)
        throw PreconditionFailed("compact-style repair needs m(T) < eps (m(T) = " + std::to_string(m.value) + ")");
    const State& st = m.certificate;
    const Vector tx = apply(T, st.x);
    const double distance = rank_one_norm(T.space, st.xstar, tx);
    if (distance >= eps) throw AttainmentUnverified("compact-style repair: ||T x0|| is not below eps");
    Operator S = distance == 0.0 ? T : rank_one_update(T, st.xstar, tx, -1.0);
    return detail::finish_repair(T, std::move(S), st, RepairKind::compact_style, std::nullopt, distance, opt);
}

inline RepairOutcome exposing_repair(const Operator& T, double eps, const RepairOptions& opt = {}) {
    if (!(eps > 0.0)) throw InputError("repair: eps must be > 0");
    const SpaceDescriptor& s = T.space;
    const ComputeResult c = crawford_number(T, opt.solve);
    if (!(c.value > 0.0)) throw PreconditionFailed("exposing repair needs c(T) > 0");
    const SpaceDescriptor ds = dual_space(s);
    const double magnitude = std::min(eps, c.value) / 2.0;
    Objective inner(T, Quantity::crawford);

    for (int attempt = 0; attempt < opt.max_retries; ++attempt) {
        std::mt19937_64 rng(opt.seed + static_cast<std::uint64_t>(attempt));
        Vector dir = random_vector(ds, rng);
        Functional z{dir.coords * (magnitude / norm(ds, dir))};

        const int n = s.dim;
        auto gain = [&](const Scalar* x) {
            Scalar zx = 0.0;
            for (int i = 0; i < n; ++i) zx += z.coords(i) * x[i];
            return std::abs(zx) - inner(x);
        };
        std::vector<Vector> seeds = detail::coordinate_seeds(s);
        seeds.push_back(c.certificate.x);
        if (opt.solve.grid_cross_check && grid_supported(s))
            seeds.push_back(grid_search(s, gain, Extremum::max, opt.solve.grid_resolution, opt.solve.grid_zoom).x);
        SearchOptions so = detail::search_options(opt.solve);
        so.seed = opt.seed + static_cast<std::uint64_t>(attempt);
        const Vector x0 = sphere_search(s, gain, Extremum::max, seeds, so).x;

        const Scalar zx0 = z(x0);
        if (zx0 != Scalar(0.0)) z.coords *= std::conj(detail::unit_phase(zx0));
        auto [value, st] = inner.certify(x0);
        const Scalar tx = st.xstar(apply(T, st.x));
        const Scalar lambda = tx == Scalar(0.0) ? Scalar(1.0) : detail::unit_phase(tx);
        Operator S = rank_one_update(T, z, st.x, -lambda);
        const double distance = rank_one_norm(s, z, st.x);
        RepairOutcome out = detail::finish_repair(T, std::move(S), st, RepairKind::exposing, z, distance, opt);
        if (distance < eps && detail::attains(out, opt.repair_tol)) return out;
    }
    throw AttainmentUnverified("exposing repair: attainment not verified after " + std::to_string(opt.max_retries) +
                               " attempts");
}

/// Zero repair when c(T) < eps/2, exposing repair otherwise.
inline RepairOutcome repair_dispatch(const Operator& T, double eps, const RepairOptions& opt = {}) {
    if (!(eps > 0.0)) throw InputError("repair: eps must be > 0");
    const ComputeResult c = crawford_number(T, opt.solve);
    if (c.value < eps / 2.0) return zero_crawford_repair(T, eps, opt);
    return exposing_repair(T, eps, opt);
}

}  // namespace crawford
