#pragma once

// Simultaneous correction of an operator and a near-minimizing state:
//   T_{n+1} = T_n + lambda_{n+1} s_n x_n*(.) x_n,   s_n = eps^{n+1} / 4^{n+1},
//   x_n*(T_n x_n) = -lambda_{n+1} |x_n*(T_n x_n)|,
// with (x_{n+1}, x_{n+1}*) a near-minimizer for c(T_{n+1}) phased so that
// x_{n+1}*(x_n) >= 0. On uniformly convex spaces the states move by at most
// s_n / 4 per step, so everything converges and the limit attains c(S).

#include <cmath>
#include <string>
#include <vector>

#include "crawford/crawford.hpp"

namespace crawford {

struct BpbConfig {
    double eps = 1.0;
    int max_iter = 60;
    double step_tol = 1e-14;
    double inner_tol = 1e-8;
    SolveOptions solve;  // strategy, starts, seed for the inner c computations
};

struct BpbStep {
    int n = 0;
    Scalar lambda = 1.0;      // lambda_{n+1}
    State state;              // (x_n, x_n*)
    double c_estimate = 0.0;  // c(T_n)
    double excess = 0.0;      // |x_n*(T_n x_n)| - c(T_n)
    double step = 0.0;        // s_n
    double op_delta = 0.0;    // ||T_{n+1} - T_n||
    double dx = 0.0;          // ||x_{n+1} - x_n||
    double dxstar = 0.0;      // ||x_{n+1}* - x_n*||
    double slack_x = 0.0;     // allowance over s_n / 4 from measured excesses and inner_tol
    double slack_xstar = 0.0;
};

struct BpbTrace {
    std::vector<BpbStep> steps;
    Operator S;
    State final_state;
    double total_distance = 0.0;  // ||S - T||
    double final_value = 0.0;     // |z*(S z)|
    double final_c = 0.0;         // c(S) computed independently
    double tail = 0.0;            // sum of the steps not taken
    double start_dx = 0.0;        // ||z - x||
    double start_dxstar = 0.0;    // ||z* - x*||
};

/// (eps/4) min{delta_X(eps/4), delta_X*(eps/4)} with the library's modulus lower bounds.
inline double eta(const SpaceDescriptor& s, double eps) {
    if (!s.is_smooth()) throw NotUniformlyConvex();
    if (!(eps > 0.0 && eps <= 8.0)) throw InputError("eta needs eps in (0, 8]");
    const double q = eps / 4.0;
    return q * std::min(modulus_of_convexity(s, q), modulus_of_convexity(dual_space(s), q));
}

namespace detail {

struct Selection {
    State state;
    double c = 0.0;
    double value = 0.0;  // |x*(T x)|
};

/// Near-minimizer of |x*(T x)|: the global certificate, or a local refinement
/// of the previous state when that is within tolerance (keeps the path continuous).
inline Selection select_state(const Operator& T, const State& previous, double tol, const BpbConfig& cfg) {
    SolveOptions so = cfg.solve;
    so.tol = cfg.inner_tol;
    const ComputeResult global = crawford_number(T, so);
    if (global.residual > tol)
        throw NonConvergent("bpb: inner Crawford computation residual " + std::to_string(global.residual) +
                            " exceeds the selection tolerance");
    ComputeResult warm = certify(T, Quantity::crawford, previous.x, global.value, tol, "warm");
    warm = polish(T, Quantity::crawford, warm, so);
    const double c = std::min(global.value, warm.witness_value);
    const bool use_warm = warm.witness_value <= c + tol;
    const ComputeResult& pick = use_warm ? warm : global;
    return {pick.certificate, c, pick.witness_value};
}

}  // namespace detail

inline BpbTrace bpb_refine(const Operator& T, const State& start, const BpbConfig& cfg) {
    const SpaceDescriptor& s = T.space;
    if (!s.is_smooth()) throw NotUniformlyConvex();
    if (!(cfg.eps > 0.0 && cfg.eps < 4.0)) throw InputError("bpb: eps must lie in (0, 4)");
    if (cfg.max_iter < 1) throw InputError("bpb: max_iter must be >= 1");
    if (!(cfg.inner_tol > 0.0) || !(cfg.step_tol > 0.0)) throw InputError("bpb: tolerances must be > 0");
    if (!is_state(s, start, 1e-10)) throw InputError("bpb: start is not a state");
    const SpaceDescriptor ds = dual_space(s);

    SolveOptions so = cfg.solve;
    so.tol = cfg.inner_tol;
    const ComputeResult c0 = crawford_number(T, so);
    const double v0 = std::abs(start.xstar(apply(T, start.x)));
    if (!(v0 < c0.value + eta(s, cfg.eps)))
        throw PreconditionFailed("bpb: start state is not eta-close to c(T)");

    BpbTrace tr;
    Operator Tn = T;
    State xn = start;
    double cn = c0.value;
    double en = v0 - c0.value;
    double sn = cfg.eps / 4.0;
    int n = 0;
    for (; n < cfg.max_iter && sn >= cfg.step_tol; ++n) {
        BpbStep st;
        st.n = n;
        st.state = xn;
        st.c_estimate = cn;
        st.excess = en;
        st.step = sn;
        const Scalar v = xn.xstar(apply(Tn, xn.x));
        st.lambda = v == Scalar(0.0) ? Scalar(1.0) : -detail::unit_phase(v);
        Operator next = rank_one_update(Tn, xn.xstar, xn.x, st.lambda * sn);
        st.op_delta = rank_one_norm(s, xn.xstar, xn.x) * sn;

        const double s_next = sn * cfg.eps / 4.0;
        const double tol_next = std::max(eta(s, std::min(s_next, 2.0)), cfg.inner_tol);
        detail::Selection sel = detail::select_state(next, xn, tol_next, cfg);
        State xnext = sel.state;
        const Scalar align = xnext.xstar(xn.x);
        if (align != Scalar(0.0)) xnext = rotate(xnext, detail::unit_phase(align));
        const double enext = sel.value - sel.c;

        st.dx = norm(s, Vector{xnext.x.coords - xn.x.coords});
        st.dxstar = dual_norm(s, Functional{xnext.xstar.coords - xn.xstar.coords});
        // x_{n+1}*(x_n) >= 1 - d / s_n, from the two-sided estimate of c(T_{n+1}).
        const double d = en + enext + 2.0 * cfg.inner_tol + 2.0 * std::max(0.0, sn - std::abs(v));
        const double midpoint_defect = d / (2.0 * sn);
        st.slack_x = std::max(0.0, modulus_inverse(s, midpoint_defect) - sn / 4.0);
        st.slack_xstar = std::max(0.0, modulus_inverse(ds, midpoint_defect) - sn / 4.0);

        if (st.op_delta > sn + 1e-12)
            throw NonConvergent("bpb: operator step exceeds its bound at n = " + std::to_string(n));
        if (st.dx > sn / 4.0 + st.slack_x + 1e-12 || st.dxstar > sn / 4.0 + st.slack_xstar + 1e-12)
            throw NonConvergent("bpb: state step exceeds its bound at n = " + std::to_string(n));
        tr.steps.push_back(st);

        Tn = std::move(next);
        xn = std::move(xnext);
        cn = sel.c;
        en = enext;
        sn = s_next;
    }

    tr.tail = sn / (1.0 - cfg.eps / 4.0);
    tr.S = Tn;
    tr.final_state = State{xn.x, Functional{xn.xstar.coords / xn.xstar(xn.x)}};
    tr.total_distance = operator_norm(Tn - T, so).value;
    tr.final_value = std::abs(tr.final_state.xstar(apply(Tn, tr.final_state.x)));
    tr.final_c = crawford_number(Tn, so).value;
    tr.start_dx = norm(s, Vector{tr.final_state.x.coords - start.x.coords});
    tr.start_dxstar = dual_norm(s, Functional{tr.final_state.xstar.coords - start.xstar.coords});
    return tr;
}

}  // namespace crawford
