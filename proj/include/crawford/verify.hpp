#pragma once

// Invariant catalog run over seeded random instances. Every check reports a
// margin (allowed - observed); negative margins are failures and are dumped
// with the seed that regenerates the instance.

#include <Eigen/QR>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "crawford/io.hpp"

namespace crawford {

struct VerifyConfig {
    std::vector<int> dims{2, 3};
    std::vector<double> ps{1.0, 1.5, 2.0, 3.0, kInfinity};
    std::vector<Field> fields{Field::real, Field::complex};
    int instances = 200;
    int repair_instances = 100;
    int bpb_instances = 50;
    std::uint64_t seed = 0;
    bool planted_bug = false;           // negates the Lipschitz check (harness self-test)
    std::optional<std::string> only;   // run a single invariant
    std::optional<int> instance;       // run a single instance index
};

struct FailureDump {
    std::string invariant;
    int instance = 0;
    std::uint64_t seed = 0;
    double margin = 0.0;
    io::json detail;
};

struct InvariantSummary {
    std::string name;
    std::string module;
    int passed = 0;
    int failed = 0;
    int errors = 0;
    double worst_margin = kInfinity;
    std::vector<FailureDump> failures;
};

struct VerifyReport {
    std::vector<InvariantSummary> invariants;
    std::vector<std::string> warnings;
    bool all_passed = true;
};

namespace detail {

inline std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

inline std::uint64_t instance_seed(std::uint64_t base, const std::string& name, int i) {
    return base ^ (fnv1a(name) + 0x9e3779b97f4a7c15ULL * static_cast<std::uint64_t>(i + 1));
}

struct Instance {
    std::mt19937_64 rng;
    const VerifyConfig* cfg;
    io::json detail = io::json::object();

    template <class T>
    const T& pick(const std::vector<T>& v) {
        return v[std::uniform_int_distribution<std::size_t>(0, v.size() - 1)(rng)];
    }
    double uniform(double a, double b) { return std::uniform_real_distribution<double>(a, b)(rng); }

    SpaceDescriptor space(bool allow_weights = true) {
        const int n = pick(cfg->dims);
        const double p = pick(cfg->ps);
        const Field f = pick(cfg->fields);
        SpaceDescriptor s = SpaceDescriptor::lp(n, p, f);
        if (allow_weights && std::bernoulli_distribution(0.3)(rng)) {
            std::vector<double> w;
            for (int i = 0; i < n; ++i) w.push_back(uniform(0.5, 2.0));
            s = SpaceDescriptor::weighted_lp(p, w, f);
        }
        detail["space"] = io::space_to_json(s);
        return s;
    }

    CMatrix matrix(const SpaceDescriptor& s, double scale = 1.0) {
        std::normal_distribution<double> g;
        CMatrix m(s.dim, s.dim);
        for (int i = 0; i < s.dim; ++i)
            for (int j = 0; j < s.dim; ++j) m(i, j) = Scalar(g(rng), s.is_complex() ? g(rng) : 0.0) * scale;
        return m;
    }

    /// Gaussian operator, shifted by a multiple of the identity half of the time
    /// so that both c = 0 and c > 0 regimes occur.
    Operator op(const SpaceDescriptor& s, const char* key = "operator") {
        CMatrix m = matrix(s, 1.0 / std::sqrt(static_cast<double>(s.dim)));
        if (std::bernoulli_distribution(0.5)(rng)) m += uniform(1.0, 3.0) * CMatrix::Identity(s.dim, s.dim);
        Operator T{s, m};
        detail[key] = io::operator_to_json(T);
        return T;
    }

    Vector unit(const SpaceDescriptor& s) {
        Vector v = random_vector(s, rng);
        v.coords /= norm(s, v);
        return v;
    }

    Functional sample_face(const FaceDescriptor& face) {
        Functional w = face.fixed;
        if (face.kind == FaceKind::box) {
            for (const auto& f : face.free) {
                const double r = f.radius * std::sqrt(uniform(0.0, 1.0));
                w.coords(f.index) = r * random_phase(face.field, rng);
            }
        } else if (face.kind == FaceKind::simplex) {
            std::exponential_distribution<double> e;
            std::vector<double> a;
            double total = 0.0;
            for (std::size_t j = 0; j < face.extremes.size(); ++j) total += a.emplace_back(e(rng));
            w.coords.setZero();
            for (std::size_t j = 0; j < face.extremes.size(); ++j) w.coords += (a[j] / total) * face.extremes[j].coords;
        }
        return w;
    }
};

using Check = std::function<double(Instance&)>;

struct Invariant {
    std::string name;
    std::string module;
    int count;
    Check check;
};

inline SolveOptions quick() {
    SolveOptions o;
    o.grid_cross_check = false;
    return o;
}

inline double search_tol(const SpaceDescriptor& s) { return s.is_hilbert() ? kFastPathTol : kMultistartTol; }

inline std::vector<Invariant> catalog(const VerifyConfig& cfg) {
    const int N = cfg.instances, R = cfg.repair_instances, B = cfg.bpb_instances;
    const bool planted = cfg.planted_bug;
    std::vector<Invariant> v;

    // space
    v.push_back({"holder", "space", N, [](Instance& in) {
                     const SpaceDescriptor s = in.space();
                     const Vector x = in.unit(s);
                     Vector f = in.unit(dual_space(s));
                     return 1.0 + 1e-10 - std::abs(Functional{f.coords}(x));
                 }});
    v.push_back({"make_state", "space", N, [](Instance& in) {
                     const SpaceDescriptor s = in.space();
                     return kStateTol - state_defect(s, make_state(s, random_vector(s, in.rng)));
                 }});
    v.push_back({"unconditional", "space", N, [](Instance& in) {
                     const SpaceDescriptor s = in.space();
                     const Vector x = in.unit(s);
                     Vector y = x;
                     for (int i = 0; i < s.dim; ++i) y.coords(i) *= random_phase(s.field, in.rng);
                     return 1e-12 - std::abs(norm(s, y) - 1.0);
                 }});
    v.push_back({"coordinate_positivity", "space", N, [](Instance& in) {
                     const SpaceDescriptor s = in.space();
                     Vector x = in.unit(s);
                     // Land on faces with structure half of the time.
                     if (std::bernoulli_distribution(0.5)(in.rng)) {
                         x.coords(0) = 0.0;
                         if (s.dim > 2) x.coords(1) = x.coords(2);
                         if (norm(s, x) == 0.0) x.coords(s.dim - 1) = 1.0;
                         x.coords /= norm(s, x);
                     }
                     const FaceDescriptor face = duality_face(s, x);
                     double worst = kInfinity;
                     for (int k = 0; k < 8; ++k) {
                         const Functional w = k == 0 ? make_state(s, x).xstar : in.sample_face(face);
                         for (int i = 0; i < s.dim; ++i) worst = std::min(worst, (w.coords(i) * x.coords(i)).real());
                     }
                     return worst + 1e-10;
                 }});
    v.push_back({"face_membership", "space", N, [](Instance& in) {
                     const SpaceDescriptor s = in.space();
                     Vector x = in.unit(s);
                     if (std::bernoulli_distribution(0.5)(in.rng) && s.dim > 1) {
                         x.coords(s.dim - 1) = 0.0;
                         x.coords /= norm(s, x);
                     }
                     const FaceDescriptor face = duality_face(s, x);
                     double worst = 0.0;
                     for (int k = 0; k < 8; ++k) {
                         const Functional w = in.sample_face(face);
                         worst = std::max({worst, std::abs(dual_norm(s, w) - 1.0), std::abs(w(x) - 1.0)});
                     }
                     return 1e-10 - worst;
                 }});

    // oper
    v.push_back({"dual_norm_identity", "oper", N, [](Instance& in) {
                     const SpaceDescriptor s = in.space();
                     const Operator T = in.op(s);
                     const double a = operator_norm(T, quick()).value;
                     const double b = operator_norm(adjoint(T), quick()).value;
                     return 2.0 * kMultistartTol * std::max(1.0, a) - std::abs(a - b);
                 }});
    v.push_back({"minnorm_le_opnorm", "oper", N, [](Instance& in) {
                     const SpaceDescriptor s = in.space();
                     const Operator T = in.op(s);
                     return operator_norm(T, quick()).value - minimum_norm(T, quick()).value + 2.0 * kMultistartTol;
                 }});
    v.push_back({"rank_deficient_minnorm", "oper", N, [](Instance& in) {
                     const SpaceDescriptor s = in.space();
                     CMatrix m = in.matrix(s);
                     const int k = std::uniform_int_distribution<int>(0, s.dim - 1)(in.rng);
                     m.col(k) = m.col((k + 1) % s.dim) * Scalar(in.uniform(-2.0, 2.0));
                     if (s.dim == 1) m.setZero();
                     const Operator T{s, m};
                     in.detail["operator"] = io::operator_to_json(T);
                     return kMultistartTol - minimum_norm(T, quick()).value;
                 }});
    v.push_back({"l2_fast_path_vs_grid", "oper", N, [](Instance& in) {
                     SpaceDescriptor s = in.space(false);
                     s = SpaceDescriptor::lp(std::min(s.dim, s.is_complex() ? 2 : 3), 2.0, s.field);
                     const Operator T = in.op(s);
                     const double a = operator_norm(T).value, b = minimum_norm(T).value;
                     const double ga = grid_oracle(T, Quantity::opnorm, 200), gb = grid_oracle(T, Quantity::minnorm, 200);
                     return 1e-3 - std::max(std::abs(a - ga), std::abs(b - gb));
                 }});

    // crawford
    v.push_back({"ordering", "crawford", N, [](Instance& in) {
                     const SpaceDescriptor s = in.space();
                     const Operator T = in.op(s);
                     const double c = crawford_number(T, quick()).value, nu = numerical_radius(T, quick()).value;
                     const double nm = operator_norm(T, quick()).value, m = minimum_norm(T, quick()).value;
                     const double t = 2.0 * kMultistartTol;
                     return std::min({nu - c, nm - nu, m - c, nm - m}) + t;
                 }});
    v.push_back({"adjoint_identity", "crawford", N, [](Instance& in) {
                     const SpaceDescriptor s = in.space();
                     const Operator T = in.op(s);
                     const double a = crawford_number(T, quick()).value;
                     const double b = crawford_number(adjoint(T), quick()).value;
                     return std::max(2.0 * kMultistartTol, 1e-3) - std::abs(a - b);
                 }});
    v.push_back({"lipschitz", "crawford", N, [planted](Instance& in) {
                     const SpaceDescriptor s = in.space();
                     const Operator T = in.op(s);
                     const Operator E{s, in.matrix(s, in.uniform(0.01, 0.5))};
                     in.detail["perturbation"] = io::operator_to_json(E);
                     const double e = operator_norm(E, quick()).value + 2.0 * kMultistartTol;
                     double worst = kInfinity;
                     for (Quantity q : {Quantity::crawford, Quantity::radius, Quantity::minnorm}) {
                         const double d = std::abs(compute(T + E, q, quick()).value - compute(T, q, quick()).value);
                         worst = std::min(worst, planted ? d - e : e - d);
                     }
                     return worst;
                 }});
    v.push_back({"homogeneity", "crawford", N, [](Instance& in) {
                     const SpaceDescriptor s = in.space();
                     const Operator T = in.op(s);
                     const Scalar a = in.uniform(0.2, 3.0) * random_phase(s.field, in.rng);
                     const double c = crawford_number(T, quick()).value;
                     const double ca = crawford_number(a * T, quick()).value;
                     return kMultistartTol * std::max(1.0, std::abs(a)) - std::abs(ca - std::abs(a) * c);
                 }});
    v.push_back({"attainment", "crawford", N, [](Instance& in) {
                     const SpaceDescriptor s = in.space();
                     const Operator T = in.op(s);
                     const ComputeResult r = crawford_number(T, quick());
                     const double state = kStateTol * 10 - state_defect(s, r.certificate);
                     return std::min(search_tol(s) - r.residual, state);
                 }});
    v.push_back({"non_injective_attains_zero", "crawford", N, [](Instance& in) {
                     const SpaceDescriptor s = in.space();
                     CMatrix m = in.matrix(s);
                     const int k = std::uniform_int_distribution<int>(0, s.dim - 1)(in.rng);
                     m.col(k).setZero();
                     const Operator T{s, m};
                     in.detail["operator"] = io::operator_to_json(T);
                     const ComputeResult r = crawford_number(T, quick());
                     const double tol = search_tol(s);
                     return std::min({tol - r.value, tol - r.residual, tol - r.witness_value});
                 }});
    v.push_back({"unitary_invariance", "crawford", N, [](Instance& in) {
                     SpaceDescriptor s = in.space(false);
                     s = SpaceDescriptor::lp(s.dim, 2.0, s.field);
                     const Operator T = in.op(s);
                     const CMatrix q = Eigen::HouseholderQR<CMatrix>(in.matrix(s)).householderQ();
                     const Operator U{s, q.adjoint() * T.matrix * q};
                     return 2.0 * kFastPathTol - std::abs(crawford_number(U).value - crawford_number(T).value);
                 }});
    v.push_back({"truncation_bound", "crawford", N, [](Instance& in) {
                     const int n = std::uniform_int_distribution<int>(2, 20)(in.rng);
                     double p = in.pick(in.cfg->ps);
                     if (p == 1.0 || p == kInfinity) p = 2.0;
                     std::vector<double> w;
                     for (int i = 0; i < n; ++i) w.push_back(in.uniform(0.5, 2.0));
                     const SpaceDescriptor s = SpaceDescriptor::weighted_lp(p, w);
                     in.detail["space"] = io::space_to_json(s);
                     CMatrix d = CMatrix::Zero(n, n);
                     for (int i = 0; i < n; ++i) d(i, i) = 1.0 / (i + 1);
                     double worst = kInfinity;
                     for (int k = 0; k < n; ++k) {
                         CMatrix tk = d;
                         tk.bottomRightCorner(n - k, n - k).setZero();
                         const double gap = operator_norm(Operator{s, d - tk}).value;
                         worst = std::min(worst, 2.0 / (k + 1) + 1e-9 - gap);
                     }
                     return worst;
                 }});

    // repair
    auto repair_check = [](Instance& in, RepairKind kind) {
        const SpaceDescriptor s = in.space();
        const double eps = in.uniform(0.05, 1.0);
        in.detail["eps"] = eps;
        RepairOptions ro;
        ro.solve = quick();
        ro.seed = in.rng();
        Operator T{s, in.matrix(s, 1.0 / std::sqrt(static_cast<double>(s.dim)))};
        RepairOutcome r;
        if (kind == RepairKind::zero) {
            const double c = crawford_number(T, quick()).value;
            if (c >= eps) T = Operator{s, T.matrix * (0.5 * eps / c)};
            in.detail["operator"] = io::operator_to_json(T);
            r = zero_crawford_repair(T, eps, ro);
        } else if (kind == RepairKind::compact_style) {
            const double m = minimum_norm(T, quick()).value;
            if (m >= eps) T = Operator{s, T.matrix * (0.5 * eps / m)};
            in.detail["operator"] = io::operator_to_json(T);
            r = compact_style_repair(T, eps, ro);
        } else {
            T = Operator{s, T.matrix * 0.3 + CMatrix::Identity(s.dim, s.dim)};
            in.detail["operator"] = io::operator_to_json(T);
            r = exposing_repair(T, eps, ro);
        }
        const double dist = operator_norm(r.S - T, quick()).value;
        double margin = std::min(eps - dist, r.crawford_of_s.value + kRepairTol - r.certificate_value);
        if (kind != RepairKind::exposing) margin = std::min(margin, 1e-12 - r.certificate_value);
        else margin = std::min(margin, std::min(eps, crawford_number(T, quick()).value) - dual_norm(s, *r.zstar));
        return margin;
    };
    v.push_back({"repair_zero", "repair", R, [=](Instance& in) { return repair_check(in, RepairKind::zero); }});
    v.push_back({"repair_compact", "repair", R,
                 [=](Instance& in) { return repair_check(in, RepairKind::compact_style); }});
    v.push_back({"repair_exposing", "repair", R,
                 [=](Instance& in) { return repair_check(in, RepairKind::exposing); }});
    v.push_back({"repair_idempotence", "repair", R, [](Instance& in) {
                     const SpaceDescriptor s = in.space();
                     const double eps = in.uniform(0.05, 1.0);
                     in.detail["eps"] = eps;
                     RepairOptions ro;
                     ro.solve = quick();
                     Operator T{s, in.matrix(s, 1.0 / std::sqrt(static_cast<double>(s.dim)))};
                     const double c = crawford_number(T, quick()).value;
                     if (c >= eps / 2.0) T = Operator{s, T.matrix * (0.25 * eps / c)};
                     in.detail["operator"] = io::operator_to_json(T);
                     const RepairOutcome first = repair_dispatch(T, eps, ro);
                     const RepairOutcome second = repair_dispatch(first.S, eps, ro);
                     return kRepairTol - second.distance;
                 }});
    v.push_back({"polytope_attainment", "repair", R, [](Instance& in) {
                     const int d = std::uniform_int_distribution<int>(1, 3)(in.rng);
                     const int k = std::uniform_int_distribution<int>(1, 6)(in.rng);
                     const SpaceDescriptor s = SpaceDescriptor::lp(d, 2.0);
                     const Vector shift = random_vector(s, in.rng);
                     std::vector<Vector> pts;
                     io::json vj = io::json::array();
                     for (int i = 0; i < k; ++i) {
                         pts.push_back(Vector{random_vector(s, in.rng).coords * 0.7 + shift.coords * 1.5});
                         vj.push_back(io::coords_to_json(pts.back().coords, Field::real));
                     }
                     const Functional f{random_vector(s, in.rng).coords};
                     const double eps = in.uniform(0.05, 1.0);
                     in.detail["vertices"] = vj;
                     in.detail["functional"] = io::coords_to_json(f.coords, Field::real);
                     in.detail["eps"] = eps;
                     const PolytopeAttainment a = min_attain_polytope(pts, f, eps);
                     double lo = kInfinity, hi = -kInfinity;
                     for (const auto& p : pts) {
                         const double val = a.xstar(p).real();
                         lo = std::min(lo, val);
                         hi = std::max(hi, val);
                     }
                     const double min_abs = lo <= 0.0 && hi >= 0.0 ? 0.0 : std::min(std::abs(lo), std::abs(hi));
                     const double at = std::abs(a.xstar(a.attain_point));
                     std::vector<RealVector> shifted;
                     for (const auto& p : pts) shifted.push_back((p.coords - a.attain_point.coords).real());
                     const double inside = min_norm_point(shifted).point.norm();
                     const double pert = (a.xstar.coords - f.coords).norm();
                     return std::min({1e-9 - std::abs(at - min_abs), 1e-9 - inside, eps - pert});
                 }});

    // bpb
    v.push_back({"bpb_bounds", "bpb", B, [](Instance& in) {
                     const int n = 2;
                     const double p = in.pick(std::vector<double>{1.5, 2.0, 3.0});
                     const Field f = in.pick(in.cfg->fields);
                     const SpaceDescriptor s = SpaceDescriptor::lp(n, p, f);
                     in.detail["space"] = io::space_to_json(s);
                     const double eps = in.pick(std::vector<double>{0.5, 1.0, 2.0});
                     in.detail["eps"] = eps;
                     CMatrix m = in.matrix(s, 0.07);
                     m += CMatrix::Identity(n, n);
                     const Operator T{s, (1.0 + eps) * m};
                     in.detail["operator"] = io::operator_to_json(T);
                     BpbConfig cfg;
                     cfg.eps = eps;
                     cfg.solve = quick();
                     const BpbTrace tr = bpb_refine(T, crawford_number(T, quick()).certificate, cfg);
                     double worst = kInfinity;
                     double prev_c = -1.0;
                     for (const auto& st : tr.steps) {
                         worst = std::min(worst, st.step + 1e-12 - st.op_delta);
                         worst = std::min(worst, st.step / 4.0 + st.slack_x + 1e-12 - st.dx);
                         worst = std::min(worst, st.step / 4.0 + st.slack_xstar + 1e-12 - st.dxstar);
                         if (prev_c >= 0.0)
                             worst = std::min(worst, st.step * 4.0 / eps + 2.0 * cfg.inner_tol -
                                                         std::abs(st.c_estimate - prev_c));
                         prev_c = st.c_estimate;
                     }
                     worst = std::min({worst, eps / 2.0 + 1e-9 - tr.total_distance, eps - tr.start_dx,
                                       eps - tr.start_dxstar,
                                       cfg.inner_tol + tr.tail - std::abs(tr.final_value - tr.final_c)});
                     return worst;
                 }});
    return v;
}

}  // namespace detail

inline VerifyReport run_verify(const VerifyConfig& cfg) {
    VerifyReport rep;
    if (cfg.dims.empty() || cfg.ps.empty() || cfg.fields.empty()) throw InputError("verify: empty dims, p or fields");
    for (double p : cfg.ps)
        if (!(p >= 1.0)) throw InputError("verify: p must be >= 1");
    for (int d : cfg.dims)
        if (d < 1 || d > 6) throw InputError("verify: dims must lie in [1, 6]");
    bool matched = !cfg.only;
    for (auto& inv : detail::catalog(cfg)) {
        if (cfg.only && *cfg.only != inv.name) continue;
        matched = true;
        InvariantSummary sum;
        sum.name = inv.name;
        sum.module = inv.module;
        if (inv.count <= 0) rep.warnings.push_back(inv.name + ": no instances, vacuous pass");
        for (int i = 0; i < inv.count; ++i) {
            if (cfg.instance && *cfg.instance != i) continue;
            const std::uint64_t seed = detail::instance_seed(cfg.seed, inv.name, i);
            detail::Instance in{std::mt19937_64(seed), &cfg};
            double margin;
            std::string error;
            try {
                margin = inv.check(in);
            } catch (const Error& e) {
                margin = -kInfinity;
                error = e.what();
            }
            sum.worst_margin = std::min(sum.worst_margin, margin);
            if (margin >= 0.0) {
                ++sum.passed;
                continue;
            }
            ++sum.failed;
            if (!error.empty()) {
                ++sum.errors;
                in.detail["error"] = error;
            }
            sum.failures.push_back({inv.name, i, seed, margin, in.detail});
        }
        if (sum.failed > 0) rep.all_passed = false;
        rep.invariants.push_back(std::move(sum));
    }
    if (!matched) throw InputError("verify: unknown invariant " + *cfg.only);
    return rep;
}

namespace io {

inline VerifyConfig verify_config_from_json(const json& j) {
    VerifyConfig c;
    if (j.is_null()) return c;
    if (!j.is_object()) throw InputError("json: verify config must be an object");
    try {
        if (j.contains("dims")) c.dims = j.at("dims").get<std::vector<int>>();
        if (j.contains("p")) {
            c.ps.clear();
            for (const auto& p : j.at("p")) {
                if (p.is_string() && p.get<std::string>() == "inf")
                    c.ps.push_back(kInfinity);
                else
                    c.ps.push_back(p.get<double>());
            }
        }
        if (j.contains("fields")) {
            c.fields.clear();
            for (const auto& f : j.at("fields")) {
                const std::string name = f.get<std::string>();
                if (name != "real" && name != "complex") throw InputError("json: unknown field " + name);
                c.fields.push_back(name == "real" ? Field::real : Field::complex);
            }
        }
        c.instances = j.value("instances", c.instances);
        c.repair_instances = j.value("repair_instances", c.repair_instances);
        c.bpb_instances = j.value("bpb_instances", c.bpb_instances);
        c.seed = j.value("seed", c.seed);
        c.planted_bug = j.value("planted_bug", c.planted_bug);
        if (j.contains("only")) c.only = j.at("only").get<std::string>();
        if (j.contains("instance")) c.instance = j.at("instance").get<int>();
    } catch (const json::exception& e) {
        throw InputError(std::string("json: verify config: ") + e.what());
    }
    return c;
}

inline json verify_to_json(const VerifyReport& r, const VerifyConfig& c) {
    json inv = json::array();
    for (const auto& s : r.invariants) {
        json fails = json::array();
        for (const auto& f : s.failures)
            fails.push_back({{"invariant", f.invariant},
                             {"instance", f.instance},
                             {"seed", f.seed},
                             {"margin", detail::real_number(f.margin)},
                             {"detail", f.detail}});
        inv.push_back({{"name", s.name},
                       {"module", s.module},
                       {"passed", s.passed},
                       {"failed", s.failed},
                       {"errors", s.errors},
                       {"worst_margin", detail::real_number(s.worst_margin)},
                       {"failures", fails}});
    }
    json ps = json::array();
    for (double p : c.ps) ps.push_back(detail::real_number(p));
    json fields = json::array();
    for (Field f : c.fields) fields.push_back(f == Field::real ? "real" : "complex");
    json cfg = {{"dims", c.dims},
                {"p", ps},
                {"fields", fields},
                {"instances", c.instances},
                {"repair_instances", c.repair_instances},
                {"bpb_instances", c.bpb_instances},
                {"seed", c.seed},
                {"planted_bug", c.planted_bug}};
    if (c.only) cfg["only"] = *c.only;
    if (c.instance) cfg["instance"] = *c.instance;
    return {{"all_passed", r.all_passed}, {"config", cfg}, {"invariants", inv}, {"warnings", r.warnings}};
}

}  // namespace io

}  // namespace crawford
