// crawford: batch front end (compute, repair, bpb, range, witness, verify).
// Exit codes: 0 ok, 1 verify found failures, 2 input error, 3 numerical failure.

#include <CLI11.hpp>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "crawford/verify.hpp"

using namespace crawford;
using io::json;

namespace {

struct Job {
    std::string input;
    std::string output;
    std::string space;
    std::string quantity = "crawford";
    std::string strategy = "auto";
    std::string kind = "auto";
    std::string config;
    std::optional<double> tol;
    std::optional<double> eps;
    std::uint64_t seed = 0;
    std::optional<int> samples;
};

std::string read_file(const std::string& path) {
    if (path.empty()) throw InputError("missing --input");
    std::ifstream in(path);
    if (!in) throw InputError("cannot read " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

json load(const std::string& path) { return io::parse(read_file(path)); }

void emit(const Job& job, const std::string& text) {
    if (job.output.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(job.output);
    if (!out) throw InputError("cannot write " + job.output);
    out << text;
}

void emit(const Job& job, const json& j) { emit(job, j.dump(2) + "\n"); }

Strategy parse_strategy(const std::string& s) {
    if (s == "auto") return Strategy::automatic;
    if (s == "hilbertSweep") return Strategy::hilbert_sweep;
    if (s == "multistart") return Strategy::multistart;
    if (s == "gridOracle") return Strategy::grid_oracle;
    throw InputError("unknown strategy " + s);
}

Quantity parse_quantity(const std::string& s) {
    if (s == "crawford") return Quantity::crawford;
    if (s == "radius") return Quantity::radius;
    if (s == "minnorm") return Quantity::minnorm;
    if (s == "opnorm") return Quantity::opnorm;
    throw InputError("unknown quantity " + s);
}

SolveOptions solve_options(const Job& job) {
    SolveOptions o;
    o.strategy = parse_strategy(job.strategy);
    if (job.tol) {
        if (!(*job.tol > 0.0)) throw InputError("--tol must be > 0");
        o.tol = job.tol;
    }
    o.seed = job.seed;
    if (job.samples) o.sweep_samples = *job.samples;
    return o;
}

/// Operator from --input, with the space replaced by --space when given
/// (inline JSON or a path).
Operator load_operator(const Job& job, const json& j) {
    Operator T = io::operator_from_json(j);
    if (!job.space.empty()) {
        const json sj = job.space.front() == '{' ? io::parse(job.space) : load(job.space);
        json copy = j;
        copy["space"] = sj;
        T = io::operator_from_json(copy);
    }
    return T;
}

double required_eps(const Job& job, const json& j) {
    if (job.eps) return *job.eps;
    if (j.is_object() && j.contains("eps") && j["eps"].is_number()) return j["eps"].get<double>();
    throw InputError("missing eps (use --eps or an \"eps\" field)");
}

int run_compute(const Job& job) {
    const Operator T = load_operator(job, load(job.input));
    const ComputeResult r = compute(T, parse_quantity(job.quantity), solve_options(job));
    emit(job, io::result_to_json(r, T.space.field));
    return 0;
}

int run_repair(const Job& job) {
    const json j = load(job.input);
    if (j.is_object() && j.contains("vertices")) {
        std::vector<Vector> pts;
        for (const auto& v : j["vertices"]) pts.push_back(Vector{io::coords_from_json(v, -1, "vertex")});
        const Functional f{io::coords_from_json(io::detail::field(j, "functional"), -1, "functional")};
        emit(job, io::polytope_to_json(min_attain_polytope(pts, f, required_eps(job, j))));
        return 0;
    }
    const json& oj = j.contains("operator") ? j["operator"] : j;
    const Operator T = load_operator(job, oj);
    const double eps = required_eps(job, j);
    RepairOptions ro;
    ro.solve = solve_options(job);
    ro.seed = job.seed;
    RepairOutcome r;
    if (job.kind == "auto")
        r = repair_dispatch(T, eps, ro);
    else if (job.kind == "zero")
        r = zero_crawford_repair(T, eps, ro);
    else if (job.kind == "compactStyle")
        r = compact_style_repair(T, eps, ro);
    else if (job.kind == "exposing")
        r = exposing_repair(T, eps, ro);
    else
        throw InputError("unknown repair kind " + job.kind);
    emit(job, io::repair_to_json(r));
    return 0;
}

int run_bpb(const Job& job) {
    const json j = load(job.input);
    const json& oj = j.contains("operator") ? j["operator"] : j;
    const Operator T = load_operator(job, oj);
    BpbConfig cfg;
    cfg.eps = required_eps(job, j);
    cfg.solve = solve_options(job);
    if (job.tol) cfg.inner_tol = *job.tol;
    if (!job.config.empty()) {
        const json c = load(job.config);
        cfg.max_iter = c.value("max_iter", cfg.max_iter);
        cfg.step_tol = c.value("step_tol", cfg.step_tol);
        cfg.inner_tol = c.value("inner_tol", cfg.inner_tol);
    }
    State start;
    if (j.contains("start")) {
        start = io::state_from_json(j["start"], T.dim());
    } else {
        SolveOptions so = cfg.solve;
        so.tol = cfg.inner_tol;
        start = crawford_number(T, so).certificate;
    }
    emit(job, io::trace_to_json(bpb_refine(T, start, cfg)));
    return 0;
}

int run_range(const Job& job) {
    const Operator T = load_operator(job, load(job.input));
    const int samples = job.samples.value_or(360);
    const SweepResult sw = hilbert_sweep(T, samples);
    std::ostringstream out;
    out.precision(17);
    out << "# c=" << sw.c << ",nu=" << sw.nu << "\n";
    out << "theta,re,im,support\n";
    for (int k = 0; k < samples; ++k)
        out << sw.theta[k] << "," << sw.boundary[k].real() << "," << sw.boundary[k].imag() << "," << sw.support[k]
            << "\n";
    emit(job, out.str());
    return 0;
}

int run_witness(const Job& job) {
    const json j = load(job.input);
    const Operator T = load_operator(job, io::detail::field(j, "operator"));
    std::vector<State> states;
    for (const auto& s : io::detail::field(j, "states")) states.push_back(io::state_from_json(s, T.dim()));
    std::vector<double> deltas, epsilons;
    for (const auto& d : io::detail::field(j, "deltas")) deltas.push_back(io::detail::number(d, "delta"));
    for (const auto& e : io::detail::field(j, "epsilons")) epsilons.push_back(io::detail::number(e, "epsilon"));
    const double c = io::detail::number(io::detail::field(j, "c"), "c");
    emit(job, io::witness_to_json(witness_check(T, states, deltas, epsilons, c)));
    return 0;
}

int run_verify(const Job& job) {
    VerifyConfig cfg = io::verify_config_from_json(job.config.empty() ? json() : load(job.config));
    if (job.seed != 0) cfg.seed = job.seed;
    const auto t0 = std::chrono::steady_clock::now();
    const VerifyReport rep = run_verify(cfg);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    for (const auto& w : rep.warnings) std::fprintf(stderr, "warning: %s\n", w.c_str());
    int failed = 0;
    for (const auto& s : rep.invariants) failed += s.failed > 0;
    std::fprintf(stderr, "verify: %zu invariants, %d failing, wall-clock %.2f s\n", rep.invariants.size(), failed, secs);
    emit(job, io::verify_to_json(rep, cfg));
    return rep.all_passed ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Crawford number, numerical radius and minimum norm toolkit"};
    app.require_subcommand(1);
    Job job;
    auto common = [&](CLI::App* c) {
        c->add_option("--input", job.input, "input JSON file");
        c->add_option("--output", job.output, "output file (default stdout)");
        c->add_option("--space", job.space, "space JSON (inline or path) replacing the operator's space");
        c->add_option("--strategy", job.strategy, "auto | hilbertSweep | multistart | gridOracle");
        c->add_option("--tol", job.tol, "tolerance");
        c->add_option("--seed", job.seed, "random seed");
        c->add_option("--samples", job.samples, "sweep samples / range rows");
        c->add_option("--config", job.config, "config JSON file");
        c->add_option("--eps", job.eps, "perturbation size");
    };
    auto* compute_cmd = app.add_subcommand("compute", "c, nu, m or ||T|| with a certificate");
    common(compute_cmd);
    compute_cmd->add_option("--quantity", job.quantity, "crawford | radius | minnorm | opnorm");
    auto* repair_cmd = app.add_subcommand("repair", "Crawford-attaining perturbation, or polytope construction");
    common(repair_cmd);
    repair_cmd->add_option("--kind", job.kind, "auto | zero | compactStyle | exposing");
    auto* bpb_cmd = app.add_subcommand("bpb", "iterative operator/state refinement");
    common(bpb_cmd);
    auto* range_cmd = app.add_subcommand("range", "field of values boundary as CSV (L2 only)");
    common(range_cmd);
    auto* witness_cmd = app.add_subcommand("witness", "finite-prefix sequence inequality check");
    common(witness_cmd);
    auto* verify_cmd = app.add_subcommand("verify", "run the invariant catalog");
    common(verify_cmd);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }
    try {
        if (*compute_cmd) return run_compute(job);
        if (*repair_cmd) return run_repair(job);
        if (*bpb_cmd) return run_bpb(job);
        if (*range_cmd) return run_range(job);
        if (*witness_cmd) return run_witness(job);
        if (*verify_cmd) return run_verify(job);
    } catch (const InputError& e) {
        std::fprintf(stderr, "input error: %s\n", e.what());
        return 2;
    } catch (const PreconditionFailed& e) {
        std::fprintf(stderr, "precondition failed: %s\n", e.what());
        return 2;
    } catch (const NumericalError& e) {
        std::fprintf(stderr, "numerical failure: %s\n", e.what());
        return 3;
    } catch (const json::exception& e) {
        std::fprintf(stderr, "input error: %s\n", e.what());
        return 2;
    }
    return 2;
}
