// Acceptance run: one PASS/FAIL line per criterion, tolerances and runtime
// limits fixed below. Exit status is nonzero if any criterion fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <string>

#include "crawford/verify.hpp"

using namespace crawford;

namespace {

struct Outcome {
    bool ok = true;
    std::string detail;
};

int failures = 0;

void criterion(const char* id, const char* what, double limit_s, const std::function<Outcome()>& body) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
        o = body();
    } catch (const std::exception& e) {
        o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_time = secs < limit_s;
    const bool pass = o.ok && in_time;
    if (!pass) ++failures;
    std::printf("%-5s %s  %s; %s [%.2f s, limit %.0f s%s]\n", id, pass ? "PASS" : "FAIL", what, o.detail.c_str(), secs,
                limit_s, in_time ? "" : ", exceeded");
    std::fflush(stdout);
}

std::string fmt(const char* f, double a, double b = 0.0) {
    char buf[160];
    std::snprintf(buf, sizeof buf, f, a, b);
    return buf;
}

/// Catalog invariants over the stated population; passes when no margin is negative.
Outcome catalog(const std::vector<std::string>& names, int instances, int repairs, int bpbs) {
    Outcome o;
    double worst = kInfinity;
    int total = 0, failed = 0;
    for (const auto& n : names) {
        VerifyConfig c;
        c.instances = instances;
        c.repair_instances = repairs;
        c.bpb_instances = bpbs;
        c.seed = 0;
        c.only = n;
        const VerifyReport r = run_verify(c);
        for (const auto& s : r.invariants) {
            worst = std::min(worst, s.worst_margin);
            total += s.passed + s.failed;
            failed += s.failed;
            for (const auto& f : s.failures)
                std::printf("      %s instance %d seed %llu margin %.3e\n", f.invariant.c_str(), f.instance,
                            static_cast<unsigned long long>(f.seed), f.margin);
        }
    }
    o.ok = failed == 0 && total > 0;
    o.detail = std::to_string(total) + " instances, " + std::to_string(failed) + " failed, worst margin " +
               fmt("%.3e", worst);
    return o;
}

CMatrix gaussian(int n, bool complex, std::mt19937_64& rng) {
    std::normal_distribution<double> g;
    CMatrix m(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m(i, j) = Scalar(g(rng), complex ? g(rng) : 0.0);
    return m;
}

}  // namespace

int main() {
    const std::vector<double> ps{1.0, 1.5, 2.0, 3.0, kInfinity};

    criterion("AC1", "fixed examples: swap certificate exact, c = nu = m = 1 for the identity (tol 1e-9)", 1.0, [&] {
        Outcome o;
        const Operator swap{SpaceDescriptor::lp(2, 2.0), CMatrix{{0, 1}, {1, 0}}};
        const ComputeResult r = crawford_number(swap);
        const CVector e1 = Vector::basis(2, 0).coords;
        o.ok = r.value == 0.0 && r.certificate.x.coords == e1 && r.certificate.xstar.coords == e1 && r.attained;
        double worst = 0.0;
        for (double p : ps)
            for (int n : {2, 3, 4})
                for (Field f : {Field::real, Field::complex}) {
                    const Operator I = identity(SpaceDescriptor::lp(n, p, f));
                    for (Quantity q : {Quantity::crawford, Quantity::radius, Quantity::minnorm})
                        worst = std::max(worst, std::abs(compute(I, q).value - 1.0));
                }
        o.ok = o.ok && worst <= 1e-9;
        o.detail = fmt("c(swap) = %g, max |q(I) - 1| = %.2e", r.value, worst);
        return o;
    });

    criterion("AC2", "sweep vs grid oracle on 50 real + 20 complex 2x2 L2 operators (tol 1e-3)", 60.0, [&] {
        std::mt19937_64 rng(2);
        double worst = 0.0;
        for (int t = 0; t < 70; ++t) {
            const bool complex = t >= 50;
            const Operator T{SpaceDescriptor::lp(2, 2.0, complex ? Field::complex : Field::real),
                             gaussian(2, complex, rng)};
            const SweepResult sw = hilbert_sweep(T);
            const int res = complex ? 400 : 2000;
            worst = std::max(worst, std::abs(sw.c - grid_oracle(T, Quantity::crawford, res)));
            worst = std::max(worst, std::abs(sw.nu - grid_oracle(T, Quantity::radius, res)));
        }
        return Outcome{worst <= 1e-3, fmt("max gap %.2e", worst)};
    });

    criterion("AC3", "adjoint identity |c(T) - c(T*)| <= max(2 tol, 1e-3), 200 operators", 180.0,
              [&] { return catalog({"adjoint_identity"}, 200, 0, 0); });

    criterion("AC4", "Lipschitz |q(T+E) - q(T)| <= ||E|| + 2 tol for c, nu, m, 200 pairs", 120.0,
              [&] { return catalog({"lipschitz"}, 200, 0, 0); });

    criterion("AC5", "ordering c <= nu <= ||T||, c <= m <= ||T|| (2 tol) and residual <= tol, 200 operators",
              180.0, [&] { return catalog({"ordering", "attainment"}, 200, 0, 0); });

    criterion("AC6", "repairs: distance < eps, attainment within 1e-6, algebraic cancellation <= 1e-12, 100 per kind",
              120.0, [&] { return catalog({"repair_zero", "repair_compact", "repair_exposing"}, 0, 100, 0); });

    criterion("AC7", "truncation ||T - T_k|| <= 2/(k+1) + 1e-9, diag(1..1/n), n <= 20, p in {1.5, 2, 3}", 30.0, [&] {
        std::mt19937_64 rng(7);
        std::uniform_real_distribution<double> u(0.5, 2.0);
        double worst = kInfinity;
        int checks = 0;
        for (double p : {1.5, 2.0, 3.0})
            for (int n = 2; n <= 20; ++n)
                for (bool weighted : {false, true}) {
                    std::vector<double> w(n, 1.0);
                    if (weighted)
                        for (double& x : w) x = u(rng);
                    const SpaceDescriptor s = SpaceDescriptor::weighted_lp(p, w);
                    CMatrix d = CMatrix::Zero(n, n);
                    for (int i = 0; i < n; ++i) d(i, i) = 1.0 / (i + 1);
                    for (int k = 0; k < n; ++k) {
                        CMatrix tk = d;
                        tk.bottomRightCorner(n - k, n - k).setZero();
                        worst = std::min(worst, 2.0 / (k + 1) + 1e-9 - operator_norm(Operator{s, d - tk}).value);
                        ++checks;
                    }
                }
        return Outcome{worst >= 0.0, std::to_string(checks) + " truncations, worst margin " + fmt("%.3e", worst)};
    });

    criterion("AC8", "state coordinate positivity re(x*_i x_i) >= -1e-10, 1e4 states per family", 30.0, [&] {
        std::mt19937_64 rng(8);
        std::uniform_real_distribution<double> u(0.0, 1.0);
        double worst = kInfinity;
        int families = 0;
        for (double p : ps)
            for (Field f : {Field::real, Field::complex})
                for (bool weighted : {false, true}) {
                    ++families;
                    const SpaceDescriptor s = weighted ? SpaceDescriptor::weighted_lp(p, {0.6, 1.0, 1.8}, f)
                                                       : SpaceDescriptor::lp(3, p, f);
                    for (int t = 0; t < 10000; ++t) {
                        Vector x = random_vector(s, rng);
                        if (t % 4 == 0) x.coords(t % 3) = 0.0;
                        if (t % 4 == 1) x.coords(0) = x.coords(1) * (s.weight(1) / s.weight(0));
                        x.coords /= norm(s, x);
                        const FaceDescriptor face = duality_face(s, x);
                        Functional w = face.fixed;
                        for (const auto& fc : face.free) w.coords(fc.index) = fc.radius * u(rng) * random_phase(f, rng);
                        if (face.kind == FaceKind::simplex) {
                            w.coords.setZero();
                            double total = 0.0;
                            std::vector<double> a;
                            for (std::size_t j = 0; j < face.extremes.size(); ++j) total += a.emplace_back(u(rng));
                            for (std::size_t j = 0; j < face.extremes.size(); ++j)
                                w.coords += (a[j] / total) * face.extremes[j].coords;
                        }
                        if (!is_state(s, State{x, w}, 1e-10)) return Outcome{false, "sampled face element is not a state"};
                        for (int i = 0; i < 3; ++i) worst = std::min(worst, (w.coords(i) * x.coords(i)).real());
                    }
                }
        return Outcome{worst >= -1e-10, std::to_string(families) + " families, min re(x*_i x_i) " + fmt("%.3e", worst)};
    });

    criterion("AC9", "refiner: step, state, distance and attainment bounds on 50 runs; eta(L2, 2) to 1e-9", 120.0, [&] {
        Outcome o = catalog({"bpb_bounds"}, 0, 0, 50);
        const double e = eta(SpaceDescriptor::lp(2, 2.0), 2.0);
        const double expected = 0.5 * (1.0 - std::sqrt(15.0) / 4.0);
        o.ok = o.ok && std::abs(e - expected) <= 1e-9;
        o.detail += fmt(", eta(L2, 2) = %.12f (expected %.12f)", e, expected);
        return o;
    });

    criterion("AC10", "polytope construction attains min |x*| on C (LP-checked) with ||x* - x0*|| <= eps, 100 polytopes",
              30.0, [&] { return catalog({"polytope_attainment"}, 0, 100, 0); });

    criterion("AC11", "sequence witness: constant fixture passes, c = 0 fixture fails with margins 1/n^2 - 1/n", 1.0, [&] {
        const SpaceDescriptor s = SpaceDescriptor::lp(2, 2.0);
        const Operator I = identity(s);
        const int len = 6;
        std::vector<State> states(len, make_state(s, Vector::basis(2, 0)));
        std::vector<double> d, e;
        for (int n = 1; n <= len; ++n) {
            d.push_back(1.0 / n);
            e.push_back(1.0 / (n * n));
        }
        const WitnessReport good = witness_check(I, states, d, e, 1.0);
        const WitnessReport bad = witness_check(I, states, d, e, 0.0);
        double dev = 0.0;
        for (const auto& m : good.margins) dev = std::max(dev, std::abs(m.margin - 1.0 / (m.n * m.n)));
        for (const auto& m : bad.margins) dev = std::max(dev, std::abs(m.margin - (1.0 / (m.n * m.n) - 1.0 / m.n)));
        const bool ok = good.all_satisfied && !bad.all_satisfied && dev <= 1e-15;
        return Outcome{ok, fmt("max deviation from analytic margins %.1e", dev)};
    });

    std::printf("%s: %d criteria failed\n", failures == 0 ? "ACCEPTED" : "REJECTED", failures);
    return failures == 0 ? 0 : 1;
}
