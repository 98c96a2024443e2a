#pragma once

// Global search over the unit sphere of a space.
//
// The sphere is covered by charts. Smooth norms use a single chart (any nonzero
// coordinate vector, normalized). The l1 and l-infinity spheres are split into
// strata on which the duality face keeps its shape: a fixed support for l1 and a
// fixed active set (with fixed signs, real field) for l-infinity. The objectives
// are only lower/upper semicontinuous across strata, so each stratum is searched
// on its own with exact zeros / exact unimodular entries in place.
//
// sphere_search: sampling on every chart, then compass search with random polls
// from the best candidates and from caller-provided seeds.
// grid_search: exhaustive angular grid (dim <= 3 real, <= 2 complex) with local
// zooming around the best cells; an oracle independent of the chart machinery.

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

#include "crawford/space.hpp"

namespace crawford {

struct SearchOptions {
    int starts = 32;
    int samples_per_chart = 0;  // 0: 8 + 6 * parameters
    double initial_step = 0.25;
    double min_step = 1e-12;
    int max_evals_per_start = 6000;
    std::uint64_t seed = 0;
};

struct SearchResult {
    Vector x;
    double value = 0.0;
    long evaluations = 0;
};

namespace detail {

// Strata are enumerated up to this dimension; above it only the bulk chart is used.
inline constexpr int kMaxStrataDim = 6;

struct Chart {
    enum class Kind { bulk, support, active };
    Kind kind = Kind::bulk;
    std::vector<int> coords;     // support (l1) or active set (l-infinity)
    std::vector<double> signs;   // real l-infinity: signs on the active set, first is +1
    int params = 0;
    int angles = 0;              // complex l-infinity: leading angle parameters
};

inline std::vector<int> bits_of(unsigned mask, int n) {
    std::vector<int> out;
    for (int i = 0; i < n; ++i)
        if (mask & (1u << i)) out.push_back(i);
    return out;
}

inline std::vector<Chart> build_charts(const SpaceDescriptor& s) {
    const int n = s.dim;
    const int fc = s.is_complex() ? 2 : 1;
    std::vector<Chart> charts;
    if (s.is_smooth() || n > kMaxStrataDim) {
        charts.push_back(Chart{Chart::Kind::bulk, {}, {}, n * fc, 0});
        return charts;
    }
    const unsigned full = (1u << n) - 1u;
    // Full support / single-coordinate activity first: those are the generic strata.
    std::vector<unsigned> masks;
    for (unsigned m = 1; m <= full; ++m) masks.push_back(m);
    if (s.p() == 1.0) {
        std::stable_sort(masks.begin(), masks.end(), [](unsigned a, unsigned b) {
            return __builtin_popcount(a) > __builtin_popcount(b);
        });
        for (unsigned m : masks) {
            auto c = bits_of(m, n);
            const int k = static_cast<int>(c.size());
            charts.push_back(Chart{Chart::Kind::support, std::move(c), {}, k * fc, 0});
        }
        return charts;
    }
    std::stable_sort(masks.begin(), masks.end(), [](unsigned a, unsigned b) {
        return __builtin_popcount(a) < __builtin_popcount(b);
    });
    for (unsigned m : masks) {
        auto c = bits_of(m, n);
        const int k = static_cast<int>(c.size());
        if (s.is_complex()) {
            charts.push_back(Chart{Chart::Kind::active, c, {}, (k - 1) + 2 * (n - k), k - 1});
        } else {
            for (unsigned sm = 0; sm < (1u << (k - 1)); ++sm) {
                std::vector<double> signs(k, 1.0);
                for (int j = 1; j < k; ++j)
                    if (sm & (1u << (j - 1))) signs[j] = -1.0;
                charts.push_back(Chart{Chart::Kind::active, c, std::move(signs), n - k, 0});
            }
        }
    }
    return charts;
}

inline std::vector<char>& thread_local_flags(int n) {
    thread_local std::vector<char> flags;
    if (static_cast<int>(flags.size()) < n) flags.resize(n);
    return flags;
}

/// Chart parameters -> unit vector. Returns false on a degenerate (zero) point.
inline bool decode(const SpaceDescriptor& s, const Chart& c, const double* u, Scalar* x, double* moduli) {
    const int n = s.dim;
    const bool cx = s.is_complex();
    if (c.kind != Chart::Kind::active) {
        for (int i = 0; i < n; ++i) x[i] = 0.0;
        if (c.kind == Chart::Kind::bulk) {
            for (int i = 0; i < n; ++i) x[i] = cx ? Scalar(u[2 * i], u[2 * i + 1]) : Scalar(u[i]);
        } else {
            for (std::size_t k = 0; k < c.coords.size(); ++k)
                x[c.coords[k]] = cx ? Scalar(u[2 * k], u[2 * k + 1]) : Scalar(u[k]);
        }
        const double nx = norm_raw(s, x, moduli);
        if (!(nx > 0.0) || !std::isfinite(nx)) return false;
        for (int i = 0; i < n; ++i) x[i] /= nx;
        return true;
    }
    // Active chart: |y_i| = 1 on the active set, |y_j| <= 1 elsewhere, x = W^{-1} y.
    std::vector<char>& is_active = thread_local_flags(n);
    std::fill(is_active.begin(), is_active.end(), 0);
    for (std::size_t k = 0; k < c.coords.size(); ++k) {
        const int i = c.coords[k];
        is_active[i] = 1;
        Scalar y;
        if (cx)
            y = k == 0 ? Scalar(1.0) : std::polar(1.0, u[k - 1]);
        else
            y = c.signs[k];
        x[i] = y / s.weight(i);
    }
    int q = cx ? c.angles : 0;
    for (int j = 0; j < n; ++j) {
        if (is_active[j]) continue;
        Scalar y;
        if (cx) {
            y = Scalar(u[q], u[q + 1]);
            q += 2;
            const double m = std::abs(y);
            if (m > 1.0) y /= m;
        } else {
            y = std::clamp(u[q], -1.0, 1.0);
            q += 1;
        }
        x[j] = y / s.weight(j);
    }
    return true;
}

/// Unit vector -> parameters of chart c, if the vector lies in the chart's closure.
inline bool encode(const SpaceDescriptor& s, const Chart& c, const Vector& x, std::vector<double>& u) {
    const int n = s.dim;
    const bool cx = s.is_complex();
    u.assign(c.params, 0.0);
    CVector y(n);
    for (int i = 0; i < n; ++i) y(i) = s.weight(i) * x.coords(i);
    const double top = y.cwiseAbs().maxCoeff();
    if (!(top > 0.0)) return false;
    if (c.kind == Chart::Kind::bulk) {
        for (int i = 0; i < n; ++i) {
            if (cx) {
                u[2 * i] = x.coords(i).real();
                u[2 * i + 1] = x.coords(i).imag();
            } else {
                u[i] = x.coords(i).real();
            }
        }
        return true;
    }
    if (c.kind == Chart::Kind::support) {
        std::vector<char> in(n, 0);
        for (int i : c.coords) in[i] = 1;
        for (int i = 0; i < n; ++i)
            if (!in[i] && std::abs(y(i)) > kSupportTol * top) return false;
        for (std::size_t k = 0; k < c.coords.size(); ++k) {
            const Scalar v = x.coords(c.coords[k]);
            if (cx) {
                u[2 * k] = v.real();
                u[2 * k + 1] = v.imag();
            } else {
                u[k] = v.real();
            }
        }
        return true;
    }
    y /= top;
    for (int i : c.coords)
        if (std::abs(y(i)) < 1.0 - 1e-9) return false;
    y *= std::conj(unit_phase(y(c.coords[0])));
    if (!cx)
        for (std::size_t k = 0; k < c.coords.size(); ++k)
            if (y(c.coords[k]).real() * c.signs[k] <= 0.0) return false;
    std::vector<char> in(n, 0);
    for (int i : c.coords) in[i] = 1;
    int q = 0;
    if (cx)
        for (std::size_t k = 1; k < c.coords.size(); ++k) u[q++] = std::arg(y(c.coords[k]));
    for (int j = 0; j < n; ++j) {
        if (in[j]) continue;
        if (cx) {
            u[q++] = y(j).real();
            u[q++] = y(j).imag();
        } else {
            u[q++] = y(j).real();
        }
    }
    return true;
}

/// The stratum a vector belongs to, or -1.
inline int natural_chart(const SpaceDescriptor& s, const std::vector<Chart>& charts, const Vector& x) {
    if (charts.size() == 1) return 0;
    const int n = s.dim;
    CVector y(n);
    for (int i = 0; i < n; ++i) y(i) = s.weight(i) * x.coords(i);
    const double top = y.cwiseAbs().maxCoeff();
    if (!(top > 0.0)) return -1;
    std::vector<int> set;
    for (int i = 0; i < n; ++i) {
        const double m = std::abs(y(i));
        if (s.p() == 1.0 ? m > kSupportTol * top : m >= top * (1.0 - kActiveTol)) set.push_back(i);
    }
    std::vector<double> u;
    for (std::size_t k = 0; k < charts.size(); ++k)
        if (charts[k].coords == set && encode(s, charts[k], x, u)) return static_cast<int>(k);
    return -1;
}

inline void random_params(const SpaceDescriptor& s, const Chart& c, std::mt19937_64& rng, std::vector<double>& u) {
    u.resize(c.params);
    std::normal_distribution<double> normal;
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    if (c.kind != Chart::Kind::active) {
        for (double& v : u) v = normal(rng);
        return;
    }
    int q = 0;
    for (; q < c.angles; ++q) u[q] = 2.0 * M_PI * unif(rng);
    if (s.is_complex()) {
        for (; q + 1 < c.params; q += 2) {
            const double r = std::sqrt(unif(rng));
            const double a = 2.0 * M_PI * unif(rng);
            u[q] = r * std::cos(a);
            u[q + 1] = r * std::sin(a);
        }
    } else {
        for (; q < c.params; ++q) u[q] = 2.0 * unif(rng) - 1.0;
    }
}

}  // namespace detail

/// Multi-start search for the extremum of f over the unit sphere of s.
/// f receives unit coordinate arrays. Seeds are tried first and win ties
/// against later candidates, in the order given.
template <class F>
SearchResult sphere_search(const SpaceDescriptor& s, F&& f, Extremum sense, const std::vector<Vector>& seeds,
                           const SearchOptions& opt) {
    using detail::Chart;
    const int n = s.dim;
    const auto charts = detail::build_charts(s);
    std::vector<Scalar> x(n);
    std::vector<double> moduli(n);
    long evals = 0;

    auto eval = [&](const Chart& c, const double* u, double& out) {
        if (!detail::decode(s, c, u, x.data(), moduli.data())) return false;
        out = f(x.data());
        ++evals;
        return std::isfinite(out);
    };

    struct Candidate {
        double value;
        int chart;
        std::vector<double> u;
        int order;
    };
    std::vector<Candidate> cands;
    int order = 0;
    std::vector<double> u;
    for (const Vector& seed : seeds) {
        const int ci = detail::natural_chart(s, charts, seed);
        if (ci < 0 || !detail::encode(s, charts[ci], seed, u)) continue;
        double v;
        if (eval(charts[ci], u.data(), v)) cands.push_back({v, ci, u, order++});
    }
    std::mt19937_64 rng(opt.seed);
    for (std::size_t ci = 0; ci < charts.size(); ++ci) {
        const Chart& c = charts[ci];
        const int samples = c.params == 0 ? 1 : (opt.samples_per_chart > 0 ? opt.samples_per_chart : 8 + 6 * c.params);
        for (int k = 0; k < samples; ++k) {
            detail::random_params(s, c, rng, u);
            double v;
            if (eval(c, u.data(), v)) cands.push_back({v, static_cast<int>(ci), u, order++});
        }
    }
    if (cands.empty()) throw NumericalError("sphere_search: no finite objective values");

    std::vector<int> idx(cands.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) {
        return improves(sense, cands[a].value, cands[b].value);
    });
    std::vector<char> chosen(cands.size(), 0);
    for (int k = 0; k < static_cast<int>(idx.size()) && k < opt.starts; ++k) chosen[idx[k]] = 1;
    std::vector<char> chart_seen(charts.size(), 0);
    for (int k : idx)
        if (!chart_seen[cands[k].chart]) {
            chart_seen[cands[k].chart] = 1;
            chosen[k] = 1;
        }
    // Seeds are always refined.
    for (std::size_t k = 0; k < cands.size(); ++k)
        if (cands[k].order < static_cast<int>(seeds.size())) chosen[k] = 1;

    std::vector<double> trial, dir;
    // Newton steps on f^2, which is locally quadratic at a regular zero of a
    // smooth complex-valued map (where f itself has a cone and pattern search crawls).
    auto newton = [&](Candidate& cand) {
        const Chart& c = charts[cand.chart];
        const int m = c.params;
        std::vector<double> p(m), q(m);
        auto sq = [&](const std::vector<double>& at, double& out) {
            double v;
            if (!eval(c, at.data(), v)) return false;
            out = v * v;
            return true;
        };
        for (int iter = 0; iter < 12; ++iter) {
            const double f0 = cand.value * cand.value;
            const double h = std::clamp(0.1 * cand.value, 1e-9, 1e-5);
            Eigen::VectorXd g(m);
            Eigen::MatrixXd H(m, m);
            bool ok = true;
            std::vector<double> fp(m), fm(m);
            for (int i = 0; i < m && ok; ++i) {
                p = cand.u;
                p[i] += h;
                q = cand.u;
                q[i] -= h;
                ok = sq(p, fp[i]) && sq(q, fm[i]);
                g(i) = (fp[i] - fm[i]) / (2 * h);
                H(i, i) = (fp[i] - 2 * f0 + fm[i]) / (h * h);
            }
            for (int i = 0; i < m && ok; ++i)
                for (int j = i + 1; j < m && ok; ++j) {
                    double fpp = 0.0, fmm = 0.0;
                    p = cand.u;
                    p[i] += h;
                    p[j] += h;
                    q = cand.u;
                    q[i] -= h;
                    q[j] -= h;
                    ok = sq(p, fpp) && sq(q, fmm);
                    H(i, j) = H(j, i) = (fpp + fmm - fp[i] - fm[i] - fp[j] - fm[j] + 2 * f0) / (2 * h * h);
                }
            if (!ok) return;
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(H);
            const double top = eig.eigenvalues().cwiseAbs().maxCoeff();
            if (!(top > 0.0)) return;
            Eigen::VectorXd step = Eigen::VectorXd::Zero(m);
            for (int k = 0; k < m; ++k) {
                const double l = eig.eigenvalues()(k);
                if (l > 1e-9 * top) step -= eig.eigenvectors().col(k) * (eig.eigenvectors().col(k).dot(g) / l);
            }
            bool improved = false;
            for (double t = 1.0; t >= 1.0 / 16 && !improved; t /= 2) {
                for (int k = 0; k < m; ++k) p[k] = cand.u[k] + t * step(k);
                double v;
                if (eval(c, p.data(), v) && v < cand.value) {
                    cand.u = p;
                    cand.value = v;
                    improved = true;
                }
            }
            if (!improved) return;
        }
    };
    auto polish = [&](Candidate& cand) {
        const Chart& c = charts[cand.chart];
        if (c.params == 0) return;
        const int m = c.params;
        double h = opt.initial_step;
        const long budget = evals + opt.max_evals_per_start;
        trial.resize(m);
        dir.resize(m);
        std::normal_distribution<double> normal;
        auto accept = [&](double v) {
            cand.u = trial;
            cand.value = v;
            if (c.kind != Chart::Kind::active) {
                // keep coordinate charts at unit scale
                detail::decode(s, c, cand.u.data(), x.data(), moduli.data());
                if (c.kind == Chart::Kind::bulk) {
                    for (int i = 0; i < n; ++i) {
                        if (s.is_complex()) {
                            cand.u[2 * i] = x[i].real();
                            cand.u[2 * i + 1] = x[i].imag();
                        } else {
                            cand.u[i] = x[i].real();
                        }
                    }
                } else {
                    for (std::size_t k = 0; k < c.coords.size(); ++k) {
                        const Scalar z = x[c.coords[k]];
                        if (s.is_complex()) {
                            cand.u[2 * k] = z.real();
                            cand.u[2 * k + 1] = z.imag();
                        } else {
                            cand.u[k] = z.real();
                        }
                    }
                }
            }
        };
        auto try_direction = [&](const std::vector<double>& d) {
            for (double sign : {1.0, -1.0}) {
                for (int k = 0; k < m; ++k) trial[k] = cand.u[k] + sign * h * d[k];
                double v;
                if (eval(c, trial.data(), v) && improves(sense, v, cand.value)) {
                    accept(v);
                    // extrapolate while it keeps improving
                    for (int rep = 0; rep < 8 && evals < budget; ++rep) {
                        for (int k = 0; k < m; ++k) trial[k] = cand.u[k] + sign * h * d[k];
                        if (!(eval(c, trial.data(), v) && improves(sense, v, cand.value))) break;
                        accept(v);
                    }
                    return true;
                }
            }
            return false;
        };
        while (h >= opt.min_step && evals < budget) {
            bool moved = false;
            for (int k = 0; k < m && !moved; ++k) {
                std::fill(dir.begin(), dir.end(), 0.0);
                dir[k] = 1.0;
                moved = try_direction(dir);
            }
            for (int r = 0; r < 2 && !moved; ++r) {
                double len = 0.0;
                for (double& d : dir) {
                    d = normal(rng);
                    len += d * d;
                }
                len = std::sqrt(len);
                if (len == 0.0) continue;
                for (double& d : dir) d /= len;
                moved = try_direction(dir);
            }
            if (!moved) h *= 0.5;
        }
        if (sense == Extremum::min && cand.value > 0.0) newton(cand);
    };

    // Refine in order of discovery so that earlier candidates win exact ties.
    const Candidate* best = nullptr;
    for (auto& cand : cands) {
        if (!chosen[&cand - cands.data()]) continue;
        polish(cand);
        if (!best) {
            best = &cand;
            continue;
        }
        const double slack = 1e-15 * std::max(1.0, std::abs(best->value));
        if (sense == Extremum::min ? cand.value < best->value - slack : cand.value > best->value + slack) best = &cand;
    }
    SearchResult out;
    out.value = best->value;
    out.x = Vector::zero(n);
    detail::decode(s, charts[best->chart], best->u.data(), out.x.coords.data(), moduli.data());
    out.evaluations = evals;
    return out;
}

// ---------------------------------------------------------------------------
// Exhaustive angular grid
// ---------------------------------------------------------------------------

inline bool grid_supported(const SpaceDescriptor& s) { return s.is_complex() ? s.dim <= 2 : s.dim <= 3; }

struct GridResult {
    double value = 0.0;
    Vector x;
    long evaluations = 0;
};

namespace detail {

/// Euclidean direction for grid angles, radially normalized onto the sphere of s.
inline void grid_point(const SpaceDescriptor& s, const double* a, Scalar* x, double* moduli) {
    switch (s.is_complex() ? s.dim + 10 : s.dim) {
        case 1:
        case 11:
            x[0] = 1.0;
            break;
        case 2:
            x[0] = std::cos(a[0]);
            x[1] = std::sin(a[0]);
            break;
        case 3:
            x[0] = std::sin(a[0]) * std::cos(a[1]);
            x[1] = std::sin(a[0]) * std::sin(a[1]);
            x[2] = std::cos(a[0]);
            break;
        case 12:
            x[0] = std::cos(a[0]);
            x[1] = std::polar(std::sin(a[0]), a[1]);
            break;
        default:
            throw OracleTooLarge(s.dim);
    }
    const double nx = norm_raw(s, x, moduli);
    for (int i = 0; i < s.dim; ++i) x[i] /= nx;
}

inline int grid_angles(const SpaceDescriptor& s) {
    if (!grid_supported(s)) throw OracleTooLarge(s.dim);
    if (s.dim == 1) return 0;
    return s.is_complex() ? 2 : s.dim - 1;
}

}  // namespace detail

/// Extremum of f over a grid of step pi/resolution in each angle, then `zoom`
/// levels of 5x finer local grids around the best few cells. Real directions
/// cover the sphere up to sign; complex ones up to a global phase, under which
/// every objective here is invariant.
template <class F>
GridResult grid_search(const SpaceDescriptor& s, F&& f, Extremum sense, int resolution, int zoom = 2) {
    if (resolution < 1) throw InputError("grid resolution must be >= 1");
    const int m = detail::grid_angles(s);
    const int n = s.dim;
    std::vector<Scalar> x(n);
    std::vector<double> moduli(n);
    GridResult out;
    const double step = M_PI / resolution;

    struct Cell {
        double value;
        double a[2];
    };
    constexpr int kKeep = 4;
    std::vector<Cell> top;
    auto consider = [&](double a0, double a1) {
        const double a[2] = {a0, a1};
        detail::grid_point(s, a, x.data(), moduli.data());
        const double v = f(x.data());
        ++out.evaluations;
        if (!std::isfinite(v)) return;
        if (static_cast<int>(top.size()) < kKeep || improves(sense, v, top.back().value)) {
            Cell c{v, {a0, a1}};
            auto it = std::find_if(top.begin(), top.end(), [&](const Cell& t) { return improves(sense, v, t.value); });
            top.insert(it, c);
            if (static_cast<int>(top.size()) > kKeep) top.pop_back();
        }
    };

    if (m == 0) {
        consider(0.0, 0.0);
    } else if (m == 1) {
        for (int k = 0; k < resolution; ++k) consider(k * step, 0.0);
    } else if (!s.is_complex()) {
        for (int i = 0; i <= resolution; ++i)
            for (int j = 0; j < resolution; ++j) consider(i * step, j * step);
    } else {
        const int half = (resolution + 1) / 2;
        for (int i = 0; i <= half; ++i)
            for (int j = 0; j < 2 * resolution; ++j) consider(std::min(i * step, M_PI / 2), j * step);
    }

    Cell best = top.front();
    if (m > 0) {
        const auto seeds = top;
        for (const Cell& seed : seeds) {
            Cell center = seed;
            double h = step;
            for (int level = 0; level < zoom; ++level) {
                const double fine = h / 5.0;
                Cell local = center;
                const int span = 10;
                for (int di = -span; di <= span; ++di) {
                    for (int dj = (m == 2 ? -span : 0); dj <= (m == 2 ? span : 0); ++dj) {
                        const double a[2] = {center.a[0] + di * fine, center.a[1] + dj * fine};
                        detail::grid_point(s, a, x.data(), moduli.data());
                        const double v = f(x.data());
                        ++out.evaluations;
                        if (std::isfinite(v) && improves(sense, v, local.value)) local = Cell{v, {a[0], a[1]}};
                    }
                }
                center = local;
                h = fine;
            }
            if (improves(sense, center.value, best.value)) best = center;
        }
    }
    out.value = best.value;
    out.x = Vector::zero(n);
    detail::grid_point(s, best.a, out.x.coords.data(), moduli.data());
    return out;
}

}  // namespace crawford
