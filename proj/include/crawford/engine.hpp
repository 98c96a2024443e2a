#pragma once

// Certificate-carrying search driver shared by the norm and Crawford modules.

#include <string>
#include <utility>
#include <vector>

#include "crawford/objective.hpp"
#include "crawford/search.hpp"

namespace crawford::detail {

/// +-e_i scaled onto the sphere, in coordinate order.
inline std::vector<Vector> coordinate_seeds(const SpaceDescriptor& s) {
    std::vector<Vector> out;
    for (int i = 0; i < s.dim; ++i) {
        out.push_back(Vector::basis(s.dim, i, 1.0 / s.weight(i)));
        out.push_back(Vector::basis(s.dim, i, -1.0 / s.weight(i)));
    }
    return out;
}

/// Right singular vectors and Hermitian-part eigenvectors of W T W^{-1}, mapped back.
inline std::vector<Vector> spectral_seeds(const Operator& T) {
    std::vector<Vector> out;
    const CMatrix b = unweighted_matrix(T);
    auto push = [&](const CVector& y) {
        Vector x = from_unweighted(T.space, y);
        const double nx = norm(T.space, x);
        if (nx > 0.0) out.push_back(Vector{x.coords / nx});
    };
    if (T.space.is_complex()) {
        Eigen::JacobiSVD<CMatrix> svd(b, Eigen::ComputeFullV);
        for (int k = 0; k < b.cols(); ++k) push(svd.matrixV().col(k));
        Eigen::SelfAdjointEigenSolver<CMatrix> eig((b + b.adjoint()) / 2.0);
        for (int k = 0; k < b.cols(); ++k) push(eig.eigenvectors().col(k));
    } else {
        const Eigen::MatrixXd br = b.real();
        Eigen::JacobiSVD<Eigen::MatrixXd> svd(br, Eigen::ComputeFullV);
        for (int k = 0; k < br.cols(); ++k) push(svd.matrixV().col(k).cast<Scalar>());
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig((br + br.transpose()) / 2.0);
        for (int k = 0; k < br.cols(); ++k) push(eig.eigenvectors().col(k).cast<Scalar>());
    }
    return out;
}

/// Builds a ComputeResult from a claimed value and a point; the certificate's
/// phase is normalized so its first significant coordinate is real positive.
inline ComputeResult certify(const Operator& T, Quantity q, const Vector& x, double value, double tol,
                             std::string method) {
    Objective obj(T, q);
    auto [witness, state] = obj.certify(x);
    ComputeResult r;
    r.certificate = rotate(state, canonical_phase(state.x));
    r.witness_value = witness;
    r.value = value;
    r.residual = std::abs(witness - value);
    r.attained = r.residual <= tol;
    r.method = std::move(method);
    return r;
}

inline SearchOptions search_options(const SolveOptions& opt) {
    SearchOptions so;
    so.starts = opt.starts;
    so.seed = opt.seed;
    return so;
}

/// Multi-start search for quantity q, cross-checked by (and seeded from) the
/// grid oracle where it applies. With grid_only the grid answer is returned as is.
inline ComputeResult search_quantity(const Operator& T, Quantity q, const SolveOptions& opt,
                                     const std::vector<Vector>& extra_seeds, bool grid_only = false) {
    const double tol = opt.tol.value_or(kMultistartTol);
    Objective obj(T, q);
    const Extremum sense = obj.sense();
    auto f = [&obj](const Scalar* x) { return obj(x); };

    const bool use_grid = grid_only || (opt.grid_cross_check && grid_supported(T.space));
    GridResult grid;
    if (use_grid) grid = grid_search(T.space, f, sense, opt.grid_resolution, opt.grid_zoom);
    if (grid_only) return certify(T, q, grid.x, grid.value, tol, "grid_oracle");

    std::vector<Vector> seeds = coordinate_seeds(T.space);
    seeds.insert(seeds.end(), extra_seeds.begin(), extra_seeds.end());
    if (use_grid) seeds.push_back(grid.x);
    const SearchResult best = sphere_search(T.space, f, sense, seeds, search_options(opt));
    return certify(T, q, best.x, best.value, tol, use_grid ? "multistart+grid" : "multistart");
}

/// Local refinement of an existing result (used when a closed form leaves a residual).
inline ComputeResult polish(const Operator& T, Quantity q, const ComputeResult& r, const SolveOptions& opt) {
    Objective obj(T, q);
    auto f = [&obj](const Scalar* x) { return obj(x); };
    SearchOptions so = search_options(opt);
    so.starts = 1;
    so.samples_per_chart = 1;
    const SearchResult best = sphere_search(T.space, f, obj.sense(), {r.certificate.x}, so);
    auto [witness, state] = obj.certify(best.x);
    if (!improves(obj.sense(), witness, r.witness_value)) return r;
    ComputeResult out = r;
    out.certificate = rotate(state, canonical_phase(state.x));
    out.witness_value = witness;
    out.value = obj.sense() == Extremum::min ? std::min(r.value, witness) : std::max(r.value, witness);
    out.residual = std::abs(witness - out.value);
    out.attained = out.residual <= opt.tol.value_or(kFastPathTol);
    return out;
}

}  // namespace crawford::detail
