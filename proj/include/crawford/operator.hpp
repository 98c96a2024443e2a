#pragma once

#include <cmath>
#include <complex>

#include "crawford/space.hpp"

namespace crawford {

/// A linear map on a space, acting by the standard matrix-vector product.
struct Operator {
    SpaceDescriptor space;
    CMatrix matrix;

    int dim() const { return space.dim; }
};

inline Operator make_operator(SpaceDescriptor space, CMatrix matrix) {
    validate(space);
    if (matrix.rows() != space.dim || matrix.cols() != space.dim)
        throw DimensionMismatch("matrix must be " + std::to_string(space.dim) + "x" + std::to_string(space.dim));
    if (!matrix.allFinite()) throw InputError("matrix entries must be finite");
    if (space.field == Field::real && matrix.imag().cwiseAbs().maxCoeff() > 0.0)
        throw InputError("real space with complex matrix entries");
    return Operator{std::move(space), std::move(matrix)};
}

inline Operator identity(const SpaceDescriptor& s) { return Operator{s, CMatrix::Identity(s.dim, s.dim)}; }

inline Operator from_real(const SpaceDescriptor& s, const Eigen::MatrixXd& m) {
    return make_operator(s, m.cast<Scalar>());
}

inline Vector apply(const Operator& T, const Vector& x) {
    if (x.size() != T.dim()) throw DimensionMismatch("operator applied to vector");
    return Vector{T.matrix * x.coords};
}

/// T* on the dual space: conjugate transpose.
inline Operator adjoint(const Operator& T) { return Operator{dual_space(T.space), T.matrix.adjoint()}; }

/// x -> Tx + s f(x) v.
inline Operator rank_one_update(const Operator& T, const Functional& f, const Vector& v, Scalar s) {
    if (f.size() != T.dim() || v.size() != T.dim()) throw DimensionMismatch("rank-one update");
    Operator out = T;
    out.matrix += s * v.coords * f.coords.transpose();
    return out;
}

inline Operator operator+(const Operator& a, const Operator& b) {
    if (!(a.space == b.space)) throw DimensionMismatch("operators on different spaces");
    return Operator{a.space, a.matrix + b.matrix};
}

inline Operator operator-(const Operator& a, const Operator& b) {
    if (!(a.space == b.space)) throw DimensionMismatch("operators on different spaces");
    return Operator{a.space, a.matrix - b.matrix};
}

inline Operator operator*(Scalar s, const Operator& a) { return Operator{a.space, s * a.matrix}; }

/// W T W^{-1}, the matrix of T in the coordinates y = W x where the norm is unweighted.
inline CMatrix unweighted_matrix(const Operator& T) {
    CMatrix b = T.matrix;
    if (T.space.norm.kind == NormKind::weighted_lp)
        for (int i = 0; i < T.dim(); ++i)
            for (int j = 0; j < T.dim(); ++j) b(i, j) *= T.space.weight(i) / T.space.weight(j);
    return b;
}

/// Maps unweighted coordinates y back to x = W^{-1} y.
inline Vector from_unweighted(const SpaceDescriptor& s, const CVector& y) {
    Vector x{y};
    for (int i = 0; i < s.dim; ++i) x.coords(i) /= s.weight(i);
    return x;
}

inline bool is_diagonal(const Operator& T) {
    for (int i = 0; i < T.dim(); ++i)
        for (int j = 0; j < T.dim(); ++j)
            if (i != j && T.matrix(i, j) != Scalar(0.0)) return false;
    return true;
}

/// ||f(.) v|| for the rank-one map x -> f(x) v: exactly ||f||_* ||v||.
inline double rank_one_norm(const SpaceDescriptor& s, const Functional& f, const Vector& v) {
    return dual_norm(s, f) * norm(s, v);
}

}  // namespace crawford
