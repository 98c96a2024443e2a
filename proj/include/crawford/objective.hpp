#pragma once

#include <utility>
#include <vector>

#include "crawford/operator.hpp"
#include "crawford/result.hpp"

namespace crawford {

/// Evaluates one of the four quantities at unit vectors of the operator's space:
///   crawford  min over the duality face of |x*(Tx)|
///   radius    max over the duality face of |x*(Tx)|
///   minnorm / opnorm   ||Tx||
/// operator() is the allocation-free hot path used by searches and grids.
class Objective {
public:
    Objective(const Operator& op, Quantity q) : op_(&op), q_(q) {
        const int n = op.dim();
        tx_.resize(n);
        moduli_.resize(n);
        scratch_.reserve(n);
    }

    Quantity quantity() const { return q_; }
    Extremum sense() const { return sense_of(q_); }
    const Operator& op() const { return *op_; }

    double operator()(const Scalar* x) {
        apply_raw(x);
        if (q_ == Quantity::minnorm || q_ == Quantity::opnorm)
            return detail::norm_raw(op_->space, tx_.data(), moduli_.data());
        const Extremum mode = q_ == Quantity::crawford ? Extremum::min : Extremum::max;
        return detail::face_extremum(op_->space, x, tx_.data(), mode, scratch_, nullptr);
    }

    /// The value at unit x together with the state attaining it.
    std::pair<double, State> certify(const Vector& x) {
        if (q_ == Quantity::minnorm || q_ == Quantity::opnorm) {
            State st = make_state(op_->space, x);
            return {norm(op_->space, apply(*op_, st.x)), std::move(st)};
        }
        const Vector u{x.coords / norm(op_->space, x)};
        apply_raw(u.coords.data());
        Functional w{CVector::Zero(op_->dim())};
        const Extremum mode = q_ == Quantity::crawford ? Extremum::min : Extremum::max;
        detail::face_extremum(op_->space, u.coords.data(), tx_.data(), mode, scratch_, w.coords.data());
        State st{u, std::move(w)};
        const double value = std::abs(st.xstar(apply(*op_, st.x)));
        return {value, std::move(st)};
    }

private:
    void apply_raw(const Scalar* x) {
        const int n = op_->dim();
        const Scalar* m = op_->matrix.data();  // column major
        for (int i = 0; i < n; ++i) tx_[i] = 0.0;
        for (int j = 0; j < n; ++j) {
            const Scalar xj = x[j];
            if (xj == Scalar(0.0)) continue;
            const Scalar* col = m + static_cast<std::size_t>(j) * n;
            for (int i = 0; i < n; ++i) tx_[i] += col[i] * xj;
        }
    }

    const Operator* op_;
    Quantity q_;
    std::vector<Scalar> tx_;
    std::vector<double> moduli_;
    detail::FaceScratch scratch_;
};

}  // namespace crawford
