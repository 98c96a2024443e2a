#include <gtest/gtest.h>

#include <random>

#include "crawford/norms.hpp"
#include "oracles.hpp"

using namespace crawford;

namespace {

Operator real_op(const SpaceDescriptor& s, std::initializer_list<std::initializer_list<double>> rows) {
    CMatrix m(s.dim, s.dim);
    int i = 0;
    for (auto r : rows) {
        int j = 0;
        for (double v : r) m(i, j++) = v;
        ++i;
    }
    return make_operator(s, m);
}

oracle::Space mirror(const SpaceDescriptor& s) { return {s.dim, s.p(), s.norm.weights, s.is_complex()}; }

Vector vec(std::initializer_list<Scalar> c) {
    CVector v(c.size());
    int i = 0;
    for (Scalar z : c) v(i++) = z;
    return Vector{v};
}

}  // namespace

TEST(Apply, Examples) {
    const SpaceDescriptor s = SpaceDescriptor::lp(2, 2.0);
    EXPECT_EQ(apply(identity(s), vec({3, 4})).coords, vec({3, 4}).coords);
    EXPECT_EQ(apply(real_op(s, {{0, 1}, {1, 0}}), vec({1, 0})).coords, vec({0, 1}).coords);
    EXPECT_EQ(apply(real_op(s, {{0, 0}, {0, 0}}), vec({5, -2})).coords, vec({0, 0}).coords);
    EXPECT_THROW(apply(identity(s), vec({1, 2, 3})), DimensionMismatch);
}

TEST(Adjoint, Examples) {
    const Operator swap = real_op(SpaceDescriptor::lp(2, 2.0), {{0, 1}, {1, 0}});
    EXPECT_EQ(adjoint(swap).matrix, swap.matrix);
    const Operator t = real_op(SpaceDescriptor::lp(2, 1.0), {{1, 2}, {3, 4}});
    EXPECT_EQ(adjoint(t).space.p(), kInfinity);
    EXPECT_EQ(adjoint(t).matrix, t.matrix.transpose());
    CMatrix m = CMatrix::Zero(2, 2);
    m(0, 1) = Scalar(0, 1);
    const Operator a = adjoint(Operator{SpaceDescriptor::lp(2, 2.0, Field::complex), m});
    EXPECT_EQ(a.matrix(1, 0), Scalar(0, -1));
    EXPECT_EQ(a.matrix(0, 1), Scalar(0));
    EXPECT_EQ(adjoint(adjoint(t)).matrix, t.matrix);
    EXPECT_EQ(adjoint(adjoint(t)).space, t.space);
}

TEST(OperatorNorm, Examples) {
    for (double p : {1.0, 1.5, 2.0, 3.0, kInfinity})
        EXPECT_NEAR(operator_norm(identity(SpaceDescriptor::lp(3, p))).value, 1.0, 1e-9);
    const Operator t = real_op(SpaceDescriptor::lp(2, 1.0), {{1, 0}, {2, 3}});
    const ComputeResult r = operator_norm(t);
    EXPECT_NEAR(r.value, 3.0, 1e-12);
    EXPECT_NEAR(oracle::brute(mirror(t.space), t.matrix, oracle::Q::opnorm, 2000), 3.0, 1e-3);
    EXPECT_NEAR(norm(t.space, apply(t, r.certificate.x)), 3.0, 1e-12);
    EXPECT_NEAR(operator_norm(real_op(SpaceDescriptor::lp(2, 2.0), {{1, 0}, {0, 0.5}})).value, 1.0, 1e-12);
}

TEST(MinimumNorm, Examples) {
    EXPECT_NEAR(minimum_norm(identity(SpaceDescriptor::lp(2, 3.0))).value, 1.0, 1e-9);
    const ComputeResult k = minimum_norm(real_op(SpaceDescriptor::lp(2, 2.0), {{1, 0}, {0, 0}}));
    EXPECT_EQ(k.value, 0.0);
    EXPECT_NEAR(std::abs(k.certificate.x.coords(0)), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(k.certificate.x.coords(1)), 1.0, 1e-15);
    EXPECT_TRUE(k.attained);
    const Operator d = real_op(SpaceDescriptor::lp(3, 2.0), {{1, 0, 0}, {0, 0.5, 0}, {0, 0, 1.0 / 3}});
    EXPECT_NEAR(minimum_norm(d).value, 1.0 / 3, 1e-12);
}

TEST(RankOneUpdate, Examples) {
    const SpaceDescriptor s = SpaceDescriptor::lp(2, 2.0);
    const Operator z{s, CMatrix::Zero(2, 2)};
    const Operator u = rank_one_update(z, Functional{Vector::basis(2, 0).coords}, Vector::basis(2, 1), 1.0);
    EXPECT_EQ(u.matrix(1, 0), Scalar(1.0));
    EXPECT_EQ(u.matrix.cwiseAbs().sum(), 1.0);
    const Operator t = real_op(s, {{1, 2}, {3, 4}});
    EXPECT_EQ(rank_one_update(t, Functional{vec({1, 1}).coords}, vec({2, -1}), 0.0).matrix, t.matrix);
    const Functional f{vec({0.3, -0.7}).coords};
    const Vector v = vec({1.1, 0.2});
    const Operator back = rank_one_update(rank_one_update(t, f, v, 0.9), f, v, -0.9);
    EXPECT_LE((back.matrix - t.matrix).cwiseAbs().maxCoeff(), 1e-14);
}

struct Case {
    double p;
    Field field;
    int dim;
};

class OperProperties : public ::testing::TestWithParam<Case> {
protected:
    SpaceDescriptor space() const { return SpaceDescriptor::lp(GetParam().dim, GetParam().p, GetParam().field); }
    Operator random(std::mt19937_64& rng) const {
        const SpaceDescriptor s = space();
        std::normal_distribution<double> g;
        CMatrix m(s.dim, s.dim);
        for (int i = 0; i < s.dim; ++i)
            for (int j = 0; j < s.dim; ++j) m(i, j) = Scalar(g(rng), s.is_complex() ? g(rng) : 0.0);
        return Operator{s, m};
    }
};

TEST_P(OperProperties, DualNormIdentity) {
    std::mt19937_64 rng(21);
    for (int t = 0; t < 6; ++t) {
        const Operator T = random(rng);
        EXPECT_NEAR(operator_norm(T).value, operator_norm(adjoint(T)).value, 2 * kMultistartTol);
    }
}

TEST_P(OperProperties, MinNormBelowOpNorm) {
    std::mt19937_64 rng(22);
    for (int t = 0; t < 6; ++t) {
        const Operator T = random(rng);
        EXPECT_LE(minimum_norm(T).value, operator_norm(T).value + 2 * kMultistartTol);
    }
}

TEST_P(OperProperties, RankDeficientHasZeroMinNorm) {
    std::mt19937_64 rng(23);
    for (int t = 0; t < 6; ++t) {
        Operator T = random(rng);
        T.matrix.col(t % T.dim()) = T.matrix.col((t + 1) % T.dim()) * 0.5;
        const ComputeResult r = minimum_norm(T);
        EXPECT_LE(r.value, kMultistartTol);
        EXPECT_LE(norm(T.space, apply(T, r.certificate.x)), kMultistartTol);
    }
}

TEST_P(OperProperties, AgreesWithBruteForce) {
    const SpaceDescriptor s = space();
    if (s.dim > (s.is_complex() ? 2 : 3)) GTEST_SKIP();
    std::mt19937_64 rng(24);
    const int res = s.dim == 3 || s.is_complex() ? 300 : 2000;
    for (int t = 0; t < 3; ++t) {
        const Operator T = random(rng);
        const double bn = oracle::brute(mirror(s), T.matrix, oracle::Q::opnorm, res);
        const double bm = oracle::brute(mirror(s), T.matrix, oracle::Q::minnorm, res);
        // grid values are feasible, so exact extrema can only beat them; the gap is
        // first order in the angular step at kinks of the norm
        const double band = 2.0 * T.matrix.norm() * std::numbers::pi / res;
        const double a = operator_norm(T).value, m = minimum_norm(T).value;
        EXPECT_GE(a, bn - 1e-9);
        EXPECT_LE(a, bn + band);
        EXPECT_LE(m, bm + 1e-9);
        EXPECT_GE(m, bm - band);
    }
}

INSTANTIATE_TEST_SUITE_P(Spaces, OperProperties,
                         ::testing::Values(Case{1.0, Field::real, 2}, Case{1.5, Field::real, 2},
                                           Case{2.0, Field::real, 2}, Case{3.0, Field::real, 3},
                                           Case{kInfinity, Field::real, 3}, Case{1.0, Field::complex, 2},
                                           Case{2.0, Field::complex, 2}, Case{3.0, Field::complex, 2},
                                           Case{kInfinity, Field::complex, 3}, Case{1.5, Field::real, 4}));
