#include <gtest/gtest.h>

#include <random>

#include "crawford/bpb.hpp"

using namespace crawford;

namespace {

const SpaceDescriptor kL2 = SpaceDescriptor::lp(2, 2.0);

State e1_state(const SpaceDescriptor& s) { return make_state(s, Vector::basis(s.dim, 0)); }

void expect_trace_bounds(const BpbTrace& tr, const BpbConfig& cfg) {
    ASSERT_FALSE(tr.steps.empty());
    double s = cfg.eps / 4.0;
    for (const auto& st : tr.steps) {
        EXPECT_NEAR(st.step, s, 1e-15 * s);
        EXPECT_LE(st.op_delta, s + 1e-12);
        EXPECT_LE(st.dx, s / 4.0 + st.slack_x + 1e-12);
        EXPECT_LE(st.dxstar, s / 4.0 + st.slack_xstar + 1e-12);
        EXPECT_NEAR(std::abs(st.lambda), 1.0, 1e-15);
        s *= cfg.eps / 4.0;
    }
    for (std::size_t i = 1; i < tr.steps.size(); ++i)
        EXPECT_LE(std::abs(tr.steps[i].c_estimate - tr.steps[i - 1].c_estimate),
                  tr.steps[i - 1].op_delta + 2.0 * cfg.inner_tol);
    EXPECT_LE(tr.total_distance, cfg.eps / 2.0 + 1e-9);
    EXPECT_LT(tr.start_dx, cfg.eps);
    EXPECT_LT(tr.start_dxstar, cfg.eps);
    EXPECT_LE(std::abs(tr.final_value - tr.final_c), cfg.inner_tol + tr.tail);
}

}  // namespace

TEST(Eta, Values) {
    EXPECT_NEAR(eta(kL2, 2.0), 0.5 * (1.0 - std::sqrt(15.0) / 4.0), 1e-12);
    EXPECT_NEAR(eta(kL2, 2.0), 0.015877081724, 1e-12);
    EXPECT_LT(eta(kL2, 1.0), eta(kL2, 2.0));
    EXPECT_THROW(eta(SpaceDescriptor::lp(2, 1.0), 1.0), NotUniformlyConvex);
    EXPECT_THROW(eta(SpaceDescriptor::lp(2, kInfinity), 1.0), NotUniformlyConvex);
    // p and its conjugate give the same value: the definition is symmetric in X, X*
    EXPECT_NEAR(eta(SpaceDescriptor::lp(2, 3.0), 1.0), eta(SpaceDescriptor::lp(2, 1.5), 1.0), 1e-15);
}

TEST(BpbRefine, IdentityFirstStep) {
    const Operator I = identity(kL2);
    BpbConfig cfg;
    cfg.eps = 1.0;
    const BpbTrace tr = bpb_refine(I, e1_state(kL2), cfg);
    ASSERT_GE(tr.steps.size(), 2u);
    const BpbStep& s0 = tr.steps[0];
    EXPECT_EQ(s0.lambda, Scalar(-1.0));
    EXPECT_DOUBLE_EQ(s0.step, 0.25);
    EXPECT_NEAR(s0.op_delta, 0.25, 1e-15);
    EXPECT_NEAR(s0.c_estimate, 1.0, 1e-12);
    // T_1 = I - (1/4) e1*(.) e1 has c = 3/4, attained at e1
    EXPECT_NEAR(tr.steps[1].c_estimate, 0.75, 1e-12);
    EXPECT_NEAR(std::abs(tr.steps[1].state.x.coords(0)), 1.0, 1e-9);
    expect_trace_bounds(tr, cfg);
    const CMatrix expected = CMatrix::Identity(2, 2) - CMatrix{{cfg.eps / 4.0 / (1.0 - cfg.eps / 4.0), 0}, {0, 0}};
    EXPECT_LE((tr.S.matrix - expected).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(BpbRefine, Preconditions) {
    const Operator D{kL2, CMatrix{{1, 0}, {0, 2}}};
    BpbConfig cfg;
    EXPECT_THROW(bpb_refine(D, make_state(kL2, Vector::basis(2, 1)), cfg), PreconditionFailed);
    EXPECT_THROW(bpb_refine(identity(SpaceDescriptor::lp(2, 1.0)), e1_state(SpaceDescriptor::lp(2, 1.0)), cfg),
                 NotUniformlyConvex);
    cfg.eps = 4.0;
    EXPECT_THROW(bpb_refine(identity(kL2), e1_state(kL2), cfg), InputError);
    cfg.eps = 1.0;
    cfg.max_iter = 0;
    EXPECT_THROW(bpb_refine(identity(kL2), e1_state(kL2), cfg), InputError);
    cfg.max_iter = 10;
    State bad = e1_state(kL2);
    bad.xstar.coords *= 2.0;
    EXPECT_THROW(bpb_refine(identity(kL2), bad, cfg), InputError);
}

struct Case {
    double p;
    Field field;
    double eps;
};

class BpbRuns : public ::testing::TestWithParam<Case> {};

TEST_P(BpbRuns, StepBoundsHold) {
    const Case c = GetParam();
    const SpaceDescriptor s = SpaceDescriptor::lp(2, c.p, c.field);
    std::mt19937_64 rng(99);
    std::normal_distribution<double> g;
    for (int t = 0; t < 2; ++t) {
        CMatrix m = CMatrix::Identity(2, 2);
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) m(i, j) += 0.07 * Scalar(g(rng), c.field == Field::complex ? g(rng) : 0.0);
        const Operator T{s, (1.0 + c.eps) * m};
        BpbConfig cfg;
        cfg.eps = c.eps;
        const BpbTrace tr = bpb_refine(T, crawford_number(T).certificate, cfg);
        expect_trace_bounds(tr, cfg);
        EXPECT_TRUE(is_state(s, tr.final_state, 1e-10));
    }
}

INSTANTIATE_TEST_SUITE_P(Spaces, BpbRuns,
                         ::testing::Values(Case{2.0, Field::real, 0.5}, Case{2.0, Field::complex, 2.0},
                                           Case{1.5, Field::real, 1.0}, Case{3.0, Field::real, 2.0},
                                           Case{3.0, Field::complex, 0.5}));
