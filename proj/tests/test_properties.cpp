#include <gtest/gtest.h>

#include "crawford/verify.hpp"

using namespace crawford;

namespace {

VerifyConfig small() {
    VerifyConfig c;
    c.instances = 24;
    c.repair_instances = 12;
    c.bpb_instances = 6;
    c.seed = 2024;
    return c;
}

std::vector<std::string> names() {
    std::vector<std::string> out;
    VerifyConfig c = small();
    c.instances = c.repair_instances = c.bpb_instances = 0;
    for (const auto& s : run_verify(c).invariants) out.push_back(s.name);
    return out;
}

}  // namespace

class Invariant : public ::testing::TestWithParam<std::string> {};

TEST_P(Invariant, HoldsOnSeededInstances) {
    VerifyConfig c = small();
    c.only = GetParam();
    const VerifyReport r = run_verify(c);
    ASSERT_EQ(r.invariants.size(), 1u);
    const InvariantSummary& s = r.invariants[0];
    EXPECT_EQ(s.failed, 0) << io::verify_to_json(r, c).dump(2);
    EXPECT_GT(s.passed, 0);
    EXPECT_GE(s.worst_margin, 0.0);
}

INSTANTIATE_TEST_SUITE_P(Catalog, Invariant, ::testing::ValuesIn(names()),
                         [](const auto& info) { return info.param; });

TEST(Harness, PlantedBugIsCaughtAndReplays) {
    VerifyConfig c = small();
    c.only = "lipschitz";
    c.planted_bug = true;
    const VerifyReport r = run_verify(c);
    EXPECT_FALSE(r.all_passed);
    ASSERT_FALSE(r.invariants[0].failures.empty());
    const FailureDump& f = r.invariants[0].failures.front();
    EXPECT_LT(f.margin, 0.0);
    EXPECT_TRUE(f.detail.contains("operator"));
    VerifyConfig replay = c;
    replay.instance = f.instance;
    const VerifyReport again = run_verify(replay);
    ASSERT_EQ(again.invariants[0].failures.size(), 1u);
    EXPECT_EQ(again.invariants[0].failures[0].seed, f.seed);
    EXPECT_EQ(again.invariants[0].failures[0].margin, f.margin);
    EXPECT_EQ(again.invariants[0].failures[0].detail, f.detail);
}

TEST(Harness, ReportIsDeterministic) {
    VerifyConfig c = small();
    c.instances = 4;
    c.repair_instances = 2;
    c.bpb_instances = 1;
    EXPECT_EQ(io::verify_to_json(run_verify(c), c).dump(), io::verify_to_json(run_verify(c), c).dump());
}

TEST(Harness, EmptyCountsPassVacuouslyWithWarnings) {
    VerifyConfig c = small();
    c.instances = c.repair_instances = c.bpb_instances = 0;
    const VerifyReport r = run_verify(c);
    EXPECT_TRUE(r.all_passed);
    EXPECT_EQ(r.warnings.size(), r.invariants.size());
}

TEST(Harness, UnknownInvariant) {
    VerifyConfig c = small();
    c.only = "no_such_check";
    EXPECT_THROW(run_verify(c), InputError);
}
