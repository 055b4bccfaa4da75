#include <gtest/gtest.h>

#include "blockform/errors.hpp"
#include "blockform/fuzz.hpp"
#include "blockform/serialization.hpp"

namespace blockform {
namespace {

FuzzConfig small(std::size_t trials = 10) {
    FuzzConfig cfg;
    cfg.n = 2;
    cfg.k = 2;
    cfg.r_max = 2;
    cfg.trials = trials;
    cfg.master_seed = 11;
    cfg.kinds = {InstanceKind::wishart, InstanceKind::rank_deficient, InstanceKind::near_singular};
    cfg.keep_reports = true;
    return cfg;
}

TEST(Fuzz, ZeroTrialsIsEmpty) {
    FuzzConfig cfg = small(0);
    const FuzzResult res = run_fuzz(cfg);
    EXPECT_EQ(res.summary.instances, 0u);
    EXPECT_EQ(res.summary.reports, 0u);
    EXPECT_EQ(res.summary.violations, 0u);
    EXPECT_FALSE(res.summary.worst_margin.has_value());
    EXPECT_TRUE(res.records.empty());
}

TEST(Fuzz, SmallCampaignHasNoViolations) {
    const FuzzResult res = run_fuzz(small());
    EXPECT_EQ(res.summary.trials, 10u);
    EXPECT_EQ(res.summary.instances, 30u);
    EXPECT_EQ(res.summary.violations, 0u);
    EXPECT_EQ(res.summary.errors, 0u);
    EXPECT_EQ(res.summary.reports, res.records.size());
    // 4 power-free ids plus 8 power ids at r = 1, 2.
    EXPECT_EQ(res.records.size(), 30u * 20u);
    ASSERT_TRUE(res.summary.worst_margin.has_value());
    EXPECT_GE(*res.summary.worst_margin, -1e-8);
}

TEST(Fuzz, StatsSkipDegenerateReports) {
    const FuzzResult res = run_fuzz(small());
    for (const auto& [id, st] : res.summary.per_inequality_stats) {
        EXPECT_GT(st.degenerate, 0u) << to_string(id);
        EXPECT_GT(st.count, st.degenerate);
        ASSERT_TRUE(st.min_margin.has_value());
        EXPECT_LE(*st.min_margin, *st.mean_margin);
    }
}

TEST(Fuzz, ThreadCountDoesNotChangeOutput) {
    FuzzConfig one = small();
    one.threads = 1;
    FuzzConfig four = small();
    four.threads = 4;
    const FuzzResult a = run_fuzz(one);
    const FuzzResult b = run_fuzz(four);
    EXPECT_EQ(summary_to_json(a.summary), summary_to_json(b.summary));
    EXPECT_EQ(records_to_json(a.records), records_to_json(b.records));
}

TEST(Fuzz, SameSeedSameBytes) {
    EXPECT_EQ(records_to_json(run_fuzz(small()).records), records_to_json(run_fuzz(small()).records));
    FuzzConfig other = small();
    other.master_seed = 12;
    EXPECT_NE(records_to_json(run_fuzz(small()).records), records_to_json(run_fuzz(other).records));
}

TEST(Fuzz, WorstInstanceReplays) {
    const FuzzConfig cfg = small();
    const FuzzResult res = run_fuzz(cfg);
    ASSERT_TRUE(res.summary.worst_id.has_value());
    const GeneratorSpec spec{*res.summary.worst_kind, cfg.n, cfg.k, res.summary.worst_instance_seed, std::nullopt,
                             std::nullopt};
    const InequalityReport rep = evaluate(*res.summary.worst_id, generate(spec), res.summary.worst_r, cfg.tol);
    EXPECT_EQ(rep.margin, *res.summary.worst_margin);
}

TEST(Fuzz, InstanceSeedsAreDistinct) {
    const FuzzConfig cfg = small(50);
    std::set<std::uint64_t> seeds;
    for (std::size_t t = 0; t < cfg.trials; ++t)
        for (std::size_t k = 0; k < cfg.kinds.size(); ++k) seeds.insert(instance_spec(cfg, t, k).seed);
    EXPECT_EQ(seeds.size(), 150u);
}

TEST(Fuzz, ReductionIdentitiesOnCampaign) {
    const FuzzResult res = run_fuzz(small(20));
    std::map<std::uint64_t, double> lin;
    for (const auto& rec : res.records)
        if (rec.report.id == InequalityId::lin && !rec.report.degenerate) lin[rec.seed] = rec.report.margin;
    std::size_t compared = 0;
    for (const auto& rec : res.records) {
        const auto id = rec.report.id;
        if (rec.report.r != 1 || rec.report.degenerate) continue;
        if (id != InequalityId::ext_fm_tensor && id != InequalityId::ext_fm_sym) continue;
        EXPECT_NEAR(rec.report.margin, lin.at(rec.seed), 1e-10);
        ++compared;
    }
    EXPECT_EQ(compared, 2u * 40u);
}

TEST(Fuzz, CapacityRejectedBeforeRunning) {
    FuzzConfig cfg = small();
    cfg.k = 20;
    cfg.r_max = 4;
    EXPECT_THROW(run_fuzz(cfg), CapacityError);
}

TEST(Fuzz, InvalidConfig) {
    FuzzConfig cfg = small();
    cfg.kinds.clear();
    EXPECT_THROW(validate(cfg), std::invalid_argument);
    cfg = small();
    cfg.r_max = 0;
    EXPECT_THROW(validate(cfg), std::invalid_argument);
}

}  // namespace
}  // namespace blockform
