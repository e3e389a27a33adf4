#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <set>
#include <sstream>

#include "oracle.hpp"
#include "rsp/analysis.hpp"
#include "rsp/error.hpp"
#include "rsp/serialize.hpp"

using namespace rsp;
using oracle::C;

namespace {

constexpr double kInvSqrt2 = std::numbers::sqrt2 / 2.0;

void expect_branch_invariants(const ExactAnalysis &a) {
    double total = 0.0, success = 0.0, bits = 0.0;
    for (const auto &b : a.per_branch) {
        EXPECT_NEAR(b.probability, 0.5, 1e-12);
        total += b.probability;
        if (b.fidelity >= 1.0 - 1e-9)
            success += b.probability;
        bits += b.probability * static_cast<double>(b.bits);
    }
    EXPECT_NEAR(total, 1.0, 1e-12);
    EXPECT_DOUBLE_EQ(a.p_success, success);
    EXPECT_DOUBLE_EQ(a.expected_bits, bits);
}

std::size_t count_lines(const std::string &s) {
    return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n'));
}

} // namespace

TEST(ExactAnalyze, GeneralTarget) {
    const auto a = exact_analyze(canonicalize_target(0.6, C(0, 0.8), 2));
    EXPECT_NEAR(a.p_success, 0.5, 1e-12);
    EXPECT_NEAR(a.expected_bits, 0.5, 1e-12);
    ASSERT_EQ(a.per_branch.size(), 2u);
    expect_branch_invariants(a);
}

TEST(ExactAnalyze, CaseATarget) {
    const auto a = exact_analyze(canonicalize_target(0.6, 0.8, 3));
    EXPECT_NEAR(a.p_success, 1.0, 1e-12);
    EXPECT_NEAR(a.expected_bits, 1.5, 1e-12);
    expect_branch_invariants(a);
}

TEST(ExactAnalyze, CaseBTarget) {
    const auto a = exact_analyze(canonicalize_target(kInvSqrt2, std::polar(kInvSqrt2, 1.0), 5));
    EXPECT_NEAR(a.p_success, 1.0, 1e-12);
    EXPECT_NEAR(a.expected_bits, 1.5, 1e-12);
    expect_branch_invariants(a);
}

TEST(ExactAnalyze, BranchProbabilitiesIndependentOfTarget) {
    std::mt19937_64 rng(61);
    for (int i = 0; i < 100; ++i) {
        const auto p = oracle::random_pair(rng);
        expect_branch_invariants(
            exact_analyze(canonicalize_target(p.alpha, p.beta, 2 + static_cast<std::size_t>(i) % 6)));
    }
}

TEST(Substream, DeterministicAndSpread) {
    EXPECT_EQ(substream(42, 7), substream(42, 7));
    EXPECT_NE(substream(42, 7), substream(42, 8));
    EXPECT_NE(substream(42, 7), substream(43, 7));
    EXPECT_NE(substream(0, 1), substream(1, 0));

    std::set<std::uint64_t> seen;
    double sum = 0.0;
    const int n = 100000;
    for (int i = 0; i < n; ++i) {
        seen.insert(substream(9, static_cast<std::uint64_t>(i)));
        const double u = substream_uniform(9, static_cast<std::uint64_t>(i));
        ASSERT_GE(u, 0.0);
        ASSERT_LT(u, 1.0);
        sum += u;
    }
    EXPECT_EQ(seen.size(), static_cast<std::size_t>(n));
    // Uniform mean 1/2, sd sqrt(1/12)/sqrt(n).
    EXPECT_NEAR(sum / n, 0.5, 5.0 * std::sqrt(1.0 / 12.0 / n));
}

TEST(MonteCarlo, GeneralTargetWithinThreeSigma) {
    const auto s = monte_carlo(canonicalize_target(0.6, C(0, 0.8), 2), 100000, 42);
    EXPECT_EQ(s.trials, 100000u);
    EXPECT_EQ(s.seed, 42u);
    EXPECT_GE(s.success_rate, 0.495);
    EXPECT_LE(s.success_rate, 0.505);
    EXPECT_DOUBLE_EQ(s.success_rate, static_cast<double>(s.successes) / 100000.0);
    EXPECT_DOUBLE_EQ(s.mean_bits, static_cast<double>(s.total_bits) / 100000.0);
}

TEST(MonteCarlo, CaseATargetAlwaysSucceeds) {
    for (std::uint64_t seed : {1u, 2u, 3u}) {
        const std::uint64_t trials = 20000;
        const auto s = monte_carlo(canonicalize_target(0.6, 0.8, 3), trials, seed);
        EXPECT_EQ(s.success_rate, 1.0);
        EXPECT_NEAR(s.mean_bits, 1.5, 3.0 * 0.5 / std::sqrt(static_cast<double>(trials)));
    }
}

TEST(MonteCarlo, SingleTrialMatchesRecord) {
    const TargetSpec t = canonicalize_target(0.6, C(0, 0.8), 3);
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const auto s = monte_carlo(t, 1, seed);
        const auto rec = run_trial(t, OutcomeSelector::sampled(substream_uniform(seed, 0)));
        EXPECT_EQ(s.successes, rec.success ? 1u : 0u);
        EXPECT_EQ(s.total_bits, rec.bits_sent);
        EXPECT_EQ(s.success_rate, rec.success ? 1.0 : 0.0);
        EXPECT_EQ(s.mean_bits, static_cast<double>(rec.bits_sent));
    }
}

TEST(MonteCarlo, IndependentOfWorkerCount) {
    const TargetSpec t = canonicalize_target(0.6, C(0, 0.8), 4);
    const std::string ref = to_json(monte_carlo(t, 5001, 77, 1)).dump();
    for (unsigned w : {2u, 3u, 8u, 0u})
        EXPECT_EQ(to_json(monte_carlo(t, 5001, 77, w)).dump(), ref) << w;
    // More workers than trials.
    EXPECT_EQ(to_json(monte_carlo(t, 3, 5, 16)).dump(), to_json(monte_carlo(t, 3, 5, 1)).dump());
}

TEST(MonteCarlo, RejectsZeroTrials) {
    EXPECT_THROW(monte_carlo(canonicalize_target(1.0, 0.0, 2), 0, 1), RspError);
}

TEST(MonteCarlo, AgreesWithExactOracle) {
    std::mt19937_64 rng(67);
    const std::uint64_t trials = 20000;
    const double n = static_cast<double>(trials);
    for (int i = 0; i < 30; ++i) {
        const std::size_t m = 2 + static_cast<std::size_t>(i) % 4;
        const TargetSpec t = i % 3 == 0   ? oracle::random_case_a(rng, m)
                             : i % 3 == 1 ? oracle::random_case_b(rng, m)
                                          : oracle::random_general(rng, m);
        const auto exact = exact_analyze(t);
        const auto mc = monte_carlo(t, trials, 1000 + static_cast<std::uint64_t>(i), 4);

        const double p = exact.p_success;
        const double sigma_p = std::sqrt(std::max(0.0, p * (1.0 - p)) / n);
        EXPECT_LE(std::abs(mc.success_rate - p), 5.0 * sigma_p + 1e-12) << i;

        // Per-trial bits take two values with equal weight, one bit apart.
        const double sigma_bits = 0.5 / std::sqrt(n);
        EXPECT_LT(std::abs(mc.mean_bits - exact.expected_bits), 5.0 * sigma_bits) << i;
    }
}

TEST(ComparisonTable, LiteratureRows) {
    const auto rows = emit_comparison_table(canonicalize_target(0.6, C(0, 0.8), 2));
    ASSERT_EQ(rows.size(), 6u);
    struct Expected {
        const char *name, *channel, *id;
        double bits;
    };
    const Expected lit[] = {
        {"Shi et al", "one GHZS", "1-qubit state", 1.0},
        {"Liu et al", "two BSs", "2-qubit ES", 2.0},
        {"Dai et al", "two GHZSs", "2-qubit ES", 1.0},
        {"Zhan et al", "two BSs", "2-qubit ES", 2.0},
        {"Wang et al", "one GHZS and one BS", "2-qubit ES", 0.5},
    };
    for (std::size_t i = 0; i < 5; ++i) {
        EXPECT_EQ(rows[i].protocol_name, lit[i].name);
        EXPECT_EQ(rows[i].channel, lit[i].channel);
        EXPECT_EQ(rows[i].identification, lit[i].id);
        EXPECT_EQ(rows[i].classical_bits, lit[i].bits);
        EXPECT_EQ(rows[i].source, RowSource::Literature);
    }
    EXPECT_EQ(rows[0].target_family, "alpha|00>+beta|11>");
    EXPECT_EQ(rows[2].target_family, "alpha|0000>+beta|1111>");
    EXPECT_EQ(rows[4].target_family, "alpha|000>+beta|111>");
}

TEST(ComparisonTable, ComputedRowFollowsTargetCase) {
    const auto general = emit_comparison_table(canonicalize_target(0.6, C(0, 0.8), 2));
    const auto &g = general.back();
    EXPECT_EQ(g.source, RowSource::Computed);
    EXPECT_NEAR(g.classical_bits, 0.5, 1e-12);
    EXPECT_EQ(g.channel, "one BS");
    EXPECT_EQ(g.identification, "1-qubit state");
    EXPECT_NE(g.protocol_name.find("probabilistic"), std::string::npos);
    EXPECT_EQ(std::count_if(general.begin(), general.end(),
                            [](const auto &r) { return r.source == RowSource::Computed; }),
              1);

    const auto special = emit_comparison_table(canonicalize_target(0.6, 0.8, 5));
    EXPECT_NEAR(special.back().classical_bits, 1.5, 1e-12);
    EXPECT_NE(special.back().protocol_name.find("deterministic"), std::string::npos);
    EXPECT_EQ(special.back().target_family, "alpha|00000>+beta|11111>");
}

TEST(Serialize, JsonFieldNames) {
    const TargetSpec t = canonicalize_target(0.6, C(0, 0.8), 2);
    const auto a = to_json(exact_analyze(t));
    EXPECT_TRUE(a.contains("p_success"));
    EXPECT_TRUE(a.contains("expected_bits"));
    ASSERT_EQ(a["per_branch"].size(), 2u);
    for (const char *k : {"outcome", "probability", "bits", "fidelity"})
        EXPECT_TRUE(a["per_branch"][0].contains(k)) << k;

    const auto s = to_json(monte_carlo(t, 10, 3));
    EXPECT_EQ(s.size(), 6u);
    for (const char *k : {"trials", "successes", "total_bits", "success_rate", "mean_bits", "seed"})
        EXPECT_TRUE(s.contains(k)) << k;

    const auto r = to_json(run_trial(t, OutcomeSelector::forced(Outcome::Psi)));
    EXPECT_TRUE(r["bob_state"].is_null());
    EXPECT_EQ(r["message"], "ABORT");
    EXPECT_EQ(r["bits_sent"], 0);

    const auto rows = to_json(emit_comparison_table(t));
    ASSERT_EQ(rows.size(), 6u);
    EXPECT_EQ(rows[5]["source"], "Computed");
    EXPECT_EQ(rows[0]["source"], "Literature");
}

TEST(Serialize, CsvShapes) {
    const TargetSpec t = canonicalize_target(0.6, 0.8, 2);
    const std::string table = to_csv(emit_comparison_table(t));
    EXPECT_EQ(count_lines(table), 7u);
    EXPECT_EQ(table.find('\r'), std::string::npos);
    EXPECT_EQ(table.substr(0, table.find('\n')),
              "protocol_name,target_family,channel,classical_bits,identification,source");
    EXPECT_NE(table.find("Shi et al,alpha|00>+beta|11>,one GHZS,1,1-qubit state,Literature\n"),
              std::string::npos);

    EXPECT_EQ(count_lines(to_csv(exact_analyze(t))), 3u);
    EXPECT_EQ(count_lines(to_csv(monte_carlo(t, 10, 1))), 2u);
    const std::string trial = to_csv(run_trial(t, OutcomeSelector::forced(Outcome::PsiPerp)));
    EXPECT_EQ(trial, "outcome,message,fidelity,success,bits_sent\npsiperp,0,1,true,1\n");
}
