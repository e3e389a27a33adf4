#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "rsp/protocol.hpp"

namespace rsp {

struct BranchOutcome {
    Outcome outcome;
    double probability;
    std::size_t bits;
    double fidelity;
};

struct ExactAnalysis {
    double p_success;
    double expected_bits;
    std::vector<BranchOutcome> per_branch;
};

struct MonteCarloStats {
    std::uint64_t trials;
    std::uint64_t successes;
    std::uint64_t total_bits;
    double success_rate;
    double mean_bits;
    std::uint64_t seed;
};

enum class RowSource { Computed, Literature };

struct ComparisonRow {
    std::string protocol_name;
    std::string target_family;
    std::string channel;
    double classical_bits;
    std::string identification;
    RowSource source;
};

/// Enumerates both measurement branches and weights them by their Born
/// probabilities.
ExactAnalysis exact_analyze(const TargetSpec &target);

/// Counter-based 64-bit mix of (seed, index). Trial i always sees the same
/// stream no matter which worker runs it.
std::uint64_t substream(std::uint64_t seed, std::uint64_t index) noexcept;

/// Uniform double in [0, 1) drawn from substream(seed, index).
double substream_uniform(std::uint64_t seed, std::uint64_t index) noexcept;

/// `workers` = 0 picks std::thread::hardware_concurrency(). The result is
/// identical for every worker count.
MonteCarloStats monte_carlo(const TargetSpec &target, std::uint64_t trials,
                            std::uint64_t seed, unsigned workers = 1);

/// Five literature rows followed by the computed row for `target`.
std::vector<ComparisonRow> emit_comparison_table(const TargetSpec &target);

} // namespace rsp
