#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "blockform/generators.hpp"
#include "blockform/inequalities.hpp"

namespace blockform {

struct FuzzConfig {
    std::size_t n = 2;
    std::size_t k = 2;
    int r_max = 2;
    std::size_t trials = 100;
    std::uint64_t master_seed = 1;
    std::vector<InstanceKind> kinds{InstanceKind::wishart};
    double tol = kDefaultMarginTol;
    /// 0 picks std::thread::hardware_concurrency().
    std::size_t threads = 0;
    /// Keep every report (for --out); otherwise only the summary is built.
    bool keep_reports = false;
};

/// A report tagged with the instance that produced it.
struct FuzzRecord {
    std::size_t trial = 0;
    InstanceKind kind = InstanceKind::wishart;
    std::uint64_t seed = 0;
    std::size_t n = 0;
    std::size_t k = 0;
    InequalityReport report;
};

struct InequalityStats {
    /// Over nondegenerate reports; unset when there are none.
    std::optional<double> min_margin;
    std::optional<double> mean_margin;
    std::size_t degenerate = 0;
    std::size_t count = 0;
};

struct FuzzSummary {
    std::size_t trials = 0;
    std::size_t instances = 0;
    std::size_t reports = 0;
    std::size_t violations = 0;
    /// Instances whose evaluation threw (imaginary residue and the like); each also counts as a violation.
    std::size_t errors = 0;
    std::size_t skipped = 0;
    std::optional<double> worst_margin;
    std::uint64_t worst_instance_seed = 0;
    std::optional<InstanceKind> worst_kind;
    std::optional<InequalityId> worst_id;
    int worst_r = 0;
    std::map<InequalityId, InequalityStats> per_inequality_stats;
    std::vector<std::string> error_messages;
};

struct FuzzResult {
    FuzzSummary summary;
    /// Trial-index order, then kind order, then evaluate_all order.
    std::vector<FuzzRecord> records;
};

/// Generator spec of instance (trial, kind_index) in a campaign.
GeneratorSpec instance_spec(const FuzzConfig& cfg, std::size_t trial, std::size_t kind_index);

/// Throws CapacityError when the configuration cannot run, std::invalid_argument for bad fields.
void validate(const FuzzConfig& cfg);

/// Output is independent of thread count and scheduling.
FuzzResult run_fuzz(const FuzzConfig& cfg);

}  // namespace blockform
