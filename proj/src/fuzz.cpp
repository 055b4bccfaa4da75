#include "blockform/fuzz.hpp"

#include <atomic>
#include <cmath>
#include <exception>
#include <thread>

#include "blockform/multilinear.hpp"

namespace blockform {

namespace {

struct InstanceOutcome {
    std::vector<FuzzRecord> records;
    std::size_t skipped = 0;
    std::optional<std::string> error;
};

std::vector<int> r_values_for(const FuzzConfig& cfg) {
    std::vector<int> rs;
    for (int r = 1; r <= cfg.r_max; ++r) rs.push_back(r);
    return rs;
}

InstanceOutcome run_instance(const FuzzConfig& cfg, const std::vector<int>& rs, std::size_t trial,
                             std::size_t kind_index) {
    InstanceOutcome out;
    const GeneratorSpec spec = instance_spec(cfg, trial, kind_index);
    try {
        const BlockMatrix h = generate(spec);
        std::vector<SkippedEvaluation> skipped;
        const auto reports = evaluate_all(h, rs, cfg.tol, &skipped);
        out.skipped = skipped.size();
        out.records.reserve(reports.size());
        for (const auto& rep : reports) out.records.push_back({trial, spec.kind, spec.seed, cfg.n, cfg.k, rep});
    } catch (const std::exception& e) {
        out.error = "trial " + std::to_string(trial) + " kind " + std::string(to_string(spec.kind)) + " seed " +
                    std::to_string(spec.seed) + ": " + e.what();
    }
    return out;
}

}  // namespace

GeneratorSpec instance_spec(const FuzzConfig& cfg, std::size_t trial, std::size_t kind_index) {
    GeneratorSpec spec;
    spec.kind = cfg.kinds.at(kind_index);
    spec.n = cfg.n;
    spec.k = cfg.k;
    spec.seed = derive_trial_seed(cfg.master_seed, trial * cfg.kinds.size() + kind_index);
    return spec;
}

void validate(const FuzzConfig& cfg) {
    if (cfg.n < 1 || cfg.k < 1) throw std::invalid_argument("fuzz: n and k must be at least 1");
    if (cfg.r_max < 1) throw std::invalid_argument("fuzz: r_max must be at least 1");
    if (cfg.kinds.empty()) throw std::invalid_argument("fuzz: at least one instance kind is required");
    if (!(cfg.tol >= 0.0)) throw std::invalid_argument("fuzz: tolerance must be non-negative");
    const std::size_t block = checked_pow(cfg.k, cfg.r_max, kTensorCapacity);
    if (cfg.n * block > kTensorCapacity) {
        throw CapacityError("fuzz: n * k^r_max = " + std::to_string(cfg.n * block) + " exceeds capacity " +
                            std::to_string(kTensorCapacity));
    }
}

FuzzResult run_fuzz(const FuzzConfig& cfg) {
    validate(cfg);
    const std::vector<int> rs = r_values_for(cfg);
    const std::size_t kinds = cfg.kinds.size();
    const std::size_t total = cfg.trials * kinds;

    std::vector<InstanceOutcome> outcomes(total);
    std::size_t threads = cfg.threads ? cfg.threads : std::max(1u, std::thread::hardware_concurrency());
    threads = std::min(threads, std::max<std::size_t>(total, 1));
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t idx = next.fetch_add(1); idx < total; idx = next.fetch_add(1))
            outcomes[idx] = run_instance(cfg, rs, idx / kinds, idx % kinds);
    };
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
    }

    // Aggregate in instance order so the summary does not depend on scheduling.
    FuzzResult result;
    FuzzSummary& sum = result.summary;
    sum.trials = cfg.trials;
    sum.instances = total;
    std::map<InequalityId, double> margin_sums;
    for (auto& outcome : outcomes) {
        sum.skipped += outcome.skipped;
        if (outcome.error) {
            ++sum.errors;
            ++sum.violations;
            sum.error_messages.push_back(*outcome.error);
        }
        for (const auto& rec : outcome.records) {
            const InequalityReport& rep = rec.report;
            ++sum.reports;
            if (!rep.holds) ++sum.violations;
            InequalityStats& st = sum.per_inequality_stats[rep.id];
            if (rep.degenerate) {
                ++st.degenerate;
                continue;
            }
            ++st.count;
            margin_sums[rep.id] += rep.margin;
            if (!st.min_margin || rep.margin < *st.min_margin) st.min_margin = rep.margin;
            if (!sum.worst_margin || rep.margin < *sum.worst_margin) {
                sum.worst_margin = rep.margin;
                sum.worst_instance_seed = rec.seed;
                sum.worst_kind = rec.kind;
                sum.worst_id = rep.id;
                sum.worst_r = rep.r;
            }
        }
        if (cfg.keep_reports) {
            result.records.insert(result.records.end(), std::make_move_iterator(outcome.records.begin()),
                                  std::make_move_iterator(outcome.records.end()));
        }
    }
    for (auto& [id, st] : sum.per_inequality_stats)
        if (st.count > 0) st.mean_margin = margin_sums[id] / static_cast<double>(st.count);
    return result;
}

}  // namespace blockform
