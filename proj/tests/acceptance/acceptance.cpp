// Acceptance suite: one PASS/FAIL line per criterion, AC1..AC8.
//
// Exit status is 0 when every criterion passes or fails only for a reason
// listed in kKnownUnattainable (the line still says FAIL); 1 otherwise.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "blockform/dense.hpp"
#include "blockform/fuzz.hpp"
#include "blockform/generators.hpp"
#include "blockform/inequalities.hpp"
#include "blockform/laws.hpp"
#include "blockform/multilinear.hpp"
#include "blockform/serialization.hpp"
#include "json.hpp"
#include "oracles.hpp"

namespace {

using namespace blockform;

struct Outcome {
    bool passed = true;
    std::string detail;
};

class Check {
public:
    void expect(bool ok, const std::string& what) {
        if (ok) return;
        ++failures_;
        if (first_.empty()) first_ = what;
    }
    std::size_t failures() const { return failures_; }
    Outcome outcome(const std::string& summary) const {
        if (failures_ == 0) return {true, summary};
        return {false, summary + "; " + std::to_string(failures_) + " failure(s), first: " + first_};
    }

private:
    std::size_t failures_ = 0;
    std::string first_;
};

std::string fmt(double v) { return format_double(v); }

bool json_reserializes(const std::string& text) { return nlohmann::json::parse(text).dump(2) + "\n" == text; }

ComplexMatrix random_complex(std::size_t rows, std::size_t cols, SeededStream& s) {
    ComplexMatrix out(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) out(i, j) = s.next_complex_gaussian();
    return out;
}

oracle::Dense to_dense(const ComplexMatrix& a) {
    oracle::Dense out(a.rows(), std::vector<Complex>(a.cols()));
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) out[i][j] = a(i, j);
    return out;
}

GeneratorSpec spec_of(InstanceKind kind, std::size_t n, std::size_t k, std::uint64_t seed) {
    return {kind, n, k, seed, std::nullopt, std::nullopt};
}

// ---------------------------------------------------------------------------

Outcome ac1_equality_anchors() {
    Check check;
    const std::vector<int> rs{1, 2, 3};
    std::map<std::string, double> worst;
    for (auto [n, k] : {std::pair<std::size_t, std::size_t>{2, 2}, {2, 3}, {3, 2}}) {
        for (const auto& rep : evaluate_all(BlockMatrix::identity(n, k), rs)) {
            const double m = std::abs(rep.margin);
            auto& w = worst[std::string(to_string(rep.id))];
            w = std::max(w, m);
            check.expect(m <= 1e-10, std::string(to_string(rep.id)) + " r=" + std::to_string(rep.r) + " (n,k)=(" +
                                         std::to_string(n) + "," + std::to_string(k) + ") |margin|=" + fmt(m));
        }
    }
    double worst_block_diag = 0.0;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const BlockMatrix h = generate(spec_of(InstanceKind::block_diagonal, 2 + seed % 2, 2 + (seed / 2) % 2, seed));
        for (InequalityId id : {InequalityId::fischer, InequalityId::thompson}) {
            const double m = std::abs(evaluate(id, h, 1).margin);
            worst_block_diag = std::max(worst_block_diag, m);
            check.expect(m <= 1e-9, "block-diagonal " + std::string(to_string(id)) + " seed " + std::to_string(seed));
        }
    }
    std::size_t ids_ok = 0;
    for (const auto& [id, w] : worst) ids_ok += w <= 1e-10 ? 1 : 0;
    return check.outcome(std::to_string(ids_ok) + "/" + std::to_string(worst.size()) +
                         " ids within 1e-10 at identity; fiedler_markham worst |margin|=" +
                         fmt(worst["fiedler_markham"]) + "; block-diagonal worst=" + fmt(worst_block_diag));
}

// ---------------------------------------------------------------------------

struct CampaignTotals {
    std::size_t instances = 0;
    std::size_t reports = 0;
    std::size_t violations = 0;
    std::size_t errors = 0;
    std::size_t skipped = 0;
    double worst_margin = std::numeric_limits<double>::infinity();
    std::vector<FuzzResult> results;
};

CampaignTotals run_campaigns() {
    CampaignTotals totals;
    std::uint64_t master = 2020;
    for (std::size_t n : {2u, 3u}) {
        for (std::size_t k : {2u, 3u}) {
            for (auto [kind, trials] : {std::pair<InstanceKind, std::size_t>{InstanceKind::wishart, 1000},
                                        {InstanceKind::rank_deficient, 200},
                                        {InstanceKind::near_singular, 200}}) {
                FuzzConfig cfg;
                cfg.n = n;
                cfg.k = k;
                cfg.r_max = 3;
                cfg.trials = trials;
                cfg.master_seed = master++;
                cfg.kinds = {kind};
                cfg.tol = 1e-8;
                cfg.keep_reports = true;
                FuzzResult res = run_fuzz(cfg);
                totals.instances += res.summary.instances;
                totals.reports += res.summary.reports;
                totals.violations += res.summary.violations;
                totals.errors += res.summary.errors;
                totals.skipped += res.summary.skipped;
                if (res.summary.worst_margin) totals.worst_margin = std::min(totals.worst_margin, *res.summary.worst_margin);
                totals.results.push_back(std::move(res));
            }
        }
    }
    return totals;
}

Outcome ac2_campaign(const CampaignTotals& t, double seconds) {
    Check check;
    check.expect(t.violations == 0, std::to_string(t.violations) + " violations");
    check.expect(t.errors == 0, std::to_string(t.errors) + " evaluation errors");
    check.expect(t.skipped == 0, std::to_string(t.skipped) + " skipped evaluations");
    check.expect(seconds < 600.0, "campaign took " + fmt(seconds) + " s");
    for (const auto& res : t.results)
        for (const auto& msg : res.summary.error_messages) check.expect(false, msg);
    std::ostringstream s;
    s << t.instances << " instances, " << t.reports << " reports, violations=" << t.violations
      << ", errors=" << t.errors << ", worst margin=" << fmt(t.worst_margin) << ", " << fmt(std::round(seconds * 10) / 10)
      << " s";
    return check.outcome(s.str());
}

// ---------------------------------------------------------------------------

Outcome ac3_algebra_laws() {
    LawConfig cfg;
    cfg.instances = 200;
    const auto results = run_laws(cfg);
    Check check;
    std::ostringstream s;
    for (const auto& law : results) {
        check.expect(law.passed, law.name + ": " + law.detail);
        check.expect(law.checked >= 200 || law.name == "sym_isometry" || law.name == "embedding",
                     law.name + " checked only " + std::to_string(law.checked));
    }
    const char* required[] = {"tensor_multiplicativity", "sym_multiplicativity", "tensor_trace", "sym_trace",
                              "tensor_determinant",      "sym_determinant",      "psd_preservation",
                              "monotonicity",            "superadditivity"};
    double worst = 0.0;
    for (const char* name : required) {
        bool found = false;
        for (const auto& law : results)
            if (law.name == name) {
                found = true;
                worst = std::max(worst, law.worst_ratio);
            }
        check.expect(found, std::string("law missing: ") + name);
    }
    s << results.size() << " laws x 200 instances, worst error/allowance=" << fmt(worst);
    return check.outcome(s.str());
}

// ---------------------------------------------------------------------------

Outcome ac4_embedding() {
    Check check;
    SeededStream pick(4040);
    std::size_t used = 0;
    double worst = 0.0;
    std::uint64_t seed = 0;
    while (used < 100) {
        const std::size_t n = 1 + pick.next_u64() % 3;
        const std::size_t k = 1 + pick.next_u64() % 3;
        const int r = 1 + static_cast<int>(pick.next_u64() % 3);
        ++seed;
        if (checked_pow(n * k, r, kTensorCapacity) > 1000) continue;
        const BlockMatrix h = generate(spec_of(InstanceKind::wishart, n, k, seed));
        const ComplexMatrix sub = principal_submatrix(tensor_power(h.body(), r), embedding_index_set(n, k, r));
        const ComplexMatrix want = block_map_tensor(h, r).body();
        const double rel = max_abs_diff(sub, want) / want.max_abs();
        worst = std::max(worst, rel);
        check.expect(rel <= 1e-13, "n=" + std::to_string(n) + " k=" + std::to_string(k) + " r=" + std::to_string(r) +
                                       " rel=" + fmt(rel));
        ++used;
    }
    return check.outcome(std::to_string(used) + " instances, worst rel=" + fmt(worst));
}

// ---------------------------------------------------------------------------

Outcome ac5_reductions(const CampaignTotals& t) {
    Check check;
    std::size_t compared = 0;
    double worst = 0.0;
    for (const auto& res : t.results) {
        std::map<std::uint64_t, InequalityReport> lin;
        for (const auto& rec : res.records)
            if (rec.report.id == InequalityId::lin) lin[rec.seed] = rec.report;
        for (const auto& rec : res.records) {
            const auto id = rec.report.id;
            if (rec.report.r != 1 || (id != InequalityId::ext_fm_tensor && id != InequalityId::ext_fm_sym)) continue;
            const InequalityReport& base = lin.at(rec.seed);
            ++compared;
            if (base.degenerate || rec.report.degenerate) {
                check.expect(base.degenerate == rec.report.degenerate,
                             "degenerate mismatch seed " + std::to_string(rec.seed));
                continue;
            }
            const double d = std::abs(rec.report.margin - base.margin);
            worst = std::max(worst, d);
            check.expect(d <= 1e-10, std::string(to_string(id)) + " seed " + std::to_string(rec.seed) + " diff=" + fmt(d));
        }
    }
    check.expect(compared > 0, "no reports compared");
    return check.outcome(std::to_string(compared) + " r=1 reports vs lin, worst |diff|=" + fmt(worst));
}

// ---------------------------------------------------------------------------

Outcome ac6_oracles() {
    Check check;
    SeededStream s(6060);
    double worst_ng = 0.0;
    for (int i = 0; i < 100; ++i) {
        const std::size_t k = 1 + i % 4;
        const int r = 1 + (i / 4) % 4;
        const ComplexMatrix a = hermitize(random_complex(k, k, s));
        const Complex got = complete_symmetric(a, r);
        const Complex want = sym_power(a, r).trace();
        const double rel = std::abs(got - want) / std::max(std::abs(want), 1e-300);
        worst_ng = std::max(worst_ng, rel);
        check.expect(rel <= 1e-10, "newton-girard k=" + std::to_string(k) + " r=" + std::to_string(r) + " rel=" + fmt(rel));
    }
    double worst_det = 0.0;
    for (int i = 0; i < 100; ++i) {
        const std::size_t size = 1 + i % 5;
        const ComplexMatrix a = random_complex(size, size, s);
        const Complex want = oracle::cofactor_determinant(to_dense(a));
        const double rel = std::abs(determinant(a) - want) / std::abs(want);
        worst_det = std::max(worst_det, rel);
        check.expect(rel <= 1e-12, "determinant size " + std::to_string(size) + " rel=" + fmt(rel));
    }
    double worst_perm = 0.0;
    for (int i = 0; i < 100; ++i) {
        const ComplexMatrix a = random_complex(2, 2, s);
        const ComplexMatrix got = sym_power(a, 2);
        const oracle::Dense want = oracle::sym_power_by_permanents(to_dense(a), 2);
        for (std::size_t p = 0; p < 3; ++p)
            for (std::size_t q = 0; q < 3; ++q) {
                const double d = std::abs(got(p, q) - want[p][q]);
                worst_perm = std::max(worst_perm, d);
                check.expect(d <= 1e-12, "permanent entry diff=" + fmt(d));
            }
    }
    return check.outcome("newton-girard worst rel=" + fmt(worst_ng) + ", cofactor worst rel=" + fmt(worst_det) +
                         ", permanent worst abs=" + fmt(worst_perm));
}

// ---------------------------------------------------------------------------

Outcome ac7_determinism() {
    Check check;
    for (InstanceKind kind : {InstanceKind::wishart, InstanceKind::block_diagonal, InstanceKind::rank_deficient,
                              InstanceKind::near_singular, InstanceKind::identity})
        for (std::uint64_t seed = 0; seed < 20; ++seed) {
            const auto spec = spec_of(kind, 3, 2, derive_trial_seed(7, seed));
            check.expect(generate(spec).body() == generate(spec).body(),
                         std::string(to_string(kind)) + " seed " + std::to_string(spec.seed));
        }

    FuzzConfig cfg;
    cfg.n = 2;
    cfg.k = 3;
    cfg.r_max = 3;
    cfg.trials = 50;
    cfg.master_seed = 7070;
    cfg.kinds = {InstanceKind::wishart, InstanceKind::rank_deficient, InstanceKind::near_singular};
    cfg.keep_reports = true;
    cfg.threads = 1;
    const FuzzResult a = run_fuzz(cfg);
    cfg.threads = 3;
    const FuzzResult b = run_fuzz(cfg);
    const std::string ja = records_to_json(a.records);
    check.expect(ja == records_to_json(b.records), "report JSON differs between runs");
    check.expect(summary_to_json(a.summary) == summary_to_json(b.summary), "summary JSON differs between runs");
    check.expect(records_to_csv(a.records) == records_to_csv(b.records), "CSV differs between runs");
    check.expect(json_reserializes(ja), "report JSON does not re-serialize byte-identically");
    return check.outcome("100 generator specs, " + std::to_string(a.records.size()) + " reports x 2 runs, " +
                         std::to_string(ja.size()) + " JSON bytes");
}

// ---------------------------------------------------------------------------

Outcome ac8_degenerate() {
    Check check;
    const std::vector<int> rs{1, 2, 3};
    std::size_t instances = 0;
    std::size_t reports = 0;
    for (std::size_t n = 1; n <= 3; ++n)
        for (std::size_t k = 1; k <= 3; ++k) {
            const std::size_t m = n * k;
            if (m < 2) continue;
            for (std::size_t rank = 1; rank < m; ++rank)
                for (std::uint64_t seed = 0; seed < 10; ++seed) {
                    GeneratorSpec spec = spec_of(InstanceKind::rank_deficient, n, k, derive_trial_seed(808, seed));
                    spec.rank = rank;
                    const std::string where = "n=" + std::to_string(n) + " k=" + std::to_string(k) +
                                              " rank=" + std::to_string(rank) + " seed=" + std::to_string(spec.seed);
                    try {
                        for (const auto& rep : evaluate_all(generate(spec), rs)) {
                            check.expect(rep.degenerate, where + " " + std::string(to_string(rep.id)) + " not degenerate");
                            check.expect(rep.holds, where + " " + std::string(to_string(rep.id)) + " does not hold");
                            ++reports;
                        }
                    } catch (const std::exception& e) {
                        check.expect(false, where + " threw: " + e.what());
                    }
                    ++instances;
                }
        }
    return check.outcome(std::to_string(instances) + " rank-deficient instances, " + std::to_string(reports) +
                         " reports");
}

}  // namespace

int main() {
    // Criteria whose literal statement cannot hold for a correct implementation.
    const std::map<int, std::string> kKnownUnattainable = {
        {1, "fiedler_markham at H = I has margin k(n-1)log k > 0 for n, k >= 2; the inequality is strict there"},
    };

    const auto start = std::chrono::steady_clock::now();
    const CampaignTotals campaign = run_campaigns();
    const double campaign_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    const std::vector<std::pair<int, std::function<Outcome()>>> criteria = {
        {1, ac1_equality_anchors},
        {2, [&] { return ac2_campaign(campaign, campaign_s); }},
        {3, ac3_algebra_laws},
        {4, ac4_embedding},
        {5, [&] { return ac5_reductions(campaign); }},
        {6, ac6_oracles},
        {7, ac7_determinism},
        {8, ac8_degenerate},
    };

    int unexpected = 0;
    for (const auto& [num, run] : criteria) {
        Outcome out;
        try {
            out = run();
        } catch (const std::exception& e) {
            out = {false, std::string("threw: ") + e.what()};
        }
        std::printf("AC%d %s  %s\n", num, out.passed ? "PASS" : "FAIL", out.detail.c_str());
        if (!out.passed) {
            auto known = kKnownUnattainable.find(num);
            if (known != kKnownUnattainable.end()) {
                std::printf("    known unattainable: %s\n", known->second.c_str());
            } else {
                ++unexpected;
            }
        }
    }
    std::printf("%s\n", unexpected == 0 ? "acceptance: no unexpected failures" : "acceptance: unexpected failures");
    return unexpected == 0 ? 0 : 1;
}
