// blockform: verify determinant/trace inequalities for PSD block matrices,
// run seeded fuzz campaigns, and run the algebraic self-test battery.
//
// Exit codes: 0 all hold, 1 violation, 2 usage or input error.

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "blockform/dense.hpp"
#include "blockform/fuzz.hpp"
#include "blockform/generators.hpp"
#include "blockform/inequalities.hpp"
#include "blockform/laws.hpp"
#include "blockform/serialization.hpp"

namespace {

using namespace blockform;

constexpr int kExitOk = 0;
constexpr int kExitViolation = 1;
constexpr int kExitUsage = 2;

double default_tolerance() {
    if (const char* env = std::getenv("BLOCKFORM_TOL")) {
        try {
            std::size_t used = 0;
            const double v = std::stod(env, &used);
            if (used == std::string(env).size() && v >= 0.0) return v;
        } catch (const std::exception&) {
        }
        std::cerr << "warning: ignoring unparsable BLOCKFORM_TOL='" << env << "'\n";
    }
    return kDefaultMarginTol;
}

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) out.push_back(item);
    return out;
}

std::vector<InequalityId> parse_ids(const std::string& spec) {
    if (spec == "all") return {kCatalog.begin(), kCatalog.end()};
    std::vector<InequalityId> ids;
    for (const auto& name : split_list(spec)) {
        auto id = parse_inequality_id(name);
        if (!id || *id == InequalityId::oppenheim) throw std::invalid_argument("unknown inequality id '" + name + "'");
        ids.push_back(*id);
    }
    if (ids.empty()) throw std::invalid_argument("--ineq names no inequalities");
    return ids;
}

std::vector<InstanceKind> parse_kinds(const std::string& spec) {
    std::vector<InstanceKind> kinds;
    for (const auto& name : split_list(spec)) {
        auto kind = parse_instance_kind(name);
        if (!kind) throw std::invalid_argument("unknown instance kind '" + name + "'");
        kinds.push_back(*kind);
    }
    if (kinds.empty()) throw std::invalid_argument("--kinds names no instance kinds");
    return kinds;
}

void write_text(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
    out << text;
}

struct VerifyArgs {
    std::string input;
    std::string ineq = "all";
    std::vector<int> r_values{1, 2};
    double tol = kDefaultMarginTol;
    std::string format = "json";
};

int cmd_verify(const VerifyArgs& args) {
    const BlockMatrix h = read_instance_file(args.input);
    const PsdVerdict verdict = is_psd(h.body(), args.tol);
    if (!verdict.is_psd) {
        std::cerr << "error: input is not positive semidefinite"
                  << (verdict.is_hermitian ? "" : " (not Hermitian within tolerance)")
                  << "; min_eigen_proxy = " << format_double(verdict.min_eigen_proxy) << "\n";
        return kExitUsage;
    }
    const auto ids = parse_ids(args.ineq);
    std::vector<SkippedEvaluation> skipped;
    const auto reports = evaluate_selected(h, ids, args.r_values, args.tol, &skipped);
    for (const auto& s : skipped)
        std::cerr << "skipped " << to_string(s.id) << " r=" << s.r << ": " << s.reason << "\n";

    if (args.format == "csv") {
        std::cout << kCsvHeader << "\n";
        for (const auto& rep : reports) std::cout << report_csv_row(rep, h.n(), h.k()) << "\n";
    } else {
        std::cout << reports_to_json(reports);
    }
    for (const auto& rep : reports)
        if (!rep.holds) return kExitViolation;
    return kExitOk;
}

struct FuzzArgs {
    FuzzConfig cfg;
    std::string kinds = "wishart";
    std::string format = "json";
    std::string out;
};

int cmd_fuzz(FuzzArgs args) {
    args.cfg.kinds = parse_kinds(args.kinds);
    args.cfg.keep_reports = !args.out.empty();
    validate(args.cfg);
    const FuzzResult result = run_fuzz(args.cfg);
    if (!args.out.empty()) {
        write_text(args.out, args.format == "csv" ? records_to_csv(result.records) : records_to_json(result.records));
    }
    std::cout << summary_to_json(result.summary);
    for (const auto& msg : result.summary.error_messages) std::cerr << "error: " << msg << "\n";
    return result.summary.violations == 0 ? kExitOk : kExitViolation;
}

struct SelftestArgs {
    double tol = kDefaultPsdTol;
    std::size_t instances = 200;
    std::uint64_t seed = LawConfig{}.seed;
    bool inject_sym_sign_flip = false;
};

int cmd_selftest(const SelftestArgs& args) {
    LawConfig cfg = law_config_for_tol(args.tol);
    cfg.instances = args.instances;
    cfg.seed = args.seed;
    cfg.inject_sym_sign_flip = args.inject_sym_sign_flip;
    const auto start = std::chrono::steady_clock::now();
    const auto results = run_laws(cfg);
    bool all = true;
    for (const auto& law : results) {
        all = all && law.passed;
        std::cout << (law.passed ? "PASS " : "FAIL ") << law.name << "  checked=" << law.checked
                  << "  worst_ratio=" << format_double(law.worst_ratio);
        if (!law.passed) std::cout << "  (" << law.detail << ")";
        std::cout << "\n";
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::cout << (all ? "all laws hold" : "law failures detected") << " in " << secs << " s\n";
    return all ? kExitOk : kExitViolation;
}

struct GenerateArgs {
    std::string kind = "wishart";
    std::size_t n = 2;
    std::size_t k = 2;
    std::uint64_t seed = 1;
    std::size_t rank = 0;
    double epsilon = 0.0;
    std::string out;
};

int cmd_generate(const GenerateArgs& args) {
    GeneratorSpec spec;
    auto kind = parse_instance_kind(args.kind);
    if (!kind) throw std::invalid_argument("unknown instance kind '" + args.kind + "'");
    spec.kind = *kind;
    spec.n = args.n;
    spec.k = args.k;
    spec.seed = args.seed;
    if (args.rank > 0) spec.rank = args.rank;
    if (args.epsilon > 0.0) spec.epsilon = args.epsilon;
    write_text(args.out, instance_to_json(generate(spec)));
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"blockform: determinant and trace inequalities for PSD block matrices"};
    app.require_subcommand(1);
    const double tol_default = default_tolerance();

    VerifyArgs verify;
    verify.tol = tol_default;
    auto* verify_cmd = app.add_subcommand("verify", "Evaluate inequalities on a matrix read from a JSON instance file");
    verify_cmd->add_option("--input", verify.input, "InstanceFile JSON path")->required();
    verify_cmd->add_option("--ineq", verify.ineq, "Comma-separated inequality ids, or 'all'");
    verify_cmd->add_option("--r", verify.r_values, "Comma-separated powers r")->delimiter(',');
    verify_cmd->add_option("--tol", verify.tol, "Log-domain margin tolerance (env BLOCKFORM_TOL)");
    verify_cmd->add_option("--format", verify.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));

    FuzzArgs fuzz;
    fuzz.cfg.tol = tol_default;
    auto* fuzz_cmd = app.add_subcommand("fuzz", "Run a seeded campaign over generated PSD instances");
    fuzz_cmd->add_option("--n", fuzz.cfg.n, "Number of block rows");
    fuzz_cmd->add_option("--k", fuzz.cfg.k, "Block size");
    fuzz_cmd->add_option("--r", fuzz.cfg.r_max, "Largest power r (all of 1..r are evaluated)");
    fuzz_cmd->add_option("--trials", fuzz.cfg.trials, "Trials per instance kind");
    fuzz_cmd->add_option("--seed", fuzz.cfg.master_seed, "Master seed");
    fuzz_cmd->add_option("--kinds", fuzz.kinds,
                         "Comma-separated kinds: wishart, block_diagonal, rank_deficient, near_singular, identity");
    fuzz_cmd->add_option("--tol", fuzz.cfg.tol, "Log-domain margin tolerance (env BLOCKFORM_TOL)");
    fuzz_cmd->add_option("--format", fuzz.format, "Report stream format for --out: json or csv")
        ->check(CLI::IsMember({"json", "csv"}));
    fuzz_cmd->add_option("--out", fuzz.out, "Write every report to this path ('-' for stdout)");
    fuzz_cmd->add_option("--threads", fuzz.cfg.threads, "Worker threads (0 = hardware concurrency)");

    SelftestArgs selftest;
    auto* selftest_cmd = app.add_subcommand("selftest", "Run the algebraic law battery");
    selftest_cmd->add_option("--tol", selftest.tol, "Order-relation tolerance; equality tolerances are capped by it");
    selftest_cmd->add_option("--instances", selftest.instances, "Random instances per law");
    selftest_cmd->add_option("--seed", selftest.seed, "Seed");
    selftest_cmd->add_flag("--inject-sym-sign-flip", selftest.inject_sym_sign_flip,
                           "Test hook: corrupt one entry of the symmetric basis");

    GenerateArgs gen;
    auto* gen_cmd = app.add_subcommand("generate", "Write a generated instance as InstanceFile JSON");
    gen_cmd->add_option("--kind", gen.kind, "Instance kind");
    gen_cmd->add_option("--n", gen.n, "Number of block rows");
    gen_cmd->add_option("--k", gen.k, "Block size");
    gen_cmd->add_option("--seed", gen.seed, "Instance seed (e.g. worst_instance_seed from a fuzz summary)");
    gen_cmd->add_option("--rank", gen.rank, "rank_deficient: rank of the Gram factor");
    gen_cmd->add_option("--epsilon", gen.epsilon, "near_singular: diagonal shift");
    gen_cmd->add_option("--out", gen.out, "Output path (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (*verify_cmd) return cmd_verify(verify);
        if (*fuzz_cmd) return cmd_fuzz(fuzz);
        if (*selftest_cmd) return cmd_selftest(selftest);
        if (*gen_cmd) return cmd_generate(gen);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
