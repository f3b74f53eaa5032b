// smtt: command-line front end for the single-machine total-tardiness toolkit.
//
//   smtt gen     --n 10 --count 20 --seed 7 --out dir
//   smtt solve   <instance> [--pop 50 --mut 0.075 --conv 0.0001 --seed 1 --time-limit 30]
//   smtt oracle  <instance> [--method dp|brute]
//   smtt sweep   <spec.json> [--out-dir dir]
//   smtt report  <records.csv> [--out report.md]
//   smtt verify
//
// <instance> is a JSON instance file or the built-in name "p1".
// Exit codes: 0 success, 1 verification failure, 2 usage error, 3 data error,
// 4 internal failure.

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "smtt/core.hpp"
#include "smtt/evolver.hpp"
#include "smtt/generator.hpp"
#include "smtt/harness.hpp"
#include "smtt/io.hpp"
#include "smtt/oracle.hpp"
#include "smtt/sweep_io.hpp"
#include "smtt/verify.hpp"

namespace fs = std::filesystem;

namespace {

constexpr int kExitVerifyFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitData = 3;
constexpr int kExitInternal = 4;

// SMTT_TIME_LIMIT and SMTT_MAX_STALL override the solver's default budgets.
double env_seconds(const char* name, double fallback) {
    const char* raw = std::getenv(name);
    if (raw == nullptr || *raw == '\0') {
        return fallback;
    }
    try {
        std::size_t used = 0;
        const double v = std::stod(raw, &used);
        if (used != std::string(raw).size()) {
            throw std::invalid_argument(raw);
        }
        return v;
    } catch (const std::exception&) {
        throw smtt::ValidationError(std::string(name) + ": cannot parse '" + raw + "' as seconds");
    }
}

int run_gen(const smtt::GenSpec& spec, std::size_t count, const fs::path& out_dir) {
    const auto suite = smtt::generate_suite(count, spec);
    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec) {
        throw smtt::ValidationError("cannot create output directory '" + out_dir.string() + "': " + ec.message());
    }
    for (const auto& instance : suite) {
        const fs::path path = out_dir / (instance.name() + ".json");
        smtt::save_instance(path, instance);
        std::cout << path.string() << '\n';
    }
    return 0;
}

int run_solve(const std::string& ref, const smtt::EaParams& params) {
    smtt::validate(params);
    const smtt::Instance instance = smtt::load_instance_ref(ref);
    const smtt::EaResult result = smtt::solve(instance, params);
    auto doc = smtt::to_json(result);
    doc["instance"] = instance.name();
    std::cout << doc.dump(2) << '\n';
    return 0;
}

int run_oracle(const std::string& ref, const std::string& method) {
    const smtt::Instance instance = smtt::load_instance_ref(ref);
    const auto m = method == "brute" ? smtt::ExactMethod::enumeration : smtt::ExactMethod::subset_dp;
    auto doc = smtt::to_json(smtt::solve_exact(instance, m));
    doc["instance"] = instance.name();
    std::cout << doc.dump(2) << '\n';
    return 0;
}

int run_sweep(const fs::path& spec_path, const fs::path& out_dir, std::optional<std::size_t> concurrency) {
    smtt::SweepSpec spec = smtt::load_sweep_spec(spec_path);
    if (concurrency) {
        spec.concurrency = *concurrency;
    }
    smtt::validate(spec);
    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec) {
        throw smtt::ValidationError("cannot create output directory '" + out_dir.string() + "': " + ec.message());
    }
    const auto records = smtt::run_sweep(spec, [](const std::string& w) { std::cerr << "warning: " << w << '\n'; });
    const auto summary = smtt::aggregate(records);

    const fs::path csv = out_dir / "records.csv";
    const fs::path md = out_dir / "report.md";
    smtt::write_text_file(csv, smtt::records_to_csv(records));
    smtt::write_text_file(md, smtt::grid_markdown(summary));

    std::size_t known = 0;
    std::size_t hits = 0;
    for (const auto& r : records) {
        known += r.status != smtt::Status::UNKNOWN ? 1 : 0;
        hits += r.status == smtt::Status::OPT ? 1 : 0;
    }
    std::cout << "records: " << records.size() << '\n';
    std::cout << "hit rate: "
              << (known == 0 ? std::string("n/a")
                             : smtt::format_fixed(static_cast<double>(hits) / static_cast<double>(known), 4))
              << " (" << hits << "/" << known << ")\n";
    std::cout << "wrote " << csv.string() << '\n' << "wrote " << md.string() << '\n';
    return 0;
}

int run_report(const fs::path& csv_path, const std::optional<fs::path>& out) {
    const auto records = smtt::records_from_csv(smtt::read_text_file(csv_path), csv_path.string());
    const std::string md = smtt::grid_markdown(smtt::aggregate(records));
    if (out) {
        smtt::write_text_file(*out, md);
        std::cout << "wrote " << out->string() << '\n';
    } else {
        std::cout << md;
    }
    return 0;
}

int run_verify() {
    bool all = true;
    for (const auto& check : smtt::builtin_checks()) {
        const smtt::CheckResult r = check();
        all = all && r.passed;
        std::cout << r.name << ": " << (r.passed ? "PASS" : "FAIL") << " (" << r.detail << ")\n";
    }
    return all ? 0 : kExitVerifyFailed;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Single-machine total tardiness: generator, evolutionary solver, exact oracles, sweeps"};
    app.require_subcommand(1);

    // gen
    smtt::GenSpec gen_spec;
    std::size_t gen_count = 1;
    std::string gen_out = ".";
    auto* gen = app.add_subcommand("gen", "Generate random instance files");
    gen->add_option("--n", gen_spec.n, "Jobs per instance")->capture_default_str();
    gen->add_option("--p-min", gen_spec.p_min, "Minimum processing time")->capture_default_str();
    gen->add_option("--p-max", gen_spec.p_max, "Maximum processing time")->capture_default_str();
    gen->add_option("--d-min", gen_spec.d_min, "Minimum due date")->capture_default_str();
    gen->add_option("--d-max", gen_spec.d_max, "Maximum due date")->capture_default_str();
    gen->add_option("--seed", gen_spec.seed, "Suite seed")->capture_default_str();
    gen->add_option("--count", gen_count, "Number of instances")->capture_default_str();
    gen->add_option("--out", gen_out, "Output directory")->capture_default_str();

    // solve
    smtt::EaParams ea;
    std::string solve_ref;
    std::optional<std::uint64_t> solve_seed;
    std::optional<std::uint64_t> solve_gens;
    double solve_stall = -1.0;
    double solve_time = -1.0;
    auto* solve = app.add_subcommand("solve", "Run the evolutionary solver on one instance");
    solve->add_option("instance", solve_ref, "Instance file or 'p1'")->required();
    solve->add_option("--pop", ea.population_size, "Population size")->capture_default_str();
    solve->add_option("--mut", ea.mutation_rate, "Mutation rate in [0,1]")->capture_default_str();
    solve->add_option("--conv", ea.convergence, "Convergence threshold")->capture_default_str();
    solve->add_option("--crossover", ea.crossover_rate, "Crossover rate in [0,1]")->capture_default_str();
    solve->add_option("--seed", solve_seed, "Random seed (blank: fresh seed per run)");
    solve->add_option("--stall", solve_stall, "Seconds without improvement before stopping (default 30)");
    solve->add_option("--time-limit", solve_time, "Total seconds (default 45)");
    solve->add_option("--gens", solve_gens, "Generation cap");

    // oracle
    std::string oracle_ref;
    std::string oracle_method = "dp";
    auto* oracle = app.add_subcommand("oracle", "Solve an instance exactly");
    oracle->add_option("instance", oracle_ref, "Instance file or 'p1'")->required();
    oracle->add_option("--method", oracle_method, "dp (n <= 20) or brute (n <= 11)")
        ->check(CLI::IsMember({"dp", "brute"}))
        ->capture_default_str();

    // sweep
    std::string sweep_spec;
    std::string sweep_out = ".";
    std::optional<std::size_t> sweep_concurrency;
    auto* sweep = app.add_subcommand("sweep", "Run a parameter-grid sweep");
    sweep->add_option("spec", sweep_spec, "Sweep spec JSON file")->required();
    sweep->add_option("--out-dir", sweep_out, "Directory for records.csv and report.md")->capture_default_str();
    sweep->add_option("--concurrency", sweep_concurrency, "Parallel runs (overrides the spec)");

    // report
    std::string report_csv;
    std::optional<std::string> report_out;
    auto* report = app.add_subcommand("report", "Render the Markdown grid from a records CSV");
    report->add_option("records", report_csv, "records.csv from a sweep")->required();
    report->add_option("--out", report_out, "Output file (default: standard output)");

    auto* verify = app.add_subcommand("verify", "Run the built-in self-checks");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (gen->parsed()) {
            return run_gen(gen_spec, gen_count, gen_out);
        }
        if (solve->parsed()) {
            ea.seed = solve_seed;
            ea.max_generations = solve_gens;
            ea.max_stall = solve_stall >= 0.0 ? solve_stall : env_seconds("SMTT_MAX_STALL", ea.max_stall);
            ea.time_limit = solve_time >= 0.0 ? solve_time : env_seconds("SMTT_TIME_LIMIT", ea.time_limit);
            return run_solve(solve_ref, ea);
        }
        if (oracle->parsed()) {
            return run_oracle(oracle_ref, oracle_method);
        }
        if (sweep->parsed()) {
            return run_sweep(sweep_spec, sweep_out, sweep_concurrency);
        }
        if (report->parsed()) {
            return run_report(report_csv, report_out ? std::optional<fs::path>(*report_out) : std::nullopt);
        }
        if (verify->parsed()) {
            return run_verify();
        }
    } catch (const smtt::ValidationError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitData;
    } catch (const smtt::LimitError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitData;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return kExitInternal;
    }
    return kExitUsage;
}
