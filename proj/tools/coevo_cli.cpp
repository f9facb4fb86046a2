// coevo: run one traced simulation, replay a saved trace, or run a parameter sweep.
//
// Exit codes: 0 success, 2 usage / invalid configuration, 3 step cap hit
// (or replay mismatch).

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "coevo/analysis.hpp"
#include "coevo/core.hpp"
#include "coevo/dynamics.hpp"
#include "coevo/experiments.hpp"
#include "coevo/io.hpp"

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitNonTermination = 3;
constexpr const char* kOutputDirEnv = "COEVO_OUTPUT_DIR";

std::filesystem::path resolve_output(const std::string& path) {
    std::filesystem::path p(path);
    if (p.is_relative()) {
        if (const char* dir = std::getenv(kOutputDirEnv); dir && *dir) p = std::filesystem::path(dir) / p;
    }
    return p;
}

// Writes `body` to `path`, or to stdout when path is empty.
bool emit(const std::string& path, const std::string& body) {
    if (path.empty()) {
        std::cout << body;
        return true;
    }
    const auto target = resolve_output(path);
    if (target.has_parent_path()) std::filesystem::create_directories(target.parent_path());
    std::ofstream out(target, std::ios::binary);
    if (!out) {
        std::cerr << "error: cannot open " << target << " for writing\n";
        return false;
    }
    out << body;
    return true;
}

struct RunOptions {
    std::string network = "complete";
    coevo::SimConfig cfg;
    std::string format = "csv";
    std::string output;
};

int do_run(const RunOptions& opt) {
    coevo::SimConfig cfg = opt.cfg;
    try {
        cfg.network_kind = coevo::parse_network_kind(opt.network);
        cfg = coevo::validate_config(cfg);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    }

    const coevo::RunTrace trace = coevo::run(cfg);
    std::ostringstream body;
    if (opt.format == "json")
        body << coevo::io::trace_to_json(trace, 2) << '\n';
    else
        coevo::io::write_trace_csv(body, trace);
    if (!emit(opt.output, body.str())) return kExitUsage;

    // Summary goes to stdout only when the trace itself went to a file.
    std::ostream& summary = opt.output.empty() ? std::cerr : std::cout;
    if (trace.terminated != coevo::Termination::Stable) {
        summary << "cap_hit T=" << trace.T << '\n';
        std::cerr << coevo::NonTermination(trace.T).what() << '\n';
        return kExitNonTermination;
    }
    const coevo::TraceSummary s = coevo::trace_stats(trace);
    summary << "stable T=" << s.T << " m=" << s.m << " aggregate=" << coevo::io::format_real(s.aggregate)
            << " spread=" << coevo::io::format_real(s.spread) << '\n';
    return 0;
}

int do_replay(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        std::cerr << "error: cannot read " << path << '\n';
        return kExitUsage;
    }
    std::stringstream text;
    text << in.rdbuf();
    coevo::RunTrace trace;
    try {
        trace = coevo::io::trace_from_json(text.str());
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    const coevo::OpinionProfile replayed = coevo::replay(trace.initial.opinions, trace.records);
    if (replayed.opinions != trace.final_opinions.opinions) {
        std::cout << "mismatch: replayed opinions differ from the recorded final profile\n";
        return kExitNonTermination;
    }
    std::cout << "match T=" << trace.records.size() << '\n';
    return 0;
}

struct SweepOptions {
    bool desk_scale = false;
    std::uint64_t seed = 0;
    std::size_t replicates = 0;
    std::size_t threads = 0;
    std::size_t max_steps = 1'000'000;
    std::vector<std::string> networks;
    std::vector<std::size_t> n_values;
    std::vector<int> p_values;
    std::vector<double> epsilon_values;
    std::vector<double> phi_values;
    std::string output;
};

int do_sweep(bool steps, const SweepOptions& opt) {
    coevo::SweepSpec spec = steps ? coevo::default_steps_spec(opt.desk_scale) : coevo::default_clusters_spec(opt.desk_scale);
    spec.base_seed = opt.seed;
    spec.threads = opt.threads;
    spec.max_steps = opt.max_steps;
    if (opt.replicates) spec.replicates = opt.replicates;
    if (!opt.n_values.empty()) spec.n_values = opt.n_values;
    if (!opt.p_values.empty()) spec.p_values = opt.p_values;
    if (!opt.epsilon_values.empty()) spec.epsilon_values = opt.epsilon_values;
    if (!opt.phi_values.empty()) spec.phi_values = opt.phi_values;

    std::vector<coevo::CellResult> rows;
    try {
        if (!opt.networks.empty()) {
            spec.networks.clear();
            for (const auto& name : opt.networks) spec.networks.push_back(coevo::parse_network_kind(name));
        }
        coevo::expand_grid(spec);
        rows = steps ? coevo::sweep_steps(spec) : coevo::sweep_clusters(spec);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    }

    std::ostringstream body;
    if (steps)
        coevo::io::write_steps_csv(body, rows);
    else
        coevo::io::write_clusters_csv(body, rows);
    return emit(opt.output, body.str()) ? 0 : kExitUsage;
}

void add_sweep_flags(CLI::App& cmd, SweepOptions& opt) {
    cmd.add_flag("--desk-scale", opt.desk_scale, "Reduced grid and replicate count");
    cmd.add_option("--seed", opt.seed, "Base seed");
    cmd.add_option("--replicates", opt.replicates, "Replicates per cell (overrides the default)");
    cmd.add_option("--threads", opt.threads, "Worker threads (0 = hardware concurrency)");
    cmd.add_option("--max-steps", opt.max_steps, "Per-run interaction cap");
    cmd.add_option("--networks", opt.networks, "complete, scale_free, community")->delimiter(',');
    cmd.add_option("--n", opt.n_values, "Group sizes")->delimiter(',');
    cmd.add_option("--p", opt.p_values, "Persistence degrees")->delimiter(',');
    cmd.add_option("--epsilon", opt.epsilon_values, "Bounds of confidence")->delimiter(',');
    cmd.add_option("--phi", opt.phi_values, "Bounds of consensus")->delimiter(',');
    cmd.add_option("-o,--output", opt.output, "Output CSV path (default stdout; relative paths honour " +
                                                 std::string(kOutputDirEnv) + ")");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Co-evolving opinion/network group decision simulator"};
    app.require_subcommand(1);

    RunOptions run_opt;
    auto* run_cmd = app.add_subcommand("run", "Run one simulation and write its trace");
    run_cmd->add_option("--network", run_opt.network, "complete, scale_free or community");
    run_cmd->add_option("--n", run_opt.cfg.n, "Number of individuals");
    run_cmd->add_option("--epsilon", run_opt.cfg.epsilon, "Bound of confidence");
    run_cmd->add_option("--phi", run_opt.cfg.phi, "Bound of consensus");
    run_cmd->add_option("--p", run_opt.cfg.p, "Persistence degree");
    run_cmd->add_option("--seed", run_opt.cfg.seed, "Seed");
    run_cmd->add_option("--max-steps", run_opt.cfg.max_steps, "Interaction cap");
    run_cmd->add_option("--format", run_opt.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    run_cmd->add_option("-o,--output", run_opt.output,
                        "Output path (default stdout; relative paths honour " + std::string(kOutputDirEnv) + ")");

    std::string replay_path;
    auto* replay_cmd = app.add_subcommand("replay", "Replay a JSON trace and compare with its final opinions");
    replay_cmd->add_option("trace", replay_path, "JSON trace file")->required();

    auto* sweep_cmd = app.add_subcommand("sweep", "Monte-Carlo parameter sweep");
    sweep_cmd->require_subcommand(1);
    SweepOptions steps_opt, clusters_opt;
    auto* steps_cmd = sweep_cmd->add_subcommand("steps", "Steps to stability vs n, p, network");
    add_sweep_flags(*steps_cmd, steps_opt);
    auto* clusters_cmd = sweep_cmd->add_subcommand("clusters", "Cluster count vs epsilon, n, network");
    add_sweep_flags(*clusters_cmd, clusters_opt);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    if (*run_cmd) return do_run(run_opt);
    if (*replay_cmd) return do_replay(replay_path);
    if (*steps_cmd) return do_sweep(true, steps_opt);
    if (*clusters_cmd) return do_sweep(false, clusters_opt);
    return kExitUsage;
}
