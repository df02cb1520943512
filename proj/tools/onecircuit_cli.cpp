// Command-line front end: batch experiments over the gradient estimators,
// emitting JSON/CSV artifacts. Exit codes: 0 success, 2 usage error,
// 3 runtime failure.

#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "onecircuit/gradients.hpp"
#include "onecircuit/report.hpp"
#include "onecircuit/resources.hpp"
#include "onecircuit/rng.hpp"
#include "onecircuit/stats.hpp"

namespace {

using namespace onecircuit;
using nlohmann::json;

constexpr int kExitUsage = 2;
constexpr int kExitRuntime = 3;
constexpr std::uint64_t kThetaDomain = 0x54484554;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Informational wall-clock split: circuit/dataset preparation vs sampling.
struct RunMetrics {
    double build_time = 0.0;
    double run_time = 0.0;
    std::int64_t shots_executed = 0;
    std::int64_t circuits_constructed = 0;

    double total_time() const { return build_time + run_time; }

    json to_json() const {
        return {{"build_time_s", build_time},
                {"run_time_s", run_time},
                {"total_time_s", total_time()},
                {"shots_executed", shots_executed},
                {"circuits_constructed", circuits_constructed}};
    }
};

class Stopwatch {
public:
    Stopwatch() : start_(std::chrono::steady_clock::now()) {}
    double lap() {
        const auto now = std::chrono::steady_clock::now();
        const double elapsed = std::chrono::duration<double>(now - start_).count();
        start_ = now;
        return elapsed;
    }

private:
    std::chrono::steady_clock::time_point start_;
};

struct CommonFlags {
    int qubits = 3;
    int reps = 1;
    std::int64_t shots = 500;
    std::string data = "random";
    int num_inputs = 1;
    std::uint64_t seed = 1;
    std::string theta_file;
    std::string out;
};

void add_common_flags(CLI::App* cmd, CommonFlags& flags) {
    cmd->add_option("--qubits", flags.qubits, "Data-qubit count Q")->check(CLI::PositiveNumber);
    cmd->add_option("--reps", flags.reps, "Ansatz repetitions r")
        ->check(CLI::NonNegativeNumber);
    cmd->add_option("--shots", flags.shots,
                    "Target shots per cost function (ignored in exact mode)");
    cmd->add_option("--data", flags.data,
                    "Input source: 'random' or 'idx:<images>,<labels>'");
    cmd->add_option("--m", flags.num_inputs, "Number of input data points")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--seed", flags.seed, "Root seed for data, parameters, and sampling");
    cmd->add_option("--theta-file", flags.theta_file,
                    "Whitespace-separated initial angles (overrides the seeded draw)");
    cmd->add_option("--out", flags.out, "Output file (default: stdout)");
}

std::vector<double> initial_theta(const CommonFlags& flags) {
    const int count = flags.qubits * (flags.reps + 1);
    std::vector<double> theta(static_cast<std::size_t>(count));
    if (flags.theta_file.empty()) {
        RngStream rng(flags.seed, kThetaDomain);
        for (double& t : theta) t = rng.next_double() * std::numbers::pi;
        return theta;
    }
    std::ifstream in(flags.theta_file);
    if (!in) throw std::runtime_error("cannot open theta file " + flags.theta_file);
    for (std::size_t i = 0; i < theta.size(); ++i)
        if (!(in >> theta[i]))
            throw UsageError("theta file " + flags.theta_file + " holds fewer than " +
                             std::to_string(count) + " angles");
    double extra;
    if (in >> extra)
        throw UsageError("theta file " + flags.theta_file + " holds more than " +
                         std::to_string(count) + " angles");
    return theta;
}

Dataset load_dataset(const CommonFlags& flags) {
    if (flags.data == "random")
        return generate_random_dataset(flags.num_inputs, 1 << flags.qubits, flags.seed);
    if (flags.data.rfind("idx:", 0) == 0) {
        const std::string paths = flags.data.substr(4);
        const auto comma = paths.find(',');
        if (comma == std::string::npos)
            throw UsageError("--data idx: needs '<images>,<labels>'");
        return load_idx_images(paths.substr(0, comma), paths.substr(comma + 1),
                               flags.num_inputs);
    }
    throw UsageError("unknown --data source '" + flags.data + "'");
}

AnsatzConfig make_config(const CommonFlags& flags) {
    AnsatzConfig config;
    config.num_qubits = flags.qubits;
    config.reps = flags.reps;
    config.theta = initial_theta(flags);
    return config;
}

void check_dimensions(const Dataset& data, const CommonFlags& flags) {
    const std::size_t expected = std::size_t{1} << flags.qubits;
    if (data.dimension() > expected)
        throw UsageError("inputs of dimension " + std::to_string(data.dimension()) +
                         " do not fit on " + std::to_string(flags.qubits) + " qubits");
}

void write_text(const std::string& out, const std::string& text) {
    if (out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream file(out);
    if (!file) throw std::runtime_error("cannot open " + out + " for writing");
    file << text;
    if (!file) throw std::runtime_error("failed to write " + out);
}

GradientReport run_mode(const std::string& mode, const Dataset& data,
                        const AnsatzConfig& config, std::int64_t shots, std::uint64_t seed) {
    const ShiftRule rule;
    if (mode == "exact") return exact_gradients(data, config, rule);
    if (shots < 1) throw UsageError("--shots must be positive for sampled modes");
    if (mode == "conventional") return conventional_gradients(data, config, rule, shots, seed);
    const ShotPlan plan{shots, config.num_parameters()};
    if (mode == "improved") return improved_gradients(data, config, rule, plan, seed);
    if (mode == "classical-ctrl")
        return classical_control_gradients(data, config, rule, plan, seed);
    throw UsageError("unknown --mode '" + mode + "'");
}

std::int64_t circuits_for_mode(const std::string& mode, const Dataset& data,
                               const AnsatzConfig& config) {
    const std::int64_t m = static_cast<std::int64_t>(data.size());
    if (mode == "exact" || mode == "conventional")
        return m * (2 * config.num_parameters() + 1);
    return m;  // one circuit per input
}

// ---- gradients ----------------------------------------------------------

int cmd_gradients(const CommonFlags& flags, const std::string& mode) {
    Stopwatch watch;
    const Dataset data = load_dataset(flags);
    check_dimensions(data, flags);
    const AnsatzConfig config = make_config(flags);
    RunMetrics metrics;
    metrics.build_time = watch.lap();

    GradientReport report = run_mode(mode, data, config, flags.shots, flags.seed);
    report.seed = flags.seed;  // exact mode never samples but the data/theta draw did
    metrics.run_time = watch.lap();
    metrics.shots_executed = report.shots_planned;
    metrics.circuits_constructed = circuits_for_mode(mode, data, config);

    if (flags.out.empty()) {
        std::cout << report_to_json(report) << '\n';
    } else {
        persist_report(report, flags.out);
    }
    std::cerr << metrics.to_json().dump(2) << '\n';
    return 0;
}

// ---- compare -------------------------------------------------------------

int cmd_compare(const CommonFlags& flags) {
    // All modes run in-process from the one theta/dataset pair, so the
    // cross-mode consistency precondition holds by construction.
    const Dataset data = load_dataset(flags);
    check_dimensions(data, flags);
    const AnsatzConfig config = make_config(flags);
    if (flags.shots < 1) throw UsageError("--shots must be positive");
    const ShiftRule rule;

    const GradientReport exact = exact_gradients(data, config, rule);
    const GradientReport conventional =
        conventional_gradients(data, config, rule, flags.shots, flags.seed);
    const GradientReport improved = improved_gradients(
        data, config, rule, ShotPlan{flags.shots, config.num_parameters()}, flags.seed);

    const double tolerance =
        5 * std::sqrt(2.0) / std::sqrt(static_cast<double>(flags.shots));
    std::ostringstream csv;
    csv << "parameter,exact,conventional,improved,abs_err_conventional,abs_err_improved,"
           "tolerance,status\n";
    csv.precision(12);
    for (int i = 0; i < config.num_parameters(); ++i) {
        const double err_conv = std::abs(conventional.gradients[i] - exact.gradients[i]);
        const double err_impr = std::abs(improved.gradients[i] - exact.gradients[i]);
        const bool pass = err_conv < tolerance && err_impr < tolerance;
        csv << i + 1 << ',' << exact.gradients[i] << ',' << conventional.gradients[i] << ','
            << improved.gradients[i] << ',' << err_conv << ',' << err_impr << ','
            << tolerance << ',' << (pass ? "PASS" : "FAIL") << '\n';
    }
    write_text(flags.out, csv.str());
    return 0;
}

// ---- shot-stats ------------------------------------------------------------

int cmd_shot_stats(const CommonFlags& flags, const std::string& mode) {
    const Dataset data = load_dataset(flags);
    check_dimensions(data, flags);
    const AnsatzConfig config = make_config(flags);
    if (flags.shots < 1) throw UsageError("--shots must be positive");
    const ShotPlan plan{flags.shots, config.num_parameters()};
    const ShiftRule rule;

    ImprovedRun run;
    if (mode == "improved")
        run = improved_run(data, config, rule, plan, flags.seed);
    else if (mode == "classical-ctrl")
        run = classical_control_run(data, config, rule, plan, flags.seed);
    else
        throw UsageError("shot-stats supports --mode improved or classical-ctrl");

    const int num_indices = 2 * config.num_parameters() + 1;
    std::ostringstream csv;
    csv << "input";
    for (int k = 0; k < num_indices; ++k) csv << ",index_" << k;
    csv << '\n';
    for (std::size_t m = 0; m < run.per_input_index_counts.size(); ++m) {
        csv << m;
        for (std::int64_t c : run.per_input_index_counts[m]) csv << ',' << c;
        csv << '\n';
    }
    write_text(flags.out, csv.str());

    std::vector<std::int64_t> cells;
    for (const auto& row : run.per_input_index_counts)
        for (std::int64_t c : row) cells.push_back(c);
    const double cell_mean = mean(cells);
    const double cell_std = cells.size() > 1 ? sample_std(cells) : 0.0;
    const json summary = {
        {"mode", mode},
        {"shots_per_cost", flags.shots},
        {"shots_per_input", plan.total()},
        {"mean", cell_mean},
        {"std", cell_std},
        {"relative_std", cell_std / cell_mean},
        {"uniform_at_0.001", chi_square_uniform_test(*run.report.per_index_shots, 0.001)}};
    // The grid is the artifact (stdout or --out); the summary rides on stderr.
    std::cerr << summary.dump(2) << '\n';
    return 0;
}

// ---- resources -------------------------------------------------------------

int cmd_resources(int qubits, int reps, int feature_depth, const std::string& out) {
    AnsatzConfig config;
    config.num_qubits = qubits;
    config.reps = reps;
    config.theta.assign(static_cast<std::size_t>(config.num_parameters()), 0.0);
    if (feature_depth < 0) feature_depth = (1 << qubits) - 1;  // generic state-prep bound

    const ResourceReport r = model_resources(config, feature_depth);
    const json j = {
        {"Q", r.data_qubits},
        {"reps", r.reps},
        {"n", r.num_parameters},
        {"feature_map_depth", r.feature_map_depth},
        {"modeled",
         {{"base_depth", r.base_depth},
          {"per_rep_depth", r.per_rep_depth},
          {"fixed_depth", r.fixed_depth},
          {"depth_per_parameter", r.depth_per_parameter},
          {"depth_conventional", r.depth_conventional},
          {"depth_improved", r.depth_improved},
          {"clbits_conventional", r.clbits_conventional},
          {"clbits_improved", r.clbits_improved}}},
        {"measured",
         {{"base_depth_raw", r.measured_base_depth},
          {"improved_depth", r.measured_improved_depth},
          {"stack_clbits", r.measured_stack_clbits},
          {"improved_clbits", r.measured_improved_clbits},
          {"base_op_count", r.base_op_count},
          {"improved_op_count", r.improved_op_count},
          {"gadget_ops_added", r.gadget_ops_added}}},
        {"checks",
         {{"param_count_ok", r.param_count_ok},
          {"gadget_ops_ok", r.gadget_ops_ok},
          {"clbits_ok", r.clbits_ok},
          {"improved_depth_bound_ok", r.improved_depth_bound_ok}}}};
    write_text(out, j.dump(2) + "\n");
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Single-circuit parameter-shift gradients for variational quantum circuits"};
    app.require_subcommand(1);

    CommonFlags gradient_flags;
    std::string gradient_mode = "exact";
    CLI::App* gradients = app.add_subcommand(
        "gradients", "Compute all parameter gradients and write a report");
    gradients->add_option("--mode", gradient_mode,
                          "exact | conventional | improved | classical-ctrl");
    add_common_flags(gradients, gradient_flags);

    CommonFlags compare_flags;
    CLI::App* compare = app.add_subcommand(
        "compare", "Exact vs conventional vs improved estimates as CSV");
    add_common_flags(compare, compare_flags);

    CommonFlags stats_flags;
    std::string stats_mode = "improved";
    CLI::App* shot_stats = app.add_subcommand(
        "shot-stats", "Per-input, per-cost-index shot counts of the single-circuit run");
    shot_stats->add_option("--mode", stats_mode, "improved | classical-ctrl");
    add_common_flags(shot_stats, stats_flags);

    int res_qubits = 3;
    int res_reps = 1;
    int res_feature_depth = -1;
    std::string res_out;
    CLI::App* resources = app.add_subcommand(
        "resources", "Depth, register, and op-count model vs constructed circuits");
    resources->add_option("--qubits", res_qubits, "Data-qubit count Q")
        ->check(CLI::PositiveNumber);
    resources->add_option("--reps", res_reps, "Ansatz repetitions r")
        ->check(CLI::NonNegativeNumber);
    resources->add_option("--feature-depth", res_feature_depth,
                          "Modeled feature-map depth (default 2^Q - 1)");
    resources->add_option("--out", res_out, "Output file (default: stdout)");

    try {
        app.parse(argc, argv);
        if (*gradients) return cmd_gradients(gradient_flags, gradient_mode);
        if (*compare) return cmd_compare(compare_flags);
        if (*shot_stats) return cmd_shot_stats(stats_flags, stats_mode);
        if (*resources)
            return cmd_resources(res_qubits, res_reps, res_feature_depth, res_out);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitRuntime;
    }
    return kExitUsage;
}
