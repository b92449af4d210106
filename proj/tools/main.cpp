// sparsemix command line: clustering, synthetic data, analytic phase
// diagrams, threshold verification and evaluation harnesses.
//
// Exit codes: 0 ok, 1 usage error, 2 data/runtime error.

#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "sparsemix/evaluation.hpp"
#include "sparsemix/io.hpp"
#include "sparsemix/monotonicity.hpp"
#include "sparsemix/optimizer.hpp"
#include "sparsemix/random.hpp"
#include "sparsemix/synthetic.hpp"

using json = nlohmann::ordered_json;
using namespace sparsemix;

namespace {

std::vector<double> parse_double_list(const std::string& csv) {
    std::vector<double> values;
    std::stringstream in(csv);
    std::string token;
    while (std::getline(in, token, ',')) {
        if (token.empty()) continue;
        size_t used = 0;
        values.push_back(std::stod(token, &used));
        if (used != token.size()) {
            throw std::invalid_argument("not a number: '" + token + "'");
        }
    }
    if (values.empty()) throw std::invalid_argument("empty numeric list");
    return values;
}

void write_text(const std::string& path, const std::string& content) {
    if (path == "-") {
        std::cout << content;
        return;
    }
    std::ofstream out(path);
    if (!out) throw std::runtime_error(path + ": cannot open for writing");
    out << content;
    if (!out) throw std::runtime_error(path + ": write failed");
}

struct ClusterOptions {
    std::string input;
    std::string format = "svmlight-sparse";
    std::optional<uint32_t> dim;
    std::string labels_path;
    std::string output = "result.json";
    std::string assign_path = "assignment.txt";
    ModelConfig config;
    std::string init = "seeded";
    int threads = 0;
    bool check = false;
};

// Compacts live cluster ids to 0..k-1 in ascending id order.
std::map<int32_t, int32_t> compact_ids(const Partition& partition) {
    std::map<int32_t, int32_t> remap;
    for (const auto& [id, stats] : partition.clusters) {
        remap.emplace(id, static_cast<int32_t>(remap.size()));
    }
    return remap;
}

json config_echo(const ClusterOptions& opt) {
    return json{{"input", opt.input},
                {"format", opt.format},
                {"dim", opt.dim ? json(*opt.dim) : json(nullptr)},
                {"k_init", opt.config.k_init},
                {"t", opt.config.threshold},
                {"beta", opt.config.beta},
                {"epsilon", opt.config.epsilon},
                {"restarts", opt.config.restarts},
                {"max_iter", opt.config.max_iter},
                {"seed", opt.config.seed},
                {"init", opt.init},
                {"shuffle", opt.config.shuffle_each_pass},
                {"raw_pseudocode_gain", opt.config.raw_pseudocode_gain},
                {"threads", opt.threads}};
}

int cmd_cluster(ClusterOptions& opt) {
    opt.config.init = parse_init_strategy(opt.init);
    const auto started = std::chrono::steady_clock::now();
    LoadedData loaded =
        load_dataset(opt.input, parse_format(opt.format), opt.dim);

    std::vector<int32_t> reference = loaded.labels;
    if (!opt.labels_path.empty()) reference = load_labels(opt.labels_path);
    if (!reference.empty() && reference.size() != loaded.data.size()) {
        throw std::runtime_error("label count does not match row count");
    }

    OptimizerReport report = run_restarts(loaded.data, opt.config, opt.threads);
    const Partition& partition = report.partition;
    const auto remap = compact_ids(partition);

    json result;
    result["command"] = "cluster";
    result["config"] = config_echo(opt);
    result["n"] = loaded.data.size();
    result["dim"] = loaded.data.dim();
    json clusters = json::array();
    for (const auto& [id, stats] : partition.clusters) {
        clusters.push_back(
            {{"id", remap.at(id)},
             {"size", stats.size()},
             {"representative", stats.representative().indices},
             {"cluster_cost", stats.cost()},
             {"identification_cost",
              identification_cost(stats, partition.n())}});
    }
    result["clusters"] = std::move(clusters);
    result["total_cost"] = partition.total_cost;
    result["iterations"] = report.iterations;
    result["switches"] = report.switches;
    result["reductions"] = report.reductions;
    result["seed_used"] = report.seed_used;
    if (!reference.empty()) {
        result["ari"] = adjusted_rand_index(partition.assignment, reference);
    }

    std::ostringstream assignment_text;
    for (int32_t id : partition.assignment) {
        assignment_text << remap.at(id) << '\n';
    }
    write_text(opt.assign_path, assignment_text.str());

    if (opt.check) {
        LoadedData reread = load_dataset(opt.input, parse_format(opt.format), opt.dim);
        const auto assignment = load_labels(opt.assign_path);
        Partition recomputed =
            build_partition(reread.data, assignment, opt.config);
        const double drift =
            std::abs(recomputed.total_cost - partition.total_cost);
        result["check"] = json{{"recomputed_total_cost", recomputed.total_cost},
                               {"drift", drift}};
        if (drift > 1e-9) {
            std::cerr << "check failed: recomputed cost differs by " << drift
                      << "\n";
            return 2;
        }
    }

    const double wall =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started)
            .count();
    result["wall_time_sec"] = wall;
    write_text(opt.output, result.dump(2) + "\n");
    return 0;
}

struct SynthOptions {
    MixtureSpec spec;
    uint64_t seed = 0;
    std::string output = "synthetic.sv";
    std::string labels_output = "synthetic_labels.txt";
};

int cmd_synth(const SynthOptions& opt) {
    GeneratedData generated = generate(opt.spec, opt.seed);
    save_svmlight(generated.data, opt.output);
    save_labels(generated.labels, opt.labels_output);

    int64_t source0 = 0;
    for (int32_t label : generated.labels) source0 += label == 0 ? 1 : 0;
    json summary{{"command", "synth"},
                 {"n", generated.data.size()},
                 {"dim", generated.data.dim()},
                 {"mean_nnz", nnz_stats(generated.data).mean_nnz},
                 {"source0_fraction",
                  static_cast<double>(source0) /
                      static_cast<double>(generated.labels.size())},
                 {"data", opt.output},
                 {"labels", opt.labels_output}};
    std::cout << summary.dump(2) << "\n";
    return 0;
}

struct PhaseOptions {
    std::string mode = "omega-alpha";
    double p = 0.1;
    uint32_t dim = 100;
    uint32_t resolution = 101;
    std::string output = "-";
    int threads = 0;
};

int cmd_phase(const PhaseOptions& opt) {
    PhaseGrid grid =
        phase_grid(opt.p, parse_phase_mode(opt.mode), opt.resolution, opt.dim,
                   opt.threads);
    std::ostringstream out;
    write_phase_csv(grid, out);
    write_text(opt.output, out.str());
    return 0;
}

struct VerifyOptions {
    std::string input;
    std::string format = "svmlight-sparse";
    std::optional<uint32_t> dim;
    std::string t_grid = "0.5,0.6,0.7,0.8,0.9,1.0";
    int random_datasets = 0;
    size_t n = 200;
    uint32_t random_dim = 100;
    double density = 0.1;
    uint64_t seed = 0;
    std::string output = "-";
};

json report_to_json(const MonotonicityReport& report) {
    json violations = json::array();
    for (const auto& v : report.violations) {
        violations.push_back({{"lower_t", report.thresholds[v.lower_index]},
                              {"upper_t", report.thresholds[v.upper_index]},
                              {"cost_lower", v.cost_lower},
                              {"cost_upper", v.cost_upper}});
    }
    return json{{"costs", report.costs},
                {"z_values", report.z_values},
                {"violations", std::move(violations)}};
}

int cmd_verify_theorem(const VerifyOptions& opt) {
    const auto grid = parse_double_list(opt.t_grid);
    json result;
    result["command"] = "verify-theorem";
    result["t_grid"] = grid;
    json datasets = json::array();
    size_t total_violations = 0;

    if (!opt.input.empty()) {
        LoadedData loaded =
            load_dataset(opt.input, parse_format(opt.format), opt.dim);
        MonotonicityReport report =
            verify_compression_monotonicity(loaded.data, grid);
        total_violations += report.violations.size();
        datasets.push_back(report_to_json(report));
    } else {
        for (int i = 0; i < opt.random_datasets; ++i) {
            std::mt19937_64 rng(mix_seed(opt.seed, i));
            std::vector<SparseRow> rows;
            rows.reserve(opt.n);
            for (size_t r = 0; r < opt.n; ++r) {
                SparseRow row;
                for (uint32_t j = 0; j < opt.random_dim; ++j) {
                    if (rand_unit(rng) < opt.density) row.indices.push_back(j);
                }
                rows.push_back(std::move(row));
            }
            SparseBinaryDataset data(opt.random_dim, std::move(rows));
            MonotonicityReport report =
                verify_compression_monotonicity(data, grid);
            total_violations += report.violations.size();
            datasets.push_back(report_to_json(report));
        }
    }
    result["datasets"] = std::move(datasets);
    result["total_violations"] = total_violations;
    result["ok"] = total_violations == 0;
    write_text(opt.output, result.dump(2) + "\n");
    return 0;
}

struct EvalCommon {
    std::string input;
    std::string format = "svmlight-sparse";
    std::optional<uint32_t> dim;
    ModelConfig config;
    std::string init = "seeded";
    int threads = 0;
    std::string output = "-";
};

ClusterRunner make_runner(const EvalCommon& opt) {
    ModelConfig config = opt.config;
    config.init = parse_init_strategy(opt.init);
    const int threads = opt.threads;
    return [config, threads](const SparseBinaryDataset& data, uint64_t seed) {
        ModelConfig local = config;
        local.seed = seed;
        return run_restarts(data, local, threads).partition.assignment;
    };
}

int cmd_eval_ari(const std::string& pred_path, const std::string& ref_path) {
    const auto pred = load_labels(pred_path);
    const auto ref = load_labels(ref_path);
    std::cout.precision(12);
    std::cout << adjusted_rand_index(pred, ref) << "\n";
    return 0;
}

int cmd_eval_stability(const EvalCommon& opt, const std::string& mode,
                       const std::string& fractions_csv, uint64_t seed,
                       int repeats) {
    LoadedData loaded =
        load_dataset(opt.input, parse_format(opt.format), opt.dim);
    const auto fractions = parse_double_list(fractions_csv);
    const auto runner = make_runner(opt);

    std::vector<StabilityPoint> points;
    if (mode == "instances") {
        const auto full = runner(loaded.data, opt.config.seed);
        points = stability_instances(loaded.data, full, fractions, runner,
                                     seed, repeats);
    } else if (mode == "attributes") {
        points = stability_attributes(loaded.data, fractions, runner, seed,
                                      repeats);
    } else {
        throw std::invalid_argument("unknown stability mode '" + mode + "'");
    }
    std::ostringstream out;
    write_stability_csv(points, out);
    write_text(opt.output, out.str());
    return 0;
}

int cmd_eval_imbalance(const EvalCommon& opt, const MixtureSpec& base,
                       const std::string& vary, const std::string& grid_csv,
                       uint64_t seed) {
    std::vector<double> grid;
    if (!grid_csv.empty()) {
        grid = parse_double_list(grid_csv);
    } else if (vary == "omega") {
        for (int i = 1; i <= 9; ++i) grid.push_back(i / 10.0);
    } else {
        for (uint32_t d = 0; d <= base.dim; d += std::max(1u, base.dim / 10)) {
            grid.push_back(d);
        }
    }
    ImbalanceVary which;
    if (vary == "omega") {
        which = ImbalanceVary::omega;
    } else if (vary == "d") {
        which = ImbalanceVary::block_size;
    } else {
        throw std::invalid_argument("unknown imbalance axis '" + vary + "'");
    }
    ModelConfig config = opt.config;
    config.init = parse_init_strategy(opt.init);
    const auto points = imbalance_scan(base, which, grid, config, seed);
    std::ostringstream out;
    write_imbalance_csv(points, out);
    write_text(opt.output, out.str());
    return 0;
}

void add_model_flags(CLI::App* app, ModelConfig& config, std::string& init,
                     int& threads) {
    app->add_option("--k", config.k_init, "initial number of clusters");
    app->add_option("--t", config.threshold, "representative threshold T")
        ->check(CLI::Range(0.0, 1.0));
    app->add_option("--beta", config.beta, "identification cost weight");
    app->add_option("--epsilon", config.epsilon,
                    "delete clusters below this fraction of the data");
    app->add_option("--restarts", config.restarts, "independent restarts");
    app->add_option("--max-iter", config.max_iter, "maximum passes per run");
    app->add_option("--seed", config.seed, "master random seed");
    app->add_option("--init", init, "initialization: random | seeded");
    app->add_flag("--shuffle", config.shuffle_each_pass,
                  "shuffle the visit order every pass");
    app->add_flag("--raw-pseudocode-gain", config.raw_pseudocode_gain,
                  "use the literal unweighted switch criterion");
    app->add_option("--threads", threads, "worker threads (0 = all cores)");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"SparseMix: entropy-coding clustering of sparse binary data"};
    app.require_subcommand(1);

    ClusterOptions cluster_opt;
    auto* cluster = app.add_subcommand(
        "cluster", "cluster a dataset and write JSON results + assignment");
    cluster->add_option("--input", cluster_opt.input, "input data file")
        ->required();
    cluster->add_option("--format", cluster_opt.format,
                        "svmlight-sparse | dense-csv");
    cluster->add_option("--dim", cluster_opt.dim, "declared dimension");
    cluster->add_option("--labels", cluster_opt.labels_path,
                        "reference labels for ARI");
    cluster->add_option("--output", cluster_opt.output, "JSON result path");
    cluster->add_option("--assign", cluster_opt.assign_path,
                        "assignment output path (one id per line)");
    cluster->add_flag("--check", cluster_opt.check,
                      "recompute the cost from the emitted assignment");
    add_model_flags(cluster, cluster_opt.config, cluster_opt.init,
                    cluster_opt.threads);

    SynthOptions synth_opt;
    auto* synth = app.add_subcommand(
        "synth", "sample the two-source mixture and write data + labels");
    synth->add_option("--n", synth_opt.spec.n, "rows to generate");
    synth->add_option("--dim", synth_opt.spec.dim, "dimension D");
    synth->add_option("--p", synth_opt.spec.p, "base bit probability");
    synth->add_option("--alpha", synth_opt.spec.alpha, "source separation");
    synth->add_option("--d", synth_opt.spec.block_size, "block size d");
    synth->add_option("--omega", synth_opt.spec.omega, "source 0 weight");
    synth->add_option("--seed", synth_opt.seed, "generator seed");
    synth->add_option("--output", synth_opt.output, "svmlight output path");
    synth->add_option("--labels-output", synth_opt.labels_output,
                      "planted labels output path");

    PhaseOptions phase_opt;
    auto* phase = app.add_subcommand(
        "phase", "analytic one-vs-two-cluster decision grid (CSV)");
    phase->add_option("--mode", phase_opt.mode,
                      "omega-alpha | d-alpha | L-alpha");
    phase->add_option("--p", phase_opt.p, "base bit probability");
    phase->add_option("--dim", phase_opt.dim, "dimension D");
    phase->add_option("--resolution", phase_opt.resolution, "grid resolution");
    phase->add_option("--output", phase_opt.output, "CSV path or - for stdout");
    phase->add_option("--threads", phase_opt.threads, "worker threads");

    VerifyOptions verify_opt;
    auto* verify = app.add_subcommand(
        "verify-theorem",
        "check that the single-cluster cost is non-decreasing in T");
    verify->add_option("--input", verify_opt.input, "input data file");
    verify->add_option("--format", verify_opt.format,
                       "svmlight-sparse | dense-csv");
    verify->add_option("--dim", verify_opt.dim, "declared dimension");
    verify->add_option("--t-grid", verify_opt.t_grid,
                       "comma-separated thresholds in [0.5,1]");
    verify->add_option("--random-datasets", verify_opt.random_datasets,
                       "verify on this many random datasets instead");
    verify->add_option("--n", verify_opt.n, "rows per random dataset");
    verify->add_option("--random-dim", verify_opt.random_dim,
                       "dimension of random datasets");
    verify->add_option("--density", verify_opt.density,
                       "bit density of random datasets");
    verify->add_option("--seed", verify_opt.seed, "random dataset seed");
    verify->add_option("--output", verify_opt.output, "JSON report path");

    auto* eval = app.add_subcommand("eval", "evaluation harnesses");
    eval->require_subcommand(1);

    std::string ari_pred, ari_ref;
    auto* eval_ari = eval->add_subcommand("ari", "ARI between two label files");
    eval_ari->add_option("--pred", ari_pred, "predicted labels")->required();
    eval_ari->add_option("--ref", ari_ref, "reference labels")->required();

    EvalCommon stab_opt;
    std::string stab_mode = "instances";
    std::string stab_fractions = "0.1,0.2,0.3,0.4,0.5,0.6,0.7,0.8,0.9";
    uint64_t stab_seed = 0;
    int stab_repeats = 5;
    auto* eval_stab = eval->add_subcommand(
        "stability", "ARI between full-data and subsampled clusterings");
    eval_stab->add_option("--input", stab_opt.input, "input data file")
        ->required();
    eval_stab->add_option("--format", stab_opt.format,
                          "svmlight-sparse | dense-csv");
    eval_stab->add_option("--dim", stab_opt.dim, "declared dimension");
    eval_stab->add_option("--mode", stab_mode, "instances | attributes");
    eval_stab->add_option("--fractions", stab_fractions,
                          "comma-separated subsample fractions");
    eval_stab->add_option("--harness-seed", stab_seed, "subsampling seed");
    eval_stab->add_option("--repeats", stab_repeats, "repetitions per fraction");
    eval_stab->add_option("--output", stab_opt.output, "CSV path");
    add_model_flags(eval_stab, stab_opt.config, stab_opt.init,
                    stab_opt.threads);

    EvalCommon imb_opt;
    MixtureSpec imb_base;
    std::string imb_vary = "omega";
    std::string imb_grid;
    uint64_t imb_seed = 0;
    auto* eval_imb = eval->add_subcommand(
        "imbalance", "cluster size fractions over a mixture parameter grid");
    eval_imb->add_option("--vary", imb_vary, "omega | d");
    eval_imb->add_option("--grid", imb_grid, "comma-separated grid values");
    eval_imb->add_option("--n", imb_base.n, "rows per grid point");
    eval_imb->add_option("--p", imb_base.p, "base bit probability");
    eval_imb->add_option("--alpha", imb_base.alpha, "source separation");
    eval_imb->add_option("--d", imb_base.block_size, "block size d");
    eval_imb->add_option("--dim", imb_base.dim, "dimension D");
    eval_imb->add_option("--omega", imb_base.omega, "source 0 weight");
    eval_imb->add_option("--harness-seed", imb_seed, "generator seed");
    eval_imb->add_option("--output", imb_opt.output, "CSV path");
    add_model_flags(eval_imb, imb_opt.config, imb_opt.init, imb_opt.threads);

    try {
        app.parse(argc, argv);
        if (cluster->parsed()) return cmd_cluster(cluster_opt);
        if (synth->parsed()) return cmd_synth(synth_opt);
        if (phase->parsed()) return cmd_phase(phase_opt);
        if (verify->parsed()) return cmd_verify_theorem(verify_opt);
        if (eval->parsed()) {
            if (eval_ari->parsed()) return cmd_eval_ari(ari_pred, ari_ref);
            if (eval_stab->parsed()) {
                return cmd_eval_stability(stab_opt, stab_mode, stab_fractions,
                                          stab_seed, stab_repeats);
            }
            if (eval_imb->parsed()) {
                return cmd_eval_imbalance(imb_opt, imb_base, imb_vary,
                                          imb_grid, imb_seed);
            }
        }
        std::cerr << "no command selected\n";
        return 1;
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
