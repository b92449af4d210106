// End-to-end checks of the command line binary. The binary path arrives in
// SPARSEMIX_BIN (set by ctest).
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <sys/wait.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "json.hpp"
#include "sparsemix/evaluation.hpp"
#include "sparsemix/io.hpp"
#include "sparsemix/synthetic.hpp"

using json = nlohmann::json;

namespace {

std::string binary() {
    const char* path = std::getenv("SPARSEMIX_BIN");
    REQUIRE(path != nullptr);
    return path;
}

struct CommandResult {
    int exit_code = -1;
    std::string output;
};

CommandResult run_command(const std::string& args) {
    const std::string command = binary() + " " + args + " 2>/dev/null";
    FILE* pipe = popen(command.c_str(), "r");
    REQUIRE(pipe != nullptr);
    CommandResult result;
    char buffer[4096];
    while (size_t got = fread(buffer, 1, sizeof(buffer), pipe)) {
        result.output.append(buffer, got);
    }
    const int status = pclose(pipe);
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return result;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    REQUIRE(in.good());
    std::stringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

struct Workspace {
    std::string dir;
    Workspace() : dir("/tmp/sparsemix_cli_XXXXXX") {
        REQUIRE(mkdtemp(dir.data()) != nullptr);
    }
    std::string path(const std::string& name) const { return dir + "/" + name; }
};

void synth_mixture(const Workspace& ws, const std::string& extra = "") {
    const auto result = run_command(
        "synth --n 1000 --dim 100 --p 0.1 --alpha 0.05 --d 50 --omega 0.5 "
        "--seed 4 --output " +
        ws.path("data.sv") + " --labels-output " + ws.path("labels.txt") +
        extra);
    REQUIRE(result.exit_code == 0);
}

}  // namespace

TEST_CASE("synth is deterministic and writes loadable files") {
    Workspace ws;
    synth_mixture(ws);
    const std::string first = slurp(ws.path("data.sv"));
    synth_mixture(ws);
    CHECK(slurp(ws.path("data.sv")) == first);

    auto loaded = sparsemix::load_dataset(ws.path("data.sv"),
                                          sparsemix::DataFormat::svmlight_sparse);
    CHECK(loaded.data.size() == 1000);
    CHECK(sparsemix::load_labels(ws.path("labels.txt")).size() == 1000);
}

TEST_CASE("cluster recovers the planted mixture and passes --check") {
    Workspace ws;
    synth_mixture(ws);
    const std::string flags =
        "cluster --input " + ws.path("data.sv") + " --dim 100 --labels " +
        ws.path("labels.txt") + " --k 2 --beta 0 --t 0.5 --restarts 10 "
        "--seed 7 --output " + ws.path("result.json") + " --assign " +
        ws.path("assignment.txt") + " --check";
    auto result = run_command(flags);
    REQUIRE(result.exit_code == 0);

    json report = json::parse(slurp(ws.path("result.json")));
    CHECK(report["ari"].get<double>() >= 0.95);
    CHECK(report["check"]["drift"].get<double>() <= 1e-9);
    CHECK(report["clusters"].size() == 2);

    // beta = 0: both initial clusters survive
    int64_t total = 0;
    for (const auto& cluster : report["clusters"]) {
        total += cluster["size"].get<int64_t>();
    }
    CHECK(total == 1000);

    // assignment file recomputes to the reported cost via the library too
    auto loaded = sparsemix::load_dataset(
        ws.path("data.sv"), sparsemix::DataFormat::svmlight_sparse, 100);
    auto assignment = sparsemix::load_labels(ws.path("assignment.txt"));
    sparsemix::ModelConfig config;
    config.k_init = 2;
    config.beta = 0.0;
    auto rebuilt = sparsemix::build_partition(loaded.data, assignment, config);
    CHECK(std::abs(rebuilt.total_cost - report["total_cost"].get<double>()) <=
          1e-9);
}

TEST_CASE("identical flags reproduce the result byte for byte") {
    Workspace ws;
    synth_mixture(ws);
    const std::string flags =
        "cluster --input " + ws.path("data.sv") + " --k 2 --beta 1 "
        "--restarts 3 --seed 11 --assign " + ws.path("a.txt");
    REQUIRE(run_command(flags + " --output " + ws.path("r1.json")).exit_code == 0);
    REQUIRE(run_command(flags + " --output " + ws.path("r2.json")).exit_code == 0);
    json r1 = json::parse(slurp(ws.path("r1.json")));
    json r2 = json::parse(slurp(ws.path("r2.json")));
    CHECK(r1.contains("wall_time_sec"));
    r1.erase("wall_time_sec");
    r2.erase("wall_time_sec");
    CHECK(r1.dump() == r2.dump());
}

TEST_CASE("phase emits the documented CSV and matches the analytic costs") {
    Workspace ws;
    auto result = run_command(
        "phase --mode omega-alpha --p 0.1 --dim 100 --resolution 21 --output " +
        ws.path("grid.csv"));
    REQUIRE(result.exit_code == 0);
    std::ifstream in(ws.path("grid.csv"));
    std::string header;
    std::getline(in, header);
    CHECK(header == "x,y,cost_one,cost_two,decision");

    size_t checked = 0;
    std::string line;
    while (std::getline(in, line)) {
        std::stringstream row(line);
        std::string x, y, one, two, decision;
        std::getline(row, x, ',');
        std::getline(row, y, ',');
        std::getline(row, one, ',');
        std::getline(row, two, ',');
        std::getline(row, decision, ',');
        const double alpha = std::stod(y);
        if (alpha == 0.5) CHECK(decision == "one");

        sparsemix::MixtureSpec spec;
        spec.p = 0.1;
        spec.alpha = alpha;
        spec.block_size = 50;
        spec.dim = 100;
        spec.omega = std::stod(x);
        spec.n = 1;
        const auto expected = sparsemix::analytic_costs(spec);
        CHECK(std::abs(std::stod(one) - expected.cost_one) <= 1e-9);
        CHECK(std::abs(std::stod(two) - expected.cost_two) <= 1e-9);
        ++checked;
    }
    CHECK(checked == 21 * 21);
}

TEST_CASE("verify-theorem reports clean random datasets") {
    Workspace ws;
    auto result = run_command(
        "verify-theorem --random-datasets 20 --n 100 --random-dim 60 "
        "--density 0.1 --seed 3 --output " + ws.path("report.json"));
    REQUIRE(result.exit_code == 0);
    json report = json::parse(slurp(ws.path("report.json")));
    CHECK(report["ok"].get<bool>());
    CHECK(report["datasets"].size() == 20);
    for (const auto& dataset : report["datasets"]) {
        CHECK(dataset["z_values"][0].get<double>() >= 1.0);
    }
}

TEST_CASE("eval ari prints the pair-counting value") {
    Workspace ws;
    sparsemix::save_labels({0, 0, 1, 1}, ws.path("a.txt"));
    sparsemix::save_labels({0, 1, 0, 1}, ws.path("b.txt"));
    auto result = run_command("eval ari --pred " + ws.path("a.txt") +
                              " --ref " + ws.path("b.txt"));
    REQUIRE(result.exit_code == 0);
    CHECK(std::stod(result.output) == -0.5);
}

TEST_CASE("eval stability writes the documented CSV") {
    Workspace ws;
    synth_mixture(ws);
    auto result = run_command(
        "eval stability --input " + ws.path("data.sv") +
        " --mode instances --fractions 0.5,1.0 --repeats 2 --k 2 --beta 0 "
        "--restarts 2 --seed 3 --output " + ws.path("stability.csv"));
    REQUIRE(result.exit_code == 0);
    const std::string csv = slurp(ws.path("stability.csv"));
    CHECK(csv.rfind("fraction,ari_mean,ari_std\n", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 3);
}

TEST_CASE("eval imbalance writes the documented CSV") {
    Workspace ws;
    auto result = run_command(
        "eval imbalance --vary omega --grid 0.5 --n 300 --k 2 --beta 0 "
        "--restarts 2 --harness-seed 4 --output " + ws.path("imbalance.csv"));
    REQUIRE(result.exit_code == 0);
    const std::string csv = slurp(ws.path("imbalance.csv"));
    CHECK(csv.rfind("grid_value,cluster1_fraction\n", 0) == 0);
}

TEST_CASE("exit codes distinguish usage and data errors") {
    CHECK(run_command("cluster").exit_code == 1);           // missing --input
    CHECK(run_command("no-such-command").exit_code == 1);
    CHECK(run_command("cluster --input /nonexistent.sv --k 2").exit_code == 2);
    Workspace ws;
    std::ofstream(ws.path("bad.sv")) << "1:1 oops\n";
    CHECK(run_command("cluster --input " + ws.path("bad.sv") + " --k 2")
              .exit_code == 2);
}
