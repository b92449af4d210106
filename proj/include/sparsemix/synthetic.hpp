#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "sparsemix/dataset.hpp"

namespace sparsemix {

// Two-source block Bernoulli mixture. Source 0 places ones with probability
// alpha*p on the first block_size coordinates and (1-alpha)*p on the rest;
// source 1 swaps alpha and 1-alpha. A row comes from source 0 with
// probability omega.
struct MixtureSpec {
    double p = 0.1;
    double alpha = 0.05;
    uint32_t block_size = 50;  // d
    uint32_t dim = 100;        // D
    double omega = 0.5;
    int64_t n = 1000;

    void validate() const;  // throws std::invalid_argument
};

struct GeneratedData {
    SparseBinaryDataset data;
    std::vector<int32_t> labels;  // source index per row (0 or 1)
};

GeneratedData generate(const MixtureSpec& spec, uint64_t seed);

enum class ClusterDecision { one, two };

struct AnalyticCostPair {
    double cost_one = 0.0;
    double cost_two = 0.0;
    ClusterDecision decision = ClusterDecision::one;  // one iff cost_one <= cost_two
};

// Expected per-element code length (threshold 1, identification weight 1) of
// keeping the mixture in one cluster versus splitting it at the true
// sources. Closed forms, in bits.
AnalyticCostPair analytic_costs(const MixtureSpec& spec);

// a(-log2 a) + b(-log2 b); accepts any non-negative magnitudes.
double h2(double a, double b);

enum class PhaseGridMode {
    omega_alpha,      // block_size = dim/2; x = omega in [0,1]
    blocksize_alpha,  // omega = 1/2; x = block size in {0..dim}
    density_alpha,    // both balanced; x = mean non-zero bits L = p*d in (0,10]
};

PhaseGridMode parse_phase_mode(const std::string& name);

struct PhaseCell {
    double x = 0.0;
    double y = 0.0;  // alpha
    AnalyticCostPair costs;
};

struct PhaseGrid {
    PhaseGridMode mode = PhaseGridMode::omega_alpha;
    std::vector<PhaseCell> cells;  // x-major, y ascending within x
};

// One-vs-two-cluster decision map over a resolution x resolution grid.
// p is ignored in density_alpha mode (derived from L).
PhaseGrid phase_grid(double p, PhaseGridMode mode, uint32_t resolution,
                     uint32_t dim, int threads = 0);

// Header: x,y,cost_one,cost_two,decision
void write_phase_csv(const PhaseGrid& grid, std::ostream& out);

}  // namespace sparsemix
