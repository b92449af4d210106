#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "sparsemix/cluster_stats.hpp"
#include "sparsemix/dataset.hpp"

namespace sparsemix {

enum class InitStrategy { random, seeded };

InitStrategy parse_init_strategy(const std::string& name);

struct ModelConfig {
    double threshold = 0.5;  // representative threshold T in [0,1]
    double beta = 1.0;       // weight of the identification cost
    double epsilon = 0.01;   // delete clusters smaller than epsilon * n
    int k_init = 2;
    int restarts = 10;
    int max_iter = 100;
    uint64_t seed = 0;
    InitStrategy init = InitStrategy::seeded;
    bool shuffle_each_pass = false;
    // Literal unweighted switch criterion (per-element cluster costs only,
    // no size weighting, no identification term). For comparison runs;
    // descent on the full objective is not guaranteed.
    bool raw_pseudocode_gain = false;
    // Re-verify every committed switch against a from-scratch recomputation.
    // Slow; meant for tests.
    bool validate_steps = false;

    void validate() const;  // throws std::invalid_argument
};

struct Partition {
    std::vector<int32_t> assignment;  // row index -> live cluster id
    std::map<int32_t, ClusterStats> clusters;
    double total_cost = 0.0;  // bits per element

    int64_t n() const { return static_cast<int64_t>(assignment.size()); }
};

// Contribution of one cluster to n * (total cost - beta log2 n):
//   beta * n_i * (-log2 n_i) + S_i log2 S_i - entropy_acc_i.
// Zero for an empty cluster.
double cost_contribution(int64_t size, int64_t diff_sum, double entropy_acc,
                         double beta);
double cost_contribution(const ClusterStats& stats, double beta);

// beta log2 n + (1/n) sum_i cost_contribution(i). Throws on an empty
// partition. Equals the size-weighted sum over clusters of
// (cluster_cost + beta * identification_cost).
double total_cost(const std::map<int32_t, ClusterStats>& clusters, double beta);
double total_cost(const Partition& partition, double beta);

// Builds all cluster statistics from scratch for a given assignment and
// fills total_cost.
Partition build_partition(const SparseBinaryDataset& data,
                          const std::vector<int32_t>& assignment,
                          const ModelConfig& config);

}  // namespace sparsemix
