#include "sparsemix/partition.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace sparsemix {

InitStrategy parse_init_strategy(const std::string& name) {
    if (name == "random") return InitStrategy::random;
    if (name == "seeded") return InitStrategy::seeded;
    throw std::invalid_argument("unknown init strategy '" + name + "'");
}

void ModelConfig::validate() const {
    if (threshold < 0.0 || threshold > 1.0) {
        throw std::invalid_argument("threshold must lie in [0,1]");
    }
    if (beta < 0.0) throw std::invalid_argument("beta must be non-negative");
    if (epsilon < 0.0 || epsilon >= 1.0) {
        throw std::invalid_argument("epsilon must lie in [0,1)");
    }
    if (k_init < 2) throw std::invalid_argument("k_init must be at least 2");
    if (restarts < 1) throw std::invalid_argument("restarts must be positive");
    if (max_iter < 0) throw std::invalid_argument("max_iter must be non-negative");
}

double cost_contribution(int64_t size, int64_t diff_sum, double entropy_acc,
                         double beta) {
    if (size <= 0) return 0.0;
    return -beta * xlog2(static_cast<double>(size)) +
           xlog2(static_cast<double>(diff_sum)) - entropy_acc;
}

double cost_contribution(const ClusterStats& stats, double beta) {
    return cost_contribution(stats.size(), stats.diff_count_sum(),
                             stats.entropy_accumulator(), beta);
}

double total_cost(const std::map<int32_t, ClusterStats>& clusters, double beta) {
    int64_t n = 0;
    double sum = 0.0;
    for (const auto& [id, stats] : clusters) {
        if (stats.empty()) {
            throw std::invalid_argument("partition contains an empty cluster");
        }
        n += stats.size();
        sum += cost_contribution(stats, beta);
    }
    if (n == 0) throw std::invalid_argument("empty partition");
    return beta * std::log2(static_cast<double>(n)) + sum / static_cast<double>(n);
}

double total_cost(const Partition& partition, double beta) {
    return total_cost(partition.clusters, beta);
}

Partition build_partition(const SparseBinaryDataset& data,
                          const std::vector<int32_t>& assignment,
                          const ModelConfig& config) {
    if (assignment.size() != data.size()) {
        throw std::invalid_argument("assignment length does not match row count");
    }
    if (assignment.empty()) throw std::invalid_argument("empty partition");
    Partition partition;
    partition.assignment = assignment;
    for (size_t i = 0; i < data.size(); ++i) {
        auto [it, inserted] = partition.clusters.try_emplace(
            assignment[i], ClusterStats(config.threshold));
        it->second.add(data.row(i));
    }
    partition.total_cost = total_cost(partition.clusters, config.beta);
    return partition;
}

}  // namespace sparsemix
