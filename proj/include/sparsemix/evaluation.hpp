#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <vector>

#include "sparsemix/dataset.hpp"
#include "sparsemix/partition.hpp"
#include "sparsemix/synthetic.hpp"

namespace sparsemix {

// Hubert-Arabie adjusted Rand index between two labelings of the same rows.
// 1 for identical equality structure, expectation 0 for independent
// labelings. Throws on length mismatch or fewer than two elements.
double adjusted_rand_index(const std::vector<int32_t>& a,
                           const std::vector<int32_t>& b);

// Clustering backend used by the harnesses: maps (dataset, seed) to labels.
using ClusterRunner =
    std::function<std::vector<int32_t>(const SparseBinaryDataset&, uint64_t)>;

struct StabilityPoint {
    double fraction = 0.0;
    double ari_mean = 0.0;
    double ari_std = 0.0;
};

// For each fraction: subsample that share of the rows, recluster, and score
// the result against the full clustering restricted to the same rows.
// Repeated `repeats` times with fresh derived seeds and averaged.
std::vector<StabilityPoint> stability_instances(
    const SparseBinaryDataset& data, const std::vector<int32_t>& full_labels,
    const std::vector<double>& fractions, const ClusterRunner& runner,
    uint64_t seed, int repeats = 5);

// Same protocol over attribute subsets: rows are kept, a random share of the
// columns is projected out, and the reclustering is scored against the
// clustering of the full data (computed once with the runner).
std::vector<StabilityPoint> stability_attributes(
    const SparseBinaryDataset& data, const std::vector<double>& fractions,
    const ClusterRunner& runner, uint64_t seed, int repeats = 5);

enum class ImbalanceVary { omega, block_size };

struct ImbalancePoint {
    double grid_value = 0.0;
    double cluster1_fraction = 0.0;
};

// For each grid value: regenerate the mixture with omega (or the block size
// d) replaced, cluster it, and report the size fraction of the cluster with
// the largest overlap with source 0.
std::vector<ImbalancePoint> imbalance_scan(const MixtureSpec& base,
                                           ImbalanceVary vary,
                                           const std::vector<double>& grid,
                                           const ModelConfig& config,
                                           uint64_t seed);

// Header: fraction,ari_mean,ari_std
void write_stability_csv(const std::vector<StabilityPoint>& points,
                         std::ostream& out);
// Header: grid_value,cluster1_fraction
void write_imbalance_csv(const std::vector<ImbalancePoint>& points,
                         std::ostream& out);

}  // namespace sparsemix
