#pragma once

#include <cstdint>
#include <vector>

#include "sparsemix/partition.hpp"

namespace sparsemix {

struct SwitchProposal {
    int32_t target = -1;
    double gain = 0.0;  // total-cost decrease; 0 when staying
};

struct OptimizerReport {
    Partition partition;
    // total cost after initialization, then after each pass
    std::vector<double> cost_trace;
    // one flag per completed pass; cost may rise on passes that deleted a
    // cluster and force-reassigned its elements
    std::vector<uint8_t> pass_had_reduction;
    int64_t iterations = 0;  // passes executed
    int64_t switches = 0;
    int64_t reductions = 0;  // clusters deleted
    uint64_t seed_used = 0;
};

// random: uniform assignment, empty clusters repaired by stealing the
//   highest-index row of the largest cluster.
// seeded: k_init seed rows picked with probability proportional to the
//   Hamming distance from the nearest previous seed, remaining rows assigned
//   to the nearest seed (ties to the earliest seed).
// Every cluster comes out nonempty. Requires 2 <= k_init <= n.
Partition initialize(const SparseBinaryDataset& data, const ModelConfig& config,
                     InitStrategy strategy);

// Evaluates moving x out of its current cluster into every other live
// cluster without mutating the partition. Returns the target with the
// largest strictly positive gain, or {current, 0} when nothing improves.
SwitchProposal best_switch(const SparseRow& x, int32_t current,
                           const Partition& partition,
                           const ModelConfig& config);

// Online optimization: sweeps elements in data order, commits strictly
// improving switches with incremental statistics updates, deletes clusters
// whose size falls below epsilon * n (reassigning their elements greedily),
// and stops after a switch-free pass or max_iter passes.
OptimizerReport run(const SparseBinaryDataset& data, const ModelConfig& config);

// Runs `run` with seeds seed, seed+1, ..., seed+restarts-1 (concurrently when
// threads != 1) and keeps the report with the lowest final cost; ties go to
// the earliest seed. threads <= 0 means all hardware threads.
OptimizerReport run_restarts(const SparseBinaryDataset& data,
                             const ModelConfig& config, int threads = 0);

}  // namespace sparsemix
