#pragma once

#include <cstddef>
#include <vector>

#include "sparsemix/dataset.hpp"

namespace sparsemix {

struct MonotonicityViolation {
    size_t lower_index = 0;  // positions in the threshold grid
    size_t upper_index = 0;
    double cost_lower = 0.0;
    double cost_upper = 0.0;
};

struct MonotonicityReport {
    std::vector<double> thresholds;
    std::vector<double> costs;     // single-cluster cost at each threshold
    std::vector<double> z_values;  // mean non-zero bits per difference vector
    std::vector<MonotonicityViolation> violations;

    bool ok() const { return violations.empty(); }
};

// Evaluates the single-cluster cost over a sorted grid of thresholds in
// [1/2, 1] and flags adjacent pairs where the cost decreases as the
// threshold grows although Z(T_lower) >= 1. z_values are reported so the
// precondition is auditable.
MonotonicityReport verify_compression_monotonicity(
    const SparseBinaryDataset& data, const std::vector<double>& t_grid);

}  // namespace sparsemix
