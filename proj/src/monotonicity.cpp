#include "sparsemix/monotonicity.hpp"

#include <stdexcept>

#include "sparsemix/cluster_stats.hpp"

namespace sparsemix {

MonotonicityReport verify_compression_monotonicity(
    const SparseBinaryDataset& data, const std::vector<double>& t_grid) {
    if (data.size() == 0) throw std::invalid_argument("empty dataset");
    for (size_t i = 0; i < t_grid.size(); ++i) {
        if (t_grid[i] < 0.5 || t_grid[i] > 1.0) {
            throw std::invalid_argument("thresholds must lie in [1/2, 1]");
        }
        if (i > 0 && t_grid[i] < t_grid[i - 1]) {
            throw std::invalid_argument("threshold grid must be sorted");
        }
    }

    MonotonicityReport report;
    report.thresholds = t_grid;
    for (double t : t_grid) {
        ClusterStats stats(t);
        for (const auto& row : data.rows()) stats.add(row);
        report.costs.push_back(stats.cost());
        report.z_values.push_back(static_cast<double>(stats.diff_count_sum()) /
                                  static_cast<double>(stats.size()));
    }
    for (size_t i = 0; i + 1 < t_grid.size(); ++i) {
        if (report.z_values[i] < 1.0) continue;  // precondition not met
        if (report.costs[i] > report.costs[i + 1] + 1e-9) {
            report.violations.push_back({i, i + 1, report.costs[i],
                                         report.costs[i + 1]});
        }
    }
    return report;
}

}  // namespace sparsemix
