#include "sparsemix/dataset.hpp"

#include <stdexcept>
#include <string>

namespace sparsemix {

SparseBinaryDataset::SparseBinaryDataset(uint32_t dim, std::vector<SparseRow> rows)
    : dim_(dim), rows_(std::move(rows)) {
    for (size_t i = 0; i < rows_.size(); ++i) {
        const auto& idx = rows_[i].indices;
        if (!strictly_increasing(idx)) {
            throw std::invalid_argument("row " + std::to_string(i) +
                                        ": indices not strictly increasing");
        }
        if (!idx.empty() && idx.back() >= dim_) {
            throw std::invalid_argument("row " + std::to_string(i) + ": index " +
                                        std::to_string(idx.back()) +
                                        " outside dimension " + std::to_string(dim_));
        }
    }
}

NnzStats nnz_stats(const SparseBinaryDataset& data) {
    if (data.size() == 0) {
        throw std::invalid_argument("nnz_stats: empty dataset");
    }
    NnzStats stats;
    stats.one_counts.assign(data.dim(), 0);
    int64_t total = 0;
    for (const auto& row : data.rows()) {
        total += static_cast<int64_t>(row.nnz());
        for (uint32_t j : row.indices) stats.one_counts[j] += 1;
    }
    stats.mean_nnz = static_cast<double>(total) / static_cast<double>(data.size());
    return stats;
}

}  // namespace sparsemix
