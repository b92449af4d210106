#pragma once

#include <cstdint>
#include <vector>

#include "sparsemix/sparse_row.hpp"

namespace sparsemix {

// Immutable collection of sparse binary rows over a fixed dimension.
// Safe to share read-only across threads once constructed.
class SparseBinaryDataset {
public:
    SparseBinaryDataset(uint32_t dim, std::vector<SparseRow> rows);

    uint32_t dim() const { return dim_; }
    size_t size() const { return rows_.size(); }
    const SparseRow& row(size_t i) const { return rows_[i]; }
    const std::vector<SparseRow>& rows() const { return rows_; }

private:
    uint32_t dim_;
    std::vector<SparseRow> rows_;
};

struct NnzStats {
    double mean_nnz = 0.0;
    std::vector<int64_t> one_counts;  // length dim
};

// Throws std::invalid_argument on an empty dataset.
NnzStats nnz_stats(const SparseBinaryDataset& data);

}  // namespace sparsemix
