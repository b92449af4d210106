#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace sparsemix {

// A binary vector stored as the sorted list of coordinates holding bit 1.
struct SparseRow {
    std::vector<uint32_t> indices;  // strictly increasing

    SparseRow() = default;
    explicit SparseRow(std::vector<uint32_t> idx) : indices(std::move(idx)) {}

    size_t nnz() const { return indices.size(); }
    bool empty() const { return indices.empty(); }
    bool contains(uint32_t j) const;

    bool operator==(const SparseRow&) const = default;
};

bool strictly_increasing(const std::vector<uint32_t>& indices);

// Symmetric difference of the index sets (bitwise XOR of the vectors).
SparseRow xor_rows(const SparseRow& a, const SparseRow& b);

size_t intersection_size(const SparseRow& a, const SparseRow& b);

// nnz(a) + nnz(b) - 2 |a ∩ b|
size_t hamming_distance(const SparseRow& a, const SparseRow& b);

}  // namespace sparsemix
