#include "sparsemix/sparse_row.hpp"

#include <algorithm>

namespace sparsemix {

bool SparseRow::contains(uint32_t j) const {
    return std::binary_search(indices.begin(), indices.end(), j);
}

bool strictly_increasing(const std::vector<uint32_t>& indices) {
    for (size_t i = 1; i < indices.size(); ++i) {
        if (indices[i] <= indices[i - 1]) return false;
    }
    return true;
}

SparseRow xor_rows(const SparseRow& a, const SparseRow& b) {
    SparseRow out;
    out.indices.reserve(a.nnz() + b.nnz());
    std::set_symmetric_difference(a.indices.begin(), a.indices.end(),
                                  b.indices.begin(), b.indices.end(),
                                  std::back_inserter(out.indices));
    return out;
}

size_t intersection_size(const SparseRow& a, const SparseRow& b) {
    size_t count = 0;
    auto ia = a.indices.begin();
    auto ib = b.indices.begin();
    while (ia != a.indices.end() && ib != b.indices.end()) {
        if (*ia < *ib) {
            ++ia;
        } else if (*ib < *ia) {
            ++ib;
        } else {
            ++count;
            ++ia;
            ++ib;
        }
    }
    return count;
}

size_t hamming_distance(const SparseRow& a, const SparseRow& b) {
    return a.nnz() + b.nnz() - 2 * intersection_size(a, b);
}

}  // namespace sparsemix
