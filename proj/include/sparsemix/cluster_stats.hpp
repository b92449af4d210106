#pragma once

#include <cstdint>
#include <set>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "sparsemix/sparse_row.hpp"

namespace sparsemix {

// x * log2(x) with the 0 log 0 = 0 convention.
double xlog2(double x);

// Net effect of adding or removing one row, for cost probing without
// touching the statistics.
struct StatsDelta {
    int64_t diff_sum_delta = 0;  // change in S
    double entropy_delta = 0.0;  // change in sum_j N_j log2 N_j
};

// Sufficient statistics of one cluster under a fixed representative
// threshold T.
//
// Per coordinate j the cluster keeps the one-count n_j. The representative
// has bit 1 exactly where n_j / n > T; the difference count is
//   N_j = n_j       when the representative bit is 0,
//   N_j = n - n_j   when it is 1,
// i.e. the number of members whose bit j differs from the representative.
// S = sum_j N_j and the accumulator sum_j N_j log2 N_j are maintained
// incrementally, so adding or removing a row touches only the coordinates
// where x has a 1 plus the (few, for T >= 1/2) coordinates near or above the
// threshold. A coords-by-count index locates the at-most-one count value
// whose branch can flip when the cluster shrinks.
class ClusterStats {
public:
    explicit ClusterStats(double threshold);

    int64_t size() const { return size_; }
    bool empty() const { return size_ == 0; }
    double threshold() const { return threshold_; }
    int64_t diff_count_sum() const { return diff_sum_; }     // S
    double entropy_accumulator() const { return entropy_acc_; }
    int64_t one_count(uint32_t j) const;                     // n_j
    const std::unordered_map<uint32_t, int64_t>& one_counts() const {
        return one_counts_;
    }

    void add(const SparseRow& x);
    // Exact inverse of add for a row currently counted in the cluster
    // (caller's responsibility). Throws on an empty cluster or a negative
    // count.
    void remove(const SparseRow& x);

    StatsDelta peek_add(const SparseRow& x) const;
    StatsDelta peek_remove(const SparseRow& x) const;

    // Coordinates with one-count strictly above size * T, as a sorted row.
    SparseRow representative() const;

    // Average code length per element: (S log2 S - sum_j N_j log2 N_j) / n.
    // Zero when S = 0. Throws on an empty cluster.
    double cost() const;

    // Number of coordinates whose difference count is recomputed when x is
    // added; equals the size of the symmetric difference between x and the
    // representative support.
    int64_t touched_coordinates(const SparseRow& x) const;

    // Recomputes S, the entropy accumulator, the representative support and
    // the count index from the raw one-counts. Caps floating-point drift of
    // long incremental update chains.
    void rebuild();

private:
    bool rep_bit(int64_t count, int64_t size) const;
    int64_t diff_count(int64_t count, int64_t size) const;
    // dir = +1 for add, -1 for remove.
    void collect_touched(const SparseRow& x, int dir,
                         std::vector<uint32_t>& out) const;
    void apply(const SparseRow& x, int dir);
    StatsDelta peek(const SparseRow& x, int dir) const;
    void bucket_move(uint32_t j, int64_t old_count, int64_t new_count);

    double threshold_;
    int64_t size_ = 0;
    std::unordered_map<uint32_t, int64_t> one_counts_;   // n_j > 0 only
    std::set<uint32_t> rep_;                             // n_j > size * T
    std::unordered_map<int64_t, std::unordered_set<uint32_t>> coords_by_count_;
    int64_t diff_sum_ = 0;
    double entropy_acc_ = 0.0;
};

double cluster_cost(const ClusterStats& stats);

// -log2(n_i / n_total); requires n_total >= size > 0.
double identification_cost(const ClusterStats& stats, int64_t n_total);

}  // namespace sparsemix
