#include "sparsemix/cluster_stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace sparsemix {

double xlog2(double x) {
    return x > 0.0 ? x * std::log2(x) : 0.0;
}

ClusterStats::ClusterStats(double threshold) : threshold_(threshold) {
    if (threshold < 0.0 || threshold > 1.0) {
        throw std::invalid_argument("threshold must lie in [0,1]");
    }
}

int64_t ClusterStats::one_count(uint32_t j) const {
    auto it = one_counts_.find(j);
    return it == one_counts_.end() ? 0 : it->second;
}

bool ClusterStats::rep_bit(int64_t count, int64_t size) const {
    return static_cast<double>(count) > static_cast<double>(size) * threshold_;
}

int64_t ClusterStats::diff_count(int64_t count, int64_t size) const {
    return rep_bit(count, size) ? size - count : count;
}

// The coordinates whose difference count can change: the support of x, the
// current representative support, and (when shrinking) the at-most-one count
// value whose representative bit turns on because the threshold size*T
// decreased.
void ClusterStats::collect_touched(const SparseRow& x, int dir,
                                   std::vector<uint32_t>& out) const {
    out.clear();
    out.reserve(x.nnz() + rep_.size() + 4);
    out.insert(out.end(), x.indices.begin(), x.indices.end());
    out.insert(out.end(), rep_.begin(), rep_.end());
    if (dir < 0 && size_ >= 1) {
        int64_t c0 = static_cast<int64_t>(
            std::floor(static_cast<double>(size_) * threshold_));
        for (int64_t c = std::max<int64_t>(1, c0 - 1); c <= c0 + 1; ++c) {
            if (!rep_bit(c, size_ - 1) || rep_bit(c, size_)) continue;
            auto it = coords_by_count_.find(c);
            if (it == coords_by_count_.end()) continue;
            out.insert(out.end(), it->second.begin(), it->second.end());
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
}

void ClusterStats::bucket_move(uint32_t j, int64_t old_count, int64_t new_count) {
    if (old_count > 0) {
        auto it = coords_by_count_.find(old_count);
        it->second.erase(j);
        if (it->second.empty()) coords_by_count_.erase(it);
    }
    if (new_count > 0) coords_by_count_[new_count].insert(j);
}

void ClusterStats::apply(const SparseRow& x, int dir) {
    if (dir < 0) {
        if (size_ == 0) throw std::logic_error("remove from an empty cluster");
        for (uint32_t j : x.indices) {
            if (one_count(j) < 1) {
                throw std::logic_error("removed row is not counted in the cluster");
            }
        }
    }
    std::vector<uint32_t> touched;
    collect_touched(x, dir, touched);
    for (uint32_t j : touched) {
        int64_t n = diff_count(one_count(j), size_);
        diff_sum_ -= n;
        entropy_acc_ -= xlog2(static_cast<double>(n));
    }
    size_ += dir;
    for (uint32_t j : x.indices) {
        int64_t old_count = one_count(j);
        int64_t new_count = old_count + dir;
        bucket_move(j, old_count, new_count);
        if (new_count == 0) {
            one_counts_.erase(j);
        } else {
            one_counts_[j] = new_count;
        }
    }
    for (uint32_t j : touched) {
        int64_t count = one_count(j);
        int64_t n = diff_count(count, size_);
        diff_sum_ += n;
        entropy_acc_ += xlog2(static_cast<double>(n));
        if (rep_bit(count, size_)) {
            rep_.insert(j);
        } else {
            rep_.erase(j);
        }
    }
    if (size_ == 0) entropy_acc_ = 0.0;  // drop accumulated rounding residue
}

StatsDelta ClusterStats::peek(const SparseRow& x, int dir) const {
    if (dir < 0 && size_ == 0) {
        throw std::logic_error("remove from an empty cluster");
    }
    std::vector<uint32_t> touched;
    collect_touched(x, dir, touched);
    StatsDelta delta;
    const int64_t new_size = size_ + dir;
    for (uint32_t j : touched) {
        int64_t count = one_count(j);
        int64_t new_count = count + (x.contains(j) ? dir : 0);
        if (new_count < 0) {
            throw std::logic_error("removed row is not counted in the cluster");
        }
        int64_t n_old = diff_count(count, size_);
        int64_t n_new = diff_count(new_count, new_size);
        delta.diff_sum_delta += n_new - n_old;
        delta.entropy_delta += xlog2(static_cast<double>(n_new)) -
                               xlog2(static_cast<double>(n_old));
    }
    return delta;
}

void ClusterStats::add(const SparseRow& x) { apply(x, +1); }

void ClusterStats::remove(const SparseRow& x) { apply(x, -1); }

StatsDelta ClusterStats::peek_add(const SparseRow& x) const { return peek(x, +1); }

StatsDelta ClusterStats::peek_remove(const SparseRow& x) const { return peek(x, -1); }

SparseRow ClusterStats::representative() const {
    SparseRow row;
    row.indices.assign(rep_.begin(), rep_.end());
    return row;
}

double ClusterStats::cost() const {
    if (size_ == 0) throw std::invalid_argument("cost of an empty cluster");
    if (diff_sum_ == 0) return 0.0;
    double bits = (xlog2(static_cast<double>(diff_sum_)) - entropy_acc_) /
                  static_cast<double>(size_);
    return bits > 0.0 ? bits : 0.0;
}

int64_t ClusterStats::touched_coordinates(const SparseRow& x) const {
    // |x \ rep| + |rep \ x|
    int64_t count = 0;
    auto ix = x.indices.begin();
    auto ir = rep_.begin();
    while (ix != x.indices.end() && ir != rep_.end()) {
        if (*ix < *ir) {
            ++count;
            ++ix;
        } else if (*ir < *ix) {
            ++count;
            ++ir;
        } else {
            ++ix;
            ++ir;
        }
    }
    count += std::distance(ix, x.indices.end());
    count += std::distance(ir, rep_.end());
    return count;
}

void ClusterStats::rebuild() {
    rep_.clear();
    coords_by_count_.clear();
    diff_sum_ = 0;
    entropy_acc_ = 0.0;
    for (const auto& [j, count] : one_counts_) {
        coords_by_count_[count].insert(j);
        int64_t n = diff_count(count, size_);
        diff_sum_ += n;
        entropy_acc_ += xlog2(static_cast<double>(n));
        if (rep_bit(count, size_)) rep_.insert(j);
    }
}

double cluster_cost(const ClusterStats& stats) { return stats.cost(); }

double identification_cost(const ClusterStats& stats, int64_t n_total) {
    if (stats.size() <= 0 || n_total < stats.size()) {
        throw std::invalid_argument("identification cost needs n_total >= size > 0");
    }
    return std::log2(static_cast<double>(n_total) /
                     static_cast<double>(stats.size()));
}

}  // namespace sparsemix
