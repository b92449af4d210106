#include "sparsemix/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>
#include <stdexcept>

#include "sparsemix/parallel.hpp"
#include "sparsemix/random.hpp"

namespace sparsemix {

namespace {

// Gains below this are treated as ties; ties keep the current cluster.
constexpr double kGainTie = 1e-12;
// Rebuild all cluster statistics after this many incremental updates to cap
// floating-point drift of the entropy accumulators.
constexpr int64_t kRebuildInterval = 1'000'000;

std::vector<int32_t> random_assignment(const SparseBinaryDataset& data, int k,
                                       std::mt19937_64& rng) {
    const size_t n = data.size();
    std::vector<int32_t> assignment(n);
    std::vector<int64_t> sizes(k, 0);
    for (size_t i = 0; i < n; ++i) {
        assignment[i] = static_cast<int32_t>(rand_below(rng, k));
        sizes[assignment[i]] += 1;
    }
    // repair empty clusters: steal the highest-index row of the largest one
    for (int c = 0; c < k; ++c) {
        if (sizes[c] > 0) continue;
        int largest = static_cast<int>(
            std::max_element(sizes.begin(), sizes.end()) - sizes.begin());
        for (size_t i = n; i-- > 0;) {
            if (assignment[i] == largest) {
                assignment[i] = c;
                sizes[largest] -= 1;
                sizes[c] += 1;
                break;
            }
        }
    }
    return assignment;
}

std::vector<int32_t> seeded_assignment(const SparseBinaryDataset& data, int k,
                                       std::mt19937_64& rng) {
    const size_t n = data.size();
    std::vector<size_t> seeds;
    std::vector<uint8_t> is_seed(n, 0);
    std::vector<int64_t> min_dist(n, 0);
    std::vector<int32_t> nearest(n, 0);
    std::vector<int32_t> seed_cluster(n, -1);

    size_t first = rand_below(rng, n);
    seeds.push_back(first);
    is_seed[first] = 1;
    seed_cluster[first] = 0;
    for (size_t i = 0; i < n; ++i) {
        min_dist[i] = static_cast<int64_t>(
            hamming_distance(data.row(i), data.row(first)));
    }

    for (int s = 1; s < k; ++s) {
        // next seed ~ distance to the nearest chosen seed; uniform over the
        // remaining rows when every distance is zero
        int64_t total = 0;
        for (size_t i = 0; i < n; ++i) {
            if (!is_seed[i]) total += min_dist[i];
        }
        size_t pick = n;
        if (total > 0) {
            double u = rand_unit(rng) * static_cast<double>(total);
            double acc = 0.0;
            for (size_t i = 0; i < n; ++i) {
                if (is_seed[i]) continue;
                acc += static_cast<double>(min_dist[i]);
                if (u < acc) {
                    pick = i;
                    break;
                }
            }
            if (pick == n) {  // rounding spill: take the last weighted row
                for (size_t i = n; i-- > 0;) {
                    if (!is_seed[i] && min_dist[i] > 0) {
                        pick = i;
                        break;
                    }
                }
            }
        } else {
            uint64_t skip = rand_below(rng, n - seeds.size());
            for (size_t i = 0; i < n; ++i) {
                if (is_seed[i]) continue;
                if (skip == 0) {
                    pick = i;
                    break;
                }
                --skip;
            }
        }
        seeds.push_back(pick);
        is_seed[pick] = 1;
        seed_cluster[pick] = s;
        for (size_t i = 0; i < n; ++i) {
            int64_t d = static_cast<int64_t>(
                hamming_distance(data.row(i), data.row(pick)));
            if (d < min_dist[i]) {
                min_dist[i] = d;
                nearest[i] = s;
            }
        }
    }

    std::vector<int32_t> assignment(n);
    for (size_t i = 0; i < n; ++i) {
        assignment[i] = is_seed[i] ? seed_cluster[i] : nearest[i];
    }
    return assignment;
}

struct RawCostProbe {
    // per-element cluster cost after a hypothetical update; empty cluster
    // costs zero
    static double after(const ClusterStats& stats, const StatsDelta& delta,
                        int dir) {
        int64_t size = stats.size() + dir;
        if (size <= 0) return 0.0;
        double bits = (xlog2(static_cast<double>(stats.diff_count_sum() +
                                                 delta.diff_sum_delta)) -
                       (stats.entropy_accumulator() + delta.entropy_delta)) /
                      static_cast<double>(size);
        return bits > 0.0 ? bits : 0.0;
    }
};

}  // namespace

Partition initialize(const SparseBinaryDataset& data, const ModelConfig& config,
                     InitStrategy strategy) {
    config.validate();
    const size_t n = data.size();
    if (static_cast<size_t>(config.k_init) > n) {
        throw std::invalid_argument("k_init exceeds the number of rows");
    }
    std::mt19937_64 rng(mix_seed(config.seed, 0));
    std::vector<int32_t> assignment =
        strategy == InitStrategy::random
            ? random_assignment(data, config.k_init, rng)
            : seeded_assignment(data, config.k_init, rng);
    return build_partition(data, assignment, config);
}

SwitchProposal best_switch(const SparseRow& x, int32_t current,
                           const Partition& partition,
                           const ModelConfig& config) {
    auto it = partition.clusters.find(current);
    if (it == partition.clusters.end()) {
        throw std::invalid_argument("current cluster is not live");
    }
    const ClusterStats& from = it->second;
    SwitchProposal best{current, 0.0};
    if (partition.clusters.size() < 2) return best;

    const double n = static_cast<double>(partition.n());
    const StatsDelta removal = from.peek_remove(x);
    double best_gain = kGainTie;

    if (!config.raw_pseudocode_gain) {
        const double from_before = cost_contribution(from, config.beta);
        const double from_after = cost_contribution(
            from.size() - 1, from.diff_count_sum() + removal.diff_sum_delta,
            from.entropy_accumulator() + removal.entropy_delta, config.beta);
        for (const auto& [id, to] : partition.clusters) {
            if (id == current) continue;
            const StatsDelta addition = to.peek_add(x);
            const double to_before = cost_contribution(to, config.beta);
            const double to_after = cost_contribution(
                to.size() + 1, to.diff_count_sum() + addition.diff_sum_delta,
                to.entropy_accumulator() + addition.entropy_delta, config.beta);
            const double gain =
                (from_before + to_before - from_after - to_after) / n;
            if (gain > best_gain) {
                best_gain = gain;
                best = {id, gain};
            }
        }
    } else {
        const double from_before = from.cost();
        const double from_after = RawCostProbe::after(from, removal, -1);
        for (const auto& [id, to] : partition.clusters) {
            if (id == current) continue;
            const StatsDelta addition = to.peek_add(x);
            const double gain = from_before + to.cost() - from_after -
                                RawCostProbe::after(to, addition, +1);
            if (gain > best_gain) {
                best_gain = gain;
                best = {id, gain};
            }
        }
    }
    return best;
}

namespace {

class HartiganState {
public:
    HartiganState(const SparseBinaryDataset& data, const ModelConfig& config,
                  Partition&& partition)
        : data_(data), config_(config), partition_(std::move(partition)) {
        n_ = static_cast<double>(partition_.n());
        beta_log_n_ = config_.beta * std::log2(n_);
        contrib_sum_ = 0.0;
        for (const auto& [id, stats] : partition_.clusters) {
            contrib_sum_ += cost_contribution(stats, config_.beta);
        }
    }

    double cost() const { return beta_log_n_ + contrib_sum_ / n_; }
    Partition& partition() { return partition_; }
    int64_t updates() const { return updates_; }

    void move_row(size_t row, int32_t to_id) {
        const int32_t from_id = partition_.assignment[row];
        ClusterStats& from = partition_.clusters.at(from_id);
        ClusterStats& to = partition_.clusters.at(to_id);
        const double before = cost_contribution(from, config_.beta) +
                              cost_contribution(to, config_.beta);
        from.remove(data_.row(row));
        to.add(data_.row(row));
        partition_.assignment[row] = to_id;
        contrib_sum_ += cost_contribution(from, config_.beta) +
                        cost_contribution(to, config_.beta) - before;
        updates_ += 2;
    }

    // Greedy placement used when a cluster is deleted: the target minimizing
    // the contribution increase, ties to the lowest id.
    int32_t cheapest_target(size_t row) const {
        const SparseRow& x = data_.row(row);
        int32_t best_id = -1;
        double best_delta = 0.0;
        for (const auto& [id, to] : partition_.clusters) {
            const StatsDelta addition = to.peek_add(x);
            const double delta =
                cost_contribution(to.size() + 1,
                                  to.diff_count_sum() + addition.diff_sum_delta,
                                  to.entropy_accumulator() + addition.entropy_delta,
                                  config_.beta) -
                cost_contribution(to, config_.beta);
            if (best_id < 0 || delta < best_delta) {
                best_id = id;
                best_delta = delta;
            }
        }
        return best_id;
    }

    void place_row(size_t row, int32_t to_id) {
        ClusterStats& to = partition_.clusters.at(to_id);
        const double before = cost_contribution(to, config_.beta);
        to.add(data_.row(row));
        partition_.assignment[row] = to_id;
        contrib_sum_ += cost_contribution(to, config_.beta) - before;
        updates_ += 1;
    }

    void erase_cluster(int32_t id) {
        contrib_sum_ -= cost_contribution(partition_.clusters.at(id), config_.beta);
        partition_.clusters.erase(id);
    }

    void rebuild_all() {
        contrib_sum_ = 0.0;
        for (auto& [id, stats] : partition_.clusters) {
            stats.rebuild();
            contrib_sum_ += cost_contribution(stats, config_.beta);
        }
        updates_ = 0;
    }

private:
    const SparseBinaryDataset& data_;
    const ModelConfig& config_;
    Partition partition_;
    double n_ = 0.0;
    double beta_log_n_ = 0.0;
    double contrib_sum_ = 0.0;
    int64_t updates_ = 0;
};

}  // namespace

OptimizerReport run(const SparseBinaryDataset& data, const ModelConfig& config) {
    config.validate();
    const size_t n = data.size();

    OptimizerReport report;
    report.seed_used = config.seed;

    HartiganState state(data, config, initialize(data, config, config.init));
    report.cost_trace.push_back(state.cost());

    std::mt19937_64 order_rng(mix_seed(config.seed, 1));
    std::vector<uint32_t> order(n);
    std::iota(order.begin(), order.end(), 0u);

    const double reduction_limit = config.epsilon * static_cast<double>(n);

    for (int pass = 0; pass < config.max_iter; ++pass) {
        if (config.shuffle_each_pass) shuffle_in_place(order, order_rng);
        bool any_switch = false;
        bool any_reduction = false;

        for (uint32_t row : order) {
            Partition& part = state.partition();
            if (part.clusters.size() < 2) break;
            const int32_t from_id = part.assignment[row];
            const SwitchProposal proposal =
                best_switch(data.row(row), from_id, part, config);
            if (proposal.target == from_id) continue;

            const double cost_before = state.cost();
            state.move_row(row, proposal.target);
            ++report.switches;
            any_switch = true;

            if (config.validate_steps && !config.raw_pseudocode_gain) {
                const double actual = cost_before - state.cost();
                if (actual <= 0.0 || std::abs(actual - proposal.gain) > 1e-9) {
                    throw std::logic_error("switch gain mismatch");
                }
                Partition check =
                    build_partition(data, part.assignment, config);
                if (std::abs(check.total_cost - state.cost()) > 1e-9) {
                    throw std::logic_error("incremental cost drifted from batch");
                }
            }

            const int64_t donor_size = part.clusters.at(from_id).size();
            if (donor_size == 0) {
                state.erase_cluster(from_id);
                ++report.reductions;
                any_reduction = true;
            } else if (static_cast<double>(donor_size) < reduction_limit) {
                // delete the shrunken cluster, then fit its members one by
                // one wherever they are cheapest
                std::vector<uint32_t> members;
                members.reserve(static_cast<size_t>(donor_size));
                for (uint32_t i = 0; i < n; ++i) {
                    if (part.assignment[i] == from_id) members.push_back(i);
                }
                state.erase_cluster(from_id);
                for (uint32_t member : members) {
                    state.place_row(member, state.cheapest_target(member));
                }
                ++report.reductions;
                any_reduction = true;
            }

            if (state.updates() >= kRebuildInterval) state.rebuild_all();
        }

        report.iterations = pass + 1;
        report.cost_trace.push_back(state.cost());
        report.pass_had_reduction.push_back(any_reduction ? 1 : 0);
        if (!any_switch) break;
    }

    const double final_cost = state.cost();
    Partition final_partition = std::move(state.partition());
    final_partition.total_cost = final_cost;

    Partition check = build_partition(data, final_partition.assignment, config);
    if (std::abs(check.total_cost - final_partition.total_cost) > 1e-9) {
        throw std::logic_error("final incremental cost drifted from batch");
    }

    report.partition = std::move(final_partition);
    return report;
}

OptimizerReport run_restarts(const SparseBinaryDataset& data,
                             const ModelConfig& config, int threads) {
    config.validate();
    std::vector<std::optional<OptimizerReport>> results(config.restarts);
    parallel_for(static_cast<size_t>(config.restarts), threads, [&](size_t r) {
        ModelConfig local = config;
        local.seed = config.seed + r;
        results[r] = run(data, local);
    });
    size_t best = 0;
    for (size_t r = 1; r < results.size(); ++r) {
        if (results[r]->partition.total_cost <
            results[best]->partition.total_cost) {
            best = r;
        }
    }
    return std::move(*results[best]);
}

}  // namespace sparsemix
