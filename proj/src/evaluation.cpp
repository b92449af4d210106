#include "sparsemix/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <unordered_map>

#include "sparsemix/optimizer.hpp"
#include "sparsemix/random.hpp"

namespace sparsemix {

namespace {

int64_t comb2(int64_t m) { return m * (m - 1) / 2; }

std::vector<int32_t> densify(const std::vector<int32_t>& labels, size_t& k) {
    std::unordered_map<int32_t, int32_t> remap;
    std::vector<int32_t> dense(labels.size());
    for (size_t i = 0; i < labels.size(); ++i) {
        auto [it, inserted] =
            remap.try_emplace(labels[i], static_cast<int32_t>(remap.size()));
        dense[i] = it->second;
    }
    k = remap.size();
    return dense;
}

}  // namespace

double adjusted_rand_index(const std::vector<int32_t>& a,
                           const std::vector<int32_t>& b) {
    if (a.size() != b.size()) {
        throw std::invalid_argument("label vectors differ in length");
    }
    const int64_t n = static_cast<int64_t>(a.size());
    if (n < 2) throw std::invalid_argument("need at least two elements");

    size_t ka = 0, kb = 0;
    const std::vector<int32_t> da = densify(a, ka);
    const std::vector<int32_t> db = densify(b, kb);

    std::unordered_map<uint64_t, int64_t> contingency;
    std::vector<int64_t> row_sums(ka, 0), col_sums(kb, 0);
    for (int64_t i = 0; i < n; ++i) {
        const uint64_t key =
            (static_cast<uint64_t>(da[i]) << 32) | static_cast<uint32_t>(db[i]);
        contingency[key] += 1;
        row_sums[da[i]] += 1;
        col_sums[db[i]] += 1;
    }

    int64_t cells = 0;
    for (const auto& [key, count] : contingency) cells += comb2(count);
    int64_t rows = 0, cols = 0;
    for (int64_t s : row_sums) rows += comb2(s);
    for (int64_t s : col_sums) cols += comb2(s);
    const int64_t pairs = comb2(n);

    // exact integer form of (index - expected) / (max - expected)
    const __int128 numerator =
        2 * (__int128)cells * pairs - 2 * (__int128)rows * cols;
    const __int128 denominator =
        ((__int128)rows + cols) * pairs - 2 * (__int128)rows * cols;
    if (denominator == 0) return 1.0;  // two trivial identical structures
    return static_cast<double>(static_cast<long double>(numerator) /
                               static_cast<long double>(denominator));
}

namespace {

StabilityPoint summarize(double fraction, const std::vector<double>& aris) {
    StabilityPoint point;
    point.fraction = fraction;
    const double mean =
        std::accumulate(aris.begin(), aris.end(), 0.0) / aris.size();
    double var = 0.0;
    for (double v : aris) var += (v - mean) * (v - mean);
    point.ari_mean = mean;
    point.ari_std = std::sqrt(var / aris.size());
    return point;
}

std::vector<size_t> sample_without_replacement(size_t population, size_t m,
                                               std::mt19937_64& rng) {
    std::vector<size_t> all(population);
    std::iota(all.begin(), all.end(), size_t{0});
    shuffle_in_place(all, rng);
    all.resize(m);
    std::sort(all.begin(), all.end());
    return all;
}

}  // namespace

std::vector<StabilityPoint> stability_instances(
    const SparseBinaryDataset& data, const std::vector<int32_t>& full_labels,
    const std::vector<double>& fractions, const ClusterRunner& runner,
    uint64_t seed, int repeats) {
    if (full_labels.size() != data.size()) {
        throw std::invalid_argument("full labeling does not match row count");
    }
    if (repeats < 1) throw std::invalid_argument("repeats must be positive");
    std::vector<StabilityPoint> points;
    for (size_t fi = 0; fi < fractions.size(); ++fi) {
        const double fraction = fractions[fi];
        if (fraction <= 0.0 || fraction > 1.0) {
            throw std::invalid_argument("fractions must lie in (0,1]");
        }
        const size_t m = static_cast<size_t>(
            std::llround(fraction * static_cast<double>(data.size())));
        if (m < 2) throw std::invalid_argument("subsample too small");
        std::vector<double> aris;
        for (int rep = 0; rep < repeats; ++rep) {
            std::mt19937_64 rng(mix_seed(seed, fi * 1024 + rep));
            const auto picked = sample_without_replacement(data.size(), m, rng);
            std::vector<SparseRow> rows;
            std::vector<int32_t> reference;
            rows.reserve(m);
            reference.reserve(m);
            for (size_t i : picked) {
                rows.push_back(data.row(i));
                reference.push_back(full_labels[i]);
            }
            SparseBinaryDataset subset(data.dim(), std::move(rows));
            const auto predicted =
                runner(subset, mix_seed(seed, 777'000 + fi * 1024 + rep));
            aris.push_back(adjusted_rand_index(predicted, reference));
        }
        points.push_back(summarize(fraction, aris));
    }
    return points;
}

std::vector<StabilityPoint> stability_attributes(
    const SparseBinaryDataset& data, const std::vector<double>& fractions,
    const ClusterRunner& runner, uint64_t seed, int repeats) {
    if (repeats < 1) throw std::invalid_argument("repeats must be positive");
    const auto full_labels = runner(data, mix_seed(seed, 999'999));
    std::vector<StabilityPoint> points;
    for (size_t fi = 0; fi < fractions.size(); ++fi) {
        const double fraction = fractions[fi];
        if (fraction <= 0.0 || fraction > 1.0) {
            throw std::invalid_argument("fractions must lie in (0,1]");
        }
        const size_t m = static_cast<size_t>(
            std::llround(fraction * static_cast<double>(data.dim())));
        if (m < 1) throw std::invalid_argument("attribute subsample is empty");
        std::vector<double> aris;
        for (int rep = 0; rep < repeats; ++rep) {
            std::mt19937_64 rng(mix_seed(seed, 555'000 + fi * 1024 + rep));
            const auto picked = sample_without_replacement(data.dim(), m, rng);
            // project every row onto the picked columns, reindexed densely
            std::vector<SparseRow> rows;
            rows.reserve(data.size());
            for (const auto& row : data.rows()) {
                SparseRow projected;
                for (uint32_t j : row.indices) {
                    auto it = std::lower_bound(picked.begin(), picked.end(),
                                               static_cast<size_t>(j));
                    if (it != picked.end() && *it == j) {
                        projected.indices.push_back(
                            static_cast<uint32_t>(it - picked.begin()));
                    }
                }
                rows.push_back(std::move(projected));
            }
            SparseBinaryDataset subset(static_cast<uint32_t>(m), std::move(rows));
            const auto predicted =
                runner(subset, mix_seed(seed, 333'000 + fi * 1024 + rep));
            aris.push_back(adjusted_rand_index(predicted, full_labels));
        }
        points.push_back(summarize(fraction, aris));
    }
    return points;
}

std::vector<ImbalancePoint> imbalance_scan(const MixtureSpec& base,
                                           ImbalanceVary vary,
                                           const std::vector<double>& grid,
                                           const ModelConfig& config,
                                           uint64_t seed) {
    std::vector<ImbalancePoint> points;
    for (size_t gi = 0; gi < grid.size(); ++gi) {
        MixtureSpec spec = base;
        if (vary == ImbalanceVary::omega) {
            spec.omega = grid[gi];
        } else {
            spec.block_size = static_cast<uint32_t>(std::llround(grid[gi]));
        }
        const GeneratedData generated = generate(spec, mix_seed(seed, gi));
        ModelConfig local = config;
        local.seed = mix_seed(seed, 10'000 + gi);
        const OptimizerReport report = run_restarts(generated.data, local);

        // match clusters to sources by overlap with source 0
        std::map<int32_t, int64_t> overlap, sizes;
        for (size_t i = 0; i < generated.labels.size(); ++i) {
            const int32_t c = report.partition.assignment[i];
            sizes[c] += 1;
            if (generated.labels[i] == 0) overlap[c] += 1;
        }
        int32_t best_id = sizes.begin()->first;
        for (const auto& [id, size] : sizes) {
            if (overlap[id] > overlap[best_id]) best_id = id;
        }
        points.push_back(
            {grid[gi], static_cast<double>(sizes[best_id]) /
                           static_cast<double>(generated.labels.size())});
    }
    return points;
}

void write_stability_csv(const std::vector<StabilityPoint>& points,
                         std::ostream& out) {
    out << "fraction,ari_mean,ari_std\n";
    out.precision(12);
    for (const auto& p : points) {
        out << p.fraction << ',' << p.ari_mean << ',' << p.ari_std << '\n';
    }
}

void write_imbalance_csv(const std::vector<ImbalancePoint>& points,
                         std::ostream& out) {
    out << "grid_value,cluster1_fraction\n";
    out.precision(12);
    for (const auto& p : points) {
        out << p.grid_value << ',' << p.cluster1_fraction << '\n';
    }
}

}  // namespace sparsemix
