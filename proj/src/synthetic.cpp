#include "sparsemix/synthetic.hpp"

#include <cmath>
#include <ostream>
#include <stdexcept>

#include "sparsemix/cluster_stats.hpp"
#include "sparsemix/parallel.hpp"
#include "sparsemix/random.hpp"

namespace sparsemix {

void MixtureSpec::validate() const {
    if (p < 0.0 || p > 1.0) throw std::invalid_argument("p must lie in [0,1]");
    if (alpha < 0.0 || alpha > 1.0) {
        throw std::invalid_argument("alpha must lie in [0,1]");
    }
    if (omega < 0.0 || omega > 1.0) {
        throw std::invalid_argument("omega must lie in [0,1]");
    }
    if (dim == 0) throw std::invalid_argument("dim must be positive");
    if (block_size > dim) {
        throw std::invalid_argument("block size cannot exceed dim");
    }
    if (n < 1) throw std::invalid_argument("n must be positive");
}

GeneratedData generate(const MixtureSpec& spec, uint64_t seed) {
    spec.validate();
    std::mt19937_64 rng(seed);
    std::vector<SparseRow> rows;
    std::vector<int32_t> labels;
    rows.reserve(static_cast<size_t>(spec.n));
    labels.reserve(static_cast<size_t>(spec.n));
    for (int64_t r = 0; r < spec.n; ++r) {
        const int32_t source = rand_unit(rng) < spec.omega ? 0 : 1;
        const double a = source == 0 ? spec.alpha : 1.0 - spec.alpha;
        const double p_block = a * spec.p;
        const double p_rest = (1.0 - a) * spec.p;
        SparseRow row;
        for (uint32_t j = 0; j < spec.dim; ++j) {
            const double pj = j < spec.block_size ? p_block : p_rest;
            if (rand_unit(rng) < pj) row.indices.push_back(j);
        }
        rows.push_back(std::move(row));
        labels.push_back(source);
    }
    return GeneratedData{SparseBinaryDataset(spec.dim, std::move(rows)),
                         std::move(labels)};
}

double h2(double a, double b) { return -xlog2(a) - xlog2(b); }

namespace {

// x*d + (1-x)*(D-d): expected non-zero coordinates per unit probability of a
// source described by x on the first block and 1-x on the rest.
double block_mass(double x, double d, double dim) {
    return x * d + (1.0 - x) * (dim - d);
}

}  // namespace

AnalyticCostPair analytic_costs(const MixtureSpec& spec) {
    spec.validate();
    const double d = static_cast<double>(spec.block_size);
    const double dim = static_cast<double>(spec.dim);
    const double a = spec.alpha;
    const double w = spec.omega;
    const double p = spec.p;

    const double mass_a = block_mass(a, d, dim);
    const double mass_na = block_mass(1.0 - a, d, dim);
    AnalyticCostPair pair;
    pair.cost_two = p * (w * xlog2(mass_a) + (1.0 - w) * xlog2(mass_na) -
                         block_mass(w, d, dim) * xlog2(a) -
                         block_mass(1.0 - w, d, dim) * xlog2(1.0 - a)) +
                    h2(w, 1.0 - w);

    // one-cluster mix of the two sources on the first block
    const double mix = w * a + (1.0 - w) * (1.0 - a);
    pair.cost_one = p * (xlog2(block_mass(mix, d, dim)) - d * xlog2(mix) -
                         (dim - d) * xlog2(1.0 - mix));

    pair.decision = pair.cost_one <= pair.cost_two ? ClusterDecision::one
                                                   : ClusterDecision::two;
    return pair;
}

PhaseGridMode parse_phase_mode(const std::string& name) {
    if (name == "omega-alpha") return PhaseGridMode::omega_alpha;
    if (name == "d-alpha") return PhaseGridMode::blocksize_alpha;
    if (name == "L-alpha") return PhaseGridMode::density_alpha;
    throw std::invalid_argument("unknown phase mode '" + name + "'");
}

PhaseGrid phase_grid(double p, PhaseGridMode mode, uint32_t resolution,
                     uint32_t dim, int threads) {
    if (resolution < 2) throw std::invalid_argument("resolution must be >= 2");
    if (dim == 0) throw std::invalid_argument("dim must be positive");

    PhaseGrid grid;
    grid.mode = mode;
    grid.cells.resize(static_cast<size_t>(resolution) * resolution);

    parallel_for(resolution, threads, [&](size_t xi) {
        for (uint32_t yi = 0; yi < resolution; ++yi) {
            const double alpha =
                static_cast<double>(yi) / static_cast<double>(resolution - 1);
            MixtureSpec spec;
            spec.dim = dim;
            spec.alpha = alpha;
            spec.n = 1;
            double x = 0.0;
            switch (mode) {
                case PhaseGridMode::omega_alpha:
                    x = static_cast<double>(xi) /
                        static_cast<double>(resolution - 1);
                    spec.omega = x;
                    spec.block_size = dim / 2;
                    spec.p = p;
                    break;
                case PhaseGridMode::blocksize_alpha:
                    x = std::round(static_cast<double>(xi) * dim /
                                   static_cast<double>(resolution - 1));
                    spec.block_size = static_cast<uint32_t>(x);
                    spec.omega = 0.5;
                    spec.p = p;
                    break;
                case PhaseGridMode::density_alpha: {
                    // mean non-zero bits L = p*d over (0, 10]
                    x = 10.0 * static_cast<double>(xi + 1) /
                        static_cast<double>(resolution);
                    spec.block_size = dim / 2;
                    spec.omega = 0.5;
                    spec.p = x / static_cast<double>(spec.block_size);
                    if (spec.p > 1.0) {
                        throw std::invalid_argument(
                            "L exceeds the block size; p would leave [0,1]");
                    }
                    break;
                }
            }
            PhaseCell& cell = grid.cells[xi * resolution + yi];
            cell.x = x;
            cell.y = alpha;
            cell.costs = analytic_costs(spec);
        }
    });
    return grid;
}

void write_phase_csv(const PhaseGrid& grid, std::ostream& out) {
    out << "x,y,cost_one,cost_two,decision\n";
    out.precision(12);
    for (const auto& cell : grid.cells) {
        out << cell.x << ',' << cell.y << ',' << cell.costs.cost_one << ','
            << cell.costs.cost_two << ','
            << (cell.costs.decision == ClusterDecision::one ? "one" : "two")
            << '\n';
    }
}

}  // namespace sparsemix
