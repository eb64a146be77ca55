#include "linkint/integrator.hpp"

#include "linkint/parallel.hpp"
#include "linkint/quadrature.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace linkint {

void QuadratureSpec::validate() const {
    if (base_order < 2) throw std::invalid_argument("base_order must be >= 2");
    if (max_subdivision_depth < 0) throw std::invalid_argument("max_subdivision_depth must be >= 0");
    if (!(refine_threshold > 0.0)) throw std::invalid_argument("refine_threshold must be positive");
    if (!(singular_guard > 0.0)) throw std::invalid_argument("singular_guard must be positive");
    if (!(rank_tol > 0.0)) throw std::invalid_argument("rank_tol must be positive");
    if (workers < 0) throw std::invalid_argument("workers must be >= 0");
}

SnapResult snap_integer(double value, double tol) {
    if (!(tol > 0.0 && tol < 0.5)) throw std::invalid_argument("snap tolerance must lie in (0, 0.5)");
    SnapResult r;
    const double nearest = std::nearbyint(value);
    r.value = static_cast<long long>(nearest);
    r.residual = std::abs(value - nearest);
    r.accepted = r.residual < tol;
    return r;
}

void snap_result(IntegralResult& result) {
    const double nearest = std::nearbyint(result.value);
    result.snapped = static_cast<long long>(nearest);
    result.residual = std::abs(result.value - nearest);
}

namespace {

/// Quadrature nodes of one side (K or L) of a tile for one rule.
struct NodeSet {
    std::vector<ChartPoint> points;
    std::vector<double> weights;
};

struct Tile {
    std::size_t pair = 0;
    std::vector<Interval> k_axes;
    std::vector<Interval> l_axes;
    int depth = 0;
    double measure_fraction = 1.0;
    double coarse = 0.0;
    double fine = 0.0;
    bool singular = false;
    std::vector<std::size_t> children;
};

struct RowResult {
    double sum = 0.0;
    double min_proximity = std::numeric_limits<double>::infinity();
    std::size_t worst_l = 0;
};

NodeSet tensor_nodes(const Chart& chart, const std::vector<Interval>& axes, int order,
                     double rank_tol) {
    const auto& rule = gauss_legendre(order);
    const int d = static_cast<int>(axes.size());
    std::size_t count = 1;
    for (int i = 0; i < d; ++i) count *= static_cast<std::size_t>(order);
    NodeSet set;
    set.points.reserve(count);
    set.weights.reserve(count);
    std::vector<double> u(static_cast<std::size_t>(d));
    for (std::size_t flat = 0; flat < count; ++flat) {
        std::size_t rest = flat;
        double w = 1.0;
        for (int i = d - 1; i >= 0; --i) {
            const std::size_t j = rest % static_cast<std::size_t>(order);
            rest /= static_cast<std::size_t>(order);
            const double half = 0.5 * axes[i].length();
            u[i] = axes[i].lo + half * (1.0 + rule.nodes[j]);
            w *= half * rule.weights[j];
        }
        set.points.push_back(chart.evaluate(u, rank_tol));
        set.weights.push_back(w);
    }
    return set;
}

std::vector<double> to_vector(const Params& p) { return {p.data(), p.data() + p.size()}; }

struct PairRef {
    std::size_t k_chart;
    std::size_t l_chart;
};

}  // namespace

IntegralResult integrate_product(const ParamSubmanifold& K, const ParamSubmanifold& L,
                                 const DensityFn& density, const QuadratureSpec& spec) {
    spec.validate();
    if (K.ambient_dim() != L.ambient_dim())
        throw DimensionError("integrate_product: K and L live in different ambient spaces");
    const auto start = std::chrono::steady_clock::now();
    const int workers = spec.workers == 0 ? default_worker_count() : spec.workers;
    const int p = spec.base_order;
    const int kd = K.dim(), ld = L.dim();
    const int d = kd + ld;

    // Chart pairs in label order: the summation tree depends on chart
    // identity, not on list position.
    std::vector<PairRef> pairs;
    for (std::size_t i = 0; i < K.charts().size(); ++i)
        for (std::size_t j = 0; j < L.charts().size(); ++j) pairs.push_back({i, j});
    std::sort(pairs.begin(), pairs.end(), [&](const PairRef& a, const PairRef& b) {
        const auto& ka = K.charts()[a.k_chart].label();
        const auto& kb = K.charts()[b.k_chart].label();
        if (ka != kb) return ka < kb;
        return L.charts()[a.l_chart].label() < L.charts()[b.l_chart].label();
    });

    std::vector<Tile> tiles;
    tiles.reserve(pairs.size());
    for (std::size_t pi = 0; pi < pairs.size(); ++pi) {
        Tile t;
        t.pair = pi;
        t.k_axes = K.charts()[pairs[pi].k_chart].compact_box();
        t.l_axes = L.charts()[pairs[pi].l_chart].compact_box();
        tiles.push_back(std::move(t));
    }

    IntegralResult result;
    std::vector<std::size_t> frontier(tiles.size());
    std::iota(frontier.begin(), frontier.end(), std::size_t{0});
    constexpr std::size_t kBatch = 64;

    while (!frontier.empty()) {
        std::vector<std::size_t> next;
        for (std::size_t b0 = 0; b0 < frontier.size(); b0 += kBatch) {
            const std::size_t nb = std::min(kBatch, frontier.size() - b0);
            // Node sets per (tile in batch, rule): [2 * t + rule].
            std::vector<NodeSet> k_nodes(2 * nb), l_nodes(2 * nb);
            parallel_for(2 * nb, workers, [&](std::size_t idx) {
                const Tile& tile = tiles[frontier[b0 + idx / 2]];
                const int order = (idx % 2 == 0) ? p : 2 * p;
                const auto& pr = pairs[tile.pair];
                k_nodes[idx] = tensor_nodes(K.charts()[pr.k_chart], tile.k_axes, order, spec.rank_tol);
                l_nodes[idx] = tensor_nodes(L.charts()[pr.l_chart], tile.l_axes, order, spec.rank_tol);
            });

            // One task per K node of every (tile, rule).
            std::vector<std::size_t> offsets(2 * nb + 1, 0);
            for (std::size_t i = 0; i < 2 * nb; ++i)
                offsets[i + 1] = offsets[i] + k_nodes[i].points.size();
            std::vector<RowResult> rows(offsets.back());
            parallel_for(offsets.back(), workers, [&](std::size_t task) {
                const auto set = static_cast<std::size_t>(
                    std::upper_bound(offsets.begin(), offsets.end(), task) - offsets.begin() - 1);
                const std::size_t a = task - offsets[set];
                const ChartPoint& x = k_nodes[set].points[a];
                const NodeSet& ls = l_nodes[set];
                RowResult row;
                for (std::size_t b = 0; b < ls.points.size(); ++b) {
                    const Density dens = density(x, ls.points[b]);
                    row.sum += ls.weights[b] * dens.value;
                    if (dens.proximity < row.min_proximity) {
                        row.min_proximity = dens.proximity;
                        row.worst_l = b;
                    }
                }
                row.sum *= k_nodes[set].weights[a];
                rows[task] = row;
            });

            for (std::size_t bi = 0; bi < nb; ++bi) {
                const std::size_t ti = frontier[b0 + bi];
                double q[2];
                bool singular = false;
                std::size_t bad_set = 0, bad_a = 0, bad_b = 0;
                double bad_prox = 0.0;
                for (int rule = 0; rule < 2; ++rule) {
                    const std::size_t set = 2 * bi + static_cast<std::size_t>(rule);
                    std::vector<double> vals;
                    vals.reserve(offsets[set + 1] - offsets[set]);
                    for (std::size_t task = offsets[set]; task < offsets[set + 1]; ++task) {
                        vals.push_back(rows[task].sum);
                        if (!singular && rows[task].min_proximity < spec.singular_guard) {
                            singular = true;
                            bad_set = set;
                            bad_a = task - offsets[set];
                            bad_b = rows[task].worst_l;
                            bad_prox = rows[task].min_proximity;
                        }
                    }
                    q[rule] = pairwise_sum(vals);
                    result.node_count += k_nodes[set].points.size() * l_nodes[set].points.size();
                }
                Tile& tile = tiles[ti];
                tile.coarse = q[0];
                tile.fine = q[1];
                tile.singular = singular;
                const double err = std::abs(q[1] - q[0]);
                const double budget = spec.refine_threshold * tile.measure_fraction;
                result.deepest_level = std::max(result.deepest_level, tile.depth);
                const bool wants_split = singular || err > budget;
                if (wants_split && tile.depth < spec.max_subdivision_depth) {
                    // Copy: pushing children may reallocate `tiles`.
                    const Tile parent = tile;
                    const std::size_t nchild = std::size_t{1} << d;
                    for (std::size_t c = 0; c < nchild; ++c) {
                        Tile child;
                        child.pair = parent.pair;
                        child.depth = parent.depth + 1;
                        child.measure_fraction = parent.measure_fraction / static_cast<double>(nchild);
                        for (int ax = 0; ax < d; ++ax) {
                            const bool upper = (c >> (d - 1 - ax)) & 1U;
                            const Interval& src = ax < kd ? parent.k_axes[ax] : parent.l_axes[ax - kd];
                            const double mid = 0.5 * (src.lo + src.hi);
                            const Interval half = upper ? Interval{mid, src.hi} : Interval{src.lo, mid};
                            (ax < kd ? child.k_axes : child.l_axes).push_back(half);
                        }
                        tiles[ti].children.push_back(tiles.size());
                        next.push_back(tiles.size());
                        tiles.push_back(std::move(child));
                    }
                    continue;
                }
                if (singular) {
                    const ChartPoint& xs = k_nodes[bad_set].points[bad_a];
                    const ChartPoint& ys = l_nodes[bad_set].points[bad_b];
                    std::ostringstream os;
                    os.precision(10);
                    os << "near-singular integrand: proximity " << bad_prox << " below guard "
                       << spec.singular_guard << " at s = (";
                    for (Eigen::Index i = 0; i < xs.params.size(); ++i) os << (i ? ", " : "") << xs.params(i);
                    os << "), t = (";
                    for (Eigen::Index i = 0; i < ys.params.size(); ++i) os << (i ? ", " : "") << ys.params(i);
                    os << ")";
                    throw NearSingularError(os.str(), to_vector(xs.params), to_vector(ys.params), bad_prox);
                }
                if (err > 10.0 * budget) result.accuracy_warning = true;
            }
        }
        frontier = std::move(next);
    }

    // Bottom-up fixed-order reduction. Children always have larger indices.
    std::vector<double> value(tiles.size()), error(tiles.size());
    for (std::size_t i = tiles.size(); i-- > 0;) {
        const Tile& t = tiles[i];
        if (t.children.empty()) {
            value[i] = t.fine;
            error[i] = std::abs(t.fine - t.coarse);
        } else {
            std::vector<double> cv, ce;
            for (std::size_t c : t.children) {
                cv.push_back(value[c]);
                ce.push_back(error[c]);
            }
            value[i] = pairwise_sum(cv);
            error[i] = pairwise_sum(ce);
        }
    }
    std::vector<double> contributions, errors;
    for (std::size_t pi = 0; pi < pairs.size(); ++pi) {
        const auto& kc = K.charts()[pairs[pi].k_chart];
        const auto& lc = L.charts()[pairs[pi].l_chart];
        const double factor = static_cast<double>(kc.orientation() * lc.orientation()) *
                              static_cast<double>(K.multiplicity()) *
                              static_cast<double>(L.multiplicity());
        contributions.push_back(factor * value[pi]);
        errors.push_back(std::abs(factor) * error[pi]);
    }
    result.value = pairwise_sum(contributions);
    result.error_estimate = pairwise_sum(errors);
    result.tiles = static_cast<int>(tiles.size());
    snap_result(result);
    result.wall_time =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return result;
}

}  // namespace linkint
