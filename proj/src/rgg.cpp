#include "g3t/rgg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <unordered_set>

#include "g3t/error.hpp"
#include "g3t/spheroid.hpp"

namespace g3t {

namespace {

constexpr std::size_t kBruteForceBelow = 512;
constexpr std::size_t kLeafSize = 16;

void sort_neighbors(std::vector<Neighbor>& out) {
    std::sort(out.begin(), out.end(), [](const Neighbor& a, const Neighbor& b) {
        return a.distance != b.distance ? a.distance < b.distance : a.id < b.id;
    });
}

}  // namespace

void RadiusParams::validate() const {
    if (dim == 0) throw Error(ErrorCode::InvalidDimension, "RGG dimension must be >= 1");
    if (!(eta > 1.0)) throw Error(ErrorCode::InvalidParameter, "eta must exceed 1");
    if (!(rewire_factor >= 1.0)) throw Error(ErrorCode::InvalidParameter, "rewire factor must be >= 1");
    if (!(measure_min > 0.0) || measure_min > 1.0) {
        throw Error(ErrorCode::InvalidParameter, "measure_min must lie in (0, 1]");
    }
}

double rgg_gamma(const RadiusParams& params) {
    params.validate();
    const double n = static_cast<double>(params.dim);
    return 2.0 * params.eta * std::pow(1.0 + 1.0 / n, 1.0 / n) *
           std::pow(params.measure_min / unit_ball_measure(params.dim), 1.0 / n);
}

double gamma_star(std::size_t n) {
    const double nd = static_cast<double>(n);
    return 2.0 * std::pow(2.0 * nd * unit_ball_measure(n), -1.0 / nd);
}

double rgg_radius(std::size_t m, const RadiusParams& params) {
    if (m < 2) throw Error(ErrorCode::TooFewSamples, "RGG radius needs at least 2 samples");
    const double md = static_cast<double>(m);
    return params.rewire_factor * rgg_gamma(params) *
           std::pow(std::log(md) / md, 1.0 / static_cast<double>(params.dim));
}

SampleStore::SampleStore(std::size_t dim) : dim_(dim) {
    if (dim == 0) throw Error(ErrorCode::InvalidDimension, "store dimension must be >= 1");
}

std::vector<VertexId> SampleStore::ids() const {
    std::vector<VertexId> out;
    out.reserve(live_);
    for (std::size_t i = 0; i < alive_.size(); ++i) {
        if (alive_[i]) out.push_back(static_cast<VertexId>(i));
    }
    return out;
}

std::vector<VertexId> SampleStore::add_batch(std::span<const State> states) {
    std::vector<VertexId> out;
    out.reserve(states.size());
    for (const auto& s : states) {
        if (static_cast<std::size_t>(s.size()) != dim_) {
            throw Error(ErrorCode::DimensionError, "sample dimension does not match the store");
        }
    }
    for (const auto& s : states) {
        out.push_back(static_cast<VertexId>(states_.size()));
        states_.push_back(s);
        alive_.push_back(true);
        ++live_;
    }
    rebuild_index();
    return out;
}

VertexId SampleStore::add(const State& state) {
    return add_batch(std::span<const State>(&state, 1)).front();
}

std::size_t SampleStore::remove(std::span<const VertexId> ids) {
    std::size_t removed = 0;
    for (VertexId id : ids) {
        if (contains(id)) {
            alive_[id] = false;
            --live_;
            ++removed;
        }
    }
    if (removed > 0) rebuild_index();
    return removed;
}

void SampleStore::rebuild_index() {
    order_ = ids();
    nodes_.clear();
    root_ = -1;
    coords_.clear();
    if (order_.size() >= kBruteForceBelow) {
        root_ = build_node(0, order_.size());
    }
    coords_.resize(order_.size() * dim_);
    for (std::size_t i = 0; i < order_.size(); ++i) {
        const State& s = states_[order_[i]];
        std::copy(s.data(), s.data() + dim_, coords_.begin() + static_cast<std::ptrdiff_t>(i * dim_));
    }
}

std::int32_t SampleStore::build_node(std::size_t begin, std::size_t end) {
    Node node;
    node.begin = static_cast<std::uint32_t>(begin);
    node.end = static_cast<std::uint32_t>(end);
    const auto index = static_cast<std::int32_t>(nodes_.size());
    nodes_.push_back(node);
    if (end - begin <= kLeafSize) return index;

    // Split on the widest axis at the median.
    std::size_t best_dim = 0;
    double best_spread = -1.0;
    for (std::size_t d = 0; d < dim_; ++d) {
        double lo = std::numeric_limits<double>::infinity();
        double hi = -lo;
        for (std::size_t i = begin; i < end; ++i) {
            const double x = states_[order_[i]][static_cast<Eigen::Index>(d)];
            lo = std::min(lo, x);
            hi = std::max(hi, x);
        }
        if (hi - lo > best_spread) {
            best_spread = hi - lo;
            best_dim = d;
        }
    }
    const std::size_t mid = begin + (end - begin) / 2;
    const auto axis = static_cast<Eigen::Index>(best_dim);
    std::nth_element(order_.begin() + static_cast<std::ptrdiff_t>(begin), order_.begin() + static_cast<std::ptrdiff_t>(mid),
                     order_.begin() + static_cast<std::ptrdiff_t>(end), [&](VertexId a, VertexId b) {
                         const double xa = states_[a][axis];
                         const double xb = states_[b][axis];
                         return xa != xb ? xa < xb : a < b;
                     });
    const double split = states_[order_[mid]][axis];
    const std::int32_t left = build_node(begin, mid);
    const std::int32_t right = build_node(mid, end);
    nodes_[static_cast<std::size_t>(index)].left = left;
    nodes_[static_cast<std::size_t>(index)].right = right;
    nodes_[static_cast<std::size_t>(index)].split_dim = static_cast<std::uint32_t>(best_dim);
    nodes_[static_cast<std::size_t>(index)].split_value = split;
    return index;
}

void SampleStore::query_node(std::int32_t node_index, const double* query, double r2, std::vector<Neighbor>& out) const {
    const Node& node = nodes_[static_cast<std::size_t>(node_index)];
    if (node.left < 0) {
        for (std::uint32_t i = node.begin; i < node.end; ++i) {
            const double* p = coords_.data() + static_cast<std::size_t>(i) * dim_;
            double d2 = 0.0;
            for (std::size_t d = 0; d < dim_ && d2 <= r2; ++d) {
                const double diff = p[d] - query[d];
                d2 += diff * diff;
            }
            if (d2 <= r2) out.push_back(Neighbor{order_[i], d2});
        }
        return;
    }
    // Left holds values <= split, right holds values >= split.
    const double diff = query[node.split_dim] - node.split_value;
    if (diff <= 0.0) {
        query_node(node.left, query, r2, out);
        if (diff * diff <= r2) query_node(node.right, query, r2, out);
    } else {
        query_node(node.right, query, r2, out);
        if (diff * diff <= r2) query_node(node.left, query, r2, out);
    }
}

void SampleStore::radius_query(const double* query, double r2, std::vector<Neighbor>& out) const {
    if (root_ >= 0) {
        query_node(root_, query, r2, out);
    } else {
        for (std::size_t i = 0; i < order_.size(); ++i) {
            const double* p = coords_.data() + i * dim_;
            double d2 = 0.0;
            for (std::size_t d = 0; d < dim_; ++d) {
                const double diff = p[d] - query[d];
                d2 += diff * diff;
            }
            if (d2 <= r2) out.push_back(Neighbor{order_[i], d2});
        }
    }
}

std::vector<Neighbor> SampleStore::neighbors(const State& v, double r) const {
    if (static_cast<std::size_t>(v.size()) != dim_) throw Error(ErrorCode::DimensionError, "query dimension mismatch");
    std::vector<Neighbor> out;
    if (!(r > 0.0)) return out;
    radius_query(v.data(), r * r * (1.0 + 1e-12), out);
    std::erase_if(out, [](const Neighbor& n) { return n.distance == 0.0; });
    // Recompute exact distances so the inclusive test matches ||v - v'|| <= r.
    for (auto& n : out) n.distance = distance(states_[n.id], v);
    std::erase_if(out, [r](const Neighbor& n) { return n.distance > r; });
    sort_neighbors(out);
    return out;
}

std::vector<Neighbor> SampleStore::neighbors(VertexId id, double r) const {
    const State& v = states_.at(id);
    std::vector<Neighbor> out;
    if (!(r > 0.0)) return out;
    radius_query(v.data(), r * r * (1.0 + 1e-12), out);
    std::erase_if(out, [id](const Neighbor& n) { return n.id == id; });
    for (auto& n : out) n.distance = distance(states_[n.id], v);
    std::erase_if(out, [r](const Neighbor& n) { return n.distance > r; });
    sort_neighbors(out);
    return out;
}

std::vector<VertexId> SampleStore::common_neighbors(VertexId s, VertexId t, double r) const {
    const auto ns = neighbors(s, r);
    const auto nt = neighbors(t, r);
    std::unordered_set<VertexId> target_ids;
    for (const auto& n : nt) target_ids.insert(n.id);
    std::vector<VertexId> out;
    for (const auto& n : ns) {
        if (n.id != t && n.id != s && target_ids.contains(n.id)) out.push_back(n.id);
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<VertexId> SampleStore::common_neighbors(const State& s, const State& t, double r) const {
    const auto ns = neighbors(s, r);
    const auto nt = neighbors(t, r);
    std::unordered_set<VertexId> target_ids;
    for (const auto& n : nt) target_ids.insert(n.id);
    std::vector<VertexId> out;
    for (const auto& n : ns) {
        if (target_ids.contains(n.id) && states_[n.id] != t) out.push_back(n.id);
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::size_t prune(SampleStore& store, const ProblemDef& p, double c_curr, std::span<const VertexId> protected_ids) {
    if (!std::isfinite(c_curr)) return 0;
    const std::unordered_set<VertexId> keep(protected_ids.begin(), protected_ids.end());
    std::vector<VertexId> doomed;
    for (VertexId id : store.ids()) {
        if (keep.contains(id)) continue;
        if (p.heuristic_through(store.state(id)) >= c_curr) doomed.push_back(id);
    }
    return store.remove(doomed);
}

}  // namespace g3t
