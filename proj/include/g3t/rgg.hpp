#pragma once
//
// Random geometric graph support: connection radius, batched sample store
// with exact radius queries, and informed pruning.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "g3t/space.hpp"

namespace g3t {

using VertexId = std::uint32_t;

struct RadiusParams {
    double eta = 1.001;
    std::size_t dim = 2;
    /// min{lambda(X_free), lambda(X_informed)}, in (0, 1].
    double measure_min = 1.0;
    double rewire_factor = 1.2;

    void validate() const;
};

/// gamma = 2 eta (1 + 1/n)^(1/n) (measure_min / B_{1,n})^(1/n).
[[nodiscard]] double rgg_gamma(const RadiusParams& params);

/// Connectivity threshold 2 (2 n B_{1,n})^(-1/n).
[[nodiscard]] double gamma_star(std::size_t n);

/// rewire_factor * gamma * (ln m / m)^(1/n); throws TooFewSamples for m < 2.
[[nodiscard]] double rgg_radius(std::size_t m, const RadiusParams& params);

struct Neighbor {
    VertexId id;
    double distance;
};

/// Vertex set with stable ids and exact Euclidean radius queries.
/// Single writer; const queries are safe to run concurrently between mutations.
class SampleStore {
public:
    explicit SampleStore(std::size_t dim);

    [[nodiscard]] std::size_t dim() const noexcept { return dim_; }
    /// Number of live vertices.
    [[nodiscard]] std::size_t size() const noexcept { return live_; }
    /// One past the largest id ever issued.
    [[nodiscard]] std::size_t id_bound() const noexcept { return states_.size(); }
    [[nodiscard]] bool contains(VertexId id) const noexcept { return id < alive_.size() && alive_[id]; }
    [[nodiscard]] const State& state(VertexId id) const { return states_.at(id); }
    /// Live ids in ascending order.
    [[nodiscard]] std::vector<VertexId> ids() const;

    /// Inserts all states with fresh ids (returned in insertion order).
    std::vector<VertexId> add_batch(std::span<const State> states);
    VertexId add(const State& state);
    /// Removes the given ids; unknown or already removed ids are ignored.
    std::size_t remove(std::span<const VertexId> ids);

    /// Stored vertices within distance r of v (inclusive), excluding entries
    /// coincident with v. Sorted by distance, ties by id.
    [[nodiscard]] std::vector<Neighbor> neighbors(const State& v, double r) const;
    /// Same, for a stored vertex; excludes only that id.
    [[nodiscard]] std::vector<Neighbor> neighbors(VertexId id, double r) const;

    /// N(s) intersect N(t) minus {s, t}, ascending id order.
    [[nodiscard]] std::vector<VertexId> common_neighbors(VertexId s, VertexId t, double r) const;
    [[nodiscard]] std::vector<VertexId> common_neighbors(const State& s, const State& t, double r) const;

private:
    void rebuild_index();
    void radius_query(const double* query, double r2, std::vector<Neighbor>& out) const;
    void query_node(std::int32_t node, const double* query, double r2, std::vector<Neighbor>& out) const;
    std::int32_t build_node(std::size_t begin, std::size_t end);

    struct Node {
        std::int32_t left = -1;
        std::int32_t right = -1;
        std::uint32_t begin = 0;
        std::uint32_t end = 0;
        std::uint32_t split_dim = 0;
        double split_value = 0.0;
    };

    std::size_t dim_;
    std::vector<State> states_;
    std::vector<bool> alive_;
    std::size_t live_ = 0;

    // Index over live vertices: ids permuted into kd order with flat coordinates.
    std::vector<VertexId> order_;
    std::vector<double> coords_;
    std::vector<Node> nodes_;
    std::int32_t root_ = -1;
};

/// Removes every live vertex whose start-to-goal heuristic is >= c_curr,
/// except protected ids. Returns the number removed.
std::size_t prune(SampleStore& store, const ProblemDef& p, double c_curr, std::span<const VertexId> protected_ids);

}  // namespace g3t
