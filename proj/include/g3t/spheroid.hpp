#pragma once
//
// Prolate hyperspheroids: {v : ||v - a|| + ||v - b|| < c}, their volume, and
// direct uniform sampling.

#include <cstddef>
#include <optional>

#include <Eigen/Core>

#include "g3t/space.hpp"

namespace g3t {

/// Lebesgue measure of the unit n-ball, pi^(n/2) / Gamma(n/2 + 1).
[[nodiscard]] double unit_ball_measure(std::size_t n);

/// Volume of the spheroid with transverse diameter c and focal distance c_min:
/// c (c^2 - c_min^2)^((n-1)/2) B_{1,n} / 2^n.
/// c within a relative 1e-12 of c_min is treated as degenerate (volume 0).
[[nodiscard]] double phs_measure(double c, double c_min, std::size_t n);

/// Orthonormal n x n basis whose first column points from a to b.
/// Remaining columns come from Gram-Schmidt over e_0..e_{n-1}.
[[nodiscard]] Eigen::MatrixXd focal_basis(const State& a, const State& b);

class ProlateHyperspheroid {
public:
    /// Throws DegenerateSpheroid when transverse_cost < ||b - a||.
    ProlateHyperspheroid(State focus_a, State focus_b, double transverse_cost);

    [[nodiscard]] const State& focus_a() const noexcept { return focus_a_; }
    [[nodiscard]] const State& focus_b() const noexcept { return focus_b_; }
    [[nodiscard]] double transverse_cost() const noexcept { return transverse_; }
    [[nodiscard]] double min_cost() const noexcept { return c_min_; }
    [[nodiscard]] const Eigen::MatrixXd& basis() const noexcept { return basis_; }
    [[nodiscard]] std::size_t dim() const noexcept { return static_cast<std::size_t>(focus_a_.size()); }
    [[nodiscard]] State center() const { return 0.5 * (focus_a_ + focus_b_); }
    [[nodiscard]] double transverse_semi_axis() const noexcept { return 0.5 * transverse_; }
    [[nodiscard]] double conjugate_semi_axis() const noexcept;

    /// True when the spheroid has zero volume (transverse cost equals the focal distance).
    [[nodiscard]] bool degenerate() const noexcept;
    [[nodiscard]] double measure() const;

    /// Strict: the focal-distance sum must be below the transverse cost.
    [[nodiscard]] bool contains(const State& v) const;

    /// Uniform draw over the spheroid volume; every draw satisfies contains().
    [[nodiscard]] State sample(Rng& rng) const;

private:
    State focus_a_;
    State focus_b_;
    double transverse_;
    double c_min_;
    Eigen::MatrixXd basis_;
};

[[nodiscard]] inline bool phs_contains(const ProlateHyperspheroid& phs, const State& v) { return phs.contains(v); }
[[nodiscard]] inline State phs_sample(const ProlateHyperspheroid& phs, Rng& rng) { return phs.sample(rng); }

/// Informed set of a problem for a solution cost: free states whose
/// start-to-goal heuristic is strictly below the cost.
class InformedSet {
public:
    InformedSet(const ProblemDef& problem, double cost);

    [[nodiscard]] double cost() const noexcept { return cost_; }
    [[nodiscard]] bool contains(const State& v) const;
    /// Upper bound on the measure (the bounding spheroid volume for one goal,
    /// the whole cube otherwise).
    [[nodiscard]] double measure_bound() const;
    /// One free member, drawn from the spheroid for a single goal and by
    /// rejection from the cube otherwise. Throws SubsetSaturated after max_attempts.
    [[nodiscard]] State sample(Rng& rng, std::size_t max_attempts) const;
    /// A single proposal; empty when it falls outside the set.
    [[nodiscard]] std::optional<State> propose(Rng& rng) const;

private:
    const ProblemDef* problem_;
    double cost_;
    bool has_spheroid_ = false;
    Eigen::MatrixXd basis_;
    State center_;
    double a_ = 0.0;
    double b_ = 0.0;
};

}  // namespace g3t
