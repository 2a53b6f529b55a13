#include "g3t/spheroid.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "g3t/error.hpp"

namespace g3t {

namespace {

constexpr double kDegenerateTol = 1e-12;

bool is_degenerate(double c, double c_min) noexcept {
    return c - c_min <= kDegenerateTol * std::max(1.0, c);
}

// Uniform point in the unit n-ball: normalized Gaussian direction, radius U^(1/n).
Eigen::VectorXd sample_unit_ball(std::size_t n, Rng& rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    Eigen::VectorXd x(static_cast<Eigen::Index>(n));
    double norm = 0.0;
    do {
        for (Eigen::Index i = 0; i < x.size(); ++i) x[i] = normal(rng);
        norm = x.norm();
    } while (norm == 0.0);
    const double radius = std::pow(unit(rng), 1.0 / static_cast<double>(n));
    return x * (radius / norm);
}

}  // namespace

double unit_ball_measure(std::size_t n) {
    if (n == 0) throw Error(ErrorCode::InvalidDimension, "unit ball dimension must be >= 1");
    const double half = 0.5 * static_cast<double>(n);
    return std::pow(std::numbers::pi, half) / std::tgamma(half + 1.0);
}

double phs_measure(double c, double c_min, std::size_t n) {
    if (n == 0) throw Error(ErrorCode::InvalidDimension, "spheroid dimension must be >= 1");
    if (c_min < 0.0 || !std::isfinite(c)) throw Error(ErrorCode::InvalidParameter, "invalid spheroid costs");
    if (c < c_min && !is_degenerate(c_min, c)) {
        throw Error(ErrorCode::DegenerateSpheroid, "transverse cost is below the focal distance");
    }
    if (is_degenerate(c, c_min)) return 0.0;
    const double exponent = 0.5 * static_cast<double>(n - 1);
    return c * std::pow(c * c - c_min * c_min, exponent) * unit_ball_measure(n) /
           std::pow(2.0, static_cast<double>(n));
}

Eigen::MatrixXd focal_basis(const State& a, const State& b) {
    if (a.size() != b.size()) throw Error(ErrorCode::DimensionError, "focal points differ in dimension");
    const Eigen::VectorXd axis = b - a;
    const double length = axis.norm();
    if (length == 0.0) throw Error(ErrorCode::DegenerateAxis, "focal points coincide");
    const Eigen::Index n = a.size();
    Eigen::MatrixXd basis(n, n);
    basis.col(0) = axis / length;
    Eigen::Index filled = 1;
    for (Eigen::Index e = 0; e < n && filled < n; ++e) {
        Eigen::VectorXd candidate = Eigen::VectorXd::Unit(n, e);
        for (Eigen::Index k = 0; k < filled; ++k) candidate -= basis.col(k).dot(candidate) * basis.col(k);
        const double norm = candidate.norm();
        if (norm < 1e-9) continue;
        basis.col(filled++) = candidate / norm;
    }
    return basis;
}

ProlateHyperspheroid::ProlateHyperspheroid(State focus_a, State focus_b, double transverse_cost)
    : focus_a_(std::move(focus_a)), focus_b_(std::move(focus_b)), transverse_(transverse_cost) {
    if (focus_a_.size() != focus_b_.size() || focus_a_.size() == 0) {
        throw Error(ErrorCode::DimensionError, "spheroid foci must share a positive dimension");
    }
    c_min_ = distance(focus_a_, focus_b_);
    if (!std::isfinite(transverse_) || (transverse_ < c_min_ && !is_degenerate(c_min_, transverse_))) {
        throw Error(ErrorCode::DegenerateSpheroid, "transverse cost is below the focal distance");
    }
    basis_ = c_min_ > 0.0 ? focal_basis(focus_a_, focus_b_) : Eigen::MatrixXd::Identity(focus_a_.size(), focus_a_.size());
}

double ProlateHyperspheroid::conjugate_semi_axis() const noexcept {
    return 0.5 * std::sqrt(std::max(0.0, transverse_ * transverse_ - c_min_ * c_min_));
}

bool ProlateHyperspheroid::degenerate() const noexcept { return is_degenerate(transverse_, c_min_); }

double ProlateHyperspheroid::measure() const { return phs_measure(std::max(transverse_, c_min_), c_min_, dim()); }

bool ProlateHyperspheroid::contains(const State& v) const {
    if (v.size() != focus_a_.size()) throw Error(ErrorCode::DimensionError, "state dimension mismatch");
    return distance(v, focus_a_) + distance(v, focus_b_) < transverse_;
}

State ProlateHyperspheroid::sample(Rng& rng) const {
    if (degenerate()) throw Error(ErrorCode::DegenerateSpheroid, "cannot sample a zero-volume spheroid");
    const State mid = center();
    Eigen::VectorXd scale = Eigen::VectorXd::Constant(focus_a_.size(), conjugate_semi_axis());
    scale[0] = transverse_semi_axis();
    // Rounding can land a draw on the boundary; redraw until strictly inside.
    while (true) {
        const Eigen::VectorXd ball = sample_unit_ball(dim(), rng);
        State v = mid + basis_ * ball.cwiseProduct(scale);
        if (contains(v)) return v;
    }
}

InformedSet::InformedSet(const ProblemDef& problem, double cost) : problem_(&problem), cost_(cost) {
    if (std::isfinite(cost) && problem.goals().size() == 1) {
        const State& start = problem.start();
        const State& goal = problem.goals().front();
        const double c_min = distance(start, goal);
        if (!is_degenerate(cost, c_min) && cost > c_min) {
            has_spheroid_ = true;
            basis_ = c_min > 0.0 ? focal_basis(start, goal) : Eigen::MatrixXd::Identity(start.size(), start.size());
            center_ = 0.5 * (start + goal);
            a_ = 0.5 * cost;
            b_ = 0.5 * std::sqrt(cost * cost - c_min * c_min);
        }
    }
}

bool InformedSet::contains(const State& v) const {
    return point_in_free(*problem_, v) && problem_->heuristic_through(v) < cost_;
}

double InformedSet::measure_bound() const {
    if (has_spheroid_) return phs_measure(cost_, problem_->min_goal_chord(), problem_->dim());
    if (std::isfinite(cost_) && problem_->goals().size() == 1) return 0.0;
    return 1.0;
}

std::optional<State> InformedSet::propose(Rng& rng) const {
    const std::size_t n = problem_->dim();
    if (std::isfinite(cost_) && problem_->goals().size() == 1 && !has_spheroid_) return std::nullopt;
    State v;
    if (has_spheroid_) {
        Eigen::VectorXd scale = Eigen::VectorXd::Constant(static_cast<Eigen::Index>(n), b_);
        scale[0] = a_;
        v = center_ + basis_ * sample_unit_ball(n, rng).cwiseProduct(scale);
    } else {
        v = sample_cube(n, rng);
    }
    if (!contains(v)) return std::nullopt;
    return v;
}

State InformedSet::sample(Rng& rng, std::size_t max_attempts) const {
    if (std::isfinite(cost_) && problem_->goals().size() == 1 && !has_spheroid_) {
        throw Error(ErrorCode::SubsetSaturated, "informed set is empty");
    }
    for (std::size_t attempt = 0; attempt < max_attempts; ++attempt) {
        if (auto v = propose(rng)) return std::move(*v);
    }
    throw Error(ErrorCode::SubsetSaturated, "informed set rejection sampling exhausted");
}

}  // namespace g3t
