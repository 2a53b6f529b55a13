#include "g3t/space.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "json.hpp"

#include "g3t/error.hpp"

namespace g3t {

std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::InvalidDimension: return "InvalidDimension";
        case ErrorCode::DimensionError: return "DimensionError";
        case ErrorCode::DegenerateSpheroid: return "DegenerateSpheroid";
        case ErrorCode::DegenerateAxis: return "DegenerateAxis";
        case ErrorCode::InvalidEndpoint: return "InvalidEndpoint";
        case ErrorCode::SpaceSaturated: return "SpaceSaturated";
        case ErrorCode::SubsetSaturated: return "SubsetSaturated";
        case ErrorCode::TooFewSamples: return "TooFewSamples";
        case ErrorCode::InvalidParameter: return "InvalidParameter";
        case ErrorCode::EmptyQueue: return "EmptyQueue";
        case ErrorCode::NoInteriorVertex: return "NoInteriorVertex";
        case ErrorCode::NotAnImprovement: return "NotAnImprovement";
        case ErrorCode::ResolutionExhausted: return "ResolutionExhausted";
        case ErrorCode::GeneratorSaturated: return "GeneratorSaturated";
        case ErrorCode::UnsupportedDimension: return "UnsupportedDimension";
        case ErrorCode::ParseError: return "ParseError";
    }
    return "Unknown";
}

bool AxisBox::contains(const State& v) const noexcept {
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        if (v[i] < min[i] || v[i] > max[i]) return false;
    }
    return true;
}

double AxisBox::volume() const noexcept {
    double vol = 1.0;
    for (Eigen::Index i = 0; i < min.size(); ++i) vol *= std::max(0.0, max[i] - min[i]);
    return vol;
}

std::optional<std::pair<double, double>> AxisBox::segment_interval(const State& a, const State& b) const noexcept {
    double t_enter = 0.0;
    double t_exit = 1.0;
    for (Eigen::Index i = 0; i < a.size(); ++i) {
        const double d = b[i] - a[i];
        if (d == 0.0) {
            if (a[i] < min[i] || a[i] > max[i]) return std::nullopt;
            continue;
        }
        double t0 = (min[i] - a[i]) / d;
        double t1 = (max[i] - a[i]) / d;
        if (t0 > t1) std::swap(t0, t1);
        t_enter = std::max(t_enter, t0);
        t_exit = std::min(t_exit, t1);
        if (t_enter > t_exit) return std::nullopt;
    }
    return std::pair{t_enter, t_exit};
}

bool AxisBox::intersects_segment(const State& a, const State& b) const noexcept {
    return segment_interval(a, b).has_value();
}

namespace {

void require_dim(const State& v, std::size_t dim, const char* what) {
    if (static_cast<std::size_t>(v.size()) != dim) {
        throw Error(ErrorCode::DimensionError, std::string(what) + " has dimension " + std::to_string(v.size()) +
                                                   ", expected " + std::to_string(dim));
    }
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        if (!std::isfinite(v[i])) throw Error(ErrorCode::InvalidParameter, std::string(what) + " is not finite");
    }
}

bool in_unit_cube(const State& v) noexcept {
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        if (v[i] < 0.0 || v[i] > 1.0) return false;
    }
    return true;
}

}  // namespace

ProblemDef::ProblemDef(std::size_t dim, std::vector<AxisBox> obstacles, State start, std::vector<State> goals)
    : dim_(dim), obstacles_(std::move(obstacles)), start_(std::move(start)), goals_(std::move(goals)) {
    if (dim_ == 0) throw Error(ErrorCode::InvalidDimension, "problem dimension must be >= 1");
    require_dim(start_, dim_, "start");
    if (goals_.empty()) throw Error(ErrorCode::InvalidParameter, "at least one goal is required");
    for (const auto& g : goals_) require_dim(g, dim_, "goal");
    for (auto& box : obstacles_) {
        require_dim(box.min, dim_, "obstacle min");
        require_dim(box.max, dim_, "obstacle max");
        for (std::size_t i = 0; i < dim_; ++i) {
            if (box.min[i] > box.max[i]) throw Error(ErrorCode::InvalidParameter, "obstacle min exceeds max");
        }
        box.min = box.min.cwiseMax(0.0).cwiseMin(1.0);
        box.max = box.max.cwiseMax(0.0).cwiseMin(1.0);
    }
    if (!point_in_free(*this, start_)) throw Error(ErrorCode::InvalidEndpoint, "start is not collision free");
    for (const auto& g : goals_) {
        if (!point_in_free(*this, g)) throw Error(ErrorCode::InvalidEndpoint, "goal is not collision free");
    }
}

double ProblemDef::min_goal_chord() const noexcept {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& g : goals_) best = std::min(best, distance(start_, g));
    return best;
}

double ProblemDef::heuristic_through(const State& v) const noexcept {
    double to_goal = std::numeric_limits<double>::infinity();
    for (const auto& g : goals_) to_goal = std::min(to_goal, distance(v, g));
    return distance(start_, v) + to_goal;
}

bool ProblemDef::operator==(const ProblemDef& other) const {
    return dim_ == other.dim_ && obstacles_ == other.obstacles_ && start_ == other.start_ && goals_ == other.goals_;
}

bool point_in_free(const ProblemDef& p, const State& v) {
    if (!in_unit_cube(v)) return false;
    for (const auto& box : p.obstacles()) {
        if (box.contains(v)) return false;
    }
    return true;
}

bool segment_valid(const ProblemDef& p, const State& a, const State& b) {
    if (!point_in_free(p, a) || !point_in_free(p, b)) {
        throw Error(ErrorCode::InvalidEndpoint, "segment endpoint is in collision");
    }
    // The cube is convex, so free endpoints keep the whole segment inside it.
    for (const auto& box : p.obstacles()) {
        if (box.intersects_segment(a, b)) return false;
    }
    return true;
}

bool sparse_segment_check(const ProblemDef& p, const State& a, const State& b, int level) {
    if (level < 1 || level > 62) throw Error(ErrorCode::InvalidParameter, "resolution level must lie in [1, 62]");
    if (!point_in_free(p, a) || !point_in_free(p, b)) return false;
    // Point k / 2^level lies in a box iff it falls inside the box's slab
    // interval, so each box costs O(n) whatever the level. Interior points of
    // a segment between cube points stay in the cube.
    const double steps = std::ldexp(1.0, level);
    for (const auto& box : p.obstacles()) {
        const auto hit = box.segment_interval(a, b);
        if (!hit) continue;
        const double k_lo = std::max(1.0, std::ceil(hit->first * steps));
        const double k_hi = std::min(steps - 1.0, std::floor(hit->second * steps));
        if (k_lo <= k_hi) return false;
    }
    return true;
}

double path_cost(const std::vector<State>& vertices) {
    double cost = 0.0;
    for (std::size_t i = 1; i < vertices.size(); ++i) cost += distance(vertices[i - 1], vertices[i]);
    return cost;
}

SolutionPath SolutionPath::from_vertices(std::vector<State> vertices) {
    SolutionPath path;
    path.cost = path_cost(vertices);
    path.vertices = std::move(vertices);
    return path;
}

bool path_is_valid(const ProblemDef& p, const SolutionPath& path, double cost_tol) {
    if (path.vertices.size() < 2) return false;
    if (path.vertices.front() != p.start()) return false;
    const bool ends_at_goal = std::any_of(p.goals().begin(), p.goals().end(),
                                          [&](const State& g) { return g == path.vertices.back(); });
    if (!ends_at_goal) return false;
    for (const auto& v : path.vertices) {
        if (static_cast<std::size_t>(v.size()) != p.dim() || !point_in_free(p, v)) return false;
    }
    for (std::size_t i = 1; i < path.vertices.size(); ++i) {
        if (!segment_valid(p, path.vertices[i - 1], path.vertices[i])) return false;
    }
    return std::abs(path_cost(path.vertices) - path.cost) <= cost_tol &&
           path.cost >= distance(path.vertices.front(), path.vertices.back()) - cost_tol;
}

State sample_cube(std::size_t dim, Rng& rng) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    State v(static_cast<Eigen::Index>(dim));
    for (std::size_t i = 0; i < dim; ++i) v[static_cast<Eigen::Index>(i)] = unit(rng);
    return v;
}

std::vector<State> sample_free_uniform(const ProblemDef& p, Rng& rng, std::size_t count) {
    std::vector<State> out;
    out.reserve(count);
    const std::uint64_t max_attempts = std::uint64_t{1'000'000} * count;
    std::uint64_t attempts = 0;
    while (out.size() < count) {
        if (attempts++ >= max_attempts) {
            throw Error(ErrorCode::SpaceSaturated, "free space rejection sampling exhausted");
        }
        State v = sample_cube(p.dim(), rng);
        if (point_in_free(p, v)) out.push_back(std::move(v));
    }
    return out;
}

double free_space_measure(const ProblemDef& p) {
    const auto& boxes = p.obstacles();
    double measure = 1.0;
    for (const auto& b : boxes) measure -= b.volume();
    for (std::size_t i = 0; i < boxes.size(); ++i) {
        for (std::size_t j = i + 1; j < boxes.size(); ++j) {
            AxisBox overlap{boxes[i].min.cwiseMax(boxes[j].min), boxes[i].max.cwiseMin(boxes[j].max)};
            measure += overlap.volume();
        }
    }
    return std::clamp(measure, 1e-9, 1.0);
}

namespace {

using nlohmann::json;

State state_from_json(const json& j) {
    if (!j.is_array()) throw Error(ErrorCode::ParseError, "state must be an array");
    State v(static_cast<Eigen::Index>(j.size()));
    for (std::size_t i = 0; i < j.size(); ++i) v[static_cast<Eigen::Index>(i)] = j[i].get<double>();
    return v;
}

json state_to_json(const State& v) {
    json j = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) j.push_back(v[i]);
    return j;
}

}  // namespace

ProblemDef parse_scene(const std::string& json_text) {
    try {
        const json j = json::parse(json_text);
        const auto dim = j.at("dim").get<std::size_t>();
        std::vector<State> goals;
        for (const auto& g : j.at("goals")) goals.push_back(state_from_json(g));
        std::vector<AxisBox> obstacles;
        if (j.contains("obstacles")) {
            for (const auto& o : j.at("obstacles")) {
                obstacles.push_back(AxisBox{state_from_json(o.at("min")), state_from_json(o.at("max"))});
            }
        }
        return ProblemDef(dim, std::move(obstacles), state_from_json(j.at("start")), std::move(goals));
    } catch (const json::exception& e) {
        throw Error(ErrorCode::ParseError, e.what());
    }
}

ProblemDef load_scene(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::ParseError, "cannot open scene file " + path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_scene(buffer.str());
}

std::string scene_to_json(const ProblemDef& p) {
    json j;
    j["dim"] = p.dim();
    j["start"] = state_to_json(p.start());
    j["goals"] = json::array();
    for (const auto& g : p.goals()) j["goals"].push_back(state_to_json(g));
    j["obstacles"] = json::array();
    for (const auto& b : p.obstacles()) {
        j["obstacles"].push_back({{"min", state_to_json(b.min)}, {"max", state_to_json(b.max)}});
    }
    return j.dump();
}

void save_scene(const ProblemDef& p, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw Error(ErrorCode::ParseError, "cannot write scene file " + path);
    out << scene_to_json(p) << '\n';
}

}  // namespace g3t
