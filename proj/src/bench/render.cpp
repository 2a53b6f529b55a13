#include "g3t/bench/render.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <numbers>
#include <sstream>

#include "g3t/error.hpp"

namespace g3t::bench {

namespace {

using nlohmann::json;

class Canvas {
public:
    Canvas(std::size_t ax, std::size_t ay, double pixels) : ax_(ax), ay_(ay), px_(pixels) {
        out_ << std::setprecision(6);
        out_ << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << px_ << "\" height=\"" << px_
             << "\" viewBox=\"0 0 " << px_ << ' ' << px_ << "\">\n";
        out_ << "<rect x=\"0\" y=\"0\" width=\"" << px_ << "\" height=\"" << px_
             << "\" fill=\"white\" stroke=\"black\"/>\n";
    }

    [[nodiscard]] double x(const State& v) const { return v[static_cast<Eigen::Index>(ax_)] * px_; }
    [[nodiscard]] double y(const State& v) const { return (1.0 - v[static_cast<Eigen::Index>(ay_)]) * px_; }

    void box(const AxisBox& b) {
        const auto i = static_cast<Eigen::Index>(ax_);
        const auto j = static_cast<Eigen::Index>(ay_);
        out_ << "<rect class=\"obstacle\" x=\"" << b.min[i] * px_ << "\" y=\"" << (1.0 - b.max[j]) * px_
             << "\" width=\"" << (b.max[i] - b.min[i]) * px_ << "\" height=\"" << (b.max[j] - b.min[j]) * px_
             << "\" fill=\"#888888\"/>\n";
    }

    void line(const State& a, const State& b, const char* cls, const char* colour, double width) {
        out_ << "<line class=\"" << cls << "\" x1=\"" << x(a) << "\" y1=\"" << y(a) << "\" x2=\"" << x(b)
             << "\" y2=\"" << y(b) << "\" stroke=\"" << colour << "\" stroke-width=\"" << width << "\"/>\n";
    }

    void polyline(const std::vector<State>& pts, const char* cls, const char* colour, double width) {
        out_ << "<polyline class=\"" << cls << "\" fill=\"none\" stroke=\"" << colour << "\" stroke-width=\""
             << width << "\" points=\"";
        for (const auto& p : pts) out_ << x(p) << ',' << y(p) << ' ';
        out_ << "\"/>\n";
    }

    void circle(const State& c, double r, const char* cls, const char* colour) {
        out_ << "<circle class=\"" << cls << "\" cx=\"" << x(c) << "\" cy=\"" << y(c) << "\" r=\"" << r
             << "\" fill=\"" << colour << "\"/>\n";
    }

    // Spheroid outline in the projected plane: semi-axes c/2 and
    // sqrt(c^2 - c_min^2)/2 along and across the projected focal axis.
    void ellipse(const State& a, const State& b, double c, const char* cls, const char* colour) {
        const double c_min = distance(a, b);
        const double rx = 0.5 * c;
        const double ry = 0.5 * std::sqrt(std::max(0.0, c * c - c_min * c_min));
        const double cx = 0.5 * (x(a) + x(b));
        const double cy = 0.5 * (y(a) + y(b));
        const double angle = std::atan2(y(b) - y(a), x(b) - x(a)) * 180.0 / std::numbers::pi;
        out_ << "<ellipse class=\"" << cls << "\" cx=\"" << cx << "\" cy=\"" << cy << "\" rx=\"" << rx * px_
             << "\" ry=\"" << ry * px_ << "\" data-rx=\"" << rx << "\" data-ry=\"" << ry << "\" transform=\"rotate("
             << angle << ' ' << cx << ' ' << cy << ")\" fill=\"none\" stroke=\"" << colour
             << "\" stroke-width=\"1.5\"/>\n";
    }

    std::string finish() {
        out_ << "</svg>\n";
        return out_.str();
    }

private:
    std::size_t ax_;
    std::size_t ay_;
    double px_;
    std::ostringstream out_;
};

const Event* last_event(const EventLog& log, const std::string& name) {
    const Event* found = nullptr;
    for (const auto& e : log.events()) {
        if (e.event == name) found = &e;
    }
    return found;
}

}  // namespace

std::string render_svg(const EventLog& log, const ProblemDef& p, const RenderOptions& options) {
    std::array<std::size_t, 2> axes{0, 1};
    if (options.project) {
        axes = *options.project;
        if (axes[0] >= p.dim() || axes[1] >= p.dim() || axes[0] == axes[1]) {
            throw Error(ErrorCode::InvalidParameter, "projection axes must be two distinct state axes");
        }
    } else if (p.dim() != 2) {
        throw Error(ErrorCode::UnsupportedDimension, "rendering above 2D needs a projection");
    }
    Canvas canvas(axes[0], axes[1], options.pixels);
    for (const auto& b : p.obstacles()) canvas.box(b);

    if (const Event* e = last_event(log, "reverse-tree")) {
        for (const auto& edge : e->data.at("edges")) {
            canvas.line(state_from_json(edge.at(0)), state_from_json(edge.at(1)), "reverse-tree", "#2e8b57", 0.6);
        }
    }
    if (const Event* e = last_event(log, "forward-tree")) {
        for (const auto& edge : e->data.at("edges")) {
            canvas.line(state_from_json(edge.at(0)), state_from_json(edge.at(1)), "forward-tree", "#ff8c00", 0.8);
        }
    }
    for (const auto& e : log.events()) {
        if (e.event != "graft-success") continue;
        canvas.polyline({state_from_json(e.data.at("from")), state_from_json(e.data.at("mid")),
                         state_from_json(e.data.at("to"))},
                        "graft", "#1e90ff", 2.0);
    }
    if (const Event* e = last_event(log, "guild")) {
        for (const char* side : {"front", "back"}) {
            const json& s = e->data.at(side);
            if (s.is_null()) continue;
            canvas.ellipse(state_from_json(s.at("a")), state_from_json(s.at("b")), s.at("c").get<double>(),
                           "guild", "#9932cc");
        }
        canvas.circle(state_from_json(e->data.at("beacon")), 5.0, "beacon", "#228b22");
    }
    if (const Event* e = last_event(log, "solution")) {
        std::vector<State> pts;
        for (const auto& v : e->data.at("vertices")) pts.push_back(state_from_json(v));
        canvas.polyline(pts, "solution", "#dc143c", 3.0);
    }
    canvas.circle(p.start(), 6.0, "start", "#008080");
    for (const auto& g : p.goals()) canvas.circle(g, 6.0, "goal", "#800080");
    return canvas.finish();
}

std::string render_svg(const EventLog& log, const RenderOptions& options) {
    const Event* e = last_event(log, "problem");
    if (e == nullptr) throw Error(ErrorCode::ParseError, "event log has no problem record");
    return render_svg(log, parse_scene(e->data.dump()), options);
}

void render_svg_file(const EventLog& log, const ProblemDef& p, const std::string& path,
                     const RenderOptions& options) {
    std::ofstream out(path);
    if (!out) throw Error(ErrorCode::ParseError, "cannot write " + path);
    out << render_svg(log, p, options);
}

}  // namespace g3t::bench
