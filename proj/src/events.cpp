#include "g3t/events.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "g3t/error.hpp"

namespace g3t {

using nlohmann::json;

void EventLog::emit(std::string event, std::uint64_t iteration, json data) {
    if (!wants(event)) return;
    events_.push_back(Event{std::move(event), iteration, std::move(data)});
}

bool EventLog::wants(const std::string& name) const {
    return filter_.empty() || std::find(filter_.begin(), filter_.end(), name) != filter_.end();
}

void EventLog::write_jsonl(std::ostream& out) const {
    for (const auto& e : events_) {
        json line;
        line["event"] = e.event;
        line["iteration"] = e.iteration;
        line["data"] = e.data;
        out << line.dump() << '\n';
    }
}

std::string EventLog::to_jsonl() const {
    std::ostringstream out;
    write_jsonl(out);
    return out.str();
}

void EventLog::save(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw Error(ErrorCode::ParseError, "cannot write event log " + path);
    write_jsonl(out);
}

EventLog EventLog::parse_jsonl(std::istream& in) {
    EventLog log;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        try {
            const json j = json::parse(line);
            log.events_.push_back(
                Event{j.at("event").get<std::string>(), j.at("iteration").get<std::uint64_t>(), j.value("data", json::object())});
        } catch (const json::exception& e) {
            throw Error(ErrorCode::ParseError, std::string("bad event line: ") + e.what());
        }
    }
    return log;
}

EventLog EventLog::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::ParseError, "cannot open event log " + path);
    return parse_jsonl(in);
}

json to_json(const State& v) {
    json j = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) j.push_back(v[i]);
    return j;
}

State state_from_json(const json& j) {
    State v(static_cast<Eigen::Index>(j.size()));
    for (std::size_t i = 0; i < j.size(); ++i) v[static_cast<Eigen::Index>(i)] = j[i].get<double>();
    return v;
}

}  // namespace g3t
