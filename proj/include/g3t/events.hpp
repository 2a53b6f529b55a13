#pragma once
//
// Line-delimited planner event log: one {"event", "iteration", "data"} object per line.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"

#include "g3t/space.hpp"

namespace g3t {

struct Event {
    std::string event;
    std::uint64_t iteration = 0;
    nlohmann::json data;
};

class EventLog {
public:
    void emit(std::string event, std::uint64_t iteration, nlohmann::json data = nlohmann::json::object());

    [[nodiscard]] const std::vector<Event>& events() const noexcept { return events_; }
    [[nodiscard]] bool empty() const noexcept { return events_.empty(); }
    /// Restrict recording to the given event names (empty = record everything).
    void set_filter(std::vector<std::string> names) { filter_ = std::move(names); }
    [[nodiscard]] bool wants(const std::string& name) const;

    void write_jsonl(std::ostream& out) const;
    [[nodiscard]] std::string to_jsonl() const;
    void save(const std::string& path) const;

    [[nodiscard]] static EventLog parse_jsonl(std::istream& in);
    [[nodiscard]] static EventLog load(const std::string& path);

private:
    std::vector<Event> events_;
    std::vector<std::string> filter_;
};

[[nodiscard]] nlohmann::json to_json(const State& v);
[[nodiscard]] State state_from_json(const nlohmann::json& j);

}  // namespace g3t
