// Periodic schedule value types and the certificate text block shared by the
// engine, the folding pipeline, and the verifier CLI.
#pragma once

#include "pinwheel/instance.hpp"

#include <string>
#include <vector>

namespace pinwheel {

// One cycle of a grouped schedule: labels[t] is the period value of the group
// employed on day t (mod cycle length).
struct GroupedSchedule {
    std::vector<long long> labels;

    int cycle_length() const { return static_cast<int>(labels.size()); }
    bool operator==(const GroupedSchedule& o) const { return labels == o.labels; }
};

// One cycle of a per-agent schedule: days[t] is the 0-based agent index (into
// the canonical sorted instance) working on day t (mod cycle length).
struct FlatSchedule {
    int agent_count = 0;
    std::vector<int> days;

    int cycle_length() const { return static_cast<int>(days.size()); }
    bool operator==(const FlatSchedule& o) const {
        return agent_count == o.agent_count && days == o.days;
    }
};

// The certificate block printed by `check` and consumed by `verify`.
// Agents are 1-based in the text form.
struct Certificate {
    Instance instance;
    std::vector<long long> preperiod;  // group labels leading into the cycle
    GroupedSchedule cycle;             // may be empty for hand-written certificates
    FlatSchedule flat;

    std::string to_text() const;
    static Certificate parse(const std::string& text);
};

}  // namespace pinwheel
