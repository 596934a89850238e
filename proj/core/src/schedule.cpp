#include "pinwheel/schedule.hpp"

#include <sstream>
#include <stdexcept>

namespace pinwheel {

std::string Certificate::to_text() const {
    std::ostringstream out;
    out << "instance: " << instance.to_text() << '\n';
    out << "preperiod:";
    for (long long label : preperiod) out << ' ' << label;
    out << '\n';
    out << "cycle:";
    for (long long label : cycle.labels) out << ' ' << label;
    out << '\n';
    out << "flat:";
    for (int agent : flat.days) out << ' ' << (agent + 1);
    out << '\n';
    return out.str();
}

namespace {

std::vector<long long> parse_int_list(const std::string& text, const char* what) {
    std::vector<long long> values;
    std::istringstream in(text);
    long long v = 0;
    while (in >> v) values.push_back(v);
    if (!in.eof()) {
        throw std::invalid_argument(std::string("malformed ") + what + " list in certificate");
    }
    return values;
}

}  // namespace

Certificate Certificate::parse(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    std::string instance_text;
    std::vector<long long> preperiod;
    std::vector<long long> cycle_labels;
    std::vector<long long> flat_agents;
    bool have_instance = false;
    bool have_flat = false;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        auto colon = line.find(':');
        if (colon == std::string::npos) {
            throw std::invalid_argument("certificate line without 'key:' prefix: " + line);
        }
        std::string key = line.substr(0, colon);
        std::string value = line.substr(colon + 1);
        if (key == "instance") {
            instance_text = value;
            have_instance = true;
        } else if (key == "preperiod") {
            preperiod = parse_int_list(value, "preperiod");
        } else if (key == "cycle") {
            cycle_labels = parse_int_list(value, "cycle");
        } else if (key == "flat") {
            flat_agents = parse_int_list(value, "flat");
            have_flat = true;
        }
        // Unknown keys are ignored so the block can carry annotations.
    }
    if (!have_instance) {
        throw std::invalid_argument("certificate is missing an 'instance:' line");
    }
    if (!have_flat) {
        throw std::invalid_argument("certificate is missing a 'flat:' line");
    }
    Instance instance = parse_instance(instance_text);
    FlatSchedule flat;
    flat.agent_count = instance.agent_count();
    flat.days.reserve(flat_agents.size());
    for (long long one_based : flat_agents) {
        if (one_based < 1 || one_based > instance.agent_count()) {
            throw std::invalid_argument("certificate flat schedule names an unknown agent");
        }
        flat.days.push_back(static_cast<int>(one_based - 1));
    }
    return Certificate{std::move(instance), std::move(preperiod),
                       GroupedSchedule{std::move(cycle_labels)}, std::move(flat)};
}

}  // namespace pinwheel
