#include "pinwheel/instance.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <stdexcept>

namespace pinwheel {

Instance::Instance(std::vector<long long> periods) : periods_(std::move(periods)) {
    if (periods_.empty()) {
        throw std::invalid_argument("instance must have at least one agent");
    }
    for (long long p : periods_) {
        if (p < 1) {
            throw std::invalid_argument("periods must be positive integers");
        }
    }
    std::sort(periods_.begin(), periods_.end());
}

std::vector<std::pair<long long, int>> Instance::multiplicities() const {
    std::vector<std::pair<long long, int>> groups;
    for (long long p : periods_) {
        if (!groups.empty() && groups.back().first == p) {
            ++groups.back().second;
        } else {
            groups.emplace_back(p, 1);
        }
    }
    return groups;
}

std::string Instance::to_text() const {
    std::ostringstream out;
    for (std::size_t i = 0; i < periods_.size(); ++i) {
        if (i > 0) out << ',';
        out << periods_[i];
    }
    return out.str();
}

Instance Instance::without_agent(int index) const {
    if (index < 0 || index >= agent_count()) {
        throw std::out_of_range("agent index out of range");
    }
    if (agent_count() == 1) {
        throw std::invalid_argument("cannot remove the only agent");
    }
    std::vector<long long> rest = periods_;
    rest.erase(rest.begin() + index);
    return Instance(std::move(rest));
}

namespace {

long long parse_positive_int(const std::string& token) {
    if (token.empty()) {
        throw std::invalid_argument("empty token in instance text");
    }
    for (char c : token) {
        if (!std::isdigit(static_cast<unsigned char>(c))) {
            throw std::invalid_argument("not a positive integer: '" + token + "'");
        }
    }
    long long value = 0;
    try {
        value = std::stoll(token);
    } catch (const std::out_of_range&) {
        throw std::invalid_argument("period out of range: '" + token + "'");
    }
    if (value < 1) {
        throw std::invalid_argument("periods must be >= 1, got '" + token + "'");
    }
    return value;
}

}  // namespace

Instance parse_instance(const std::string& text) {
    std::vector<long long> periods;
    std::string token;
    auto flush = [&]() {
        if (token.empty()) return;
        auto caret = token.find('^');
        if (caret == std::string::npos) {
            periods.push_back(parse_positive_int(token));
        } else {
            long long period = parse_positive_int(token.substr(0, caret));
            long long count = parse_positive_int(token.substr(caret + 1));
            if (count > 1'000'000) {
                throw std::invalid_argument("multiplicity too large: '" + token + "'");
            }
            periods.insert(periods.end(), static_cast<std::size_t>(count), period);
        }
        token.clear();
    };
    for (char c : text) {
        if (c == ',' || std::isspace(static_cast<unsigned char>(c))) {
            flush();
        } else {
            token.push_back(c);
        }
    }
    flush();
    if (periods.empty()) {
        throw std::invalid_argument("instance text is empty");
    }
    return Instance(std::move(periods));
}

Rational density(const Instance& a) {
    Rational sum = 0;
    for (long long p : a.periods()) {
        sum += Rational(BigInt(1), BigInt(p));
    }
    return sum;
}

Rational modified_density(const Instance& a) {
    Rational sum = 0;
    for (long long p : a.periods()) {
        if (p < 2) {
            throw std::invalid_argument("modified density requires periods >= 2");
        }
        sum += (p <= 10) ? Rational(BigInt(1), BigInt(p))
                         : Rational(BigInt(1), BigInt(p - 1));
    }
    return sum;
}

Instance generate_bk(int k) {
    if (k < 1) {
        throw std::invalid_argument("B_k requires k >= 1");
    }
    if (k > 62) {
        throw std::invalid_argument("B_k periods exceed 64-bit range for k > 62");
    }
    std::vector<long long> periods;
    periods.reserve(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) {
        periods.push_back((1LL << i) + 1);
    }
    return Instance(std::move(periods));
}

}  // namespace pinwheel
