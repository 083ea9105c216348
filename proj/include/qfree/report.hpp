#pragma once

// Machine-readable command reports. Keys keep insertion order; doubles are
// written with 17 significant digits, non-finite doubles as the strings
// "inf", "-inf" and "nan".

#include <cstdint>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace qfree::report {

using Value = std::variant<bool, std::int64_t, double, std::string>;
using Fields = std::vector<std::pair<std::string, Value>>;

struct Report {
    std::string command;
    Fields params;
    bool pass = true;
    Fields metrics;
    Fields tolerances;
    std::vector<Fields> witnesses;
    std::vector<Fields> records;

    void param(std::string key, Value v) { params.emplace_back(std::move(key), std::move(v)); }
    void metric(std::string key, Value v) { metrics.emplace_back(std::move(key), std::move(v)); }
    void tolerance(std::string key, double v) { tolerances.emplace_back(std::move(key), v); }
    /// pass &= ok
    void require(bool ok) { pass = pass && ok; }

    std::string to_json() const;
};

std::string format_double(double v);
std::string quote(const std::string& s);

}  // namespace qfree::report
