#include "qfree/report.hpp"

#include <cmath>
#include <cstdio>

namespace qfree::report {

std::string format_double(double v) {
    if (std::isnan(v)) return quote("nan");
    if (std::isinf(v)) return quote(v > 0 ? "inf" : "-inf");
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string quote(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            case '\r': out += "\\r"; break;
            default:
                if (static_cast<unsigned char>(c) < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof buf, "\\u%04x", c);
                    out += buf;
                } else {
                    out += c;
                }
        }
    }
    return out + "\"";
}

namespace {

std::string value_json(const Value& v) {
    struct Visitor {
        std::string operator()(bool b) const { return b ? "true" : "false"; }
        std::string operator()(std::int64_t i) const { return std::to_string(i); }
        std::string operator()(double d) const { return format_double(d); }
        std::string operator()(const std::string& s) const { return quote(s); }
    };
    return std::visit(Visitor{}, v);
}

std::string fields_json(const Fields& f) {
    std::string out = "{";
    for (std::size_t k = 0; k < f.size(); ++k) {
        if (k) out += ", ";
        out += quote(f[k].first) + ": " + value_json(f[k].second);
    }
    return out + "}";
}

std::string list_json(const std::vector<Fields>& list) {
    std::string out = "[";
    for (std::size_t k = 0; k < list.size(); ++k) {
        if (k) out += ", ";
        out += fields_json(list[k]);
    }
    return out + "]";
}

}  // namespace

std::string Report::to_json() const {
    std::string out = "{";
    out += "\"command\": " + quote(command);
    out += ", \"params\": " + fields_json(params);
    out += ", \"pass\": " + std::string(pass ? "true" : "false");
    out += ", \"metrics\": " + fields_json(metrics);
    out += ", \"tolerances\": " + fields_json(tolerances);
    out += ", \"witnesses\": " + list_json(witnesses);
    out += ", \"records\": " + list_json(records);
    return out + "}";
}

}  // namespace qfree::report
