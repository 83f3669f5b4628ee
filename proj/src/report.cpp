#include "ergokit/report.hpp"

#include <cmath>
#include <cstdio>

namespace ergokit {

std::string format_double(double v) {
    if (std::isnan(v)) return "null";
    if (std::isinf(v)) return v > 0 ? "1e999" : "-1e999";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

namespace {

void dump_rec(const json& j, std::string& out, int indent, int depth) {
    std::string pad((std::size_t)(indent * (depth + 1)), ' ');
    std::string close_pad((std::size_t)(indent * depth), ' ');
    switch (j.type()) {
        case json::value_t::null: out += "null"; break;
        case json::value_t::boolean: out += j.get<bool>() ? "true" : "false"; break;
        case json::value_t::number_integer:
            out += std::to_string(j.get<int64_t>());
            break;
        case json::value_t::number_unsigned:
            out += std::to_string(j.get<uint64_t>());
            break;
        case json::value_t::number_float: out += format_double(j.get<double>()); break;
        case json::value_t::string: out += json(j.get<std::string>()).dump(); break;
        case json::value_t::array: {
            if (j.empty()) {
                out += "[]";
                break;
            }
            out += "[\n";
            bool first = true;
            for (const auto& e : j) {
                if (!first) out += ",\n";
                first = false;
                out += pad;
                dump_rec(e, out, indent, depth + 1);
            }
            out += "\n" + close_pad + "]";
            break;
        }
        case json::value_t::object: {
            if (j.empty()) {
                out += "{}";
                break;
            }
            out += "{\n";
            bool first = true;
            for (auto it = j.begin(); it != j.end(); ++it) {
                if (!first) out += ",\n";
                first = false;
                out += pad + json(it.key()).dump() + ": ";
                dump_rec(it.value(), out, indent, depth + 1);
            }
            out += "\n" + close_pad + "}";
            break;
        }
        default: out += "null"; break;
    }
}

}  // namespace

std::string dump_deterministic(const json& j, int indent) {
    std::string out;
    dump_rec(j, out, indent, 0);
    out += "\n";
    return out;
}

}  // namespace ergokit
