#include <algorithm>
#include <cmath>
#include <cstdio>

#include "urel/cli.hpp"

namespace urel::cli {

std::string format_number(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

namespace {

void emit(std::string& out, const nlohmann::ordered_json& j, int indent, int depth) {
    using value_t = nlohmann::ordered_json::value_t;
    const std::string pad(static_cast<std::size_t>(indent * (depth + 1)), ' ');
    const std::string close_pad(static_cast<std::size_t>(indent * depth), ' ');
    switch (j.type()) {
        case value_t::object: {
            if (j.empty()) {
                out += "{}";
                return;
            }
            out += "{\n";
            bool first = true;
            for (auto it = j.begin(); it != j.end(); ++it) {
                if (!first) out += ",\n";
                first = false;
                out += pad + nlohmann::ordered_json(it.key()).dump() + ": ";
                emit(out, it.value(), indent, depth + 1);
            }
            out += "\n" + close_pad + "}";
            return;
        }
        case value_t::array: {
            const bool flat = std::all_of(j.begin(), j.end(), [](const auto& e) { return e.is_primitive(); });
            if (j.empty()) {
                out += "[]";
                return;
            }
            out += flat ? "[" : "[\n";
            bool first = true;
            for (const auto& e : j) {
                if (!first) out += flat ? ", " : ",\n";
                first = false;
                if (!flat) out += pad;
                emit(out, e, indent, depth + 1);
            }
            out += flat ? "]" : "\n" + close_pad + "]";
            return;
        }
        case value_t::number_float: {
            const double x = j.get<double>();
            out += std::isfinite(x) ? format_number(x) : "null";
            return;
        }
        default:
            out += j.dump();
    }
}

}  // namespace

std::string dump_json(const nlohmann::ordered_json& j, int indent) {
    std::string out;
    emit(out, j, indent, 0);
    out += "\n";
    return out;
}

}  // namespace urel::cli
