#pragma once

// Evaluation rows and their CSV / JSON encodings. Reals are written with 17
// significant digits so a parsed table reproduces the doubles exactly.

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "kseries/mcdonald_series.hpp"
#include "kseries/oracle.hpp"
#include "kseries/verification_suite.hpp"

namespace kseries {

enum class Method { RAW_M9, REARRANGED, M10_REG, ORACLE };

inline std::string to_string(Method m)
{
    switch (m) {
    case Method::RAW_M9: return "RAW_M9";
    case Method::REARRANGED: return "REARRANGED";
    case Method::M10_REG: return "M10_REG";
    case Method::ORACLE: return "ORACLE";
    }
    return "?";
}

/// Accepts both the command-line spelling (m9, rearranged, m10, oracle) and
/// the enum spelling.
inline std::optional<Method> parse_method(std::string_view name)
{
    if (name == "m9" || name == "RAW_M9") return Method::RAW_M9;
    if (name == "rearranged" || name == "REARRANGED") return Method::REARRANGED;
    if (name == "m10" || name == "M10_REG") return Method::M10_REG;
    if (name == "oracle" || name == "ORACLE") return Method::ORACLE;
    return std::nullopt;
}

struct OutputRow
{
    double s = 0.0;
    double z = 0.0;
    Method method = Method::REARRANGED;
    long terms = 0;
    double value = 0.0;
    bool converged = false;
    bool diverging = false;
    std::optional<double> rel_err_vs_oracle;
};

/// Evaluates one (s, z, method) point; domain errors propagate.
inline OutputRow evaluate_row(double s, double z, Method method, const TruncationPolicy& policy,
                              bool with_oracle)
{
    OutputRow row;
    row.s = s;
    row.z = z;
    row.method = method;
    SeriesApproximation a;
    switch (method) {
    case Method::RAW_M9: a = k_series_m9(s, z, policy); break;
    case Method::REARRANGED: a = k_mcdonald(s, z, policy); break;
    case Method::M10_REG: a = k_series_m10(s, z, policy, M10Path::regularized); break;
    case Method::ORACLE:
        a.value = k_oracle(s, z);
        a.converged = true;
        break;
    }
    row.terms = static_cast<long>(a.terms_used);
    row.value = a.value;
    row.converged = a.converged;
    row.diverging = a.diverging;
    if (with_oracle) {
        const double ref = method == Method::ORACLE ? a.value : k_oracle(s, z);
        row.rel_err_vs_oracle = std::abs(a.value - ref) / std::abs(ref);
    }
    return row;
}

inline constexpr std::string_view csv_header = "s,z,method,terms,value,converged,rel_err_vs_oracle";

inline std::string format_real(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline std::string to_csv_line(const OutputRow& r)
{
    std::string line = format_real(r.s) + "," + format_real(r.z) + "," + to_string(r.method) + "," +
                       std::to_string(r.terms) + "," + format_real(r.value) + "," +
                       (r.converged ? "true" : "false") + ",";
    if (r.rel_err_vs_oracle)
        line += format_real(*r.rel_err_vs_oracle);
    return line;
}

inline std::string to_csv(const std::vector<OutputRow>& rows)
{
    std::string out(csv_header);
    out += '\n';
    for (const auto& r : rows)
        out += to_csv_line(r) + '\n';
    return out;
}

namespace detail {

inline double parse_real(const std::string& field)
{
    // strtod rather than stod: stod rejects subnormals as out of range
    if (field.empty() || std::isspace(static_cast<unsigned char>(field.front())))
        throw std::invalid_argument("malformed real field: " + field);
    char* end = nullptr;
    const double v = std::strtod(field.c_str(), &end);
    if (end != field.c_str() + field.size())
        throw std::invalid_argument("malformed real field: " + field);
    return v;
}

} // namespace detail

/// Inverse of to_csv; throws std::invalid_argument on malformed input.
inline std::vector<OutputRow> parse_csv(const std::string& text)
{
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) || line != csv_header)
        throw std::invalid_argument("CSV header mismatch");
    std::vector<OutputRow> rows;
    while (std::getline(in, line)) {
        if (line.empty())
            continue;
        std::vector<std::string> f;
        std::size_t start = 0;
        for (;;) {
            const std::size_t comma = line.find(',', start);
            f.push_back(line.substr(start, comma - start));
            if (comma == std::string::npos)
                break;
            start = comma + 1;
        }
        if (f.size() != 7)
            throw std::invalid_argument("CSV row must have 7 fields: " + line);
        OutputRow r;
        r.s = detail::parse_real(f[0]);
        r.z = detail::parse_real(f[1]);
        const auto m = parse_method(f[2]);
        if (!m)
            throw std::invalid_argument("unknown method: " + f[2]);
        r.method = *m;
        r.terms = std::stol(f[3]);
        r.value = detail::parse_real(f[4]);
        if (f[5] != "true" && f[5] != "false")
            throw std::invalid_argument("converged must be true or false");
        r.converged = f[5] == "true";
        if (!f[6].empty())
            r.rel_err_vs_oracle = detail::parse_real(f[6]);
        rows.push_back(r);
    }
    return rows;
}

inline nlohmann::json to_json(const OutputRow& r)
{
    nlohmann::json j;
    j["s"] = r.s;
    j["z"] = r.z;
    j["method"] = to_string(r.method);
    j["terms"] = r.terms;
    j["value"] = r.value;
    j["converged"] = r.converged;
    j["rel_err_vs_oracle"] = r.rel_err_vs_oracle ? nlohmann::json(*r.rel_err_vs_oracle) : nlohmann::json();
    return j;
}

inline nlohmann::json to_json(const std::vector<OutputRow>& rows)
{
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& r : rows)
        arr.push_back(to_json(r));
    return arr;
}

inline OutputRow row_from_json(const nlohmann::json& j)
{
    OutputRow r;
    r.s = j.at("s").get<double>();
    r.z = j.at("z").get<double>();
    const auto m = parse_method(j.at("method").get<std::string>());
    if (!m)
        throw std::invalid_argument("unknown method in JSON row");
    r.method = *m;
    r.terms = j.at("terms").get<long>();
    r.value = j.at("value").is_null() ? std::nan("") : j.at("value").get<double>();
    r.converged = j.at("converged").get<bool>();
    if (!j.at("rel_err_vs_oracle").is_null())
        r.rel_err_vs_oracle = j.at("rel_err_vs_oracle").get<double>();
    return r;
}

inline nlohmann::json to_json(const VerificationRecord& r)
{
    nlohmann::json params = nlohmann::json::object();
    for (const auto& [k, v] : r.params)
        params[k] = v;
    return {{"identity", to_string(r.identity)},
            {"params", params},
            {"lhs", r.lhs},
            {"rhs", r.rhs},
            {"abs_dev", r.abs_dev},
            {"rel_dev", r.rel_dev},
            {"pass", r.pass},
            {"tol", r.tol},
            {"informational", r.informational}};
}

inline std::string to_text(const VerificationRecord& r)
{
    std::string line = to_string(r.identity);
    for (const auto& [k, v] : r.params)
        line += " " + k + "=" + format_real(v);
    line += " lhs=" + format_real(r.lhs) + " rhs=" + format_real(r.rhs) +
            " rel_dev=" + format_real(r.rel_dev) + " tol=" + format_real(r.tol);
    line += r.informational ? (r.pass ? " [info: match]" : " [info: mismatch]")
                            : (r.pass ? " PASS" : " FAIL");
    return line;
}

} // namespace kseries
