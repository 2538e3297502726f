// kseries: evaluate, tabulate and check the K_s(z) series from the command line.
//
// Exit codes: 0 success, 1 bad arguments or domain error, 2 numerical failure
// (series not converged, quadrature tolerance missed, asserted check failed).

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "kseries/kseries.hpp"
#include "kseries/report.hpp"

namespace {

using namespace kseries;

constexpr int exit_ok = 0;
constexpr int exit_usage = 1;
constexpr int exit_numeric = 2;

struct Range
{
    double lo = 0.0;
    double hi = 0.0;
    double step = 0.0;
};

std::optional<Range> parse_range(const std::string& text)
{
    const auto c1 = text.find(':');
    const auto c2 = c1 == std::string::npos ? c1 : text.find(':', c1 + 1);
    if (c2 == std::string::npos || text.find(':', c2 + 1) != std::string::npos)
        return std::nullopt;
    try {
        Range r;
        r.lo = detail::parse_real(text.substr(0, c1));
        r.hi = detail::parse_real(text.substr(c1 + 1, c2 - c1 - 1));
        r.step = detail::parse_real(text.substr(c2 + 1));
        if (!(r.step > 0.0) || !(r.lo <= r.hi) || !std::isfinite(r.hi))
            return std::nullopt;
        return r;
    } catch (const std::exception&) {
        return std::nullopt;
    }
}

// lo, lo + step, ... up to hi inclusive (with a little slack for rounding)
std::vector<double> expand(const Range& r)
{
    std::vector<double> out;
    const double slack = 1e-9 * r.step;
    for (long i = 0;; ++i) {
        const double v = r.lo + static_cast<double>(i) * r.step;
        if (v > r.hi + slack)
            break;
        out.push_back(v);
    }
    return out;
}

TruncationPolicy policy_with_cap(int max_terms)
{
    TruncationPolicy p;
    p.max_terms = max_terms;
    return p;
}

// ---------------------------------------------------------------- eval

struct EvalArgs
{
    double s = 0.0;
    double z = 0.0;
    std::string method = "rearranged";
    int max_terms = 200;
    bool json = false;
    bool csv = false;
    bool with_oracle = false;
};

int run_eval(const EvalArgs& a)
{
    const auto method = parse_method(a.method);
    if (!method) {
        std::cerr << "eval: unknown method '" << a.method << "'\n";
        return exit_usage;
    }
    OutputRow row;
    try {
        row = evaluate_row(a.s, a.z, *method, policy_with_cap(a.max_terms), a.with_oracle);
    } catch (const domain_error& e) {
        std::cerr << "eval: " << e.what() << '\n';
        return exit_usage;
    } catch (const tolerance_not_met& e) {
        std::cerr << "eval: " << e.what() << '\n';
        return exit_numeric;
    }

    if (a.json)
        std::cout << to_json(std::vector<OutputRow>{row}).dump(2) << '\n';
    else if (a.csv)
        std::cout << to_csv({row});
    else {
        std::cout << "s=" << format_real(row.s) << " z=" << format_real(row.z)
                  << " method=" << to_string(row.method) << " terms=" << row.terms
                  << " value=" << format_real(row.value)
                  << " converged=" << (row.converged ? "true" : "false");
        if (row.rel_err_vs_oracle)
            std::cout << " rel_err_vs_oracle=" << format_real(*row.rel_err_vs_oracle);
        std::cout << '\n';
    }
    if (!row.converged) {
        std::cerr << "eval: series did not converge within " << a.max_terms << " terms"
                  << (row.diverging ? " (terms growing)" : "") << '\n';
        return exit_numeric;
    }
    return exit_ok;
}

// ---------------------------------------------------------------- table

struct TableArgs
{
    std::vector<double> s_list;
    std::vector<double> z_list;
    std::vector<std::string> methods{"rearranged"};
    bool with_oracle = false;
    int max_terms = 200;
    std::string out;
    bool json = false;
};

struct TablePoint
{
    double s;
    double z;
    Method method;
};

int run_table(const TableArgs& a)
{
    if (a.s_list.empty() || a.z_list.empty() || a.methods.empty()) {
        std::cerr << "table: empty grid\n";
        return exit_usage;
    }
    for (double z : a.z_list) {
        if (!(z > 0.0)) {
            std::cerr << "table: every z must be positive\n";
            return exit_usage;
        }
    }
    std::vector<Method> methods;
    for (const auto& name : a.methods) {
        const auto m = parse_method(name);
        if (!m) {
            std::cerr << "table: unknown method '" << name << "'\n";
            return exit_usage;
        }
        methods.push_back(*m);
    }

    std::ofstream file(a.out);
    if (!file) {
        std::cerr << "table: cannot write " << a.out << '\n';
        return exit_usage;
    }

    std::vector<TablePoint> grid;
    for (double s : a.s_list)
        for (double z : a.z_list)
            for (Method m : methods)
                grid.push_back({s, z, m});

    const TruncationPolicy policy = policy_with_cap(a.max_terms);
    const auto rows = detail::ordered_parallel_map(grid, [&](const TablePoint& p) {
        try {
            return evaluate_row(p.s, p.z, p.method, policy, a.with_oracle);
        } catch (const std::exception& e) {
            OutputRow r;
            r.s = p.s;
            r.z = p.z;
            r.method = p.method;
            r.value = std::nan("");
            if (a.with_oracle)
                r.rel_err_vs_oracle = std::nan("");
            return r;
        }
    });

    if (a.json)
        file << to_json(rows).dump(2) << '\n';
    else
        file << to_csv(rows);
    file.flush();
    if (!file) {
        std::cerr << "table: write to " << a.out << " failed\n";
        return exit_usage;
    }
    std::cout << "wrote " << rows.size() << " rows to " << a.out << '\n';
    return exit_ok;
}

// ---------------------------------------------------------------- converge

struct ConvergeArgs
{
    std::string s_range;
    std::string z_range;
    int max_terms = 200;
};

int run_converge(const ConvergeArgs& a)
{
    const auto sr = parse_range(a.s_range);
    const auto zr = parse_range(a.z_range);
    if (!sr || !zr) {
        std::cerr << "converge: ranges must read lo:hi:step with step > 0 and lo <= hi\n";
        return exit_usage;
    }
    if (!(zr->lo > 0.0)) {
        std::cerr << "converge: z range must be positive\n";
        return exit_usage;
    }

    std::vector<OrderArg> grid;
    for (double s : expand(*sr))
        for (double z : expand(*zr))
            grid.push_back({s, z});

    const TruncationPolicy policy = policy_with_cap(a.max_terms);
    struct Status
    {
        std::string label;
        std::size_t terms = 0;
    };
    const auto results = detail::ordered_parallel_map(grid, [&](const OrderArg& p) {
        try {
            const SeriesApproximation r = k_mcdonald(p.s, p.z, policy);
            if (r.converged)
                return Status{"converged", r.terms_used};
            return Status{r.diverging ? "diverging" : "not-converged", r.terms_used};
        } catch (const domain_error&) {
            return Status{"domain-error", 0};
        }
    });

    std::size_t converged = 0;
    std::size_t evaluated = 0;
    std::map<double, std::vector<double>> by_z;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const auto& st = results[i];
        std::cout << "s=" << format_real(grid[i].s) << " z=" << format_real(grid[i].z)
                  << " status=" << st.label << " terms=" << st.terms << '\n';
        if (st.label == "domain-error")
            continue;
        ++evaluated;
        if (st.label == "converged") {
            ++converged;
            by_z[grid[i].z].push_back(grid[i].s);
        }
    }

    std::printf("summary: %zu of %zu points converged within %d terms (%.1f%%)\n", converged,
                evaluated, a.max_terms,
                evaluated ? 100.0 * static_cast<double>(converged) / static_cast<double>(evaluated) : 0.0);
    for (const auto& [z, ss] : by_z) {
        std::cout << "  z=" << format_real(z) << " converged at s =";
        for (double s : ss)
            std::cout << ' ' << format_real(s);
        std::cout << '\n';
    }
    return exit_ok;
}

// ---------------------------------------------------------------- verify

struct VerifyArgs
{
    std::string identity;
    double tol = default_identity_tolerance;
    bool json = false;
};

int run_verify(const VerifyArgs& a)
{
    std::vector<Suite> suites;
    if (a.identity == "all") {
        suites = all_suites();
    } else if (const auto s = parse_suite(a.identity)) {
        suites.push_back(*s);
    } else {
        std::cerr << "verify: unknown identity '" << a.identity
                  << "' (expected m4a, m4b, m5a, m5b, m10 or all)\n";
        return exit_usage;
    }
    if (!(a.tol > 0.0)) {
        std::cerr << "verify: --tol must be positive\n";
        return exit_usage;
    }

    std::vector<VerificationRecord> records;
    try {
        for (Suite s : suites) {
            auto part = run_suite(s, a.tol);
            records.insert(records.end(), part.begin(), part.end());
        }
    } catch (const tolerance_not_met& e) {
        std::cerr << "verify: " << e.what() << '\n';
        return exit_numeric;
    }

    if (a.json) {
        nlohmann::json arr = nlohmann::json::array();
        for (const auto& r : records)
            arr.push_back(to_json(r));
        std::cout << arr.dump(2) << '\n';
    } else {
        for (const auto& r : records)
            std::cout << to_text(r) << '\n';
    }
    if (!asserted_rows_pass(records)) {
        std::cerr << "verify: an asserted identity check failed\n";
        return exit_numeric;
    }
    return exit_ok;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Series evaluation and identity checks for the McDonald function K_s(z)"};
    app.require_subcommand(1);

    EvalArgs eval;
    auto* cmd_eval = app.add_subcommand("eval", "Evaluate K_s(z) at one point");
    cmd_eval->add_option("--s", eval.s, "Order s")->required();
    cmd_eval->add_option("--z", eval.z, "Argument z > 0")->required();
    cmd_eval->add_option("--method", eval.method, "rearranged | m9 | m10 | oracle");
    cmd_eval->add_option("--max-terms", eval.max_terms, "Series term cap")->check(CLI::PositiveNumber);
    cmd_eval->add_flag("--with-oracle", eval.with_oracle, "Add the relative error against the oracle");
    auto* eval_json = cmd_eval->add_flag("--json", eval.json, "Print as JSON");
    cmd_eval->add_flag("--csv", eval.csv, "Print as CSV")->excludes(eval_json);

    TableArgs table;
    auto* cmd_table = app.add_subcommand("table", "Tabulate a (s, z, method) grid to a file");
    cmd_table->add_option("--s-list", table.s_list, "Comma-separated orders")->delimiter(',')->required();
    cmd_table->add_option("--z-list", table.z_list, "Comma-separated arguments")->delimiter(',')->required();
    cmd_table->add_option("--methods", table.methods, "Comma-separated methods")->delimiter(',');
    cmd_table->add_option("--max-terms", table.max_terms, "Series term cap")->check(CLI::PositiveNumber);
    cmd_table->add_flag("--with-oracle", table.with_oracle, "Add the rel_err_vs_oracle column");
    cmd_table->add_option("--out", table.out, "Output path")->required();
    cmd_table->add_flag("--json", table.json, "Write JSON instead of CSV");

    ConvergeArgs conv;
    auto* cmd_conv = app.add_subcommand("converge", "Map where the series converges");
    cmd_conv->add_option("--s-range", conv.s_range, "lo:hi:step")->required();
    cmd_conv->add_option("--z-range", conv.z_range, "lo:hi:step")->required();
    cmd_conv->add_option("--max-terms", conv.max_terms, "Series term cap")->check(CLI::PositiveNumber);

    VerifyArgs verify;
    auto* cmd_verify = app.add_subcommand("verify", "Check the integral identities against quadrature");
    cmd_verify->add_option("--identity", verify.identity, "m4a | m4b | m5a | m5b | m10 | all")->required();
    cmd_verify->add_option("--tol", verify.tol, "Relative tolerance of the non-anchor rows");
    cmd_verify->add_flag("--json", verify.json, "Print as JSON");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return exit_usage;
    }

    try {
        if (*cmd_eval)
            return run_eval(eval);
        if (*cmd_table)
            return run_table(table);
        if (*cmd_conv)
            return run_converge(conv);
        if (*cmd_verify)
            return run_verify(verify);
    } catch (const domain_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_usage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_numeric;
    }
    return exit_usage;
}
