#include <cmath>
#include <limits>

#include <gtest/gtest.h>

#include "kseries/report.hpp"

using namespace kseries;

namespace {

std::vector<OutputRow> sample_rows(bool with_oracle)
{
    std::vector<OutputRow> rows;
    for (double s : {0.5, 0.7, 2.5})
        for (double z : {0.3, 1.0 / 3.0})
            for (Method m : {Method::REARRANGED, Method::RAW_M9, Method::M10_REG, Method::ORACLE}) {
                if (m == Method::RAW_M9 && s != 0.7)
                    continue;
                rows.push_back(evaluate_row(s, z, m, TruncationPolicy{}, with_oracle));
            }
    return rows;
}

void expect_same(const OutputRow& a, const OutputRow& b)
{
    EXPECT_EQ(a.s, b.s);
    EXPECT_EQ(a.z, b.z);
    EXPECT_EQ(a.method, b.method);
    EXPECT_EQ(a.terms, b.terms);
    EXPECT_EQ(a.value, b.value);
    EXPECT_EQ(a.converged, b.converged);
    ASSERT_EQ(a.rel_err_vs_oracle.has_value(), b.rel_err_vs_oracle.has_value());
    if (a.rel_err_vs_oracle) {
        EXPECT_EQ(*a.rel_err_vs_oracle, *b.rel_err_vs_oracle);
    }
}

} // namespace

TEST(Report, MethodNames)
{
    for (Method m : {Method::RAW_M9, Method::REARRANGED, Method::M10_REG, Method::ORACLE})
        EXPECT_EQ(parse_method(to_string(m)), m);
    EXPECT_EQ(parse_method("m9"), Method::RAW_M9);
    EXPECT_EQ(parse_method("rearranged"), Method::REARRANGED);
    EXPECT_EQ(parse_method("m10"), Method::M10_REG);
    EXPECT_EQ(parse_method("oracle"), Method::ORACLE);
    EXPECT_FALSE(parse_method("m11"));
}

TEST(Report, EvaluateRow)
{
    const auto r = evaluate_row(0.5, 1.0, Method::REARRANGED, {}, true);
    EXPECT_EQ(r.terms, 1);
    EXPECT_TRUE(r.converged);
    ASSERT_TRUE(r.rel_err_vs_oracle);
    EXPECT_LT(*r.rel_err_vs_oracle, 1e-12);
    EXPECT_FALSE(evaluate_row(0.5, 1.0, Method::REARRANGED, {}, false).rel_err_vs_oracle);
    EXPECT_EQ(evaluate_row(2.5, 3.0, Method::ORACLE, {}, false).method, Method::ORACLE);
    EXPECT_THROW(evaluate_row(0.0, 1.0, Method::REARRANGED, {}, false), domain_error);
}

TEST(Report, CsvHeaderIsExact)
{
    const std::string csv = to_csv({});
    EXPECT_EQ(csv, "s,z,method,terms,value,converged,rel_err_vs_oracle\n");
}

TEST(Report, CsvRoundTrip)
{
    for (bool oracle : {false, true}) {
        const auto rows = sample_rows(oracle);
        const auto parsed = parse_csv(to_csv(rows));
        ASSERT_EQ(parsed.size(), rows.size());
        for (std::size_t i = 0; i < rows.size(); ++i)
            expect_same(rows[i], parsed[i]);
    }
}

TEST(Report, CsvRoundTripsAwkwardDoubles)
{
    OutputRow r;
    for (double v : {0.1, 1.0 / 3.0, std::nextafter(1.0, 2.0), 5e-324, 1.7976931348623157e308, -2.5e-17}) {
        r.value = v;
        r.s = v;
        const auto back = parse_csv(to_csv({r}));
        EXPECT_EQ(back.at(0).value, v);
        EXPECT_EQ(back.at(0).s, v);
    }
    r.value = std::nan("");
    EXPECT_TRUE(std::isnan(parse_csv(to_csv({r})).at(0).value));
}

TEST(Report, CsvRejectsMalformed)
{
    EXPECT_THROW(parse_csv("a,b\n"), std::invalid_argument);
    EXPECT_THROW(parse_csv(std::string(csv_header) + "\n1,2,REARRANGED,1,3\n"), std::invalid_argument);
    EXPECT_THROW(parse_csv(std::string(csv_header) + "\n1,2,FOO,1,3,true,\n"), std::invalid_argument);
    EXPECT_THROW(parse_csv(std::string(csv_header) + "\n1,2,ORACLE,1,3,yes,\n"), std::invalid_argument);
    EXPECT_THROW(parse_csv(std::string(csv_header) + "\n1x,2,ORACLE,1,3,true,\n"), std::invalid_argument);
}

TEST(Report, JsonAndCsvCarryTheSameData)
{
    const auto rows = sample_rows(true);
    const auto j = nlohmann::json::parse(to_json(rows).dump());
    const auto from_csv = parse_csv(to_csv(rows));
    ASSERT_EQ(j.size(), rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto from_json = row_from_json(j[i]);
        expect_same(from_json, from_csv[i]);
        EXPECT_EQ(j[i].size(), 7u);
    }
}

TEST(Report, VerificationRecordJson)
{
    const auto r = make_record(IdentityId::M5B, {{"s", -0.25}, {"x", 4.0}}, 1.0, 2.0, 1e-7, true);
    const auto j = to_json(r);
    EXPECT_EQ(j["identity"], "M5B");
    EXPECT_EQ(j["params"]["x"], 4.0);
    EXPECT_EQ(j["abs_dev"], 1.0);
    EXPECT_EQ(j["rel_dev"], 0.5);
    EXPECT_EQ(j["pass"], false);
    EXPECT_EQ(j["informational"], true);
    EXPECT_NE(to_text(r).find("[info: mismatch]"), std::string::npos);
}
