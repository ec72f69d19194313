#include "hiconvex/io.hpp"
#include "hiconvex/ordering.hpp"
#include "hiconvex/run.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>

namespace hiconvex {
namespace {

std::string write_temp(const std::string& name, const std::string& content) {
    const auto path = std::filesystem::temp_directory_path() / name;
    std::ofstream out(path);
    out << content;
    return path.string();
}

void expect_throw_containing(const std::function<void()>& fn, const std::string& needle) {
    try {
        fn();
        FAIL() << "expected an exception mentioning '" << needle << "'";
    } catch (const std::exception& e) {
        EXPECT_NE(std::string(e.what()).find(needle), std::string::npos) << e.what();
    }
}

TEST(ModelJson, CatalogRoundTrip) {
    const auto j = nlohmann::json::parse(R"({"kind":"catalog","name":"pow","alpha":0.5,"domain":[0,4]})");
    const auto model = model_from_json(j);
    EXPECT_NEAR(model.eval(4.0), 2.0, 1e-14);
    const auto back = model_from_json(model_to_json(model));
    for (double x : {0.1, 1.0, 2.5, 4.0}) EXPECT_DOUBLE_EQ(back.eval(x), model.eval(x));
}

TEST(ModelJson, PolynomialAndBlocksRoundTrip) {
    const auto poly = model_from_json(
        nlohmann::json::parse(R"({"kind":"polynomial","coeffs":[1,0,2],"domain":[-1,1]})"));
    EXPECT_DOUBLE_EQ(poly.eval(0.5), 1.5);

    const auto blocks = model_from_json(nlohmann::json::parse(
        R"({"kind":"blocks","quad":[0,0,1],"knots":[{"a":0.3,"c":1.2}],"domain":[0,1]})"));
    const auto back = model_from_json(model_to_json(blocks));
    for (double x : {0.0, 0.25, 0.3, 0.7, 1.0}) EXPECT_DOUBLE_EQ(back.eval(x), blocks.eval(x));
}

TEST(ModelJson, ParseErrorsNameTheField) {
    expect_throw_containing(
        [] { model_from_json(nlohmann::json::parse(R"({"kind":"mystery"})")); }, "parse:");
    expect_throw_containing(
        [] { model_from_json(nlohmann::json::parse(R"({"kind":"polynomial"})")); }, "parse:");
    expect_throw_containing(
        [] { model_from_json(nlohmann::json::parse(R"({"kind":"blocks","quad":[1,2]})")); },
        "parse:");
}

TEST(MeasureJson, RoundTripAndValidation) {
    const auto j = nlohmann::json::parse(R"({"atoms":[{"x":0.0,"w":0.25},{"x":0.5,"w":0.75}]})");
    const auto mu = measure_from_json(j);
    EXPECT_NEAR(mu.moment(1), 0.375, 1e-15);
    const auto back = measure_from_json(measure_to_json(mu));
    EXPECT_EQ(back.size(), mu.size());

    const auto signed_j = nlohmann::json::parse(R"({"atoms":[{"x":0.0,"w":-1.0},{"x":1.0,"w":2.0}]})");
    EXPECT_NO_THROW(measure_from_json(signed_j, MeasureKind::Signed));
    EXPECT_THROW(measure_from_json(signed_j), std::invalid_argument);
    expect_throw_containing([] { measure_from_json(nlohmann::json::parse(R"({"x":1})")); },
                            "parse:");
}

TEST(MatrixJson, RoundTripAndValidation) {
    const auto j = nlohmann::json::parse(R"({"n":2,"rows":[[1.0,0.5],[0.5,2.0]]})");
    const auto a = matrix_from_json(j);
    EXPECT_DOUBLE_EQ(a(0, 1), 0.5);
    const auto back = matrix_from_json(matrix_to_json(a));
    for (int i = 0; i < 2; ++i)
        for (int k = 0; k < 2; ++k) EXPECT_DOUBLE_EQ(back(i, k), a(i, k));
    expect_throw_containing(
        [] { matrix_from_json(nlohmann::json::parse(R"({"n":2,"rows":[[1.0,0.5]]})")); },
        "parse:");
}

TEST(TableJson, CarriesNodesAndEveryOrderRow) {
    const std::vector<double> xs{0.0, 1.0, 2.0, 3.0};
    std::vector<double> ys;
    for (double x : xs) ys.push_back(x * x * x);
    const auto table = build_table(SampleGrid(xs, ys), 3);
    const auto j = table_to_json(table);
    ASSERT_EQ(j.at("xs").size(), 4u);
    ASSERT_EQ(j.at("rows").size(), 4u);
    EXPECT_DOUBLE_EQ(j["rows"][3][0].get<double>(), 1.0);
    EXPECT_DOUBLE_EQ(j["rows"][0][2].get<double>(), 8.0);
}

TEST(CsvIngest, AcceptsBlankLinesAndCarriageReturns) {
    const auto path = write_temp("hiconvex_ok.csv", "x,f\r\n0,0\n\n1,1\r\n2,8\n");
    const auto grid = ingest_samples(path);
    ASSERT_EQ(grid.size(), 3u);
    EXPECT_DOUBLE_EQ(grid.ys()[2], 8.0);
    std::filesystem::remove(path);
}

TEST(CsvIngest, ErrorsCarryLineNumbers) {
    const auto bad_header = write_temp("hiconvex_h.csv", "x;f\n0,0\n");
    expect_throw_containing([&] { ingest_samples(bad_header); },
                            "malformed-row: line 1 (expected header 'x,f')");
    const auto bad_row = write_temp("hiconvex_r.csv", "x,f\n0,0\n1,1,9\n");
    expect_throw_containing([&] { ingest_samples(bad_row); }, "malformed-row: line 3");
    const auto unsorted = write_temp("hiconvex_u.csv", "x,f\n0,0\n2,8\n1,1\n");
    expect_throw_containing([&] { ingest_samples(unsorted); }, "unsorted-data: line 4");
    const auto missing = std::filesystem::temp_directory_path() / "hiconvex_missing.csv";
    expect_throw_containing([&] { ingest_samples(missing.string()); }, "parse:");
    for (const auto& p : {bad_header, bad_row, unsorted}) std::filesystem::remove(p);
}

TEST(JsonArg, InlineFileAndFailureModes) {
    EXPECT_EQ(json_from_arg(R"(  {"a":1})").at("a").get<int>(), 1);
    const auto path = write_temp("hiconvex_arg.json", R"([1,2,3])");
    EXPECT_EQ(json_from_arg(path).size(), 3u);
    expect_throw_containing([] { json_from_arg("{not json"); }, "parse: invalid JSON");
    expect_throw_containing([] { json_from_arg("/no/such/file.json"); }, "parse: cannot open");
    std::filesystem::remove(path);
}

nlohmann::json run_to_json(const RunConfig& config, int expected_exit) {
    std::ostringstream out;
    const int code = run(config, out);
    EXPECT_EQ(code, expected_exit);
    return nlohmann::json::parse(out.str());
}

TEST(RunCommand, VerifyEmitsTheBoundsWitness) {
    RunConfig config;
    config.command = "verify";
    config.ineq = "bp";
    config.model_src = R"({"kind":"catalog","name":"x4"})";
    config.lo = 0.0;
    config.hi = 1.0;
    config.no_meta = true;
    const auto j = run_to_json(config, 0);
    EXPECT_EQ(j.at("command"), "verify");
    EXPECT_EQ(j.at("ineq"), "bp");
    EXPECT_TRUE(j.at("report").at("verdict").get<bool>());
    EXPECT_NEAR(j["report"]["witness"]["lower"].get<double>(), 4.0 / 27.0, 1e-12);
    EXPECT_NEAR(j["report"]["witness"]["mean"].get<double>(), 0.2, 1e-12);
    EXPECT_NEAR(j["report"]["witness"]["upper"].get<double>(), 7.0 / 27.0, 1e-12);
    EXPECT_EQ(j.at("inputs").at("model").at("name"), "x4");
    EXPECT_EQ(j["inputs"]["interval"][1].get<double>(), 1.0);
    EXPECT_FALSE(j.contains("meta"));
}

TEST(RunCommand, FailingTripleFlowsToExitOne) {
    RunConfig config;
    config.command = "verify";
    config.ineq = "res";
    config.model_src = R"({"kind":"catalog","name":"x3"})";
    config.points = {1.0, 1.0, -1.0};
    config.no_meta = true;
    const auto j = run_to_json(config, 1);
    EXPECT_FALSE(j["report"]["verdict"].get<bool>());
    EXPECT_DOUBLE_EQ(j["report"]["lhs"].get<double>(), 4.0);
    EXPECT_DOUBLE_EQ(j["report"]["rhs"].get<double>(), 8.0);
    const auto cases = j["report"]["cases"].get<std::vector<std::string>>();
    EXPECT_NE(std::find(cases.begin(), cases.end(), "Case2d"), cases.end());
    EXPECT_NE(std::find(cases.begin(), cases.end(), "warning:concave-precondition-failed"),
              cases.end());
}

TEST(RunCommand, SweepSummarizesTrials) {
    RunConfig config;
    config.command = "verify";
    config.ineq = "res";
    config.model_src = R"({"kind":"catalog","name":"sqrt"})";
    config.trials = 50;
    config.seed = 7;
    config.no_meta = true;
    const auto j = run_to_json(config, 0);
    EXPECT_EQ(j["summary"]["total"].get<long>(), 50);
    EXPECT_EQ(j["summary"]["held"].get<long>(), 50);
    EXPECT_EQ(j["summary"]["worst_points"].size(), 3u);
    EXPECT_LE(j["summary"]["min_margin"].get<double>(),
              j["report"]["margin"].get<double>() + 1e-15);
}

TEST(RunCommand, FalsifyReportsBothWitnesses) {
    RunConfig config;
    config.command = "falsify";
    config.trials = 100;
    config.no_meta = true;
    const auto j = run_to_json(config, 0);
    EXPECT_TRUE(j["report"]["positive"]["found"].get<bool>());
    EXPECT_TRUE(j["report"]["negative"]["found"].get<bool>());
    EXPECT_DOUBLE_EQ(j["report"]["positive"]["value"].get<double>(), 16.0);
    EXPECT_DOUBLE_EQ(j["report"]["negative"]["value"].get<double>(), -4.0);
    EXPECT_EQ(j["report"]["lattice_points"].get<long>(), 6561);
    EXPECT_EQ(j["report"]["random_trials"].get<long>(), 0);
}

TEST(RunCommand, CheckGradesCsvSamples) {
    std::ostringstream cubic;
    cubic << "x,f\n";
    for (int i = 0; i <= 32; ++i) {
        const double x = 2.0 * i / 32.0;
        cubic << x << "," << x * x * x << "\n";
    }
    const auto cubic_path = write_temp("hiconvex_cubic.csv", cubic.str());
    RunConfig config;
    config.command = "check";
    config.csv_src = cubic_path;
    config.order = 3;
    config.no_meta = true;
    const auto j = run_to_json(config, 0);
    EXPECT_TRUE(j["report"]["verdict"].get<bool>());
    EXPECT_EQ(j["inputs"]["rows"].get<int>(), 33);
    EXPECT_EQ(j["inputs"]["order"].get<int>(), 3);

    std::ostringstream sine;
    sine << "x,f\n";
    for (int i = 0; i <= 40; ++i) {
        const double x = 3.0 * i / 40.0;
        sine << x << "," << std::sin(x) << "\n";
    }
    const auto sine_path = write_temp("hiconvex_sine.csv", sine.str());
    config.csv_src = sine_path;
    const auto k = run_to_json(config, 1);
    EXPECT_FALSE(k["report"]["verdict"].get<bool>());
    std::filesystem::remove(cubic_path);
    std::filesystem::remove(sine_path);
}

TEST(RunCommand, OrderComparesMeasures) {
    const auto [cond, disp] = condensation_dispersion(0.0, 1.0);
    RunConfig config;
    config.command = "order";
    config.measure_nu_src = measure_to_json(cond).dump();
    config.measure_mu_src = measure_to_json(disp).dump();
    config.lo = 0.0;
    config.hi = 1.0;
    config.no_meta = true;
    const auto j = run_to_json(config, 0);
    EXPECT_TRUE(j["report"]["verdict"].get<bool>());
    EXPECT_EQ(j["inputs"]["nu"]["atoms"].size(), 2u);
    EXPECT_EQ(j["report"]["witness"]["failing_moment"].get<int>(), -1);

    // Reversing the roles must fail and exit 1.
    std::swap(config.measure_nu_src, config.measure_mu_src);
    const auto k = run_to_json(config, 1);
    EXPECT_FALSE(k["report"]["verdict"].get<bool>());
}

TEST(RunCommand, MatrixCommandAndVerifyAliasAgree) {
    RunConfig config;
    config.command = "matrix";
    config.model_src = R"({"kind":"catalog","name":"sqrt"})";
    config.matrices_src = R"([{"n":2,"rows":[[1,0],[0,2]]},
                              {"n":2,"rows":[[0.5,0],[0,1]]},
                              {"n":2,"rows":[[0.25,0],[0,0.5]]}])";
    config.no_meta = true;
    const auto j = run_to_json(config, 0);
    EXPECT_TRUE(j["report"]["verdict"].get<bool>());
    EXPECT_EQ(j["inputs"]["matrices"].size(), 3u);

    RunConfig alias = config;
    alias.command = "verify";
    alias.ineq = "matrix";
    const auto k = run_to_json(alias, 0);
    EXPECT_EQ(k["report"]["margin"].get<double>(), j["report"]["margin"].get<double>());
}

TEST(RunCommand, GeneralizedSubsetInequality) {
    RunConfig config;
    config.command = "verify";
    config.ineq = "va";
    config.model_src = R"({"kind":"catalog","name":"sqrt"})";
    config.points = {1.0, 1.0, 1.0, 1.0};
    config.k = 2;
    config.no_meta = true;
    const auto j = run_to_json(config, 0);
    EXPECT_NEAR(j["report"]["lhs"].get<double>(), 10.0, 1e-12);
    EXPECT_NEAR(j["report"]["margin"].get<double>(), 10.0 - 6.0 * std::sqrt(2.0), 1e-12);
    EXPECT_EQ(j["inputs"]["k"].get<int>(), 2);
}

TEST(RunCommand, MetaBlockAndOutFile) {
    RunConfig config;
    config.command = "verify";
    config.ineq = "slope";
    config.model_src = R"({"kind":"catalog","name":"log1p"})";
    config.lo = 0.0;
    config.hi = 1.0;
    std::ostringstream out;
    ASSERT_EQ(run(config, out), 0);
    const auto j = nlohmann::json::parse(out.str());
    EXPECT_EQ(j["meta"]["tool"], "hiconvex");
    EXPECT_EQ(j["meta"]["version"], "0.1.0");
    EXPECT_TRUE(j["meta"].contains("timestamp"));

    const auto path = std::filesystem::temp_directory_path() / "hiconvex_out.json";
    config.out_path = path.string();
    config.no_meta = true;
    std::ostringstream unused;
    ASSERT_EQ(run(config, unused), 0);
    EXPECT_TRUE(unused.str().empty());
    std::ifstream in(path);
    nlohmann::json from_file;
    in >> from_file;
    EXPECT_NEAR(from_file["report"]["witness"]["slope"].get<double>(), std::log(2.0), 1e-12);
    std::filesystem::remove(path);
}

TEST(RunCommand, RerunsAreByteIdenticalWithoutMeta) {
    RunConfig config;
    config.command = "verify";
    config.ineq = "hh1";
    config.model_src = R"({"kind":"catalog","name":"x3"})";
    config.trials = 25;
    config.seed = 42;
    config.no_meta = true;
    std::ostringstream a, b;
    EXPECT_EQ(run(config, a), run(config, b));
    EXPECT_EQ(a.str(), b.str());
    EXPECT_FALSE(a.str().empty());
}

TEST(RunCommand, ConfigurationErrorsThrow) {
    RunConfig config;
    config.command = "dance";
    std::ostringstream out;
    expect_throw_containing([&] { run(config, out); }, "parse: unknown command");

    config.command = "check";
    expect_throw_containing([&] { run(config, out); }, "parse: check needs --csv");

    config.command = "verify";
    config.ineq = "nope";
    config.model_src = R"({"kind":"catalog","name":"sqrt"})";
    expect_throw_containing([&] { run(config, out); }, "parse: unknown inequality selector");

    config.ineq = "bp";
    config.model_src.clear();
    expect_throw_containing([&] { run(config, out); }, "parse: this command needs --model");

    config.model_src = R"({"kind":"catalog","name":"sqrt"})";
    config.lo = 0.0;
    config.hi = {};
    expect_throw_containing([&] { run(config, out); }, "parse: --interval needs both endpoints");
}

} // namespace
} // namespace hiconvex
