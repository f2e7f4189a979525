#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

#include <gtest/gtest.h>

#include "gridcast/app/config.h"
#include "gridcast/app/digest.h"
#include "gridcast/app/output.h"
#include "gridcast/app/pipeline.h"
#include "gridcast/app/reports.h"
#include "gridcast/app/svg.h"

using namespace gridcast;
using namespace gridcast::app;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
    const fs::path p = fs::temp_directory_path() / ("gridcast_test_" + name + "_" + std::to_string(::getpid()));
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

std::vector<std::string> lines(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream in(text);
    for (std::string l; std::getline(in, l);) out.push_back(l);
    return out;
}

std::string config_error_path(const json& doc) {
    try {
        parse_config(doc);
    } catch (const ConfigError& e) {
        return e.path();
    }
    return "<no error>";
}

/// Small but complete run: 20 households over 400 days, 30 test days.
json small_doc() {
    return json{{"data", {{"households", 20}, {"horizon_days", 400}}},
                {"scenarios", {"CS", "S1", "S2"}},
                {"estimators", {"BM1", "BM2", "SLP", "ARIMA", "LSTM"}},
                {"split", {{"train_days", 370}, {"test_days", 30}}},
                {"replications", 2},
                {"summary_days", 30},
                {"seed", 5},
                {"forecast", {{"lookback_hours", 48}, {"lstm_epochs", 1}}}};
}

RunConfig small_config(const fs::path& out) {
    RunConfig c = parse_config(small_doc());
    c.output_dir = out;
    return c;
}

} // namespace

TEST(Config, EmptyFileListsRequiredFields) {
    const fs::path dir = scratch("empty");
    std::ofstream(dir / "c.json").close();
    try {
        load_config(dir / "c.json");
        FAIL();
    } catch (const ConfigError& e) {
        const std::string msg = e.what();
        EXPECT_NE(msg.find("scenarios"), std::string::npos);
        EXPECT_NE(msg.find("estimators"), std::string::npos);
    }
    try {
        parse_config(json::object());
        FAIL();
    } catch (const ConfigError& e) {
        EXPECT_NE(std::string(e.what()).find("scenarios"), std::string::npos);
    }
    fs::remove_all(dir);
}

TEST(Config, PresetS1HasRegionalizedTargets) {
    const RunConfig c = parse_config(json{{"scenarios", {"S1"}}, {"estimators", {"BM1"}}});
    ASSERT_EQ(c.scenarios.size(), 1u);
    EXPECT_NEAR(c.scenarios[0].power.pv_kw, 32000.0, 1e-6);
    EXPECT_NEAR(c.scenarios[0].power.battery_kw, 15200.0, 1e-6);
    EXPECT_EQ(*c.scenarios[0].composition, (scenario::FleetComposition{189, 1179, 2143}));
}

TEST(Config, UnknownEstimatorNamesChoices) {
    try {
        parse_config(json{{"scenarios", {"CS"}}, {"estimators", {"BM1", "Prophet"}}});
        FAIL();
    } catch (const ConfigError& e) {
        EXPECT_EQ(e.path(), "estimators[1]");
        const std::string msg = e.what();
        for (const auto& n : forecast::estimator_names()) {
            EXPECT_NE(msg.find(n), std::string::npos) << n;
        }
    }
}

TEST(Config, FieldPathsInDiagnostics) {
    json doc = small_doc();
    doc["split"]["test_days"] = 0;
    EXPECT_EQ(config_error_path(doc), "split.test_days");
    doc = small_doc();
    doc["scenarios"] = {"CS", json{{"name", "X"}, {"mode", "sideways"}}};
    EXPECT_EQ(config_error_path(doc), "scenarios[1].mode");
    doc = small_doc();
    doc["data"]["housholds"] = 3;
    EXPECT_EQ(config_error_path(doc), "data.housholds");
    doc = small_doc();
    doc["scenarios"] = {"CS", "CS"};
    EXPECT_EQ(config_error_path(doc).rfind("scenarios", 0), 0u);
    doc = small_doc();
    doc["split"]["train_days"] = 390;
    EXPECT_NE(config_error_path(doc), "<no error>");
    doc = small_doc();
    doc["forecast"]["lookback_hours"] = 50;
    EXPECT_EQ(config_error_path(doc), "forecast.lookback_hours");
}

TEST(Config, CustomScenarioAndDefaults) {
    json doc = small_doc();
    doc["scenarios"] = {"CS", json{{"name", "half"}, {"composition", {{"no_pv", 1755}, {"pv_only", 1000}, {"pv_battery", 756}}}}};
    const RunConfig c = parse_config(doc);
    EXPECT_EQ(c.scenarios[1].name, "half");
    EXPECT_EQ(c.scenarios[1].composition->total(), 3511u);
    EXPECT_EQ(c.slp_scenarios, std::vector<std::string>{"CS"});
    EXPECT_EQ(c.forecast.arima_window_hours, 120u);
}

TEST(Config, HashIgnoresOutputAndThreads) {
    RunConfig a = small_config("a");
    RunConfig b = small_config("b");
    b.threads = 4;
    EXPECT_EQ(config_hash(a), config_hash(b));
    b.seed = 6;
    EXPECT_NE(config_hash(a), config_hash(b));
    // the expanded form parses back to the same config
    const RunConfig round = parse_config(to_json(a));
    EXPECT_EQ(config_hash(round), config_hash(a));
}

TEST(Config, DeskPreset) {
    const RunConfig c = desk_preset();
    EXPECT_EQ(c.data.synthetic.households, 500u);
    EXPECT_EQ(c.scenarios.size(), 3u);
    EXPECT_EQ(c.estimators, forecast::estimator_names());
    EXPECT_EQ(c.split.train_days, 664u);
    EXPECT_EQ(c.split.test_days, 365u);
    EXPECT_EQ(c.data.synthetic.horizon_days, 1029u);
}

TEST(Digest, KnownVector) {
    EXPECT_EQ(sha256_hex("abc"), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST(Output, LockIsExclusive) {
    const fs::path dir = scratch("lock");
    {
        OutputLock lock(dir);
        EXPECT_TRUE(fs::exists(dir / OutputLock::kFileName));
        EXPECT_THROW(OutputLock second(dir), OutputLocked);
    }
    EXPECT_FALSE(fs::exists(dir / OutputLock::kFileName));
    EXPECT_NO_THROW(OutputLock again(dir));
    fs::remove_all(dir);
}

TEST(Output, AtomicWriteLeavesNoTemporary) {
    const fs::path dir = scratch("atomic");
    write_file_atomic(dir / "x.csv", "a,b\n");
    EXPECT_EQ(slurp(dir / "x.csv"), "a,b\n");
    std::size_t files = 0;
    for ([[maybe_unused]] const auto& e : fs::directory_iterator(dir)) ++files;
    EXPECT_EQ(files, 1u);
    fs::remove_all(dir);
}

TEST(Reports, ForecastsCsvRoundTrip) {
    eval::BacktestResult r;
    r.estimator = "BM1";
    r.scenario = "CS";
    for (std::size_t d = 0; d < 3; ++d) {
        eval::DayResult day;
        day.day = 10 + d;
        day.start = data::make_timestamp(2021, 3, 10 + d);
        for (std::size_t h = 0; h < 24; ++h) {
            day.predicted[h] = 0.1 * h + d;
            day.actual[h] = 1.0 / (h + 1.0);
        }
        r.days.push_back(day);
    }
    const std::string csv = forecasts_csv({r});
    EXPECT_EQ(lines(csv).front(), "estimator,scenario,day,hour,prediction_kw,actual_kw");
    EXPECT_EQ(lines(csv).size(), 1u + 72u);
    std::istringstream in(csv);
    const auto back = read_forecasts_csv(in);
    ASSERT_EQ(back.size(), 1u);
    ASSERT_EQ(back[0].days.size(), 3u);
    for (std::size_t d = 0; d < 3; ++d) {
        EXPECT_EQ(back[0].days[d].predicted, r.days[d].predicted);
        EXPECT_EQ(back[0].days[d].actual, r.days[d].actual);
        EXPECT_EQ(back[0].days[d].start, r.days[d].start);
    }
    EXPECT_EQ(metrics_csv(back), metrics_csv({r}));

    std::istringstream truncated(csv.substr(0, csv.rfind("\n", csv.size() - 2) + 1));
    EXPECT_ANY_THROW(read_forecasts_csv(truncated));
}

TEST(Svg, WellFormedAndDeterministic) {
    const std::vector<PlotSeries> series{{"a", {1, 2, 3}}, {"b", {3, 1, 2}}};
    const std::string line = line_chart_svg("t", "x", "y", series);
    EXPECT_EQ(line.rfind("<svg", 0), 0u);
    EXPECT_NE(line.find("</svg>"), std::string::npos);
    EXPECT_EQ(line, line_chart_svg("t", "x", "y", series));
    const std::string violin = violin_svg("v", "kW", series);
    EXPECT_NE(violin.find("</svg>"), std::string::npos);
}

TEST(Pipeline, ZeroTestDaysFailsBeforeCompute) {
    RunConfig c = small_config(scratch("zero"));
    c.split.test_days = 0;
    EXPECT_THROW(run_pipeline(c), ConfigError);
    EXPECT_FALSE(fs::exists(c.output_dir / kManifestFile));
    fs::remove_all(c.output_dir);
}

TEST(Pipeline, SchedulesSlpOnCurrentStateOnly) {
    RunConfig c = small_config("unused");
    EXPECT_EQ(schedule_backtests(c).size(), 13u);
    c.slp_scenarios = {"CS", "S1", "S2"};
    EXPECT_EQ(schedule_backtests(c).size(), 15u);
}

class PipelineRun : public ::testing::Test {
protected:
    static void SetUpTestSuite() {
        first_ = new fs::path(scratch("run_a"));
        second_ = new fs::path(scratch("run_b"));
        manifest_ = new RunManifest(run_pipeline(small_config(*first_)));
        run_pipeline(small_config(*second_));
    }
    static void TearDownTestSuite() {
        fs::remove_all(*first_);
        fs::remove_all(*second_);
        delete first_;
        delete second_;
        delete manifest_;
    }
    static fs::path* first_;
    static fs::path* second_;
    static RunManifest* manifest_;
};

fs::path* PipelineRun::first_ = nullptr;
fs::path* PipelineRun::second_ = nullptr;
RunManifest* PipelineRun::manifest_ = nullptr;

TEST_F(PipelineRun, MetricsHaveOneRowPerBacktest) {
    const auto m = lines(slurp(*first_ / "metrics.csv"));
    EXPECT_EQ(m.front(), "scenario,estimator,rmse_kw,mape_pct,mape_excluded");
    EXPECT_EQ(m.size(), 1u + 13u);
    std::set<std::string> slp_scenarios;
    for (const auto& l : m) {
        if (l.find(",SLP,") != std::string::npos) slp_scenarios.insert(l.substr(0, l.find(',')));
    }
    EXPECT_EQ(slp_scenarios, std::set<std::string>{"CS"});
}

TEST_F(PipelineRun, PerHourHas24RowsPerPair) {
    const auto p = lines(slurp(*first_ / "per_hour_rmse.csv"));
    EXPECT_EQ(p.front(), "scenario,estimator,hour,rmse_kw");
    EXPECT_EQ(p.size(), 1u + 13u * 24u);
}

TEST_F(PipelineRun, SummaryHasEveryReplication) {
    const auto s = lines(slurp(*first_ / "scenario_summary.csv"));
    EXPECT_EQ(s.front(), "scenario,replication,median_kw,std_kw,neg_hour_frac");
    EXPECT_EQ(s.size(), 1u + 3u * 2u);
    const auto f = lines(slurp(*first_ / "forecasts.csv"));
    EXPECT_EQ(f.size(), 1u + 13u * 30u * 24u);
}

TEST_F(PipelineRun, ManifestListsEveryFileWithChecksum) {
    const json m = json::parse(slurp(*first_ / kManifestFile));
    EXPECT_EQ(m["command"], "run");
    EXPECT_EQ(m["config_hash"], config_hash(small_config(*first_)));
    EXPECT_EQ(m["seeds"]["retrofit_replications"], json::array({5, 6}));
    std::set<std::string> listed;
    for (const auto& a : m["artifacts"]) {
        const std::string file = a["file"];
        listed.insert(file);
        EXPECT_EQ(a["sha256"], sha256_file(*first_ / file)) << file;
        EXPECT_EQ(a["bytes"], fs::file_size(*first_ / file));
    }
    for (const auto& e : fs::directory_iterator(*first_)) {
        const std::string name = e.path().filename().string();
        if (name != kManifestFile) {
            EXPECT_TRUE(listed.count(name)) << name;
        }
    }
    for (const char* required : {"metrics.csv", "per_hour_rmse.csv", "scenario_summary.csv", "forecasts.csv"}) {
        EXPECT_TRUE(listed.count(required)) << required;
    }
    std::vector<std::string> stages;
    for (const auto& s : m["stages"]) stages.push_back(s["stage"]);
    EXPECT_EQ(stages, (std::vector<std::string>{"data", "scenarios", "backtests", "reports"}));
}

TEST_F(PipelineRun, RerunIsByteIdentical) {
    const json a = json::parse(slurp(*first_ / kManifestFile));
    const json b = json::parse(slurp(*second_ / kManifestFile));
    EXPECT_EQ(a["artifacts"], b["artifacts"]);
    for (const auto& e : fs::directory_iterator(*first_)) {
        const std::string name = e.path().filename().string();
        if (name != kManifestFile) {
            EXPECT_EQ(slurp(e.path()), slurp(*second_ / name)) << name;
        }
    }
}

TEST_F(PipelineRun, StagedCommandsMatchFullRun) {
    const fs::path dir = scratch("staged");
    const RunConfig c = small_config(dir);
    run_command(Command::Forecast, c);
    run_command(Command::Evaluate, c);
    for (const char* f : {"forecasts.csv", "metrics.csv", "per_hour_rmse.csv", "significance.csv"}) {
        EXPECT_EQ(slurp(dir / f), slurp(*first_ / f)) << f;
    }
    const json m = json::parse(slurp(dir / kManifestFile));
    EXPECT_EQ(m["command"], "evaluate");
    EXPECT_EQ(m["inputs"][0]["file"], "forecasts.csv");
    fs::remove_all(dir);
}

TEST_F(PipelineRun, GeneratedCsvReloadsAsSameFleet) {
    const fs::path dir = scratch("generate");
    RunConfig c = small_config(dir);
    run_command(Command::Generate, c);
    for (const char* f : {"households.csv", "registry.csv", "pv_unit.csv"}) {
        EXPECT_TRUE(fs::exists(dir / f)) << f;
    }
    RunConfig from_csv = c;
    from_csv.data.source = DataSource::Csv;
    from_csv.data.csv_path = dir / "households.csv";
    from_csv.data.registry_path = dir / "registry.csv";
    const scenario::Fleet a = load_fleet(c);
    const scenario::Fleet b = load_fleet(from_csv);
    ASSERT_EQ(a.size(), b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        EXPECT_EQ(*a.demand(i), *b.demand(i));
        EXPECT_EQ(a.entry(i).existing_pv_kwp, b.entry(i).existing_pv_kwp);
    }
    EXPECT_EQ(a.pv_unit_profile(), b.pv_unit_profile());
    fs::remove_all(dir);
}

TEST(Pipeline, StageFailureIsTagged) {
    const fs::path dir = scratch("stagefail");
    RunConfig c = small_config(dir);
    c.data.synthetic.horizon_days = 120;
    c.split = {100, 20};
    c.estimators = {"SLP"};
    try {
        run_pipeline(c);
        FAIL();
    } catch (const StageError& e) {
        EXPECT_EQ(e.stage(), "backtests");
        EXPECT_EQ(std::string(e.what()).rfind("[backtests]", 0), 0u);
    }
    EXPECT_FALSE(fs::exists(dir / OutputLock::kFileName));
    fs::remove_all(dir);
}

TEST(Cli, ExitCodes) {
    const fs::path dir = scratch("cli");
    const std::string bin = GRIDCAST_BIN;
    std::ofstream(dir / "bad.json") << R"({"scenarios": ["CS"], "estimators": ["Nope"]})";
    auto status = [](const std::string& cmd) {
        const int raw = std::system((cmd + " > /dev/null 2>&1").c_str());
        return WEXITSTATUS(raw);
    };
    EXPECT_EQ(status(bin + " run --config " + (dir / "bad.json").string() + " --out " + (dir / "o").string()), 1);
    EXPECT_EQ(status(bin + " frobnicate"), 1);

    json bad_runtime = small_doc();
    bad_runtime["data"]["horizon_days"] = 120;
    bad_runtime["split"] = {{"train_days", 100}, {"test_days", 20}};
    bad_runtime["estimators"] = {"SLP"};
    std::ofstream(dir / "slp.json") << bad_runtime.dump();
    EXPECT_EQ(status(bin + " run -q --config " + (dir / "slp.json").string() + " --out " + (dir / "o").string()), 2);

    json ok = small_doc();
    ok["estimators"] = {"BM1"};
    ok["scenarios"] = {"CS"};
    std::ofstream(dir / "ok.json") << ok.dump();
    EXPECT_EQ(status(bin + " run -q --config " + (dir / "ok.json").string() + " --out " + (dir / "ok").string()), 0);
    EXPECT_TRUE(fs::exists(dir / "ok" / "metrics.csv"));
    fs::remove_all(dir);
}
