#include "gridcast/app/pipeline.h"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <exception>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

#include "gridcast/app/digest.h"
#include "gridcast/app/output.h"
#include "gridcast/data/profile_csv.h"
#include "gridcast/data/random.h"

namespace gridcast::app {

using nlohmann::json;

StageError::StageError(std::string stage, const std::string& message)
    : std::runtime_error("[" + stage + "] " + message), stage_(std::move(stage)) {}

std::string_view command_name(Command c) {
    switch (c) {
    case Command::Generate: return "generate";
    case Command::Simulate: return "simulate";
    case Command::Forecast: return "forecast";
    case Command::Evaluate: return "evaluate";
    case Command::Run: return "run";
    }
    return "?";
}

json to_json(const RunManifest& m) {
    auto artifacts = [](const std::vector<Artifact>& list) {
        json out = json::array();
        for (const auto& a : list) {
            out.push_back({{"file", a.file}, {"sha256", a.sha256}, {"bytes", a.bytes}});
        }
        return out;
    };
    json stages = json::array();
    for (const auto& s : m.stages) {
        stages.push_back({{"stage", s.stage}, {"seconds", s.seconds}});
    }
    return json{{"tool", "gridcast"},
                {"command", m.command},
                {"config_hash", m.config_hash},
                {"seeds", m.seeds},
                {"stages", stages},
                {"inputs", artifacts(m.inputs)},
                {"artifacts", artifacts(m.artifacts)},
                {"started_at", m.started_at},
                {"finished_at", m.finished_at}};
}

namespace {

std::string now_utc() {
    return data::format_timestamp(std::chrono::floor<std::chrono::seconds>(std::chrono::system_clock::now()));
}

std::string log_prefix(std::string_view stage) {
    return "[" + std::string(stage) + "] ";
}

std::vector<scenario::RegistryEntry> read_registry(const std::filesystem::path& path,
                                                   const std::vector<data::NamedSeries>& households) {
    std::vector<scenario::RegistryEntry> registry(households.size());
    for (std::size_t i = 0; i < households.size(); ++i) {
        registry[i].id = households[i].id;
    }
    if (path.empty()) {
        return registry;
    }
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot read " + path.string());
    }
    std::string line;
    std::getline(in, line);
    if (!line.empty() && line.back() == '\r') {
        line.pop_back();
    }
    if (line != "household_id,existing_pv_kwp,existing_battery_kw") {
        throw data::ParseError(1, path.string() + ": expected header household_id,existing_pv_kwp,existing_battery_kw");
    }
    std::size_t row = 1;
    while (std::getline(in, line)) {
        ++row;
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (line.empty()) {
            continue;
        }
        std::istringstream fields(line);
        std::string id;
        std::string pv;
        std::string battery;
        std::string extra;
        if (!std::getline(fields, id, ',') || !std::getline(fields, pv, ',') || !std::getline(fields, battery, ',') ||
            std::getline(fields, extra, ',')) {
            throw data::ParseError(row, path.string() + ": expected 3 fields");
        }
        const auto it = std::find_if(registry.begin(), registry.end(), [&](const auto& e) { return e.id == id; });
        if (it == registry.end()) {
            throw data::ParseError(row, path.string() + ": household " + id + " has no demand series");
        }
        try {
            it->existing_pv_kwp = std::stod(pv);
            it->existing_battery_kw = std::stod(battery);
        } catch (const std::exception&) {
            throw data::ParseError(row, path.string() + ": capacities must be numbers");
        }
        if (!(it->existing_pv_kwp >= 0.0) || !(it->existing_battery_kw >= 0.0) ||
            (it->has_battery() && !it->has_pv())) {
            throw data::ParseError(row, path.string() + ": capacities must be >= 0 and a battery needs PV");
        }
    }
    return registry;
}

scenario::Fleet load_csv_fleet(const RunConfig& config) {
    std::ifstream in(config.data.csv_path);
    if (!in) {
        throw std::runtime_error("cannot read " + config.data.csv_path.string());
    }
    std::vector<data::NamedSeries> households = data::parse_profile_csv(in);
    if (households.empty()) {
        throw std::runtime_error(config.data.csv_path.string() + " contains no households");
    }
    if (config.data.synthetic.households < households.size()) {
        households.resize(config.data.synthetic.households);
    }
    const auto& first = households.front().series;
    for (const auto& h : households) {
        if (!h.series.same_axis(first)) {
            throw std::runtime_error("household " + h.id + " does not share the time axis of " + households.front().id);
        }
    }
    if (first.size() % data::kHoursPerDay != 0) {
        throw std::runtime_error("demand series must cover whole days, got " + std::to_string(first.size()) + " hours");
    }
    const std::size_t days = first.size() / data::kHoursPerDay;
    if (days < config.split.total_days()) {
        throw std::runtime_error("demand covers " + std::to_string(days) + " days, split needs " +
                                 std::to_string(config.split.total_days()));
    }
    data::SynthPvParams pv = config.data.synthetic.pv;
    pv.seed = data::mix_seed(config.seed ^ 0x7076756e6974ULL);
    data::HourlyTimeSeries pv_unit = data::synth_pv_unit_profile(pv, days, first.start());

    std::vector<scenario::RegistryEntry> registry = read_registry(config.data.registry_path, households);
    std::vector<data::HourlyTimeSeries> demand;
    demand.reserve(households.size());
    for (auto& h : households) {
        demand.push_back(std::move(h.series));
    }
    return scenario::make_fleet(std::move(registry), std::move(demand), std::move(pv_unit));
}

json seeds_json(const RunConfig& config, std::size_t replications) {
    json reps = json::array();
    for (std::size_t k = 0; k < replications; ++k) {
        reps.push_back(config.seed + k);
    }
    return json{{"base", config.seed}, {"fleet", config.seed}, {"retrofit_replications", reps}, {"estimators", config.seed}};
}

class Stopwatch {
public:
    explicit Stopwatch(std::vector<StageTiming>& sink, std::string stage)
        : sink_(sink), stage_(std::move(stage)), start_(std::chrono::steady_clock::now()) {}
    ~Stopwatch() {
        const std::chrono::duration<double> d = std::chrono::steady_clock::now() - start_;
        sink_.push_back({stage_, d.count()});
    }

private:
    std::vector<StageTiming>& sink_;
    std::string stage_;
    std::chrono::steady_clock::time_point start_;
};

/// Runs `body` and rethrows anything except configuration errors tagged with `stage`.
template <typename F>
auto in_stage(const std::string& stage, std::vector<StageTiming>& timings, F&& body) {
    Stopwatch watch(timings, stage);
    try {
        return body();
    } catch (const StageError&) {
        throw;
    } catch (const ConfigError&) {
        throw;
    } catch (const std::exception& e) {
        throw StageError(stage, e.what());
    }
}

Artifact describe_file(const std::filesystem::path& dir, const std::string& name) {
    const auto path = dir / name;
    return {name, sha256_file(path), std::filesystem::file_size(path)};
}

void write_generated_data(const scenario::Fleet& fleet, const std::filesystem::path& dir,
                          std::vector<std::string>& written) {
    write_file_atomic(dir / "households.csv", [&](std::ostream& out) {
        data::write_profile_csv_header(out);
        for (std::size_t i = 0; i < fleet.size(); ++i) {
            data::write_profile_csv_rows(out, fleet.entry(i).id, *fleet.demand(i));
        }
    });
    written.push_back("households.csv");
    std::ostringstream registry;
    registry << "household_id,existing_pv_kwp,existing_battery_kw\n";
    for (const auto& e : fleet.registry()) {
        registry << e.id << ',' << data::format_double(e.existing_pv_kwp) << ','
                 << data::format_double(e.existing_battery_kw) << '\n';
    }
    write_file_atomic(dir / "registry.csv", registry.str());
    written.push_back("registry.csv");
    std::ostringstream pv;
    data::write_profile_csv_header(pv);
    data::write_profile_csv_rows(pv, "pv_unit", fleet.pv_unit_profile());
    write_file_atomic(dir / "pv_unit.csv", pv.str());
    written.push_back("pv_unit.csv");
}

} // namespace

scenario::Fleet load_fleet(const RunConfig& config) {
    if (config.data.source == DataSource::Csv) {
        return load_csv_fleet(config);
    }
    scenario::SyntheticFleetParams params = config.data.synthetic;
    params.seed = config.seed;
    return scenario::make_synthetic_fleet(params);
}

ScenarioStage simulate_scenarios(const scenario::Fleet& fleet, const RunConfig& config, std::size_t replications) {
    ScenarioStage out;
    const std::size_t hours = fleet.pv_unit_profile().size();
    const scenario::SummaryWindow window = scenario::trailing_days(hours, config.summary_days);
    for (const auto& sc : config.scenarios) {
        scenario::ReplicationSet set = scenario::replicate(fleet, sc, replications, config.seed, window);
        for (const auto& run : set.runs) {
            out.summaries.push_back({sc.name, run.replication, run.summary});
        }
        out.loads.push_back({sc.name, std::move(set.runs.front().load)});
    }
    return out;
}

std::vector<BacktestJob> schedule_backtests(const RunConfig& config) {
    std::vector<BacktestJob> jobs;
    for (const auto& sc : config.scenarios) {
        const bool slp_here =
            std::find(config.slp_scenarios.begin(), config.slp_scenarios.end(), sc.name) != config.slp_scenarios.end();
        for (const auto& est : config.estimators) {
            if (est == "SLP" && !slp_here) {
                continue;
            }
            jobs.push_back({sc.name, est});
        }
    }
    return jobs;
}

std::vector<eval::BacktestResult> run_backtests(const RunConfig& config, const std::vector<ScenarioLoad>& loads,
                                                const Log& log) {
    const std::vector<BacktestJob> jobs = schedule_backtests(config);
    std::vector<eval::BacktestResult> results(jobs.size());
    std::vector<std::exception_ptr> errors(jobs.size());
    std::mutex log_mutex;
    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};

    auto work = [&] {
        for (std::size_t i = next++; i < jobs.size() && !failed; i = next++) {
            const BacktestJob& job = jobs[i];
            try {
                const auto it = std::find_if(loads.begin(), loads.end(),
                                             [&](const ScenarioLoad& l) { return l.scenario == job.scenario; });
                if (it == loads.end()) {
                    throw std::runtime_error("no load for scenario " + job.scenario);
                }
                const auto start = std::chrono::steady_clock::now();
                auto forecaster = forecast::make_forecaster(job.estimator, config.forecast);
                results[i] = eval::backtest(*forecaster, it->load.residential_demand, config.split, job.scenario);
                if (log) {
                    const std::chrono::duration<double> took = std::chrono::steady_clock::now() - start;
                    const double rmse = eval::evaluate(results[i]).rmse;
                    std::ostringstream msg;
                    msg << log_prefix("backtests") << job.scenario << '/' << job.estimator << " rmse "
                        << data::format_double(std::round(rmse * 1000.0) / 1000.0) << " kW ("
                        << static_cast<long>(took.count()) << " s)";
                    std::lock_guard lock(log_mutex);
                    log(msg.str());
                }
            } catch (...) {
                errors[i] = std::current_exception();
                failed = true;
            }
        }
    };

    std::size_t workers = config.threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : config.threads;
    workers = std::min(workers, std::max<std::size_t>(jobs.size(), 1));
    if (workers <= 1) {
        work();
    } else {
        std::vector<std::jthread> pool;
        for (std::size_t w = 0; w < workers; ++w) {
            pool.emplace_back(work);
        }
    }
    for (std::size_t i = 0; i < jobs.size(); ++i) {
        if (errors[i]) {
            try {
                std::rethrow_exception(errors[i]);
            } catch (const std::exception& e) {
                throw std::runtime_error(jobs[i].scenario + "/" + jobs[i].estimator + ": " + e.what());
            }
        }
    }
    return results;
}

RunManifest run_command(Command command, const RunConfig& config, const Log& log) {
    validate(config);
    RunManifest manifest;
    manifest.command = std::string(command_name(command));
    manifest.config_hash = config_hash(config);
    manifest.started_at = now_utc();
    const std::filesystem::path& dir = config.output_dir;

    std::optional<OutputLock> lock;
    try {
        lock.emplace(dir);
    } catch (const std::exception& e) {
        throw StageError("output", e.what());
    }
    auto say = [&](std::string_view stage, const std::string& text) {
        if (log) {
            log(log_prefix(stage) + text);
        }
    };

    const bool needs_fleet = command != Command::Evaluate;
    const bool needs_scenarios = command == Command::Simulate || command == Command::Forecast || command == Command::Run;
    const bool needs_backtests = command == Command::Forecast || command == Command::Run;
    const std::size_t replications = command == Command::Forecast ? 1 : config.replications;
    manifest.seeds = seeds_json(config, needs_scenarios ? replications : 0);

    RunResults results;
    std::vector<std::string> written;
    std::optional<scenario::Fleet> fleet;
    if (needs_fleet) {
        fleet.emplace(in_stage("data", manifest.stages, [&] {
            say("data", "building fleet");
            scenario::Fleet f = load_fleet(config);
            say("data", std::to_string(f.size()) + " households, " +
                            std::to_string(f.pv_unit_profile().size() / data::kHoursPerDay) + " days");
            if (command == Command::Generate) {
                write_generated_data(f, dir, written);
            }
            return f;
        }));
    }
    if (needs_scenarios) {
        in_stage("scenarios", manifest.stages, [&] {
            say("scenarios", std::to_string(config.scenarios.size()) + " scenarios x " + std::to_string(replications) +
                                 " replications");
            ScenarioStage s = simulate_scenarios(*fleet, config, replications);
            if (command != Command::Forecast) {
                results.summaries = std::move(s.summaries);
            }
            results.loads = std::move(s.loads);
        });
    }
    if (needs_backtests) {
        in_stage("backtests", manifest.stages, [&] {
            say("backtests", std::to_string(schedule_backtests(config).size()) + " backtests");
            results.backtests = run_backtests(config, results.loads, log);
        });
    }
    if (command == Command::Evaluate) {
        in_stage("reports", manifest.stages, [&] {
            const auto path = dir / "forecasts.csv";
            std::ifstream in(path);
            if (!in) {
                throw std::runtime_error("cannot read " + path.string() + " (run the forecast stage first)");
            }
            results.backtests = read_forecasts_csv(in);
            if (results.backtests.empty()) {
                throw std::runtime_error(path.string() + " contains no forecasts");
            }
            manifest.inputs.push_back(describe_file(dir, "forecasts.csv"));
        });
    }

    in_stage("reports", manifest.stages, [&] {
        if (command == Command::Forecast) {
            write_file_atomic(dir / "forecasts.csv", forecasts_csv(results.backtests));
            written.push_back("forecasts.csv");
        } else if (command == Command::Evaluate) {
            RunResults only;
            only.backtests = std::move(results.backtests);
            for (const auto& f : render_reports(only, config.plots)) {
                if (f.name != "forecasts.csv") {
                    write_file_atomic(dir / f.name, f.content);
                    written.push_back(f.name);
                }
            }
        } else if (!results.empty()) {
            const auto names = write_reports(results, dir, config.plots);
            written.insert(written.end(), names.begin(), names.end());
        }
        for (const auto& name : written) {
            manifest.artifacts.push_back(describe_file(dir, name));
        }
    });

    // after the reports stopwatch, so every stage timing is in the manifest
    manifest.finished_at = now_utc();
    try {
        write_file_atomic(dir / kManifestFile, to_json(manifest).dump(2) + "\n");
    } catch (const std::exception& e) {
        throw StageError("reports", e.what());
    }
    say("reports", std::to_string(written.size()) + " files written to " + dir.string());
    return manifest;
}

RunManifest run_pipeline(const RunConfig& config, const Log& log) {
    return run_command(Command::Run, config, log);
}

} // namespace gridcast::app
