#include "gridcast/app/config.h"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "gridcast/app/digest.h"

namespace gridcast::app {

using nlohmann::json;

ConfigError::ConfigError(std::string path, const std::string& message)
    : std::runtime_error(path.empty() ? message : path + ": " + message), path_(std::move(path)) {}

namespace {

std::string join(const std::vector<std::string>& items) {
    std::string out;
    for (const auto& s : items) {
        if (!out.empty()) {
            out += ", ";
        }
        out += s;
    }
    return out;
}

std::string type_name(const json& v) {
    return v.type_name();
}

/// Object view that remembers its path and which keys were read.
class Node {
public:
    Node(const json& value, std::string path) : value_(value), path_(std::move(path)) {
        if (!value_.is_object()) {
            throw ConfigError(path_.empty() ? "(root)" : path_, "expected an object, got " + type_name(value_));
        }
    }

    std::string child_path(std::string_view key) const {
        return path_.empty() ? std::string(key) : path_ + "." + std::string(key);
    }

    bool has(std::string_view key) {
        seen_.insert(std::string(key));
        return value_.contains(key);
    }

    const json& at(std::string_view key) {
        seen_.insert(std::string(key));
        return value_.at(key);
    }

    double number(std::string_view key, double fallback) {
        if (!has(key)) {
            return fallback;
        }
        const json& v = value_.at(key);
        if (!v.is_number()) {
            throw ConfigError(child_path(key), "expected a number, got " + type_name(v));
        }
        return v.get<double>();
    }

    std::uint64_t count(std::string_view key, std::uint64_t fallback) {
        if (!has(key)) {
            return fallback;
        }
        const json& v = value_.at(key);
        if (!v.is_number_integer() || (v.is_number_integer() && !v.is_number_unsigned() && v.get<std::int64_t>() < 0)) {
            throw ConfigError(child_path(key), "expected a nonnegative integer, got " + v.dump());
        }
        return v.get<std::uint64_t>();
    }

    int integer(std::string_view key, int fallback) {
        if (!has(key)) {
            return fallback;
        }
        const json& v = value_.at(key);
        if (!v.is_number_integer()) {
            throw ConfigError(child_path(key), "expected an integer, got " + v.dump());
        }
        return v.get<int>();
    }

    bool boolean(std::string_view key, bool fallback) {
        if (!has(key)) {
            return fallback;
        }
        const json& v = value_.at(key);
        if (!v.is_boolean()) {
            throw ConfigError(child_path(key), "expected true or false, got " + v.dump());
        }
        return v.get<bool>();
    }

    std::string string(std::string_view key, const std::string& fallback) {
        if (!has(key)) {
            return fallback;
        }
        const json& v = value_.at(key);
        if (!v.is_string()) {
            throw ConfigError(child_path(key), "expected a string, got " + type_name(v));
        }
        return v.get<std::string>();
    }

    /// Rejects keys that were never read, so typos do not pass silently.
    void finish() const {
        for (const auto& [key, _] : value_.items()) {
            if (!seen_.contains(key)) {
                throw ConfigError(child_path(key), "unknown field");
            }
        }
    }

private:
    const json& value_;
    std::string path_;
    std::set<std::string> seen_;
};

void require(bool ok, const std::string& path, const std::string& message) {
    if (!ok) {
        throw ConfigError(path, message);
    }
}

data::MonthDay parse_month_day(const json& v, const std::string& path) {
    require(v.is_string(), path, "expected \"MM-DD\"");
    const std::string s = v.get<std::string>();
    unsigned m = 0;
    unsigned d = 0;
    char tail = 0;
    if (s.size() != 5 || std::sscanf(s.c_str(), "%2u-%2u%c", &m, &d, &tail) != 2 || m < 1 || m > 12 || d < 1 ||
        d > 31) {
        throw ConfigError(path, "expected \"MM-DD\", got \"" + s + "\"");
    }
    return {m, d};
}

std::string format_month_day(data::MonthDay md) {
    char buf[8];
    std::snprintf(buf, sizeof buf, "%02u-%02u", md.month, md.day);
    return buf;
}

void parse_range(Node& node, std::string_view key, data::MonthDay& first, data::MonthDay& last) {
    if (!node.has(key)) {
        return;
    }
    const std::string path = node.child_path(key);
    const json& v = node.at(key);
    require(v.is_array() && v.size() == 2, path, "expected [\"MM-DD\", \"MM-DD\"]");
    first = parse_month_day(v[0], path + "[0]");
    last = parse_month_day(v[1], path + "[1]");
}

data::CalendarConfig parse_calendar(const json& v, const std::string& path) {
    Node node(v, path);
    data::CalendarConfig c;
    c.utc_offset_hours = node.integer("utc_offset_hours", c.utc_offset_hours);
    parse_range(node, "winter", c.seasons.winter_first, c.seasons.winter_last);
    parse_range(node, "summer", c.seasons.summer_first, c.seasons.summer_last);
    node.finish();
    return c;
}

twin::CapacityModel parse_capacity(const json& v, const std::string& path, twin::CapacityModel c) {
    Node node(v, path);
    c.median_kwp = node.number("median_kwp", c.median_kwp);
    c.sigma_log = node.number("sigma_log", c.sigma_log);
    c.min_kwp = node.number("min_kwp", c.min_kwp);
    c.max_kwp = node.number("max_kwp", c.max_kwp);
    node.finish();
    try {
        twin::validate(c);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(path, e.what());
    }
    return c;
}

twin::BatterySpec parse_battery(const json& v, const std::string& path, twin::BatterySpec b) {
    Node node(v, path);
    b.power_limit = node.number("power_kw", b.power_limit);
    b.capacity = node.number("capacity_kwh", b.capacity);
    b.charge_efficiency = node.number("charge_efficiency", b.charge_efficiency);
    b.discharge_efficiency = node.number("discharge_efficiency", b.discharge_efficiency);
    node.finish();
    try {
        twin::validate(b);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(path, e.what());
    }
    return b;
}

scenario::FleetComposition parse_composition(const json& v, const std::string& path) {
    Node node(v, path);
    scenario::FleetComposition c;
    c.no_pv = node.count("no_pv", 0);
    c.pv_only = node.count("pv_only", 0);
    c.pv_battery = node.count("pv_battery", 0);
    node.finish();
    require(c.total() > 0, path, "composition must contain at least one building");
    return c;
}

scenario::SelectionMode parse_mode(const std::string& s, const std::string& path) {
    if (s == "count") {
        return scenario::SelectionMode::TargetCount;
    }
    if (s == "power") {
        return scenario::SelectionMode::TargetPower;
    }
    throw ConfigError(path, "expected \"count\" or \"power\", got \"" + s + "\"");
}

std::string mode_name(scenario::SelectionMode m) {
    return m == scenario::SelectionMode::TargetCount ? "count" : "power";
}

struct ScenarioDefaults {
    scenario::SelectionMode mode = scenario::SelectionMode::TargetCount;
    scenario::Regionalization regionalization;
    twin::CapacityModel capacity;
    twin::BatterySpec battery;
};

scenario::ScenarioConfig preset(const std::string& name, const ScenarioDefaults& d, scenario::SelectionMode mode,
                                const std::string& path) {
    const auto names = scenario::preset_names();
    if (std::find(names.begin(), names.end(), name) == names.end()) {
        throw ConfigError(path, "unknown scenario preset \"" + name + "\" (valid: " + join(names) + ")");
    }
    scenario::ScenarioConfig c = scenario::scenario_preset(name, mode, d.regionalization);
    c.capacity = d.capacity;
    c.battery = d.battery;
    return c;
}

scenario::ScenarioConfig parse_scenario(const json& v, const std::string& path, const ScenarioDefaults& d) {
    if (v.is_string()) {
        return preset(v.get<std::string>(), d, d.mode, path);
    }
    Node node(v, path);
    const scenario::SelectionMode mode = node.has("mode") ? parse_mode(node.string("mode", ""), path + ".mode") : d.mode;
    scenario::ScenarioConfig c;
    if (node.has("preset")) {
        c = preset(node.string("preset", ""), d, mode, path + ".preset");
    } else {
        c.mode = mode;
        c.capacity = d.capacity;
        c.battery = d.battery;
    }
    c.name = node.string("name", c.name);
    require(!c.name.empty(), path + ".name", "required for scenarios without a preset");
    if (node.has("composition")) {
        c.composition = parse_composition(node.at("composition"), path + ".composition");
    }
    c.power.pv_kw = node.number("pv_kw", c.power.pv_kw);
    c.power.battery_kw = node.number("battery_kw", c.power.battery_kw);
    c.power.additive = node.boolean("additive", c.power.additive);
    c.reference_households = node.count("reference_households", c.reference_households);
    if (node.has("capacity")) {
        c.capacity = parse_capacity(node.at("capacity"), path + ".capacity", c.capacity);
    }
    if (node.has("battery")) {
        c.battery = parse_battery(node.at("battery"), path + ".battery", c.battery);
    }
    node.finish();
    require(c.power.pv_kw >= 0.0 && c.power.battery_kw >= 0.0, path, "power targets must be >= 0");
    require(c.reference_households > 0, path + ".reference_households", "must be >= 1");
    return c;
}

void parse_demand(const json& v, const std::string& path, scenario::SyntheticFleetParams& p) {
    Node node(v, path);
    auto& d = p.demand;
    d.mean_daily_energy = node.number("mean_daily_energy_kwh", d.mean_daily_energy);
    d.weekday_amplitude = node.number("weekday_amplitude", d.weekday_amplitude);
    d.seasonal_amplitude = node.number("seasonal_amplitude", d.seasonal_amplitude);
    d.noise_sigma = node.number("noise_sigma_kw", d.noise_sigma);
    d.noise_persistence = node.number("noise_persistence", d.noise_persistence);
    p.daily_energy_sigma_log = node.number("daily_energy_sigma_log", p.daily_energy_sigma_log);
    p.common_level_sigma = node.number("common_level_sigma", p.common_level_sigma);
    p.common_level_persistence = node.number("common_level_persistence", p.common_level_persistence);
    node.finish();
    try {
        data::validate(d);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(path, e.what());
    }
    require(p.daily_energy_sigma_log >= 0.0, path + ".daily_energy_sigma_log", "must be >= 0");
    require(p.common_level_sigma >= 0.0, path + ".common_level_sigma", "must be >= 0");
    require(p.common_level_persistence >= 0.0 && p.common_level_persistence < 1.0,
            path + ".common_level_persistence", "must be in [0, 1)");
}

void parse_pv(const json& v, const std::string& path, data::SynthPvParams& pv) {
    Node node(v, path);
    pv.latitude = node.number("latitude", pv.latitude);
    pv.cloud_persistence = node.number("cloud_persistence", pv.cloud_persistence);
    pv.cloud_sigma = node.number("cloud_sigma", pv.cloud_sigma);
    pv.utc_offset_hours = node.integer("utc_offset_hours", pv.utc_offset_hours);
    node.finish();
    try {
        data::validate(pv);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(path, e.what());
    }
}

std::filesystem::path resolve(const std::filesystem::path& p, const std::filesystem::path& base) {
    if (p.is_absolute() || base.empty()) {
        return p;
    }
    return base / p;
}

DataConfig parse_data(const json& v, const std::string& path, const std::filesystem::path& base) {
    Node node(v, path);
    DataConfig c;
    const std::string source = node.string("source", "synthetic");
    if (source == "synthetic") {
        c.source = DataSource::Synthetic;
    } else if (source == "csv") {
        c.source = DataSource::Csv;
    } else {
        throw ConfigError(path + ".source", "expected \"synthetic\" or \"csv\", got \"" + source + "\"");
    }
    auto& p = c.synthetic;
    p.households = node.count("households", p.households);
    p.horizon_days = node.count("horizon_days", p.horizon_days);
    if (node.has("start")) {
        const std::string text = node.string("start", "");
        try {
            p.start = data::parse_timestamp(text);
        } catch (const std::invalid_argument& e) {
            throw ConfigError(path + ".start", e.what());
        }
        require(data::is_hour_aligned(p.start), path + ".start", "must be a whole hour");
    }
    if (node.has("demand")) {
        parse_demand(node.at("demand"), path + ".demand", p);
    }
    if (node.has("pv")) {
        parse_pv(node.at("pv"), path + ".pv", p.pv);
    }
    if (node.has("existing")) {
        p.existing = parse_composition(node.at("existing"), path + ".existing");
    }
    if (node.has("csv_path")) {
        c.csv_path = resolve(node.string("csv_path", ""), base);
    }
    if (node.has("registry_path")) {
        c.registry_path = resolve(node.string("registry_path", ""), base);
    }
    node.finish();
    if (c.source == DataSource::Csv) {
        require(!c.csv_path.empty(), path + ".csv_path", "required when source is \"csv\"");
    }
    return c;
}

} // namespace

const std::vector<std::string>& required_fields() {
    static const std::vector<std::string> fields{"scenarios", "estimators"};
    return fields;
}

RunConfig parse_config(const json& document, const std::filesystem::path& base_dir) {
    if (!document.is_object()) {
        throw ConfigError("(root)", "expected an object with required fields: " + join(required_fields()));
    }
    std::vector<std::string> missing;
    for (const auto& f : required_fields()) {
        if (!document.contains(f)) {
            missing.push_back(f);
        }
    }
    if (!missing.empty()) {
        throw ConfigError("(root)", "missing required field(s): " + join(missing));
    }

    Node root(document, "");
    RunConfig c;
    if (root.has("data")) {
        c.data = parse_data(root.at("data"), "data", base_dir);
    }
    c.seed = root.count("seed", c.seed);
    c.data.synthetic.seed = c.seed;
    c.replications = root.count("replications", c.replications);
    c.summary_days = root.count("summary_days", c.summary_days);
    c.plots = root.boolean("plots", c.plots);
    c.threads = root.count("threads", c.threads);
    if (root.has("output_dir")) {
        c.output_dir = resolve(root.string("output_dir", ""), base_dir);
    }

    ScenarioDefaults defaults;
    if (root.has("mode")) {
        defaults.mode = parse_mode(root.string("mode", ""), "mode");
    }
    if (root.has("regionalization")) {
        Node node(root.at("regionalization"), "regionalization");
        auto& r = defaults.regionalization;
        r.national_pv_kw = node.number("national_pv_kw", r.national_pv_kw);
        r.national_battery_kw = node.number("national_battery_kw", r.national_battery_kw);
        r.pv_ratio = node.number("pv_ratio", r.pv_ratio);
        r.battery_ratio = node.number("battery_ratio", r.battery_ratio);
        node.finish();
    }
    if (root.has("capacity")) {
        defaults.capacity = parse_capacity(root.at("capacity"), "capacity", defaults.capacity);
    }
    if (root.has("battery")) {
        defaults.battery = parse_battery(root.at("battery"), "battery", defaults.battery);
    }
    c.data.synthetic.capacity = defaults.capacity;
    c.data.synthetic.battery = defaults.battery;

    const json& scenarios = root.at("scenarios");
    require(scenarios.is_array() && !scenarios.empty(), "scenarios", "expected a nonempty list");
    for (std::size_t i = 0; i < scenarios.size(); ++i) {
        c.scenarios.push_back(parse_scenario(scenarios[i], "scenarios[" + std::to_string(i) + "]", defaults));
    }

    const json& estimators = root.at("estimators");
    require(estimators.is_array() && !estimators.empty(), "estimators", "expected a nonempty list");
    const auto& valid = forecast::estimator_names();
    for (std::size_t i = 0; i < estimators.size(); ++i) {
        const std::string path = "estimators[" + std::to_string(i) + "]";
        require(estimators[i].is_string(), path, "expected an estimator name");
        const std::string name = estimators[i].get<std::string>();
        if (std::find(valid.begin(), valid.end(), name) == valid.end()) {
            throw ConfigError(path, "unknown estimator \"" + name + "\" (valid: " + join(valid) + ")");
        }
        c.estimators.push_back(name);
    }

    if (root.has("slp_scenarios")) {
        const json& v = root.at("slp_scenarios");
        require(v.is_array(), "slp_scenarios", "expected a list of scenario names");
        c.slp_scenarios.clear();
        for (std::size_t i = 0; i < v.size(); ++i) {
            require(v[i].is_string(), "slp_scenarios[" + std::to_string(i) + "]", "expected a scenario name");
            c.slp_scenarios.push_back(v[i].get<std::string>());
        }
    } else {
        // default: CS, if the run has it
        std::erase_if(c.slp_scenarios, [&](const std::string& name) {
            return std::none_of(c.scenarios.begin(), c.scenarios.end(), [&](const auto& s) { return s.name == name; });
        });
    }

    if (root.has("split")) {
        Node node(root.at("split"), "split");
        c.split.train_days = node.count("train_days", c.split.train_days);
        c.split.test_days = node.count("test_days", c.split.test_days);
        node.finish();
    }

    auto& f = c.forecast;
    f.seed = c.seed;
    if (root.has("calendar")) {
        f.calendar = parse_calendar(root.at("calendar"), "calendar");
    }
    if (root.has("forecast")) {
        Node node(root.at("forecast"), "forecast");
        f.lookback = node.count("lookback_hours", f.lookback);
        f.lstm_epochs = node.count("lstm_epochs", f.lstm_epochs);
        f.cnn_lstm_epochs = node.count("cnn_lstm_epochs", f.cnn_lstm_epochs);
        f.batch_size = node.count("batch_size", f.batch_size);
        f.learning_rate = node.number("learning_rate", f.learning_rate);
        f.arima_window_hours = node.count("arima_window_hours", f.arima_window_hours);
        if (node.has("arima_order")) {
            const json& v = node.at("arima_order");
            require(v.is_array() && v.size() == 3 && std::all_of(v.begin(), v.end(), [](const json& x) {
                        return x.is_number_unsigned();
                    }),
                    "forecast.arima_order", "expected [p, d, q] with nonnegative integers");
            f.arima_order = {v[0].get<std::size_t>(), v[1].get<std::size_t>(), v[2].get<std::size_t>()};
        }
        node.finish();
    }
    root.finish();
    validate(c);
    return c;
}

void validate(const RunConfig& c) {
    require(c.split.test_days >= 1, "split.test_days", "must be >= 1");
    require(c.split.train_days >= 1, "split.train_days", "must be >= 1");
    require(c.replications >= 1, "replications", "must be >= 1");
    require(c.summary_days >= 1, "summary_days", "must be >= 1");
    const auto& d = c.data;
    if (d.source == DataSource::Synthetic) {
        require(d.synthetic.households >= 1, "data.households", "must be >= 1");
        require(c.split.total_days() <= d.synthetic.horizon_days, "split",
                "train_days + test_days = " + std::to_string(c.split.total_days()) + " exceeds data.horizon_days = " +
                    std::to_string(d.synthetic.horizon_days));
    } else {
        require(std::filesystem::is_regular_file(d.csv_path), "data.csv_path",
                "file not found: " + d.csv_path.string());
        if (!d.registry_path.empty()) {
            require(std::filesystem::is_regular_file(d.registry_path), "data.registry_path",
                    "file not found: " + d.registry_path.string());
        }
    }

    std::set<std::string> names;
    for (std::size_t i = 0; i < c.scenarios.size(); ++i) {
        const std::string& name = c.scenarios[i].name;
        const bool plain = !name.empty() && std::all_of(name.begin(), name.end(), [](char ch) {
            return std::isalnum(static_cast<unsigned char>(ch)) || ch == '-' || ch == '_' || ch == '.';
        });
        require(plain, "scenarios[" + std::to_string(i) + "].name",
                "\"" + name + "\" must use only letters, digits, '-', '_' and '.'");
        if (!names.insert(name).second) {
            throw ConfigError("scenarios[" + std::to_string(i) + "]",
                              "duplicate scenario name \"" + c.scenarios[i].name + "\"");
        }
    }
    for (std::size_t i = 0; i < c.slp_scenarios.size(); ++i) {
        require(names.contains(c.slp_scenarios[i]), "slp_scenarios[" + std::to_string(i) + "]",
                "no scenario named \"" + c.slp_scenarios[i] + "\"");
    }
    std::set<std::string> estimators;
    for (std::size_t i = 0; i < c.estimators.size(); ++i) {
        require(estimators.insert(c.estimators[i]).second, "estimators[" + std::to_string(i) + "]",
                "duplicate estimator \"" + c.estimators[i] + "\"");
    }

    const auto& f = c.forecast;
    require(f.lookback >= 24 && f.lookback % 24 == 0, "forecast.lookback_hours", "must be a positive multiple of 24");
    require(f.lookback / 24 < c.split.train_days, "forecast.lookback_hours", "must be shorter than the training days");
    require(f.batch_size >= 1, "forecast.batch_size", "must be >= 1");
    require(f.lstm_epochs >= 1, "forecast.lstm_epochs", "must be >= 1");
    require(f.cnn_lstm_epochs >= 1, "forecast.cnn_lstm_epochs", "must be >= 1");
    require(f.learning_rate > 0.0, "forecast.learning_rate", "must be > 0");
    const auto& o = f.arima_order;
    require(f.arima_window_hours > o.p + o.d + o.q + 10, "forecast.arima_window_hours",
            "must exceed p + d + q + 10");
}

RunConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ConfigError("", "cannot read config file " + path.string());
    }
    std::ostringstream text;
    text << in.rdbuf();
    const std::string content = text.str();
    if (content.find_first_not_of(" \t\r\n") == std::string::npos) {
        throw ConfigError("(root)", "config file is empty; required fields: " + join(required_fields()));
    }
    json document;
    try {
        document = json::parse(content);
    } catch (const json::parse_error& e) {
        throw ConfigError("(root)", std::string("invalid JSON: ") + e.what());
    }
    return parse_config(document, path.parent_path());
}

json to_json(const RunConfig& c) {
    const auto& p = c.data.synthetic;
    json data{{"source", c.data.source == DataSource::Synthetic ? "synthetic" : "csv"}};
    if (c.data.source == DataSource::Synthetic) {
        data["households"] = p.households;
        data["horizon_days"] = p.horizon_days;
        data["start"] = data::format_timestamp(p.start);
        data["demand"] = {{"mean_daily_energy_kwh", p.demand.mean_daily_energy},
                          {"weekday_amplitude", p.demand.weekday_amplitude},
                          {"seasonal_amplitude", p.demand.seasonal_amplitude},
                          {"noise_sigma_kw", p.demand.noise_sigma},
                          {"noise_persistence", p.demand.noise_persistence},
                          {"daily_energy_sigma_log", p.daily_energy_sigma_log},
                          {"common_level_sigma", p.common_level_sigma},
                          {"common_level_persistence", p.common_level_persistence}};
        data["existing"] = {{"no_pv", p.existing.no_pv},
                            {"pv_only", p.existing.pv_only},
                            {"pv_battery", p.existing.pv_battery}};
    } else {
        data["csv_sha256"] = sha256_file(c.data.csv_path);
        if (!c.data.registry_path.empty()) {
            data["registry_sha256"] = sha256_file(c.data.registry_path);
        }
    }
    data["pv"] = {{"latitude", p.pv.latitude},
                  {"cloud_persistence", p.pv.cloud_persistence},
                  {"cloud_sigma", p.pv.cloud_sigma},
                  {"utc_offset_hours", p.pv.utc_offset_hours}};

    json scenarios = json::array();
    for (const auto& s : c.scenarios) {
        json j{{"name", s.name},
               {"mode", mode_name(s.mode)},
               {"pv_kw", s.power.pv_kw},
               {"battery_kw", s.power.battery_kw},
               {"additive", s.power.additive},
               {"reference_households", s.reference_households},
               {"capacity",
                {{"median_kwp", s.capacity.median_kwp},
                 {"sigma_log", s.capacity.sigma_log},
                 {"min_kwp", s.capacity.min_kwp},
                 {"max_kwp", s.capacity.max_kwp}}},
               {"battery",
                {{"power_kw", s.battery.power_limit},
                 {"capacity_kwh", s.battery.capacity},
                 {"charge_efficiency", s.battery.charge_efficiency},
                 {"discharge_efficiency", s.battery.discharge_efficiency}}}};
        if (s.composition) {
            j["composition"] = {{"no_pv", s.composition->no_pv},
                                {"pv_only", s.composition->pv_only},
                                {"pv_battery", s.composition->pv_battery}};
        }
        scenarios.push_back(std::move(j));
    }

    const auto& f = c.forecast;
    const auto& seasons = f.calendar.seasons;
    return json{{"data", data},
                {"scenarios", scenarios},
                {"estimators", c.estimators},
                {"slp_scenarios", c.slp_scenarios},
                {"split", {{"train_days", c.split.train_days}, {"test_days", c.split.test_days}}},
                {"seed", c.seed},
                {"replications", c.replications},
                {"summary_days", c.summary_days},
                {"plots", c.plots},
                {"calendar",
                 {{"utc_offset_hours", f.calendar.utc_offset_hours},
                  {"winter", {format_month_day(seasons.winter_first), format_month_day(seasons.winter_last)}},
                  {"summer", {format_month_day(seasons.summer_first), format_month_day(seasons.summer_last)}}}},
                {"forecast",
                 {{"lookback_hours", f.lookback},
                  {"lstm_epochs", f.lstm_epochs},
                  {"cnn_lstm_epochs", f.cnn_lstm_epochs},
                  {"batch_size", f.batch_size},
                  {"learning_rate", f.learning_rate},
                  {"arima_order", {f.arima_order.p, f.arima_order.d, f.arima_order.q}},
                  {"arima_window_hours", f.arima_window_hours}}}};
}

std::string config_hash(const RunConfig& config) {
    return sha256_hex(to_json(config).dump());
}

RunConfig desk_preset() {
    json doc{{"data", {{"households", 500}}},
             {"scenarios", {"CS", "S1", "S2"}},
             {"estimators", forecast::estimator_names()}};
    return parse_config(doc);
}

} // namespace gridcast::app
