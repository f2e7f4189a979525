#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "gridcast/app/config.h"
#include "gridcast/app/pipeline.h"

namespace {

using gridcast::app::Command;

struct Options {
    std::string config;
    std::string out;
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> households;
    std::optional<std::size_t> replications;
    std::optional<std::size_t> threads;
    bool quiet = false;
};

void add_common(CLI::App* cmd, Options& o) {
    cmd->add_option("--config", o.config, "JSON run configuration (default: built-in 500-household preset)")
        ->check(CLI::ExistingFile);
    cmd->add_option("--out", o.out, "output directory (overrides output_dir)");
    cmd->add_option("--seed", o.seed, "base seed (overrides seed)");
    cmd->add_option("--households", o.households, "fleet size override")->check(CLI::PositiveNumber);
    cmd->add_option("--replications", o.replications, "retrofit replications per scenario")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--threads", o.threads, "parallel backtests, 0 = all cores");
    cmd->add_flag("-q,--quiet", o.quiet, "no progress output");
}

gridcast::app::RunConfig resolve(const Options& o) {
    gridcast::app::RunConfig c =
        o.config.empty() ? gridcast::app::desk_preset() : gridcast::app::load_config(o.config);
    if (!o.out.empty()) {
        c.output_dir = o.out;
    }
    if (o.seed) {
        c.seed = *o.seed;
        c.data.synthetic.seed = *o.seed;
        c.forecast.seed = *o.seed;
    }
    if (o.households) {
        c.data.synthetic.households = *o.households;
    }
    if (o.replications) {
        c.replications = *o.replications;
    }
    if (o.threads) {
        c.threads = *o.threads;
    }
    gridcast::app::validate(c);
    return c;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Residential grid digital twin and day-ahead load forecasting benchmark"};
    app.require_subcommand(1);
    Options opts;
    struct Entry {
        const char* name;
        const char* help;
        Command command;
    };
    const Entry entries[] = {
        {"generate", "build the fleet and export household demand, registry and PV unit profile", Command::Generate},
        {"simulate", "run the scenario replications and write scenario summaries and loads", Command::Simulate},
        {"forecast", "backtest the estimators on replication 0 of every scenario", Command::Forecast},
        {"evaluate", "compute metrics and significance from an existing forecasts.csv", Command::Evaluate},
        {"run", "all stages: data, scenarios, backtests, reports", Command::Run},
    };
    std::optional<Command> chosen;
    for (const auto& e : entries) {
        CLI::App* sub = app.add_subcommand(e.name, e.help);
        add_common(sub, opts);
        sub->callback([&chosen, c = e.command] { chosen = c; });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        const gridcast::app::RunConfig config = resolve(opts);
        gridcast::app::Log log;
        if (!opts.quiet) {
            log = [](const std::string& line) { std::cerr << line << '\n'; };
        }
        const auto manifest = gridcast::app::run_command(*chosen, config, log);
        if (!opts.quiet) {
            std::cerr << "config " << manifest.config_hash.substr(0, 12) << ", " << manifest.artifacts.size()
                      << " artifacts in " << config.output_dir.string() << '\n';
        }
        return 0;
    } catch (const gridcast::app::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 1;
    } catch (const gridcast::app::StageError& e) {
        std::cerr << "error " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
}
