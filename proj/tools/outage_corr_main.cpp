#include <cstdio>
#include <exception>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "outcorr/errors.hpp"
#include "outcorr/sweep.hpp"
#include "outcorr/version.hpp"

namespace {

constexpr int kExitConfigError = 2;
constexpr int kExitNumericalError = 3;

struct Overrides {
    std::map<std::string, std::string> kv;  // merged over the config file
};

void add_override_options(CLI::App* cmd, Overrides& ov) {
    const auto bind = [cmd, &ov](const std::string& flag, const std::string& key,
                                 const std::string& help) {
        cmd->add_option_function<std::string>(
            flag, [&ov, key](const std::string& v) { ov.kv[key] = v; }, help);
    };
    bind("--theta-grid", "theta_grid", "theta grid, degrees: lo:hi:step or a,b,c");
    bind("--process", "process", "bpp|ppp|tcp");
    bind("--seed", "seed", "RNG seed");
    bind("--engines", "engines", "comma list from {analytic,mc}");
    bind("--out", "out", "output CSV path");
    bind("--n-topologies", "n_topologies", "Monte Carlo topology count");
    bind("--threads", "threads", "worker threads (0 = auto)");
    bind("--estimator", "estimator", "conditional-analytic|fading-realized");
    bind("--m", "m", "BPP interferer count");
    bind("--lambda", "lambda", "PPP intensity per unit area");
    bind("--lambda-prime", "lambda_prime", "TCP mean offspring per cluster");
    bind("--sigma", "sigma", "TCP cluster spread");
    bind("--nu", "nu", "TCP cluster-center offset");
    bind("--p", "p", "access probability");
    bind("--alpha", "alpha", "path-loss exponent");
    bind("--snr-db", "snr_db", "SNR in dB");
    bind("--beta-db", "beta_db", "SINR threshold in dB");
    bind("--r-out", "r_out", "network radius");
    bind("--r0", "r0", "transmitter-receiver distance");
}

int run_sweep_command(const std::string& config_path, const Overrides& ov) {
    auto kv = outcorr::read_config_file(config_path);
    for (const auto& [key, value] : ov.kv) kv[key] = value;
    const outcorr::SweepConfig cfg = outcorr::build_config(kv);
    const std::vector<outcorr::SweepConfig> cfgs{cfg};
    const auto rows = outcorr::run_sweeps(cfgs);
    outcorr::write_csv(rows, cfg.out_path);
    outcorr::write_manifest(cfgs, cfg.out_path, {});
    std::printf("wrote %zu rows to %s\n", rows.size(), cfg.out_path.c_str());
    return 0;
}

int run_preset_command(const std::string& name, const std::string& out_path,
                       const Overrides& ov) {
    std::vector<outcorr::SweepConfig> cfgs;
    if (name == "fig2")
        cfgs = outcorr::preset_fig2();
    else if (name == "fig3")
        cfgs = outcorr::preset_fig3();
    else
        throw outcorr::ConfigError("preset: expected fig2|fig3, got '" + name + "'");
    for (auto& cfg : cfgs) {
        cfg.out_path = out_path;
        for (const auto& [key, value] : ov.kv) {
            if (key == "seed")
                cfg.mc.seed = std::stoull(value);
            else if (key == "n_topologies")
                cfg.mc.n_topologies = std::stoll(value);
            else if (key == "threads")
                cfg.mc.threads = std::stoi(value);
            else if (key == "theta_grid")
                cfg.theta_deg = outcorr::parse_theta_grid(value);
            else if (key == "engines") {
                auto kv = std::map<std::string, std::string>{{"engines", value},
                                                             {"process", "bpp"},
                                                             {"m", "1"}};
                const auto probe = outcorr::build_config(kv);
                cfg.engine_analytic = probe.engine_analytic;
                cfg.engine_mc = probe.engine_mc;
            } else {
                throw outcorr::ConfigError("preset: unsupported override: " + key);
            }
        }
    }
    const auto rows = outcorr::run_sweeps(cfgs);
    outcorr::write_csv(rows, out_path);
    outcorr::write_manifest(cfgs, out_path, outcorr::preset_notes(name));
    std::printf("wrote %zu rows to %s\n", rows.size(), out_path.c_str());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"outage-corr: outage-correlation sweeps for finite wireless networks"};
    app.set_version_flag("--version", outcorr::kVersion);
    app.require_subcommand(1);

    auto* sweep = app.add_subcommand("sweep", "run a sweep from a config file");
    std::string config_path;
    sweep->add_option("--config", config_path, "flat key=value config file")
        ->required();
    Overrides sweep_ov;
    add_override_options(sweep, sweep_ov);

    auto* preset = app.add_subcommand("preset", "run a built-in reproduction preset");
    std::string preset_name;
    preset->add_option("name", preset_name, "fig2|fig3")->required();
    std::string preset_out;
    preset->add_option("--out", preset_out, "output CSV path")->required();
    Overrides preset_ov;
    const auto bind_preset = [&](const std::string& flag, const std::string& key,
                                 const std::string& help) {
        preset->add_option_function<std::string>(
            flag, [&preset_ov, key](const std::string& v) { preset_ov.kv[key] = v; },
            help);
    };
    bind_preset("--seed", "seed", "RNG seed");
    bind_preset("--n-topologies", "n_topologies", "Monte Carlo topology count");
    bind_preset("--threads", "threads", "worker threads (0 = auto)");
    bind_preset("--theta-grid", "theta_grid", "theta grid override");
    bind_preset("--engines", "engines", "comma list from {analytic,mc}");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitConfigError;
    }

    try {
        if (sweep->parsed()) return run_sweep_command(config_path, sweep_ov);
        return run_preset_command(preset_name, preset_out, preset_ov);
    } catch (const outcorr::ConfigError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitConfigError;
    } catch (const outcorr::NumericalError& e) {
        std::fprintf(stderr, "numerical error: %s (best estimate %.17g, bound %.3g)\n",
                     e.what(), e.best_estimate(), e.error_bound());
        return kExitNumericalError;
    } catch (const std::domain_error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitConfigError;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "error: invalid numeric option: %s\n", e.what());
        return kExitConfigError;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
}
