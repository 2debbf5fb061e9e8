#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "outcorr/mc.hpp"
#include "outcorr/process.hpp"

namespace outcorr {

struct SweepConfig {
    ProcessModel process = BppModel{50};
    Geometry geometry{1.0, 0.25, 0.0};
    SystemParams radio{3.5, 10.0, 1.0, 0.1};
    double snr_db = 10.0;    // echoed in the manifest
    double beta_db = 0.0;
    std::vector<double> theta_deg;  // normalized to [0, 180]
    bool engine_analytic = true;
    bool engine_mc = true;
    McConfig mc;
    QuadSpec quad;
    std::string out_path = "sweep.csv";
    std::string label;  // preset curve tag, empty for plain sweeps
};

struct SweepRow {
    double theta_deg;
    std::string process;
    std::string engine;  // "analytic" | "mc"
    std::string density_param;
    double zeta;
    MomentSet moments;
    double std_err_zeta;  // NaN for analytic rows
    bool degenerate;
    std::uint64_t seed;
    std::int64_t runtime_ms;
};

// Flat key=value config file; '#' starts a comment. Unknown keys are rejected.
std::map<std::string, std::string> read_config_file(const std::string& path);

// Build and validate a SweepConfig from key/value pairs (file plus overrides).
SweepConfig build_config(const std::map<std::string, std::string>& kv);

// "lo:hi:step" or a comma-separated list, in degrees. Values in (180, 360] are
// folded to 360 - theta.
std::vector<double> parse_theta_grid(const std::string& text);

std::string density_param_string(const ProcessModel& process, const SystemParams& radio);

std::vector<SweepRow> run_sweep(const SweepConfig& cfg);
std::vector<SweepRow> run_sweeps(const std::vector<SweepConfig>& cfgs);

// Header: theta_deg,process,engine,density_param,zeta,first_moment,second_moment,
// joint_moment,std_err_zeta,degenerate,seed,runtime_ms. Numbers carry 9
// significant digits; a degenerate zeta prints as NA.
std::string csv_string(const std::vector<SweepRow>& rows);
void write_csv(const std::vector<SweepRow>& rows, const std::string& path);

// JSON run manifest (config echo, version, seed) written beside the CSV at
// <csv path>.manifest.json.
std::string manifest_string(const std::vector<SweepConfig>& cfgs,
                            const std::vector<std::string>& notes);
void write_manifest(const std::vector<SweepConfig>& cfgs, const std::string& csv_path,
                    const std::vector<std::string>& notes);

// Reproduction presets. fig2: BPP (M=50) and PPP at matched lambda*p for
// p in {0.1, 0.5, 1}. fig3: TCP over lambda'p in {1, 5, 20} x sigma in
// {0.25, 0.5} at p = 0.1; that grid is implementer-chosen (the source figure
// prints no parameter values) and the manifest says so.
std::vector<SweepConfig> preset_fig2();
std::vector<SweepConfig> preset_fig3();
std::vector<std::string> preset_notes(const std::string& name);

}  // namespace outcorr
