#include "outcorr/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <limits>
#include <mutex>
#include <numbers>
#include <set>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "outcorr/errors.hpp"
#include "outcorr/version.hpp"

namespace outcorr {
namespace {

using json = nlohmann::ordered_json;

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& value) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(value, &pos);
        if (pos != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw ConfigError("config: " + key + ": not a number: '" + value + "'");
    }
}

std::int64_t to_int(const std::string& key, const std::string& value) {
    try {
        std::size_t pos = 0;
        const long long v = std::stoll(value, &pos);
        if (pos != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw ConfigError("config: " + key + ": not an integer: '" + value + "'");
    }
}

std::uint64_t to_uint(const std::string& key, const std::string& value) {
    try {
        std::size_t pos = 0;
        const unsigned long long v = std::stoull(value, &pos);
        if (pos != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw ConfigError("config: " + key + ": not an unsigned integer: '" + value + "'");
    }
}

double db_to_linear(double db) {
    return std::pow(10.0, db / 10.0);
}

std::string fmt9(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return buf;
}

const std::set<std::string> kKnownKeys = {
    "process", "m", "lambda", "lambda_prime", "sigma", "nu",
    "r_out", "r0", "alpha", "snr_db", "beta_db", "p",
    "theta_grid", "engines", "n_topologies", "seed", "estimator",
    "threads", "out"};

std::int64_t elapsed_ms(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration_cast<std::chrono::milliseconds>(
               std::chrono::steady_clock::now() - start)
        .count();
}

json curve_json(const SweepConfig& cfg) {
    json c;
    if (!cfg.label.empty()) c["label"] = cfg.label;
    c["process"] = process_name(cfg.process);
    if (const auto* bpp = std::get_if<BppModel>(&cfg.process)) {
        c["m"] = bpp->m;
    } else if (const auto* ppp = std::get_if<PppModel>(&cfg.process)) {
        c["lambda"] = ppp->lambda;
    } else {
        const auto& tcp = std::get<TcpModel>(cfg.process);
        c["lambda_prime"] = tcp.lambda_prime;
        c["sigma"] = tcp.sigma;
        c["nu"] = tcp.nu;
    }
    c["geometry"] = {{"r_out", cfg.geometry.r_out}, {"r0", cfg.geometry.r0}};
    c["radio"] = {{"alpha", cfg.radio.alpha},
                  {"snr_db", cfg.snr_db},
                  {"snr_linear", cfg.radio.snr},
                  {"beta_db", cfg.beta_db},
                  {"beta_linear", cfg.radio.beta},
                  {"p", cfg.radio.p}};
    c["density_param"] = density_param_string(cfg.process, cfg.radio);
    return c;
}

}  // namespace

std::map<std::string, std::string> read_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config: cannot open file: " + path);
    std::map<std::string, std::string> kv;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config: line " + std::to_string(lineno) +
                              ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty())
            throw ConfigError("config: line " + std::to_string(lineno) +
                              ": empty key or value");
        kv[key] = value;
    }
    return kv;
}

std::vector<double> parse_theta_grid(const std::string& text) {
    std::vector<double> grid;
    const auto add = [&grid](double v) {
        if (!(v >= 0.0 && v <= 360.0))
            throw ConfigError("config: theta_grid: value out of [0, 360]: " +
                              std::to_string(v));
        grid.push_back(v > 180.0 ? 360.0 - v : v);
    };
    if (text.find(':') != std::string::npos) {
        double lo = 0.0, hi = 0.0, step = 0.0;
        char c1 = 0, c2 = 0;
        std::istringstream ss(text);
        if (!(ss >> lo >> c1 >> hi >> c2 >> step) || c1 != ':' || c2 != ':' ||
            !(step > 0.0) || hi < lo)
            throw ConfigError("config: theta_grid: expected lo:hi:step, got '" + text + "'");
        for (double v = lo; v <= hi + 1e-9; v += step) add(v);
    } else {
        std::istringstream ss(text);
        std::string item;
        while (std::getline(ss, item, ',')) {
            item = trim(item);
            if (item.empty()) continue;
            add(to_double("theta_grid", item));
        }
    }
    if (grid.empty()) throw ConfigError("config: theta_grid: empty grid");
    return grid;
}

SweepConfig build_config(const std::map<std::string, std::string>& kv) {
    for (const auto& [key, value] : kv) {
        (void)value;
        if (!kKnownKeys.count(key)) throw ConfigError("config: unknown key: " + key);
    }
    const auto get = [&kv](const std::string& key) -> const std::string* {
        const auto it = kv.find(key);
        return it == kv.end() ? nullptr : &it->second;
    };
    SweepConfig cfg;
    if (const auto* v = get("r_out")) cfg.geometry.r_out = to_double("r_out", *v);
    if (const auto* v = get("r0")) cfg.geometry.r0 = to_double("r0", *v);
    if (const auto* v = get("alpha")) cfg.radio.alpha = to_double("alpha", *v);
    if (const auto* v = get("snr_db")) cfg.snr_db = to_double("snr_db", *v);
    if (const auto* v = get("beta_db")) cfg.beta_db = to_double("beta_db", *v);
    if (const auto* v = get("p")) cfg.radio.p = to_double("p", *v);
    cfg.radio.snr = db_to_linear(cfg.snr_db);
    cfg.radio.beta = db_to_linear(cfg.beta_db);

    const std::string proc = get("process") ? *get("process") : "bpp";
    if (proc == "bpp") {
        if (!get("m")) throw ConfigError("config: process bpp requires m");
        cfg.process = BppModel{static_cast<int>(to_int("m", *get("m")))};
    } else if (proc == "ppp") {
        if (!get("lambda")) throw ConfigError("config: process ppp requires lambda");
        cfg.process = PppModel{to_double("lambda", *get("lambda"))};
    } else if (proc == "tcp") {
        if (!get("lambda_prime") || !get("sigma"))
            throw ConfigError("config: process tcp requires lambda_prime and sigma");
        TcpModel tcp{to_double("lambda_prime", *get("lambda_prime")),
                     to_double("sigma", *get("sigma")), 0.0};
        if (const auto* v = get("nu")) tcp.nu = to_double("nu", *v);
        cfg.process = tcp;
    } else {
        throw ConfigError("config: process: expected bpp|ppp|tcp, got '" + proc + "'");
    }

    cfg.theta_deg = parse_theta_grid(get("theta_grid") ? *get("theta_grid") : "5:180:5");

    if (const auto* v = get("engines")) {
        cfg.engine_analytic = cfg.engine_mc = false;
        std::istringstream ss(*v);
        std::string item;
        while (std::getline(ss, item, ',')) {
            item = trim(item);
            if (item == "analytic")
                cfg.engine_analytic = true;
            else if (item == "mc")
                cfg.engine_mc = true;
            else if (!item.empty())
                throw ConfigError("config: engines: expected analytic|mc, got '" + item + "'");
        }
        if (!cfg.engine_analytic && !cfg.engine_mc)
            throw ConfigError("config: engines: at least one engine required");
    }

    if (const auto* v = get("n_topologies")) {
        cfg.mc.n_topologies = to_int("n_topologies", *v);
        if (cfg.mc.n_topologies < 1)
            throw ConfigError("config: n_topologies: must be >= 1");
    }
    if (const auto* v = get("seed")) cfg.mc.seed = to_uint("seed", *v);
    if (const auto* v = get("threads"))
        cfg.mc.threads = static_cast<int>(to_int("threads", *v));
    if (const auto* v = get("estimator")) {
        if (*v == "conditional-analytic")
            cfg.mc.estimator = McConfig::Estimator::conditional_analytic;
        else if (*v == "fading-realized")
            cfg.mc.estimator = McConfig::Estimator::fading_realized;
        else
            throw ConfigError(
                "config: estimator: expected conditional-analytic|fading-realized, got '" +
                *v + "'");
    }
    if (const auto* v = get("out")) cfg.out_path = *v;

    try {
        validate(cfg.geometry);
        validate(cfg.radio);
        if (const auto* tcp = std::get_if<TcpModel>(&cfg.process)) validate(*tcp);
        if (const auto* bpp = std::get_if<BppModel>(&cfg.process); bpp && bpp->m < 0)
            throw std::domain_error("m must be >= 0");
        if (const auto* ppp = std::get_if<PppModel>(&cfg.process); ppp && ppp->lambda < 0)
            throw std::domain_error("lambda must be >= 0");
    } catch (const std::domain_error& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
    return cfg;
}

std::string density_param_string(const ProcessModel& process, const SystemParams& radio) {
    if (const auto* bpp = std::get_if<BppModel>(&process))
        return "M=" + std::to_string(bpp->m) + ";p=" + fmt9(radio.p);
    if (const auto* ppp = std::get_if<PppModel>(&process))
        return "lambda=" + fmt9(ppp->lambda) + ";p=" + fmt9(radio.p);
    const auto& tcp = std::get<TcpModel>(process);
    return "lambda_prime=" + fmt9(tcp.lambda_prime) + ";sigma=" + fmt9(tcp.sigma) +
           ";p=" + fmt9(radio.p);
}

std::vector<SweepRow> run_sweep(const SweepConfig& cfg) {
    std::vector<SweepRow> rows;
    const std::string proc = process_name(cfg.process);
    const std::string density = density_param_string(cfg.process, cfg.radio);
    const auto geom_at = [&cfg](double theta) {
        Geometry geom = cfg.geometry;
        geom.theta = theta;
        return geom;
    };
    if (cfg.engine_analytic) {
        // analytic sweep points are pure and cheap: dispatch them to a pool
        std::vector<SweepRow> analytic_rows(cfg.theta_deg.size());
        std::atomic<std::size_t> next{0};
        std::mutex error_mutex;
        std::exception_ptr error;
        const auto work = [&] {
            for (std::size_t i; (i = next.fetch_add(1)) < cfg.theta_deg.size();) {
                try {
                    const double theta_deg = cfg.theta_deg[i];
                    const double theta = theta_deg * std::numbers::pi / 180.0;
                    const auto start = std::chrono::steady_clock::now();
                    const MomentSet moments = analytic_moments(
                        cfg.process, geom_at(theta), cfg.radio, theta, cfg.quad);
                    const CorrelationResult corr = correlation_coefficient(moments);
                    analytic_rows[i] = {theta_deg,
                                        proc,
                                        "analytic",
                                        density,
                                        corr.zeta,
                                        moments,
                                        std::numeric_limits<double>::quiet_NaN(),
                                        corr.degenerate,
                                        cfg.mc.seed,
                                        elapsed_ms(start)};
                } catch (...) {
                    const std::lock_guard<std::mutex> lock(error_mutex);
                    if (!error) error = std::current_exception();
                    return;
                }
            }
        };
        unsigned pool = cfg.mc.threads > 0 ? static_cast<unsigned>(cfg.mc.threads)
                                           : std::thread::hardware_concurrency();
        pool = std::max(1u, std::min<unsigned>(pool, cfg.theta_deg.size()));
        std::vector<std::thread> workers;
        for (unsigned t = 1; t < pool; ++t) workers.emplace_back(work);
        work();
        for (auto& w : workers) w.join();
        if (error) std::rethrow_exception(error);
        rows.insert(rows.end(), analytic_rows.begin(), analytic_rows.end());
    }
    if (cfg.engine_mc) {
        // MC points run in sweep order; each estimate parallelizes internally
        for (double theta_deg : cfg.theta_deg) {
            const double theta = theta_deg * std::numbers::pi / 180.0;
            const auto start = std::chrono::steady_clock::now();
            const McEstimate est =
                estimate(cfg.process, geom_at(theta), cfg.radio, theta, cfg.mc);
            rows.push_back({theta_deg, proc, "mc", density, est.zeta_hat,
                            est.moments_hat, est.std_errors.zeta, est.degenerate,
                            est.seed, elapsed_ms(start)});
        }
    }
    return rows;
}

std::vector<SweepRow> run_sweeps(const std::vector<SweepConfig>& cfgs) {
    std::vector<SweepRow> rows;
    for (const auto& cfg : cfgs) {
        auto part = run_sweep(cfg);
        rows.insert(rows.end(), part.begin(), part.end());
    }
    std::stable_sort(rows.begin(), rows.end(), [](const SweepRow& a, const SweepRow& b) {
        if (a.theta_deg != b.theta_deg) return a.theta_deg < b.theta_deg;
        if (a.engine != b.engine) return a.engine < b.engine;
        if (a.process != b.process) return a.process < b.process;
        return a.density_param < b.density_param;
    });
    return rows;
}

std::string csv_string(const std::vector<SweepRow>& rows) {
    std::ostringstream out;
    out << "theta_deg,process,engine,density_param,zeta,first_moment,second_moment,"
           "joint_moment,std_err_zeta,degenerate,seed,runtime_ms\n";
    for (const auto& r : rows) {
        out << fmt9(r.theta_deg) << ',' << r.process << ',' << r.engine << ','
            << r.density_param << ',';
        out << (r.degenerate ? "NA" : fmt9(r.zeta)) << ',';
        out << fmt9(r.moments.first) << ',' << fmt9(r.moments.second) << ','
            << fmt9(r.moments.joint) << ',';
        if (!std::isnan(r.std_err_zeta)) out << fmt9(r.std_err_zeta);
        out << ',' << (r.degenerate ? 1 : 0) << ',' << r.seed << ',' << r.runtime_ms
            << '\n';
    }
    return out.str();
}

void write_csv(const std::vector<SweepRow>& rows, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot open output file: " + path);
    out << csv_string(rows);
}

std::string manifest_string(const std::vector<SweepConfig>& cfgs,
                            const std::vector<std::string>& notes) {
    json m;
    m["tool"] = "outage-corr";
    m["version"] = kVersion;
    if (!cfgs.empty()) {
        m["seed"] = cfgs.front().mc.seed;
        json engines = json::array();
        if (cfgs.front().engine_analytic) engines.push_back("analytic");
        if (cfgs.front().engine_mc) engines.push_back("mc");
        m["engines"] = engines;
        m["theta_grid_deg"] = cfgs.front().theta_deg;
        m["mc"] = {{"n_topologies", cfgs.front().mc.n_topologies},
                   {"estimator", cfgs.front().mc.estimator ==
                                         McConfig::Estimator::conditional_analytic
                                     ? "conditional-analytic"
                                     : "fading-realized"},
                   {"batches", cfgs.front().mc.batches}};
    }
    json curves = json::array();
    for (const auto& cfg : cfgs) curves.push_back(curve_json(cfg));
    m["curves"] = curves;
    if (!notes.empty()) m["notes"] = notes;
    return m.dump(2) + "\n";
}

void write_manifest(const std::vector<SweepConfig>& cfgs, const std::string& csv_path,
                    const std::vector<std::string>& notes) {
    const std::string path = csv_path + ".manifest.json";
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot open manifest file: " + path);
    out << manifest_string(cfgs, notes);
}

std::vector<SweepConfig> preset_fig2() {
    std::vector<SweepConfig> cfgs;
    const double lambda = 50.0 / std::numbers::pi;  // mean count 50 in the unit disk
    for (double p : {0.1, 0.5, 1.0}) {
        SweepConfig bpp;
        bpp.process = BppModel{50};
        bpp.radio.p = p;
        bpp.theta_deg = parse_theta_grid("5:180:5");
        bpp.label = "bpp M=50 p=" + fmt9(p);
        cfgs.push_back(bpp);

        SweepConfig ppp = bpp;
        ppp.process = PppModel{lambda};
        ppp.label = "ppp lambda=50/pi p=" + fmt9(p);
        cfgs.push_back(ppp);
    }
    return cfgs;
}

std::vector<SweepConfig> preset_fig3() {
    std::vector<SweepConfig> cfgs;
    const double p = 0.1;
    for (double lambda_p : {1.0, 5.0, 20.0}) {
        for (double sigma : {0.25, 0.5}) {
            SweepConfig cfg;
            cfg.process = TcpModel{lambda_p / p, sigma, 0.0};
            cfg.radio.p = p;
            cfg.theta_deg = parse_theta_grid("5:180:5");
            cfg.label = "tcp lambda'p=" + fmt9(lambda_p) + " sigma=" + fmt9(sigma);
            cfgs.push_back(cfg);
        }
    }
    return cfgs;
}

std::vector<std::string> preset_notes(const std::string& name) {
    if (name == "fig3")
        return {"the (lambda'p, sigma, p) grid is implementer-chosen: the source figure "
                "prints no parameter values"};
    return {};
}

}  // namespace outcorr
