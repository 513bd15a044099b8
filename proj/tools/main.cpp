#include <chrono>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "spde2m/coercivity.hpp"
#include "spde2m/holder.hpp"
#include "spde2m/io.hpp"
#include "spde2m/moments.hpp"
#include "spde2m/simulate.hpp"
#include "spde2m/version.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace spde2m;

namespace {

struct GlobalOptions {
    int threads = 1;
    bool quiet = false;
    bool gnuplot_stub = false;
    std::optional<std::uint64_t> seed_override;
};

void say(const GlobalOptions& g, const std::string& line) {
    if (!g.quiet) std::cout << line << "\n";
}

json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open file '" + path + "'");
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument("file '" + path + "' is not valid JSON: " + e.what());
    }
}

int get_int(const json& cfg, const std::string& field, std::optional<int> fallback = {}) {
    if (!cfg.contains(field)) {
        if (fallback) return *fallback;
        throw std::invalid_argument("config: missing field '" + field + "'");
    }
    if (!cfg.at(field).is_number_integer())
        throw std::invalid_argument("config: field '" + field + "' must be an integer");
    return cfg.at(field).get<int>();
}

double get_double(const json& cfg, const std::string& field,
                  std::optional<double> fallback = {}) {
    if (!cfg.contains(field)) {
        if (fallback) return *fallback;
        throw std::invalid_argument("config: missing field '" + field + "'");
    }
    if (!cfg.at(field).is_number())
        throw std::invalid_argument("config: field '" + field + "' must be a number");
    return cfg.at(field).get<double>();
}

std::string timestamp_utc() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t tt = std::chrono::system_clock::to_time_t(now);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&tt));
    return buf;
}

void write_manifest(const fs::path& path, const std::string& command, const json& config,
                    std::uint64_t seed, const GlobalOptions& g, json extra = json::object()) {
    json manifest = {{"tool", "spde2m"},       {"version", kVersion}, {"command", command},
                     {"config", config},       {"seed", seed},        {"threads", g.threads},
                     {"created", timestamp_utc()}};
    manifest.update(extra);
    atomic_write(path, manifest.dump(2) + "\n");
}

fs::path manifest_path_for(const std::string& out) {
    fs::path p(out);
    p.replace_extension(".manifest.json");
    return p;
}

void maybe_gnuplot_stub(const GlobalOptions& g, const std::string& out, const std::string& x,
                        const std::string& y, const std::string& title) {
    if (!g.gnuplot_stub) return;
    std::cout << "# gnuplot stub\n"
              << "set datafile separator comma\n"
              << "set key autotitle columnhead\n"
              << "set title '" << title << "'\n"
              << "plot '" << out << "' using '" << x << "':'" << y << "' with linespoints\n";
}

SpectralField field_from_mode_list(const json& list, int truncation,
                                   const std::string& field_name) {
    SpectralField f(truncation);
    for (const auto& entry : list) {
        const int n = get_int(entry, "n");
        if (std::abs(n) > truncation)
            throw std::invalid_argument("config: field '" + field_name + "' has mode |n| > N");
        f.mode(n) = Complex(get_double(entry, "re", 0.0), get_double(entry, "im", 0.0));
    }
    return f;
}

/// Common simulation block of the `simulate` and `schauder-probe` configs.
struct SimulationSetup {
    ModelEquation equation;
    int m = 1;
    int truncation = 16;
    double horizon = 1.0;
    int steps = 512;
    std::size_t paths = 10000;
    std::uint64_t seed = 1;
    std::vector<double> grid;
};

SimulationSetup parse_simulation_config(const json& cfg, const GlobalOptions& g) {
    const int N = get_int(cfg, "N", 16);
    if (N < 1) throw std::invalid_argument("config: field 'N' must be >= 1");

    std::optional<ModelEquation> eq;
    int m = 0;
    if (cfg.contains("coeffs")) {
        CoefficientSet coeffs = CoefficientSet::from_json(cfg.at("coeffs").dump());
        if (coeffs.dimension() != 1)
            throw std::invalid_argument("config: field 'coeffs' must be 1-D for simulation");
        m = coeffs.half_order();
        eq.emplace(std::move(coeffs), N);
    } else {
        m = get_int(cfg, "m");
        if (m < 1) throw std::invalid_argument("config: field 'm' must be >= 1");
        const double mu = get_double(cfg, "mu");
        eq.emplace(ModelEquation::leading_order(m, mu, N));
    }

    SimulationSetup setup{std::move(*eq), m, N, 0.0, 0, 0, 0, {}};
    setup.horizon = get_double(cfg, "T");
    if (!(setup.horizon > 0.0)) throw std::invalid_argument("config: field 'T' must be > 0");
    setup.steps = get_int(cfg, "steps", 512);
    if (setup.steps < 1) throw std::invalid_argument("config: field 'steps' must be >= 1");
    const int paths = get_int(cfg, "paths", 10000);
    if (paths < 1) throw std::invalid_argument("config: field 'paths' must be >= 1");
    setup.paths = static_cast<std::size_t>(paths);
    const int seed = get_int(cfg, "seed", 1);
    if (seed < 0) throw std::invalid_argument("config: field 'seed' must be >= 0");
    setup.seed = g.seed_override.value_or(static_cast<std::uint64_t>(seed));

    setup.grid.reserve(static_cast<std::size_t>(setup.steps) + 1);
    for (int j = 0; j <= setup.steps; ++j)
        setup.grid.push_back(setup.horizon * static_cast<double>(j) /
                             static_cast<double>(setup.steps));

    if (cfg.contains("initial") && cfg.at("initial").is_array()) {
        setup.equation.initial = field_from_mode_list(cfg.at("initial"), N, "initial");
    } else {
        std::string initial = cfg.contains("coeffs") ? "zero" : "example";
        if (cfg.contains("initial")) {
            if (!cfg.at("initial").is_string())
                throw std::invalid_argument(
                    "config: field 'initial' must be \"example\", \"zero\", or a mode list");
            initial = cfg.at("initial").get<std::string>();
        }
        if (initial == "example") {
            setup.equation.initial = decaying_initial(m, N);
        } else if (initial == "zero") {
            setup.equation.initial = SpectralField(N);
        } else {
            throw std::invalid_argument(
                "config: field 'initial' must be \"example\", \"zero\", or a mode list");
        }
    }

    if (cfg.contains("f_modes")) {
        SpectralField f = field_from_mode_list(cfg.at("f_modes"), N, "f_modes");
        setup.equation.drift_forcing = [f](double) { return f; };
    }
    if (cfg.contains("g_modes")) {
        const auto& channels = cfg.at("g_modes");
        if (!channels.is_array())
            throw std::invalid_argument("config: field 'g_modes' must be an array of channels");
        std::vector<SpectralField> gs;
        for (const auto& channel : channels)
            gs.push_back(field_from_mode_list(channel, N, "g_modes"));
        if (static_cast<int>(gs.size()) != setup.equation.coeffs.noise_count())
            throw std::invalid_argument(
                "config: field 'g_modes' must have one channel per noise term");
        setup.equation.noise_forcing = [gs](double) { return gs; };
    }
    return setup;
}

// ---------------------------------------------------------------------------
// coercivity

int run_coercivity_check(const GlobalOptions& g, const std::string& coeffs_path, double p,
                         const std::string& mode_name, const std::string& out) {
    const CoefficientSet coeffs = CoefficientSet::from_json(load_json_file(coeffs_path).dump());
    const CoercivityMode mode =
        mode_name == "standard" ? CoercivityMode::standard : CoercivityMode::p_dependent;
    const CoercivityVerdict verdict = lambda_star(coeffs, p, mode);
    std::cout << "lambda_star=" << format_double(verdict.lambda_star)
              << " c_p=" << format_double(verdict.c_p)
              << " holds=" << (verdict.holds ? "true" : "false") << "\n";
    if (!out.empty()) {
        json result = {{"lambda_star", verdict.lambda_star},
                       {"c_p", verdict.c_p},
                       {"holds", verdict.holds},
                       {"p", verdict.p},
                       {"mode", mode_name}};
        const auto crit = critical_p(coeffs);
        result["critical_p"] = crit ? json(*crit) : json("none");
        atomic_write(out, result.dump(2) + "\n");
        write_manifest(manifest_path_for(out), "coercivity check",
                       {{"coeffs", coeffs_path}, {"p", p}, {"mode", mode_name}}, 0, g);
    }
    return 0;
}

int run_coercivity_sweep(const GlobalOptions& g, const std::string& coeffs_path, double p_min,
                         double p_max, int steps, const std::string& mode_name,
                         const std::string& out) {
    if (p_min < 2.0) throw std::invalid_argument("--p-min must be >= 2");
    if (p_max < p_min) throw std::invalid_argument("--p-max must be >= --p-min");
    if (steps < 2) throw std::invalid_argument("--steps must be >= 2");
    const CoefficientSet coeffs = CoefficientSet::from_json(load_json_file(coeffs_path).dump());
    const CoercivityMode mode =
        mode_name == "standard" ? CoercivityMode::standard : CoercivityMode::p_dependent;

    std::string csv = "p,c_p,lambda_star,holds\n";
    for (int i = 0; i < steps; ++i) {
        const double p =
            p_min + (p_max - p_min) * static_cast<double>(i) / static_cast<double>(steps - 1);
        const CoercivityVerdict verdict = lambda_star(coeffs, p, mode);
        csv += format_double(p) + "," + format_double(verdict.c_p) + "," +
               format_double(verdict.lambda_star) + "," + (verdict.holds ? "true" : "false") +
               "\n";
    }
    atomic_write(out, csv);
    const auto crit = critical_p(coeffs);
    write_manifest(manifest_path_for(out), "coercivity sweep",
                   {{"coeffs", coeffs_path},
                    {"p_min", p_min},
                    {"p_max", p_max},
                    {"steps", steps},
                    {"mode", mode_name}},
                   0, g, {{"critical_p", crit ? json(*crit) : json("none")}});
    say(g, "wrote " + out);
    maybe_gnuplot_stub(g, out, "p", "lambda_star", "coercivity margin");
    return 0;
}

// ---------------------------------------------------------------------------
// simulate

int run_simulate(const GlobalOptions& g, const std::string& config_path,
                 const std::string& out_dir) {
    const json cfg = load_json_file(config_path);
    SimulationSetup setup = parse_simulation_config(cfg, g);

    std::vector<double> snapshots;
    if (cfg.contains("snapshots")) {
        if (!cfg.at("snapshots").is_array())
            throw std::invalid_argument("config: field 'snapshots' must be an array of times");
        snapshots = cfg.at("snapshots").get<std::vector<double>>();
    } else {
        snapshots = {setup.horizon};
    }

    SimOptions opt;
    opt.paths = setup.paths;
    opt.seed = setup.seed;
    opt.snapshots = snapshots;
    opt.threads = g.threads;
    const PathEnsemble ens = simulate_model(setup.equation, setup.grid, opt);

    fs::create_directories(out_dir);
    json snapshot_list = json::array();
    for (std::size_t s = 0; s < ens.times.size(); ++s) {
        std::string csv = "path,n,re,im\n";
        for (std::size_t path = 0; path < ens.path_count(); ++path) {
            const SpectralField& u = ens.field(path, s);
            for (int n = -u.truncation(); n <= u.truncation(); ++n) {
                csv += std::to_string(path) + "," + std::to_string(n) + "," +
                       format_double(u.mode(n).real()) + "," + format_double(u.mode(n).imag()) +
                       "\n";
            }
        }
        const std::string name = "snapshot_" + std::to_string(s) + ".csv";
        atomic_write(fs::path(out_dir) / name, csv);
        snapshot_list.push_back({{"index", s}, {"t", ens.times[s]}, {"file", name}});
    }
    write_manifest(fs::path(out_dir) / "manifest.json", "simulate", cfg, setup.seed, g,
                   {{"snapshots_written", snapshot_list}});
    say(g, "wrote " + std::to_string(ens.times.size()) + " snapshot(s) to " + out_dir);
    return 0;
}

// ---------------------------------------------------------------------------
// sharpness

int run_sharpness(const GlobalOptions& g, int m, double mu, double p,
                  const std::string& t_grid_text, const std::string& paths_text, int truncation,
                  std::uint64_t seed, const std::string& out) {
    const std::vector<double> ts = parse_time_grid(t_grid_text);
    std::vector<std::size_t> counts = parse_count_list(paths_text);
    for (std::size_t i = 0; i + 1 < counts.size(); ++i)
        if (counts[i + 1] <= counts[i])
            throw std::invalid_argument("--paths must be strictly increasing");
    for (double t : ts)
        if (t < 0.0) throw std::invalid_argument("--t-grid times must be >= 0");
    if (truncation < 1) throw std::invalid_argument("--N must be >= 1");
    (void)finiteness(m, mu, p, ts.front());  // validates m, mu, p up front
    seed = g.seed_override.value_or(seed);

    const auto norms = exact_norm_samples(m, mu, truncation, ts, counts.back(), seed, g.threads);

    std::string csv = "t,p,criterion,verdict,closed_form_l2,mc_estimate,mc_stderr,paths\n";
    for (std::size_t ti = 0; ti < ts.size(); ++ti) {
        // nested prefixes of one stream
        for (std::size_t count : counts) {
            const MomentReport report =
                moment_report(m, mu, p, ts[ti], {norms[ti].data(), count});
            csv += format_double(ts[ti]) + "," + format_double(p) + "," +
                   format_double(report.criterion.criterion_value) + "," +
                   to_string(report.criterion.verdict) + "," +
                   format_double(report.closed_form_energy) + "," +
                   format_double(report.mc->value) + "," +
                   format_double(report.mc->std_error) + "," + std::to_string(count) + "\n";
        }
    }
    atomic_write(out, csv);
    write_manifest(manifest_path_for(out), "sharpness",
                   {{"m", m},
                    {"mu", mu},
                    {"p", p},
                    {"t_grid", t_grid_text},
                    {"paths", paths_text},
                    {"N", truncation}},
                   seed, g);
    say(g, "wrote " + out);
    maybe_gnuplot_stub(g, out, "t", "mc_estimate", "moment estimates");
    return 0;
}

// ---------------------------------------------------------------------------
// schauder-probe

int run_schauder_probe(const GlobalOptions& g, const std::string& config_path, double delta,
                       double p, const std::string& out) {
    if (!(delta > 0.0 && delta < 1.0))
        throw std::invalid_argument("--delta must lie in (0,1)");
    if (p < 2.0) throw std::invalid_argument("--p must be >= 2");
    const json cfg = load_json_file(config_path);
    SimulationSetup setup = parse_simulation_config(cfg, g);
    // the ratio is probed for the zero-start problem; a nonzero start would
    // add a homogeneous part that the free-term norms cannot see
    if (cfg.contains("initial") && cfg.at("initial") != json("zero"))
        throw std::invalid_argument(
            "config: field 'initial' must be \"zero\" (or absent) for schauder-probe");
    setup.equation.initial = SpectralField(setup.truncation);

    std::vector<int> resolutions = {32, 64, 128};
    if (cfg.contains("resolutions_x")) {
        if (!cfg.at("resolutions_x").is_array())
            throw std::invalid_argument("config: field 'resolutions_x' must be an array");
        resolutions = cfg.at("resolutions_x").get<std::vector<int>>();
    }
    for (int r : resolutions)
        if (r < 2) throw std::invalid_argument("config: field 'resolutions_x' entries must be >= 2");
    const int resolution_t = get_int(cfg, "resolution_t", 8);
    if (resolution_t < 1)
        throw std::invalid_argument("config: field 'resolution_t' must be >= 1");
    if (setup.steps % resolution_t != 0)
        throw std::invalid_argument("config: field 'resolution_t' must divide 'steps'");
    std::vector<std::size_t> path_counts = {1000, 10000};
    if (cfg.contains("paths_list")) {
        if (!cfg.at("paths_list").is_array())
            throw std::invalid_argument("config: field 'paths_list' must be an array");
        std::vector<long long> raw = cfg.at("paths_list").get<std::vector<long long>>();
        path_counts.clear();
        for (long long v : raw) {
            if (v < 1)
                throw std::invalid_argument("config: field 'paths_list' entries must be >= 1");
            path_counts.push_back(static_cast<std::size_t>(v));
        }
    }

    std::vector<double> probe_times;
    for (int i = 1; i <= resolution_t; ++i)
        probe_times.push_back(setup.horizon * static_cast<double>(i) /
                              static_cast<double>(resolution_t));

    std::string csv = "resolution_x,resolution_t,paths,norm_u,norm_f,norm_g,ratio\n";
    for (std::size_t paths : path_counts) {
        SimOptions opt;
        opt.paths = paths;
        opt.seed = setup.seed;
        opt.snapshots = probe_times;
        opt.threads = g.threads;
        const PathEnsemble ens = simulate_model(setup.equation, setup.grid, opt);
        for (int res : resolutions) {
            const Region region = Region::uniform(res, probe_times);
            const SchauderProbe probe =
                schauder_ratio(ens, setup.equation, delta, p, region, g.threads);
            csv += std::to_string(res) + "," + std::to_string(resolution_t) + "," +
                   std::to_string(paths) + "," + format_double(probe.norm_u) + "," +
                   format_double(probe.norm_f) + "," + format_double(probe.norm_g) + "," +
                   format_double(probe.ratio) + "\n";
        }
    }
    atomic_write(out, csv);
    write_manifest(manifest_path_for(out), "schauder-probe",
                   {{"config", cfg}, {"delta", delta}, {"p", p}}, setup.seed, g);
    say(g, "wrote " + out);
    maybe_gnuplot_stub(g, out, "resolution_x", "ratio", "Schauder ratio stability");
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"spectral toolkit for 2m-order parabolic stochastic PDEs on the 1-D torus"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);
    app.fallthrough();  // global flags may follow the subcommand

    GlobalOptions g;
    app.add_option("--threads", g.threads, "worker threads (results are thread-count invariant)")
        ->check(CLI::PositiveNumber);
    app.add_flag("--quiet", g.quiet, "suppress progress lines");
    app.add_flag("--gnuplot-stub", g.gnuplot_stub, "print a gnuplot script for the output CSV");
    std::uint64_t seed_flag = 0;
    auto* seed_opt = app.add_option("--seed", seed_flag, "override the configured seed");

    // coercivity
    auto* coercivity_cmd = app.add_subcommand("coercivity", "decide the coercivity conditions");
    coercivity_cmd->require_subcommand(1);
    std::string co_coeffs, co_mode = "pdep", co_out;
    double co_p = 2.0;
    auto* check_cmd = coercivity_cmd->add_subcommand("check", "single (p, mode) decision");
    check_cmd->add_option("--coeffs", co_coeffs, "coefficient JSON file")->required();
    check_cmd->add_option("--p", co_p, "integrability index p")->required();
    check_cmd->add_option("--mode", co_mode, "pdep or standard")
        ->check(CLI::IsMember({"pdep", "standard"}));
    check_cmd->add_option("--out", co_out, "optional JSON result file");

    std::string sw_coeffs, sw_mode = "pdep", sw_out;
    double sw_pmin = 2.0, sw_pmax = 10.0;
    int sw_steps = 81;
    auto* sweep_cmd = coercivity_cmd->add_subcommand("sweep", "margin over a p range");
    sweep_cmd->add_option("--coeffs", sw_coeffs, "coefficient JSON file")->required();
    sweep_cmd->add_option("--p-min", sw_pmin, "lower end of the p range");
    sweep_cmd->add_option("--p-max", sw_pmax, "upper end of the p range");
    sweep_cmd->add_option("--steps", sw_steps, "number of sweep points");
    sweep_cmd->add_option("--mode", sw_mode, "pdep or standard")
        ->check(CLI::IsMember({"pdep", "standard"}));
    sweep_cmd->add_option("--out", sw_out, "output CSV")->required();

    // simulate
    std::string sim_config, sim_out;
    auto* simulate_cmd = app.add_subcommand("simulate", "sample solution trajectories");
    simulate_cmd->add_option("--config", sim_config, "JSON configuration")->required();
    simulate_cmd->add_option("--out", sim_out, "output directory")->required();

    // sharpness
    int sh_m = 2, sh_N = 16;
    double sh_mu = 1.0, sh_p = 4.0;
    std::string sh_tgrid = "0:4:0.25", sh_paths = "1000,10000,100000", sh_out;
    std::uint64_t sh_seed = 1;
    auto* sharp_cmd = app.add_subcommand("sharpness", "moment finiteness scan");
    sharp_cmd->add_option("--m", sh_m, "half-order of the operator")->required();
    sharp_cmd->add_option("--mu", sh_mu, "noise strength")->required();
    sharp_cmd->add_option("--p", sh_p, "moment index")->required();
    sharp_cmd->add_option("--t-grid", sh_tgrid, "times start:stop:step");
    sharp_cmd->add_option("--paths", sh_paths, "increasing path counts, comma separated");
    sharp_cmd->add_option("--seed", sh_seed, "master seed");
    sharp_cmd->add_option("--N", sh_N, "mode truncation of the sampler");
    sharp_cmd->add_option("--out", sh_out, "output CSV")->required();

    // schauder-probe
    std::string probe_config, probe_out;
    double probe_delta = 0.5, probe_p = 2.0;
    auto* probe_cmd = app.add_subcommand("schauder-probe", "Hoelder-ratio stability probe");
    probe_cmd->add_option("--config", probe_config, "JSON configuration")->required();
    probe_cmd->add_option("--delta", probe_delta, "Hoelder exponent in (0,1)");
    probe_cmd->add_option("--p", probe_p, "moment index");
    probe_cmd->add_option("--out", probe_out, "output CSV")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }
    if (*seed_opt) g.seed_override = seed_flag;

    try {
        if (check_cmd->parsed()) return run_coercivity_check(g, co_coeffs, co_p, co_mode, co_out);
        if (sweep_cmd->parsed())
            return run_coercivity_sweep(g, sw_coeffs, sw_pmin, sw_pmax, sw_steps, sw_mode, sw_out);
        if (simulate_cmd->parsed()) return run_simulate(g, sim_config, sim_out);
        if (sharp_cmd->parsed())
            return run_sharpness(g, sh_m, sh_mu, sh_p, sh_tgrid, sh_paths, sh_N, sh_seed, sh_out);
        if (probe_cmd->parsed())
            return run_schauder_probe(g, probe_config, probe_delta, probe_p, probe_out);
        std::cerr << "error: unknown command\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "runtime error: " << e.what() << "\n";
        return 1;
    }
}
