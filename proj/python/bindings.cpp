#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "spde2m/coercivity.hpp"
#include "spde2m/holder.hpp"
#include "spde2m/moments.hpp"
#include "spde2m/simulate.hpp"
#include "spde2m/version.hpp"

namespace py = pybind11;
using namespace spde2m;

namespace {

SpectralField field_from_modes(const std::vector<Complex>& modes) {
    if (modes.size() % 2 != 1)
        throw std::invalid_argument("mode list must have odd length (n = -N..N)");
    SpectralField f(static_cast<int>(modes.size() / 2));
    for (std::size_t i = 0; i < modes.size(); ++i)
        f.mode(static_cast<int>(i) - f.truncation()) = modes[i];
    return f;
}

PathEnsemble ensemble_from_modes(const std::vector<std::vector<std::vector<Complex>>>& paths,
                                 int m, const std::vector<double>& times) {
    if (paths.empty()) throw std::invalid_argument("need at least one path");
    PathEnsemble ens;
    ens.m = m;
    ens.times = times;
    for (const auto& path : paths) {
        if (path.size() != times.size())
            throw std::invalid_argument("each path needs one mode list per time");
        std::vector<SpectralField> fields;
        for (const auto& modes : path) fields.push_back(field_from_modes(modes));
        ens.fields.push_back(std::move(fields));
    }
    ens.truncation = ens.fields[0][0].truncation();
    return ens;
}

py::dict verdict_to_dict(const CoercivityVerdict& v) {
    py::dict d;
    d["lambda_star"] = v.lambda_star;
    d["c_p"] = v.c_p;
    d["holds"] = v.holds;
    d["p"] = v.p;
    d["mode"] = v.mode == CoercivityMode::standard ? "standard" : "pdep";
    return d;
}

py::dict report_to_dict(const HolderReport& r) {
    py::dict d;
    d["sup_norm"] = r.sup_norm;
    d["sup_norm_all_orders"] = r.sup_norm_all_orders;
    d["seminorm_space"] = r.seminorm_space;
    d["seminorm_parabolic"] = r.seminorm_parabolic;
    d["full_norm"] = r.full_norm;
    return d;
}

}  // namespace

PYBIND11_MODULE(_spde2m, m) {
    m.doc() = "spectral toolkit for 2m-order parabolic stochastic PDEs on the 1-D torus";
    m.attr("__version__") = kVersion;

    m.def(
        "enumerate_indices",
        [](int n, int order) {
            std::vector<std::vector<int>> out;
            for (const MultiIndex& idx : enumerate_indices(n, order)) out.push_back(idx.entries);
            return out;
        },
        py::arg("n"), py::arg("m"));

    m.def("multiplier", &multiplier, py::arg("m"), py::arg("p"));
    m.def(
        "lambda_star",
        [](const std::string& coeffs_json, double p, const std::string& mode) {
            const CoefficientSet c = CoefficientSet::from_json(coeffs_json);
            const CoercivityMode cm =
                mode == "standard" ? CoercivityMode::standard : CoercivityMode::p_dependent;
            return verdict_to_dict(lambda_star(c, p, cm));
        },
        py::arg("coeffs_json"), py::arg("p"), py::arg("mode") = "pdep");
    m.def(
        "critical_p",
        [](const std::string& coeffs_json) -> py::object {
            const auto p = critical_p(CoefficientSet::from_json(coeffs_json));
            if (!p) return py::none();
            return py::float_(*p);
        },
        py::arg("coeffs_json"));

    m.def(
        "differentiate",
        [](const std::vector<Complex>& modes, int order) {
            return differentiate(field_from_modes(modes), order).modes();
        },
        py::arg("modes"), py::arg("order"));
    m.def(
        "l2_norm", [](const std::vector<Complex>& modes) { return l2_norm(field_from_modes(modes)); },
        py::arg("modes"));
    m.def(
        "evaluate",
        [](const std::vector<Complex>& modes, const std::vector<double>& points) {
            return evaluate(field_from_modes(modes), points);
        },
        py::arg("modes"), py::arg("points"));

    m.def(
        "finiteness",
        [](int m_, double mu, double p, double t) {
            const MomentCriterion crit = finiteness(m_, mu, p, t);
            py::dict d;
            d["verdict"] = to_string(crit.verdict);
            d["criterion_value"] = crit.criterion_value;
            d["epsilon"] = crit.epsilon;
            d["blowup_time"] = crit.blowup_time ? py::object(py::float_(*crit.blowup_time))
                                                : py::object(py::none());
            return d;
        },
        py::arg("m"), py::arg("mu"), py::arg("p"), py::arg("t"));
    m.def("closed_form_l2", &closed_form_l2, py::arg("m"), py::arg("mu"), py::arg("t"),
          py::arg("truncation") = -1);
    m.def("closed_form_p_moment_odd", &closed_form_p_moment_odd, py::arg("m"), py::arg("mu"),
          py::arg("p"), py::arg("t"), py::arg("truncation") = -1);

    m.def(
        "leading_order_coeffs",
        [](int m_, double mu) { return ModelEquation::leading_order(m_, mu, 1).coeffs.to_json(); },
        py::arg("m"), py::arg("mu"));

    m.def(
        "simulate_modes",
        [](const std::string& coeffs_json, int truncation, double horizon, int steps,
           std::size_t paths, std::uint64_t seed, const std::vector<double>& snapshots,
           const std::vector<Complex>& initial_modes, const std::vector<Complex>& f_modes,
           const std::vector<std::vector<Complex>>& g_modes, int threads) {
            ModelEquation eq(CoefficientSet::from_json(coeffs_json), truncation);
            if (!initial_modes.empty()) eq.initial = field_from_modes(initial_modes);
            if (!f_modes.empty()) {
                const SpectralField f = field_from_modes(f_modes);
                eq.drift_forcing = [f](double) { return f; };
            }
            if (!g_modes.empty()) {
                std::vector<SpectralField> g;
                for (const auto& channel : g_modes) g.push_back(field_from_modes(channel));
                eq.noise_forcing = [g](double) { return g; };
            }
            if (steps < 1) throw std::invalid_argument("steps must be >= 1");
            std::vector<double> grid;
            grid.reserve(static_cast<std::size_t>(steps) + 1);
            for (int j = 0; j <= steps; ++j)
                grid.push_back(horizon * static_cast<double>(j) / static_cast<double>(steps));
            SimOptions opt;
            opt.paths = paths;
            opt.seed = seed;
            opt.snapshots = snapshots;
            opt.threads = threads;
            const PathEnsemble ens = simulate_model(eq, grid, opt);
            std::vector<std::vector<std::vector<Complex>>> out(ens.path_count());
            for (std::size_t i = 0; i < ens.path_count(); ++i)
                for (const auto& field : ens.fields[i]) out[i].push_back(field.modes());
            return out;
        },
        py::arg("coeffs_json"), py::arg("truncation"), py::arg("horizon"), py::arg("steps"),
        py::arg("paths"), py::arg("seed"), py::arg("snapshots"),
        py::arg("initial_modes") = std::vector<Complex>{},
        py::arg("f_modes") = std::vector<Complex>{},
        py::arg("g_modes") = std::vector<std::vector<Complex>>{}, py::arg("threads") = 1);

    m.def("exact_mode", &exact_mode, py::arg("n"), py::arg("m"), py::arg("mu"), py::arg("t"),
          py::arg("w"));
    m.def("exact_norm_samples", &exact_norm_samples, py::arg("m"), py::arg("mu"),
          py::arg("truncation"), py::arg("times"), py::arg("paths"), py::arg("seed"),
          py::arg("threads") = 1);
    m.def(
        "wiener_increments",
        [](std::uint64_t seed, std::uint64_t path, const std::vector<double>& times, int channels) {
            return make_wiener_path(seed, path, times, channels).increments;
        },
        py::arg("seed"), py::arg("path"), py::arg("times"), py::arg("channels") = 1);

    m.def(
        "divergence_scan",
        [](int m_, double mu, double p, double t, int truncation,
           const std::vector<std::size_t>& counts, std::uint64_t seed, int threads) {
            const DivergenceScan scan =
                divergence_scan(m_, mu, p, t, truncation, counts, seed, threads);
            py::dict d;
            d["counts"] = scan.counts;
            d["estimates"] = scan.estimates;
            d["ratios"] = scan.ratios;
            d["trend"] = scan.trend == DivergenceScan::Trend::diverging ? "diverging"
                         : scan.trend == DivergenceScan::Trend::stable  ? "stable"
                                                                        : "inconclusive";
            return d;
        },
        py::arg("m"), py::arg("mu"), py::arg("p"), py::arg("t"), py::arg("truncation"),
        py::arg("counts"), py::arg("seed"), py::arg("threads") = 1);

    m.def(
        "mc_p_moment",
        [](const std::vector<double>& norm_samples, double p) {
            const McEstimate est = mc_p_moment({norm_samples.data(), norm_samples.size()}, p);
            py::dict d;
            d["value"] = est.value;
            d["std_error"] = est.std_error;
            d["paths"] = est.paths;
            return d;
        },
        py::arg("norm_samples"), py::arg("p"));
    m.def(
        "lp_omega",
        [](const std::vector<double>& values, double p) {
            return lp_omega({values.data(), values.size()}, p);
        },
        py::arg("values"), py::arg("p"));
    m.def(
        "holder_report",
        [](const std::vector<std::vector<std::vector<Complex>>>& paths, int m_,
           const std::vector<double>& times, int k, double delta, double p, int nx,
           bool parabolic) {
            const PathEnsemble ens = ensemble_from_modes(paths, m_, times);
            const Region region = Region::uniform(nx, times);
            return report_to_dict(holder_seminorm(ens, k, delta, p, region, parabolic));
        },
        py::arg("paths"), py::arg("m"), py::arg("times"), py::arg("k"), py::arg("delta"),
        py::arg("p"), py::arg("nx"), py::arg("parabolic") = false);
}
