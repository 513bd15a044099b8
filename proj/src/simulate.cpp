#include "spde2m/simulate.hpp"

#include <cmath>
#include <stdexcept>

#include "spde2m/parallel.hpp"
#include "spde2m/rng.hpp"

namespace spde2m {

double WienerPath::level(int k, std::size_t j) const {
    const auto& inc = increments.at(static_cast<std::size_t>(k));
    double w = 0.0;
    for (std::size_t i = 0; i < j; ++i) w += inc[i];
    return w;
}

namespace {

void check_grid(const std::vector<double>& times) {
    if (times.size() < 2) throw std::invalid_argument("time grid needs at least two points");
    for (std::size_t j = 0; j + 1 < times.size(); ++j)
        if (!(times[j + 1] > times[j]))
            throw std::invalid_argument("time grid must be strictly increasing");
}

}  // namespace

WienerPath make_wiener_path(std::uint64_t seed, std::uint64_t path_index,
                            const std::vector<double>& times, int noise_channels) {
    check_grid(times);
    if (noise_channels < 0) throw std::invalid_argument("noise channel count must be >= 0");
    WienerPath path;
    path.times = times;
    const std::size_t steps = times.size() - 1;
    path.increments.assign(static_cast<std::size_t>(noise_channels),
                           std::vector<double>(steps, 0.0));
    NormalStream stream(seed, path_index);
    for (std::size_t j = 0; j < steps; ++j) {
        const double sqrt_h = std::sqrt(times[j + 1] - times[j]);
        for (int k = 0; k < noise_channels; ++k)
            path.increments[static_cast<std::size_t>(k)][j] = sqrt_h * stream.next();
    }
    return path;
}

std::vector<WienerPath> generate_paths(std::uint64_t seed, std::size_t path_count,
                                       const std::vector<double>& times, int noise_channels) {
    if (path_count < 1) throw std::invalid_argument("path count must be >= 1");
    std::vector<WienerPath> paths;
    paths.reserve(path_count);
    for (std::size_t i = 0; i < path_count; ++i)
        paths.push_back(make_wiener_path(seed, i, times, noise_channels));
    return paths;
}

OperatorSymbol make_symbol(const CoefficientSet& c, int truncation) {
    if (c.dimension() != 1)
        throw std::invalid_argument("make_symbol: the simulator is 1-D (n = 1 coefficients)");
    OperatorSymbol sym;
    const std::size_t width = static_cast<std::size_t>(2 * truncation + 1);
    sym.drift.assign(width, Complex(0.0, 0.0));
    sym.noise.assign(static_cast<std::size_t>(c.noise_count()), std::vector<Complex>(width));
    const double drift_sign = (c.half_order() % 2 == 0) ? -1.0 : 1.0;  // (-1)^{m+1}
    for (int n = -truncation; n <= truncation; ++n) {
        const auto idx = static_cast<std::size_t>(n + truncation);
        Complex a(0.0, 0.0);
        for (const auto& [key, value] : c.drift_entries()) {
            const int q = key.first.order() + key.second.order();
            a += value * unit_imaginary_power(q) * integer_power(n, q);
        }
        sym.drift[idx] = drift_sign * a;
        for (int k = 0; k < c.noise_count(); ++k) {
            Complex b(0.0, 0.0);
            for (const auto& [alpha, value] : c.noise_entries()[static_cast<std::size_t>(k)]) {
                const int q = alpha.order();
                b += value * unit_imaginary_power(q) * integer_power(n, q);
            }
            sym.noise[static_cast<std::size_t>(k)][idx] = b;
        }
    }
    return sym;
}

ModelEquation ModelEquation::leading_order(int m, double mu, int truncation) {
    if (m < 1) throw std::invalid_argument("leading_order: m must be >= 1");
    CoefficientSet c(1, m);
    const MultiIndex lead({m});
    c.set_drift(lead, lead, 1.0);
    c.set_noise(0, lead, mu);
    return ModelEquation(std::move(c), truncation);
}

SpectralField decaying_initial(int m, int truncation) {
    SpectralField f(truncation);
    for (int n = -truncation; n <= truncation; ++n)
        f.mode(n) = std::exp(-integer_power(n, 2 * m));
    return f;
}

std::size_t PathEnsemble::time_index(double t) const {
    for (std::size_t i = 0; i < times.size(); ++i)
        if (std::abs(times[i] - t) <= 1e-9 * std::max(1.0, std::abs(t))) return i;
    throw std::invalid_argument("PathEnsemble: time is not a stored snapshot");
}

namespace {

std::vector<std::size_t> snapshot_indices(const std::vector<double>& grid,
                                          const std::vector<double>& snapshots) {
    std::vector<std::size_t> idx;
    if (snapshots.empty()) {
        idx.push_back(grid.size() - 1);
        return idx;
    }
    for (double t : snapshots) {
        bool found = false;
        for (std::size_t j = 0; j < grid.size(); ++j) {
            if (std::abs(grid[j] - t) <= 1e-9 * std::max(1.0, std::abs(t))) {
                idx.push_back(j);
                found = true;
                break;
            }
        }
        if (!found)
            throw std::invalid_argument("snapshot time is not on the integration grid");
    }
    for (std::size_t i = 0; i + 1 < idx.size(); ++i)
        if (idx[i + 1] <= idx[i])
            throw std::invalid_argument("snapshot times must be strictly increasing");
    return idx;
}

}  // namespace

namespace {

PathEnsemble simulate_model_impl(const ModelEquation& eq, const std::vector<double>& grid,
                                 const SimOptions& opt, const std::vector<WienerPath>* driving);

}  // namespace

PathEnsemble simulate_model(const ModelEquation& eq, const std::vector<double>& grid,
                            const SimOptions& opt) {
    return simulate_model_impl(eq, grid, opt, nullptr);
}

PathEnsemble simulate_model(const ModelEquation& eq, const std::vector<double>& grid,
                            const SimOptions& opt, const std::vector<WienerPath>& driving) {
    if (driving.size() != opt.paths)
        throw std::invalid_argument("simulate_model: need one driving path per sample path");
    for (const auto& path : driving) {
        if (path.times.size() != grid.size())
            throw std::invalid_argument("simulate_model: driving paths must live on the grid");
        if (path.increments.size() != static_cast<std::size_t>(eq.coeffs.noise_count()))
            throw std::invalid_argument("simulate_model: driving channel count mismatch");
    }
    return simulate_model_impl(eq, grid, opt, &driving);
}

namespace {

PathEnsemble simulate_model_impl(const ModelEquation& eq, const std::vector<double>& grid,
                                 const SimOptions& opt, const std::vector<WienerPath>* driving) {
    check_grid(grid);
    if (opt.paths < 1) throw std::invalid_argument("simulate_model: paths must be >= 1");
    const CoefficientSet& c0 = eq.coeffs;
    const int m = c0.half_order();
    const int N = eq.truncation;
    if (!eq.initial.empty() && eq.initial.truncation() != N)
        throw std::invalid_argument("initial state truncation differs from equation");
    const int K = c0.noise_count();
    const std::size_t steps = grid.size() - 1;
    const auto snaps = snapshot_indices(grid, opt.snapshots);

    const bool frozen_coeffs = !eq.coeffs_at;
    OperatorSymbol constant_symbol;
    if (frozen_coeffs) constant_symbol = make_symbol(c0, N);

    // Forcing is projected once per step; x-dependence enters mode-wise.
    std::vector<SpectralField> f_steps;
    std::vector<std::vector<SpectralField>> g_steps;
    f_steps.reserve(steps);
    g_steps.reserve(steps);
    for (std::size_t j = 0; j < steps; ++j) {
        if (eq.drift_forcing) {
            f_steps.push_back(eq.drift_forcing(grid[j]));
            if (f_steps.back().truncation() != N)
                throw std::invalid_argument("drift forcing truncation differs from state");
        }
        if (eq.noise_forcing) {
            g_steps.push_back(eq.noise_forcing(grid[j]));
            if (g_steps.back().size() != static_cast<std::size_t>(K))
                throw std::invalid_argument("noise forcing channel count differs from equation");
            for (const auto& field : g_steps.back())
                if (field.truncation() != N)
                    throw std::invalid_argument("noise forcing truncation differs from state");
        }
    }

    PathEnsemble ens;
    ens.master_seed = opt.seed;
    ens.m = m;
    ens.truncation = N;
    for (std::size_t s : snaps) ens.times.push_back(grid[s]);
    ens.fields.assign(opt.paths, {});

    parallel_for(opt.paths, opt.threads, [&](std::size_t begin, std::size_t end) {
        std::vector<double> dw(static_cast<std::size_t>(K));
        for (std::size_t path = begin; path < end; ++path) {
            SpectralField u = eq.initial.empty() ? SpectralField(N) : eq.initial;
            NormalStream stream(opt.seed, path);
            auto& stored = ens.fields[path];
            stored.reserve(snaps.size());
            std::size_t next_snap = 0;
            while (next_snap < snaps.size() && snaps[next_snap] == 0) {
                stored.push_back(u);
                ++next_snap;
            }
            OperatorSymbol varying;
            for (std::size_t j = 0; j < steps; ++j) {
                const double h = grid[j + 1] - grid[j];
                const double sqrt_h = std::sqrt(h);
                if (!frozen_coeffs) varying = make_symbol(eq.coeffs_at(grid[j]), N);
                const OperatorSymbol& sym = frozen_coeffs ? constant_symbol : varying;
                for (int k = 0; k < K; ++k)
                    dw[static_cast<std::size_t>(k)] =
                        driving ? (*driving)[path].increments[static_cast<std::size_t>(k)][j]
                                : sqrt_h * stream.next();
                const SpectralField* f = eq.drift_forcing ? &f_steps[j] : nullptr;
                const std::vector<SpectralField>* g = eq.noise_forcing ? &g_steps[j] : nullptr;
                for (int n = -N; n <= N; ++n) {
                    const auto idx = static_cast<std::size_t>(n + N);
                    const Complex a = sym.drift[idx];
                    Complex b_squared(0.0, 0.0);
                    Complex b_dw(0.0, 0.0);
                    Complex cross(0.0, 0.0);   // sum_k b_k g_n^k
                    Complex g_dw(0.0, 0.0);    // sum_k g_n^k dw^k
                    for (int k = 0; k < K; ++k) {
                        const Complex b = sym.noise[static_cast<std::size_t>(k)][idx];
                        b_squared += b * b;
                        b_dw += b * dw[static_cast<std::size_t>(k)];
                        if (g) {
                            const Complex gn = (*g)[static_cast<std::size_t>(k)].mode(n);
                            cross += b * gn;
                            g_dw += gn * dw[static_cast<std::size_t>(k)];
                        }
                    }
                    const Complex multiplier = std::exp((a - 0.5 * b_squared) * h + b_dw);
                    Complex inhomogeneous(0.0, 0.0);
                    if (f) inhomogeneous += f->mode(n) * h;
                    // -b*g h is the Ito correction that moves the noise
                    // forcing into the exponential frame; mind the sign.
                    if (g) inhomogeneous += -cross * h + g_dw;
                    u.mode(n) = multiplier * (u.mode(n) + inhomogeneous);
                }
                while (next_snap < snaps.size() && snaps[next_snap] == j + 1) {
                    stored.push_back(u);
                    ++next_snap;
                }
            }
        }
    });
    return ens;
}

}  // namespace

Complex exact_mode(int n, int m, double mu, double t, double w) {
    const double sign = (m % 2 == 0) ? 1.0 : -1.0;  // (-1)^m
    const double decay = -integer_power(n, 2 * m) * (1.0 + t + sign * mu * mu * t / 2.0);
    const Complex noise = mu * unit_imaginary_power(m) * integer_power(n, m) * w;
    return std::exp(decay + noise);
}

namespace {

/// Wiener levels at the snapshot times for one closed-form path.
std::vector<double> wiener_levels(std::uint64_t seed, std::uint64_t path,
                                  const std::vector<double>& times) {
    NormalStream stream(seed, path);
    std::vector<double> levels(times.size());
    double w = 0.0;
    double prev = 0.0;
    for (std::size_t j = 0; j < times.size(); ++j) {
        const double dt = times[j] - prev;
        if (dt < 0.0) throw std::invalid_argument("snapshot times must be non-decreasing");
        w += std::sqrt(dt) * stream.next();
        levels[j] = w;
        prev = times[j];
    }
    return levels;
}

}  // namespace

PathEnsemble exact_ensemble(int m, double mu, int truncation,
                            const std::vector<double>& snapshot_times, std::size_t paths,
                            std::uint64_t seed, int threads) {
    if (paths < 1) throw std::invalid_argument("exact_ensemble: paths must be >= 1");
    if (snapshot_times.empty())
        throw std::invalid_argument("exact_ensemble: need at least one snapshot time");
    PathEnsemble ens;
    ens.master_seed = seed;
    ens.m = m;
    ens.truncation = truncation;
    ens.times = snapshot_times;
    ens.fields.assign(paths, {});
    parallel_for(paths, threads, [&](std::size_t begin, std::size_t end) {
        for (std::size_t path = begin; path < end; ++path) {
            const auto levels = wiener_levels(seed, path, snapshot_times);
            auto& stored = ens.fields[path];
            stored.reserve(snapshot_times.size());
            for (std::size_t j = 0; j < snapshot_times.size(); ++j) {
                SpectralField u(truncation);
                for (int n = -truncation; n <= truncation; ++n)
                    u.mode(n) = exact_mode(n, m, mu, snapshot_times[j], levels[j]);
                stored.push_back(std::move(u));
            }
        }
    });
    return ens;
}

std::vector<std::vector<double>> exact_norm_samples(int m, double mu, int truncation,
                                                    const std::vector<double>& snapshot_times,
                                                    std::size_t paths, std::uint64_t seed,
                                                    int threads) {
    if (paths < 1) throw std::invalid_argument("exact_norm_samples: paths must be >= 1");
    std::vector<std::vector<double>> norms(snapshot_times.size(),
                                           std::vector<double>(paths, 0.0));
    parallel_for(paths, threads, [&](std::size_t begin, std::size_t end) {
        for (std::size_t path = begin; path < end; ++path) {
            const auto levels = wiener_levels(seed, path, snapshot_times);
            for (std::size_t j = 0; j < snapshot_times.size(); ++j) {
                double sum = 0.0;
                for (int n = -truncation; n <= truncation; ++n)
                    sum += std::norm(exact_mode(n, m, mu, snapshot_times[j], levels[j]));
                norms[j][path] = std::sqrt(2.0 * M_PI * sum);
            }
        }
    });
    return norms;
}

}  // namespace spde2m
