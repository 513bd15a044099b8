#include "spde2m/holder.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "spde2m/parallel.hpp"

namespace spde2m {

Region Region::uniform(int nx, std::vector<double> times) {
    if (nx < 1) throw std::invalid_argument("Region: need at least one spatial point");
    Region r;
    r.x.reserve(static_cast<std::size_t>(nx));
    for (int j = 0; j < nx; ++j)
        r.x.push_back(2.0 * M_PI * static_cast<double>(j) / static_cast<double>(nx));
    r.t = std::move(times);
    return r;
}

double torus_distance(double x, double y) {
    double d = std::fmod(std::abs(x - y), 2.0 * M_PI);
    return std::min(d, 2.0 * M_PI - d);
}

double lp_omega(std::span<const double> values, double p) {
    if (values.empty()) throw std::invalid_argument("lp_omega: empty ensemble");
    if (p < 2.0) throw std::invalid_argument("lp_omega: p must be >= 2");
    double sum = 0.0;
    for (double v : values) sum += std::pow(std::abs(v), p);
    return std::pow(sum / static_cast<double>(values.size()), 1.0 / p);
}

namespace {

void check_region(const Region& region) {
    if (region.x.size() < 2 || region.t.empty())
        throw std::invalid_argument("region needs at least two spatial points and one time");
    const auto strictly_sorted = [](const std::vector<double>& grid) {
        for (std::size_t i = 0; i + 1 < grid.size(); ++i)
            if (!(grid[i] < grid[i + 1])) return false;
        return true;
    };
    if (!strictly_sorted(region.x) || !strictly_sorted(region.t))
        throw std::invalid_argument("region grids must be strictly increasing");
}

double min_gap(const std::vector<double>& grid, double wrap) {
    double g = wrap > 0.0 && grid.size() >= 2
                   ? torus_distance(grid.front(), grid.back())
                   : std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i + 1 < grid.size(); ++i) g = std::min(g, grid[i + 1] - grid[i]);
    return g;
}

/// Mean of |a_i - b_i|^p over paths; the inner loops the pair sweeps live in.
double pair_moment(const double* a, const double* b, std::size_t count, double p) {
    double sum = 0.0;
    if (p == 2.0) {
        for (std::size_t i = 0; i < count; ++i) {
            const double d = a[i] - b[i];
            sum += d * d;
        }
    } else if (p == 4.0) {
        for (std::size_t i = 0; i < count; ++i) {
            const double d = a[i] - b[i];
            const double d2 = d * d;
            sum += d2 * d2;
        }
    } else {
        for (std::size_t i = 0; i < count; ++i) sum += std::pow(std::abs(a[i] - b[i]), p);
    }
    return sum / static_cast<double>(count);
}

}  // namespace

HolderReport holder_seminorm(const PathEnsemble& ens, int k, double delta, double p,
                             const Region& region, bool parabolic, int threads) {
    if (k < 0 || k > 2 * ens.m)
        throw std::invalid_argument("holder_seminorm: order k must lie in [0, 2m]");
    if (!(delta > 0.0 && delta < 1.0))
        throw std::invalid_argument("holder_seminorm: delta must lie in (0,1)");
    if (ens.path_count() == 0) throw std::invalid_argument("holder_seminorm: empty ensemble");
    check_region(region);

    const std::size_t nx = region.x.size();
    const std::size_t nt = region.t.size();
    const std::size_t paths = ens.path_count();
    std::vector<std::size_t> time_idx(nt);
    for (std::size_t ti = 0; ti < nt; ++ti) time_idx[ti] = ens.time_index(region.t[ti]);

    HolderReport report;
    report.params = {k, delta, p, parabolic};
    report.resolution_x = static_cast<int>(nx);
    report.resolution_t = static_cast<int>(nt);

    // values[(ti*nx + xi)*paths + path] for the current derivative order
    std::vector<double> values(nt * nx * paths);
    for (int order = 0; order <= k; ++order) {
        parallel_for(paths, threads, [&](std::size_t begin, std::size_t end) {
            for (std::size_t path = begin; path < end; ++path) {
                for (std::size_t ti = 0; ti < nt; ++ti) {
                    const SpectralField derived =
                        differentiate(ens.field(path, time_idx[ti]), order);
                    const std::vector<double> pointwise = evaluate(derived, region.x);
                    for (std::size_t xi = 0; xi < nx; ++xi)
                        values[(ti * nx + xi) * paths + path] = pointwise[xi];
                }
            }
        });
        double sup = 0.0;
        for (std::size_t point = 0; point < nt * nx; ++point)
            sup = std::max(sup, lp_omega({values.data() + point * paths, paths}, p));
        if (order == 0) report.sup_norm = sup;
        report.sup_norm_all_orders = std::max(report.sup_norm_all_orders, sup);
        // only the top order enters the seminorm; `values` holds it on exit
    }

    const double cell_x = min_gap(region.x, 2.0 * M_PI);
    const double space_cutoff = cell_x * (1.0 - 1e-9);

    // Same-time pairs.
    {
        std::vector<double> best(nt, 0.0);
        parallel_for(nt, threads, [&](std::size_t begin, std::size_t end) {
            for (std::size_t ti = begin; ti < end; ++ti) {
                double local = 0.0;
                for (std::size_t xi = 0; xi < nx; ++xi) {
                    for (std::size_t xj = xi + 1; xj < nx; ++xj) {
                        const double dist = torus_distance(region.x[xi], region.x[xj]);
                        if (dist < space_cutoff) continue;
                        const double moment =
                            pair_moment(values.data() + (ti * nx + xi) * paths,
                                        values.data() + (ti * nx + xj) * paths, paths, p);
                        local = std::max(local,
                                         std::pow(moment, 1.0 / p) / std::pow(dist, delta));
                    }
                }
                best[ti] = local;
            }
        });
        for (double b : best) report.seminorm_space = std::max(report.seminorm_space, b);
    }

    if (parabolic) {
        const double inv_2m = 1.0 / static_cast<double>(2 * ens.m);
        const double cell_t = nt >= 2 ? std::pow(min_gap(region.t, 0.0), inv_2m)
                                      : std::numeric_limits<double>::infinity();
        const double cutoff = std::min(cell_x, cell_t) * (1.0 - 1e-9);
        const std::size_t points = nt * nx;
        std::vector<double> best(points, 0.0);
        parallel_for(points, threads, [&](std::size_t begin, std::size_t end) {
            for (std::size_t a = begin; a < end; ++a) {
                const std::size_t ti = a / nx;
                const std::size_t xi = a % nx;
                double local = 0.0;
                for (std::size_t b = a + 1; b < points; ++b) {
                    const std::size_t tj = b / nx;
                    const std::size_t xj = b % nx;
                    const double dist =
                        torus_distance(region.x[xi], region.x[xj]) +
                        std::pow(region.t[tj] - region.t[ti], inv_2m);
                    if (dist < cutoff) continue;
                    const double moment = pair_moment(values.data() + a * paths,
                                                      values.data() + b * paths, paths, p);
                    local = std::max(local, std::pow(moment, 1.0 / p) / std::pow(dist, delta));
                }
                best[a] = local;
            }
        });
        for (double b : best)
            report.seminorm_parabolic = std::max(report.seminorm_parabolic, b);
    }

    report.full_norm = report.sup_norm_all_orders +
                       (parabolic ? report.seminorm_parabolic : report.seminorm_space);
    return report;
}

double forcing_holder_norm(const std::vector<std::vector<SpectralField>>& channel_fields,
                           int order, double delta, const Region& region) {
    check_region(region);
    if (channel_fields.empty()) return 0.0;
    const std::size_t nx = region.x.size();
    const std::size_t nt = region.t.size();
    const std::size_t channels = channel_fields.size();
    for (const auto& per_time : channel_fields)
        if (per_time.size() != nt)
            throw std::invalid_argument("forcing_holder_norm: fields do not match the region");

    double sup_all = 0.0;
    double seminorm = 0.0;
    std::vector<double> values(nt * nx * channels);
    for (int ord = 0; ord <= order; ++ord) {
        for (std::size_t c = 0; c < channels; ++c) {
            for (std::size_t ti = 0; ti < nt; ++ti) {
                const SpectralField derived = differentiate(channel_fields[c][ti], ord);
                const std::vector<double> pointwise = evaluate(derived, region.x);
                for (std::size_t xi = 0; xi < nx; ++xi)
                    values[(ti * nx + xi) * channels + c] = pointwise[xi];
            }
        }
        for (std::size_t point = 0; point < nt * nx; ++point) {
            double sq = 0.0;
            for (std::size_t c = 0; c < channels; ++c) {
                const double v = values[point * channels + c];
                sq += v * v;
            }
            sup_all = std::max(sup_all, std::sqrt(sq));
        }
    }
    const double cutoff = min_gap(region.x, 2.0 * M_PI) * (1.0 - 1e-9);
    for (std::size_t ti = 0; ti < nt; ++ti) {
        for (std::size_t xi = 0; xi < nx; ++xi) {
            for (std::size_t xj = xi + 1; xj < nx; ++xj) {
                const double dist = torus_distance(region.x[xi], region.x[xj]);
                if (dist < cutoff) continue;
                double sq = 0.0;
                for (std::size_t c = 0; c < channels; ++c) {
                    const double d = values[(ti * nx + xi) * channels + c] -
                                     values[(ti * nx + xj) * channels + c];
                    sq += d * d;
                }
                seminorm = std::max(seminorm, std::sqrt(sq) / std::pow(dist, delta));
            }
        }
    }
    return sup_all + seminorm;
}

SchauderProbe schauder_ratio(const PathEnsemble& ens, const ModelEquation& eq, double delta,
                             double p, const Region& region, int threads) {
    SchauderProbe probe;
    probe.u_report = holder_seminorm(ens, 2 * ens.m, delta, p, region, /*parabolic=*/true,
                                     threads);
    probe.norm_u = probe.u_report.full_norm;

    if (eq.drift_forcing) {
        std::vector<std::vector<SpectralField>> f(1);
        f[0].reserve(region.t.size());
        for (double t : region.t) f[0].push_back(eq.drift_forcing(t));
        probe.norm_f = forcing_holder_norm(f, 0, delta, region);
    }
    if (eq.noise_forcing) {
        std::vector<std::vector<SpectralField>> g;
        for (std::size_t ti = 0; ti < region.t.size(); ++ti) {
            auto per_channel = eq.noise_forcing(region.t[ti]);
            if (g.empty()) g.resize(per_channel.size());
            if (per_channel.size() != g.size())
                throw std::invalid_argument("noise forcing channel count varies over time");
            for (std::size_t c = 0; c < per_channel.size(); ++c)
                g[c].push_back(std::move(per_channel[c]));
        }
        probe.norm_g = forcing_holder_norm(g, ens.m, delta, region);
    }

    const double denominator = probe.norm_f + probe.norm_g;
    if (denominator == 0.0)
        throw std::invalid_argument(
            "schauder_ratio: f and g vanish, so the solution is identically zero; "
            "check the trivial solution directly instead");
    probe.ratio = probe.norm_u / denominator;
    return probe;
}

}  // namespace spde2m
