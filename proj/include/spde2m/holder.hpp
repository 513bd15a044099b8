#pragma once

#include <span>
#include <vector>

#include "spde2m/simulate.hpp"

namespace spde2m {

/// Discrete stand-in for a space-time cylinder: spatial points on the torus
/// and time points taken from the ensemble snapshots. Reports carry the
/// grid, so an under-resolved sup stays visible to the caller. 64 spatial
/// by 32 temporal points is a sensible standalone default at desk scale.
struct Region {
    std::vector<double> x;
    std::vector<double> t;

    /// nx equispaced torus points 2*pi*j/nx plus the given times.
    static Region uniform(int nx, std::vector<double> times);
};

/// Torus distance min(|x-y|, 2pi-|x-y|).
double torus_distance(double x, double y);

/// (mean over paths of |value|^p)^{1/p}.
double lp_omega(std::span<const double> values, double p);

struct HolderParams {
    int k = 0;          // derivative order of the seminorm
    double delta = 0.5; // Hoelder exponent, in (0,1)
    double p = 2.0;
    bool parabolic = false;
};

struct HolderReport {
    double sup_norm = 0.0;           // sup over the region of the order-0 Lp norm
    double sup_norm_all_orders = 0.0;  // max over derivative orders <= k
    double seminorm_space = 0.0;       // same-time pairs
    double seminorm_parabolic = 0.0;   // all pairs under |x| + |t|^{1/2m}; 0 unless requested
    double full_norm = 0.0;
    HolderParams params;
    int resolution_x = 0;
    int resolution_t = 0;
};

/// Discrete Hoelder seminorm of the order-k spectral derivative over the
/// region: sup over grid pairs of the Lp(omega) norm of the difference
/// divided by distance^delta. Pairs closer than one grid cell are skipped.
/// With `parabolic`, space-time pairs under the anisotropic modulus are
/// included as well. full_norm adds the sup norms of orders <= k.
HolderReport holder_seminorm(const PathEnsemble& ens, int k, double delta, double p,
                             const Region& region, bool parabolic, int threads = 1);

/// Vector-valued deterministic forcing norms: |g|_m + [g]_{m+delta} with the
/// Euclidean norm across noise channels at each point.
double forcing_holder_norm(const std::vector<std::vector<SpectralField>>& channel_fields,
                           int order, double delta, const Region& region);

struct SchauderProbe {
    double norm_u = 0.0;   // parabolic full norm at order 2m
    double norm_f = 0.0;   // spatial full norm at order 0
    double norm_g = 0.0;   // spatial full norm at order m
    double ratio = 0.0;
    HolderReport u_report;
};

/// Ratio of the solution's order-2m parabolic Hoelder norm to the free-term
/// norms, all estimated on the region. Rejects a zero denominator (the
/// unforced problem has the zero solution).
SchauderProbe schauder_ratio(const PathEnsemble& ens, const ModelEquation& eq, double delta,
                             double p, const Region& region, int threads = 1);

}  // namespace spde2m
