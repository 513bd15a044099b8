#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "spde2m/simulate.hpp"

namespace spde2m {

enum class Finiteness { finite, infinite };

std::string to_string(Finiteness f);

/// Exact finiteness verdict for the p-th moment of the benchmark solution's
/// L2 norm. For even m the sign of `criterion_value` decides; for odd m the
/// moment is finite whenever mu^2 < 2 and `criterion_value` reports the
/// excess (p-1)mu^2 - 2 for reference.
struct MomentCriterion {
    Finiteness verdict = Finiteness::finite;
    double criterion_value = 0.0;
    double epsilon = 0.0;                 // (p-1) mu^2 - 2
    std::optional<double> blowup_time;    // 2/epsilon when even m and epsilon > 0
};

MomentCriterion finiteness(int m, double mu, double p, double t);

/// 2 + 2t + (-1)^m mu^2 t: the decay rate of the squared mode modulus.
double modulus_decay(int m, double mu, double t);

/// Odd m only: (2pi)^{p/2} (sum_n exp{-n^{2m} (2 + (2 - mu^2) t)})^{p/2}.
/// truncation < 0 picks the smallest N whose analytic tail bound is below
/// 1e-12 of the partial sum; an insufficient explicit N is rejected.
double closed_form_p_moment_odd(int m, double mu, double p, double t, int truncation = -1);

/// Both parities: E|u_n|^2 = exp{-n^{2m}(2 + (2 - mu^2) t)}, summed and
/// scaled by 2pi. Same truncation semantics as above.
double closed_form_l2(int m, double mu, double t, int truncation = -1);

struct McEstimate {
    double value = 0.0;
    double std_error = 0.0;  // may be meaningless when the 2p-th moment blows up
    std::size_t paths = 0;
};

/// Plug-in estimator over the stored ensemble: mean of ||u(t)||^p.
McEstimate mc_p_moment(const PathEnsemble& ens, double p, double t);

McEstimate mc_p_moment(std::span<const double> norm_samples, double p);

/// Plug-in estimate over nested path prefixes of one stream. An infinite
/// moment cannot be observed directly; sustained growth across decades is
/// the practical signature, stabilization the finite-regime one.
struct DivergenceScan {
    enum class Trend { diverging, stable, inconclusive };

    std::vector<std::size_t> counts;
    std::vector<double> estimates;
    std::vector<double> ratios;  // estimates[i+1] / estimates[i]
    Trend trend = Trend::inconclusive;
};

inline constexpr double kDivergingGrowth = 2.0;
inline constexpr double kStableRatio = 1.2;

DivergenceScan classify_divergence(const std::vector<std::size_t>& counts,
                                   const std::vector<double>& estimates);

DivergenceScan divergence_scan(int m, double mu, double p, double t, int truncation,
                               const std::vector<std::size_t>& counts, std::uint64_t seed,
                               int threads = 1);

struct MomentReport {
    double p = 2.0;
    double t = 0.0;
    MomentCriterion criterion;
    std::optional<double> closed_form;  // closed-form p-th moment where available
    double closed_form_energy = 0.0;    // closed-form L2 second moment
    std::optional<McEstimate> mc;
};

/// Verdict, closed forms (where they exist: odd m for general p, p = 2 for
/// both parities), and the plug-in estimate over the given norm samples
/// (empty samples mean no Monte Carlo column).
MomentReport moment_report(int m, double mu, double p, double t,
                           std::span<const double> norm_samples);

}  // namespace spde2m
