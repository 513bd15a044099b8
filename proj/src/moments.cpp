#include "spde2m/moments.hpp"

#include <cmath>
#include <stdexcept>

namespace spde2m {

std::string to_string(Finiteness f) { return f == Finiteness::finite ? "finite" : "infinite"; }

namespace {

void check_moment_inputs(int m, double mu, double p, double t) {
    if (m < 1) throw std::invalid_argument("m must be >= 1");
    if (mu * mu >= 2.0)
        throw std::invalid_argument("mu^2 must be < 2 (outside the well-posed range)");
    if (p < 2.0) throw std::invalid_argument("p must be >= 2");
    if (t < 0.0) throw std::invalid_argument("t must be >= 0");
}

}  // namespace

double modulus_decay(int m, double mu, double t) {
    const double sign = (m % 2 == 0) ? 1.0 : -1.0;
    return 2.0 + 2.0 * t + sign * mu * mu * t;
}

MomentCriterion finiteness(int m, double mu, double p, double t) {
    check_moment_inputs(m, mu, p, t);
    MomentCriterion crit;
    crit.epsilon = (p - 1.0) * mu * mu - 2.0;
    if (m % 2 != 0) {
        crit.verdict = Finiteness::finite;
        crit.criterion_value = crit.epsilon;
        return crit;
    }
    crit.criterion_value = 1.0 - p * mu * mu * t / modulus_decay(m, mu, t);
    crit.verdict = crit.criterion_value < 0.0 ? Finiteness::infinite : Finiteness::finite;
    if (crit.epsilon > 0.0) crit.blowup_time = 2.0 / crit.epsilon;
    return crit;
}

namespace {

/// Partial sum over |n| <= N of exp(-n^{2m} rate) with its analytic tail
/// bound kept below 1e-12 of the sum. rate > 0 always holds here since
/// mu^2 < 2. truncation < 0 grows N until the bound is met.
double mode_series(int m, double rate, int truncation) {
    auto tail_bound = [&](int N) {
        // n^{2m} >= (N+1)^{2m} + (n - N - 1) for n > N, so the tail is
        // dominated by a geometric series.
        return 2.0 * std::exp(-integer_power(N + 1, 2 * m) * rate) / (1.0 - std::exp(-rate));
    };
    auto partial = [&](int N) {
        double sum = 1.0;  // n = 0
        for (int n = 1; n <= N; ++n) sum += 2.0 * std::exp(-integer_power(n, 2 * m) * rate);
        return sum;
    };
    if (truncation >= 0) {
        const double sum = partial(truncation);
        if (!(tail_bound(truncation) < 1e-12 * sum))
            throw std::invalid_argument("truncation too small for the requested tolerance");
        return sum;
    }
    for (int N = 1;; ++N) {
        const double sum = partial(N);
        if (tail_bound(N) < 1e-12 * sum) return sum;
        if (N > 4096) throw std::runtime_error("mode_series: truncation did not stabilize");
    }
}

}  // namespace

double closed_form_p_moment_odd(int m, double mu, double p, double t, int truncation) {
    check_moment_inputs(m, mu, p, t);
    if (m % 2 == 0)
        throw std::invalid_argument("closed_form_p_moment_odd: m must be odd");
    const double rate = 2.0 + (2.0 - mu * mu) * t;
    const double series = mode_series(m, rate, truncation);
    return std::pow(2.0 * M_PI * series, p / 2.0);
}

double closed_form_l2(int m, double mu, double t, int truncation) {
    check_moment_inputs(m, mu, 2.0, t);
    const double rate = 2.0 + (2.0 - mu * mu) * t;
    return 2.0 * M_PI * mode_series(m, rate, truncation);
}

McEstimate mc_p_moment(std::span<const double> norm_samples, double p) {
    if (norm_samples.empty()) throw std::invalid_argument("mc_p_moment: empty sample set");
    McEstimate est;
    est.paths = norm_samples.size();
    double sum = 0.0;
    for (double v : norm_samples) sum += std::pow(v, p);
    est.value = sum / static_cast<double>(est.paths);
    double sq = 0.0;
    for (double v : norm_samples) {
        const double d = std::pow(v, p) - est.value;
        sq += d * d;
    }
    const auto count = static_cast<double>(est.paths);
    est.std_error = est.paths > 1 ? std::sqrt(sq / (count - 1.0) / count) : 0.0;
    return est;
}

MomentReport moment_report(int m, double mu, double p, double t,
                           std::span<const double> norm_samples) {
    MomentReport report;
    report.p = p;
    report.t = t;
    report.criterion = finiteness(m, mu, p, t);
    if (m % 2 != 0)
        report.closed_form = closed_form_p_moment_odd(m, mu, p, t);
    else if (p == 2.0)
        report.closed_form = closed_form_l2(m, mu, t);
    report.closed_form_energy = closed_form_l2(m, mu, t);
    if (!norm_samples.empty()) report.mc = mc_p_moment(norm_samples, p);
    return report;
}

McEstimate mc_p_moment(const PathEnsemble& ens, double p, double t) {
    const std::size_t ti = ens.time_index(t);
    std::vector<double> norms(ens.path_count());
    for (std::size_t i = 0; i < ens.path_count(); ++i) norms[i] = l2_norm(ens.field(i, ti));
    return mc_p_moment(norms, p);
}

DivergenceScan classify_divergence(const std::vector<std::size_t>& counts,
                                   const std::vector<double>& estimates) {
    if (counts.size() != estimates.size() || counts.size() < 2)
        throw std::invalid_argument("classify_divergence: need matching lists of >= 2 counts");
    DivergenceScan scan;
    scan.counts = counts;
    scan.estimates = estimates;
    bool all_growing = true;
    bool all_stable = true;
    for (std::size_t i = 0; i + 1 < estimates.size(); ++i) {
        if (estimates[i] <= 0.0)
            throw std::invalid_argument("classify_divergence: estimates must be positive");
        const double ratio = estimates[i + 1] / estimates[i];
        scan.ratios.push_back(ratio);
        all_growing = all_growing && ratio >= kDivergingGrowth;
        all_stable = all_stable && ratio <= kStableRatio;
    }
    scan.trend = all_growing  ? DivergenceScan::Trend::diverging
                 : all_stable ? DivergenceScan::Trend::stable
                              : DivergenceScan::Trend::inconclusive;
    return scan;
}

DivergenceScan divergence_scan(int m, double mu, double p, double t, int truncation,
                               const std::vector<std::size_t>& counts, std::uint64_t seed,
                               int threads) {
    check_moment_inputs(m, mu, p, t);
    if (counts.size() < 2) throw std::invalid_argument("divergence_scan: need >= 2 path counts");
    for (std::size_t i = 0; i + 1 < counts.size(); ++i)
        if (counts[i + 1] <= counts[i])
            throw std::invalid_argument("divergence_scan: counts must be increasing");
    const auto norms =
        exact_norm_samples(m, mu, truncation, {t}, counts.back(), seed, threads);
    // Nested prefixes of the same stream: one pass, deterministic.
    std::vector<double> estimates;
    estimates.reserve(counts.size());
    double sum = 0.0;
    std::size_t consumed = 0;
    for (std::size_t target : counts) {
        for (; consumed < target; ++consumed) sum += std::pow(norms[0][consumed], p);
        estimates.push_back(sum / static_cast<double>(target));
    }
    return classify_divergence(counts, estimates);
}

}  // namespace spde2m
