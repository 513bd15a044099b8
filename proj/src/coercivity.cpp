#include "spde2m/coercivity.hpp"

#include <cmath>
#include <stdexcept>

namespace spde2m {

double multiplier(int m, double p) {
    if (m < 1) throw std::invalid_argument("multiplier: m must be >= 1");
    if (p < 2.0) throw std::invalid_argument("multiplier: p must be >= 2");
    const double sign = (m % 2 == 0) ? 1.0 : -1.0;
    return (p + sign * (p - 2.0)) / 2.0;
}

CoercivityVerdict lambda_star(const CoefficientSet& c, double p, CoercivityMode mode) {
    if (p < 2.0) throw std::invalid_argument("lambda_star: p must be >= 2");
    const LeadingForms forms = leading_vectors(c);
    CoercivityVerdict verdict;
    verdict.p = p;
    verdict.mode = mode;
    verdict.c_p = mode == CoercivityMode::standard ? 1.0 : multiplier(c.half_order(), p);
    verdict.lambda_star =
        smallest_eigenvalue(forms.dissipation - verdict.c_p * forms.noise);
    verdict.holds = verdict.lambda_star > kPositiveTolerance;
    return verdict;
}

std::optional<double> critical_p(const CoefficientSet& c) {
    if (c.half_order() % 2 != 0) return std::nullopt;
    const LeadingForms forms = leading_vectors(c);
    if (forms.noise.is_zero()) return std::nullopt;

    auto margin = [&](double p) {
        return smallest_eigenvalue(forms.dissipation - multiplier(c.half_order(), p) * forms.noise);
    };
    if (margin(2.0) <= 0.0) return std::nullopt;

    double hi = 4.0;
    while (margin(hi) >= 0.0) {
        hi *= 2.0;
        if (hi > 1e6) return std::nullopt;
    }
    double lo = 2.0;
    while (hi - lo > 1e-10 * hi) {
        const double mid = 0.5 * (lo + hi);
        if (margin(mid) > 0.0)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace spde2m
