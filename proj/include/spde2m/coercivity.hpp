#pragma once

#include <optional>

#include "spde2m/multiindex.hpp"

namespace spde2m {

enum class CoercivityMode { standard, p_dependent };

/// Margin tolerance for the strict inequality: the condition asks for some
/// positive constant, so any margin above machine scale qualifies.
inline constexpr double kPositiveTolerance = 1e-12;

struct CoercivityVerdict {
    double lambda_star = 0.0;  // largest admissible margin (may be <= 0)
    double c_p = 1.0;          // right-hand-side multiplier
    bool holds = false;        // lambda_star > kPositiveTolerance
    double p = 2.0;
    CoercivityMode mode = CoercivityMode::p_dependent;
};

/// Right-hand-side multiplier (p + (-1)^m (p-2)) / 2: equals 1 for odd m
/// and p-1 for even m. Requires p >= 2.
double multiplier(int m, double p);

/// Exact decision of the coercivity condition: the largest margin is the
/// smallest eigenvalue of S - c_p * N over the leading-order basis.
CoercivityVerdict lambda_star(const CoefficientSet& c, double p, CoercivityMode mode);

/// For even m, the index p* >= 2 at which the margin crosses zero, found by
/// bisection to relative tolerance 1e-10. Empty when the margin is already
/// non-positive at p = 2, when there is no noise, or when m is odd (the
/// verdict is then p-independent).
std::optional<double> critical_p(const CoefficientSet& c);

}  // namespace spde2m
