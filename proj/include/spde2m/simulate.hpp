#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "spde2m/multiindex.hpp"
#include "spde2m/spectral.hpp"

namespace spde2m {

/// One driving trajectory: Gaussian increments per noise channel over a
/// time grid. increments[k][j] covers [times[j], times[j+1]].
struct WienerPath {
    std::vector<double> times;
    std::vector<std::vector<double>> increments;

    /// w_{times[j]} for channel k (prefix sum; w at times[0] is 0).
    double level(int k, std::size_t j) const;
};

/// Path i is drawn from stream i of the master seed; increments are in
/// step-major, channel-minor order. Output depends only on (seed, i).
WienerPath make_wiener_path(std::uint64_t seed, std::uint64_t path_index,
                            const std::vector<double>& times, int noise_channels);

std::vector<WienerPath> generate_paths(std::uint64_t seed, std::size_t path_count,
                                       const std::vector<double>& times, int noise_channels);

/// Drift and noise multipliers per Fourier mode for an x-independent
/// coefficient snapshot on the 1-D torus.
struct OperatorSymbol {
    std::vector<Complex> drift;                // index n+N
    std::vector<std::vector<Complex>> noise;   // [k][n+N]

    Complex drift_at(int n, int truncation) const {
        return drift[static_cast<std::size_t>(n + truncation)];
    }
};

/// a(n) = (-1)^{m+1} sum A[alpha,beta] (i n)^{|alpha|+|beta|},
/// b_k(n) = sum B[k][alpha] (i n)^{|alpha|}, with i^q exact by quadrant.
OperatorSymbol make_symbol(const CoefficientSet& c, int truncation);

/// The model problem du = [L u + f] dt + sum_k [M_k u + g^k] dw^k with
/// x-independent coefficients (constant or functions of t) and optional
/// spectral forcing. Empty callbacks mean zero.
struct ModelEquation {
    CoefficientSet coeffs;
    int truncation = 16;  // N
    std::function<CoefficientSet(double)> coeffs_at{};             // overrides coeffs if set
    std::function<SpectralField(double)> drift_forcing{};          // f
    std::function<std::vector<SpectralField>(double)> noise_forcing{};  // g^k
    SpectralField initial;                                         // empty -> zero

    explicit ModelEquation(CoefficientSet c, int N = 16) : coeffs(std::move(c)), truncation(N) {}

    /// Leading-order 1-D equation with unit dissipation and one noise
    /// channel of strength mu acting through the order-m derivative.
    static ModelEquation leading_order(int m, double mu, int truncation = 16);
};

/// Initial amplitudes u_n(0) = exp(-n^{2m}), the sharply decaying datum of
/// the benchmark problem.
SpectralField decaying_initial(int m, int truncation);

struct PathEnsemble {
    std::uint64_t master_seed = 0;
    int m = 1;           // half-order of the generating equation
    int truncation = 0;  // N
    std::vector<double> times;
    std::vector<std::vector<SpectralField>> fields;  // [path][time index]

    std::size_t path_count() const { return fields.size(); }
    std::size_t time_index(double t) const;  // throws if t is not a snapshot
    const SpectralField& field(std::size_t path, std::size_t time_idx) const {
        return fields[path][time_idx];
    }
};

struct SimOptions {
    std::size_t paths = 10000;
    std::uint64_t seed = 1;
    std::vector<double> snapshots;  // empty -> final time only
    int threads = 1;
};

/// Exponential-Euler integration of the model problem per mode: over each
/// step the homogeneous part is advanced by its exact stochastic
/// exponential with coefficients frozen at the left endpoint, and the
/// forcing enters through the same multiplier.
PathEnsemble simulate_model(const ModelEquation& eq, const std::vector<double>& grid,
                            const SimOptions& opt);

/// Same scheme driven by supplied increments (refinement studies, replay).
/// Each driving path must live on exactly the integration grid.
PathEnsemble simulate_model(const ModelEquation& eq, const std::vector<double>& grid,
                            const SimOptions& opt, const std::vector<WienerPath>& driving);

/// Closed-form mode solution of the leading-order equation started from the
/// decaying datum, evaluated at noise level w = w_t:
/// exp{-n^{2m}(1 + t + (-1)^m mu^2 t / 2) + mu i^m n^m w}.
Complex exact_mode(int n, int m, double mu, double t, double w);

/// Sample the closed-form solution at the given times (paths need only the
/// Wiener level, so no time stepping is involved).
PathEnsemble exact_ensemble(int m, double mu, int truncation,
                            const std::vector<double>& snapshot_times, std::size_t paths,
                            std::uint64_t seed, int threads = 1);

/// L2 norms of closed-form samples, [time][path], without materializing
/// the fields; used by the moment scans at large path counts.
std::vector<std::vector<double>> exact_norm_samples(int m, double mu, int truncation,
                                                    const std::vector<double>& snapshot_times,
                                                    std::size_t paths, std::uint64_t seed,
                                                    int threads = 1);

}  // namespace spde2m
