#pragma once

#include <complex>
#include <cstddef>
#include <string>
#include <vector>

namespace spde2m {

using Complex = std::complex<double>;

/// i^q evaluated exactly by quadrant; the even/odd dichotomy of the noise
/// symbol hinges on this being exactly real or exactly imaginary.
Complex unit_imaginary_power(int q);

/// n^q as a double for integer n, q >= 0 (exact for the small exponents
/// and mode numbers used here).
double integer_power(int n, int q);

/// Periodic field on the torus of period 2*pi held as complex amplitudes
/// u_n, n = -N..N, with point values u(x) = sum_n u_n e^{i n x}.
class SpectralField {
  public:
    SpectralField() = default;
    explicit SpectralField(int truncation)
        : truncation_(truncation),
          modes_(static_cast<std::size_t>(2 * truncation + 1), Complex(0.0, 0.0)) {}

    int truncation() const { return truncation_; }
    std::size_t mode_count() const { return modes_.size(); }
    bool empty() const { return modes_.empty(); }

    Complex& mode(int n) { return modes_[static_cast<std::size_t>(n + truncation_)]; }
    Complex mode(int n) const { return modes_[static_cast<std::size_t>(n + truncation_)]; }

    const std::vector<Complex>& modes() const { return modes_; }

    /// max_n |u_{-n} - conj(u_n)|
    double hermitian_defect() const;
    double total_amplitude() const;  // sum |u_n|

    static SpectralField constant(int truncation, double value);
    /// Single pair u_n = u_{-n} = amplitude/2 (a pure cosine).
    static SpectralField cosine(int truncation, int n, double amplitude);
    /// u_n = -i*amplitude/2, u_{-n} = +i*amplitude/2 (a pure sine).
    static SpectralField sine(int truncation, int n, double amplitude);

  private:
    int truncation_ = 0;
    std::vector<Complex> modes_;
};

/// Apply the derivative symbol (i n)^order to every mode.
SpectralField differentiate(const SpectralField& field, int order);

/// sqrt(2*pi * sum |u_n|^2): the L2 norm on the torus via the mode sums.
double l2_norm(const SpectralField& field);

/// Real point values Re sum u_n e^{i n x}. Rejects fields whose imaginary
/// residual exceeds 1e-10 times the total amplitude.
std::vector<double> evaluate(const SpectralField& field, const std::vector<double>& points);

/// Complex point value without the real-field check.
Complex evaluate_complex(const SpectralField& field, double x);

/// CSV dump, one `n,re,im` row per mode.
std::string to_csv(const SpectralField& field);

}  // namespace spde2m
