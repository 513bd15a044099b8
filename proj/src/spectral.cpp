#include "spde2m/spectral.hpp"

#include <cmath>
#include <stdexcept>

#include "spde2m/io.hpp"

namespace spde2m {

Complex unit_imaginary_power(int q) {
    switch (((q % 4) + 4) % 4) {
        case 0: return {1.0, 0.0};
        case 1: return {0.0, 1.0};
        case 2: return {-1.0, 0.0};
        default: return {0.0, -1.0};
    }
}

double integer_power(int n, int q) {
    if (q < 0) throw std::invalid_argument("integer_power: negative exponent");
    double acc = 1.0;
    const double base = static_cast<double>(n);
    for (int i = 0; i < q; ++i) acc *= base;
    return acc;
}

double SpectralField::hermitian_defect() const {
    double d = 0.0;
    for (int n = 0; n <= truncation_; ++n)
        d = std::max(d, std::abs(mode(-n) - std::conj(mode(n))));
    return d;
}

double SpectralField::total_amplitude() const {
    double s = 0.0;
    for (const Complex& c : modes_) s += std::abs(c);
    return s;
}

SpectralField SpectralField::constant(int truncation, double value) {
    SpectralField f(truncation);
    f.mode(0) = value;
    return f;
}

SpectralField SpectralField::cosine(int truncation, int n, double amplitude) {
    SpectralField f(truncation);
    f.mode(n) = amplitude / 2.0;
    f.mode(-n) = amplitude / 2.0;
    return f;
}

SpectralField SpectralField::sine(int truncation, int n, double amplitude) {
    SpectralField f(truncation);
    f.mode(n) = Complex(0.0, -amplitude / 2.0);
    f.mode(-n) = Complex(0.0, amplitude / 2.0);
    return f;
}

SpectralField differentiate(const SpectralField& field, int order) {
    if (order < 0) throw std::invalid_argument("differentiate: order must be >= 0");
    SpectralField out(field.truncation());
    const Complex rot = unit_imaginary_power(order);
    for (int n = -field.truncation(); n <= field.truncation(); ++n)
        out.mode(n) = field.mode(n) * rot * integer_power(n, order);
    return out;
}

double l2_norm(const SpectralField& field) {
    double s = 0.0;
    for (const Complex& c : field.modes()) s += std::norm(c);
    return std::sqrt(2.0 * M_PI * s);
}

Complex evaluate_complex(const SpectralField& field, double x) {
    // Phase recurrence anchored at n = 0, so low modes carry no phase error
    // and a constant field evaluates exactly.
    const Complex eix = std::polar(1.0, x);
    Complex acc = field.mode(0);
    Complex pos(1.0, 0.0), neg(1.0, 0.0);
    for (int n = 1; n <= field.truncation(); ++n) {
        pos *= eix;
        neg *= std::conj(eix);
        acc += field.mode(n) * pos + field.mode(-n) * neg;
    }
    return acc;
}

std::vector<double> evaluate(const SpectralField& field, const std::vector<double>& points) {
    const double amplitude = field.total_amplitude();
    std::vector<double> out;
    out.reserve(points.size());
    for (double x : points) {
        const Complex v = evaluate_complex(field, x);
        if (std::abs(v.imag()) > 1e-10 * amplitude)
            throw std::runtime_error("evaluate: field is not real (Hermitian symmetry violated)");
        out.push_back(v.real());
    }
    return out;
}

std::string to_csv(const SpectralField& field) {
    std::string csv = "n,re,im\n";
    for (int n = -field.truncation(); n <= field.truncation(); ++n) {
        csv += format_double(n);
        csv += ',';
        csv += format_double(field.mode(n).real());
        csv += ',';
        csv += format_double(field.mode(n).imag());
        csv += '\n';
    }
    return csv;
}

}  // namespace spde2m
