#include "spde2m/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace spde2m {

Matrix& Matrix::operator+=(const Matrix& other) {
    if (other.dim_ != dim_) throw std::invalid_argument("Matrix: dimension mismatch");
    for (std::size_t i = 0; i < a_.size(); ++i) a_[i] += other.a_[i];
    return *this;
}

Matrix& Matrix::operator-=(const Matrix& other) {
    if (other.dim_ != dim_) throw std::invalid_argument("Matrix: dimension mismatch");
    for (std::size_t i = 0; i < a_.size(); ++i) a_[i] -= other.a_[i];
    return *this;
}

Matrix& Matrix::operator*=(double s) {
    for (double& v : a_) v *= s;
    return *this;
}

double Matrix::symmetry_defect() const {
    double d = 0.0;
    for (std::size_t i = 0; i < dim_; ++i)
        for (std::size_t j = i + 1; j < dim_; ++j)
            d = std::max(d, std::abs((*this)(i, j) - (*this)(j, i)));
    return d;
}

double Matrix::max_abs() const {
    double d = 0.0;
    for (double v : a_) d = std::max(d, std::abs(v));
    return d;
}

bool Matrix::is_zero() const { return max_abs() == 0.0; }

Matrix operator-(Matrix lhs, const Matrix& rhs) {
    lhs -= rhs;
    return lhs;
}

Matrix operator*(double s, Matrix m) {
    m *= s;
    return m;
}

double quadratic_form(const Matrix& a, const std::vector<double>& x) {
    if (x.size() != a.dim()) throw std::invalid_argument("quadratic_form: size mismatch");
    double acc = 0.0;
    for (std::size_t i = 0; i < a.dim(); ++i) {
        double row = 0.0;
        for (std::size_t j = 0; j < a.dim(); ++j) row += a(i, j) * x[j];
        acc += x[i] * row;
    }
    return acc;
}

std::vector<double> symmetric_eigenvalues(const Matrix& input) {
    const std::size_t n = input.dim();
    if (n == 0) return {};
    const double scale = std::max(input.max_abs(), 1.0);
    if (input.symmetry_defect() > 1e-12 * scale)
        throw std::logic_error("symmetric_eigenvalues: matrix is not symmetric");

    Matrix a = input;
    auto off_diagonal = [&] {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) s += a(i, j) * a(i, j);
        return s;
    };

    // Cyclic Jacobi sweeps until the off-diagonal mass is at rounding level.
    const double stop = 1e-30 * scale * scale * static_cast<double>(n * n);
    for (int sweep = 0; sweep < 100 && off_diagonal() > stop; ++sweep) {
        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq = a(p, q);
                if (apq == 0.0) continue;
                const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
                const double sign = theta >= 0.0 ? 1.0 : -1.0;
                const double t = sign / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (std::size_t i = 0; i < n; ++i) {
                    const double aip = a(i, p);
                    const double aiq = a(i, q);
                    a(i, p) = c * aip - s * aiq;
                    a(i, q) = s * aip + c * aiq;
                }
                for (std::size_t i = 0; i < n; ++i) {
                    const double api = a(p, i);
                    const double aqi = a(q, i);
                    a(p, i) = c * api - s * aqi;
                    a(q, i) = s * api + c * aqi;
                }
            }
        }
    }

    std::vector<double> eig(n);
    for (std::size_t i = 0; i < n; ++i) eig[i] = a(i, i);
    std::sort(eig.begin(), eig.end());
    return eig;
}

double smallest_eigenvalue(const Matrix& a) { return symmetric_eigenvalues(a).front(); }

}  // namespace spde2m
