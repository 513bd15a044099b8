#pragma once

#include <compare>
#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "spde2m/linalg.hpp"

namespace spde2m {

/// Multi-index of a mixed partial derivative: one non-negative exponent
/// per spatial direction.
struct MultiIndex {
    std::vector<int> entries;

    MultiIndex() = default;
    explicit MultiIndex(std::vector<int> e);

    int order() const;
    std::size_t length() const { return entries.size(); }

    auto operator<=>(const MultiIndex&) const = default;
};

/// All multi-indices of length n with order exactly m, lexicographic.
/// Count is C(m+n-1, n-1).
std::vector<MultiIndex> enumerate_indices(int n, int m);

std::size_t index_count(int n, int m);

/// Coefficient snapshot for a 2m-order operator: the drift tensor entries
/// A[alpha,beta] and, per noise channel k, the vectors B[k][alpha].
/// Missing entries are zero. The noise channel count is finite.
class CoefficientSet {
  public:
    CoefficientSet(int n, int m) : n_(n), m_(m) {}

    int dimension() const { return n_; }
    int half_order() const { return m_; }
    int noise_count() const { return static_cast<int>(b_.size()); }

    void set_drift(const MultiIndex& alpha, const MultiIndex& beta, double value);
    void set_noise(int k, const MultiIndex& alpha, double value);

    double drift(const MultiIndex& alpha, const MultiIndex& beta) const;
    double noise(int k, const MultiIndex& alpha) const;

    const std::map<std::pair<MultiIndex, MultiIndex>, double>& drift_entries() const {
        return a_;
    }
    const std::vector<std::map<MultiIndex, double>>& noise_entries() const { return b_; }

    static CoefficientSet from_json(const std::string& text);
    std::string to_json() const;

  private:
    void check_index(const MultiIndex& alpha) const;

    int n_;
    int m_;
    std::map<std::pair<MultiIndex, MultiIndex>, double> a_;
    std::vector<std::map<MultiIndex, double>> b_;
};

/// Quadratic forms over the leading-order basis (|alpha| = m, lexicographic):
/// `dissipation`(i,j) = A[a_i,a_j] + A[a_j,a_i] and `noise` = sum_k b_k b_k^T
/// with b_k[i] = B[k][a_i].
struct LeadingForms {
    Matrix dissipation;  // S
    Matrix noise;        // N
    std::vector<MultiIndex> basis;
};

LeadingForms leading_vectors(const CoefficientSet& c);

}  // namespace spde2m
