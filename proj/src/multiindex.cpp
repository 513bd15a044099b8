#include "spde2m/multiindex.hpp"

#include <numeric>
#include <stdexcept>

#include <json.hpp>

namespace spde2m {

MultiIndex::MultiIndex(std::vector<int> e) : entries(std::move(e)) {
    for (int v : entries)
        if (v < 0) throw std::invalid_argument("MultiIndex: negative entry");
}

int MultiIndex::order() const { return std::accumulate(entries.begin(), entries.end(), 0); }

std::vector<MultiIndex> enumerate_indices(int n, int m) {
    if (n < 1) throw std::invalid_argument("enumerate_indices: n must be >= 1");
    if (m < 0) throw std::invalid_argument("enumerate_indices: m must be >= 0");
    std::vector<MultiIndex> out;
    std::vector<int> current(static_cast<std::size_t>(n), 0);
    // Depth-first over positions emits lexicographic order directly.
    auto fill = [&](auto&& self, int pos, int remaining) -> void {
        if (pos == n - 1) {
            current[static_cast<std::size_t>(pos)] = remaining;
            out.emplace_back(current);
            return;
        }
        for (int v = 0; v <= remaining; ++v) {
            current[static_cast<std::size_t>(pos)] = v;
            self(self, pos + 1, remaining - v);
        }
    };
    fill(fill, 0, m);
    return out;
}

std::size_t index_count(int n, int m) {
    // C(m+n-1, n-1)
    std::size_t num = 1, den = 1;
    for (int i = 1; i <= n - 1; ++i) {
        num *= static_cast<std::size_t>(m + i);
        den *= static_cast<std::size_t>(i);
    }
    return num / den;
}

void CoefficientSet::check_index(const MultiIndex& alpha) const {
    if (alpha.length() != static_cast<std::size_t>(n_))
        throw std::invalid_argument("CoefficientSet: index length differs from dimension");
    if (alpha.order() > m_)
        throw std::invalid_argument("CoefficientSet: index order exceeds half-order m");
}

void CoefficientSet::set_drift(const MultiIndex& alpha, const MultiIndex& beta, double value) {
    check_index(alpha);
    check_index(beta);
    a_[{alpha, beta}] = value;
}

void CoefficientSet::set_noise(int k, const MultiIndex& alpha, double value) {
    check_index(alpha);
    if (k < 0) throw std::invalid_argument("CoefficientSet: negative noise channel");
    if (static_cast<std::size_t>(k) >= b_.size()) b_.resize(static_cast<std::size_t>(k) + 1);
    b_[static_cast<std::size_t>(k)][alpha] = value;
}

double CoefficientSet::drift(const MultiIndex& alpha, const MultiIndex& beta) const {
    auto it = a_.find({alpha, beta});
    return it == a_.end() ? 0.0 : it->second;
}

double CoefficientSet::noise(int k, const MultiIndex& alpha) const {
    if (k < 0 || static_cast<std::size_t>(k) >= b_.size()) return 0.0;
    auto it = b_[static_cast<std::size_t>(k)].find(alpha);
    return it == b_[static_cast<std::size_t>(k)].end() ? 0.0 : it->second;
}

namespace {

MultiIndex index_from_json(const nlohmann::json& j) {
    if (!j.is_array()) throw std::invalid_argument("coefficient JSON: index must be an array");
    return MultiIndex(j.get<std::vector<int>>());
}

}  // namespace

CoefficientSet CoefficientSet::from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    if (!j.contains("n") || !j.contains("m"))
        throw std::invalid_argument("coefficient JSON: missing field n or m");
    CoefficientSet c(j.at("n").get<int>(), j.at("m").get<int>());
    if (c.dimension() < 1) throw std::invalid_argument("coefficient JSON: n must be >= 1");
    if (c.half_order() < 1) throw std::invalid_argument("coefficient JSON: m must be >= 1");
    for (const auto& entry : j.value("A", nlohmann::json::array())) {
        c.set_drift(index_from_json(entry.at("alpha")), index_from_json(entry.at("beta")),
                    entry.at("value").get<double>());
    }
    int k = 0;
    for (const auto& channel : j.value("B", nlohmann::json::array())) {
        if (!channel.is_array())
            throw std::invalid_argument("coefficient JSON: B must be an array of channels");
        if (channel.empty()) c.b_.resize(static_cast<std::size_t>(k) + 1);
        for (const auto& entry : channel)
            c.set_noise(k, index_from_json(entry.at("alpha")), entry.at("value").get<double>());
        ++k;
    }
    return c;
}

std::string CoefficientSet::to_json() const {
    nlohmann::json j;
    j["n"] = n_;
    j["m"] = m_;
    auto a = nlohmann::json::array();
    for (const auto& [key, value] : a_)
        a.push_back({{"alpha", key.first.entries}, {"beta", key.second.entries}, {"value", value}});
    j["A"] = a;
    auto b = nlohmann::json::array();
    for (const auto& channel : b_) {
        auto ch = nlohmann::json::array();
        for (const auto& [alpha, value] : channel)
            ch.push_back({{"alpha", alpha.entries}, {"value", value}});
        b.push_back(ch);
    }
    j["B"] = b;
    return j.dump(2);
}

LeadingForms leading_vectors(const CoefficientSet& c) {
    LeadingForms forms;
    forms.basis = enumerate_indices(c.dimension(), c.half_order());
    const std::size_t dim = forms.basis.size();
    forms.dissipation = Matrix(dim);
    forms.noise = Matrix(dim);
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = 0; j < dim; ++j)
            forms.dissipation(i, j) =
                c.drift(forms.basis[i], forms.basis[j]) + c.drift(forms.basis[j], forms.basis[i]);
    for (int k = 0; k < c.noise_count(); ++k) {
        std::vector<double> b(dim);
        for (std::size_t i = 0; i < dim; ++i) b[i] = c.noise(k, forms.basis[i]);
        for (std::size_t i = 0; i < dim; ++i)
            for (std::size_t j = 0; j < dim; ++j) forms.noise(i, j) += b[i] * b[j];
    }
    return forms;
}

}  // namespace spde2m
