#include "odiff/tableau.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "odiff/error.hpp"

namespace odiff {

namespace {

std::string join(const std::vector<std::string>& items) {
    std::string out;
    for (const auto& item : items) {
        if (!out.empty()) {
            out += "; ";
        }
        out += item;
    }
    return out;
}

}  // namespace

InvalidTableau::InvalidTableau(std::vector<std::string> violations)
    : std::invalid_argument("invalid tableau: " + join(violations)),
      violations_(std::move(violations)) {}

ObreshkovTableau::ObreshkovTableau(int k, int m, double h, std::vector<double> c0,
                                   std::vector<std::vector<double>> c, std::string label,
                                   std::optional<double> omega_select)
    : k_(k), m_(m), h_(h), label_(std::move(label)), omega_select_(omega_select) {
    if (k < 1) {
        throw std::invalid_argument("tableau: k must be a positive integer");
    }
    if (m < 1) {
        throw std::invalid_argument("tableau: m must be a positive integer");
    }
    if (!(h > 0.0) || !std::isfinite(h)) {
        throw std::invalid_argument("tableau: h must be positive and finite");
    }
    if (c0.size() != static_cast<std::size_t>(m)) {
        throw std::invalid_argument("tableau: c0 must hold m values");
    }
    if (c.size() != static_cast<std::size_t>(k)) {
        throw std::invalid_argument("tableau: c must hold k rows");
    }
    if (omega_select && !(*omega_select > 0.0)) {
        throw std::invalid_argument("tableau: omega_select must be positive");
    }

    const auto width = static_cast<std::size_t>(m + 1);
    coeffs_.assign(static_cast<std::size_t>(k + 1) * width, 0.0);
    for (int j = 1; j <= m; ++j) {
        coeffs_[static_cast<std::size_t>(j)] = c0[static_cast<std::size_t>(j - 1)];
    }
    for (int i = 1; i <= k; ++i) {
        const auto& r = c[static_cast<std::size_t>(i - 1)];
        if (r.size() != width) {
            std::ostringstream msg;
            msg << "tableau: row c[" << (i - 1) << "] must hold m+1 values";
            throw std::invalid_argument(msg.str());
        }
        std::copy(r.begin(), r.end(), coeffs_.begin() + static_cast<std::ptrdiff_t>(i * width));
    }
}

double ObreshkovTableau::coeff(int order, int lag) const {
    if (order < 0 || order > k_ || lag < 0 || lag > m_) {
        throw std::out_of_range("tableau: coefficient index out of range");
    }
    return coeffs_[static_cast<std::size_t>(order * (m_ + 1) + lag)];
}

std::span<const double> ObreshkovTableau::row(int order) const {
    if (order < 0 || order > k_) {
        throw std::out_of_range("tableau: order out of range");
    }
    const auto width = static_cast<std::size_t>(m_ + 1);
    return std::span<const double>(coeffs_).subspan(static_cast<std::size_t>(order) * width, width);
}

std::vector<double> ObreshkovTableau::c0() const {
    auto r = row(0);
    return {r.begin() + 1, r.end()};
}

ObreshkovTableau ObreshkovTableau::with_label(std::string label) const {
    auto copy = *this;
    copy.label_ = std::move(label);
    return copy;
}

ValidationVerdict validate(const ObreshkovTableau& t) {
    ValidationVerdict verdict;

    bool finite = true;
    for (int i = 0; i <= t.k(); ++i) {
        for (double v : t.row(i)) {
            finite = finite && std::isfinite(v);
        }
    }
    if (!finite) {
        verdict.violations.emplace_back("non-finite coefficient");
    }

    if (t.leading() == 0.0) {
        verdict.violations.emplace_back("c_0^k is zero");
    }

    double sum = 0.0;
    for (double v : t.c0()) {
        sum += v;
    }
    if (!(std::abs(sum - 1.0) <= kConsistencyTolerance)) {
        std::ostringstream msg;
        msg.precision(17);
        msg << "consistency sum != 1 (sum of c^0_{-j} = " << sum << ")";
        verdict.violations.push_back(msg.str());
    }
    return verdict;
}

void require_valid(const ObreshkovTableau& t) {
    auto verdict = validate(t);
    if (!verdict.ok()) {
        throw InvalidTableau(std::move(verdict.violations));
    }
}

DifferentiatorRule differentiator_form(const ObreshkovTableau& t) {
    require_valid(t);
    const int k = t.k();
    const int m = t.m();
    const double lead = t.leading();

    DifferentiatorRule rule{t, {}, 1.0 / lead, {}, {}};
    rule.feedback.reserve(static_cast<std::size_t>(m));
    rule.past_value_weights.reserve(static_cast<std::size_t>(m));
    for (int j = 1; j <= m; ++j) {
        rule.feedback.push_back(-t.coeff(k, j) / lead);
        rule.past_value_weights.push_back(-t.coeff(0, j) / lead);
    }
    for (int i = 1; i < k; ++i) {
        std::vector<double> weights;
        weights.reserve(static_cast<std::size_t>(m + 1));
        for (int j = 0; j <= m; ++j) {
            weights.push_back(-t.coeff(i, j) / lead);
        }
        rule.derivative_weights.push_back(std::move(weights));
    }
    return rule;
}

bool is_admissible(double omega, double h) noexcept {
    const double theta = omega * h;
    return std::isfinite(theta) && theta > 0.0 && theta < 2.0 * std::numbers::pi &&
           std::abs(1.0 - std::cos(theta)) > 1e-12;
}

void require_admissible(double omega, double h) {
    if (!is_admissible(omega, h)) {
        std::ostringstream msg;
        msg.precision(17);
        msg << "omega*h = " << omega * h
            << " is outside the admissible window (0, 2*pi) with cos(omega*h) != 1";
        throw std::invalid_argument(msg.str());
    }
}

}  // namespace odiff
