#include "odiff/suitability.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <iomanip>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "odiff/catalog.hpp"

namespace odiff {

namespace {

constexpr int kMaxAberthIterations = 500;

using Complex = std::complex<double>;

// Horner evaluation of value and derivative for a monic, highest-first polynomial.
std::pair<Complex, Complex> evaluate_with_derivative(std::span<const double> coeffs, Complex x) {
    Complex value{coeffs[0], 0.0};
    Complex slope{0.0, 0.0};
    for (std::size_t i = 1; i < coeffs.size(); ++i) {
        slope = slope * x + value;
        value = value * x + coeffs[i];
    }
    return {value, slope};
}

std::vector<Complex> aberth(std::span<const double> coeffs) {
    const int n = static_cast<int>(coeffs.size()) - 1;
    if (n == 1) {
        return {Complex{-coeffs[1], 0.0}};
    }

    // Cauchy bound on root magnitude.
    double bound = 0.0;
    for (std::size_t i = 1; i < coeffs.size(); ++i) {
        bound = std::max(bound, std::abs(coeffs[i]));
    }
    const double radius = std::max(0.5, 0.5 * (1.0 + bound));

    std::vector<Complex> z(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        const double angle = 2.0 * std::numbers::pi * i / n + 0.4;
        z[static_cast<std::size_t>(i)] = std::polar(radius, angle);
    }

    constexpr double eps = std::numeric_limits<double>::epsilon();
    for (int iter = 0; iter < kMaxAberthIterations; ++iter) {
        double largest_step = 0.0;
        for (std::size_t i = 0; i < z.size(); ++i) {
            const auto [value, slope] = evaluate_with_derivative(coeffs, z[i]);
            if (value == Complex{0.0, 0.0}) {
                continue;
            }
            const Complex newton = value / slope;
            Complex repulsion{0.0, 0.0};
            for (std::size_t j = 0; j < z.size(); ++j) {
                if (j != i) {
                    repulsion += 1.0 / (z[i] - z[j]);
                }
            }
            Complex step = newton / (1.0 - newton * repulsion);
            if (!std::isfinite(step.real()) || !std::isfinite(step.imag())) {
                step = newton;
            }
            if (!std::isfinite(step.real()) || !std::isfinite(step.imag())) {
                continue;
            }
            z[i] -= step;
            largest_step = std::max(largest_step, std::abs(step) / std::max(1.0, std::abs(z[i])));
        }
        if (largest_step <= 4.0 * eps) {
            break;
        }
    }

    // Newton polish, kept only when it lowers the residual.
    for (auto& root : z) {
        for (int pass = 0; pass < 3; ++pass) {
            const auto [value, slope] = evaluate_with_derivative(coeffs, root);
            if (std::abs(slope) == 0.0) {
                break;
            }
            const Complex candidate = root - value / slope;
            if (std::abs(evaluate_with_derivative(coeffs, candidate).first) < std::abs(value)) {
                root = candidate;
            } else {
                break;
            }
        }
    }
    return z;
}

std::string format_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string format_short(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

std::string format_complex(Complex z) {
    std::string out = format_number(z.real());
    out += std::signbit(z.imag()) ? '-' : '+';
    out += format_number(std::abs(z.imag()));
    out += 'j';
    return out;
}

}  // namespace

std::string format_root(Complex z) {
    if (std::abs(z.imag()) <= 1e-12 * std::max(1.0, std::abs(z.real()))) {
        return format_short(z.real() == 0.0 ? 0.0 : z.real());
    }
    std::string out = format_short(z.real());
    out += z.imag() < 0.0 ? '-' : '+';
    out += format_short(std::abs(z.imag()));
    out += 'j';
    return out;
}

Complex CharacteristicPolynomial::operator()(Complex x) const {
    return evaluate_with_derivative(coeffs, x).first;
}

std::string_view to_string(Classification c) noexcept {
    switch (c) {
        case Classification::Ideal: return "IDEAL";
        case Classification::Asymptotic: return "ASYMPTOTIC";
        case Classification::Oscillatory: return "OSCILLATORY";
        case Classification::Biased: return "BIASED";
        case Classification::PersistentBounded: return "PERSISTENT_BOUNDED";
        case Classification::Divergent: return "DIVERGENT";
    }
    return "UNKNOWN";
}

std::string_view hazard(Classification c) noexcept {
    switch (c) {
        case Classification::Ideal:
        case Classification::Asymptotic: return "--";
        case Classification::Oscillatory: return "Oscillation";
        case Classification::Biased: return "Bias";
        case Classification::PersistentBounded: return "Persistent error";
        case Classification::Divergent: return "Divergence";
    }
    return "--";
}

bool is_suitable(Classification c) noexcept {
    return c == Classification::Ideal || c == Classification::Asymptotic;
}

CharacteristicPolynomial characteristic_polynomial(const ObreshkovTableau& t) {
    require_valid(t);
    const double lead = t.leading();
    CharacteristicPolynomial p;
    p.coeffs.reserve(static_cast<std::size_t>(t.m() + 1));
    p.coeffs.push_back(1.0);
    for (int j = 1; j <= t.m(); ++j) {
        p.coeffs.push_back(t.coeff(t.k(), j) / lead);
    }
    return p;
}

std::vector<double> state_transition_matrix(const ObreshkovTableau& t) {
    const auto rule = differentiator_form(t);
    const int m = t.m();
    std::vector<double> a(static_cast<std::size_t>(m * m), 0.0);
    for (int j = 0; j < m; ++j) {
        a[static_cast<std::size_t>(j)] = rule.feedback[static_cast<std::size_t>(j)];
    }
    for (int r = 1; r < m; ++r) {
        a[static_cast<std::size_t>(r * m + (r - 1))] = 1.0;
    }
    return a;
}

std::vector<Complex> polynomial_roots(const CharacteristicPolynomial& p) {
    if (p.coeffs.empty() || p.coeffs.front() != 1.0) {
        throw std::invalid_argument("polynomial_roots: polynomial must be monic");
    }
    if (p.degree() < 1) {
        return {};
    }
    std::size_t zero_roots = 0;
    std::size_t end = p.coeffs.size();
    while (end > 1 && p.coeffs[end - 1] == 0.0) {
        --end;
        ++zero_roots;
    }
    std::vector<Complex> roots(zero_roots, Complex{0.0, 0.0});
    if (end > 1) {
        auto rest = aberth(std::span<const double>(p.coeffs).first(end));
        roots.insert(roots.end(), rest.begin(), rest.end());
    }
    return roots;
}

std::vector<Complex> eigenvalues(std::span<const double> matrix, int n) {
    if (n < 1 || matrix.size() != static_cast<std::size_t>(n * n)) {
        throw std::invalid_argument("eigenvalues: matrix must be n x n");
    }
    Eigen::MatrixXd a(n, n);
    for (int r = 0; r < n; ++r) {
        for (int c = 0; c < n; ++c) {
            a(r, c) = matrix[static_cast<std::size_t>(r * n + c)];
        }
    }
    Eigen::EigenSolver<Eigen::MatrixXd> solver(a, false);
    if (solver.info() != Eigen::Success) {
        throw std::runtime_error("eigenvalues: eigensolver did not converge");
    }
    const auto values = solver.eigenvalues();
    std::vector<Complex> out;
    out.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        out.push_back(values(i));
    }
    return out;
}

ClassificationResult classify(std::span<const Complex> roots, double root_tolerance) {
    ClassificationResult result{Classification::Ideal, {}};
    result.evidence.reserve(roots.size());

    bool divergent = false;
    bool biased = false;
    bool oscillatory = false;
    bool persistent = false;
    bool all_zero = true;
    for (const auto& root : roots) {
        RootEvidence e;
        e.root = root;
        e.magnitude = std::abs(root);
        e.distance_to_zero = e.magnitude;
        e.distance_to_plus_one = std::abs(root - 1.0);
        e.distance_to_minus_one = std::abs(root + 1.0);
        result.evidence.push_back(e);

        divergent = divergent || e.magnitude > 1.0 + root_tolerance;
        biased = biased || e.distance_to_plus_one <= root_tolerance;
        oscillatory = oscillatory || e.distance_to_minus_one <= root_tolerance;
        persistent = persistent || std::abs(e.magnitude - 1.0) <= root_tolerance;
        all_zero = all_zero && e.magnitude <= root_tolerance;
    }

    if (divergent) {
        result.classification = Classification::Divergent;
    } else if (biased) {
        result.classification = Classification::Biased;
    } else if (oscillatory) {
        result.classification = Classification::Oscillatory;
    } else if (persistent) {
        result.classification = Classification::PersistentBounded;
    } else if (all_zero) {
        result.classification = Classification::Ideal;
    } else {
        result.classification = Classification::Asymptotic;
    }
    return result;
}

SuitabilityReport analyze(const ObreshkovTableau& t, double root_tolerance) {
    SuitabilityReport report;
    report.polynomial = characteristic_polynomial(t);
    report.roots = polynomial_roots(report.polynomial);
    auto classified = classify(report.roots, root_tolerance);
    report.classification = classified.classification;
    report.evidence = std::move(classified.evidence);
    return report;
}

std::string format_polynomial(const CharacteristicPolynomial& p) {
    const int degree = p.degree();
    auto power = [](int e) -> std::string {
        if (e == 0) {
            return "";
        }
        if (e == 1) {
            return "λ";
        }
        return "λ^" + std::to_string(e);
    };
    if (degree < 1) {
        return "1";
    }
    std::string out = power(degree);
    for (int i = 1; i <= degree; ++i) {
        const double a = p.coeffs[static_cast<std::size_t>(i)];
        if (a == 0.0) {
            continue;
        }
        const int e = degree - i;
        out += a < 0.0 ? " - " : " + ";
        const double mag = std::abs(a);
        if (mag != 1.0 || e == 0) {
            out += format_short(mag);
        }
        out += power(e);
    }
    return out;
}

std::vector<Table2Row> table2_report(double h, double omega_select) {
    require_admissible(omega_select, h);
    std::vector<Table2Row> rows;
    for (auto id : kSecondDerivativeFamily) {
        const auto omega = is_frequency_optimized(id) ? std::optional<double>(omega_select) : std::nullopt;
        const auto t = make_catalog(id, h, omega);
        rows.push_back({std::string(to_string(id)), analyze(t)});
    }
    return rows;
}

std::string table2_csv(std::span<const Table2Row> rows) {
    std::ostringstream out;
    out << "label,polynomial,coefficients,roots,classification,suitable,hazard\n";
    for (const auto& row : rows) {
        const auto& r = row.report;
        out << row.label << ',' << format_polynomial(r.polynomial) << ',';
        for (std::size_t i = 0; i < r.polynomial.coeffs.size(); ++i) {
            out << (i ? ";" : "") << format_number(r.polynomial.coeffs[i]);
        }
        out << ',';
        for (std::size_t i = 0; i < r.roots.size(); ++i) {
            out << (i ? ";" : "") << format_complex(r.roots[i]);
        }
        out << ',' << to_string(r.classification) << ',' << (r.suitable() ? "Yes" : "No") << ','
            << hazard(r.classification) << '\n';
    }
    return out.str();
}

std::string table2_text(std::span<const Table2Row> rows) {
    std::ostringstream out;
    out << std::left << std::setw(8) << "Label" << std::setw(20) << "Polynomial" << std::setw(20)
        << "Roots" << std::setw(20) << "Classification" << std::setw(10) << "Suitable"
        << "Hazard\n";
    for (const auto& row : rows) {
        const auto& r = row.report;
        std::string roots;
        for (std::size_t i = 0; i < r.roots.size(); ++i) {
            roots += (i ? ", " : "") + format_root(r.roots[i]);
        }
        // "λ" is two bytes but one column wide.
        const auto poly = format_polynomial(r.polynomial);
        const auto lambdas = static_cast<int>(std::count(poly.begin(), poly.end(), '\xce'));
        out << std::setw(8) << row.label << std::setw(20 + lambdas) << poly << std::setw(20) << roots
            << std::setw(20) << to_string(r.classification) << std::setw(10)
            << (r.suitable() ? "Yes" : "No") << hazard(r.classification) << '\n';
    }
    return out.str();
}

}  // namespace odiff
