#include "odiff/solver.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <sstream>

#include "odiff/spectrum.hpp"

namespace odiff {

namespace {

constexpr double kZeroRowTolerance = 1e-12;
constexpr double kFixedSlotTolerance = 1e-14;

std::string join(const std::vector<std::string>& items) {
    std::string out;
    for (const auto& s : items) {
        out += (out.empty() ? "" : ", ") + s;
    }
    return out;
}

std::string format_double(double v, int digits = 17) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.*g", digits, v);
    return buf;
}

// (-lag)^p / p!, with 0^0 = 1.
double scaled_basis(int lag, int p) {
    if (p < 0) {
        return 0.0;
    }
    if (lag == 0) {
        return p == 0 ? 1.0 : 0.0;
    }
    double term = 1.0;
    for (int q = 1; q <= p; ++q) {
        term *= -static_cast<double>(lag) / static_cast<double>(q);
    }
    return term;
}

// (j*theta)^order * exp(-j*lag*theta)
std::complex<double> frequency_basis(int order, int lag, double theta) {
    std::complex<double> power{1.0, 0.0};
    for (int i = 0; i < order; ++i) {
        power *= std::complex<double>{0.0, theta};
    }
    return power * std::polar(1.0, -static_cast<double>(lag) * theta);
}

void check_constraints(const ConstraintSet& c) {
    if (c.k < 1 || c.m < 1) {
        throw std::invalid_argument("constraints: k and m must be positive");
    }
    if (!(c.h > 0.0) || !std::isfinite(c.h)) {
        throw std::invalid_argument("constraints: h must be positive and finite");
    }
    if (c.origin_multiplicity < 1) {
        throw std::invalid_argument("constraints: origin multiplicity must be at least 1");
    }
    for (const auto& [slot, value] : c.fixed) {
        if (slot.order < 0 || slot.order > c.k || slot.lag < 0 || slot.lag > c.m) {
            throw std::invalid_argument("constraints: fixed slot (" + std::to_string(slot.order) +
                                        ", " + std::to_string(slot.lag) + ") out of range");
        }
        if (slot.order == 0 && slot.lag == 0) {
            throw std::invalid_argument("constraints: slot (0, 0) is not a coefficient");
        }
        if (!std::isfinite(value)) {
            throw std::invalid_argument("constraints: fixed values must be finite");
        }
    }
    auto sorted = c.frequencies;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        if (!(sorted[i] > 0.0)) {
            throw std::invalid_argument("constraints: frequencies must be positive");
        }
        if (i > 0 && sorted[i] == sorted[i - 1]) {
            throw std::invalid_argument(
                "constraints: repeated frequency; multiple roots at nonzero frequencies are unsupported");
        }
        require_admissible(sorted[i], c.h);
    }
}

std::string frequency_label(std::string_view part, double omega) {
    return std::string(part) + " R(j*" + format_double(omega, 8) + ")";
}

}  // namespace

std::string_view to_string(SynthesisFailure f) noexcept {
    switch (f) {
        case SynthesisFailure::Singular: return "SINGULAR";
        case SynthesisFailure::Inconsistent: return "INCONSISTENT";
    }
    return "UNKNOWN";
}

SynthesisError::SynthesisError(SynthesisFailure kind, std::vector<std::string> conditions,
                               std::string detail)
    : std::runtime_error(std::string(to_string(kind)) + ": " + detail + " [conditions: " +
                         join(conditions) + "]"),
      kind_(kind),
      conditions_(std::move(conditions)) {}

SynthesisSystem assemble_system(const ConstraintSet& c) {
    check_constraints(c);

    SynthesisSystem sys;
    for (int i = 0; i <= c.k; ++i) {
        for (int j = 0; j <= c.m; ++j) {
            if ((i == 0 && j == 0) || c.fixed.contains({i, j})) {
                continue;
            }
            sys.unknowns.push_back({i, j});
        }
    }

    auto add_row = [&](std::string name, std::vector<double> row, double rhs) {
        double largest = 0.0;
        for (double v : row) {
            largest = std::max(largest, std::abs(v));
        }
        if (largest <= kZeroRowTolerance) {
            if (std::abs(rhs) > kZeroRowTolerance) {
                throw SynthesisError(SynthesisFailure::Inconsistent, {name},
                                     "condition " + name + " is violated by the fixed slots (residual " +
                                         format_double(rhs, 6) + ")");
            }
            sys.dropped.push_back(std::move(name));
            return;
        }
        sys.conditions.push_back(std::move(name));
        sys.matrix.push_back(std::move(row));
        sys.rhs.push_back(rhs);
    };

    // a_n / h^n = [n == 0] - sum_slots (c / h^i) (-lag)^{n-i} / (n-i)!
    for (int n = 0; n < c.origin_multiplicity; ++n) {
        std::vector<double> row;
        row.reserve(sys.unknowns.size());
        for (const auto& s : sys.unknowns) {
            row.push_back(scaled_basis(s.lag, n - s.order));
        }
        double rhs = n == 0 ? 1.0 : 0.0;
        for (const auto& [s, value] : c.fixed) {
            rhs -= value / std::pow(c.h, s.order) * scaled_basis(s.lag, n - s.order);
        }
        add_row("a" + std::to_string(n), std::move(row), rhs);
    }

    for (double omega : c.frequencies) {
        const double theta = omega * c.h;
        std::vector<double> re;
        std::vector<double> im;
        for (const auto& s : sys.unknowns) {
            const auto e = frequency_basis(s.order, s.lag, theta);
            re.push_back(e.real());
            im.push_back(e.imag());
        }
        // 1 - sum c^0 cos(lag*theta) is accumulated as
        // (1 - sum c^0) + sum c^0 * 2 sin^2(lag*theta/2) to avoid cancellation.
        double consistency = 1.0;
        double re_rhs = 0.0;
        double im_rhs = 0.0;
        for (const auto& [s, value] : c.fixed) {
            const double scaled = value / std::pow(c.h, s.order);
            if (s.order == 0) {
                const double half = 0.5 * static_cast<double>(s.lag) * theta;
                consistency -= value;
                re_rhs += value * 2.0 * std::sin(half) * std::sin(half);
                im_rhs -= value * std::sin(-static_cast<double>(s.lag) * theta);
                continue;
            }
            const auto e = frequency_basis(s.order, s.lag, theta);
            re_rhs -= scaled * e.real();
            im_rhs -= scaled * e.imag();
        }
        add_row(frequency_label("Re", omega), std::move(re), consistency + re_rhs);
        add_row(frequency_label("Im", omega), std::move(im), im_rhs);
    }
    return sys;
}

ObreshkovTableau solve_coefficients(const ConstraintSet& c, SolveOptions options) {
    const auto sys = assemble_system(c);
    const auto rows = static_cast<Eigen::Index>(sys.conditions.size());
    const auto cols = static_cast<Eigen::Index>(sys.unknowns.size());

    Eigen::VectorXd x = Eigen::VectorXd::Zero(cols);
    if (cols > 0) {
        if (rows < cols) {
            throw SynthesisError(SynthesisFailure::Singular, sys.conditions,
                                 std::to_string(rows) + " conditions for " + std::to_string(cols) +
                                     " free coefficients");
        }
        Eigen::MatrixXd a(rows, cols);
        Eigen::VectorXd b(rows);
        for (Eigen::Index r = 0; r < rows; ++r) {
            const auto ur = static_cast<std::size_t>(r);
            double largest = 0.0;
            for (Eigen::Index q = 0; q < cols; ++q) {
                largest = std::max(largest, std::abs(sys.matrix[ur][static_cast<std::size_t>(q)]));
            }
            for (Eigen::Index q = 0; q < cols; ++q) {
                a(r, q) = sys.matrix[ur][static_cast<std::size_t>(q)] / largest;
            }
            b(r) = sys.rhs[ur] / largest;
        }

        Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(a);
        if (qr.rank() < cols) {
            throw SynthesisError(SynthesisFailure::Singular, sys.conditions,
                                 "system has rank " + std::to_string(qr.rank()) + " < " +
                                     std::to_string(cols));
        }
        x = qr.solve(b);
        const double residual = (a * x - b).norm();
        if (rows > cols && residual > kInconsistencyTolerance && !options.least_squares) {
            throw SynthesisError(SynthesisFailure::Inconsistent, sys.conditions,
                                 std::to_string(rows) + " conditions for " + std::to_string(cols) +
                                     " free coefficients, least-squares residual " +
                                     format_double(residual, 6));
        }
    }

    std::vector<double> c0(static_cast<std::size_t>(c.m), 0.0);
    std::vector<std::vector<double>> rest(static_cast<std::size_t>(c.k),
                                          std::vector<double>(static_cast<std::size_t>(c.m + 1), 0.0));
    auto assign = [&](const Slot& s, double value) {
        if (s.order == 0) {
            c0[static_cast<std::size_t>(s.lag - 1)] = value;
        } else {
            rest[static_cast<std::size_t>(s.order - 1)][static_cast<std::size_t>(s.lag)] = value;
        }
    };
    for (const auto& [s, value] : c.fixed) {
        assign(s, value);
    }
    for (std::size_t q = 0; q < sys.unknowns.size(); ++q) {
        const auto& s = sys.unknowns[q];
        assign(s, x(static_cast<Eigen::Index>(q)) * std::pow(c.h, s.order));
    }

    std::optional<double> omega;
    if (c.frequencies.size() == 1) {
        omega = c.frequencies.front();
    }
    return ObreshkovTableau(c.k, c.m, c.h, std::move(c0), std::move(rest), {}, omega);
}

bool CertificationReport::passed() const noexcept {
    return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.passed; });
}

std::string CertificationReport::text() const {
    std::ostringstream out;
    for (const auto& c : checks) {
        out << (c.passed ? "[ok]   " : "[FAIL] ") << c.name;
        if (!c.detail.empty()) {
            out << ": " << c.detail;
        }
        out << '\n';
    }
    out << (passed() ? "certified" : "NOT certified") << '\n';
    return out.str();
}

CertificationReport verify_synthesis(const ObreshkovTableau& t, const ConstraintSet& c) {
    CertificationReport report;

    const bool shape = t.k() == c.k && t.m() == c.m && t.h() == c.h;
    report.checks.push_back({"shape (k, m, h)", shape,
                             "k=" + std::to_string(t.k()) + " m=" + std::to_string(t.m())});
    if (!shape) {
        return report;
    }

    const auto om = origin_multiplicity(t);
    report.origin_multiplicity = om.order;
    report.checks.push_back({"origin multiplicity >= " + std::to_string(c.origin_multiplicity),
                             om.order >= c.origin_multiplicity,
                             (om.saturated ? ">= " : "") + std::to_string(om.order)});

    for (double omega : c.frequencies) {
        const double residual = frequency_zero_residual(t, omega);
        report.frequency_residuals.push_back(residual);
        report.checks.push_back({"|R(j*" + format_double(omega, 8) + ")| <= 1e-10",
                                 residual <= kFrequencyZeroTolerance, format_double(residual, 6)});
    }

    for (const auto& [s, value] : c.fixed) {
        const double actual = t.coeff(s.order, s.lag);
        const bool match = std::abs(actual - value) <= kFixedSlotTolerance * std::max(1.0, std::abs(value));
        report.checks.push_back({"fixed c^" + std::to_string(s.order) + "_{-" + std::to_string(s.lag) +
                                     "} = " + format_double(value),
                                 match, format_double(actual)});
    }
    return report;
}

ConstraintSet integrator_b_constraints(double h, double omega_select) {
    return {2, 1, h, {{{0, 1}, 1.0}, {{1, 1}, 0.0}, {{2, 1}, 0.0}}, 1, {omega_select}};
}

ConstraintSet integrator_e_constraints(double h, double omega_select) {
    return {2, 1, h, {{{0, 1}, 1.0}, {{2, 1}, 0.0}}, 2, {omega_select}};
}

ConstraintSet integrator_f_constraints(double h) {
    return {2, 1, h, {{{0, 1}, 1.0}, {{2, 1}, 0.0}}, 4, {}};
}

}  // namespace odiff
