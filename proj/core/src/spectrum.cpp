#include "odiff/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace odiff {

namespace {

// (-lag * step)^p / p!, with 0^0 = 1.
double shifted_power(int lag, double step, int p) {
    if (lag == 0) {
        return p == 0 ? 1.0 : 0.0;
    }
    const double x = -static_cast<double>(lag) * step;
    double term = 1.0;
    for (int q = 1; q <= p; ++q) {
        term *= x / static_cast<double>(q);
    }
    return term;
}

// Series coefficients of R(s) in the variable s*h: a_n / h^n. The order-i
// coefficients are divided by h^i so every term is dimensionless.
std::vector<double> normalized_taylor(const ObreshkovTableau& t, int n_max) {
    std::vector<double> out(static_cast<std::size_t>(n_max + 1), 0.0);
    out[0] = 1.0;
    for (int i = 0; i <= t.k(); ++i) {
        const double scale = std::pow(t.h(), i);
        for (int j = 0; j <= t.m(); ++j) {
            const double c = t.coeff(i, j) / scale;
            if (c == 0.0) {
                continue;
            }
            for (int n = i; n <= n_max; ++n) {
                out[static_cast<std::size_t>(n)] -= c * shifted_power(j, 1.0, n - i);
            }
        }
    }
    return out;
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

std::complex<double> relative_error(const ObreshkovTableau& t, std::complex<double> s) {
    std::complex<double> acc{1.0, 0.0};
    for (int j = 0; j <= t.m(); ++j) {
        const std::complex<double> shift = std::exp(-s * (static_cast<double>(j) * t.h()));
        std::complex<double> power{1.0, 0.0};
        std::complex<double> inner{0.0, 0.0};
        for (int i = 0; i <= t.k(); ++i) {
            inner += t.coeff(i, j) * power;
            power *= s;
        }
        acc -= inner * shift;
    }
    return acc;
}

std::vector<double> taylor_coefficients(const ObreshkovTableau& t, int n_max) {
    if (n_max < 1) {
        throw std::invalid_argument("taylor_coefficients: n_max must be at least 1");
    }
    std::vector<double> out(static_cast<std::size_t>(n_max + 1), 0.0);
    out[0] = 1.0;
    for (int i = 0; i <= t.k(); ++i) {
        for (int j = 0; j <= t.m(); ++j) {
            const double c = t.coeff(i, j);
            if (c == 0.0) {
                continue;
            }
            for (int n = i; n <= n_max; ++n) {
                out[static_cast<std::size_t>(n)] -= c * shifted_power(j, t.h(), n - i);
            }
        }
    }
    return out;
}

int default_series_length(const ObreshkovTableau& t) noexcept {
    return t.k() + t.m() + 10;
}

OriginMultiplicity origin_multiplicity(const ObreshkovTableau& t, std::optional<double> threshold,
                                       std::optional<int> n_max) {
    const int n_top = n_max.value_or(default_series_length(t));
    if (n_top < 1) {
        throw std::invalid_argument("origin_multiplicity: n_max must be at least 1");
    }
    if (threshold && !(*threshold > 0.0)) {
        throw std::invalid_argument("origin_multiplicity: threshold must be positive");
    }
    const auto scaled = normalized_taylor(t, n_top);

    double cut = 0.0;
    if (threshold) {
        cut = *threshold;
    } else {
        double largest = 1.0;
        for (double a : scaled) {
            largest = std::max(largest, std::abs(a));
        }
        cut = 1e-10 * largest;
    }

    for (int n = 0; n <= n_top; ++n) {
        if (std::abs(scaled[static_cast<std::size_t>(n)]) > cut) {
            return {n, false};
        }
    }
    return {n_top + 1, true};
}

double frequency_zero_residual(const ObreshkovTableau& t, double omega) {
    if (!(omega > 0.0)) {
        throw std::invalid_argument("frequency_zero_residual: omega must be positive");
    }
    return std::abs(relative_error(t, {0.0, omega}));
}

std::vector<SweepPoint> sweep(const ObreshkovTableau& t, std::span<const double> omega_grid) {
    if (omega_grid.empty()) {
        throw std::invalid_argument("sweep: empty frequency grid");
    }
    for (std::size_t i = 0; i < omega_grid.size(); ++i) {
        if (!(omega_grid[i] > 0.0) || (i > 0 && !(omega_grid[i] > omega_grid[i - 1]))) {
            throw std::invalid_argument("sweep: grid must be positive and strictly increasing");
        }
    }
    std::vector<SweepPoint> out;
    out.reserve(omega_grid.size());
    for (double w : omega_grid) {
        out.push_back({w, std::abs(relative_error(t, {0.0, w}))});
    }
    return out;
}

std::vector<double> make_grid(double from, double to, int points, bool logarithmic) {
    if (points < 1) {
        throw std::invalid_argument("grid: need at least one point");
    }
    if (!(from > 0.0) || !(to >= from) || (points > 1 && !(to > from))) {
        throw std::invalid_argument("grid: require 0 < from < to");
    }
    std::vector<double> grid;
    grid.reserve(static_cast<std::size_t>(points));
    if (points == 1) {
        grid.push_back(from);
        return grid;
    }
    for (int i = 0; i < points; ++i) {
        const double f = static_cast<double>(i) / static_cast<double>(points - 1);
        if (logarithmic) {
            grid.push_back(from * std::pow(to / from, f));
        } else {
            grid.push_back(from + (to - from) * f);
        }
    }
    grid.back() = to;
    return grid;
}

std::string sweep_csv(std::span<const SweepPoint> points) {
    std::string out = "omega_rad_s,abs_relative_error\n";
    for (const auto& p : points) {
        out += format_double(p.omega);
        out += ',';
        out += format_double(p.abs_relative_error);
        out += '\n';
    }
    return out;
}

ErrorSpectrum analyze_spectrum(const ObreshkovTableau& t, std::optional<int> n_max) {
    const int n_top = n_max.value_or(default_series_length(t));
    return {t, taylor_coefficients(t, n_top), origin_multiplicity(t, std::nullopt, n_top)};
}

}  // namespace odiff
