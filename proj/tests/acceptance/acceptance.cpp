// One line per acceptance criterion; exit status is the number of failures.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "experiments.hpp"
#include "odiff/catalog.hpp"
#include "odiff/simulator.hpp"
#include "odiff/solver.hpp"
#include "odiff/spectrum.hpp"
#include "odiff/suitability.hpp"

using namespace odiff;
using experiments::kOmegaSyn;

namespace {

// Tolerances
constexpr double kTable3Rel = 0.02;
constexpr double kExactCell = 1e-6;
constexpr double kFig1Low = 270.0;
constexpr double kFig1High = 330.0;
constexpr double kFig1Alternation = 0.95;
constexpr double kFig2MinAmplitude = 1.0;
constexpr double kFig2RatioLow = 0.9;
constexpr double kFig2RatioHigh = 1.1;
constexpr double kFig3Bias = 0.5;
constexpr double kFig3Settle = 1e-6;
constexpr double kClosedFormRel = 1e-12;
constexpr double kFrequencyResidual = 1e-10;
constexpr double kEngineRel = 1e-12;
constexpr double kRootAgreement = 1e-9;
constexpr double kSuperposition = 1e-10;
constexpr double kPolyExact = 1e-9;
constexpr double kIdealZero = 1e-12;
constexpr double kCrossRel = 0.02;

int failures = 0;

void report(int id, const char* title, bool ok, const std::string& detail) {
    std::printf("[%s] %d. %s: %s\n", ok ? "PASS" : "FAIL", id, title, detail.c_str());
    failures += ok ? 0 : 1;
}

double rel(double a, double b) {
    return std::abs(a - b) / std::max(std::abs(b), 1e-300);
}

ObreshkovTableau catalog(IntegratorId id, double h, double w = kOmegaSyn) {
    return make_catalog(id, h, is_frequency_optimized(id) ? std::optional<double>(w) : std::nullopt);
}

std::vector<double> proper_init(const ObreshkovTableau& t, const Signal& sig) {
    std::vector<double> init;
    for (int j = 0; j < t.m(); ++j) {
        init.push_back(sig.deriv(t.k(), -j * t.h()));
    }
    return init;
}

double max_abs(const std::vector<double>& v) {
    double out = 0.0;
    for (double x : v) {
        out = std::max(out, std::abs(x));
    }
    return out;
}

void criterion1() {
    const auto checks = experiments::check_table2(table2_report(1e-3, kOmegaSyn));
    std::ostringstream d;
    bool ok = checks.size() == 6;
    for (const auto& c : checks) {
        ok = ok && c.passed();
        d << c.label << (c.passed() ? " ok " : " MISMATCH ");
    }
    report(1, "Suitability table", ok, d.str());
}

void criterion2() {
    const auto cells = experiments::table3();
    bool ok = cells.size() == 24;
    double worst_rel = 0.0;
    double worst_exact = 0.0;
    for (const auto& c : cells) {
        if (c.reference == 0.0) {
            worst_exact = std::max(worst_exact, c.computed);
            ok = ok && c.computed < kExactCell;
        } else {
            worst_rel = std::max(worst_rel, rel(c.computed, c.reference));
            ok = ok && rel(c.computed, c.reference) <= kTable3Rel;
        }
    }
    char buf[160];
    std::snprintf(buf, sizeof buf, "worst D/F deviation %.4f%% (limit %.0f%%), worst B/E error %.2e (limit %.0e)",
                  100.0 * worst_rel, 100.0 * kTable3Rel, worst_exact, kExactCell);
    report(2, "Step-size error table", ok, buf);
}

void criterion3() {
    const auto r = experiments::fig1();
    const bool ok = r.amplitude >= kFig1Low && r.amplitude <= kFig1High && r.alternation_fraction >= kFig1Alternation;
    char buf[160];
    std::snprintf(buf, sizeof buf, "amplitude %.3f in [%.0f, %.0f], alternation %.3f >= %.2f", r.amplitude, kFig1Low,
                  kFig1High, r.alternation_fraction, kFig1Alternation);
    report(3, "TR oscillation", ok, buf);
}

void criterion4() {
    const auto schemes = experiments::fig2();
    bool ok = schemes.size() == 2;
    std::ostringstream d;
    for (const auto& s : schemes) {
        const double ratio = s.damping_ratio();
        ok = ok && s.amplitude > kFig2MinAmplitude && ratio >= kFig2RatioLow && ratio <= kFig2RatioHigh;
        char buf[120];
        std::snprintf(buf, sizeof buf, "%d half steps: amplitude %.3f, late/early %.4f; ", s.half_steps, s.amplitude,
                      ratio);
        d << buf;
    }
    report(4, "BE half-step startup", ok, d.str());
}

void criterion5() {
    const auto curves = experiments::fig3();
    const double w2 = kOmegaSyn * kOmegaSyn;
    bool ok = true;
    std::ostringstream d;
    for (const auto& c : curves) {
        char buf[120];
        if (c.id == IntegratorId::A || c.id == IntegratorId::C) {
            ok = ok && std::abs(c.terminal_bias) > kFig3Bias * w2;
            std::snprintf(buf, sizeof buf, "%s bias %.4f w^2; ", std::string(to_string(c.id)).c_str(),
                          c.terminal_bias / w2);
        } else {
            ok = ok && c.max_error_from_2 < kFig3Settle * w2;
            std::snprintf(buf, sizeof buf, "%s max |err| from n=2 %.2e w^2", std::string(to_string(c.id)).c_str(),
                          c.max_error_from_2 / w2);
        }
        d << buf;
    }
    report(5, "Bias vs rapid elimination", ok, d.str());
}

void criterion6() {
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> log_h(-6.0, 0.0);
    std::uniform_real_distribution<double> theta(0.05, 6.0);
    bool ok = true;
    double worst_b = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
        const double h = std::pow(10.0, log_h(rng));
        const double w = theta(rng) / h;
        const auto b = solve_coefficients(integrator_b_constraints(h, w));
        const double e1 = rel(b.coeff(1, 0), std::sin(w * h) / w);
        const double e2 = rel(b.coeff(2, 0), (std::cos(w * h) - 1.0) / (w * w));
        worst_b = std::max({worst_b, e1, e2});
        ok = ok && e1 <= kClosedFormRel && e2 <= kClosedFormRel && b.coeff(1, 1) == 0.0 && b.coeff(2, 1) == 0.0;
    }
    const double h = 1e-3;
    const auto f = solve_coefficients(integrator_f_constraints(h));
    const double worst_f = std::max({rel(f.coeff(1, 0), 2.0 * h / 3.0), rel(f.coeff(1, 1), h / 3.0),
                                     rel(f.coeff(2, 0), -h * h / 6.0)});
    ok = ok && worst_f <= kClosedFormRel && origin_multiplicity(f).order == 4;

    const auto ec = integrator_e_constraints(h, kOmegaSyn);
    const auto e = solve_coefficients(ec);
    const auto cert = verify_synthesis(e, ec);
    const double residual = frequency_zero_residual(e, kOmegaSyn);
    const double sum_dev = std::abs(e.coeff(1, 0) + e.coeff(1, 1) - h) / h;
    ok = ok && cert.passed() && origin_multiplicity(e).order == 2 && residual <= kFrequencyResidual &&
         sum_dev <= kClosedFormRel;
    char buf[200];
    std::snprintf(buf, sizeof buf, "B worst %.1e, F worst %.1e, E multiplicity %d, |R(jw)| %.1e, c1 sum dev %.1e",
                  worst_b, worst_f, origin_multiplicity(e).order, residual, sum_dev);
    report(6, "Solver closure", ok, buf);
}

void criterion7() {
    const std::vector<std::pair<IntegratorId, int>> expected = {
        {IntegratorId::A, 3}, {IntegratorId::B, 1}, {IntegratorId::C, 5},
        {IntegratorId::D, 3}, {IntegratorId::E, 2}, {IntegratorId::F, 4},
    };
    bool ok = true;
    std::ostringstream d;
    for (const auto& [id, p] : expected) {
        const int got = origin_multiplicity(catalog(id, 1e-3)).order;
        ok = ok && got == p;
        d << to_string(id) << '=' << got << ' ';
    }
    report(7, "Origin multiplicities", ok, d.str());
}

bool engines_agree() {
    std::mt19937_64 rng(99);
    std::uniform_int_distribution<std::size_t> pick(0, kAllIntegrators.size() - 1);
    std::uniform_int_distribution<int> kind(0, 2);
    std::uniform_real_distribution<double> u(-10.0, 10.0);
    for (int trial = 0; trial < 100; ++trial) {
        const auto id = kAllIntegrators[pick(rng)];
        const double h = 1e-3 * (1.0 + std::abs(u(rng)));
        const auto t = catalog(id, h, 1.0 / h);
        const int which = kind(rng);
        const Signal sig = which == 0   ? Signal::cosine(kOmegaSyn, u(rng))
                           : which == 1 ? Signal::polynomial({u(rng), u(rng), u(rng)})
                                        : Signal::constant(u(rng));
        std::vector<double> init;
        for (int j = 0; j < t.m(); ++j) {
            init.push_back(100.0 * u(rng));
        }
        const auto a = run(t, sig, 200 * h, init, Engine::Direct);
        const auto b = run(t, sig, 200 * h, init, Engine::StateSpace);
        const double scale = std::max(1.0, max_abs(a.computed));
        for (std::size_t q = 0; q < a.size(); ++q) {
            if (std::abs(a.computed[q] - b.computed[q]) > kEngineRel * scale) {
                return false;
            }
        }
    }
    return true;
}

bool roots_agree() {
    const auto key = [](std::complex<double> a, std::complex<double> b) {
        return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
    };
    for (auto id : kAllIntegrators) {
        const auto t = catalog(id, 1e-3);
        auto eig = eigenvalues(state_transition_matrix(t), t.m());
        auto roots = polynomial_roots(characteristic_polynomial(t));
        std::sort(eig.begin(), eig.end(), key);
        std::sort(roots.begin(), roots.end(), key);
        if (eig.size() != roots.size()) {
            return false;
        }
        for (std::size_t q = 0; q < eig.size(); ++q) {
            if (std::abs(eig[q] - roots[q]) > kRootAgreement) {
                return false;
            }
        }
    }
    return true;
}

bool superposition_holds() {
    const auto sig = Signal::cosine(kOmegaSyn, 1.0);
    for (auto id : kAllIntegrators) {
        const auto t = catalog(id, 1e-3);
        const std::vector<double> ia(static_cast<std::size_t>(t.m()), 300.0);
        const std::vector<double> ib(static_cast<std::size_t>(t.m()), -40.0);
        const std::vector<double> diff(static_cast<std::size_t>(t.m()), 340.0);
        const auto a = run(t, sig, 0.05, ia);
        const auto b = run(t, sig, 0.05, ib);
        const auto hom = run(t, Signal::constant(0.0), 0.05, diff);
        const double scale = std::max({max_abs(a.error), max_abs(b.error), max_abs(hom.computed)});
        for (std::size_t q = 0; q < a.size(); ++q) {
            if (std::abs(a.error[q] - b.error[q] - hom.computed[q]) > kSuperposition * scale) {
                return false;
            }
        }
    }
    return true;
}

bool polynomial_exactness() {
    const double h = 0.1;
    for (auto id : kAllIntegrators) {
        const auto t = catalog(id, h, 10.0);
        const int p = origin_multiplicity(t).order;
        for (int degree = 0; degree <= p; ++degree) {
            std::vector<double> coeffs(static_cast<std::size_t>(degree + 1), 1.0);
            const auto sig = Signal::polynomial(coeffs);
            const auto trace = run(t, sig, 2.0, proper_init(t, sig));
            double worst = 0.0;
            for (std::size_t q = 0; q < trace.size(); ++q) {
                worst = std::max(worst, std::abs(trace.error[q]) / std::max(1.0, std::abs(trace.exact[q])));
            }
            const bool exact = worst <= kPolyExact;
            if (exact != (degree < p)) {
                return false;
            }
        }
    }
    return true;
}

bool ideal_equivalence() {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<int> kd(1, 3);
    std::uniform_int_distribution<int> md(1, 4);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    std::bernoulli_distribution coin(0.5);
    for (int trial = 0; trial < 1000; ++trial) {
        const int k = kd(rng);
        const int m = md(rng);
        const double h = std::pow(10.0, 2.0 * u(rng));
        std::vector<double> c0(static_cast<std::size_t>(m));
        double sum = 0.0;
        for (int j = 1; j < m; ++j) {
            c0[static_cast<std::size_t>(j)] = u(rng);
            sum += c0[static_cast<std::size_t>(j)];
        }
        c0[0] = 1.0 - sum;
        std::vector<std::vector<double>> c(static_cast<std::size_t>(k),
                                           std::vector<double>(static_cast<std::size_t>(m + 1)));
        for (auto& row : c) {
            for (auto& v : row) {
                v = u(rng) * h;
            }
        }
        auto& lead = c.back();
        lead[0] = (std::abs(lead[0]) + 0.05 * h) * (coin(rng) ? 1.0 : -1.0);
        const bool zero = coin(rng);
        for (int j = 1; j <= m; ++j) {
            if (zero || coin(rng)) {
                lead[static_cast<std::size_t>(j)] = 0.0;
            }
        }
        const ObreshkovTableau t(k, m, h, c0, c);
        bool history_zero = true;
        for (int j = 1; j <= m; ++j) {
            history_zero = history_zero && std::abs(t.coeff(k, j)) <= kIdealZero * std::abs(t.leading());
        }
        if ((analyze(t).classification == Classification::Ideal) != history_zero) {
            return false;
        }
    }
    return true;
}

void criterion8() {
    const bool engines = engines_agree();
    const bool roots = roots_agree();
    const bool superposition = superposition_holds();
    const bool poly = polynomial_exactness();
    const bool ideal = ideal_equivalence();
    std::ostringstream d;
    d << "engines " << (engines ? "ok" : "FAIL") << ", eigen/roots " << (roots ? "ok" : "FAIL") << ", superposition "
      << (superposition ? "ok" : "FAIL") << ", polynomial exactness " << (poly ? "ok" : "FAIL")
      << ", ideal criterion " << (ideal ? "ok" : "FAIL");
    report(8, "Property suites", engines && roots && superposition && poly && ideal, d.str());
}

void criterion9() {
    bool ok = true;
    double worst = 0.0;
    const auto sig = Signal::cosine(kOmegaSyn, 1.0);
    for (auto id : {IntegratorId::D, IntegratorId::F}) {
        for (int us : experiments::kTable3StepsUs) {
            const auto t = catalog(id, us * 1e-6);
            const double predicted =
                100.0 * frequency_zero_residual(t, kOmegaSyn) / (kOmegaSyn * kOmegaSyn * std::abs(t.coeff(2, 0)));
            const double simulated = relative_error_metric(run(t, sig, 1.0, std::vector<double>{0.0}));
            worst = std::max(worst, rel(simulated, predicted));
            ok = ok && rel(simulated, predicted) <= kCrossRel;
        }
    }
    char buf[120];
    std::snprintf(buf, sizeof buf, "worst simulated vs spectral deviation %.4f%% (limit %.0f%%)", 100.0 * worst,
                  100.0 * kCrossRel);
    report(9, "Spectrum predicts simulated error", ok, buf);
}

}  // namespace

int main() {
    criterion1();
    criterion2();
    criterion3();
    criterion4();
    criterion5();
    criterion6();
    criterion7();
    criterion8();
    criterion9();
    std::printf("%d of 9 criteria passed\n", 9 - failures);
    return failures == 0 ? 0 : 1;
}
