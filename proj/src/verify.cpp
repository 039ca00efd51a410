#include "casimir/verify.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "casimir/optics.hpp"

namespace casimir {

namespace {

using cplx = std::complex<double>;

constexpr double kPi = 3.141592653589793238462643383279502884;

double medium_scale(const ForceConfig& cfg) {
    double s = std::max({cfg.medium.omega0, cfg.medium.omega_p, cfg.medium.env.gamma0});
    if (cfg.medium.env.cutoff != Cutoff::None) s = std::max(s, cfg.medium.env.lambda_cut);
    return s > 0.0 ? s : 1.0;
}

// Log-spaced sample frequencies across the medium's response, dodging the
// bare resonance of an undamped dielectric where the permittivity diverges.
std::vector<double> frequency_grid(const ForceConfig& cfg, int count) {
    const double scale = medium_scale(cfg);
    const double lo = 1e-2 * scale, hi = 1e2 * scale;
    std::vector<double> ks;
    ks.reserve(count);
    for (int i = 0; i < count; ++i) {
        const double k = lo * std::pow(hi / lo, (i + 0.5) / count);
        if (cfg.medium.env.gamma0 == 0.0 && cfg.medium.omega0 > 0.0 &&
            std::abs(k - cfg.medium.omega0) < 1e-3 * cfg.medium.omega0)
            continue;
        ks.push_back(k);
    }
    return ks;
}

// Runs the check body, converting any exception into that check's failure
// so one broken invariant never hides the rest of the report.
template <typename Fn>
CheckResult guarded(std::string name, Fn&& body) {
    CheckResult c;
    c.name = std::move(name);
    try {
        body(c);
        if (c.skipped) c.passed = true;
    } catch (const std::exception& e) {
        c.passed = false;
        c.skipped = false;
        c.message = std::string("error: ") + e.what();
    }
    return c;
}

void skip(CheckResult& c, std::string why) {
    c.skipped = true;
    c.message = std::move(why);
}

// --- bath / kernel checks ---

CheckResult check_kernel_spectrum(const ForceConfig& cfg) {
    return guarded("damping kernel real part matches the bath spectrum", [&](CheckResult& c) {
        c.tolerance = 1e-10;
        double worst = 0.0;
        for (const double k : frequency_grid(cfg, 48)) {
            const double lhs = gamma_of_k(cfg.medium.env, k).real();
            const double rhs =
                kPi * spectral_density(cfg.medium.env, k) / (cfg.medium.env.mass * k);
            const double scale = std::max({std::abs(lhs), std::abs(rhs), 1e-300});
            worst = std::max(worst, std::abs(lhs - rhs) / scale);
        }
        c.measured = worst;
        c.passed = worst <= c.tolerance;
    });
}

CheckResult check_undamped_kernel(const ForceConfig& cfg) {
    return guarded("undamped bath leaves no memory kernel", [&](CheckResult& c) {
        EnvironmentSpec env = cfg.medium.env;
        env.gamma0 = 0.0;
        double worst = 0.0;
        for (const double k : frequency_grid(cfg, 24)) {
            worst = std::max(worst, std::abs(gamma_of_k(env, k)));
            worst = std::max(worst, std::abs(damping_laplace(env, cplx(k, 0.0))));
        }
        c.measured = worst;
        c.tolerance = 0.0;
        c.passed = worst <= c.tolerance;
    });
}

CheckResult check_laplace_positivity(const ForceConfig& cfg) {
    return guarded("memory kernel is real and nonnegative on the Laplace axis",
                   [&](CheckResult& c) {
        c.tolerance = 1e-12;
        double worst = 0.0;
        for (const double s : frequency_grid(cfg, 48)) {
            const cplx g = damping_laplace(cfg.medium.env, cplx(s, 0.0));
            const double scale = std::max(std::abs(g), 1e-300);
            worst = std::max(worst, std::abs(g.imag()) / scale);
            worst = std::max(worst, std::max(-g.real(), 0.0) / scale);
        }
        c.measured = worst;
        c.passed = worst <= c.tolerance;
    });
}

CheckResult check_dissipation_balance(const ForceConfig& cfg) {
    return guarded("dissipation kernel balances the damping memory", [&](CheckResult& c) {
        const EnvironmentSpec& env = cfg.medium.env;
        if (env.cutoff == Cutoff::None)
            return skip(c, "time-domain kernels are distributional without a cutoff");
        if (env.cutoff == Cutoff::Lorentzian && env.alpha == 3.0)
            return skip(c, "time-domain kernels are distributional for this bath family");
        c.tolerance = 1e-4;
        const double tau0 = 1.0 / env.lambda_cut;
        const double h = 1e-4 * tau0;
        std::array<std::array<double, 2>, 8> rows{};
        double scale = 0.0;
        for (int i = 0; i < 8; ++i) {
            const double t = tau0 * (0.25 + 0.5 * i);
            rows[i][0] = (damping_kernel_time(env, t + h) - damping_kernel_time(env, t - h)) /
                         (2.0 * h);
            rows[i][1] = -dissipation_kernel(env, t) / env.mass;
            scale = std::max({scale, std::abs(rows[i][0]), std::abs(rows[i][1])});
        }
        if (scale == 0.0) {  // undamped bath: both sides identically zero
            c.measured = 0.0;
            c.passed = true;
            return;
        }
        double worst = 0.0;
        for (const auto& row : rows)
            worst = std::max(worst, std::abs(row[0] - row[1]) / scale);
        c.measured = worst;
        c.passed = worst <= c.tolerance;
    });
}

CheckResult check_cubic_roots(const ForceConfig& cfg) {
    return guarded("internal-oscillator roots stay in the damped half-plane",
                   [&](CheckResult& c) {
        const EnvironmentSpec& env = cfg.medium.env;
        if (!(env.cutoff == Cutoff::Lorentzian && env.alpha == 3.0))
            return skip(c, "applies to the alpha = 3 Lorentzian bath");
        if (!(env.gamma0 > 0.0)) return skip(c, "requires damping");
        if (!(cfg.medium.omega0 > 0.0))
            return skip(c, "requires an internal restoring frequency");
        const CubicRoots roots = cubic_roots_alpha3(env, cfg.medium.omega0);
        const double scale =
            std::max({std::abs(roots.x1), std::abs(roots.x2), std::abs(roots.x3)});
        double worst = 0.0;
        for (const cplx& x : {roots.x1, roots.x2, roots.x3})
            worst = std::max(worst, x.imag() / scale);  // must sit below the axis
        worst = std::max(worst, std::abs(roots.x1.real()) / scale);
        if (roots.x2.real() > 1e-8 * scale)  // underdamped: mirror pair
            worst = std::max(worst, std::abs(roots.x3 + std::conj(roots.x2)) / scale);
        c.measured = worst;
        c.tolerance = 1e-10;
        c.passed = worst <= c.tolerance;
    });
}

// --- optical-response checks ---

CheckResult check_branch_selection(const ForceConfig& cfg) {
    return guarded("refractive index stays in the absorbing branch", [&](CheckResult& c) {
        c.tolerance = 0.0;
        double worst = 0.0;
        bool strict_ok = true;
        for (const double k : frequency_grid(cfg, 96)) {
            const cplx eps = permittivity(cfg.medium, k);
            const cplx n = refractive_index_of(eps);
            worst = std::max(worst, -n.imag() / std::abs(n));
            if (eps.imag() > 0.0 && !(n.imag() > 0.0)) strict_ok = false;
        }
        c.measured = std::max(worst, 0.0);
        c.passed = worst <= 0.0 && strict_ok;
        if (!strict_ok) c.message = "absorbing permittivity mapped to a lossless index";
    });
}

CheckResult check_lossless_flux(const ForceConfig& cfg) {
    return guarded("lossless medium conserves scattering flux", [&](CheckResult& c) {
        MediumSpec med = cfg.medium;
        med.env.gamma0 = 0.0;
        c.tolerance = 1e-10;
        double worst = 0.0;
        int used = 0;
        ForceConfig probe = cfg;
        probe.medium = med;
        for (const double k : frequency_grid(probe, 64)) {
            const cplx eps = permittivity(med, k);
            if (!(eps.real() > 1e-6) || std::abs(eps.imag()) > 0.0) continue;  // evanescent
            const SlabCoeffs sc = slab_coeffs(med, cfg.geometry.thickness, k);
            worst = std::max(worst,
                             std::abs(std::norm(sc.r) + std::norm(sc.t) - 1.0));
            const SlabOpticalState st = two_slab_coeffs(med, cfg.geometry, k);
            worst = std::max(worst, std::abs(std::norm(st.R) + std::norm(st.T) - 1.0));
            ++used;
        }
        if (used == 0) return skip(c, "no propagating band sampled for this medium");
        c.measured = worst;
        c.passed = worst <= c.tolerance;
    });
}

CheckResult check_transfer_matrix(const ForceConfig& cfg) {
    return guarded("two-slab amplitudes match a transfer-matrix assembly", [&](CheckResult& c) {
        c.tolerance = 1e-9;
        const double a = cfg.geometry.gap, d = cfg.geometry.thickness;
        const double scale = medium_scale(cfg);
        std::mt19937 rng(7141u);
        std::uniform_real_distribution<double> uni(0.0, 1.0);
        // Crossing an interface at x0, from the medium on its right (wave
        // number qr, amplitudes p/m) into the medium on its left (ql):
        // continuity of the field and of its derivative.
        auto cross = [](cplx p, cplx m, cplx qr, cplx ql, double x0) {
            const cplx er = std::exp(cplx(0.0, 1.0) * qr * x0);
            const cplx el = std::exp(cplx(0.0, 1.0) * ql * x0);
            const cplx f = p * er + m / er;
            const cplx g = (qr / ql) * (p * er - m / er);
            return std::array<cplx, 2>{0.5 * (f + g) / el, 0.5 * (f - g) * el};
        };
        double worst = 0.0;
        int used = 0;
        for (int draw = 0; draw < 100 && used < 60; ++draw) {
            const double k = 3e-2 * scale * std::pow(1e3, uni(rng));
            if (cfg.medium.env.gamma0 == 0.0 && cfg.medium.omega0 > 0.0 &&
                std::abs(k - cfg.medium.omega0) < 1e-3 * cfg.medium.omega0)
                continue;
            const cplx n = refractive_index(cfg.medium, k);
            if (k * n.imag() * (d + a) > 12.0) continue;  // oracle overflows
            const SlabOpticalState st = two_slab_coeffs(cfg.medium, cfg.geometry, k);
            const cplx q = k * n;
            const double x1 = -0.5 * a - d, x2 = -0.5 * a, x3 = 0.5 * a, x4 = 0.5 * a + d;
            auto [ep, fp] = cross(1.0, 0.0, cplx(k, 0.0), q, x4);
            auto [cp, dp] = cross(ep, fp, q, cplx(k, 0.0), x3);
            auto [ap, bp] = cross(cp, dp, cplx(k, 0.0), q, x2);
            auto [ip, im] = cross(ap, bp, q, cplx(k, 0.0), x1);
            auto dev = [&](cplx oracle, cplx mine) {
                return std::abs(oracle / ip - mine) / std::max(std::abs(mine), 1e-3);
            };
            worst = std::max({worst, dev(1.0, st.T), dev(im, st.R), dev(cp, st.C),
                              dev(dp, st.D), dev(ap, st.A), dev(bp, st.B), dev(ep, st.E),
                              dev(fp, st.F)});
            ++used;
        }
        if (used < 20)
            return skip(c, "slabs opaque at nearly every sampled frequency; the "
                           "transfer-matrix oracle is unstable there");
        c.measured = worst;
        c.passed = worst <= c.tolerance;
    });
}

CheckResult check_kramers_kronig(const ForceConfig& cfg) {
    return guarded("absorption and refraction satisfy the dispersion relation",
                   [&](CheckResult& c) {
        if (!(cfg.medium.env.gamma0 > 0.0)) return skip(c, "requires a damped medium");
        if (!(cfg.medium.omega_p > 0.0)) return skip(c, "transparent medium: nothing to relate");
        c.tolerance = 1e-2;
        const double w0 = cfg.medium.omega0;
        const double gamma0 = cfg.medium.env.gamma0;
        const double scale = medium_scale(cfg);
        const double W = 60.0 * scale;
        // Width of the sharpest absorption feature: for a dielectric the
        // on-resonance damping kernel sets the line width (which can be far
        // below gamma0 when the bath is stiff there); for a conductor the
        // low-frequency knee sits at the damping rate itself.
        double width =
            w0 > 0.0 ? 0.5 * std::abs(gamma_of_k(cfg.medium.env, w0)) : gamma0;
        width = std::clamp(width, 1e-6 * scale, scale);
        // Coarse uniform grid over [0, W] plus a fine window across the
        // feature, so the quadrature resolves the line without paying the
        // fine step everywhere.
        std::vector<double> nodes;
        const int n0 = 9000;
        const double h0 = W / n0;
        nodes.reserve(n0 + 600);
        for (int i = 0; i <= n0; ++i) nodes.push_back(i * h0);
        const double h1 = width / 12.0;
        if (h1 < h0) {
            const double center = w0 > 0.0 ? w0 : 0.0;
            const double lo = std::max(center - 40.0 * width, 0.5 * h1);
            const double hi = std::min(center + 40.0 * width, W - 0.5 * h1);
            for (double x = lo; x <= hi; x += h1) nodes.push_back(x);
        }
        std::sort(nodes.begin(), nodes.end());
        const double dedupe = 0.2 * std::min(h0, h1);
        nodes.erase(std::unique(nodes.begin(), nodes.end(),
                                [&](double a, double b) { return b - a < dedupe; }),
                    nodes.end());
        const int n = static_cast<int>(nodes.size());
        // Store the product x * Im eps(x): it stays finite at x -> 0 even
        // for a conductor, whose Im eps itself diverges like 1/x there.
        std::vector<double> p(n);
        for (int i = 0; i < n; ++i) {
            const double x = std::max(nodes[i], 1e-9 * W);
            p[i] = x * permittivity(cfg.medium, x).imag();
        }
        // Principal-value Hilbert transform with the singular point
        // subtracted analytically, evaluated between grid nodes.
        auto transform = [&](double w, double imw) {
            double acc = 0.0;
            double prev = (p[0] - w * imw) / (nodes[0] * nodes[0] - w * w);
            for (int i = 1; i < n; ++i) {
                const double g = (p[i] - w * imw) / (nodes[i] * nodes[i] - w * w);
                acc += 0.5 * (prev + g) * (nodes[i] - nodes[i - 1]);
                prev = g;
            }
            acc += 0.5 * imw * std::log((W - w) / (W + w));
            return (2.0 / kPi) * acc;
        };
        double num = 0.0, den = 0.0;
        const double lo = 2e-2 * scale, hi = 0.75 * W;
        for (int j = 0; j < 48; ++j) {
            const double target = lo * std::pow(hi / lo, (j + 0.5) / 48.0);
            const auto it = std::lower_bound(nodes.begin(), nodes.end(), target);
            if (it == nodes.begin() || it == nodes.end()) continue;
            const double w = 0.5 * (*(it - 1) + *it);  // between nodes: kernel stays finite
            const cplx eps = permittivity(cfg.medium, w);
            const double lhs = eps.real() - 1.0;
            const double rhs = transform(w, eps.imag());
            num += (lhs - rhs) * (lhs - rhs);
            den += lhs * lhs;
        }
        c.measured = std::sqrt(num / den);
        c.passed = c.measured <= c.tolerance;
    });
}

CheckResult check_response_causality(const ForceConfig& cfg) {
    return guarded("time-domain response is causal and starts at zero", [&](CheckResult& c) {
        if (!(cfg.medium.env.gamma0 > 0.0))
            return skip(c, "the numeric response route requires a damped medium");
        if (!(cfg.medium.omega_p > 0.0))
            return skip(c, "transparent medium: no response to test");
        if (!(cfg.medium.omega0 > 0.0))
            return skip(c, "a conductor's response has a zero-frequency pole beyond the "
                           "numeric inverse transform");
        // The residual measures the inverse transform's fidelity; a bath
        // with no cutoff has a fatter spectral tail and inverts less cleanly.
        c.tolerance = cfg.medium.env.cutoff == Cutoff::None ? 3e-5 : 1e-5;
        const double scale = medium_scale(cfg);
        double peak = 0.0;
        for (int i = 1; i <= 12; ++i)
            peak = std::max(peak, std::abs(susceptibility(cfg.medium, 1.5 * i / (12.0 * scale),
                                                          ChiRoute::Numeric)));
        double worst = 0.0;
        for (const double tau : {-2.5 / scale, -1.0 / scale, -0.4 / scale, 0.0})
            worst = std::max(worst,
                             std::abs(susceptibility(cfg.medium, tau, ChiRoute::Numeric)));
        c.measured = worst / std::max(peak, 1e-300);
        c.passed = c.measured <= c.tolerance;
    });
}

CheckResult check_chi_routes(const ForceConfig& cfg) {
    return guarded("analytic and numeric time responses agree", [&](CheckResult& c) {
        const EnvironmentSpec& env = cfg.medium.env;
        if (!(env.cutoff == Cutoff::Lorentzian && env.alpha == 3.0))
            return skip(c, "the analytic route applies to the alpha = 3 Lorentzian bath");
        if (!(env.gamma0 > 0.0)) return skip(c, "requires a damped medium");
        if (!(cfg.medium.omega0 > 0.0))
            return skip(c, "requires an internal restoring frequency");
        if (!(cfg.medium.omega_p > 0.0))
            return skip(c, "transparent medium: no response to test");
        c.tolerance = 1e-4;
        const double w0 = cfg.medium.omega0;
        double peak = 0.0, worst = 0.0;
        std::array<double, 25> analytic{}, numeric{};
        for (int i = 0; i < 25; ++i) {
            const double tau = 20.0 / w0 * (i + 1) / 25.0;
            analytic[i] = susceptibility(cfg.medium, tau, ChiRoute::Analytic);
            numeric[i] = susceptibility(cfg.medium, tau, ChiRoute::Numeric);
            peak = std::max(peak, std::abs(analytic[i]));
        }
        for (int i = 0; i < 25; ++i)
            worst = std::max(worst, std::abs(analytic[i] - numeric[i]));
        c.measured = worst / std::max(peak, 1e-300);
        c.passed = c.measured <= c.tolerance;
    });
}

// --- force checks ---

constexpr const char* kMatsubaraNotice =
    "requires Matsubara route: the real axis crosses an undamped internal resonance";

CheckResult check_sum_rules(const ForceConfig& cfg) {
    return guarded("spectral sum rules split the thermal density", [&](CheckResult& c) {
        c.tolerance = 1e-10;
        double worst = 0.0;
        for (const double k : frequency_grid(cfg, 200)) {
            const SlabOpticalState st = two_slab_coeffs(cfg.medium, cfg.geometry, k);
            const double kc = thermal_weight(k, cfg.thermal.temperature);
            const double vac_I =
                kc * (1.0 + std::norm(st.R) + std::norm(st.T)) / (4.0 * kPi);
            const double vac_III = kc * (std::norm(st.C) + std::norm(st.D)) / (2.0 * kPi);
            const double e_I = energy_density_integrand_I(cfg, k);
            const double e_III = energy_density_integrand_III(cfg, k);
            const double lan_I = langevin_integrand_I(cfg, k);
            const double lan_III = langevin_integrand_III(cfg, k);
            worst = std::max(worst, std::abs(vac_I + lan_I - e_I) / e_I);
            worst = std::max(worst, std::abs(vac_III + lan_III - e_III) / e_I);
            const double sum =
                vacuum_integrand(cfg, k) + lan_I - lan_III - closed_form_integrand(cfg, k);
            worst = std::max(worst, std::abs(sum) / e_I);
        }
        c.measured = worst;
        c.passed = worst <= c.tolerance;
    });
}

CheckResult check_langevin_vanishing(const ForceConfig& cfg) {
    return guarded("undamped medium radiates no noise pressure", [&](CheckResult& c) {
        ForceConfig probe = cfg;
        probe.medium.env.gamma0 = 0.0;
        double worst = 0.0;
        for (const double k : frequency_grid(probe, 64)) {
            worst = std::max(worst, std::abs(langevin_integrand_I(probe, k)));
            worst = std::max(worst, std::abs(langevin_integrand_III(probe, k)));
        }
        c.measured = worst;
        c.tolerance = 0.0;
        c.passed = worst <= c.tolerance;
    });
}

CheckResult check_central_identity(const ForceConfig& cfg) {
    return guarded("decomposed force equals the closed form", [&](CheckResult& c) {
        if (!real_axis_available(cfg)) return skip(c, kMatsubaraNotice);
        const ForceResult dec = force_decomposed(cfg);
        const ForceResult clo = force_closed(cfg);
        c.measured = std::abs(dec.total - clo.total);
        c.tolerance = dec.abs_error_estimate + clo.abs_error_estimate;
        c.passed = c.measured <= c.tolerance;
    });
}

CheckResult check_route_consistency(const ForceConfig& cfg) {
    return guarded("imaginary-axis and real-axis routes agree", [&](CheckResult& c) {
        if (!real_axis_available(cfg)) return skip(c, kMatsubaraNotice);
        if (cfg.medium.env.gamma0 == 0.0 && cfg.medium.omega0 == 0.0 &&
            cfg.medium.omega_p > 0.0)
            return skip(c, "undamped plasma half-spaces trap modes on the real axis; "
                           "imaginary-axis routes only");
        const ForceResult imag = cfg.thermal.temperature > 0.0 ? force_matsubara(cfg)
                                                               : force_lifshitz_T0(cfg);
        const ForceResult real_axis = force_closed_semispace(cfg);
        if (cfg.medium.omega_p == 0.0) {
            c.measured = std::max(std::abs(imag.total), std::abs(real_axis.total));
            c.tolerance = 0.0;
            c.passed = c.measured <= c.tolerance;
            return;
        }
        if (std::abs(imag.total) < 1e-10)
            return skip(c, "force magnitude is below cross-route resolution here");
        c.measured = std::abs(imag.total - real_axis.total) / std::abs(imag.total);
        c.tolerance = 1e-4;
        c.passed = c.measured <= c.tolerance;
    });
}

CheckResult check_gap_monotonicity(const ForceConfig& cfg) {
    return guarded("attraction weakens with the gap", [&](CheckResult& c) {
        std::array<double, 3> mag{};
        for (int i = 0; i < 3; ++i) {
            ForceConfig probe = cfg;
            probe.geometry.gap = cfg.geometry.gap * std::pow(2.0, i);
            mag[i] = std::abs(twoslab_force_imag_axis(probe).total);
        }
        if (mag[0] == 0.0)
            return skip(c, "force underflows double precision at this separation");
        if (cfg.medium.omega_p == 0.0) {
            c.measured = mag[0];
            c.tolerance = 0.0;
            c.passed = mag[0] <= 0.0 && mag[1] <= 0.0 && mag[2] <= 0.0;
            return;
        }
        double worst = 0.0;  // largest ratio of further/closer magnitudes
        for (int i = 1; i < 3; ++i) {
            if (mag[i] == 0.0 && mag[i - 1] > 0.0) continue;  // underflow is a decrease
            worst = std::max(worst, mag[i] / mag[i - 1]);
        }
        c.measured = worst;
        c.tolerance = 1.0;
        c.passed = worst < 1.0;
    });
}

CheckResult check_damping_continuity(const ForceConfig& cfg) {
    return guarded("force varies continuously from damped to undamped", [&](CheckResult& c) {
        if (!(cfg.medium.omega_p > 0.0))
            return skip(c, "transparent medium: no force to follow");
        auto evaluate = [&](double gamma0) {
            ForceConfig probe = cfg;
            probe.medium.omega0 = 0.0;
            probe.medium.env.gamma0 = gamma0;
            return cfg.thermal.temperature > 0.0 ? force_matsubara(probe).total
                                                 : force_lifshitz_T0(probe).total;
        };
        // At finite temperature the strictly undamped plasma keeps a
        // zero-frequency mirror term -T/(4/wp + 2a) that no vanishing-damping
        // family approaches (the zero-frequency summand collapses as soon as
        // gamma0 > 0).  The continuity statement therefore targets the
        // damped-side limit: the gamma0 = 0 value with that term stripped.
        const double temp = cfg.thermal.temperature;
        const double zero_mode =
            temp > 0.0 ? temp / (4.0 / cfg.medium.omega_p + 2.0 * cfg.geometry.gap)
                       : 0.0;
        const double f_limit = evaluate(0.0) + zero_mode;
        if (std::abs(f_limit) < std::max(1e-12, 1e4 * cfg.quad.abs_tol))
            return skip(c, "force magnitude too small to resolve the undamped limit");
        // The approach to the undamped limit carries a g*log(g) term at
        // zero temperature, so extrapolate with f(g) = f0 + b*g*log(1/g)
        // + c*g through three damping strengths and compare its f0 against
        // the directly evaluated limit.
        const std::array<double, 3> g = {1e-2, 1e-3, 1e-4};
        std::array<double, 3> f{}, u{}, v{};
        for (int i = 0; i < 3; ++i) {
            f[i] = evaluate(g[i] * cfg.medium.omega_p);
            u[i] = g[i] * std::log(1.0 / g[i]);
            v[i] = g[i];
        }
        const double du0 = u[0] - u[2], dv0 = v[0] - v[2], df0 = f[0] - f[2];
        const double du1 = u[1] - u[2], dv1 = v[1] - v[2], df1 = f[1] - f[2];
        const double det = du0 * dv1 - du1 * dv0;
        const double b = (df0 * dv1 - df1 * dv0) / det;
        const double cc = (du0 * df1 - du1 * df0) / det;
        const double fitted = f[2] - b * u[2] - cc * v[2];
        c.measured = std::abs(fitted - f_limit) / std::abs(f_limit);
        c.tolerance = 1e-3;
        c.passed = c.measured <= c.tolerance;
    });
}

// --- quadrature behavior checks ---

CheckResult check_determinism(const ForceConfig& cfg) {
    return guarded("identical runs reproduce bit-identical forces", [&](CheckResult& c) {
        c.tolerance = 0.0;
        double worst = 0.0;
        const ForceResult ia = twoslab_force_imag_axis(cfg);
        const ForceResult ib = twoslab_force_imag_axis(cfg);
        worst = std::max(worst, std::abs(ia.total - ib.total));
        if (real_axis_available(cfg)) {
            const ForceResult ra = force_closed(cfg);
            const ForceResult rb = force_closed(cfg);
            worst = std::max(worst, std::abs(ra.total - rb.total));
        }
        c.measured = worst;
        c.passed = worst <= c.tolerance;
    });
}

CheckResult check_quadrature_honesty(const ForceConfig& cfg) {
    return guarded("quadrature error estimates bound the oracle error", [&](CheckResult& c) {
        c.tolerance = 1.0;
        const QuadratureSettings st = cfg.quad;
        double worst = 0.0;
        auto ratio = [&](double value, double err, double exact) {
            const double floor =
                64.0 * std::numeric_limits<double>::epsilon() * (1.0 + std::abs(exact));
            return std::abs(value - exact) / (10.0 * err + floor);
        };
        {
            const QuadratureResult q = integrate_adaptive(
                [](double x) { return x * std::exp(-x); }, 0.0, 20.0, st, {});
            worst = std::max(worst, ratio(q.value, q.abs_error, 1.0 - 21.0 * std::exp(-20.0)));
        }
        {
            const QuadratureResult q = integrate_adaptive(
                [](double x) { return std::cos(x); }, 0.0, 10.0 * kPi, st, {});
            worst = std::max(worst, ratio(q.value, q.abs_error, 0.0));
        }
        c.measured = worst;
        c.passed = worst <= c.tolerance;
    });
}

}  // namespace

std::vector<CheckResult> run_config_checks(const ForceConfig& cfg) {
    cfg.validate();
    std::vector<CheckResult> out;
    out.push_back(check_kernel_spectrum(cfg));
    out.push_back(check_undamped_kernel(cfg));
    out.push_back(check_laplace_positivity(cfg));
    out.push_back(check_dissipation_balance(cfg));
    out.push_back(check_cubic_roots(cfg));
    out.push_back(check_branch_selection(cfg));
    out.push_back(check_lossless_flux(cfg));
    out.push_back(check_transfer_matrix(cfg));
    out.push_back(check_kramers_kronig(cfg));
    out.push_back(check_response_causality(cfg));
    out.push_back(check_chi_routes(cfg));
    out.push_back(check_sum_rules(cfg));
    out.push_back(check_langevin_vanishing(cfg));
    out.push_back(check_central_identity(cfg));
    out.push_back(check_route_consistency(cfg));
    out.push_back(check_gap_monotonicity(cfg));
    out.push_back(check_damping_continuity(cfg));
    out.push_back(check_determinism(cfg));
    out.push_back(check_quadrature_honesty(cfg));
    return out;
}

bool all_passed(const std::vector<CheckResult>& checks) {
    for (const CheckResult& c : checks)
        if (!c.passed) return false;
    return true;
}

}  // namespace casimir
