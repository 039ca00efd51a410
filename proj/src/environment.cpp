#include "casimir/environment.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace casimir {

namespace {

constexpr double kPi = 3.14159265358979323846;

using cplx = std::complex<double>;

QuadratureSettings kernel_settings(double scale) {
    QuadratureSettings st;
    st.rel_tol = 1e-11;
    st.abs_tol = std::max(1e-300, 1e-15 * std::abs(scale));
    return st;
}

// Interior seed points for an oscillatory integrand on [0, W]: quarter-period
// spacing of cos/sin(omega*tau) (capped so the panel budget is never
// swamped), plus a few points resolving the kernel shape at the cutoff
// scale.
std::vector<double> oscillation_seeds(double W, double tau, double shape) {
    std::vector<double> seeds;
    for (double x : {0.25 * shape, shape, 4.0 * shape})
        if (x > 0.0 && x < W) seeds.push_back(x);
    if (tau > 0.0) {
        double step = 0.5 * kPi / tau;
        const double cap = 3500.0;
        if (W / step > cap) step = W / cap;
        for (double x = step; x < W; x += step) seeds.push_back(x);
    }
    return seeds;
}

struct TailPiece {
    double value = 0.0;
    double bound = 0.0;
};

// Four integrations by parts for Int_W^inf g(omega) cos(omega*tau) domega
// and its sin companion, with g = omega/(L^2 + omega^2):
//   cos: -g sin/tau - g' cos/tau^2 + g'' sin/tau^3 + g''' cos/tau^4
//   sin:  g cos/tau - g' sin/tau^2 - g'' cos/tau^3 + g''' sin/tau^4
// with remainder bounded by Int_W |g''''| / tau^4.  The numeric remainder
// constant assumes W >= 25 L, which every caller guarantees.
TailPiece lorentz_g_tail(double W, double tau, double L, bool cosine) {
    const double d = L * L + W * W;
    const double g0 = W / d;
    const double g1 = (L * L - W * W) / (d * d);
    const double g2 = 2.0 * W * (W * W - 3.0 * L * L) / (d * d * d);
    const double g3 =
        -6.0 * (W * W * W * W - 6.0 * L * L * W * W + L * L * L * L) /
        (d * d * d * d);
    const double s = std::sin(W * tau);
    const double c = std::cos(W * tau);
    const double t2 = tau * tau, t3 = t2 * tau, t4 = t3 * tau;
    TailPiece out;
    if (cosine)
        out.value = -g0 * s / tau - g1 * c / t2 + g2 * s / t3 + g3 * c / t4;
    else
        out.value = g0 * c / tau - g1 * s / t2 - g2 * c / t3 + g3 * s / t4;
    out.bound = 6.1 / (W * W * W * W) / t4;
    return out;
}

// Same construction for h = L^2/(L^2 + omega^2), cosine transform only.
TailPiece lorentz_h_tail(double W, double tau, double L) {
    const double L2 = L * L;
    const double d = L2 + W * W;
    const double h0 = L2 / d;
    const double h1 = -2.0 * L2 * W / (d * d);
    const double h2 = -2.0 * L2 * (L2 - 3.0 * W * W) / (d * d * d);
    const double h3 = 24.0 * L2 * W * (L2 - W * W) / (d * d * d * d);
    const double s = std::sin(W * tau);
    const double c = std::cos(W * tau);
    const double t2 = tau * tau, t3 = t2 * tau, t4 = t3 * tau;
    TailPiece out;
    out.value = -h0 * s / tau - h1 * c / t2 + h2 * s / t3 + h3 * c / t4;
    out.bound = 24.2 * L2 / (W * W * W * W * W) / t4;
    return out;
}

void require_time_kernel(const EnvironmentSpec& env, const char* op) {
    if (env.cutoff == Cutoff::None)
        throw std::domain_error(
            std::string(op) +
            ": the uncut ohmic kernel is distributional in the time domain; "
            "a finite cutoff is required");
    if (env.cutoff == Cutoff::Lorentzian && env.alpha == 3.0)
        throw std::domain_error(
            std::string(op) +
            ": the Lorentzian alpha = 3 kernel is distributional in the "
            "time domain");
}

}  // namespace

void EnvironmentSpec::validate() const {
    if (!(gamma0 >= 0.0) || !std::isfinite(gamma0))
        throw std::invalid_argument(
            "EnvironmentSpec.gamma0 must be finite and >= 0");
    if (!(mass > 0.0) || !std::isfinite(mass))
        throw std::invalid_argument(
            "EnvironmentSpec.mass must be finite and > 0");
    if (!(alpha > 0.0 && alpha < 4.0))
        throw std::invalid_argument(
            "EnvironmentSpec.alpha must lie in the open interval (0, 4)");
    switch (cutoff) {
        case Cutoff::None:
            if (alpha != 1.0)
                throw std::invalid_argument(
                    "EnvironmentSpec.cutoff = None requires alpha = 1");
            break;
        case Cutoff::Lorentzian:
            if (alpha != 1.0 && alpha != 3.0)
                throw std::invalid_argument(
                    "EnvironmentSpec.cutoff = Lorentzian requires alpha = 1 "
                    "or alpha = 3");
            [[fallthrough]];
        case Cutoff::Gaussian:
            if (!(lambda_cut > 0.0) || !std::isfinite(lambda_cut))
                throw std::invalid_argument(
                    "EnvironmentSpec.lambda_cut must be finite and > 0 when "
                    "a cutoff is present");
            break;
    }
}

void ThermalState::validate() const {
    if (!(temperature >= 0.0) || !std::isfinite(temperature))
        throw std::invalid_argument(
            "ThermalState.temperature must be finite and >= 0");
}

double spectral_density(const EnvironmentSpec& env, double omega) {
    env.validate();
    if (!(omega >= 0.0))
        throw std::domain_error("spectral_density: omega must be >= 0");
    if (omega == 0.0) return 0.0;
    const double base = (2.0 / kPi) * env.mass * env.gamma0 * omega;
    switch (env.cutoff) {
        case Cutoff::None:
            return base;
        case Cutoff::Gaussian: {
            const double x = omega / env.lambda_cut;
            return base * std::pow(x, env.alpha - 1.0) * std::exp(-x * x);
        }
        case Cutoff::Lorentzian: {
            const double x = omega / env.lambda_cut;
            return base * std::pow(x, env.alpha - 1.0) / (1.0 + x * x);
        }
    }
    return 0.0;  // unreachable
}

double damping_kernel_time(const EnvironmentSpec& env, double t) {
    env.validate();
    require_time_kernel(env, "damping_kernel_time");
    const double tau = std::abs(t);
    const double L = env.lambda_cut;

    if (env.cutoff == Cutoff::Gaussian) {
        // (2/m) Int_0^inf J(w)/w cos(w tau) dw; e^(-49) truncation beyond 7L.
        const double W = 7.0 * L;
        auto f = [&](double w) {
            return (2.0 / env.mass) * spectral_density(env, w) / w *
                   std::cos(w * tau);
        };
        auto r = integrate_adaptive(f, 0.0, W, kernel_settings(env.gamma0 * L),
                                    oscillation_seeds(W, tau, L));
        return r.value;
    }

    // Lorentzian, alpha = 1:
    // gamma(t) = (4 gamma0/pi) Int_0^inf L^2/(L^2+w^2) cos(w tau) dw.
    const double pref = 4.0 * env.gamma0 / kPi;
    auto h = [&](double w) { return L * L / (L * L + w * w); };
    if (tau == 0.0) {
        const double W = 25.0 * L;
        auto r = integrate_adaptive(h, 0.0, W, kernel_settings(env.gamma0 * L),
                                    {0.5 * L, L, 4.0 * L});
        // Exact remainder of the monotone integrand.
        return pref * (r.value + L * (0.5 * kPi - std::atan(W / L)));
    }
    const double W = std::max(25.0 * L, 600.0 / tau);
    auto r = integrate_adaptive(
        [&](double w) { return h(w) * std::cos(w * tau); }, 0.0, W,
        kernel_settings(env.gamma0 * L), oscillation_seeds(W, tau, L));
    const TailPiece tail = lorentz_h_tail(W, tau, L);
    return pref * (r.value + tail.value);
}

double dissipation_kernel(const EnvironmentSpec& env, double dt) {
    env.validate();
    require_time_kernel(env, "dissipation_kernel");
    if (dt == 0.0) return 0.0;
    const double sgn = dt > 0.0 ? 1.0 : -1.0;
    const double tau = std::abs(dt);
    const double L = env.lambda_cut;
    const double scale = env.mass * env.gamma0 * L * L;

    if (env.cutoff == Cutoff::Gaussian) {
        const double W = 7.0 * L;
        auto f = [&](double w) {
            return 2.0 * spectral_density(env, w) * std::sin(w * tau);
        };
        auto r = integrate_adaptive(f, 0.0, W, kernel_settings(scale),
                                    oscillation_seeds(W, tau, L));
        return sgn * r.value;
    }

    // Lorentzian, alpha = 1:
    // D(dt) = (4 m gamma0 L^2/pi) Int_0^inf w/(L^2+w^2) sin(w tau) dw.
    const double pref = 4.0 * env.mass * env.gamma0 * L * L / kPi;
    const double W = std::max(25.0 * L, 600.0 / tau);
    auto r = integrate_adaptive(
        [&](double w) { return w / (L * L + w * w) * std::sin(w * tau); }, 0.0,
        W, kernel_settings(scale), oscillation_seeds(W, tau, L));
    const TailPiece tail = lorentz_g_tail(W, tau, L, /*cosine=*/false);
    return sgn * pref * (r.value + tail.value);
}

double noise_kernel(const EnvironmentSpec& env, const ThermalState& thermal,
                    double dt) {
    env.validate();
    thermal.validate();
    require_time_kernel(env, "noise_kernel");
    const double tau = std::abs(dt);
    const double T = thermal.temperature;
    const double L = env.lambda_cut;
    auto occupation = [&](double w) {  // coth(w/2T) = 1 + 2 n_B(w)
        return T == 0.0 ? 1.0 : 1.0 + 2.0 / std::expm1(w / T);
    };

    if (env.cutoff == Cutoff::Gaussian) {
        const double W = 7.0 * L;
        const double scale =
            env.mass * env.gamma0 * L * L * (1.0 + T / L);
        auto f = [&](double w) {
            return 2.0 * spectral_density(env, w) * occupation(w) *
                   std::cos(w * tau);
        };
        auto r = integrate_adaptive(f, 0.0, W, kernel_settings(scale),
                                    oscillation_seeds(W, tau, L));
        return r.value;
    }

    // Lorentzian, alpha = 1.
    if (tau == 0.0)
        throw std::domain_error(
            "noise_kernel: the Lorentzian-cutoff kernel diverges "
            "logarithmically at dt = 0");
    const double scale = env.mass * env.gamma0 * L * L;
    const double pref = 4.0 * env.mass * env.gamma0 * L * L / kPi;
    const double W = std::max(25.0 * L, 600.0 / tau);
    auto rv = integrate_adaptive(
        [&](double w) { return w / (L * L + w * w) * std::cos(w * tau); }, 0.0,
        W, kernel_settings(scale), oscillation_seeds(W, tau, L));
    const TailPiece tail = lorentz_g_tail(W, tau, L, /*cosine=*/true);
    double out = pref * (rv.value + tail.value);
    if (T > 0.0) {
        // Thermal occupation decays like e^(-w/T); e^(-50) truncation.
        auto fth = [&](double w) {
            return 2.0 * spectral_density(env, w) *
                   (2.0 / std::expm1(w / T)) * std::cos(w * tau);
        };
        const double WT = 50.0 * T;
        auto rt = integrate_adaptive(fth, 0.0, WT, kernel_settings(scale),
                                     oscillation_seeds(WT, tau, std::min(L, T)));
        out += rt.value;
    }
    return out;
}

std::complex<double> damping_laplace(const EnvironmentSpec& env,
                                     std::complex<double> s) {
    env.validate();
    if (!(s.real() > 0.0))
        throw std::domain_error("damping_laplace: requires Re(s) > 0");
    const double g0 = env.gamma0;
    const double L = env.lambda_cut;
    switch (env.cutoff) {
        case Cutoff::None:
            return cplx(2.0 * g0, 0.0);
        case Cutoff::Lorentzian:
            if (env.alpha == 1.0) return 2.0 * g0 * L / (L + s);
            return 2.0 * g0 * s / (s + L);  // alpha = 3
        case Cutoff::Gaussian:
            break;
    }
    if (g0 == 0.0) return cplx(0.0, 0.0);
    // Gaussian: (4 gamma0/pi) Int_0^inf x^(alpha-1) e^(-x^2)
    //           sigma/(sigma^2+x^2) dx,  sigma = s/L.
    const cplx sigma = s / L;
    const double X = 7.0;
    auto core = [&](double x) -> cplx {
        return std::pow(x, env.alpha - 1.0) * std::exp(-x * x) * sigma /
               (sigma * sigma + x * x);
    };
    std::vector<double> seeds{0.25, 1.0, 2.5};
    const double b = std::abs(sigma.imag());
    if (b > 0.0)
        for (double m : {0.7, 0.9, 1.0, 1.1, 1.4})
            if (m * b < X) seeds.push_back(m * b);
    auto st = kernel_settings(g0);
    auto re = integrate_adaptive([&](double x) { return core(x).real(); }, 0.0,
                                 X, st, seeds);
    auto im = integrate_adaptive([&](double x) { return core(x).imag(); }, 0.0,
                                 X, st, seeds);
    return (4.0 * g0 / kPi) * cplx(re.value, im.value);
}

std::complex<double> gamma_of_k(const EnvironmentSpec& env, double k) {
    env.validate();
    if (!(k >= 0.0) || !std::isfinite(k))
        throw std::domain_error("gamma_of_k: k must be finite and >= 0");
    const double g0 = env.gamma0;
    const double L = env.lambda_cut;
    if (env.cutoff == Cutoff::None) return cplx(2.0 * g0, 0.0);
    if (env.cutoff == Cutoff::Lorentzian) {
        const double d = L * L + k * k;
        if (env.alpha == 1.0) return 2.0 * g0 * L * cplx(L, k) / d;
        return 2.0 * g0 * cplx(k * k, -k * L) / d;  // alpha = 3
    }

    // Gaussian.  Real part is fixed by the spectral density; the imaginary
    // part is the Kramers-Kronig principal value
    //   -(2k/pi) PV Int_0^inf re(w) / (w^2 - k^2) dw,
    // computed with a symmetric excision fold around w = k.
    if (g0 == 0.0) return cplx(0.0, 0.0);
    auto re_part = [&](double w) {
        const double x = w / L;
        return 2.0 * g0 * std::pow(x, env.alpha - 1.0) * std::exp(-x * x);
    };
    if (k == 0.0) {
        if (env.alpha < 1.0)
            throw std::domain_error(
                "gamma_of_k: the k = 0 limit diverges for alpha < 1");
        return cplx(env.alpha == 1.0 ? 2.0 * g0 : 0.0, 0.0);
    }
    const double delta = 1e-3 * k;
    const double W = std::max(2.0 * k, k + 8.0 * L);
    auto st = kernel_settings(7.0 * g0 / k);
    auto singular = [&](double w) { return re_part(w) / ((w - k) * (w + k)); };

    std::vector<double> seeds_lo;
    for (double f : {0.25, 0.5, 0.75, 0.9, 0.99}) seeds_lo.push_back(f * (k - delta));
    if (L < k - delta) seeds_lo.push_back(L);
    auto r1 = integrate_adaptive(singular, 0.0, k - delta, st, seeds_lo);

    // PV of the excised window folds into a finite difference quotient.
    auto fold = [&](double u) {
        return (re_part(k + u) / (2.0 * k + u) -
                re_part(k - u) / (2.0 * k - u)) /
               u;
    };
    auto r2 = integrate_adaptive(fold, 0.0, delta, st, {});

    std::vector<double> seeds_hi;
    for (double f : {1.01, 1.1, 1.5, 2.0})
        if (f * (k + delta) < W) seeds_hi.push_back(f * (k + delta));
    if (k + 2.0 * L < W) seeds_hi.push_back(k + 2.0 * L);
    auto r3 = integrate_adaptive(singular, k + delta, W, st, seeds_hi);

    const double pv = r1.value + r2.value + r3.value;
    return cplx(re_part(k), -(2.0 * k / kPi) * pv);
}

GreenLaplace green_laplace(const EnvironmentSpec& env, double omega0,
                           std::complex<double> z) {
    env.validate();
    if (!(omega0 >= 0.0) || !std::isfinite(omega0))
        throw std::domain_error("green_laplace: omega0 must be finite and >= 0");
    cplx zg;  // z * gammaTilde(z)
    if (z.real() > 0.0) {
        zg = z * damping_laplace(env, z);
    } else if (z.real() == 0.0 && z.imag() < 0.0) {
        zg = z * gamma_of_k(env, -z.imag());
    } else if (z == cplx(0.0, 0.0)) {
        zg = cplx(0.0, 0.0);
    } else {
        throw std::domain_error(
            "green_laplace: z must satisfy Re(z) > 0, be purely imaginary "
            "with Im(z) < 0, or be 0");
    }
    const cplx den = z * z + omega0 * omega0 + zg;
    const double scale =
        std::max({std::norm(z), omega0 * omega0, std::abs(zg), 1e-300});
    if (std::abs(den) < 1e-14 * scale)
        throw std::runtime_error(
            "green_laplace: the response is singular at this z "
            "(undamped resonance)");
    GreenLaplace out;
    out.G2 = 1.0 / den;
    out.G1 = z * out.G2;
    return out;
}

}  // namespace casimir
