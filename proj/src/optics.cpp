#include "casimir/optics.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "casimir/quadrature.hpp"

namespace casimir {

namespace {

constexpr double kPi = 3.14159265358979323846;

using cplx = std::complex<double>;

const cplx kI(0.0, 1.0);

cplx expi(double phase) { return cplx(std::cos(phase), std::sin(phase)); }

}  // namespace

void MediumSpec::validate() const {
    if (!(omega0 >= 0.0) || !std::isfinite(omega0))
        throw std::invalid_argument("MediumSpec.omega0 must be finite and >= 0");
    if (!(omega_p >= 0.0) || !std::isfinite(omega_p))
        throw std::invalid_argument("MediumSpec.omega_p must be finite and >= 0");
    env.validate();
}

void Geometry::validate() const {
    if (!(thickness > 0.0) || !std::isfinite(thickness))
        throw std::invalid_argument("Geometry.thickness must be finite and > 0");
    if (!(gap > 0.0) || !std::isfinite(gap))
        throw std::invalid_argument("Geometry.gap must be finite and > 0");
}

std::complex<double> permittivity(const MediumSpec& med, double k) {
    med.validate();
    if (!(k >= 0.0) || !std::isfinite(k))
        throw std::domain_error("permittivity: k must be finite and >= 0");
    if (med.omega_p == 0.0) return cplx(1.0, 0.0);
    const cplx gt = gamma_of_k(med.env, k);
    const cplx den = med.omega0 * med.omega0 - k * k - kI * k * gt;
    const double scale = std::max(
        {med.omega0 * med.omega0, k * k, std::abs(k * gt), 1e-300});
    if (std::abs(den) < 1e-14 * scale)
        throw std::runtime_error(
            "permittivity: undamped internal resonance at this k");
    return 1.0 + med.omega_p * med.omega_p / den;
}

std::complex<double> refractive_index_of(std::complex<double> eps) {
    cplx n = std::sqrt(eps);
    if (n.imag() < 0.0) n = -n;
    return n;
}

std::complex<double> refractive_index(const MediumSpec& med, double k) {
    return refractive_index_of(permittivity(med, k));
}

InterfaceCoeffs interface_coeffs(std::complex<double> n) {
    InterfaceCoeffs out;
    out.r_n = (n - 1.0) / (n + 1.0);
    out.t_n = 2.0 * n / (n + 1.0);
    return out;
}

SlabCoeffs slab_coeffs(const MediumSpec& med, double thickness, double k) {
    med.validate();
    if (!(thickness >= 0.0) || !std::isfinite(thickness))
        throw std::domain_error("slab_coeffs: thickness must be finite and >= 0");
    if (!(k > 0.0) || !std::isfinite(k))
        throw std::domain_error("slab_coeffs: k must be finite and > 0");
    const cplx n = refractive_index(med, k);
    const auto iface = interface_coeffs(n);
    const double d = thickness;
    const double z1 = 2.0 * k * n.real() * d;
    const double z2 = 2.0 * k * n.imag() * d;
    const cplx phase2 = std::exp(cplx(-z2, z1));        // e^{2iknd}
    const cplx dsl = 1.0 - iface.r_n * iface.r_n * phase2;
    if (std::abs(dsl) < 1e-150)
        throw std::runtime_error("slab_coeffs: internal slab resonance");
    SlabCoeffs out;
    out.dsl = dsl;
    out.tau0 = 4.0 * n / ((n + 1.0) * (n + 1.0)) / dsl;
    out.r = iface.r_n * (phase2 - 1.0) / dsl;
    // e^{iknd} e^{-ikd}: slab propagation with free propagation removed.
    out.t = out.tau0 * std::exp(cplx(-0.5 * z2, 0.5 * z1)) * expi(-k * d);
    return out;
}

SlabOpticalState two_slab_coeffs(const MediumSpec& med, const Geometry& geom,
                                 double k) {
    geom.validate();
    const double d = geom.thickness;
    const double a = geom.gap;
    const auto slab = slab_coeffs(med, d, k);

    SlabOpticalState s;
    s.k = k;
    s.n = refractive_index(med, k);
    s.n1 = s.n.real();
    s.n2 = s.n.imag();
    const auto iface = interface_coeffs(s.n);
    s.r_n = iface.r_n;
    s.t_n = iface.t_n;
    s.r = slab.r;
    s.t = slab.t;
    s.tau0 = slab.tau0;
    s.z1 = 2.0 * k * s.n1 * d;
    s.z2 = 2.0 * k * s.n2 * d;

    const cplx gap_phase = expi(2.0 * k * a);  // e^{2ika}
    s.u = s.r * s.r * gap_phase;
    s.den = 1.0 - s.u;
    if (std::abs(s.den) < 1e-150)
        throw std::runtime_error("two_slab_coeffs: cavity resonance");

    const cplx t_f = s.t * expi(k * d);
    s.R = expi(-k * (a + 2.0 * d)) *
          (s.r + t_f * t_f * s.r * gap_phase / s.den);
    s.T = s.t * s.t / s.den;
    s.C = s.t / s.den;
    s.D = s.t * s.r * expi(k * a) / s.den;

    // e^{+-ikna/2}: the slab amplitudes are referenced to global x.
    const cplx ena_p = std::exp(cplx(-k * s.n2 * 0.5 * a, k * s.n1 * 0.5 * a));
    const cplx ena_m = std::exp(cplx(k * s.n2 * 0.5 * a, -k * s.n1 * 0.5 * a));
    const cplx ea_m = expi(-0.5 * k * a);
    s.A = ea_m * ena_p * s.t * (1.0 + s.r_n * s.r * gap_phase) /
          (s.t_n * s.den);
    s.B = ea_m * ena_m * s.t * (s.r_n + s.r * gap_phase) / (s.t_n * s.den);

    const cplx end_m = std::exp(cplx(k * s.n2 * d, -k * s.n1 * d));  // e^{-iknd}
    const cplx end_p = std::exp(cplx(-k * s.n2 * d, k * s.n1 * d));  // e^{+iknd}
    s.E = s.t * s.t / (s.t_n * s.den) * expi(0.5 * k * a) * expi(k * d) *
          ena_m * end_m;
    s.F = s.t * s.t * s.r_n / (s.t_n * s.den) * expi(0.5 * k * a) *
          expi(k * d) * ena_p * end_p;
    return s;
}

CubicRoots cubic_roots_alpha3(const EnvironmentSpec& env, double omega0) {
    env.validate();
    if (env.cutoff != Cutoff::Lorentzian || env.alpha != 3.0)
        throw std::domain_error(
            "cubic_roots_alpha3: requires the Lorentzian alpha = 3 "
            "environment");
    if (!(omega0 > 0.0) || !std::isfinite(omega0))
        throw std::domain_error("cubic_roots_alpha3: omega0 must be > 0");

    // Dimensionless characteristic cubic y^3 - c2 y^2 + y - c3 = 0 with
    // y = i x / omega0; its single positive real root is bracketed and
    // bisected, the remaining pair comes from the deflated quadratic.
    const double c2 = (2.0 * env.gamma0 + env.lambda_cut) / omega0;
    const double c3 = env.lambda_cut / omega0;
    auto f = [&](double y) { return ((y - c2) * y + 1.0) * y - c3; };
    double lo = 0.0;
    double hi = 1.0 + std::max({c2, 1.0, c3});
    while (f(hi) <= 0.0) hi *= 2.0;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (mid == lo || mid == hi) break;
        (f(mid) < 0.0 ? lo : hi) = mid;
    }
    double y1 = 0.5 * (lo + hi);
    for (int i = 0; i < 2; ++i) {
        const double fp = (3.0 * y1 - 2.0 * c2) * y1 + 1.0;
        if (fp != 0.0) y1 -= f(y1) / fp;
    }

    const double b1 = y1 - c2;       // deflated quadratic y^2 + b1 y + b0
    const double b0 = 1.0 + y1 * b1;
    const double disc = b1 * b1 - 4.0 * b0;
    CubicRoots out;
    out.x1 = cplx(0.0, -omega0 * y1);
    if (disc < 0.0) {
        const double p = -0.5 * b1;
        const double q = 0.5 * std::sqrt(-disc);
        out.x2 = omega0 * cplx(q, -p);
        out.x3 = -std::conj(out.x2);
    } else {
        const double rt = std::sqrt(disc);
        out.x2 = cplx(0.0, -omega0 * 0.5 * (-b1 + rt));
        out.x3 = cplx(0.0, -omega0 * 0.5 * (-b1 - rt));
    }
    return out;
}

double susceptibility(const MediumSpec& med, double tau, ChiRoute route) {
    med.validate();
    const double wp2 = med.omega_p * med.omega_p;
    if (wp2 == 0.0) return 0.0;

    if (route == ChiRoute::Analytic) {
        if (med.env.cutoff != Cutoff::Lorentzian || med.env.alpha != 3.0)
            throw std::domain_error(
                "susceptibility: the analytic route requires the Lorentzian "
                "alpha = 3 environment");
        if (tau <= 0.0) return 0.0;
        const auto roots = cubic_roots_alpha3(med.env, med.omega0);
        const cplx z[3] = {-kI * roots.x1, -kI * roots.x2, -kI * roots.x3};
        const double L = med.env.lambda_cut;
        cplx sum(0.0, 0.0);
        for (int j = 0; j < 3; ++j) {
            const cplx prod =
                (z[j] - z[(j + 1) % 3]) * (z[j] - z[(j + 2) % 3]);
            sum += (z[j] + L) * std::exp(z[j] * tau) / prod;
        }
        return wp2 * sum.real();
    }

    // Numeric route: chi(tau) = (1/pi) Int_0^W [Re h cos + Im h sin]
    // e^{-(w/W)^4} dw - (wp^2/(2 sigma)) e^{-sigma |tau|}, where
    // h(w) = chiTilde(w) + wp^2/(w^2 + sigma^2) removes the slow 1/w^2
    // decay and the counterterm is inverted in closed form.
    if (med.env.gamma0 == 0.0)
        throw std::domain_error(
            "susceptibility: the numeric route requires gamma0 > 0");
    const double sigma = std::max(med.omega0, med.omega_p);
    double wscale = std::max({med.omega0, med.omega_p, med.env.gamma0});
    if (med.env.cutoff != Cutoff::None)
        wscale = std::max(wscale, med.env.lambda_cut);
    const double W = 50.0 * wscale;

    auto chi_freq = [&](double w) -> cplx {
        const cplx gt = gamma_of_k(med.env, w);
        return wp2 / (med.omega0 * med.omega0 - w * w - kI * w * gt);
    };
    auto integrand = [&](double w) {
        const cplx h = chi_freq(w) + wp2 / (w * w + sigma * sigma);
        const double x2 = (w / W) * (w / W);
        const double taper = std::exp(-x2 * x2);
        return (h.real() * std::cos(w * tau) + h.imag() * std::sin(w * tau)) *
               taper;
    };

    std::vector<double> seeds;
    if (med.omega0 > 0.0) {
        // Resonance fan: the peak can be narrow when the damping is weak.
        for (int j = 1; j <= 12; ++j) {
            const double off = std::ldexp(0.5, -j);
            for (double m : {1.0 - off, 1.0 + off}) {
                const double x = m * med.omega0;
                if (x > 0.0 && x < W) seeds.push_back(x);
            }
        }
        seeds.push_back(med.omega0);
    }
    const double atau = std::abs(tau);
    if (atau > 0.0) {
        double step = 0.5 * kPi / atau;
        const double cap = 3500.0;
        if (W / step > cap) step = W / cap;
        for (double x = step; x < W; x += step) seeds.push_back(x);
    }

    QuadratureSettings st;
    st.rel_tol = 1e-9;
    st.abs_tol = 1e-12 * std::max(1.0, wp2 / sigma);
    const auto r = integrate_adaptive(integrand, 0.0, W, st, seeds);
    return r.value / kPi - (wp2 / (2.0 * sigma)) * std::exp(-sigma * atau);
}

}  // namespace casimir
