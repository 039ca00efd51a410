#pragma once

// Optical response of the absorbing slabs: permittivity and refractive
// index of the medium, interface / single-slab / two-slab scattering
// coefficients at real frequency k, the medium susceptibility in the time
// domain, and the characteristic roots of the internal-oscillator dynamics.

#include <complex>

#include "casimir/environment.hpp"

namespace casimir {

struct MediumSpec {
    double omega0 = 1.0;   // internal oscillator frequency (>= 0)
    double omega_p = 1.0;  // coupling (plasma) frequency (>= 0)
    EnvironmentSpec env;   // bath attached to the internal oscillator
    void validate() const;
};

// Two identical slabs of the given thickness facing each other across a
// vacuum gap: they occupy [-gap/2 - thickness, -gap/2] and
// [gap/2, gap/2 + thickness].
struct Geometry {
    double thickness = 1.0;  // d > 0
    double gap = 1.0;        // a > 0
    void validate() const;
};

// epsilon(k) = 1 + omega_p^2 / (omega0^2 - k^2 - i k gammaTilde(-ik)).
// Absorption makes Im epsilon > 0 for k > 0.  Throws std::runtime_error at
// an undamped resonance (vanishing denominator).
std::complex<double> permittivity(const MediumSpec& med, double k);

// Principal square root placed in the upper half plane (Im n >= 0).
std::complex<double> refractive_index_of(std::complex<double> eps);
std::complex<double> refractive_index(const MediumSpec& med, double k);

// Fresnel coefficients of a single vacuum->medium interface at normal
// incidence: r_n = (n-1)/(n+1), t_n = 2n/(n+1).
struct InterfaceCoeffs {
    std::complex<double> r_n;
    std::complex<double> t_n;
};
InterfaceCoeffs interface_coeffs(std::complex<double> n);

// Single slab of the given thickness: reflection r (referenced to the
// front face) and transmission t with the free-space propagation phase
// across the slab removed, so a vanishing slab gives r = 0, t = 1.
// tau0 is the internal transmission factor with no propagation phases at
// all (used for overflow-safe field assembly inside thick slabs), and
// dsl = 1 - r_n^2 e^{2iknd} is the slab's internal resonance denominator.
struct SlabCoeffs {
    std::complex<double> r;
    std::complex<double> t;
    std::complex<double> tau0;
    std::complex<double> dsl;
};
SlabCoeffs slab_coeffs(const MediumSpec& med, double thickness, double k);

// Complete scattering state of the two-slab cavity at frequency k > 0 for
// a unit-amplitude wave incident from the left:
//   x < -a/2-d        :  e^{ikx} + R e^{-ikx}
//   left slab         :  A e^{iknx} + B e^{-iknx}
//   gap |x| < a/2     :  C e^{ikx} + D e^{-ikx}
//   right slab        :  E e^{iknx} + F e^{-iknx}
//   x > a/2+d         :  T e^{ikx}
struct SlabOpticalState {
    double k = 0.0;
    std::complex<double> n;      // refractive index
    double n1 = 0.0, n2 = 0.0;   // Re n, Im n
    std::complex<double> r_n, t_n;  // interface coefficients
    std::complex<double> r, t;      // single-slab coefficients
    std::complex<double> tau0;      // phase-free slab transmission factor
    std::complex<double> R, T;      // two-slab reflection / transmission
    std::complex<double> A, B;      // left-slab mode amplitudes
    std::complex<double> C, D;      // gap mode amplitudes
    std::complex<double> E, F;      // right-slab mode amplitudes
    std::complex<double> den;       // 1 - r^2 e^{2ika}, cavity denominator
    std::complex<double> u;         // r^2 e^{2ika}, round-trip factor
    double z1 = 0.0, z2 = 0.0;      // 2 k n1 d, 2 k n2 d
};
SlabOpticalState two_slab_coeffs(const MediumSpec& med, const Geometry& geom,
                                 double k);

// Time-domain susceptibility chi(tau) of the bulk medium, i.e. the inverse
// transform of epsilon(omega) - 1.  The analytic route evaluates the
// residue sum over the characteristic roots (Lorentzian alpha = 3 only);
// the numeric route inverts the frequency-domain response by tapered
// quadrature with a Coulomb-like counterterm and works for any damped
// environment.
enum class ChiRoute { Analytic, Numeric };
double susceptibility(const MediumSpec& med, double tau, ChiRoute route);

// Characteristic frequencies of the internal oscillator coupled to the
// Lorentzian alpha = 3 bath: the roots of the cubic denominator of the
// response, reported in the complex frequency plane.  All roots lie in the
// lower half plane; x1 is purely imaginary, and in the underdamped regime
// x2 (with Re x2 > 0) and x3 = -conj(x2) form a mirror pair.
struct CubicRoots {
    std::complex<double> x1;
    std::complex<double> x2;
    std::complex<double> x3;
};
CubicRoots cubic_roots_alpha3(const EnvironmentSpec& env, double omega0);

}  // namespace casimir
