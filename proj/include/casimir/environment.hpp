#pragma once

// Bath environment of the absorbing medium: ohmic-family spectral density
// J(omega) with an optional high-frequency cutoff, the damping (memory)
// kernel it induces in time and Laplace domains, its continuation to the
// real frequency axis, the dissipation and noise kernels, and the damped
// oscillator Green's function in the Laplace domain.

#include <complex>

#include "casimir/quadrature.hpp"

namespace casimir {

enum class Cutoff { None, Gaussian, Lorentzian };

struct EnvironmentSpec {
    double alpha = 1.0;        // low-frequency exponent of J ~ omega^alpha
    double gamma0 = 0.0;       // damping strength (>= 0)
    double lambda_cut = 0.0;   // cutoff frequency scale (> 0 unless Cutoff::None)
    Cutoff cutoff = Cutoff::Lorentzian;
    double mass = 1.0;         // oscillator mass entering J's normalization

    // Throws std::invalid_argument naming the offending field.  Rules:
    // gamma0 >= 0; mass > 0; alpha in (0, 4); Cutoff::None only with
    // alpha = 1; Cutoff::Lorentzian only with alpha = 1 or 3; lambda_cut > 0
    // whenever a cutoff is present.
    void validate() const;
};

struct ThermalState {
    double temperature = 0.0;  // >= 0; 0 selects the vacuum state
    void validate() const;
};

// J(omega) = (2/pi) * mass * gamma0 * omega * (omega/lambda)^(alpha-1)
//            * f(omega/lambda),
// f = 1 (None), exp(-x^2) (Gaussian), 1/(1+x^2) (Lorentzian).
// Domain error for omega < 0; J(0) = 0.
double spectral_density(const EnvironmentSpec& env, double omega);

// Damping kernel gamma(t) = (2/mass) Int_0^inf J(omega)/omega cos(omega t)
// domega.  Even in t.  Requires a cutoff (the uncut ohmic kernel is a delta
// distribution); Lorentzian alpha = 3 is likewise distributional and
// rejected.
double damping_kernel_time(const EnvironmentSpec& env, double t);

// Laplace transform gammaTilde(s) of the damping kernel, Re s > 0.
// Closed forms: 2*gamma0 (None), 2*gamma0*lambda/(lambda+s) (Lorentzian
// alpha=1), 2*gamma0*s/(s+lambda) (Lorentzian alpha=3); Gaussian cutoffs
// are integrated numerically.
std::complex<double> damping_laplace(const EnvironmentSpec& env,
                                     std::complex<double> s);

// Continuation of gammaTilde to the real frequency axis, gammaTilde(-ik),
// k >= 0.  Its real part is pi*J(k)/(mass*k) for every family; the
// imaginary part follows from the Kramers-Kronig principal-value integral
// (closed forms for None/Lorentzian, numerical PV for Gaussian).
std::complex<double> gamma_of_k(const EnvironmentSpec& env, double k);

// Dissipation kernel D(dt) = 2 Int_0^inf J(omega) sin(omega dt) domega.
// Odd in dt; D(0) = 0; satisfies m * d(gamma)/dt = -D for t > 0.
// Requires a cutoff; Lorentzian alpha = 3 is distributional and rejected.
double dissipation_kernel(const EnvironmentSpec& env, double dt);

// Noise kernel D1(dt) = 2 Int_0^inf J(omega) coth(omega/(2T)) cos(omega dt)
// domega (coth -> 1 at T = 0).  Requires a cutoff; Lorentzian alpha = 3 is
// rejected, and the Lorentzian kernel at dt = 0 diverges logarithmically
// (domain error).
double noise_kernel(const EnvironmentSpec& env, const ThermalState& thermal,
                    double dt);

// Laplace-domain Green's function of the damped oscillator with natural
// frequency omega0:  G2 = 1/(z^2 + omega0^2 + z*gammaTilde(z)), G1 = z*G2.
// Accepts Re z > 0 (Laplace domain proper) or z = -ik with k > 0 (real
// frequency axis, resolved through gamma_of_k).  A vanishing denominator
// (an undamped resonance) raises std::runtime_error.
struct GreenLaplace {
    std::complex<double> G1;
    std::complex<double> G2;
};
GreenLaplace green_laplace(const EnvironmentSpec& env, double omega0,
                           std::complex<double> z);

}  // namespace casimir
