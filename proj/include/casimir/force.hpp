#pragma once

// Casimir force per unit area between the two absorbing slabs, at zero or
// finite temperature, computed along independently checkable routes:
//
//   Decomposed  - real-axis spectral integral split into the vacuum
//                 (boundary-modified zero-point) part and the Langevin
//                 (medium-noise) part; their sum is the total force.
//   ClosedForm  - the same real-axis integral collapsed to a single closed
//                 expression in the two-slab reflection amplitude.
//   Matsubara   - imaginary-frequency sum at temperature > 0.
//   LifshitzT0  - imaginary-frequency integral at temperature = 0.
//
// Sign convention: attraction between the slabs is reported as a negative
// total.  All routes must agree on mutual configurations; that agreement is
// the core consistency check of the library.

#include <complex>
#include <limits>

#include "casimir/environment.hpp"
#include "casimir/optics.hpp"
#include "casimir/quadrature.hpp"

namespace casimir {

struct ForceConfig {
    MediumSpec medium;
    Geometry geometry;
    ThermalState thermal;
    QuadratureSettings quad;

    void validate() const;  // delegates to every member's validate()
};

enum class ForceRoute { Decomposed, ClosedForm, Matsubara, LifshitzT0 };

struct ForceResult {
    double total = 0.0;
    // Only ForceRoute::Decomposed fills the two parts (total is then
    // exactly their sum); the other routes leave them as quiet NaN.
    double vacuum_part = std::numeric_limits<double>::quiet_NaN();
    double langevin_part = std::numeric_limits<double>::quiet_NaN();
    double abs_error_estimate = 0.0;
    ForceRoute route = ForceRoute::ClosedForm;
    std::int64_t evaluations = 0;  // integrand / optical-state evaluations
};

// k * coth(k / (2T)); the T = 0 limit is k, the k -> 0 limit is 2T.
double thermal_weight(double k, double temperature);

// Whether the real-axis routes (Decomposed, ClosedForm) are usable: an
// undamped medium with omega0 > 0 has a non-integrable permittivity
// resonance at k = omega0, and those routes then throw std::domain_error
// directing the caller to the imaginary-axis routes.
bool real_axis_available(const ForceConfig& cfg);

// --- spectral densities on the real axis (per unit k, at k > 0) ---
// Region I is the half-space outside the left slab, region III the gap.
// All carry the thermal weight k*coth(k/2T); the force integrands are
// differences of outer-region and gap radiation pressure, so the assembled
// force is minus their integral (attraction negative).

// Vacuum part: pressure difference of the boundary-modified zero-point
// field between region I and the gap.
double vacuum_integrand(const ForceConfig& cfg, double k);

// Langevin part: pressure carried by the field radiated by the medium's
// fluctuating polarization, in region I and in the gap.  Nonnegative;
// identically zero for an undamped medium.
double langevin_integrand_I(const ForceConfig& cfg, double k);
double langevin_integrand_III(const ForceConfig& cfg, double k);

// Closed form of the full (vacuum + Langevin) pressure difference in terms
// of the round-trip amplitude u = r^2 e^{2ika}.  Pointwise equal to
// (vacuum_integrand + langevin_integrand_I - langevin_integrand_III).
double closed_form_integrand(const ForceConfig& cfg, double k);

// Total spectral energy density (per unit k) in region I and in the gap;
// the sum rules behind the decomposition.  Region I is exactly the free
// density k*coth/(2*pi); the gap density divided by it gives the
// absorption-dressed mode weight (1 - |r|^4) / |1 - u|^2.
double energy_density_integrand_I(const ForceConfig& cfg, double k);
double energy_density_integrand_III(const ForceConfig& cfg, double k);

// --- force routes ---

// Real-axis integral of the vacuum and Langevin densities separately.
// total = vacuum_part + langevin_part holds exactly by construction; the
// split of the analytic large-k tail between the parts carries a small
// modelling systematic (the total's tail is exact).
ForceResult force_decomposed(const ForceConfig& cfg);

// Real-axis integral of the closed-form integrand.
ForceResult force_closed(const ForceConfig& cfg);

// Closed-form real-axis route for two half-space mirrors (gap unchanged,
// thickness infinite).  Refuses an undamped plasma medium: its mirrors trap
// perfectly below the plasma frequency and the real-axis integrand develops
// non-integrable cavity resonances.
ForceResult force_closed_semispace(const ForceConfig& cfg);

// Matsubara sum for half-space mirrors at temperature > 0.
ForceResult force_matsubara(const ForceConfig& cfg);

// Imaginary-axis integral for half-space mirrors at temperature = 0.
ForceResult force_lifshitz_T0(const ForceConfig& cfg);

// Imaginary-axis evaluation of the finite-thickness two-slab force (the
// same geometry as force_decomposed / force_closed): Matsubara sum at
// temperature > 0, imaginary-axis integral at temperature = 0.  Valid for
// undamped media as well, which is what makes it the reference for the
// gamma0 -> 0 limit of the real-axis routes.
ForceResult twoslab_force_imag_axis(const ForceConfig& cfg);

// --- large-k diagnostics ---

// Exact versus asymptotic optical response at large k: the refractive
// index approaches 1 - wp^2/(2k^2) + i wp^2 gammaTilde1(k)/(2k^3), the slab
// reflection approaches (wp^2/(4k^2))(1 - e^{2ikd}), and the closed-form
// integrand is enveloped by (wp^4/(4 pi)) k coth(k/2T) / k^4.
struct AsymptoticCheck {
    double n1_exact = 0.0, n1_asym = 0.0;
    double n2_exact = 0.0, n2_asym = 0.0;
    std::complex<double> r_exact, r_asym;
    double integrand_exact = 0.0, integrand_asym = 0.0;
    double envelope = 0.0;
};

AsymptoticCheck asymptotic_check(const ForceConfig& cfg, double k);

}  // namespace casimir
