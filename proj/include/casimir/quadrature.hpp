#pragma once

// Adaptive Gauss-Kronrod quadrature for semi-infinite integrals with
// oscillatory integrands, plus a truncated-sum engine for exponentially
// decaying series.  Both are deterministic: identical inputs and settings
// produce bit-identical results.

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <vector>

namespace casimir {

struct QuadratureSettings {
    double rel_tol = 1e-9;
    double abs_tol = 1e-12;
    int max_panels = 20000;
    // Period of the fastest oscillation of the integrand, if any.  Panel
    // boundaries are seeded at half-period steps so that sign-alternating
    // lobes never share a panel.
    std::optional<double> oscillation_period_hint;
    // Decay family of the integrand at large argument:
    //   hint > 0  :  algebraic  |f(k)| ~ C k^(-hint)   (hint > 1 required)
    //   hint < 0  :  exponential |f(k)| ~ C e^(-|hint| k)
    // Absent: the decay rate is estimated from integrand samples.
    std::optional<double> tail_exponent_hint;

    void validate() const;  // throws std::invalid_argument on bad fields
};

struct QuadratureResult {
    double value = 0.0;
    double abs_error = 0.0;      // panel estimates plus any tail bound
    std::int64_t evaluations = 0;
};

// Thrown when the panel budget is exhausted or a tail bound cannot be
// reached; carries the best estimate available at that point.
struct QuadratureError : std::runtime_error {
    QuadratureResult best;
    QuadratureError(const std::string& what, QuadratureResult best_estimate)
        : std::runtime_error(what), best(best_estimate) {}
};

// Analytic (or semi-analytic) model of the integral over (K, infinity).
// Given a candidate cutoff K it returns the tail's value and a rigorous
// uncertainty for it, or nullopt when K is still too small to certify.
struct TailEstimate {
    double value = 0.0;
    double uncertainty = 0.0;
};
using TailModel = std::function<std::optional<TailEstimate>(double K)>;

// Adaptive integration of f over the finite interval [lo, hi].  Panel
// boundaries start at {lo, interior_seeds, hi}; the worst panel (largest
// error estimate, ties broken toward the leftmost) is bisected until the
// total estimate meets max(abs_tol, rel_tol * |value|) or max_panels is
// reached (QuadratureError).  Non-finite integrand values throw.
QuadratureResult integrate_adaptive(const std::function<double(double)>& f,
                                    double lo, double hi,
                                    const QuadratureSettings& settings,
                                    const std::vector<double>& interior_seeds = {});

// Interior panel seeds for a cutoff interval [0, K], as used by the
// semi-infinite drivers: half-period boundaries when an oscillation period
// hint is set (stretched gently toward K when the interval would otherwise
// hold more than a few thousand of them), otherwise a geometric ladder
// condensing toward the origin.  Points in extra are merged in after being
// clipped to (0, K).
std::vector<double> cutoff_panel_seeds(double K,
                                       const QuadratureSettings& settings,
                                       const std::vector<double>& extra = {});

// Integration of f over (0, infinity) with an explicit tail model.  The
// cutoff starts at initial_cutoff and doubles until the model certifies a
// tail uncertainty below abs_tol/10; [0, K] is then integrated adaptively
// (with oscillation-aware seeding plus interior_seeds) and the tail value
// added.  Evaluation never happens at exactly 0: abscissae are clamped to
// a tiny positive shift.
QuadratureResult integrate_semiinfinite_with_tail(
    const std::function<double(double)>& f,
    const QuadratureSettings& settings,
    const TailModel& tail,
    double initial_cutoff,
    const std::vector<double>& interior_seeds = {});

// Integration of f over (0, infinity) using a tail model synthesized from
// the settings hints (or from integrand envelope samples when no hint is
// given).  The synthesized tail contributes a bound only, never a value.
QuadratureResult integrate_semiinfinite(const std::function<double(double)>& f,
                                        const QuadratureSettings& settings);

struct SumResult {
    double value = 0.0;
    double abs_error = 0.0;      // geometric bound on the dropped tail
    std::int64_t terms_used = 0;
};

// Sums term(1) + term(2) + ... until |term(j)| < abs_tol, then appends the
// geometric tail bound |term(j)| * r / (1 - r) (r = observed decay ratio)
// to abs_error.  Terms failing to decay (ratio >= 1 over 50 consecutive
// terms) raise QuadratureError.
SumResult sum_truncated(const std::function<double(std::int64_t)>& term,
                        const QuadratureSettings& settings);

}  // namespace casimir
