#include "casimir/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <queue>
#include <string>

namespace casimir {

namespace {

// 15-point Kronrod extension of the 7-point Gauss rule (QUADPACK dqk15
// abscissae/weights; positive half, node 7 is the midpoint).
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

struct Panel {
    double lo = 0.0;
    double hi = 0.0;
    double value = 0.0;
    double error = 0.0;
};

[[noreturn]] void throw_nonfinite(double x) {
    char buf[96];
    std::snprintf(buf, sizeof buf,
                  "integrand returned a non-finite value at x = %.17g", x);
    throw std::runtime_error(buf);
}

Panel gk15(const std::function<double(double)>& f, double lo, double hi,
           std::int64_t& evaluations) {
    const double c = 0.5 * (lo + hi);
    const double h = 0.5 * (hi - lo);
    double fv[15];
    for (int i = 0; i < 7; ++i) {
        fv[i] = f(c - h * kXgk[i]);
        fv[14 - i] = f(c + h * kXgk[i]);
    }
    fv[7] = f(c);
    evaluations += 15;
    double resk = kWgk[7] * fv[7];
    double resg = kWg[3] * fv[7];
    for (int i = 0; i < 7; ++i) {
        resk += kWgk[i] * (fv[i] + fv[14 - i]);
        if (i % 2 == 1) resg += kWg[i / 2] * (fv[i] + fv[14 - i]);
    }
    for (int i = 0; i < 15; ++i) {
        if (!std::isfinite(fv[i])) {
            const double x = (i < 7)   ? c - h * kXgk[i]
                             : (i > 7) ? c + h * kXgk[14 - i]
                                       : c;
            throw_nonfinite(x);
        }
    }
    Panel p;
    p.lo = lo;
    p.hi = hi;
    p.value = resk * h;
    p.error = std::abs((resk - resg) * h);
    return p;
}

// Worst panel first: larger error wins, ties broken toward smaller lo so
// the refinement order (and hence every float operation) is reproducible.
struct PanelOrder {
    const std::vector<Panel>* panels;
    bool operator()(std::size_t a, std::size_t b) const {
        const Panel& pa = (*panels)[a];
        const Panel& pb = (*panels)[b];
        if (pa.error != pb.error) return pa.error < pb.error;
        return pa.lo > pb.lo;
    }
};

double positional_sum(std::vector<Panel>& panels, double* err_out) {
    std::sort(panels.begin(), panels.end(),
              [](const Panel& a, const Panel& b) { return a.lo < b.lo; });
    double v = 0.0, e = 0.0;
    for (const Panel& p : panels) {
        v += p.value;
        e += p.error;
    }
    if (err_out) *err_out = e;
    return v;
}

}  // namespace

void QuadratureSettings::validate() const {
    if (!(rel_tol > 0.0)) throw std::invalid_argument("quad.rel_tol must be > 0");
    if (!(abs_tol > 0.0)) throw std::invalid_argument("quad.abs_tol must be > 0");
    if (max_panels < 16) throw std::invalid_argument("quad.max_panels must be >= 16");
    if (oscillation_period_hint && !(*oscillation_period_hint > 0.0))
        throw std::invalid_argument("quad.oscillation_period_hint must be > 0");
    if (tail_exponent_hint && *tail_exponent_hint > 0.0 && *tail_exponent_hint <= 1.0)
        throw std::invalid_argument("algebraic quad.tail_exponent_hint must exceed 1");
}

QuadratureResult integrate_adaptive(const std::function<double(double)>& f,
                                    double lo, double hi,
                                    const QuadratureSettings& settings,
                                    const std::vector<double>& interior_seeds) {
    settings.validate();
    if (!(hi > lo)) throw std::invalid_argument("integration interval is empty");

    std::vector<double> bounds;
    bounds.push_back(lo);
    for (double s : interior_seeds)
        if (s > lo && s < hi) bounds.push_back(s);
    bounds.push_back(hi);
    std::sort(bounds.begin(), bounds.end());
    bounds.erase(std::unique(bounds.begin(), bounds.end()), bounds.end());

    std::vector<Panel> panels;
    panels.reserve(bounds.size() + 64);
    std::int64_t evaluations = 0;
    for (std::size_t i = 0; i + 1 < bounds.size(); ++i)
        panels.push_back(gk15(f, bounds[i], bounds[i + 1], evaluations));

    PanelOrder order{&panels};
    std::priority_queue<std::size_t, std::vector<std::size_t>, PanelOrder> queue(order);
    double total_value = 0.0, total_error = 0.0;
    for (std::size_t i = 0; i < panels.size(); ++i) {
        queue.push(i);
        total_value += panels[i].value;
        total_error += panels[i].error;
    }

    while (total_error > std::max(settings.abs_tol, settings.rel_tol * std::abs(total_value))) {
        if (static_cast<int>(panels.size()) + 1 > settings.max_panels) {
            QuadratureResult best;
            best.value = positional_sum(panels, &best.abs_error);
            best.evaluations = evaluations;
            throw QuadratureError("quadrature did not converge within max_panels", best);
        }
        const std::size_t worst = queue.top();
        queue.pop();
        const Panel old = panels[worst];
        const double mid = 0.5 * (old.lo + old.hi);
        if (!(mid > old.lo && mid < old.hi)) {
            // Interval no longer splittable in double precision; keep its
            // estimate and refine the next-worst panel instead.
            if (queue.empty()) break;
            continue;
        }
        Panel left = gk15(f, old.lo, mid, evaluations);
        Panel right = gk15(f, mid, old.hi, evaluations);
        total_value += left.value + right.value - old.value;
        total_error += left.error + right.error - old.error;
        panels[worst] = left;
        panels.push_back(right);
        queue.push(worst);
        queue.push(panels.size() - 1);
    }

    QuadratureResult out;
    out.value = positional_sum(panels, &out.abs_error);
    out.evaluations = evaluations;
    return out;
}

// Panel seeds for [0, K]: half-period boundaries when an oscillation period
// is known (thinned to a gently stretching grid when K holds more than
// ~3800 half-periods, to respect the panel budget), otherwise a geometric
// ladder that concentrates panels near the origin.
std::vector<double> cutoff_panel_seeds(double K,
                                       const QuadratureSettings& settings,
                                       const std::vector<double>& extra) {
    std::vector<double> seeds;
    if (settings.oscillation_period_hint) {
        const double w = 0.5 * *settings.oscillation_period_hint;
        const double count = K / w;
        const double budget = 3800.0;
        if (count <= budget) {
            for (double x = w; x < K; x += w) seeds.push_back(x);
        } else {
            // Spacing grows as dx = w * (1 + c*x/K); c is chosen so the
            // boundary count matches the budget: count(c) = (K/w)*ln(1+c)/c.
            double lo = 1e-9, hi = 1e9;
            for (int it = 0; it < 200; ++it) {
                const double c = std::sqrt(lo * hi);
                const double n = (K / w) * std::log1p(c) / c;
                (n > budget ? lo : hi) = c;
            }
            const double c = std::sqrt(lo * hi);
            for (double x = w; x < K; x += w * (1.0 + c * x / K)) seeds.push_back(x);
        }
    } else {
        for (double x = K; x > 1e-8 * K; x *= 0.5) seeds.push_back(x);
    }
    for (double x : extra)
        if (x > 0.0 && x < K) seeds.push_back(x);
    return seeds;
}

QuadratureResult integrate_semiinfinite_with_tail(
    const std::function<double(double)>& f,
    const QuadratureSettings& settings,
    const TailModel& tail,
    double initial_cutoff,
    const std::vector<double>& interior_seeds) {
    settings.validate();
    if (!(initial_cutoff > 0.0))
        throw std::invalid_argument("initial cutoff must be > 0");

    double K = initial_cutoff;
    std::optional<TailEstimate> te;
    for (int doubling = 0; doubling <= 60; ++doubling) {
        te = tail(K);
        if (te && te->uncertainty <= settings.abs_tol / 10.0) break;
        te.reset();
        K *= 2.0;
    }
    if (!te)
        throw QuadratureError("tail bound did not reach abs_tol/10 within 60 cutoff doublings",
                              QuadratureResult{});

    // Never evaluate at the exact origin: clamp abscissae to a tiny shift.
    const double shift = 1e-12 * std::min(K, settings.oscillation_period_hint.value_or(K));
    auto f_shifted = [&f, shift](double x) { return f(x < shift ? shift : x); };

    QuadratureResult r = integrate_adaptive(
        f_shifted, 0.0, K, settings, cutoff_panel_seeds(K, settings, interior_seeds));
    r.value += te->value;
    r.abs_error += te->uncertainty;
    return r;
}

namespace {

// Envelope of |f| near x: the max over a handful of samples spread across
// one oscillation period (or a 5% neighborhood when the period is unknown).
double envelope_sample(const std::function<double(double)>& f, double x,
                       const QuadratureSettings& settings) {
    const double span = settings.oscillation_period_hint.value_or(0.05 * x);
    double m = 0.0;
    for (int j = 0; j < 8; ++j) {
        const double v = std::abs(f(x + span * j / 8.0));
        if (std::isfinite(v)) m = std::max(m, v);
    }
    return m;
}

}  // namespace

QuadratureResult integrate_semiinfinite(const std::function<double(double)>& f,
                                        const QuadratureSettings& settings) {
    settings.validate();

    TailModel tail;
    double K0 = 32.0;
    if (settings.tail_exponent_hint && *settings.tail_exponent_hint > 0.0) {
        // Algebraic decay |f| ~ C k^-p: the dropped tail is below
        // C K^(1-p)/(p-1) with C calibrated from envelope samples at K.
        const double p = *settings.tail_exponent_hint;
        tail = [&f, &settings, p](double K) -> std::optional<TailEstimate> {
            double C = 0.0;
            for (double m : {1.0, 1.15, 1.3, 1.5})
                C = std::max(C, envelope_sample(f, K * m, settings) * std::pow(K * m, p));
            return TailEstimate{0.0, 3.0 * C * std::pow(K, 1.0 - p) / (p - 1.0)};
        };
    } else if (settings.tail_exponent_hint) {
        // Exponential decay with a known rate.
        const double rate = -*settings.tail_exponent_hint;
        K0 = std::max(K0, 8.0 / rate);
        tail = [&f, &settings, rate](double K) -> std::optional<TailEstimate> {
            const double s = envelope_sample(f, K, settings);
            return TailEstimate{0.0, 3.0 * s / rate + 1e-300};
        };
    } else {
        // No hint: estimate an exponential rate from envelope samples and
        // decline (forcing a larger K) until the fit looks like real decay.
        tail = [&f, &settings](double K) -> std::optional<TailEstimate> {
            const double e1 = envelope_sample(f, 0.75 * K, settings);
            const double e2 = envelope_sample(f, K, settings);
            if (e2 == 0.0 && e1 == 0.0) return TailEstimate{0.0, 1e-300};
            if (e2 <= 0.0 || e1 <= e2) return std::nullopt;
            const double rate = std::log(e1 / e2) / (0.25 * K);
            if (rate * K < 4.0) return std::nullopt;
            return TailEstimate{0.0, 3.0 * e2 / rate};
        };
    }

    return integrate_semiinfinite_with_tail(f, settings, tail, K0);
}

SumResult sum_truncated(const std::function<double(std::int64_t)>& term,
                        const QuadratureSettings& settings) {
    settings.validate();

    SumResult out;
    double prev = 0.0;
    double ratio = 0.0;
    int non_decaying = 0;
    constexpr std::int64_t kMaxTerms = 2'000'000;
    for (std::int64_t j = 1; j <= kMaxTerms; ++j) {
        const double t = term(j);
        if (!std::isfinite(t)) {
            char buf[64];
            std::snprintf(buf, sizeof buf, "series term %lld is non-finite",
                          static_cast<long long>(j));
            throw std::runtime_error(buf);
        }
        out.value += t;
        out.terms_used = j;
        if (j > 1) {
            ratio = (prev != 0.0) ? std::abs(t) / std::abs(prev) : 0.0;
            if (std::abs(t) >= std::abs(prev) && std::abs(t) > 0.0) {
                if (++non_decaying >= 50) {
                    QuadratureResult best{out.value, std::abs(t), j};
                    throw QuadratureError("series terms are not decaying", best);
                }
            } else {
                non_decaying = 0;
            }
            if (std::abs(t) < settings.abs_tol) {
                const double r = std::min(ratio, 0.999);
                out.abs_error = std::abs(t) * r / (1.0 - r);
                return out;
            }
        }
        prev = t;
    }
    QuadratureResult best{out.value, std::abs(prev), out.terms_used};
    throw QuadratureError("series did not converge within the term budget", best);
}

}  // namespace casimir
