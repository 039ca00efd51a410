#include "doctest.h"

#include "casimir/quadrature.hpp"

#include <cmath>
#include <cstring>
#include <vector>

using namespace casimir;

namespace {

struct Oracle {
    const char* name;
    std::function<double(double)> f;
    double exact;
    QuadratureSettings settings;
};

std::vector<Oracle> closed_form_integrals() {
    std::vector<Oracle> v;
    {
        Oracle o;
        o.name = "exp(-k)";
        o.f = [](double k) { return std::exp(-k); };
        o.exact = 1.0;
        v.push_back(o);
    }
    {
        Oracle o;
        o.name = "k exp(-k) cos(10k)";
        o.f = [](double k) { return k * std::exp(-k) * std::cos(10.0 * k); };
        o.exact = -99.0 / 10201.0;  // (1-b^2)/(1+b^2)^2 at b = 10
        o.settings.oscillation_period_hint = M_PI / 10.0;
        v.push_back(o);
    }
    {
        Oracle o;
        o.name = "(1+k)^-3";
        o.f = [](double k) { return std::pow(1.0 + k, -3.0); };
        o.exact = 0.5;
        o.settings.tail_exponent_hint = 3.0;
        v.push_back(o);
    }
    return v;
}

}  // namespace

TEST_CASE("semi-infinite integral closed-form oracles") {
    for (const Oracle& o : closed_form_integrals()) {
        CAPTURE(o.name);
        QuadratureResult r = integrate_semiinfinite(o.f, o.settings);
        CHECK(std::abs(r.value - o.exact) < 1e-9 * std::max(1.0, std::abs(o.exact)));
        // the first two are smooth-exponential and should hit much tighter
        if (std::strcmp(o.name, "(1+k)^-3") != 0)
            CHECK(std::abs(r.value - o.exact) < 1e-12);
        CHECK(r.evaluations > 0);
        CHECK(r.abs_error >= 0.0);
    }
}

TEST_CASE("error honesty: |value - exact| <= 10 * reported error") {
    for (const Oracle& o : closed_form_integrals()) {
        CAPTURE(o.name);
        QuadratureResult r = integrate_semiinfinite(o.f, o.settings);
        CHECK(std::abs(r.value - o.exact) <= 10.0 * r.abs_error);
    }
}

TEST_CASE("determinism: identical settings give bit-identical results") {
    for (const Oracle& o : closed_form_integrals()) {
        CAPTURE(o.name);
        QuadratureResult a = integrate_semiinfinite(o.f, o.settings);
        QuadratureResult b = integrate_semiinfinite(o.f, o.settings);
        CHECK(std::memcmp(&a.value, &b.value, sizeof a.value) == 0);
        CHECK(std::memcmp(&a.abs_error, &b.abs_error, sizeof a.abs_error) == 0);
        CHECK(a.evaluations == b.evaluations);
    }
}

TEST_CASE("refinement monotonicity under tightened rel_tol") {
    for (const Oracle& o : closed_form_integrals()) {
        CAPTURE(o.name);
        QuadratureSettings loose = o.settings;
        loose.rel_tol = 1e-6;
        QuadratureSettings tight = o.settings;
        tight.rel_tol = 5e-7;
        QuadratureResult rl = integrate_semiinfinite(o.f, loose);
        QuadratureResult rt = integrate_semiinfinite(o.f, tight);
        const double el = std::abs(rl.value - o.exact);
        const double et = std::abs(rt.value - o.exact);
        CHECK(et <= el + rl.abs_error);
    }
}

TEST_CASE("finite-interval adaptive basics") {
    QuadratureSettings s;
    auto f = [](double x) { return std::sin(x); };
    QuadratureResult r = integrate_adaptive(f, 0.0, M_PI, s);
    CHECK(r.value == doctest::Approx(2.0).epsilon(1e-12));

    // interior seeds are honored and harmless
    QuadratureResult r2 = integrate_adaptive(f, 0.0, M_PI, s, {0.5, 1.0, 2.0});
    CHECK(r2.value == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("panel budget exhaustion carries a best estimate") {
    QuadratureSettings s;
    s.max_panels = 16;
    s.rel_tol = 1e-15;
    s.abs_tol = 1e-300;
    auto f = [](double x) { return std::cos(50.0 * x * x); };
    try {
        integrate_adaptive(f, 0.0, 10.0, s);
        FAIL("expected QuadratureError");
    } catch (const QuadratureError& e) {
        CHECK(std::isfinite(e.best.value));
        CHECK(e.best.abs_error > 0.0);
        CHECK(e.best.evaluations > 0);
    }
}

TEST_CASE("non-finite integrand values are reported with the abscissa") {
    QuadratureSettings s;
    auto f = [](double x) { return x < 0.5 ? 1.0 : 1.0 / 0.0; };
    CHECK_THROWS_AS(integrate_adaptive(f, 0.0, 1.0, s), std::runtime_error);
}

TEST_CASE("settings validation") {
    QuadratureSettings s;
    s.rel_tol = 0.0;
    CHECK_THROWS_AS(s.validate(), std::invalid_argument);
    s = {};
    s.max_panels = 8;
    CHECK_THROWS_AS(s.validate(), std::invalid_argument);
    s = {};
    s.tail_exponent_hint = 0.5;  // algebraic decay too slow to integrate
    CHECK_THROWS_AS(s.validate(), std::invalid_argument);
    s = {};
    CHECK_NOTHROW(s.validate());
}

TEST_CASE("truncated sums: geometric oracle") {
    QuadratureSettings s;
    SumResult r = sum_truncated([](std::int64_t j) { return std::pow(2.0, -double(j)); }, s);
    CHECK(std::abs(r.value - 1.0) <= 1e-12 + r.abs_error);
    CHECK(std::abs(r.value - 1.0) <= 10.0 * std::max(r.abs_error, 1e-16));
}

TEST_CASE("truncated sums: sum j e^{-j/2} = e^{1/2}/(e^{1/2}-1)^2") {
    QuadratureSettings s;
    const double x = std::exp(-0.5);
    const double exact = x / ((1.0 - x) * (1.0 - x));  // = e^{1/2}/(e^{1/2}-1)^2
    CHECK(exact == doctest::Approx(3.91771).epsilon(1e-5));
    SumResult r = sum_truncated(
        [](std::int64_t j) { return double(j) * std::exp(-0.5 * double(j)); }, s);
    CHECK(std::abs(r.value - exact) <= 10.0 * std::max(r.abs_error, 1e-15));
    CHECK(std::abs(r.value - exact) < 1e-10);
}

TEST_CASE("truncated sums: single-term series is returned exactly") {
    QuadratureSettings s;
    SumResult r = sum_truncated(
        [](std::int64_t j) { return j == 1 ? 0.7853981633974483 : 0.0; }, s);
    CHECK(r.value == 0.7853981633974483);
    CHECK(r.abs_error == 0.0);
}

TEST_CASE("truncated sums: non-decaying series is rejected") {
    QuadratureSettings s;
    CHECK_THROWS_AS(sum_truncated([](std::int64_t) { return 1.0; }, s),
                    QuadratureError);
}
