#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <string>
#include <vector>

#include "hardyspec/common.hpp"
#include "hardyspec/grid.hpp"
#include "hardyspec/spectra.hpp"
#include "hardyspec/weight.hpp"

using hs::Classification;
using hs::ErrorKind;
using hs::HsError;
using hs::LambdaOptions;
using hs::LogGrid;
using hs::Segment;
using hs::SegmentKind;
using hs::SpectralReport;
using hs::WeightProfile;

namespace {

Segment table_segment(double t0, double t1, std::vector<double> ts,
                      std::vector<double> values) {
    Segment s;
    s.t0 = t0;
    s.t1 = t1;
    s.kind = SegmentKind::Table;
    s.ts = std::move(ts);
    s.values = std::move(values);
    return s;
}

// 1 for r <= 1, 1/2 for r >= 2, linear in log r in between.
WeightProfile step_down_profile() {
    double l2 = std::log(2.0);
    return WeightProfile::make(
        {table_segment(0.0, l2, {0.0, l2}, {1.0, 0.5})}, 1.0, 0.5);
}

// Compactly supported enhancement: 10 on [1, 2] in r, unit background.
WeightProfile bump_profile() {
    double l2 = std::log(2.0);
    return WeightProfile::make(
        {table_segment(0.0, l2, {0.0, l2}, {10.0, 10.0})}, 1.0, 1.0);
}

template <typename F>
std::string expect_error(ErrorKind kind, F&& f) {
    try {
        f();
    } catch (const HsError& e) {
        CHECK(e.kind() == kind);
        return e.what();
    }
    FAIL("expected an error");
    return "";
}

}  // namespace

TEST_CASE("unit weight saturates the Hardy constant") {
    WeightProfile m1 = hs::constant_profile(1.0);
    LogGrid g = hs::make_grid(-30.0, 30.0, 2001);
    SpectralReport rep = hs::compute_lambda_m(m1, 3, g, LambdaOptions{});

    CHECK(rep.lambda_plus == 0.25);
    CHECK(rep.lambda_minus == 0.25);
    CHECK(rep.lambda_star == 0.25);
    CHECK(rep.winning_l == 0);
    CHECK(rep.lambda_m == rep.sectors[0].lambda);
    CHECK(rep.lambda_m >= 0.25 - 1e-12);
    CHECK(rep.lambda_m <= 0.26);
    CHECK(rep.classification == Classification::HardySaturated);

    REQUIRE(rep.sectors.size() == 4);
    for (size_t l = 0; l + 1 < rep.sectors.size(); ++l) {
        CHECK(rep.sectors[l].lambda <=
              rep.sectors[l + 1].lambda + 1e-9 * (1.0 + rep.sectors[l].lambda));
    }

    REQUIRE(static_cast<int>(rep.psi.size()) == g.n);
    CHECK(rep.psi.front() == 0.0);
    CHECK(rep.psi.back() == 0.0);
    double mx = 0.0;
    for (double v : rep.psi) mx = std::max(mx, std::fabs(v));
    CHECK(mx == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("jobs > 1 reproduces the serial sector sweep bitwise") {
    WeightProfile m1 = hs::constant_profile(1.0);
    LogGrid g = hs::make_grid(-10.0, 10.0, 201);
    LambdaOptions serial;
    LambdaOptions parallel;
    parallel.jobs = 3;
    SpectralReport a = hs::compute_lambda_m(m1, 3, g, serial);
    SpectralReport b = hs::compute_lambda_m(m1, 3, g, parallel);
    REQUIRE(a.sectors.size() == b.sectors.size());
    for (size_t l = 0; l < a.sectors.size(); ++l) {
        CHECK(a.sectors[l].lambda == b.sectors[l].lambda);
    }
}

TEST_CASE("a step down to a smaller limit at infinity stays saturated") {
    WeightProfile m = step_down_profile();
    LogGrid g = hs::make_grid(-30.0, 30.0, 2001);
    SpectralReport rep = hs::compute_lambda_m(m, 3, g, LambdaOptions{});
    CHECK(rep.lambda_minus == 0.25);        // limit at the origin is 1
    CHECK(rep.lambda_plus == 0.5);          // limit at infinity is 1/2
    CHECK(rep.lambda_star == 0.25);
    CHECK(rep.lambda_m > 0.25);
    CHECK(rep.lambda_m < 0.27);
    CHECK(rep.gap < rep.classification_tol * rep.lambda_star);
    CHECK(rep.classification == Classification::HardySaturated);
}

TEST_CASE("a strong localized enhancement produces a minimizer") {
    WeightProfile m = bump_profile();
    LogGrid g = hs::make_grid(-30.0, 30.0, 2001);
    SpectralReport rep = hs::compute_lambda_m(m, 3, g, LambdaOptions{});
    CHECK(rep.lambda_star == 0.25);
    CHECK(rep.lambda_m < 0.13);
    CHECK(rep.gap > 1e-2);
    CHECK(rep.classification == Classification::MinimizerExists);
}

TEST_CASE("a weak localized enhancement is inconclusive") {
    WeightProfile m = hs::scale_add(bump_profile(), 0.001, 0.999);
    CHECK(m.limit_origin() == 1.0);
    CHECK(m.limit_infinity() == 1.0);
    LogGrid g = hs::make_grid(-30.0, 30.0, 2001);
    SpectralReport rep = hs::compute_lambda_m(m, 3, g, LambdaOptions{});
    CHECK(rep.classification == Classification::Inconclusive);
}

TEST_CASE("the step-down value approaches the Hardy constant on wide grids") {
    // The infimum equals 1/4 but is not attained; the discrete value
    // converges to it from above as the truncation range grows.
    WeightProfile m = step_down_profile();
    LambdaOptions opts;
    opts.l_max = 0;  // the minimum sits in sector 0 for nonnegative weights
    LogGrid wide = hs::make_grid(-120.0, 120.0, 24001);
    SpectralReport rep = hs::compute_lambda_m(m, 3, wide, opts);
    CHECK(rep.lambda_m > 0.25);
    CHECK(rep.lambda_m - 0.25 <= 1e-3);
}

TEST_CASE("rescaling the weight rescales the principal value") {
    WeightProfile m = step_down_profile();
    LogGrid g = hs::make_grid(-30.0, 30.0, 2001);
    SpectralReport base = hs::compute_lambda_m(m, 3, g, LambdaOptions{});

    // doubling is exact in binary arithmetic
    WeightProfile m2 = hs::scale_add(m, 2.0, 0.0);
    SpectralReport twice = hs::compute_lambda_m(m2, 3, g, LambdaOptions{});
    CHECK(twice.lambda_m == base.lambda_m / 2.0);

    WeightProfile m3 = hs::scale_add(m, 3.0, 0.0);
    SpectralReport thrice = hs::compute_lambda_m(m3, 3, g, LambdaOptions{});
    CHECK(std::fabs(thrice.lambda_m - base.lambda_m / 3.0) <=
          1e-12 * base.lambda_m);
}

TEST_CASE("sign-indefinite weights classify against the positive limit") {
    WeightProfile m = WeightProfile::make(
        {table_segment(-1.0, 0.0, {-1.0, 0.0}, {-0.5, -0.5}),
         table_segment(0.0, 1.0, {0.0, 1.0}, {2.0, 2.0})},
        -0.5, 2.0);
    LogGrid g = hs::make_grid(-20.0, 20.0, 1201);
    SpectralReport rep = hs::compute_lambda_m(m, 3, g, LambdaOptions{});
    CHECK(std::isinf(rep.lambda_minus));  // nonpositive limit at the origin
    CHECK(rep.lambda_plus == 0.125);
    CHECK(rep.lambda_star == 0.125);
    CHECK(rep.lambda_m > rep.lambda_star);
    CHECK(rep.classification == Classification::HardySaturated);
}

TEST_CASE("the sector-wise lower bound holds with a plateau certificate") {
    LogGrid g = hs::make_grid(-30.0, 30.0, 2001);
    hs::LimitBoundCheck a =
        hs::check_limit_bound(hs::constant_profile(1.0), 3, g);
    CHECK(a.holds);
    CHECK(a.lambda_plus == 0.25);
    CHECK(a.lambda_minus == 0.25);
    hs::LimitBoundCheck b = hs::check_limit_bound(step_down_profile(), 3, g);
    CHECK(b.holds);
    hs::LimitBoundCheck c = hs::check_limit_bound(bump_profile(), 3, g);
    CHECK(c.holds);
}

TEST_CASE("near-origin decay of the minimizer matches the predicted band") {
    WeightProfile m = bump_profile();
    LogGrid g = hs::make_grid(-30.0, 30.0, 3001);
    SpectralReport rep = hs::compute_lambda_m(m, 3, g, LambdaOptions{});
    REQUIRE(rep.classification == Classification::MinimizerExists);

    double r_hi = std::exp(-7.0);
    double r_lo = r_hi * std::exp(-7.0);
    hs::DecayFit fit = hs::decay_fit(rep, r_lo, r_hi, r_hi, 0.05);
    CHECK(fit.pass);
    // the weight is 1 on the band ball, so the band collapses to a point
    CHECK(fit.s_lower == fit.s_upper);
    CHECK(std::fabs(fit.fitted_s - fit.s_lower) <= 0.01);
    CHECK(fit.s_lower > 0.0);
    CHECK(fit.lambda_m == rep.lambda_m);

    SUBCASE("window validation") {
        CHECK(expect_error(ErrorKind::InvalidInput, [&] {
                  hs::decay_fit(rep, 0.0, r_hi, r_hi, 0.05);
              }).find("0 < r_lo < r_hi") != std::string::npos);
        CHECK(expect_error(ErrorKind::InvalidInput, [&] {
                  hs::decay_fit(rep, r_hi, r_lo, r_hi, 0.05);
              }).find("0 < r_lo < r_hi") != std::string::npos);
        CHECK(expect_error(ErrorKind::InvalidInput, [&] {
                  hs::decay_fit(rep, r_lo, r_hi, r_hi / 2.0, 0.05);
              }).find("band ball") != std::string::npos);
        CHECK(expect_error(ErrorKind::InvalidInput, [&] {
                  hs::decay_fit(rep, std::exp(-40.0), r_hi, r_hi, 0.05);
              }).find("inside the grid range") != std::string::npos);
        CHECK(expect_error(ErrorKind::InvalidInput, [&] {
                  hs::decay_fit(rep, r_hi * std::exp(-0.1), r_hi, r_hi, 0.05);
              }).find("fewer than 8 grid nodes") != std::string::npos);
        CHECK(expect_error(ErrorKind::InvalidInput, [&] {
                  hs::decay_fit(rep, r_lo, r_hi, r_hi, -0.1);
              }).find("band margin") != std::string::npos);
        CHECK(expect_error(ErrorKind::InvalidInput, [&] {
                  hs::decay_fit(rep, std::exp(-1.0), std::exp(1.0),
                                std::exp(1.0), 0.05);
              }).find("band radius too large") != std::string::npos);
    }

    SUBCASE("requires an existing minimizer") {
        SpectralReport sat = hs::compute_lambda_m(
            hs::constant_profile(1.0), 3, hs::make_grid(-10.0, 10.0, 201),
            LambdaOptions{});
        CHECK(expect_error(ErrorKind::InvalidInput, [&] {
                  hs::decay_fit(sat, r_lo, r_hi, r_hi, 0.05);
              }).find("MinimizerExists") != std::string::npos);
    }
}

TEST_CASE("a manufactured pure-exponential profile is fit exactly") {
    // psi = exp(t/4) solves the fit for lambda_m * m = 3/16 with N = 3:
    // s = 1/2 - sqrt(1/4 - 3/16) = 1/4, and every quantity is a dyadic
    // rational, so the band endpoints are exact.
    WeightProfile alive = hs::constant_profile(1.0);
    SpectralReport rep;
    rep.N = 3;
    rep.grid = hs::make_grid(-16.0, 0.0, 1601);
    rep.lambda_m = 0.1875;
    rep.classification = Classification::MinimizerExists;
    rep.profile = &alive;
    rep.psi.resize(rep.grid.n);
    for (int i = 0; i < rep.grid.n; ++i) {
        rep.psi[i] = std::exp(0.25 * rep.grid.node(i));
    }
    hs::DecayFit fit = hs::decay_fit(rep, std::exp(-10.0), std::exp(-2.0),
                                     std::exp(-2.0), 0.05);
    CHECK(fit.s_lower == 0.25);
    CHECK(fit.s_upper == 0.25);
    CHECK(fit.fitted_s == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(fit.pass);
}

TEST_CASE("ball criterion and bounds reproduce the closed forms") {
    hs::BallBoundReport rep = hs::ball_bound(3, 1.0, 2.0, 1.0, 1.0, 100.0,
                                             false);
    CHECK(rep.criterion_rhs == 1.0 / 360.0);
    CHECK(rep.apriori_bound == 0.9);
    CHECK(rep.sharp_bound == rep.apriori_bound);
    CHECK_FALSE(rep.criterion_holds);
    CHECK_FALSE(rep.use_sharp);

    hs::BallBoundReport far = hs::ball_bound(3, 1.0, 2.0, 0.0, 0.0, 100.0,
                                             false);
    CHECK(far.criterion_holds);

    hs::BallBoundReport sharp = hs::ball_bound(3, 1.0, 2.0, 1.0, 1.0, 100.0,
                                               true);
    double pi = 3.14159265358979323846;
    CHECK(std::fabs(sharp.sharp_bound - pi * pi * 0.09) <=
          1e-4 * pi * pi * 0.09);
    CHECK(sharp.sharp_bound < sharp.apriori_bound);
}

TEST_CASE("ball bound input validation") {
    CHECK(expect_error(ErrorKind::InvalidInput, [] {
              hs::ball_bound(2, 1.0, 2.0, 1.0, 1.0, 1.0, false);
          }).find("dimension") != std::string::npos);
    CHECK(expect_error(ErrorKind::InvalidInput, [] {
              hs::ball_bound(3, 1.0, 0.5, 1.0, 1.0, 1.0, false);
          }).find("d > r") != std::string::npos);
    CHECK(expect_error(ErrorKind::InvalidInput, [] {
              hs::ball_bound(3, -1.0, 2.0, 1.0, 1.0, 1.0, false);
          }).find("radius") != std::string::npos);
    CHECK(expect_error(ErrorKind::InvalidInput, [] {
              hs::ball_bound(3, 1.0, 2.0, 1.0, 1.0, 0.0, false);
          }).find("m_peak") != std::string::npos);
}

TEST_CASE("Dirichlet ball eigenvalue in three dimensions is pi^2") {
    double pi = 3.14159265358979323846;
    double lam = hs::ball_dirichlet_lambda1(3, 1001);
    CHECK(std::fabs(lam - pi * pi) <= 1e-4 * pi * pi);
    CHECK(hs::ball_dirichlet_lambda1(4, 1001) ==
          doctest::Approx(14.6819706).epsilon(1e-4));
    CHECK(expect_error(ErrorKind::InvalidInput, [] {
              hs::ball_dirichlet_lambda1(3, 50);
          }).find("at least 100 nodes") != std::string::npos);
}

TEST_CASE("spectral options are validated") {
    WeightProfile m1 = hs::constant_profile(1.0);
    LogGrid g = hs::make_grid(-5.0, 5.0, 101);
    LambdaOptions bad;
    bad.classification_tol = 0.0;
    CHECK(expect_error(ErrorKind::InvalidInput, [&] {
              hs::compute_lambda_m(m1, 3, g, bad);
          }).find("classification_tol") != std::string::npos);
    bad = LambdaOptions{};
    bad.l_max = -1;
    CHECK(expect_error(ErrorKind::InvalidInput, [&] {
              hs::compute_lambda_m(m1, 3, g, bad);
          }).find("l_max") != std::string::npos);
    bad = LambdaOptions{};
    bad.jobs = 0;
    CHECK(expect_error(ErrorKind::InvalidInput, [&] {
              hs::compute_lambda_m(m1, 3, g, bad);
          }).find("jobs") != std::string::npos);
    bad = LambdaOptions{};
    bad.tol = -1.0;
    CHECK(expect_error(ErrorKind::InvalidInput, [&] {
              hs::compute_lambda_m(m1, 3, g, bad);
          }).find("tolerance") != std::string::npos);
    LogGrid tiny{0.0, 1.0, 3};
    CHECK(expect_error(ErrorKind::InvalidInput, [&] {
              hs::compute_lambda_m(m1, 3, tiny, LambdaOptions{});
          }).find("at least 4 nodes") != std::string::npos);
    CHECK(expect_error(ErrorKind::InvalidInput, [&] {
              hs::compute_lambda_m(m1, 2, g, LambdaOptions{});
          }).find("dimension must be") != std::string::npos);
}
