#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "fourext/bounds.hpp"
#include "fourext/errors.hpp"

using namespace fourext;

namespace {

BoundInputs window_inputs(double r, double big_r, int n, double delta, double lambda, double q,
                          double big_n = 1.0) {
    const StabilityParams sp(big_n, 1.0, 1.0, r, delta);
    const TauSchedule sched{0.0, 1.0, big_r / r, big_r, n};
    return BoundInputs{sp, sched, 1, SmoothnessInputs{}, lambda, q};
}

}  // namespace

TEST_CASE("two-term window bound") {
    CHECK(two_term_extrapolation_bound(window_inputs(1, 2, 3, 1e-6, 4, 1.0), 3) ==
          doctest::Approx(0.500128).epsilon(1e-12));
    CHECK(two_term_extrapolation_bound(window_inputs(1, 2, 0, 1e-6, 4, 1.0), 0) ==
          doctest::Approx(2e-6 + 4.0).epsilon(1e-12));
    CHECK(two_term_extrapolation_bound(window_inputs(1, 2, 10, 1e-300, 8, 1.0), 10) ==
          doctest::Approx(3.814697265625e-6).epsilon(1e-9));

    CHECK_THROWS_AS(
        two_term_extrapolation_bound(window_inputs(1, 4.1, 3, 1e-6, 8, 1.0), 3),
        HypothesisViolated);
    CHECK_THROWS_AS(
        two_term_extrapolation_bound(window_inputs(1, 0.9, 3, 1e-6, 8, 1.0), 3),
        HypothesisViolated);
}

TEST_CASE("optimised window bound") {
    const OptimizedBound ob = optimized_extrapolation_bound(window_inputs(1, 2, 0, 1e-4, 8, 1.0));
    CHECK(ob.tau_lambda == doctest::Approx(0.5).epsilon(1e-13));
    CHECK(ob.n_star == 4);
    CHECK(ob.bound == doctest::Approx(0.16).epsilon(1e-12));

    // R = r: the Holder exponent collapses to ln 2 / ln(2 lambda / r).
    const OptimizedBound flat = optimized_extrapolation_bound(window_inputs(1, 1, 0, 1e-4, 8, 1.0));
    CHECK(flat.tau_lambda == doctest::Approx(std::log(2.0) / std::log(16.0)).epsilon(1e-13));
    CHECK(flat.bound ==
          doctest::Approx(8.0 * std::pow(1e4, flat.tau_lambda) * 1e-4).epsilon(1e-12));

    // delta approaching Q kills the amplification ratio.
    const double q = 0.5;
    const OptimizedBound edge =
        optimized_extrapolation_bound(window_inputs(1, 2, 0, q * (1.0 - 1e-12), 8, q));
    CHECK(edge.bound == doctest::Approx(16.0 * q).epsilon(1e-9));

    CHECK_THROWS_AS(optimized_extrapolation_bound(window_inputs(1, 2, 0, 0.7, 8, 0.5)),
                    DeltaTooLarge);
}

TEST_CASE("optimal term count beats the optimised bound on the window grid") {
    for (double big_r : {1.5, 2.0}) {
        for (double lambda : {4.0, 8.0}) {
            for (double delta : {1e-3, 1e-6, 1e-9}) {
                for (double q : {0.5, 3.0, 100.0}) {
                    const BoundInputs bi = window_inputs(1.0, big_r, 0, delta, lambda, q, 1e3);
                    const OptimizedBound ob = optimized_extrapolation_bound(bi);
                    CHECK(two_term_extrapolation_bound(bi, ob.n_star) <=
                          ob.bound * (1.0 + 1e-12));
                }
            }
        }
    }
}

TEST_CASE("scheduled extrapolation bound") {
    {
        const StabilityParams sp(1.0, 1.0, 1.0, 1.0, 1e-5);
        const BoundInputs bi{sp, make_schedule(sp, 0.0), 1, {}, {}, {}};
        CHECK(schedule_extrapolation_bound(bi) == doctest::Approx(8e-5).epsilon(1e-12));
    }
    {
        const StabilityParams sp(1.0, 1.0, 1.0, 1.0, std::exp(-16.0));
        const BoundInputs bi{sp, make_schedule(sp, 0.5), 1, {}, {}, {}};
        CHECK(schedule_extrapolation_bound(bi) ==
              doctest::Approx(0.2072177993598077).epsilon(1e-12));
    }
    {
        const double big_n = 2.5;
        const StabilityParams sp(big_n, 1.0, 1.0, 1.0, big_n * (1.0 - 1e-12));
        const BoundInputs bi{sp, make_schedule(sp, 0.3), 1, {}, {}, {}};
        CHECK(schedule_extrapolation_bound(bi) == doctest::Approx(8.0 * big_n).epsilon(1e-9));
    }
    {
        const StabilityParams sp(1.0, 1.0, 2.0, 1.0, 1e-5);
        const BoundInputs bi{sp, make_schedule(sp, 0.8), 1, {}, {}, {}};  // tau > 1/nu
        CHECK_THROWS_AS(schedule_extrapolation_bound(bi), HypothesisViolated);
    }
}

TEST_CASE("sup-norm reconstruction bound") {
    const StabilityParams sp(1.0, 1.0, 1.0, 1.0, std::exp(-16.0));
    BoundInputs bi{sp, make_schedule(sp, 0.5), 1, {}, {}, {}};
    bi.smooth.m = 3.0;
    bi.smooth.gamma1 = 1.0;
    CHECK(bi.sched.big_l == doctest::Approx(std::numbers::sqrt2).epsilon(1e-13));
    CHECK(sup_reconstruction_bound(bi) == doctest::Approx(1.0861004444394937).epsilon(1e-12));

    // Degenerate schedule: the tail term is c(d) gamma1 r^{d-m} / (m-d).
    BoundInputs flat{sp, make_schedule(sp, 0.0), 1, {}, {}, {}};
    flat.smooth.m = 3.0;
    flat.smooth.gamma1 = 0.7;
    CHECK(sup_reconstruction_bound(flat) ==
          doctest::Approx(16.0 * std::exp(-16.0) + 0.7).epsilon(1e-12));

    // As delta shrinks the logarithmic tail dominates.
    const StabilityParams tiny(1.0, 1.0, 1.0, 1.0, 1e-30);
    BoundInputs small{tiny, make_schedule(tiny, 0.5), 1, {}, {}, {}};
    small.smooth.m = 3.0;
    small.smooth.gamma1 = 1.0;
    const double second = 2.0 / 2.0 * std::pow(small.sched.big_l, -2.0);
    CHECK(sup_reconstruction_bound(small) / second < 1.01);

    bi.smooth.m = 0.5;  // m <= d
    CHECK_THROWS_AS(sup_reconstruction_bound(bi), HypothesisViolated);
    bi.smooth.m = 3.0;
    bi.smooth.gamma1.reset();
    CHECK_THROWS_AS(sup_reconstruction_bound(bi), HypothesisViolated);
}

TEST_CASE("sobolev reconstruction bound") {
    const StabilityParams sp(1.0, 1.0, 1.0, 1.0, std::exp(-16.0));
    BoundInputs bi{sp, make_schedule(sp, 0.5), 1, {}, {}, {}};
    bi.smooth.m = 2.0;
    bi.smooth.gamma2 = 1.0;
    bi.smooth.s = 0.0;
    CHECK(sobolev_reconstruction_bound(bi) == doctest::Approx(1.373553459829273).epsilon(1e-10));

    // s = 0, d = 1: the radial integral is exactly r L.
    const double kPi = std::numbers::pi;
    const double big_l = bi.sched.big_l;
    const double first = 8.0 * std::sqrt(2.0 * kPi) * std::sqrt(2.0 * big_l) * big_l *
                         std::exp(-4.0);
    bi.smooth.gamma2 = 0.0;  // tail off
    CHECK(sobolev_reconstruction_bound(bi) == doctest::Approx(first).epsilon(1e-10));

    bi.smooth.gamma2 = 1.0;
    bi.smooth.s = 2.5;  // s >= m
    CHECK_THROWS_AS(sobolev_reconstruction_bound(bi), HypothesisViolated);
    bi.smooth.s = 0.0;
    bi.smooth.m = -1.0;  // below -d/2
    CHECK_THROWS_AS(sobolev_reconstruction_bound(bi), HypothesisViolated);
}

TEST_CASE("largest admissible log-rate exponents") {
    CHECK(beta1_max(1.0, 5.0, 1.0) == doctest::Approx(4.0).epsilon(1e-13));
    CHECK(beta2_max(1.0, 5.0, 0.0) == doctest::Approx(5.0).epsilon(1e-13));
    CHECK(beta2_max(2.0, 4.0, 0.0) == doctest::Approx(1.1715728752538097).epsilon(1e-13));
    CHECK(beta1_max(1e6, 4.0, 1.0) < 1e-5);
    CHECK_THROWS_AS(beta1_max(1.0, 1.0, 2.0), HypothesisViolated);
}

TEST_CASE("scheduled bound dominates the window bound it comes from") {
    // With lambda = r (2L)^{1/(nu tau)} and the moment replaced by its
    // certified envelope, the optimised window bound is at most the scheduled
    // bound (the Holder exponent only relaxes).
    for (double nu : {1.0, 2.0}) {
        for (double tau : {0.2, 0.45}) {
            if (tau > 1.0 / nu) continue;
            for (double delta : {1e-4, 1e-8, 1e-12}) {
                const StabilityParams sp(1.0, 1.0, nu, 1.0, delta);
                const TauSchedule sched = make_schedule(sp, tau);
                if (sched.big_l <= 1.0) continue;  // identity branch
                const double lambda = sp.r * std::pow(2.0 * sched.big_l, 1.0 / (nu * tau));
                const double q_env = sp.big_n * std::exp(sp.sigma * std::pow(lambda, nu));
                BoundInputs bi{sp, sched, 1, {}, lambda, q_env};
                const OptimizedBound ob = optimized_extrapolation_bound(bi);
                CHECK(ob.bound <= schedule_extrapolation_bound(bi) * (1.0 + 1e-12));
            }
        }
    }
}
