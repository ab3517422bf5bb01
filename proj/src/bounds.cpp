#include "fourext/bounds.hpp"

#include <cmath>
#include <numbers>

#include "fourext/errors.hpp"
#include "fourext/quadrature.hpp"

namespace fourext {

namespace {

void require_window(double r, double big_r, double lambda) {
    if (!(big_r >= r)) throw HypothesisViolated("bound: R must be >= r");
    if (!(big_r <= 0.5 * lambda)) throw HypothesisViolated("bound: R must be <= lambda/2");
}

double lambda_of(const BoundInputs& bi) {
    if (!bi.lambda) throw HypothesisViolated("bound: lambda not set");
    return *bi.lambda;
}

double q_of(const BoundInputs& bi) {
    if (!bi.q_lambda) throw HypothesisViolated("bound: Q_v(lambda) not set");
    return *bi.q_lambda;
}

}  // namespace

double two_term_extrapolation_bound(const BoundInputs& bi, int n) {
    const double r = bi.sp.r, big_r = bi.sched.big_r;
    const double lambda = lambda_of(bi), q = q_of(bi);
    require_window(r, big_r, lambda);
    return 2.0 * std::pow(2.0 * big_r / r, n) * bi.sp.delta +
           4.0 * q * std::pow(big_r / lambda, n);
}

OptimizedBound optimized_extrapolation_bound(const BoundInputs& bi) {
    const double r = bi.sp.r, big_r = bi.sched.big_r, delta = bi.sp.delta;
    const double lambda = lambda_of(bi), q = q_of(bi);
    require_window(r, big_r, lambda);
    if (!(delta < q)) throw DeltaTooLarge("bound: need delta < Q_v(lambda)");
    const double log_gain = std::log(2.0 * lambda / r);
    const double tau_lambda = std::log(2.0 * big_r / r) / log_gain;
    const int n_star = static_cast<int>(std::ceil(std::log(q / delta) / log_gain));
    const double bound = 8.0 * big_r / r * std::pow(q / delta, tau_lambda) * delta;
    return OptimizedBound{bound, n_star, tau_lambda};
}

double schedule_extrapolation_bound(const BoundInputs& bi) {
    const double tau = bi.sched.tau, nu = bi.sp.nu;
    if (!(tau >= 0.0 && tau <= 1.0 / nu))
        throw HypothesisViolated("bound: tau must lie in [0, 1/nu]");
    const double alpha = alpha_for_tau(tau, nu);
    return 8.0 * bi.sched.big_l * std::pow(bi.sp.big_n, 1.0 - alpha) *
           std::pow(bi.sp.delta, alpha);
}

double sup_reconstruction_bound(const BoundInputs& bi) {
    const double m = bi.smooth.m;
    const double d = static_cast<double>(bi.dim);
    if (!(m > d)) throw HypothesisViolated("bound: sup form needs m > d");
    if (!bi.smooth.gamma1) throw HypothesisViolated("bound: gamma1 not set");
    const double cd = unit_sphere_area(bi.dim);
    const double alpha = bi.sched.alpha;
    const double big_l = bi.sched.big_l, r = bi.sp.r;
    const double first = 8.0 * cd / d * std::pow(bi.sp.big_n, 1.0 - alpha) * std::pow(r, d) *
                         std::pow(big_l, d + 1.0) * std::pow(bi.sp.delta, alpha);
    const double second =
        cd / (m - d) * *bi.smooth.gamma1 * std::pow(r, d - m) * std::pow(big_l, d - m);
    return first + second;
}

double sobolev_reconstruction_bound(const BoundInputs& bi) {
    const double m = bi.smooth.m;
    const double d = static_cast<double>(bi.dim);
    if (!(m >= -0.5 * d)) throw HypothesisViolated("bound: Sobolev form needs m >= -d/2");
    if (!bi.smooth.s) throw HypothesisViolated("bound: target order s not set");
    const double s = *bi.smooth.s;
    if (!(s < m)) throw HypothesisViolated("bound: Sobolev form needs s < m");
    if (!bi.smooth.gamma2) throw HypothesisViolated("bound: gamma2 not set");

    const double cd = unit_sphere_area(bi.dim);
    const double big_l = bi.sched.big_l, r = bi.sp.r, alpha = bi.sched.alpha;
    auto radial = [&](int nodes) {
        const GaussRule& gr = gauss_legendre(nodes);
        const double half = 0.5 * r * big_l;
        double total = 0.0;
        for (std::size_t q = 0; q < gr.nodes.size(); ++q) {
            const double t = half * (gr.nodes[q] + 1.0);
            total += gr.weights[q] * std::pow(1.0 + t * t, s) * std::pow(t, d - 1.0);
        }
        return total * half;
    };
    const double coarse = radial(256), fine = radial(512);
    if (std::abs(fine - coarse) > 1e-10 * (1.0 + std::abs(fine)))
        throw NonConvergent("bound: Sobolev radial integral did not settle");

    // The constant c(d) sits under the root, the way the estimate is derived.
    const double first = 8.0 * std::pow(2.0 * std::numbers::pi, 0.5 * d) *
                         std::pow(bi.sp.big_n, 1.0 - alpha) * std::sqrt(cd * fine) * big_l *
                         std::pow(bi.sp.delta, alpha);
    const double second = *bi.smooth.gamma2 * std::pow(r, s - m) * std::pow(big_l, s - m);
    return first + second;
}

double beta1_max(double nu, double m, double d) {
    if (!(m > d)) throw HypothesisViolated("beta1_max: needs m > d");
    return (1.0 - std::sqrt(1.0 - 1.0 / nu)) * (m - d);
}

double beta2_max(double nu, double m, double s) {
    if (!(m > s)) throw HypothesisViolated("beta2_max: needs m > s");
    return (1.0 - std::sqrt(1.0 - 1.0 / nu)) * (m - s);
}

}  // namespace fourext
