#ifndef FOUREXT_BOUNDS_HPP
#define FOUREXT_BOUNDS_HPP

#include <optional>

#include "fourext/extrapolation.hpp"

namespace fourext {

/// Smoothness side of the bound inputs. gamma1 bounds the sup-type norm
/// sup (1+|xi|^2)^{m/2} |Fv| (needs m > d); gamma2 bounds the L2-Sobolev
/// norm of order m; s is the target Sobolev order (s < m).
struct SmoothnessInputs {
    double m = 0.0;
    std::optional<double> gamma1;
    std::optional<double> gamma2;
    std::optional<double> s;
};

/// Everything the closed-form error bounds consume.
struct BoundInputs {
    StabilityParams sp;
    TauSchedule sched;
    int dim = 1;
    SmoothnessInputs smooth;
    std::optional<double> lambda;    // moment argument for the two-term bounds
    std::optional<double> q_lambda;  // Q_v(lambda)
};

/// Two-term extrapolation error bound on B_R for an n-term extrapolation:
/// 2 (2R/r)^n delta + 4 Q_v(lambda) (R/lambda)^n.
/// Requires r <= R <= lambda/2 (HypothesisViolated otherwise).
double two_term_extrapolation_bound(const BoundInputs& bi, int n);

struct OptimizedBound {
    double bound;
    int n_star;         // ceil(ln(Q/delta) / ln(2 lambda / r))
    double tau_lambda;  // ln(2R/r) / ln(2 lambda / r)
};

/// Optimising the term count in the two-term bound gives the Holder form
/// (8R/r) (Q_v(lambda)/delta)^{tau_lambda} delta, together with the
/// optimal term count n_star. Requires 0 < delta < Q_v(lambda).
OptimizedBound optimized_extrapolation_bound(const BoundInputs& bi);

/// Extrapolation error bound on B_{R_tau} for the scheduled operator:
/// 8 L N^{1-alpha} delta^alpha with alpha = 1 - nu tau (2 - tau).
/// Requires tau in [0, 1/nu].
double schedule_extrapolation_bound(const BoundInputs& bi);

/// Sup-norm reconstruction bound (needs m > d and gamma1):
/// (8 c(d)/d) N^{1-alpha} r^d L^{d+1} delta^alpha
///   + (c(d)/(m-d)) gamma1 r^{d-m} L^{d-m}.
double sup_reconstruction_bound(const BoundInputs& bi);

/// Sobolev reconstruction bound of order s (needs m >= -d/2, s < m, gamma2):
/// 8 (2 pi)^{d/2} N^{1-alpha} sqrt(c(d) int_0^{rL} (1+t^2)^s t^{d-1} dt)
///   * L delta^alpha + gamma2 r^{s-m} L^{s-m}.
/// The radial integral uses 256-node Gauss-Legendre with a 512-node
/// self-check (NonConvergent past 1e-10 relative).
double sobolev_reconstruction_bound(const BoundInputs& bi);

/// Largest admissible logarithmic rate exponents:
/// (1 - sqrt(1 - 1/nu)) (m - d) for the sup-norm estimate and
/// (1 - sqrt(1 - 1/nu)) (m - s) for the Sobolev estimate.
double beta1_max(double nu, double m, double d);
double beta2_max(double nu, double m, double s);

}  // namespace fourext

#endif
