#ifndef FOUREXT_FOURIER_HPP
#define FOUREXT_FOURIER_HPP

#include <functional>
#include <optional>
#include <string>

#include "fourext/ball_field.hpp"
#include "fourext/geometry.hpp"

namespace fourext {

/// Certificate that the exponential moment of v satisfies
/// Q_v(lambda) <= big_n * exp(sigma * lambda^nu) for all lambda >= 0.
struct DecayCertificate {
    double big_n;
    double sigma;
    double nu;  // >= 1
};

/// A certified smoothness bound: the named norm of v is <= value.
struct SmoothnessCertificate {
    double m;
    double value;
};

enum class NormKind { SupNorm, L2, SobolevHs, WmSup };

/// Which error norm to measure; `param` is s for SobolevHs and m for WmSup.
struct NormSpec {
    NormKind kind = NormKind::SupNorm;
    double param = 0.0;
    int dim = 1;
};

/// An analytic test pair (v, Fv) with certified decay, an exponential-moment
/// evaluator, and optional smoothness certificates. All evaluators are pure,
/// so a TestFunction can be shared freely across threads.
struct TestFunction {
    int dim = 1;
    std::string name;
    std::function<cplx(const Vec&)> value;      // v(x)
    std::function<cplx(const Vec&)> transform;  // Fv(xi), 1/(2 pi)^d convention
    DecayCertificate decay{1.0, 1.0, 1.0};
    std::function<double(double)> exp_moment;   // Q_v(lambda)
    std::optional<SmoothnessCertificate> wm_norm;  // sup-type, needs m > d
    std::optional<SmoothnessCertificate> hm_norm;  // L2-Sobolev type
    double trunc_radius = 9.0;  // |v| < 1e-16 outside this radius
    double osc_freq = 0.0;      // dominant oscillation of v (quadrature hint)
    bool radial = true;
};

/// v(x) = exp(-|x|^2/2); the transform is (2 pi)^{-d/2} exp(-|xi|^2/2).
/// Decay certified with nu = 2, sigma = 0.51 and big_n fitted on a lambda
/// grid at construction.
TestFunction make_gaussian(int dim);

/// The modulated Gaussian family v(x) = eps |k|^{-m} exp(-|x|^2/2) cos(k.x),
/// whose transform is two Gaussian bumps centred at +-k. Requires |k| > 1.
TestFunction make_instability(int dim, const Vec& k, int m, double eps);

/// Closed-form sup of |Fv| over the ball B_r for the modulated Gaussian
/// family with |k| > r (attained at xi = r k/|k|).
double instability_ball_sup(int dim, double k_mag, int m, double eps, double r);

/// A C-infinity bump supported in B_sigma, value `height` at the origin.
/// The transform is quadrature-backed (no closed form); decay certified with
/// nu = 1 and sigma the support radius; W^m and H^m certificates (m = 2)
/// computed numerically at construction.
TestFunction make_bump(int dim, double support_radius, double height);

/// Fv(xi) = (2 pi)^{-d} int e^{i xi.x} v(x) dx by product quadrature over the
/// ball where |v| exceeds 1e-16. Self-checks by node doubling and throws
/// NonConvergent when the two results differ by more than 1e-8 relative.
cplx quadrature_ft(const TestFunction& tf, const Vec& xi, const QuadratureSpec& spec);

/// int_{B_R} field(xi) e^{-i xi.x} d xi. The radial rule splits at the inner
/// radius because the field need not be continuous there.
cplx inverse_ft_ball(const BallField& field, const Vec& x, const QuadratureSpec& spec);

/// Shared-node variant of inverse_ft_ball for many x at once: the field is
/// sampled a single time on a rule resolving the worst oscillation among the
/// evaluation points. Identical semantics, one field pass.
std::vector<cplx> inverse_ft_ball_grid(const BallField& field, const std::vector<Vec>& xs,
                                       const QuadratureSpec& spec);

/// Error between a reconstruction vhat and tf in the requested norm.
/// SupNorm and L2 are measured space-side on a dense grid in the box
/// |x_i| <= spec.sup_box. SobolevHs and WmSup are measured Fourier-side from
/// (Fv - field) on B_R plus the analytic tail of Fv outside (where the field
/// vanishes); vhat is not consulted for those kinds.
double error_norm(const std::function<cplx(const Vec&)>& vhat, const TestFunction& tf,
                  const NormSpec& norm, const QuadratureSpec& spec, const BallField& field);

}  // namespace fourext

#endif
