#ifndef FOUREXT_CHEBYSHEV_HPP
#define FOUREXT_CHEBYSHEV_HPP

#include <complex>
#include <span>
#include <vector>

#include "fourext/geometry.hpp"

namespace fourext {

/// A truncated Chebyshev sum b_0 T_0 + ... + b_{n-1} T_{n-1}.
/// An empty coefficient list represents the identically-zero sum.
class ChebSeries {
   public:
    ChebSeries() = default;
    /// Validates that every coefficient is finite.
    explicit ChebSeries(std::vector<cplx> coeffs);

    int size() const { return static_cast<int>(coeffs_.size()); }
    bool empty() const { return coeffs_.empty(); }
    const std::vector<cplx>& coeffs() const { return coeffs_; }

    /// Clenshaw backward recurrence; stable for |t| <= 1 and moderate growth
    /// beyond. Throws RangeExceeded when intermediates leave the finite range.
    cplx operator()(double t) const;

    /// First min(n, size()) coefficients.
    ChebSeries truncated(int n) const;

   private:
    std::vector<cplx> coeffs_;
};

/// T_k(t) by the three-term recurrence T_{k+1} = 2 t T_k - T_{k-1}.
/// Agrees with cos(k arccos t) on [-1, 1] and with the cosh extension outside.
/// Throws RangeExceeded when the value would overflow.
double chebyshev_t(int k, double t);

/// Gauss-Chebyshev angles phi_i = (2i+1) pi / (2M), i = 0..M-1.
std::vector<double> chebyshev_angles(int m);

/// Gauss-Chebyshev nodes cos(phi_i) on (-1, 1), descending.
std::vector<double> chebyshev_nodes(int m);

/// Coefficients b_0..b_{n-1} of f from its values at the M Gauss-Chebyshev
/// nodes: b_k = (2 - [k=0]) / M * sum_i f(cos phi_i) cos(k phi_i).
/// The substitution t = cos phi absorbs the 1/sqrt(1-t^2) weight exactly, so
/// the rule is exact (up to roundoff) for polynomials f of degree <= 2M-n.
/// Throws InsufficientNodes when M < n.
ChebSeries chebyshev_coefficients(std::span<const cplx> samples, int n);

/// Parameters of the ellipse {cos z : |Im z| < ln rho} with rho > 2,
/// an evaluation half-width rho' in [1, rho/2), and a sup bound M_rho for
/// the expanded function on the ellipse.
struct EllipseParams {
    double rho;
    double rho_prime;
    double m_rho;

    EllipseParams(double rho, double rho_prime, double m_rho);
};

/// Sup-norm bound on [-rho', rho'] for the tail of an n-term Chebyshev
/// expansion of a function holomorphic and bounded by M_rho on the ellipse:
/// 2 M_rho (1 - 2 rho'/rho)^{-1} (2 rho'/rho)^n. Positive, decreasing in n.
double truncation_tail_bound(const EllipseParams& ep, int n);

}  // namespace fourext

#endif
