#ifndef FOUREXT_QUADRATURE_HPP
#define FOUREXT_QUADRATURE_HPP

#include <complex>
#include <functional>
#include <vector>

#include "fourext/geometry.hpp"

namespace fourext {

/// Gauss-Legendre nodes and weights on [-1, 1].
struct GaussRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

/// Returns the cached n-point Gauss-Legendre rule (Newton iteration on P_n).
const GaussRule& gauss_legendre(int n);

/// Composite 16-point Gauss-Legendre over [a, b] split into `panels` panels.
double integrate(const std::function<double(double)>& f, double a, double b, int panels);
cplx integrate_c(const std::function<cplx(double)>& f, double a, double b, int panels);

/// Composite rule with panel boundaries chosen by the caller (ascending).
double integrate_breaks(const std::function<double(double)>& f,
                        const std::vector<double>& breaks);

/// Panel count so that a 16-point panel resolves oscillation frequency `freq`
/// (radians per unit length) over an interval of given length.
int panels_for(double length, double freq, int min_nodes = 32);

/// Uniform trapezoid sum over one period [0, 2 pi); spectrally accurate for
/// smooth periodic integrands.
cplx integrate_periodic(const std::function<cplx(double)>& f, int nodes);

}  // namespace fourext

#endif
