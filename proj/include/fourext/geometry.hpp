#ifndef FOUREXT_GEOMETRY_HPP
#define FOUREXT_GEOMETRY_HPP

#include <array>
#include <cmath>
#include <complex>

namespace fourext {

using cplx = std::complex<double>;

/// A point in R^d for d in {1, 2, 3}. Unused components stay zero.
struct Vec {
    int dim = 1;
    std::array<double, 3> c{0.0, 0.0, 0.0};

    static Vec of(double x) { return Vec{1, {x, 0.0, 0.0}}; }
    static Vec of(double x, double y) { return Vec{2, {x, y, 0.0}}; }
    static Vec of(double x, double y, double z) { return Vec{3, {x, y, z}}; }

    double norm() const { return std::sqrt(c[0] * c[0] + c[1] * c[1] + c[2] * c[2]); }

    Vec scaled(double s) const { return Vec{dim, {s * c[0], s * c[1], s * c[2]}}; }
};

inline double dot(const Vec& a, const Vec& b) {
    return a.c[0] * b.c[0] + a.c[1] * b.c[1] + a.c[2] * b.c[2];
}

/// Node counts for the quadrature and grid engines.
struct QuadratureSpec {
    int radial_nodes = 64;    // minimum nodes per radial segment
    int angular_nodes = 64;   // uniform nodes per angular circle (d >= 2)
    int sup_grid = 4001;      // points per axis for dense sup/L2 grids
    int dim = 1;
    double sup_box = 6.0;     // half-width of the box used for space-side norms
    double osc_hint = 0.0;    // extra oscillation frequency the integrands carry

    bool valid() const {
        return radial_nodes >= 8 && angular_nodes >= 8 && sup_grid >= 8 &&
               dim >= 1 && dim <= 3 && sup_box > 0.0;
    }
};

/// Surface measure of the unit sphere in R^d: d pi^{d/2} / Gamma(d/2 + 1).
double unit_sphere_area(int dim);

}  // namespace fourext

#endif
