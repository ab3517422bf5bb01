#include "fourext/extrapolation.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "fourext/errors.hpp"
#include "fourext/fourier.hpp"

namespace fourext {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kGrowthCap = 644.0;  // ln(1e280): cap on n ln(2R/r)

bool finite(const cplx& z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }
}  // namespace

RaySampling::RaySampling(double r, std::vector<Vec> directions, int nodes_per_ray,
                         std::vector<std::vector<cplx>> values,
                         std::function<cplx(const Vec&)> source)
    : r_(r),
      directions_(std::move(directions)),
      nodes_(nodes_per_ray),
      values_(std::move(values)),
      source_(std::move(source)) {
    if (!(r > 0.0)) throw Error("RaySampling: radius must be positive");
    if (nodes_ < 2) throw Error("RaySampling: need at least 2 nodes per ray");
    if (directions_.empty() || values_.size() != directions_.size())
        throw Error("RaySampling: one value list per direction required");
    for (const Vec& th : directions_)
        if (std::abs(th.norm() - 1.0) > 1e-12)
            throw Error("RaySampling: directions must be unit vectors");
    for (const auto& ray : values_) {
        if (static_cast<int>(ray.size()) != nodes_)
            throw Error("RaySampling: ray length mismatch");
        for (const cplx& v : ray)
            if (!finite(v)) throw Error("RaySampling: non-finite sample");
    }
}

std::vector<Vec> default_directions(int dim) {
    if (dim == 1) return default_directions(1, 1, 1);
    if (dim == 2) return default_directions(2, 64, 1);
    return default_directions(3, 32, 16);
}

std::vector<Vec> default_directions(int dim, int count_azimuth, int count_polar) {
    std::vector<Vec> dirs;
    if (dim == 1) {
        dirs.push_back(Vec::of(1.0));
    } else if (dim == 2) {
        for (int j = 0; j < count_azimuth; ++j) {
            const double a = kPi * j / count_azimuth;  // half circle
            dirs.push_back(Vec::of(std::cos(a), std::sin(a)));
        }
    } else {
        for (int b = 0; b < count_polar; ++b) {
            const double cg = (b + 0.5) / count_polar;  // upper hemisphere
            const double sg = std::sqrt(1.0 - cg * cg);
            for (int a = 0; a < count_azimuth; ++a) {
                const double phi = 2.0 * kPi * a / count_azimuth;
                dirs.push_back(Vec::of(sg * std::cos(phi), sg * std::sin(phi), cg));
            }
        }
    }
    return dirs;
}

RaySampling sample_rays(const std::function<cplx(const Vec&)>& w, double r,
                        const std::vector<Vec>& directions, int nodes_per_ray) {
    const std::vector<double> t = chebyshev_nodes(nodes_per_ray);
    std::vector<std::vector<cplx>> values(directions.size());
    for (std::size_t j = 0; j < directions.size(); ++j) {
        values[j].resize(nodes_per_ray);
        for (int i = 0; i < nodes_per_ray; ++i)
            values[j][i] = w(directions[j].scaled(r * t[i]));
    }
    return RaySampling(r, directions, nodes_per_ray, std::move(values), w);
}

StabilityParams::StabilityParams(double big_n, double sigma, double nu, double r, double delta)
    : big_n(big_n), sigma(sigma), nu(nu), r(r), delta(delta) {
    if (!(big_n > 0.0)) throw Error("StabilityParams: N must be positive");
    if (!(sigma > 0.0)) throw Error("StabilityParams: sigma must be positive");
    if (!(nu >= 1.0)) throw Error("StabilityParams: nu must be >= 1");
    if (!(r > 0.0)) throw Error("StabilityParams: r must be positive");
    if (!(delta > 0.0 && delta < big_n))
        throw Error("StabilityParams: need 0 < delta < N");
}

double tau_for_alpha(double alpha, double nu) {
    if (!(alpha >= 0.0 && alpha <= 1.0)) throw Error("tau_for_alpha: alpha must be in [0, 1]");
    if (!(nu >= 1.0)) throw Error("tau_for_alpha: nu must be >= 1");
    return 1.0 - std::sqrt(1.0 - (1.0 - alpha) / nu);
}

double alpha_for_tau(double tau, double nu) {
    if (!(tau >= 0.0 && tau <= 1.0)) throw Error("alpha_for_tau: tau must be in [0, 1]");
    if (!(nu >= 1.0)) throw Error("alpha_for_tau: nu must be >= 1");
    return 1.0 - nu * tau * (2.0 - tau);
}

TauSchedule make_schedule(const StabilityParams& sp, double tau) {
    if (!(tau >= 0.0 && tau <= 1.0)) throw Error("make_schedule: tau must be in [0, 1]");
    const double log_ratio = std::log(sp.big_n / sp.delta);
    const double big_l =
        std::max(1.0, 0.5 * std::pow((1.0 - tau) * log_ratio / (sp.sigma * std::pow(sp.r, sp.nu)),
                                     tau));
    int n = 0;
    if (tau > 0.0) {
        const double denom = std::log(2.0) + std::log(2.0 * big_l) / (tau * sp.nu);
        n = static_cast<int>(std::ceil((2.0 - tau) * log_ratio / denom));
    }
    return TauSchedule{tau, alpha_for_tau(tau, sp.nu), big_l, sp.r * big_l, n};
}

ChebSeries ray_coefficients(const RaySampling& rs, int theta_index, int n) {
    if (theta_index < 0 || theta_index >= rs.direction_count())
        throw Error("ray_coefficients: direction index out of range");
    return chebyshev_coefficients(rs.values(theta_index), n);
}

BallField extrapolate(const RaySampling& rs, double big_r, int n) {
    const double r = rs.r();
    if (!(big_r >= r)) throw Error("extrapolate: R must be >= r");
    if (n < 0) throw Error("extrapolate: n must be >= 0");
    if (n > rs.nodes_per_ray())
        throw InsufficientNodes("extrapolate: n exceeds nodes per ray");
    if (n * std::log(2.0 * big_r / r) > kGrowthCap)
        throw RangeExceeded("extrapolate: (2R/r)^n exceeds 1e280; reduce n or R");

    std::vector<ChebSeries> annulus(rs.direction_count());
    for (int j = 0; j < rs.direction_count(); ++j) annulus[j] = ray_coefficients(rs, j, n);

    std::function<cplx(const Vec&)> inner;
    if (rs.source()) {
        inner = rs.source();  // closed-form data evaluates exactly on B_r
    } else {
        // Full-order interpolant per ray (exact at the sampled nodes),
        // nearest direction off the measured grid.
        std::vector<ChebSeries> full(rs.direction_count());
        for (int j = 0; j < rs.direction_count(); ++j)
            full[j] = ray_coefficients(rs, j, rs.nodes_per_ray());
        std::vector<Vec> dirs = rs.directions();
        inner = [full = std::move(full), dirs = std::move(dirs), r](const Vec& xi) {
            const double mag = xi.norm();
            if (mag == 0.0) return full[0](0.0);
            const Vec theta{xi.dim, {xi.c[0] / mag, xi.c[1] / mag, xi.c[2] / mag}};
            int best = 0;
            double best_dot = -1.0;
            for (std::size_t j = 0; j < dirs.size(); ++j) {
                const double a = std::abs(dot(theta, dirs[j]));
                if (a > best_dot) {
                    best_dot = a;
                    best = static_cast<int>(j);
                }
            }
            const double s = dot(theta, dirs[best]) >= 0.0 ? mag : -mag;
            return full[best](s / r);
        };
    }
    return BallField(std::move(inner), rs.directions(), std::move(annulus), r, big_r);
}

cplx reconstruct(const StabilityParams& sp, double tau, const RaySampling& rs,
                 const QuadratureSpec& spec, const Vec& x) {
    if (std::abs(rs.r() - sp.r) > 1e-12 * std::max(1.0, sp.r))
        throw Error("reconstruct: sampling radius differs from the stability radius");
    const TauSchedule sched = make_schedule(sp, tau);
    const BallField field = extrapolate(rs, sched.big_r, sched.n);
    return inverse_ft_ball(field, x, spec);
}

}  // namespace fourext
