#ifndef FOUREXT_EXTRAPOLATION_HPP
#define FOUREXT_EXTRAPOLATION_HPP

#include <functional>
#include <optional>
#include <vector>

#include "fourext/ball_field.hpp"
#include "fourext/chebyshev.hpp"
#include "fourext/geometry.hpp"

namespace fourext {

/// Data on B_r sampled along diameters: for each unit direction theta_j the
/// values w(t_i theta_j) at the Chebyshev radii t_i = r cos((2i+1)pi/(2M)),
/// which cover both halves of the diameter.
class RaySampling {
   public:
    RaySampling(double r, std::vector<Vec> directions, int nodes_per_ray,
                std::vector<std::vector<cplx>> values,
                std::function<cplx(const Vec&)> source = nullptr);

    double r() const { return r_; }
    int nodes_per_ray() const { return nodes_; }
    int direction_count() const { return static_cast<int>(directions_.size()); }
    const std::vector<Vec>& directions() const { return directions_; }
    const std::vector<cplx>& values(int j) const { return values_[j]; }
    /// The closed-form data function when the sampling came from one.
    const std::function<cplx(const Vec&)>& source() const { return source_; }

   private:
    double r_;
    std::vector<Vec> directions_;
    int nodes_;
    std::vector<std::vector<cplx>> values_;
    std::function<cplx(const Vec&)> source_;
};

/// Half-sphere direction grids: {e1} for d = 1, angles pi j / J for d = 2,
/// an azimuth x polar product grid on the upper hemisphere for d = 3.
std::vector<Vec> default_directions(int dim);
std::vector<Vec> default_directions(int dim, int count_azimuth, int count_polar);

/// Samples a closed-form data function on the default ray layout.
RaySampling sample_rays(const std::function<cplx(const Vec&)>& w, double r,
                        const std::vector<Vec>& directions, int nodes_per_ray);

/// Noise-model parameters of the measurement: data w with
/// sup_{B_r} |w - Fv| <= delta < N, plus the decay certificate of v.
struct StabilityParams {
    double big_n;
    double sigma;
    double nu;
    double r;
    double delta;

    StabilityParams(double big_n, double sigma, double nu, double r, double delta);
};

/// The derived parameter bundle for a given interpolation exponent tau:
/// scaled radius L, extrapolation radius R = r L, and term count n.
struct TauSchedule {
    double tau;
    double alpha;  // 1 - nu tau (2 - tau); may be negative past the threshold
    double big_l;  // L >= 1
    double big_r;  // R = r L
    int n;         // 0 when tau = 0
};

/// tau = 1 - sqrt(1 - (1 - alpha)/nu); inverse of alpha_for_tau on
/// [0, 1 - sqrt(1 - 1/nu)].
double tau_for_alpha(double alpha, double nu);

/// alpha = 1 - nu tau (2 - tau), returned as-is (negative past the threshold).
double alpha_for_tau(double tau, double nu);

/// Builds the schedule: L = max(1, ((1-tau) ln(N/delta) / (sigma r^nu))^tau / 2),
/// R = r L, and n = ceil((2-tau) ln(N/delta) / (ln 2 + ln(2L)/(tau nu))) for
/// tau > 0, else n = 0.
TauSchedule make_schedule(const StabilityParams& sp, double tau);

/// Chebyshev coefficients a_0..a_{n-1} of the data along diameter j, i.e. the
/// Gauss-Chebyshev discretisation of the weighted integrals over [-r, r].
ChebSeries ray_coefficients(const RaySampling& rs, int theta_index, int n);

/// The extrapolation operator: data inside B_r, the n-term Chebyshev sums on
/// the annulus, zero outside B_R. Throws RangeExceeded when (2R/r)^n would
/// exceed 1e280 (term growth makes larger n meaningless in doubles).
BallField extrapolate(const RaySampling& rs, double big_r, int n);

/// End-to-end reconstruction at x: inverse transform over B_R of the field
/// extrapolated with the schedule for (sp, tau).
cplx reconstruct(const StabilityParams& sp, double tau, const RaySampling& rs,
                 const QuadratureSpec& spec, const Vec& x);

}  // namespace fourext

#endif
