#ifndef FOUREXT_BALL_FIELD_HPP
#define FOUREXT_BALL_FIELD_HPP

#include <functional>
#include <vector>

#include "fourext/chebyshev.hpp"
#include "fourext/geometry.hpp"

namespace fourext {

/// A piecewise field on R^d: the data itself inside B_r, one truncated
/// Chebyshev sum in |xi|/r per measured direction on the annulus B_R \ B_r,
/// and exactly zero outside B_R.
///
/// Directions cover a half-sphere; the antipodal ray is evaluated through the
/// signed radial coordinate, which flips the sign of the odd-degree terms and
/// keeps the field single-valued on the annulus.
class BallField {
   public:
    /// The zero field (vanishes everywhere; R = r = 0).
    BallField() = default;

    BallField(std::function<cplx(const Vec&)> inner, std::vector<Vec> directions,
              std::vector<ChebSeries> annulus_series, double r, double R);

    cplx operator()(const Vec& xi) const;

    double inner_radius() const { return r_; }
    double outer_radius() const { return big_r_; }
    int term_count() const;
    int direction_count() const { return static_cast<int>(directions_.size()); }
    const std::vector<Vec>& directions() const { return directions_; }
    const ChebSeries& series(int j) const { return annulus_series_[j]; }

    /// Index of the direction best aligned with theta (largest |dot|).
    int nearest_direction(const Vec& theta) const;

   private:
    std::function<cplx(const Vec&)> inner_;
    std::vector<Vec> directions_;
    std::vector<ChebSeries> annulus_series_;
    double r_ = 0.0;
    double big_r_ = 0.0;
};

}  // namespace fourext

#endif
