#include "fourext/ball_field.hpp"

#include <cmath>
#include <stdexcept>

#include "fourext/errors.hpp"

namespace fourext {

BallField::BallField(std::function<cplx(const Vec&)> inner, std::vector<Vec> directions,
                     std::vector<ChebSeries> annulus_series, double r, double big_r)
    : inner_(std::move(inner)),
      directions_(std::move(directions)),
      annulus_series_(std::move(annulus_series)),
      r_(r),
      big_r_(big_r) {
    if (!(r > 0.0) || !(big_r >= r)) throw std::invalid_argument("BallField: need 0 < r <= R");
    if (directions_.size() != annulus_series_.size())
        throw std::invalid_argument("BallField: one series per direction required");
    if (directions_.empty()) throw std::invalid_argument("BallField: no directions");
    for (const Vec& th : directions_)
        if (std::abs(th.norm() - 1.0) > 1e-12)
            throw std::invalid_argument("BallField: directions must be unit vectors");
}

int BallField::term_count() const {
    return annulus_series_.empty() ? 0 : annulus_series_.front().size();
}

int BallField::nearest_direction(const Vec& theta) const {
    int best = 0;
    double best_dot = -1.0;
    for (std::size_t j = 0; j < directions_.size(); ++j) {
        const double a = std::abs(dot(theta, directions_[j]));
        if (a > best_dot) {
            best_dot = a;
            best = static_cast<int>(j);
        }
    }
    return best;
}

cplx BallField::operator()(const Vec& xi) const {
    const double mag = xi.norm();
    if (mag >= big_r_ || big_r_ == 0.0) return 0.0;  // zero outside B_R, exactly
    if (mag < r_) return inner_ ? inner_(xi) : cplx(0.0);
    if (mag == 0.0) return annulus_series_.empty() ? cplx(0.0) : annulus_series_[0](0.0);
    const Vec theta{xi.dim, {xi.c[0] / mag, xi.c[1] / mag, xi.c[2] / mag}};
    const int j = nearest_direction(theta);
    // Signed radial coordinate along the stored direction: the parity of the
    // Chebyshev terms makes the antipodal ray come out right automatically.
    const double s = dot(theta, directions_[j]) >= 0.0 ? mag : -mag;
    return annulus_series_[j](s / r_);
}

}  // namespace fourext
