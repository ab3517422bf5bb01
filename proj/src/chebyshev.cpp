#include "fourext/chebyshev.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "fourext/errors.hpp"

namespace fourext {

namespace {
constexpr double kGuard = 1e290;  // magnitude at which recurrences bail out

bool finite(const cplx& z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }
}  // namespace

ChebSeries::ChebSeries(std::vector<cplx> coeffs) : coeffs_(std::move(coeffs)) {
    for (const cplx& c : coeffs_)
        if (!finite(c)) throw RangeExceeded("ChebSeries: non-finite coefficient");
}

cplx ChebSeries::operator()(double t) const {
    if (coeffs_.empty()) return 0.0;
    // Clenshaw: u_k = 2 t u_{k+1} - u_{k+2} + b_k, result = t u_1 - u_2 + b_0.
    cplx u1 = 0.0, u2 = 0.0;
    for (int k = size() - 1; k >= 1; --k) {
        cplx u = 2.0 * t * u1 - u2 + coeffs_[k];
        if (std::abs(u.real()) > kGuard || std::abs(u.imag()) > kGuard)
            throw RangeExceeded("ChebSeries: evaluation overflow at t=" + std::to_string(t));
        u2 = u1;
        u1 = u;
    }
    return t * u1 - u2 + coeffs_[0];
}

ChebSeries ChebSeries::truncated(int n) const {
    if (n < 0) n = 0;
    if (n >= size()) return *this;
    return ChebSeries(std::vector<cplx>(coeffs_.begin(), coeffs_.begin() + n));
}

double chebyshev_t(int k, double t) {
    if (k < 0) throw RangeExceeded("chebyshev_t: negative degree");
    if (!std::isfinite(t)) throw RangeExceeded("chebyshev_t: non-finite argument");
    if (k == 0) return 1.0;
    double prev = 1.0, cur = t;
    for (int j = 1; j < k; ++j) {
        double next = 2.0 * t * cur - prev;
        if (std::abs(next) > kGuard)
            throw RangeExceeded("chebyshev_t: overflow at k=" + std::to_string(j + 1) +
                                ", t=" + std::to_string(t));
        prev = cur;
        cur = next;
    }
    return cur;
}

std::vector<double> chebyshev_angles(int m) {
    std::vector<double> phi(m);
    for (int i = 0; i < m; ++i) phi[i] = (2 * i + 1) * std::numbers::pi / (2.0 * m);
    return phi;
}

std::vector<double> chebyshev_nodes(int m) {
    std::vector<double> t(m);
    for (int i = 0; i < m; ++i) t[i] = std::cos((2 * i + 1) * std::numbers::pi / (2.0 * m));
    return t;
}

ChebSeries chebyshev_coefficients(std::span<const cplx> samples, int n) {
    const int m = static_cast<int>(samples.size());
    if (m < n)
        throw InsufficientNodes("chebyshev_coefficients: " + std::to_string(m) +
                                " nodes for " + std::to_string(n) + " terms");
    for (const cplx& s : samples)
        if (!finite(s)) throw RangeExceeded("chebyshev_coefficients: non-finite sample");
    // Extended-precision accumulation: coefficients far below the working
    // precision would otherwise come out as cancellation noise, and the
    // annulus polynomials amplify that noise by (2R/r)^k.
    std::vector<cplx> b(static_cast<std::size_t>(std::max(n, 0)));
    constexpr long double pi_l = 3.141592653589793238462643383279502884L;
    for (int k = 0; k < n; ++k) {
        long double re = 0.0L, im = 0.0L;
        for (int i = 0; i < m; ++i) {
            const long double phi = (2 * i + 1) * pi_l / (2 * m);
            const long double c = std::cos(k * phi);
            re += static_cast<long double>(samples[i].real()) * c;
            im += static_cast<long double>(samples[i].imag()) * c;
        }
        const long double scale = (k == 0 ? 1.0L : 2.0L) / m;
        b[k] = cplx(static_cast<double>(re * scale), static_cast<double>(im * scale));
    }
    return ChebSeries(std::move(b));
}

EllipseParams::EllipseParams(double rho, double rho_prime, double m_rho)
    : rho(rho), rho_prime(rho_prime), m_rho(m_rho) {
    if (!(rho > 2.0)) throw HypothesisViolated("EllipseParams: rho must be > 2");
    if (!(rho_prime >= 1.0 && rho_prime < rho / 2.0))
        throw HypothesisViolated("EllipseParams: rho' must lie in [1, rho/2)");
    if (!(m_rho > 0.0)) throw HypothesisViolated("EllipseParams: M_rho must be positive");
}

double truncation_tail_bound(const EllipseParams& ep, int n) {
    if (n < 0) throw HypothesisViolated("truncation_tail_bound: n must be >= 0");
    const double q = 2.0 * ep.rho_prime / ep.rho;  // < 1 by construction
    return 2.0 * ep.m_rho / (1.0 - q) * std::pow(q, n);
}

}  // namespace fourext
