#include "fourext/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>

namespace fourext {

namespace {

GaussRule compute_gauss_legendre(int n) {
    // Newton iteration on P_n, seeded with the Chebyshev-angle estimate.
    GaussRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    const int half = (n + 1) / 2;
    for (int i = 0; i < half; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = 0.0;
            for (int j = 0; j < n; ++j) {
                double p2 = p1;
                p1 = p0;
                p0 = ((2 * j + 1) * x * p1 - j * p2) / (j + 1);
            }
            dp = n * (x * p0 - p1) / (x * x - 1.0);
            double dx = p0 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        rule.nodes[i] = -x;
        rule.nodes[n - 1 - i] = x;
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.weights[i] = w;
        rule.weights[n - 1 - i] = w;
    }
    return rule;
}

const GaussRule& rule16() { return gauss_legendre(16); }

}  // namespace

const GaussRule& gauss_legendre(int n) {
    if (n < 1) throw std::invalid_argument("gauss_legendre: n must be positive");
    static std::mutex mu;
    static std::map<int, GaussRule> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, compute_gauss_legendre(n)).first;
    return it->second;
}

double integrate(const std::function<double(double)>& f, double a, double b, int panels) {
    if (panels < 1) panels = 1;
    const GaussRule& gr = rule16();
    const double h = (b - a) / panels;
    double total = 0.0;
    for (int p = 0; p < panels; ++p) {
        const double lo = a + p * h;
        const double mid = lo + 0.5 * h;
        for (std::size_t q = 0; q < gr.nodes.size(); ++q)
            total += gr.weights[q] * f(mid + 0.5 * h * gr.nodes[q]);
    }
    return total * 0.5 * h;
}

cplx integrate_c(const std::function<cplx(double)>& f, double a, double b, int panels) {
    if (panels < 1) panels = 1;
    const GaussRule& gr = rule16();
    const double h = (b - a) / panels;
    cplx total = 0.0;
    for (int p = 0; p < panels; ++p) {
        const double lo = a + p * h;
        const double mid = lo + 0.5 * h;
        for (std::size_t q = 0; q < gr.nodes.size(); ++q)
            total += gr.weights[q] * f(mid + 0.5 * h * gr.nodes[q]);
    }
    return total * (0.5 * h);
}

double integrate_breaks(const std::function<double(double)>& f,
                        const std::vector<double>& breaks) {
    const GaussRule& gr = rule16();
    double total = 0.0;
    for (std::size_t p = 0; p + 1 < breaks.size(); ++p) {
        const double lo = breaks[p], hi = breaks[p + 1];
        if (!(hi > lo)) continue;
        const double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
        double panel = 0.0;
        for (std::size_t q = 0; q < gr.nodes.size(); ++q)
            panel += gr.weights[q] * f(mid + half * gr.nodes[q]);
        total += panel * half;
    }
    return total;
}

int panels_for(double length, double freq, int min_nodes) {
    // A 16-point panel resolves about 8 radians of phase to machine accuracy.
    const double width = 8.0 / std::max(1.0, freq);
    int panels = static_cast<int>(std::ceil(length / width));
    const int floor_panels = (min_nodes + 15) / 16;
    return std::max({panels, floor_panels, 1});
}

cplx integrate_periodic(const std::function<cplx(double)>& f, int nodes) {
    if (nodes < 4) nodes = 4;
    const double h = 2.0 * std::numbers::pi / nodes;
    cplx total = 0.0;
    for (int i = 0; i < nodes; ++i) total += f(i * h);
    return total * h;
}

double unit_sphere_area(int dim) {
    if (dim < 1) throw std::invalid_argument("unit_sphere_area: dim must be >= 1");
    const double d = static_cast<double>(dim);
    return d * std::pow(std::numbers::pi, 0.5 * d) / std::tgamma(0.5 * d + 1.0);
}

}  // namespace fourext
