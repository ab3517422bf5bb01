// Acceptance suite: one pass/fail line per criterion, each with a pinned
// tolerance and a wall-clock budget. Exit status is zero only when every
// criterion holds.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "fourext/config.hpp"
#include "fourext/errors.hpp"
#include "fourext/experiments.hpp"
#include "fourext/extrapolation.hpp"
#include "fourext/fourier.hpp"
#include "fourext/runner.hpp"

#ifndef FOUREXT_CONFIG_DIR
#define FOUREXT_CONFIG_DIR "configs"
#endif

using namespace fourext;
namespace fs = std::filesystem;

namespace {

constexpr double kPi = std::numbers::pi;

struct Check {
    bool ok = true;
    std::string detail;

    void fail(const std::string& why) {
        ok = false;
        if (!detail.empty()) detail += "; ";
        detail += why;
    }
    void expect(bool cond, const std::string& why) {
        if (!cond) fail(why);
    }
};

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

double closed_form_t(int k, double t) {
    if (std::abs(t) <= 1.0) return std::cos(k * std::acos(t));
    const double mag = std::cosh(k * std::acosh(std::abs(t)));
    return (t < 0.0 && k % 2 == 1) ? -mag : mag;
}

Vec random_point(std::mt19937& eng, int dim, double box) {
    auto u = [&] { return box * (2.0 * (eng() >> 11) * 0x1p-53 - 1.0); };
    if (dim == 1) return Vec::of(u());
    if (dim == 2) return Vec::of(u(), u());
    return Vec::of(u(), u(), u());
}

// --- criterion 1: chebyshev correctness ------------------------------------
Check chebyshev_correctness() {
    Check c;
    for (int n = 1; n <= 24 && c.ok; ++n) {
        for (int j = 0; j < n; ++j) {
            std::vector<cplx> samples(64);
            const std::vector<double> nodes = chebyshev_nodes(64);
            for (int i = 0; i < 64; ++i) samples[i] = chebyshev_t(j, nodes[i]);
            const ChebSeries cs = chebyshev_coefficients(samples, n);
            for (int k = 0; k < n; ++k) {
                const double want = k == j ? 1.0 : 0.0;
                if (std::abs(cs.coeffs()[k] - want) > 1e-12) {
                    c.fail("round trip off at j=" + std::to_string(j) +
                           ", k=" + std::to_string(k));
                }
            }
        }
    }
    double worst = 0.0;
    for (int k = 0; k <= 60; ++k) {
        for (int i = 0; i <= 240; ++i) {
            const double t = -3.0 + 6.0 * i / 240.0;
            const double ref = closed_form_t(k, t);
            worst = std::max(worst,
                             std::abs(chebyshev_t(k, t) - ref) / (1.0 + std::abs(ref)));
        }
    }
    c.expect(worst <= 1e-10, "closed-form agreement worst rel err " + fmt(worst));
    for (int k = 0; k <= 40 && c.ok; ++k) {
        for (int i = 0; i <= 200; ++i) {
            const double t = -3.0 + 6.0 * i / 200.0;
            const double cap = std::abs(t) <= 1.0 ? 1.0 : std::pow(2.0 * std::abs(t), k);
            if (std::abs(chebyshev_t(k, t)) > cap * (1.0 + 1e-12))
                c.fail("growth bound broken at k=" + std::to_string(k) + ", t=" + fmt(t));
        }
    }
    c.detail = "worst closed-form rel err " + fmt(worst);
    return c;
}

// --- criterion 2: truncation tail bound suite -------------------------------
Check truncation_suite() {
    Check c;
    const auto records = run_truncation_sweep({1, 3, 10}, {3, 5}, 30, 2001);
    int n_pass = 0;
    double worst = 0.0;
    for (const auto& rec : records) {
        if (!rec.failure_note.empty()) c.fail(rec.experiment_id + ": " + rec.failure_note);
        for (const auto& [name, ok] : rec.passed) {
            if (!ok) c.fail(rec.experiment_id + " exceeded the bound");
            ++n_pass;
            worst = std::max(worst, rec.measured.at(name) / rec.bounds.at(name));
        }
    }
    c.detail = std::to_string(n_pass) + " comparisons, worst measured/bound " + fmt(worst);
    return c;
}

// --- criterion 3: transform oracle equivalence ------------------------------
Check oracle_equivalence() {
    Check c;
    std::mt19937 eng(321);
    QuadratureSpec spec;
    double worst = 0.0;
    for (int dim : {1, 2}) {
        spec.dim = dim;
        std::vector<TestFunction> catalog;
        catalog.push_back(make_gaussian(dim));
        catalog.push_back(
            make_instability(dim, dim == 1 ? Vec::of(4.0) : Vec::of(3.0, 1.0), 2, 0.7));
        catalog.push_back(make_bump(dim, 1.0, 1.0));
        for (const TestFunction& tf : catalog) {
            for (int i = 0; i < 20; ++i) {
                const Vec xi = random_point(eng, dim, 6.0);
                const cplx via_quad = quadrature_ft(tf, xi, spec);
                const cplx direct = tf.transform(xi);
                const double rel = std::abs(via_quad - direct) / (1.0 + std::abs(direct));
                worst = std::max(worst, rel);
                if (rel > 1e-8)
                    c.fail(tf.name + " d=" + std::to_string(dim) + " rel err " + fmt(rel));
            }
        }
    }
    c.detail = "worst rel deviation " + fmt(worst);
    return c;
}

// --- criterion 4: two-term window bound grid --------------------------------
Check window_grid() {
    Check c;
    const TestFunction g = make_gaussian(1);
    std::vector<int> ns;
    for (int n = 2; n <= 16; ++n) ns.push_back(n);
    QuadratureSpec spec;
    const auto records =
        run_extrapolation_grid(g, 1.0, {1.5, 2.0}, {4.0, 8.0}, ns, {1e-3, 1e-6}, spec);
    int n_pass = 0;
    double worst = 0.0;
    for (const auto& rec : records) {
        if (!rec.failure_note.empty()) c.fail(rec.experiment_id + ": " + rec.failure_note);
        for (const auto& [name, ok] : rec.passed) {
            if (!ok) c.fail(rec.experiment_id + " exceeded bound*1.02");
            ++n_pass;
            worst = std::max(worst, rec.measured.at(name) / rec.bounds.at(name));
        }
    }
    c.expect(n_pass == 120, "expected 120 comparisons, got " + std::to_string(n_pass));
    c.detail = std::to_string(n_pass) + " comparisons, worst measured/bound " + fmt(worst);
    return c;
}

// --- criterion 5: scheduled bound and its Holder rate ------------------------
Check holder_rate() {
    Check c;
    const TestFunction g = make_gaussian(1);
    const StabilityParams sp(g.decay.big_n, g.decay.sigma, g.decay.nu, 1.0, 1e-4);
    NoiseModel nm;
    nm.kind = NoiseModel::Kind::CosinePhase;
    QuadratureSpec spec;
    const std::vector<double> deltas{1e-2, 1e-3, 1e-4, 1e-5, 1e-6, 1e-7, 1e-8, 1e-9, 1e-10};

    for (double tau : {0.1, 0.2}) {
        const auto records = run_delta_sweep(g, sp, {tau}, deltas, nm, spec);
        std::vector<double> xs, ys;
        for (const auto& rec : records) {
            if (!rec.failure_note.empty()) c.fail(rec.experiment_id + ": " + rec.failure_note);
            if (!rec.passed.at("annulus_sup"))
                c.fail(rec.experiment_id + " exceeded bound*1.02");
            xs.push_back(std::log(std::strtod(rec.inputs.at("delta").c_str(), nullptr)));
            ys.push_back(std::log(rec.measured.at("annulus_sup")));
        }
        const double slope = fit_slope(xs, ys);
        const double alpha = alpha_for_tau(tau, g.decay.nu);
        c.expect(slope >= alpha - 0.05, "tau=" + fmt(tau) + " slope " + fmt(slope) +
                                            " below alpha-0.05=" + fmt(alpha - 0.05));
        if (c.ok)
            c.detail += (c.detail.empty() ? "" : ", ") + ("tau=" + fmt(tau) + " slope " +
                                                          fmt(slope) + " vs alpha " + fmt(alpha));
    }
    return c;
}

// --- criterion 6: end-to-end reconstruction bounds ---------------------------
Check reconstruction_bounds() {
    Check c;
    const TestFunction b = make_bump(1, 1.0, 1.0);
    const StabilityParams sp(b.decay.big_n, b.decay.sigma, b.decay.nu, 1.0, 1e-3);
    NoiseModel nm;
    nm.kind = NoiseModel::Kind::CosinePhase;
    QuadratureSpec spec;
    const std::vector<double> deltas{1e-2, 1e-3, 1e-4, 1e-5, 1e-6, 1e-7, 1e-8, 1e-9, 1e-10};
    std::vector<double> taus;
    for (double alpha : {0.25, 0.5}) taus.push_back(tau_for_alpha(alpha, b.decay.nu));

    const auto records = run_delta_sweep(b, sp, taus, deltas, nm, spec, 0.0);
    int n_pairs = 0;
    double worst = 0.0;
    for (const auto& rec : records) {
        if (!rec.failure_note.empty()) c.fail(rec.experiment_id + ": " + rec.failure_note);
        for (const char* name : {"recon_sup", "hs_error"}) {
            if (rec.passed.count(name) == 0) {
                c.fail(rec.experiment_id + " missing " + name);
                continue;
            }
            if (!rec.passed.at(name)) c.fail(rec.experiment_id + " " + name + " over bound*1.02");
            ++n_pairs;
            worst = std::max(worst, rec.measured.at(name) / rec.bounds.at(name));
        }
    }
    c.expect(n_pairs == 36, "expected 36 compared pairs, got " + std::to_string(n_pairs));
    c.detail = std::to_string(n_pairs) + " pairs, worst measured/bound " + fmt(worst);
    return c;
}

// --- criterion 7: instability family ----------------------------------------
Check instability_family() {
    Check c;
    QuadratureSpec spec;
    const std::vector<double> ks{4, 6, 8, 10, 12, 14};
    const auto records = run_instability_sweep(1, 2, 1.0, ks, 1.0, spec);
    for (std::size_t i = 0; i < ks.size(); ++i) {
        if (records[i].measured.at("linf_v") != 1.0 / (ks[i] * ks[i]))
            c.fail("sup norm not exactly |k|^-2 at k=" + fmt(ks[i]));
    }
    const double slope = records.front().measured.at("gauss_rate_slope");
    c.expect(std::abs(slope - 1.0) <= 0.02, "gaussian-rate slope " + fmt(slope));
    const auto& last = records.back();
    c.expect(last.passed.at("floor_to_linf_ratio"),
             "log-floor inequality failed at k=14");
    c.detail = "slope " + fmt(slope) + ", floor/||v|| at k=14: " +
               fmt(last.measured.at("floor_to_linf_ratio"));
    return c;
}

// --- criterion 8: schedule algebra -------------------------------------------
Check schedule_algebra() {
    Check c;
    for (double nu : {1.0, 1.5, 2.0, 4.0}) {
        for (int i = 0; i <= 10; ++i) {
            const double alpha = 0.1 * i;
            const double back = alpha_for_tau(tau_for_alpha(alpha, nu), nu);
            if (std::abs(back - alpha) > 1e-12)
                c.fail("map inversion off at alpha=" + fmt(alpha) + ", nu=" + fmt(nu));
        }
    }
    const StabilityParams sp1(1.0, 1.0, 1.0, 1.0, std::exp(-16.0));
    const TauSchedule s1 = make_schedule(sp1, 0.5);
    c.expect(std::abs(s1.big_l - std::numbers::sqrt2) <= 1e-12, "L != sqrt(2)");
    c.expect(s1.n == 9, "n != 9, got " + std::to_string(s1.n));
    const StabilityParams sp2(1.0, 1.0, 2.0, 1.0, std::exp(-16.0));
    const TauSchedule s2 = make_schedule(sp2, 0.25);
    c.expect(s2.big_l == 1.0 && s2.n == 14, "clamped schedule mismatch");
    c.detail = "inversion exact to 1e-12; worked schedules reproduced";
    return c;
}

// --- criterion 9: CLI determinism --------------------------------------------
Check cli_determinism() {
    Check c;
    const fs::path cfg_path = fs::path(FOUREXT_CONFIG_DIR) / "delta_sweep_default.ini";
    const fs::path base = fs::temp_directory_path() / "fourext_acceptance_cli";
    fs::remove_all(base);

    CampaignConfig cfg = load_config(cfg_path.string());
    cfg.output = (base / "run1").string();
    const int rc1 = run_campaign(cfg, true);
    cfg.output = (base / "run2").string();
    const int rc2 = run_campaign(cfg, true);
    c.expect(rc1 == 0 && rc2 == 0, "nonzero exit status");

    auto slurp = [](const fs::path& p) {
        std::ifstream in(p, std::ios::binary);
        std::ostringstream ss;
        ss << in.rdbuf();
        return ss.str();
    };
    const std::string a = slurp(base / "run1" / "records.csv");
    const std::string b = slurp(base / "run2" / "records.csv");
    c.expect(!a.empty() && a == b, "records.csv differs between runs");
    c.detail = "two runs, " + std::to_string(a.size()) + " bytes, byte-identical";
    fs::remove_all(base);
    return c;
}

}  // namespace

int main() {
    struct Criterion {
        int id;
        const char* label;
        double budget_s;
        std::function<Check()> run;
    };
    const std::vector<Criterion> criteria{
        {1, "Chebyshev correctness (round trip, closed forms, growth bound)", 1.0,
         chebyshev_correctness},
        {2, "truncation tail bound suite, zero slack", 5.0, truncation_suite},
        {3, "transform quadrature vs catalog closed forms, d in {1,2}", 10.0,
         oracle_equivalence},
        {4, "two-term window bound grid, slack 1.02", 30.0, window_grid},
        {5, "scheduled bound sweep and Holder rate", 60.0, holder_rate},
        {6, "end-to-end reconstruction bounds for the bump", 120.0, reconstruction_bounds},
        {7, "modulated-gaussian instability family", 10.0, instability_family},
        {8, "schedule algebra", 1.0, schedule_algebra},
        {9, "CLI determinism on the default sweep", 60.0, cli_determinism},
    };

    bool all_ok = true;
    for (const auto& cr : criteria) {
        const auto t0 = std::chrono::steady_clock::now();
        Check result;
        try {
            result = cr.run();
        } catch (const std::exception& e) {
            result.fail(std::string("exception: ") + e.what());
        }
        const double elapsed =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (elapsed > cr.budget_s)
            result.fail("runtime " + fmt(elapsed) + "s over budget " + fmt(cr.budget_s) + "s");
        all_ok = all_ok && result.ok;
        std::printf("%s criterion %d [%5.2fs]: %s%s%s\n", result.ok ? "PASS" : "FAIL", cr.id,
                    elapsed, cr.label, result.detail.empty() ? "" : " -- ",
                    result.detail.c_str());
        std::fflush(stdout);
    }
    return all_ok ? 0 : 1;
}
