#include "fourext/runner.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include "fourext/errors.hpp"
#include "fourext/extrapolation.hpp"

namespace fourext {

namespace {

std::string csv_escape(const std::string& field) {
    if (field.find_first_of(",\"\r\n") == std::string::npos) return field;
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += '"';  // RFC 4180: double the quote
        out += c;
    }
    out += "\"";
    return out;
}

TestFunction build_function(const CampaignConfig& cfg) {
    if (cfg.function_name == "gaussian") return make_gaussian(cfg.dim);
    if (cfg.function_name == "instability") {
        Vec k{cfg.dim, {cfg.k_mag, 0.0, 0.0}};
        return make_instability(cfg.dim, k, cfg.inst_m, cfg.inst_eps);
    }
    return make_bump(cfg.dim, cfg.bump_support, cfg.bump_height);
}

NoiseModel build_noise(const CampaignConfig& cfg) {
    NoiseModel nm;
    nm.kind = cfg.noise_kind == "none"           ? NoiseModel::Kind::None
              : cfg.noise_kind == "cosine-phase" ? NoiseModel::Kind::CosinePhase
                                                 : NoiseModel::Kind::UniformRandom;
    if (cfg.noise_q) nm.q = Vec{cfg.dim, {*cfg.noise_q, 0.0, 0.0}};
    nm.phase = cfg.noise_phase;
    nm.seed = cfg.noise_seed;
    return nm;
}

}  // namespace

void write_records_csv(const std::string& path, const std::vector<ExperimentRecord>& records) {
    std::set<std::string> in_keys, meas_keys, bound_keys, pass_keys;
    for (const auto& rec : records) {
        for (const auto& [k, v] : rec.inputs) in_keys.insert(k);
        for (const auto& [k, v] : rec.measured) meas_keys.insert(k);
        for (const auto& [k, v] : rec.bounds) bound_keys.insert(k);
        for (const auto& [k, v] : rec.passed) pass_keys.insert(k);
    }

    std::ofstream out(path, std::ios::binary);  // binary: one byte layout everywhere
    if (!out) throw IoError("cannot write " + path);

    out << "experiment_id";
    for (const auto& k : in_keys) out << "," << csv_escape(k);
    for (const auto& k : meas_keys) out << "," << csv_escape("measured_" + k);
    for (const auto& k : bound_keys) out << "," << csv_escape("bound_" + k);
    for (const auto& k : pass_keys) out << "," << csv_escape("passed_" + k);
    out << ",runtime_ms,failure_note\r\n";

    for (const auto& rec : records) {
        out << csv_escape(rec.experiment_id);
        for (const auto& k : in_keys) {
            auto it = rec.inputs.find(k);
            out << "," << (it == rec.inputs.end() ? "" : csv_escape(it->second));
        }
        for (const auto& k : meas_keys) {
            auto it = rec.measured.find(k);
            out << "," << (it == rec.measured.end() ? "" : format_g17(it->second));
        }
        for (const auto& k : bound_keys) {
            auto it = rec.bounds.find(k);
            out << "," << (it == rec.bounds.end() ? "" : format_g17(it->second));
        }
        for (const auto& k : pass_keys) {
            auto it = rec.passed.find(k);
            out << "," << (it == rec.passed.end() ? "" : (it->second ? "true" : "false"));
        }
        out << "," << rec.runtime_ms << "," << csv_escape(rec.failure_note) << "\r\n";
    }
    if (!out) throw IoError("write failed: " + path);
}

std::string render_summary(const std::string& campaign,
                           const std::vector<ExperimentRecord>& records) {
    int comparisons = 0, passes = 0;
    double worst_ratio = 0.0;
    std::string worst_id;
    std::vector<std::string> notes;
    for (const auto& rec : records) {
        for (const auto& [name, ok] : rec.passed) {
            ++comparisons;
            if (ok) ++passes;
            auto m = rec.measured.find(name);
            auto b = rec.bounds.find(name);
            if (m != rec.measured.end() && b != rec.bounds.end() && b->second > 0.0) {
                const double ratio = m->second / b->second;
                if (ratio > worst_ratio) {
                    worst_ratio = ratio;
                    worst_id = rec.experiment_id + " (" + name + ")";
                }
            }
        }
        if (!rec.failure_note.empty())
            notes.push_back(rec.experiment_id + ": " + rec.failure_note);
    }

    std::ostringstream out;
    out << "campaign: " << campaign << "\n";
    out << "records: " << records.size() << "\n";
    out << "comparisons: " << comparisons << " (" << passes << " passed, "
        << (comparisons - passes) << " failed)\n";
    if (comparisons > 0) {
        out << "worst measured/bound ratio: " << format_g17(worst_ratio);
        if (!worst_id.empty()) out << " at " << worst_id;
        out << "\n";
    }
    if (!notes.empty()) {
        out << "notes:\n";
        for (const auto& n : notes) out << "  " << n << "\n";
    }
    return out.str();
}

int run_campaign(const CampaignConfig& cfg, bool quiet) {
    std::vector<ExperimentRecord> records;

    switch (cfg.kind) {
        case CampaignConfig::Kind::DeltaSweep:
        case CampaignConfig::Kind::DemoReconstruct: {
            const TestFunction tf = build_function(cfg);
            const double big_n = cfg.big_n.value_or(tf.decay.big_n);
            const double sigma = cfg.sigma.value_or(tf.decay.sigma);
            const double nu = cfg.nu.value_or(tf.decay.nu);
            for (double d : cfg.deltas)
                if (!(d < big_n)) throw ValidationError("delta < N required");

            std::vector<double> taus = cfg.taus;
            if (cfg.kind == CampaignConfig::Kind::DemoReconstruct) {
                taus.clear();
                for (double a : cfg.alphas) taus.push_back(tau_for_alpha(a, nu));
            }
            double probe = big_n / 2.0;
            for (double d : cfg.deltas) probe = std::min(probe, d);
            const StabilityParams sp(big_n, sigma, nu, cfg.r, probe);
            records = run_delta_sweep(tf, sp, taus, cfg.deltas, build_noise(cfg), cfg.quad,
                                      cfg.sobolev_s, cfg.kind_name);
            break;
        }
        case CampaignConfig::Kind::Instability:
            records = run_instability_sweep(cfg.dim, cfg.inst_m, cfg.inst_eps, cfg.ks, cfg.r,
                                            cfg.quad);
            break;
        case CampaignConfig::Kind::ExtrapolationGrid: {
            const TestFunction tf = build_function(cfg);
            records = run_extrapolation_grid(tf, cfg.r, cfg.grid_rs, cfg.grid_lambdas, cfg.grid_ns,
                                             cfg.grid_deltas, cfg.quad);
            break;
        }
        case CampaignConfig::Kind::Truncation:
            records = run_truncation_sweep(cfg.trunc_cs, cfg.trunc_rhos, cfg.trunc_n_max,
                                           cfg.trunc_grid);
            break;
    }

    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(cfg.output, ec);
    if (ec) throw IoError("cannot create output directory " + cfg.output + ": " + ec.message());

    const std::string csv_path = (fs::path(cfg.output) / "records.csv").string();
    write_records_csv(csv_path, records);

    const std::string summary = render_summary(cfg.kind_name, records);
    const std::string summary_path = (fs::path(cfg.output) / "summary.txt").string();
    {
        std::ofstream out(summary_path, std::ios::binary);
        if (!out) throw IoError("cannot write " + summary_path);
        out << summary;
        if (!out) throw IoError("write failed: " + summary_path);
    }
    if (!quiet) std::cout << summary;

    bool all_passed = true;
    for (const auto& rec : records)
        for (const auto& [name, ok] : rec.passed)
            if (!ok) all_passed = false;
    return all_passed ? 0 : 1;
}

}  // namespace fourext
