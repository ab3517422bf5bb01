#ifndef FOUREXT_CONFIG_HPP
#define FOUREXT_CONFIG_HPP

#include <optional>
#include <string>
#include <vector>

#include "fourext/geometry.hpp"

namespace fourext {

/// A validated campaign description parsed from the sectioned key = value
/// config format. Unknown sections or keys are rejected with their line
/// number; numeric constraints of the downstream types are re-validated at
/// parse time where the values are already known.
struct CampaignConfig {
    enum class Kind { DeltaSweep, Instability, ExtrapolationGrid, Truncation, DemoReconstruct };

    Kind kind = Kind::DeltaSweep;
    std::string kind_name;  // the config token, e.g. "delta-sweep"
    std::string output = "out";

    // [function]
    std::string function_name = "gaussian";  // gaussian | instability | bump
    int dim = 1;
    double k_mag = 5.0;          // instability
    int inst_m = 2;              // instability
    double inst_eps = 1.0;       // instability
    double bump_support = 1.0;   // bump
    double bump_height = 1.0;    // bump

    // [stability]
    std::optional<double> big_n;  // default: function certificate
    std::optional<double> sigma;
    std::optional<double> nu;
    double r = 1.0;
    std::vector<double> taus;
    std::vector<double> deltas;
    std::vector<double> alphas;   // demo-reconstruct
    double sobolev_s = 0.0;

    // [noise]
    std::string noise_kind = "cosine-phase";  // none | cosine-phase | uniform-random
    std::optional<double> noise_q;
    double noise_phase = 0.78539816339744828;
    unsigned long long noise_seed = 1;

    // [quadrature]
    QuadratureSpec quad;

    // [instability]
    std::vector<double> ks{4, 6, 8, 10, 12, 14};

    // [grid]
    std::vector<double> grid_rs{1.5, 2.0};
    std::vector<double> grid_lambdas{4.0, 8.0};
    std::vector<int> grid_ns;
    std::vector<double> grid_deltas{1e-3, 1e-6};

    // [truncation]
    std::vector<double> trunc_cs{1, 3, 10};
    std::vector<double> trunc_rhos{3, 5};
    int trunc_n_max = 30;
    int trunc_grid = 2001;
};

/// Parses the config text. Throws ParseError (with line and key) on malformed
/// input or unknown keys, ValidationError on constraint violations.
CampaignConfig parse_config(const std::string& text);

/// Reads and parses a config file. Throws IoError when unreadable.
CampaignConfig load_config(const std::string& path);

}  // namespace fourext

#endif
