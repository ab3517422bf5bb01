#include "fourext/config.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "fourext/errors.hpp"

namespace fourext {

namespace {

std::string trim(const std::string& s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

double parse_number(int line, const std::string& key, const std::string& text) {
    const std::string t = trim(text);
    char* end = nullptr;
    const double v = std::strtod(t.c_str(), &end);
    if (t.empty() || end != t.c_str() + t.size())
        throw ParseError(line, key, "expected a number, got '" + t + "'");
    return v;
}

long long parse_integer(int line, const std::string& key, const std::string& text) {
    const double v = parse_number(line, key, text);
    const long long i = static_cast<long long>(v);
    if (static_cast<double>(i) != v)
        throw ParseError(line, key, "expected an integer, got '" + trim(text) + "'");
    return i;
}

std::vector<double> parse_list(int line, const std::string& key, const std::string& text) {
    std::vector<double> out;
    if (trim(text).empty()) return out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(parse_number(line, key, item));
    return out;
}

std::vector<int> parse_int_list(int line, const std::string& key, const std::string& text) {
    std::vector<int> out;
    for (double v : parse_list(line, key, text)) {
        const int i = static_cast<int>(v);
        if (static_cast<double>(i) != v)
            throw ParseError(line, key, "expected integers in the list");
        out.push_back(i);
    }
    return out;
}

const std::map<std::string, std::set<std::string>> kSchema{
    {"campaign", {"kind", "output"}},
    {"function", {"name", "dim", "k", "m", "eps", "support", "height"}},
    {"stability", {"n", "sigma", "nu", "r", "tau", "taus", "delta", "deltas", "alpha", "alphas",
                   "sobolev_s"}},
    {"noise", {"kind", "q", "phase", "seed"}},
    {"quadrature", {"radial_nodes", "angular_nodes", "sup_grid", "sup_box"}},
    {"instability", {"ks", "m", "eps", "r"}},
    {"grid", {"rs", "lambdas", "ns", "deltas"}},
    {"truncation", {"cs", "rhos", "n_max", "grid_points"}},
};

}  // namespace

CampaignConfig parse_config(const std::string& text) {
    CampaignConfig cfg;
    cfg.taus = {0.1, 0.2};
    cfg.deltas = {1e-2, 1e-3, 1e-4, 1e-5, 1e-6, 1e-7, 1e-8, 1e-9, 1e-10};
    cfg.alphas = {0.25, 0.5};
    for (int n = 2; n <= 16; ++n) cfg.grid_ns.push_back(n);

    std::istringstream in(text);
    std::string raw;
    std::string section;
    int line_no = 0;
    bool kind_seen = false;

    while (std::getline(in, raw)) {
        ++line_no;
        std::string line = raw;
        const std::size_t hash = line.find_first_of("#;");
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;

        if (line.front() == '[') {
            if (line.back() != ']')
                throw ParseError(line_no, "", "unterminated section header '" + line + "'");
            section = trim(line.substr(1, line.size() - 2));
            if (kSchema.find(section) == kSchema.end())
                throw ParseError(line_no, "", "unknown section [" + section + "]");
            continue;
        }

        const std::size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw ParseError(line_no, "", "expected key = value, got '" + line + "'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (section.empty())
            throw ParseError(line_no, key, "key outside any section");
        if (kSchema.at(section).find(key) == kSchema.at(section).end())
            throw ParseError(line_no, key, "unknown key in [" + section + "]");

        if (section == "campaign") {
            if (key == "kind") {
                kind_seen = true;
                cfg.kind_name = value;
                if (value == "delta-sweep")
                    cfg.kind = CampaignConfig::Kind::DeltaSweep;
                else if (value == "instability")
                    cfg.kind = CampaignConfig::Kind::Instability;
                else if (value == "lemma51-grid")
                    cfg.kind = CampaignConfig::Kind::ExtrapolationGrid;
                else if (value == "cheb-truncation")
                    cfg.kind = CampaignConfig::Kind::Truncation;
                else if (value == "demo-reconstruct")
                    cfg.kind = CampaignConfig::Kind::DemoReconstruct;
                else
                    throw ValidationError("unknown campaign kind '" + value + "'");
            } else {
                cfg.output = value;
            }
        } else if (section == "function") {
            if (key == "name") {
                if (value != "gaussian" && value != "instability" && value != "bump")
                    throw ValidationError("unknown function '" + value + "'");
                cfg.function_name = value;
            } else if (key == "dim") {
                cfg.dim = static_cast<int>(parse_integer(line_no, key, value));
            } else if (key == "k") {
                cfg.k_mag = parse_number(line_no, key, value);
            } else if (key == "m") {
                cfg.inst_m = static_cast<int>(parse_integer(line_no, key, value));
            } else if (key == "eps") {
                cfg.inst_eps = parse_number(line_no, key, value);
            } else if (key == "support") {
                cfg.bump_support = parse_number(line_no, key, value);
            } else {
                cfg.bump_height = parse_number(line_no, key, value);
            }
        } else if (section == "stability") {
            if (key == "n")
                cfg.big_n = parse_number(line_no, key, value);
            else if (key == "sigma")
                cfg.sigma = parse_number(line_no, key, value);
            else if (key == "nu")
                cfg.nu = parse_number(line_no, key, value);
            else if (key == "r")
                cfg.r = parse_number(line_no, key, value);
            else if (key == "tau" || key == "taus")
                cfg.taus = parse_list(line_no, key, value);
            else if (key == "delta" || key == "deltas")
                cfg.deltas = parse_list(line_no, key, value);
            else if (key == "alpha" || key == "alphas")
                cfg.alphas = parse_list(line_no, key, value);
            else
                cfg.sobolev_s = parse_number(line_no, key, value);
        } else if (section == "noise") {
            if (key == "kind") {
                if (value != "none" && value != "cosine-phase" && value != "uniform-random")
                    throw ValidationError("unknown noise kind '" + value + "'");
                cfg.noise_kind = value;
            } else if (key == "q") {
                cfg.noise_q = parse_number(line_no, key, value);
            } else if (key == "phase") {
                cfg.noise_phase = parse_number(line_no, key, value);
            } else {
                cfg.noise_seed = static_cast<unsigned long long>(parse_integer(line_no, key, value));
            }
        } else if (section == "quadrature") {
            if (key == "radial_nodes")
                cfg.quad.radial_nodes = static_cast<int>(parse_integer(line_no, key, value));
            else if (key == "angular_nodes")
                cfg.quad.angular_nodes = static_cast<int>(parse_integer(line_no, key, value));
            else if (key == "sup_grid")
                cfg.quad.sup_grid = static_cast<int>(parse_integer(line_no, key, value));
            else
                cfg.quad.sup_box = parse_number(line_no, key, value);
        } else if (section == "instability") {
            if (key == "ks")
                cfg.ks = parse_list(line_no, key, value);
            else if (key == "m")
                cfg.inst_m = static_cast<int>(parse_integer(line_no, key, value));
            else if (key == "eps")
                cfg.inst_eps = parse_number(line_no, key, value);
            else
                cfg.r = parse_number(line_no, key, value);
        } else if (section == "grid") {
            if (key == "rs")
                cfg.grid_rs = parse_list(line_no, key, value);
            else if (key == "lambdas")
                cfg.grid_lambdas = parse_list(line_no, key, value);
            else if (key == "ns")
                cfg.grid_ns = parse_int_list(line_no, key, value);
            else
                cfg.grid_deltas = parse_list(line_no, key, value);
        } else {  // truncation
            if (key == "cs")
                cfg.trunc_cs = parse_list(line_no, key, value);
            else if (key == "rhos")
                cfg.trunc_rhos = parse_list(line_no, key, value);
            else if (key == "n_max")
                cfg.trunc_n_max = static_cast<int>(parse_integer(line_no, key, value));
            else
                cfg.trunc_grid = static_cast<int>(parse_integer(line_no, key, value));
        }
    }

    if (!kind_seen) throw ValidationError("missing [campaign] kind");

    // Downstream numeric constraints, re-checked while the source is known.
    if (cfg.dim < 1 || cfg.dim > 3) throw ValidationError("dim must be 1, 2 or 3");
    if (cfg.nu && !(*cfg.nu >= 1.0)) throw ValidationError("nu >= 1");
    if (cfg.sigma && !(*cfg.sigma > 0.0)) throw ValidationError("sigma > 0 required");
    if (cfg.big_n && !(*cfg.big_n > 0.0)) throw ValidationError("N > 0 required");
    if (!(cfg.r > 0.0)) throw ValidationError("r > 0 required");
    for (double tau : cfg.taus)
        if (!(tau >= 0.0 && tau <= 1.0)) throw ValidationError("tau must lie in [0, 1]");
    for (double a : cfg.alphas)
        if (!(a >= 0.0 && a <= 1.0)) throw ValidationError("alpha must lie in [0, 1]");
    for (double d : cfg.deltas) {
        if (!(d > 0.0)) throw ValidationError("delta > 0 required");
        if (cfg.big_n && !(d < *cfg.big_n)) throw ValidationError("delta < N required");
    }
    for (double d : cfg.grid_deltas)
        if (!(d > 0.0)) throw ValidationError("delta > 0 required");
    if (!cfg.quad.valid())
        throw ValidationError("quadrature counts must be >= 8 and sup_box > 0");
    if (cfg.function_name == "instability" && !(cfg.k_mag > 1.0))
        throw ValidationError("instability requires |k| > 1");
    if (!(cfg.inst_eps > 0.0)) throw ValidationError("eps > 0 required");
    if (cfg.inst_m < 1) throw ValidationError("m >= 1 required");
    if (!(cfg.bump_support > 0.0)) throw ValidationError("support > 0 required");
    for (double k : cfg.ks)
        if (!(k > 1.0 && k > cfg.r)) throw ValidationError("every k must exceed max(1, r)");
    for (int n : cfg.grid_ns)
        if (n < 0) throw ValidationError("grid ns must be >= 0");
    for (double rho : cfg.trunc_rhos)
        if (!(rho > 2.0)) throw ValidationError("rho > 2 required");
    if (cfg.trunc_n_max < 0) throw ValidationError("n_max >= 0 required");
    if (cfg.trunc_grid < 8) throw ValidationError("grid_points >= 8 required");
    if (cfg.noise_q && !(*cfg.noise_q > 0.0)) throw ValidationError("noise q > 0 required");

    return cfg;
}

CampaignConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot read config file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

}  // namespace fourext
