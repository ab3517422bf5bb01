#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "fourext/errors.hpp"
#include "fourext/runner.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Campaign runner: extrapolates band-limited Fourier data and "
                 "verifies the measured errors against their closed-form bounds"};

    std::string config_path;
    std::string output_override;
    bool quiet = false;
    app.add_option("--config", config_path, "campaign config file")->required();
    app.add_option("--output", output_override, "output directory (overrides the config)");
    app.add_flag("--quiet", quiet, "suppress the summary on stdout");

    CLI11_PARSE(app, argc, argv);

    try {
        fourext::CampaignConfig cfg = fourext::load_config(config_path);
        if (!output_override.empty()) cfg.output = output_override;
        return fourext::run_campaign(cfg, quiet);
    } catch (const fourext::ParseError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const fourext::ValidationError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const fourext::IoError& e) {
        std::cerr << "io error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
