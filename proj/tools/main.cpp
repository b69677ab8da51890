#include <CLI11.hpp>

#include <iostream>
#include <string>

#include "vsp/cli.hpp"
#include "vsp/config.hpp"
#include "vsp/errors.hpp"

int main(int argc, char** argv) {
    CLI::App app{"gain-scheduled very-strictly-passive controller toolkit"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string config_path;
    std::string out_dir;
    std::string mode_str;
    double step = 0.0;
    double horizon = 0.0;
    app.add_option("-c,--config", config_path, "JSON run configuration file");
    app.add_option("-o,--out", out_dir, "output directory (overrides the config)");

    CLI::App* synthesize =
        app.add_subcommand("synthesize", "design and certify the subcontroller bank");
    CLI::App* simulate =
        app.add_subcommand("simulate", "closed-loop tracking run for one scheduling mode");
    simulate->add_option("-m,--mode", mode_str, "matrix, scalar or unscheduled")->required();
    simulate->add_option("--step", step, "integrator step in seconds (overrides the config)");
    simulate->add_option("--horizon", horizon, "run length in seconds (overrides the config)");
    CLI::App* compare =
        app.add_subcommand("compare", "RMS tracking-error table across all three modes");
    CLI::App* audit = app.add_subcommand(
        "audit", "compose passivity levels and check the empirical marginequality");
    audit->add_option("-m,--mode", mode_str, "matrix, scalar or unscheduled")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        vsp::config::RunConfig cfg = config_path.empty() ? vsp::config::default_config()
                                                         : vsp::config::load_file(config_path);
        if (!out_dir.empty()) cfg.output_dir = out_dir;
        if (step != 0.0) {
            if (step < 0.0) throw vsp::ConfigError("--step must be positive");
            cfg.sim.step = step;
        }
        if (horizon != 0.0) {
            if (horizon < 0.0) throw vsp::ConfigError("--horizon must be positive");
            cfg.sim.horizon = horizon;
        }
        vsp::config::validate(cfg);

        if (app.got_subcommand(synthesize)) {
            vsp::cli::cmd_synthesize(cfg);
        } else if (app.got_subcommand(simulate)) {
            vsp::cli::cmd_simulate(cfg, vsp::sched::mode_from_string(mode_str));
        } else if (app.got_subcommand(compare)) {
            vsp::cli::cmd_compare(cfg);
        } else if (app.got_subcommand(audit)) {
            vsp::cli::cmd_audit(cfg, vsp::sched::mode_from_string(mode_str));
        }
        return 0;
    } catch (const vsp::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const vsp::InvalidInputError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const vsp::SimulationError& e) {
        std::cerr << "simulation error: " << e.what() << "\n";
        return 3;
    } catch (const vsp::CertificationError& e) {
        std::cerr << "certification error: " << e.what();
        if (e.first_failing_time >= 0.0)
            std::cerr << " (first failing time " << e.first_failing_time << " s)";
        std::cerr << "\n";
        return 4;
    } catch (const vsp::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
