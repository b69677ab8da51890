#include "vsp/cli.hpp"

#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "vsp/errors.hpp"
#include "vsp/gs_controller.hpp"
#include "vsp/sim.hpp"
#include "vsp/synthesis.hpp"

namespace vsp::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

void write_file_atomic(const fs::path& path, const std::string& content) {
    fs::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error("cannot open " + tmp.string() + " for writing");
        out << content;
        out.flush();
        if (!out) throw Error("short write to " + tmp.string());
    }
    std::error_code ec;
    fs::rename(tmp, path, ec);
    if (ec) throw Error("cannot move " + tmp.string() + " into place: " + ec.message());
}

fs::path ensure_out_dir(const config::RunConfig& cfg) {
    fs::path dir(cfg.output_dir);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw Error("cannot create output directory " + dir.string() + ": " + ec.message());
    return dir;
}

std::string g15(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.15g", v);
    return buf;
}

std::vector<synth::SubcontrollerRealization> synth_bank(const config::RunConfig& cfg) {
    return synth::synthesize_all(cfg.measured_params, config::synthesis_config(cfg));
}

sim::SimulationLog simulate_mode(const config::RunConfig& cfg, sched::Mode mode,
                                 const std::vector<synth::SubcontrollerRealization>& bank) {
    const auto ctrl = gs::GsController::build(bank, cfg.schedule, mode);
    return sim::run_closed_loop(cfg.sim, cfg.true_params, ctrl, cfg.trajectory,
                                config::synthesis_config(cfg).Kp);
}

std::string signals_csv(
    const std::vector<std::pair<std::string, const signals::SampledSignal*>>& groups) {
    std::ostringstream os;
    signals::write_signals_csv(os, groups);
    return os.str();
}

std::vector<double> mode_alphas(const config::RunConfig& cfg, sched::Mode mode) {
    switch (mode) {
        case sched::Mode::matrix:
            return cfg.schedule.alpha;
        case sched::Mode::scalar:
            return {1.0, 1.0, 1.0};
        case sched::Mode::unscheduled:
            return {1.0};
    }
    throw InvalidInputError("mode_alphas: unknown mode");
}

}  // namespace

void cmd_synthesize(const config::RunConfig& cfg) {
    const fs::path dir = ensure_out_dir(cfg);
    const auto bank = synth_bank(cfg);
    write_file_atomic(dir / "model.json",
                      synth::realizations_to_json(bank, config::synthesis_config(cfg)));
    for (const auto& r : bank)
        std::cout << "subcontroller at theta2 = " << g15(r.linearization_angle_deg)
                  << " deg: delta_i = " << g15(r.delta_i) << ", eps_i = " << g15(r.eps_i)
                  << "\n";
    std::cout << "wrote " << (dir / "model.json").string() << "\n";
}

void cmd_simulate(const config::RunConfig& cfg, sched::Mode mode) {
    const fs::path dir = ensure_out_dir(cfg);
    const auto bank = synth_bank(cfg);
    const auto log = simulate_mode(cfg, mode, bank);
    const auto m = sim::rms_metrics(log);
    const std::string tag = sched::to_string(mode);

    std::vector<std::pair<std::string, const signals::SampledSignal*>> groups = {
        {"q", &log.q},          {"qd", &log.qd}, {"theta_d", &log.theta_d},
        {"theta_d_dot", &log.theta_d_dot},       {"e", &log.e},
        {"edot", &log.edot},    {"u", &log.u},   {"u_c", &log.u_c},
        {"y_c", &log.y_c}};
    for (std::size_t i = 0; i < log.u_i.size(); ++i)
        groups.emplace_back("u_sub" + std::to_string(i + 1), &log.u_i[i]);
    for (std::size_t i = 0; i < log.y_i.size(); ++i)
        groups.emplace_back("y_sub" + std::to_string(i + 1), &log.y_i[i]);
    write_file_atomic(dir / ("log_" + tag + ".csv"), signals_csv(groups));

    write_file_atomic(dir / ("plot_tracking_" + tag + ".csv"),
                      signals_csv({{"theta_d", &log.theta_d}, {"q", &log.q}}));
    write_file_atomic(dir / ("plot_errors_" + tag + ".csv"),
                      signals_csv({{"e", &log.e}, {"edot", &log.edot}}));
    write_file_atomic(dir / ("plot_torques_" + tag + ".csv"),
                      signals_csv({{"u", &log.u}, {"y_c", &log.y_c}}));

    json mj;
    mj["mode"] = tag;
    mj["rms_e_deg"] = {m.rms_e_deg[0], m.rms_e_deg[1]};
    mj["rms_edot_degps"] = {m.rms_edot_degps[0], m.rms_edot_degps[1]};
    write_file_atomic(dir / ("metrics_" + tag + ".json"), mj.dump(2) + "\n");

    std::cout << "mode " << tag << ": rms e (deg) = [" << g15(m.rms_e_deg[0]) << ", "
              << g15(m.rms_e_deg[1]) << "], rms edot (deg/s) = [" << g15(m.rms_edot_degps[0])
              << ", " << g15(m.rms_edot_degps[1]) << "]\n";
    std::cout << "wrote " << (dir / ("log_" + tag + ".csv")).string() << " and friends\n";
}

void cmd_compare(const config::RunConfig& cfg) {
    const fs::path dir = ensure_out_dir(cfg);
    const auto bank = synth_bank(cfg);
    struct Row {
        std::string name;
        sim::Metrics m;
    };
    std::vector<Row> rows;
    for (const auto mode :
         {sched::Mode::unscheduled, sched::Mode::scalar, sched::Mode::matrix})
        rows.push_back(
            {sched::to_string(mode), sim::rms_metrics(simulate_mode(cfg, mode, bank))});

    const auto col = [](const sim::Metrics& m, int c) {
        return c < 2 ? m.rms_e_deg[c] : m.rms_edot_degps[c - 2];
    };
    std::ostringstream os;
    os << "mode,e1,e2,edot1,edot2\n";
    for (const auto& r : rows) {
        os << r.name;
        for (int c = 0; c < 4; ++c) os << ',' << g15(col(r.m, c));
        os << "\n";
    }
    static const char* kCols[] = {"e1", "e2", "edot1", "edot2"};
    os << "# ordering matrix<scalar<unscheduled:";
    for (int c = 0; c < 4; ++c) {
        const bool ok =
            col(rows[2].m, c) < col(rows[1].m, c) && col(rows[1].m, c) < col(rows[0].m, c);
        os << ' ' << kCols[c] << '=' << (ok ? "yes" : "no");
    }
    os << "\n";
    write_file_atomic(dir / "table4.csv", os.str());
    std::cout << os.str();
    std::cout << "wrote " << (dir / "table4.csv").string() << "\n";
}

void cmd_audit(const config::RunConfig& cfg, sched::Mode mode) {
    const fs::path dir = ensure_out_dir(cfg);
    const auto bank = synth_bank(cfg);
    const auto ctrl = gs::GsController::build(bank, cfg.schedule, mode);
    const auto grid = sched::make_grid(0.0, cfg.sim.horizon, cfg.activity_grid_step);
    const auto report = sched::classify_activity(cfg.schedule, grid, mode);
    std::vector<sched::SubIndices> sub;
    for (const auto& r : ctrl.realizations) sub.push_back({0.0, r.delta_i, r.eps_i});
    const auto idx = sched::compose_indices(sub, report, mode_alphas(cfg, mode));
    const auto log = simulate_mode(cfg, mode, bank);
    const auto rep = sim::passivity_audit(log, idx);
    const std::string tag = sched::to_string(mode);

    json aj;
    aj["mode"] = tag;
    aj["indices"] = {{"beta_hat", idx.beta_hat},
                     {"delta_hat", idx.delta_hat},
                     {"beta_bar", idx.beta_bar},
                     {"eps_bar", idx.eps_bar},
                     {"nu_inf", idx.nu_inf},
                     {"sigma_psi_bar", idx.sigma_psi_bar},
                     {"combined_beta", idx.combined_beta()},
                     {"combined_delta", idx.combined_delta()},
                     {"combined_eps", idx.combined_eps()}};
    json subs = json::array();
    for (const auto& r : ctrl.realizations)
        subs.push_back({{"linearization_angle_deg", r.linearization_angle_deg},
                        {"delta_i", r.delta_i},
                        {"eps_i", r.eps_i}});
    aj["subcontrollers"] = subs;
    aj["activity"] = {{"grid_step", cfg.activity_grid_step},
                      {"grid_points", report.grid.size()},
                      {"strongly_active_everywhere", true}};
    json margins = json::array();
    for (const auto& row : rep.rows)
        margins.push_back({{"T", row.T},
                           {"inner_uy", row.inner_uy},
                           {"margin", row.margin},
                           {"slack", row.slack},
                           {"pass", row.pass}});
    aj["margins"] = margins;
    aj["min_margin"] = rep.min_margin;
    aj["pass"] = rep.pass;
    write_file_atomic(dir / ("audit_" + tag + ".json"), aj.dump(2) + "\n");

    std::cout << "mode " << tag << ": nu_inf = " << g15(idx.nu_inf)
              << ", sigma_psi_bar = " << g15(idx.sigma_psi_bar)
              << ", delta_hat = " << g15(idx.delta_hat) << ", eps_bar = " << g15(idx.eps_bar)
              << "\n";
    std::cout << "empirical margins over 50 horizons: min = " << g15(rep.min_margin) << " ("
              << (rep.pass ? "pass" : "FAIL") << ")\n";
    std::cout << "wrote " << (dir / ("audit_" + tag + ".json")).string() << "\n";
    if (!rep.pass) {
        double first_t = -1.0;
        for (const auto& row : rep.rows)
            if (!row.pass) {
                first_t = row.T;
                break;
            }
        throw CertificationError("empirical passivity margin violated", first_t);
    }
}

}  // namespace vsp::cli
