#include "vsp/config.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <sstream>

#include "vsp/errors.hpp"

namespace vsp::config {

using nlohmann::json;

namespace {

void require_keys(const json& j, const std::string& where,
                  std::initializer_list<const char*> allowed) {
    if (!j.is_object()) throw ConfigError(where + ": expected an object");
    for (auto it = j.begin(); it != j.end(); ++it) {
        bool known = false;
        for (const char* k : allowed)
            if (it.key() == k) {
                known = true;
                break;
            }
        if (!known) throw ConfigError(where + ": unknown key \"" + it.key() + "\"");
    }
}

const json* find(const json& j, const char* key) {
    auto it = j.find(key);
    return it == j.end() ? nullptr : &*it;
}

double get_num(const json& j, const std::string& where) {
    if (!j.is_number()) throw ConfigError(where + ": expected a number");
    const double v = j.get<double>();
    if (!std::isfinite(v)) throw ConfigError(where + ": expected a finite number");
    return v;
}

std::vector<double> get_num_array(const json& j, const std::string& where,
                                  std::size_t want = 0) {
    if (!j.is_array()) throw ConfigError(where + ": expected an array");
    std::vector<double> out;
    out.reserve(j.size());
    for (std::size_t i = 0; i < j.size(); ++i)
        out.push_back(get_num(j[i], where + "[" + std::to_string(i) + "]"));
    if (want != 0 && out.size() != want)
        throw ConfigError(where + ": expected " + std::to_string(want) + " entries, got " +
                          std::to_string(out.size()));
    return out;
}

Mat get_matrix(const json& j, const std::string& where, Eigen::Index rows, Eigen::Index cols) {
    if (!j.is_array() || static_cast<Eigen::Index>(j.size()) != rows)
        throw ConfigError(where + ": expected " + std::to_string(rows) + " rows");
    Mat m(rows, cols);
    for (Eigen::Index r = 0; r < rows; ++r) {
        const auto row = get_num_array(j[static_cast<std::size_t>(r)],
                                       where + "[" + std::to_string(r) + "]",
                                       static_cast<std::size_t>(cols));
        for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = row[static_cast<std::size_t>(c)];
    }
    return m;
}

json matrix_to_json(const Mat& m) {
    json rows = json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
        rows.push_back(row);
    }
    return rows;
}

void parse_link_params(const json& j, const std::string& where, dyn::RobotParams& p) {
    require_keys(j, where, {"L1", "L2", "m1", "m2"});
    if (const json* v = find(j, "L1")) p.L1 = get_num(*v, where + ".L1");
    if (const json* v = find(j, "L2")) p.L2 = get_num(*v, where + ".L2");
    if (const json* v = find(j, "m1")) p.m1 = get_num(*v, where + ".m1");
    if (const json* v = find(j, "m2")) p.m2 = get_num(*v, where + ".m2");
}

void check_positive(double v, const char* what) {
    if (!(v > 0.0)) throw ConfigError(std::string(what) + " must be positive");
}

}  // namespace

RunConfig default_config() { return {}; }

void validate(const RunConfig& cfg) {
    for (const auto* p : {&cfg.true_params, &cfg.measured_params}) {
        check_positive(p->L1, "robot link length L1");
        check_positive(p->L2, "robot link length L2");
        check_positive(p->m1, "robot mass m1");
        check_positive(p->m2, "robot mass m2");
        if (!std::isfinite(p->gravity)) throw ConfigError("robot gravity must be finite");
    }
    if (cfg.kp_diag.size() != 2) throw ConfigError("synthesis.kp_diag needs 2 entries");
    for (double v : cfg.kp_diag) check_positive(v, "synthesis.kp_diag entry");
    if (cfg.q_lqr_bryson.size() != 4) throw ConfigError("synthesis.q_lqr_bryson needs 4 entries");
    for (double v : cfg.q_lqr_bryson) check_positive(v, "synthesis.q_lqr_bryson entry");
    if (cfg.r_lqr_bryson.size() != 2) throw ConfigError("synthesis.r_lqr_bryson needs 2 entries");
    for (double v : cfg.r_lqr_bryson) check_positive(v, "synthesis.r_lqr_bryson entry");
    check_positive(cfg.feedthrough_delta, "synthesis.feedthrough_delta");
    if (cfg.linearization_angles_deg.size() != 3)
        throw ConfigError("synthesis.linearization_angles_deg needs 3 entries");
    for (double v : cfg.linearization_angles_deg)
        if (!std::isfinite(v))
            throw ConfigError("synthesis.linearization_angles_deg entries must be finite");
    if (cfg.q_lyap_kind == synth::QLyapKind::custom) {
        if (cfg.q_lyap_custom.rows() != 4 || cfg.q_lyap_custom.cols() != 4)
            throw ConfigError("synthesis.q_lyap custom matrix must be 4x4");
        if ((cfg.q_lyap_custom - cfg.q_lyap_custom.transpose()).cwiseAbs().maxCoeff() > 1e-12)
            throw ConfigError("synthesis.q_lyap custom matrix must be symmetric");
    }
    if (cfg.schedule.alpha.size() != 3) throw ConfigError("scheduling.alpha needs 3 entries");
    for (double v : cfg.schedule.alpha) check_positive(v, "scheduling.alpha entry");
    for (double v : {cfg.schedule.mu1, cfg.schedule.mix_nu1, cfg.schedule.mu2,
                     cfg.schedule.mix_nu2})
        if (!std::isfinite(v)) throw ConfigError("scheduling blend coefficients must be finite");
    check_positive(cfg.activity_grid_step, "scheduling.activity_grid_step");
    try {
        dyn::validate(cfg.trajectory);
    } catch (const Error& e) {
        throw ConfigError(std::string("trajectory: ") + e.what());
    }
    check_positive(cfg.sim.step, "sim.step");
    if (cfg.sim.horizon < cfg.sim.step) throw ConfigError("sim.horizon must be >= sim.step");
    if (cfg.output_dir.empty()) throw ConfigError("output_dir must be nonempty");
}

synth::SynthesisConfig synthesis_config(const RunConfig& cfg) {
    synth::SynthesisConfig s;
    s.Kp = Mat2::Zero();
    s.Kp(0, 0) = cfg.kp_diag[0];
    s.Kp(1, 1) = cfg.kp_diag[1];
    s.Q_lqr = Mat::Zero(4, 4);
    for (int i = 0; i < 4; ++i)
        s.Q_lqr(i, i) = 1.0 / (cfg.q_lqr_bryson[static_cast<std::size_t>(i)] *
                               cfg.q_lqr_bryson[static_cast<std::size_t>(i)]);
    s.R_lqr = Mat2::Zero();
    for (int i = 0; i < 2; ++i)
        s.R_lqr(i, i) = 1.0 / (cfg.r_lqr_bryson[static_cast<std::size_t>(i)] *
                               cfg.r_lqr_bryson[static_cast<std::size_t>(i)]);
    s.delta = cfg.feedthrough_delta;
    s.linearization_angles_deg = cfg.linearization_angles_deg;
    s.q_lyap_kind = cfg.q_lyap_kind;
    s.q_lyap_custom = cfg.q_lyap_custom;
    return s;
}

RunConfig from_json_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    require_keys(j, "config",
                 {"robot", "synthesis", "scheduling", "trajectory", "sim", "output_dir"});
    RunConfig cfg;
    if (const json* robot = find(j, "robot")) {
        require_keys(*robot, "robot", {"true", "measured", "gravity"});
        if (const json* v = find(*robot, "true")) parse_link_params(*v, "robot.true", cfg.true_params);
        if (const json* v = find(*robot, "measured"))
            parse_link_params(*v, "robot.measured", cfg.measured_params);
        if (const json* v = find(*robot, "gravity")) {
            const double g = get_num(*v, "robot.gravity");
            cfg.true_params.gravity = g;
            cfg.measured_params.gravity = g;
        }
    }
    if (const json* s = find(j, "synthesis")) {
        require_keys(*s, "synthesis",
                     {"kp_diag", "q_lqr_bryson", "r_lqr_bryson", "feedthrough_delta",
                      "linearization_angles_deg", "q_lyap"});
        if (const json* v = find(*s, "kp_diag"))
            cfg.kp_diag = get_num_array(*v, "synthesis.kp_diag", 2);
        if (const json* v = find(*s, "q_lqr_bryson"))
            cfg.q_lqr_bryson = get_num_array(*v, "synthesis.q_lqr_bryson", 4);
        if (const json* v = find(*s, "r_lqr_bryson"))
            cfg.r_lqr_bryson = get_num_array(*v, "synthesis.r_lqr_bryson", 2);
        if (const json* v = find(*s, "feedthrough_delta"))
            cfg.feedthrough_delta = get_num(*v, "synthesis.feedthrough_delta");
        if (const json* v = find(*s, "linearization_angles_deg"))
            cfg.linearization_angles_deg =
                get_num_array(*v, "synthesis.linearization_angles_deg", 3);
        if (const json* v = find(*s, "q_lyap")) {
            if (v->is_string()) {
                const std::string kind = v->get<std::string>();
                if (kind == "identity")
                    cfg.q_lyap_kind = synth::QLyapKind::identity;
                else if (kind == "lqr_cost")
                    cfg.q_lyap_kind = synth::QLyapKind::lqr_cost;
                else
                    throw ConfigError("synthesis.q_lyap: unknown kind \"" + kind + "\"");
            } else if (v->is_array()) {
                cfg.q_lyap_kind = synth::QLyapKind::custom;
                cfg.q_lyap_custom = get_matrix(*v, "synthesis.q_lyap", 4, 4);
            } else {
                throw ConfigError("synthesis.q_lyap: expected a kind string or a 4x4 matrix");
            }
        }
    }
    if (const json* s = find(j, "scheduling")) {
        require_keys(*s, "scheduling",
                     {"mode", "alpha", "mu1", "mix_nu1", "mu2", "mix_nu2",
                      "activity_grid_step"});
        if (const json* v = find(*s, "mode")) {
            if (!v->is_string()) throw ConfigError("scheduling.mode: expected a string");
            try {
                cfg.mode = sched::mode_from_string(v->get<std::string>());
            } catch (const Error& e) {
                throw ConfigError(std::string("scheduling.mode: ") + e.what());
            }
        }
        if (const json* v = find(*s, "alpha"))
            cfg.schedule.alpha = get_num_array(*v, "scheduling.alpha", 3);
        if (const json* v = find(*s, "mu1")) cfg.schedule.mu1 = get_num(*v, "scheduling.mu1");
        if (const json* v = find(*s, "mix_nu1"))
            cfg.schedule.mix_nu1 = get_num(*v, "scheduling.mix_nu1");
        if (const json* v = find(*s, "mu2")) cfg.schedule.mu2 = get_num(*v, "scheduling.mu2");
        if (const json* v = find(*s, "mix_nu2"))
            cfg.schedule.mix_nu2 = get_num(*v, "scheduling.mix_nu2");
        if (const json* v = find(*s, "activity_grid_step"))
            cfg.activity_grid_step = get_num(*v, "scheduling.activity_grid_step");
    }
    if (const json* t = find(j, "trajectory")) {
        require_keys(*t, "trajectory", {"knots"});
        if (const json* v = find(*t, "knots")) {
            if (!v->is_array() || v->empty())
                throw ConfigError("trajectory.knots: expected a nonempty array");
            cfg.trajectory.times.clear();
            cfg.trajectory.angles_deg.clear();
            for (std::size_t i = 0; i < v->size(); ++i) {
                const auto knot = get_num_array(
                    (*v)[i], "trajectory.knots[" + std::to_string(i) + "]", 3);
                cfg.trajectory.times.push_back(knot[0]);
                cfg.trajectory.angles_deg.push_back(Vec2(knot[1], knot[2]));
            }
        }
    }
    if (const json* s = find(j, "sim")) {
        require_keys(*s, "sim", {"step", "horizon"});
        if (const json* v = find(*s, "step")) cfg.sim.step = get_num(*v, "sim.step");
        if (const json* v = find(*s, "horizon")) cfg.sim.horizon = get_num(*v, "sim.horizon");
    }
    if (const json* v = find(j, "output_dir")) {
        if (!v->is_string()) throw ConfigError("output_dir: expected a string");
        cfg.output_dir = v->get<std::string>();
    }
    validate(cfg);
    return cfg;
}

std::string to_json_text(const RunConfig& cfg) {
    json j;
    j["robot"]["true"] = {{"L1", cfg.true_params.L1},
                          {"L2", cfg.true_params.L2},
                          {"m1", cfg.true_params.m1},
                          {"m2", cfg.true_params.m2}};
    j["robot"]["measured"] = {{"L1", cfg.measured_params.L1},
                              {"L2", cfg.measured_params.L2},
                              {"m1", cfg.measured_params.m1},
                              {"m2", cfg.measured_params.m2}};
    j["robot"]["gravity"] = cfg.true_params.gravity;
    j["synthesis"]["kp_diag"] = cfg.kp_diag;
    j["synthesis"]["q_lqr_bryson"] = cfg.q_lqr_bryson;
    j["synthesis"]["r_lqr_bryson"] = cfg.r_lqr_bryson;
    j["synthesis"]["feedthrough_delta"] = cfg.feedthrough_delta;
    j["synthesis"]["linearization_angles_deg"] = cfg.linearization_angles_deg;
    switch (cfg.q_lyap_kind) {
        case synth::QLyapKind::identity:
            j["synthesis"]["q_lyap"] = "identity";
            break;
        case synth::QLyapKind::lqr_cost:
            j["synthesis"]["q_lyap"] = "lqr_cost";
            break;
        case synth::QLyapKind::custom:
            j["synthesis"]["q_lyap"] = matrix_to_json(cfg.q_lyap_custom);
            break;
    }
    j["scheduling"]["mode"] = sched::to_string(cfg.mode);
    j["scheduling"]["alpha"] = cfg.schedule.alpha;
    j["scheduling"]["mu1"] = cfg.schedule.mu1;
    j["scheduling"]["mix_nu1"] = cfg.schedule.mix_nu1;
    j["scheduling"]["mu2"] = cfg.schedule.mu2;
    j["scheduling"]["mix_nu2"] = cfg.schedule.mix_nu2;
    j["scheduling"]["activity_grid_step"] = cfg.activity_grid_step;
    json knots = json::array();
    for (std::size_t i = 0; i < cfg.trajectory.times.size(); ++i)
        knots.push_back({cfg.trajectory.times[i], cfg.trajectory.angles_deg[i](0),
                         cfg.trajectory.angles_deg[i](1)});
    j["trajectory"]["knots"] = knots;
    j["sim"]["step"] = cfg.sim.step;
    j["sim"]["horizon"] = cfg.sim.horizon;
    j["output_dir"] = cfg.output_dir;
    return j.dump(2) + "\n";
}

RunConfig load_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return from_json_text(buf.str());
}

}  // namespace vsp::config
