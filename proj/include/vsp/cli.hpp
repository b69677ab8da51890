#pragma once

#include "vsp/config.hpp"
#include "vsp/scheduling.hpp"

namespace vsp::cli {

// Each command writes its artifacts under cfg.output_dir (created on demand,
// files replaced atomically) and prints a short summary to stdout. Failures
// surface as vsp exceptions for the caller to map to exit codes.

// model.json: the certified subcontroller bank.
void cmd_synthesize(const config::RunConfig& cfg);

// log_<mode>.csv, metrics_<mode>.json and the plot_* CSV extracts for one
// closed-loop run.
void cmd_simulate(const config::RunConfig& cfg, sched::Mode mode);

// table4.csv: RMS tracking errors for all three modes plus the per-column
// ordering verdict. Byte-stable across reruns.
void cmd_compare(const config::RunConfig& cfg);

// audit_<mode>.json: composed passivity levels and the 50-horizon empirical
// margin check for one run. Throws CertificationError when the schedule is
// not strongly active or a margin is violated.
void cmd_audit(const config::RunConfig& cfg, sched::Mode mode);

}  // namespace vsp::cli
