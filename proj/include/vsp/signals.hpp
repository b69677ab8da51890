#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "vsp/linalg.hpp"

namespace vsp::signals {

// Uniformly sampled vector signal starting at t = 0.
struct SampledSignal {
    double step = 0.0;
    std::vector<Vec> samples;

    Eigen::Index dim() const { return samples.empty() ? 0 : samples.front().size(); }
    std::size_t size() const { return samples.size(); }
    double time_of(std::size_t k) const { return static_cast<double>(k) * step; }
    double span() const { return samples.empty() ? 0.0 : time_of(samples.size() - 1); }
};

void validate(const SampledSignal& s);

// Nearest grid index to T, clamped to the signal's range.
std::size_t snap_index(const SampledSignal& s, double T);

// Samples at times > T replaced by zero vectors; grid unchanged.
SampledSignal truncate(const SampledSignal& s, double T);

// Trapezoidal approximation of the integral of u(t).y(t) over [0, T],
// with T snapped to the nearest grid point. Grids must match.
double inner_product_truncated(const SampledSignal& u, const SampledSignal& y, double T);

double l2t_norm(const SampledSignal& u, double T);

double linf_norm(const SampledSignal& u);

// CSV with header t,<name>_1..<name>_n per signal group, 15 significant
// digits, one row per sample. All signals must share the grid.
void write_signals_csv(std::ostream& os,
                       const std::vector<std::pair<std::string, const SampledSignal*>>& sigs);

std::map<std::string, SampledSignal> read_signals_csv(std::istream& is);

}  // namespace vsp::signals
