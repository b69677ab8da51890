#include "vsp/signals.hpp"

#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

namespace vsp::signals {

void validate(const SampledSignal& s) {
    if (s.step <= 0) throw InvalidInputError("signal: step must be positive");
    if (s.samples.empty()) throw InvalidInputError("signal: no samples");
    const Eigen::Index n = s.samples.front().size();
    for (const Vec& v : s.samples) {
        if (v.size() != n) throw InvalidInputError("signal: inconsistent dimension");
        if (!v.allFinite()) throw InvalidInputError("signal: non-finite values");
    }
}

std::size_t snap_index(const SampledSignal& s, double T) {
    const auto last = static_cast<long long>(s.samples.size()) - 1;
    long long k = std::llround(T / s.step);
    if (k < 0) k = 0;
    if (k > last) k = last;
    return static_cast<std::size_t>(k);
}

SampledSignal truncate(const SampledSignal& s, double T) {
    validate(s);
    if (T < 0) throw InvalidInputError("truncate: negative horizon");
    SampledSignal out = s;
    const std::size_t keep = snap_index(s, T);
    for (std::size_t k = keep + 1; k < out.samples.size(); ++k)
        out.samples[k].setZero();
    return out;
}

namespace {

void require_shared_grid(const SampledSignal& u, const SampledSignal& y) {
    if (u.step != y.step || u.samples.size() != y.samples.size() || u.dim() != y.dim())
        throw InvalidInputError("signals do not share grid and dimension");
}

}  // namespace

double inner_product_truncated(const SampledSignal& u, const SampledSignal& y, double T) {
    validate(u);
    validate(y);
    require_shared_grid(u, y);
    if (T < 0) throw InvalidInputError("inner_product_truncated: negative horizon");
    if (T > u.span() + 0.5 * u.step)
        throw InvalidInputError("inner_product_truncated: horizon beyond grid span");
    const std::size_t m = snap_index(u, T);
    if (m == 0) return 0.0;
    double acc = 0.5 * u.samples[0].dot(y.samples[0]);
    for (std::size_t k = 1; k < m; ++k) acc += u.samples[k].dot(y.samples[k]);
    acc += 0.5 * u.samples[m].dot(y.samples[m]);
    return acc * u.step;
}

double l2t_norm(const SampledSignal& u, double T) {
    return std::sqrt(std::max(0.0, inner_product_truncated(u, u, T)));
}

double linf_norm(const SampledSignal& u) {
    validate(u);
    double m = 0.0;
    for (const Vec& v : u.samples) m = std::max(m, v.cwiseAbs().maxCoeff());
    return m;
}

void write_signals_csv(std::ostream& os,
                       const std::vector<std::pair<std::string, const SampledSignal*>>& sigs) {
    if (sigs.empty()) throw InvalidInputError("write_signals_csv: no signals");
    const SampledSignal& first = *sigs.front().second;
    validate(first);
    os << "t";
    for (const auto& [name, sig] : sigs) {
        validate(*sig);
        // columns may have different widths, but must share the time grid
        if (sig->step != first.step || sig->samples.size() != first.samples.size())
            throw InvalidInputError("write_signals_csv: signals do not share the time grid");
        for (Eigen::Index j = 0; j < sig->dim(); ++j)
            os << "," << name << "_" << (j + 1);
    }
    os << "\n";
    char buf[40];
    for (std::size_t k = 0; k < first.samples.size(); ++k) {
        std::snprintf(buf, sizeof buf, "%.15g", first.time_of(k));
        os << buf;
        for (const auto& [name, sig] : sigs)
            for (Eigen::Index j = 0; j < sig->dim(); ++j) {
                std::snprintf(buf, sizeof buf, "%.15g", sig->samples[k](j));
                os << "," << buf;
            }
        os << "\n";
    }
}

std::map<std::string, SampledSignal> read_signals_csv(std::istream& is) {
    std::string line;
    if (!std::getline(is, line)) throw InvalidInputError("read_signals_csv: empty input");
    std::vector<std::string> names;  // per column, signal name
    {
        std::stringstream hs(line);
        std::string cell;
        if (!std::getline(hs, cell, ',') || cell != "t")
            throw InvalidInputError("read_signals_csv: first column must be t");
        while (std::getline(hs, cell, ',')) {
            const auto us = cell.rfind('_');
            if (us == std::string::npos)
                throw InvalidInputError("read_signals_csv: bad column name " + cell);
            names.push_back(cell.substr(0, us));
        }
    }
    std::vector<double> times;
    std::vector<std::vector<double>> rows;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::stringstream ls(line);
        std::string cell;
        std::vector<double> row;
        while (std::getline(ls, cell, ',')) row.push_back(std::stod(cell));
        if (row.size() != names.size() + 1)
            throw InvalidInputError("read_signals_csv: ragged row");
        times.push_back(row.front());
        rows.push_back(std::vector<double>(row.begin() + 1, row.end()));
    }
    if (times.size() < 2) throw InvalidInputError("read_signals_csv: need at least two rows");
    const double step = times[1] - times[0];

    std::map<std::string, SampledSignal> out;
    std::size_t col = 0;
    while (col < names.size()) {
        const std::string& name = names[col];
        std::size_t width = 0;
        while (col + width < names.size() && names[col + width] == name) ++width;
        SampledSignal sig;
        sig.step = step;
        for (const auto& row : rows) {
            Vec v(width);
            for (std::size_t j = 0; j < width; ++j) v(j) = row[col + j];
            sig.samples.push_back(std::move(v));
        }
        out.emplace(name, std::move(sig));
        col += width;
    }
    return out;
}

}  // namespace vsp::signals
