#include "subchemo/profile_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"

#include "subchemo/errors.hpp"

namespace subchemo {

namespace {

std::string format_number(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void atomic_write(const std::string& path, const std::string& content)
{
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw IoError("cannot open for writing: " + tmp);
        out << content;
        out.flush();
        if (!out) throw IoError("write failed: " + tmp);
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0) {
        std::remove(tmp.c_str());
        throw IoError("cannot move " + tmp + " into place: " + path);
    }
}

double parse_double(const std::string& text, const std::string& context)
{
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(text, &used);
    } catch (const std::exception&) {
        throw IoError("bad number '" + text + "' in " + context);
    }
    if (used != text.size() || !std::isfinite(v)) {
        throw IoError("bad number '" + text + "' in " + context);
    }
    return v;
}

bool near(double a, double b)
{
    return std::abs(a - b) <= 1e-9 * std::max({1.0, std::abs(a), std::abs(b)});
}

std::vector<double> normalized(const std::vector<double>& values, const std::string& label)
{
    double mass = 0.0;
    for (double v : values) mass += v;
    if (!(mass > 0.0)) {
        throw ValidationError("compare_profiles: profile '" + label
                              + "' has nonpositive mass");
    }
    std::vector<double> out(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) out[i] = values[i] / mass;
    return out;
}

}  // namespace

ProfileSet to_profile_set(const Trajectory& trajectory)
{
    ProfileSet set;
    set.times = trajectory.output_times;
    if (trajectory.outputs.empty()) {
        throw ValidationError("to_profile_set: trajectory recorded no outputs");
    }
    const LatticeField& first = trajectory.outputs.front();
    set.x.resize(first.size());
    for (std::size_t i = 0; i < first.size(); ++i) set.x[i] = first.site_coordinate(i);
    for (const LatticeField& f : trajectory.outputs) set.values.push_back(f.values);
    return set;
}

ProfileSet to_profile_set(const EnsembleResult& ensemble, double dx)
{
    ProfileSet set;
    set.times = ensemble.output_times;
    if (ensemble.histograms.empty()) {
        throw ValidationError("to_profile_set: ensemble holds no histograms");
    }
    const std::size_t n = ensemble.histograms.front().size();
    set.x.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        set.x[i] = (static_cast<double>(i) - 0.5 * static_cast<double>(n - 1)) * dx;
    }
    set.values = ensemble.histograms;
    return set;
}

void write_profile_csv(const ProfileSet& profiles, const std::string& path)
{
    if (profiles.times.empty() || profiles.x.empty()) {
        throw ValidationError("write_profile_csv: empty profile set");
    }
    if (profiles.values.size() != profiles.times.size()) {
        throw ValidationError("write_profile_csv: times/values size mismatch");
    }
    std::ostringstream out;
    out << "t,x,n\n";
    for (std::size_t t = 0; t < profiles.times.size(); ++t) {
        if (profiles.values[t].size() != profiles.x.size()) {
            throw ValidationError("write_profile_csv: ragged profile rows");
        }
        for (std::size_t i = 0; i < profiles.x.size(); ++i) {
            out << format_number(profiles.times[t]) << ',' << format_number(profiles.x[i])
                << ',' << format_number(profiles.values[t][i]) << '\n';
        }
    }
    atomic_write(path, out.str());
}

ProfileSet read_profile_csv(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw IoError("cannot open: " + path);
    std::string line;
    if (!std::getline(in, line) || line != "t,x,n") {
        throw IoError("missing 't,x,n' header in " + path);
    }
    ProfileSet set;
    std::size_t line_no = 1;
    double current_t = 0.0;
    bool have_time = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        const std::size_t c1 = line.find(',');
        const std::size_t c2 = (c1 == std::string::npos) ? std::string::npos
                                                         : line.find(',', c1 + 1);
        if (c2 == std::string::npos) {
            throw IoError(path + ":" + std::to_string(line_no) + ": expected t,x,n row");
        }
        const std::string ctx = path + ":" + std::to_string(line_no);
        const double t = parse_double(line.substr(0, c1), ctx);
        const double x = parse_double(line.substr(c1 + 1, c2 - c1 - 1), ctx);
        const double v = parse_double(line.substr(c2 + 1), ctx);

        if (!have_time || t != current_t) {
            if (!set.times.empty() && t < set.times.back()) {
                throw IoError(path + ": rows not sorted by time");
            }
            set.times.push_back(t);
            set.values.emplace_back();
            current_t = t;
            have_time = true;
        }
        std::vector<double>& row = set.values.back();
        if (set.times.size() == 1) {
            set.x.push_back(x);
        } else {
            if (row.size() >= set.x.size() || !near(set.x[row.size()], x)) {
                throw IoError(path + ": inconsistent x grid across times");
            }
        }
        row.push_back(v);
    }
    if (set.times.empty()) throw IoError(path + ": no data rows");
    for (const std::vector<double>& row : set.values) {
        if (row.size() != set.x.size()) {
            throw IoError(path + ": ragged time blocks");
        }
    }
    return set;
}

ComparisonReport compare_profiles(const ProfileSet& a, const ProfileSet& b,
                                  std::span<const double> times)
{
    if (a.x.size() != b.x.size()) {
        throw ValidationError("compare_profiles: grid size mismatch");
    }
    for (std::size_t i = 0; i < a.x.size(); ++i) {
        if (!near(a.x[i], b.x[i])) {
            throw ValidationError("compare_profiles: grids differ at index "
                                  + std::to_string(i));
        }
    }
    const auto find_time = [](const ProfileSet& set, double t,
                              const char* label) -> std::size_t {
        for (std::size_t i = 0; i < set.times.size(); ++i) {
            if (near(set.times[i], t)) return i;
        }
        throw ValidationError(std::string("compare_profiles: time ") + std::to_string(t)
                              + " missing from profile set " + label);
    };

    ComparisonReport report;
    for (double t : times) {
        const std::size_t ia = find_time(a, t, "a");
        const std::size_t ib = find_time(b, t, "b");
        const std::vector<double> pa = normalized(a.values[ia], "a");
        const std::vector<double> pb = normalized(b.values[ib], "b");
        double l1 = 0.0;
        double max_dev = 0.0;
        for (std::size_t i = 0; i < pa.size(); ++i) {
            const double d = std::abs(pa[i] - pb[i]);
            l1 += d;
            max_dev = std::max(max_dev, d);
        }
        report.entries.push_back(ComparisonEntry{t, l1, max_dev});
    }
    return report;
}

void write_report_json(const ComparisonReport& report, const std::string& path,
                       const std::string& config_echo_json)
{
    nlohmann::json j;
    j["tool"] = "subchemo";
    j["version"] = kVersion;
    j["a"] = report.a_label;
    j["b"] = report.b_label;
    j["entries"] = nlohmann::json::array();
    for (const ComparisonEntry& e : report.entries) {
        j["entries"].push_back(
            {{"t", e.t}, {"l1", e.l1}, {"max_abs_dev", e.max_abs_dev}});
    }
    if (!config_echo_json.empty()) {
        j["config"] = nlohmann::json::parse(config_echo_json);
    }
    atomic_write(path, j.dump(2) + "\n");
}

}  // namespace subchemo
