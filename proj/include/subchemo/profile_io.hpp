#pragma once

#include <span>
#include <string>
#include <vector>

#include "subchemo/monte_carlo.hpp"
#include "subchemo/solver.hpp"

namespace subchemo {

inline constexpr const char* kVersion = "1.0.0";

/// Concentration profiles keyed by output time on a shared spatial grid.
struct ProfileSet {
    std::vector<double> x;                      ///< site coordinates, ascending
    std::vector<double> times;                  ///< ascending
    std::vector<std::vector<double>> values;    ///< [time][site]
};

ProfileSet to_profile_set(const Trajectory& trajectory);
ProfileSet to_profile_set(const EnsembleResult& ensemble, double dx);

/// Writes CSV with header "t,x,n", rows sorted by (t, x), numbers at 17
/// significant digits so re-import reproduces every value exactly. The write
/// is atomic (temp file + rename).
void write_profile_csv(const ProfileSet& profiles, const std::string& path);

ProfileSet read_profile_csv(const std::string& path);

struct ComparisonEntry {
    double t;
    double l1;            ///< sum_i |a_i - b_i| of unit-mass-normalized profiles
    double max_abs_dev;   ///< max_i |a_i - b_i| of the same
};

struct ComparisonReport {
    std::vector<ComparisonEntry> entries;
    std::string a_label;
    std::string b_label;
};

/// Per-time distances between profiles normalized to unit mass. Grids must
/// match and both sets must contain every requested time.
ComparisonReport compare_profiles(const ProfileSet& a, const ProfileSet& b,
                                  std::span<const double> times);

/// JSON form of the report; config_echo_json, when nonempty, must be a JSON
/// object string and is embedded verbatim for reproducibility. Atomic write.
void write_report_json(const ComparisonReport& report, const std::string& path,
                       const std::string& config_echo_json = "");

}  // namespace subchemo
