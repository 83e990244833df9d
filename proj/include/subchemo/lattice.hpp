#pragma once

#include <cstddef>
#include <vector>

namespace subchemo {

/// Concentration values on a uniform 1D lattice with spacing dx.
/// The lattice is always periodic; index arithmetic wraps modulo size().
struct LatticeField {
    std::vector<double> values;
    double dx = 1.0;

    std::size_t size() const { return values.size(); }
    double total_mass() const;
    bool all_finite() const;

    /// Coordinate of site i for a grid centred on the origin.
    double site_coordinate(std::size_t i) const
    {
        return (static_cast<double>(i) - 0.5 * static_cast<double>(size() - 1)) * dx;
    }
};

/// Unit mass on the centre site, zero elsewhere. n_sites must be odd.
LatticeField delta_field(std::size_t n_sites, double dx = 1.0, double mass = 1.0);

LatticeField uniform_field(std::size_t n_sites, double dx = 1.0, double value = 1.0);

/// Time-ordered snapshots of a LatticeField on a uniform time grid.
/// Snapshot m holds the field at t_m = m*dt. All snapshots share the
/// grid size and spacing of the first one appended.
class FieldHistory {
public:
    explicit FieldHistory(double dt);

    void append(LatticeField field);

    std::size_t size() const { return snapshots_.size(); }
    const LatticeField& at(std::size_t m) const;
    const LatticeField& back() const;
    double dt() const { return dt_; }
    double time_of(std::size_t m) const { return static_cast<double>(m) * dt_; }

private:
    double dt_;
    std::vector<LatticeField> snapshots_;
};

}  // namespace subchemo
