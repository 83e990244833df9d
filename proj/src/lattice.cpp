#include "subchemo/lattice.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "subchemo/errors.hpp"

namespace subchemo {

double LatticeField::total_mass() const
{
    return std::accumulate(values.begin(), values.end(), 0.0);
}

bool LatticeField::all_finite() const
{
    for (double v : values) {
        if (!std::isfinite(v)) return false;
    }
    return true;
}

LatticeField delta_field(std::size_t n_sites, double dx, double mass)
{
    if (n_sites == 0 || n_sites % 2 == 0) {
        throw ValidationError("delta_field: n_sites must be odd and positive, got "
                              + std::to_string(n_sites));
    }
    LatticeField f;
    f.dx = dx;
    f.values.assign(n_sites, 0.0);
    f.values[n_sites / 2] = mass;
    return f;
}

LatticeField uniform_field(std::size_t n_sites, double dx, double value)
{
    LatticeField f;
    f.dx = dx;
    f.values.assign(n_sites, value);
    return f;
}

FieldHistory::FieldHistory(double dt) : dt_(dt)
{
    if (!(dt > 0.0) || !std::isfinite(dt)) {
        throw ValidationError("FieldHistory: dt must be positive and finite");
    }
}

void FieldHistory::append(LatticeField field)
{
    if (!snapshots_.empty()) {
        const LatticeField& first = snapshots_.front();
        if (field.size() != first.size() || field.dx != first.dx) {
            throw ValidationError("FieldHistory::append: snapshot grid mismatch");
        }
    }
    snapshots_.push_back(std::move(field));
}

const LatticeField& FieldHistory::at(std::size_t m) const
{
    if (m >= snapshots_.size()) {
        throw ValidationError("FieldHistory::at: index " + std::to_string(m)
                              + " out of range (size " + std::to_string(snapshots_.size())
                              + ")");
    }
    return snapshots_[m];
}

const LatticeField& FieldHistory::back() const
{
    if (snapshots_.empty()) throw ValidationError("FieldHistory::back: empty history");
    return snapshots_.back();
}

}  // namespace subchemo
