#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace boolconc {

struct Atom {
    double u = 0.0;  ///< location, > 0
    double w = 0.0;  ///< mass, >= 0

    friend bool operator==(const Atom&, const Atom&) = default;
};

/// Finite atomic measure on (0, inf). Immutable after construction.
///
/// Atoms are kept sorted by location with duplicates merged (masses summed)
/// and zero-mass atoms dropped, so two measures compare equal iff they are
/// the same measure.
class DiscreteMeasure {
public:
    DiscreteMeasure() = default;
    explicit DiscreteMeasure(std::vector<Atom> atoms, bool total_mass_finite = true);

    std::span<const Atom> atoms() const noexcept { return atoms_; }
    bool total_mass_finite() const noexcept { return total_mass_finite_; }
    bool empty() const noexcept { return atoms_.empty(); }
    std::size_t size() const noexcept { return atoms_.size(); }

    /// Largest atom location, 0 for the zero measure.
    double max_location() const noexcept { return atoms_.empty() ? 0.0 : atoms_.back().u; }

    /// Pushforward under u -> factor * u.
    DiscreteMeasure scaled_locations(double factor) const;
    /// Every mass multiplied by factor (>= 0).
    DiscreteMeasure scaled_masses(double factor) const;

    friend bool operator==(const DiscreteMeasure&, const DiscreteMeasure&) = default;

private:
    std::vector<Atom> atoms_;
    bool total_mass_finite_ = true;
};

/// CSV with header `u,w`, one atom per row in ascending u.
void write_csv(std::ostream& out, const DiscreteMeasure& m);
DiscreteMeasure read_measure_csv(std::istream& in);

}  // namespace boolconc
