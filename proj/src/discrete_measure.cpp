#include "boolconc/discrete_measure.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "csv_util.hpp"

namespace boolconc {

DiscreteMeasure::DiscreteMeasure(std::vector<Atom> atoms, bool total_mass_finite)
    : total_mass_finite_(total_mass_finite) {
    for (const Atom& a : atoms) {
        if (!(a.u > 0.0) || !std::isfinite(a.u))
            throw std::invalid_argument("DiscreteMeasure: atom locations must be finite and > 0");
        if (!(a.w >= 0.0) || !std::isfinite(a.w))
            throw std::invalid_argument("DiscreteMeasure: atom masses must be finite and >= 0");
    }
    std::sort(atoms.begin(), atoms.end(),
              [](const Atom& a, const Atom& b) { return a.u < b.u; });
    atoms_.reserve(atoms.size());
    for (const Atom& a : atoms) {
        if (a.w == 0.0) continue;
        if (!atoms_.empty() && atoms_.back().u == a.u)
            atoms_.back().w += a.w;
        else
            atoms_.push_back(a);
    }
}

DiscreteMeasure DiscreteMeasure::scaled_locations(double factor) const {
    if (!(factor > 0.0) || !std::isfinite(factor))
        throw std::invalid_argument("scaled_locations: factor must be finite and > 0");
    std::vector<Atom> out(atoms_.begin(), atoms_.end());
    for (Atom& a : out) a.u *= factor;
    return DiscreteMeasure(std::move(out), total_mass_finite_);
}

DiscreteMeasure DiscreteMeasure::scaled_masses(double factor) const {
    if (!(factor >= 0.0) || !std::isfinite(factor))
        throw std::invalid_argument("scaled_masses: factor must be finite and >= 0");
    std::vector<Atom> out(atoms_.begin(), atoms_.end());
    for (Atom& a : out) a.w *= factor;
    return DiscreteMeasure(std::move(out), total_mass_finite_);
}

void write_csv(std::ostream& out, const DiscreteMeasure& m) {
    out << "u,w\n";
    for (const Atom& a : m.atoms()) out << exact_double(a.u) << ',' << exact_double(a.w) << '\n';
}

DiscreteMeasure read_measure_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || trim(line) != "u,w")
        throw std::runtime_error("measure CSV: expected header 'u,w'");
    std::vector<Atom> atoms;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        const auto fields = split_csv(line);
        if (fields.size() != 2)
            throw std::runtime_error("measure CSV: line " + std::to_string(line_no) +
                                     " must have two fields");
        atoms.push_back({parse_double(fields[0]), parse_double(fields[1])});
    }
    return DiscreteMeasure(std::move(atoms));
}

}  // namespace boolconc
