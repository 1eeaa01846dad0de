#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "eqloc/jet.hpp"

namespace eqloc {

/// A coordinate-singular locus of the chart (e.g. a sphere pole at theta=0).
/// Quadrature and random sampling stay a band away from these; evaluation of
/// raw coefficient expressions remains legal on them.
struct ExcludedLocus {
    int axis = 0;
    double at = 0.0;
};

/// Single fundamental chart of a scenario manifold: a coordinate box with
/// optional periodic identifications. Every catalog manifold (plane patch,
/// flat torus, round sphere, products) is covered this way up to measure zero.
struct Chart {
    std::string id;
    int dim = 0;
    std::array<double, 4> lo{};
    std::array<double, 4> hi{};
    std::vector<std::string> coord_names;
    std::array<bool, 4> periodic{};
    std::vector<ExcludedLocus> excluded;
    // Band kept clear around excluded loci. 1e-4 keeps the truncated mass
    // below 1e-8 relative for every catalog integrand while the volume
    // factor still bounds everything evaluated this close to a pole.
    double excluded_band = 1e-4;

    double width(int axis) const { return hi[axis] - lo[axis]; }
    bool in_domain(const Pt& p) const;
    /// Within `band` of an excluded locus along its axis.
    bool near_excluded(const Pt& p, double band) const;
    /// Shortest signed separation along an axis, respecting periodicity.
    double axis_distance(int axis, double a, double b) const;
    Pt clamped(Pt p) const;
};

/// Deterministic interior sampler: uniform over the domain box, rejecting
/// the excluded bands. Identical seeds give identical sequences.
std::vector<Pt> sample_interior(const Chart& chart, int count, std::uint64_t seed);

}  // namespace eqloc
