#include "eqloc/chart.hpp"

#include <cmath>
#include <random>

namespace eqloc {

bool Chart::in_domain(const Pt& p) const {
    for (int i = 0; i < dim; ++i)
        if (p[i] < lo[i] || p[i] > hi[i]) return false;
    return true;
}

bool Chart::near_excluded(const Pt& p, double band) const {
    for (const auto& ex : excluded)
        if (std::abs(p[ex.axis] - ex.at) < band) return true;
    return false;
}

double Chart::axis_distance(int axis, double a, double b) const {
    double d = std::abs(a - b);
    if (periodic[axis]) {
        const double w = width(axis);
        d = std::fmod(d, w);
        d = std::min(d, w - d);
    }
    return d;
}

Pt Chart::clamped(Pt p) const {
    for (int i = 0; i < dim; ++i) {
        if (periodic[i]) {
            const double w = width(i);
            p[i] = lo[i] + std::fmod(std::fmod(p[i] - lo[i], w) + w, w);
        } else {
            p[i] = std::min(std::max(p[i], lo[i]), hi[i]);
        }
    }
    return p;
}

std::vector<Pt> sample_interior(const Chart& chart, int count, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<Pt> out;
    out.reserve(count);
    const double margin = 1e-4;  // stay off the box faces as well
    while (static_cast<int>(out.size()) < count) {
        Pt p{};
        for (int i = 0; i < chart.dim; ++i)
            p[i] = chart.lo[i] + (margin + (1.0 - 2.0 * margin) * unit(rng)) * chart.width(i);
        if (chart.near_excluded(p, chart.excluded_band)) continue;
        out.push_back(p);
    }
    return out;
}

}  // namespace eqloc
