#include "eqloc/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>
#include <map>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "eqloc/error.hpp"

namespace eqloc {

namespace {

GaussRule build_rule(int n) {
    GaussRule r;
    r.nodes.resize(n);
    r.weights.resize(n);
    // Newton iteration from the Chebyshev-like initial guess; standard
    // construction, see e.g. Golub-Welsch alternatives in most quadrature
    // codes at this scale.
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = 0.0;
            for (int j = 0; j < n; ++j) {
                double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
            }
            pp = n * (x * p0 - p1) / (x * x - 1.0);
            double dx = p0 / pp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        r.nodes[i] = -x;
        r.nodes[n - 1 - i] = x;
        r.weights[i] = 2.0 / ((1.0 - x * x) * pp * pp);
        r.weights[n - 1 - i] = r.weights[i];
    }
    return r;
}

std::mutex g_rule_mutex;

struct AxisSegments {
    // Integration segments per axis after removing excluded bands.
    std::vector<std::pair<double, double>> segs;
};

std::vector<AxisSegments> split_axes(const Chart& chart) {
    std::vector<AxisSegments> axes(chart.dim);
    for (int i = 0; i < chart.dim; ++i) {
        std::vector<double> cuts{chart.lo[i], chart.hi[i]};
        std::vector<std::pair<double, double>> holes;
        for (const auto& ex : chart.excluded)
            if (ex.axis == i)
                holes.emplace_back(ex.at - chart.excluded_band, ex.at + chart.excluded_band);
        std::sort(holes.begin(), holes.end());
        double cursor = chart.lo[i];
        for (const auto& h : holes) {
            const double a = std::max(h.first, chart.lo[i]);
            const double b = std::min(h.second, chart.hi[i]);
            if (a > cursor) axes[i].segs.emplace_back(cursor, a);
            cursor = std::max(cursor, b);
        }
        if (cursor < chart.hi[i]) axes[i].segs.emplace_back(cursor, chart.hi[i]);
    }
    return axes;
}

}  // namespace

const GaussRule& gauss_legendre(int n) {
    if (n < 1) throw std::invalid_argument("gauss_legendre: n must be positive");
    static std::map<int, GaussRule> cache;
    std::lock_guard<std::mutex> lock(g_rule_mutex);
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, build_rule(n)).first;
    return it->second;
}

std::vector<Pt> tensor_grid_nodes(const Chart& chart, int nodes_per_axis) {
    auto axes = split_axes(chart);
    const GaussRule& rule = gauss_legendre(nodes_per_axis);

    // Per axis: concatenated mapped nodes over its segments.
    std::vector<std::vector<double>> axis_nodes(chart.dim);
    for (int i = 0; i < chart.dim; ++i)
        for (const auto& [a, b] : axes[i].segs)
            for (double t : rule.nodes)
                axis_nodes[i].push_back(0.5 * (a + b) + 0.5 * (b - a) * t);

    std::vector<Pt> out;
    std::vector<std::size_t> idx(chart.dim, 0);
    for (;;) {
        Pt p{};
        for (int i = 0; i < chart.dim; ++i) p[i] = axis_nodes[i][idx[i]];
        out.push_back(p);
        int axis = chart.dim - 1;
        while (axis >= 0 && ++idx[axis] == axis_nodes[axis].size()) idx[axis--] = 0;
        if (axis < 0) break;
    }
    return out;
}

MultiIntegralResult integrate_over_chart_multi(
    const Chart& chart, int ncomp,
    const std::function<void(const Pt&, std::span<Complex>)>& densities,
    int initial_nodes, int max_nodes, long max_total_nodes, double refine_rel) {
    auto axes = split_axes(chart);

    auto evaluate = [&](int n, double* band_bound) -> std::vector<Complex> {
        const GaussRule& rule = gauss_legendre(n);
        // per-axis mapped nodes and weights over all segments of that axis
        std::vector<std::vector<std::pair<double, double>>> ax(chart.dim);
        for (int i = 0; i < chart.dim; ++i)
            for (const auto& [a, b] : axes[i].segs)
                for (std::size_t k = 0; k < rule.nodes.size(); ++k)
                    ax[i].emplace_back(0.5 * (a + b) + 0.5 * (b - a) * rule.nodes[k],
                                       0.5 * (b - a) * rule.weights[k]);

        double total = 1.0;
        for (int i = 0; i < chart.dim; ++i) total *= static_cast<double>(ax[i].size());

        // stripe over the outermost axis; per-stripe sums are combined in
        // stripe order, which keeps the result independent of scheduling
        auto run_stripe = [&](std::size_t i0_begin, std::size_t i0_end,
                              std::vector<Complex>& sums, double& max_abs) {
            std::vector<Complex> buf(ncomp);
            std::vector<std::size_t> idx(chart.dim, 0);
            for (std::size_t i0 = i0_begin; i0 < i0_end; ++i0) {
                std::fill(idx.begin(), idx.end(), 0);
                idx[0] = i0;
                for (;;) {
                    Pt p{};
                    double w = 1.0;
                    for (int i = 0; i < chart.dim; ++i) {
                        p[i] = ax[i][idx[i]].first;
                        w *= ax[i][idx[i]].second;
                    }
                    densities(p, buf);
                    for (int c = 0; c < ncomp; ++c) {
                        sums[c] += w * buf[c];
                        max_abs = std::max(max_abs, std::abs(buf[c]));
                    }
                    int axis = chart.dim - 1;
                    while (axis >= 1 && ++idx[axis] == ax[axis].size()) idx[axis--] = 0;
                    if (axis < 1) break;
                }
            }
        };

        const std::size_t outer = ax[0].size();
        std::vector<Complex> sums(ncomp, Complex(0.0));
        double max_abs_density = 0.0;
        const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
        if (hw >= 2 && total > 20000.0 && outer >= 2) {
            const std::size_t mid = outer / 2;
            std::vector<Complex> s2(ncomp, Complex(0.0));
            double m2 = 0.0;
            auto fut = std::async(std::launch::async, [&] { run_stripe(mid, outer, s2, m2); });
            run_stripe(0, mid, sums, max_abs_density);
            fut.get();
            for (int c = 0; c < ncomp; ++c) sums[c] += s2[c];
            max_abs_density = std::max(max_abs_density, m2);
        } else {
            run_stripe(0, outer, sums, max_abs_density);
        }

        if (band_bound) {
            // Crude bound on what the excluded bands could contribute:
            // band volume times the largest density magnitude seen.
            double volume = 0.0;
            for (const auto& ex : chart.excluded) {
                double cross = 1.0;
                for (int i = 0; i < chart.dim; ++i)
                    if (i != ex.axis) cross *= chart.width(i);
                volume += 2.0 * chart.excluded_band * cross;
            }
            *band_bound = volume * max_abs_density;
        }
        return sums;
    };

    int n = initial_nodes;
    double band = 0.0;
    std::vector<Complex> prev = evaluate(n, &band);
    double prev_diff = std::numeric_limits<double>::infinity();
    while (true) {
        const int next = 2 * n;
        double total = 1.0;
        for (int i = 0; i < chart.dim; ++i)
            total *= static_cast<double>(next) * axes[i].segs.size();
        if (next > max_nodes || total > static_cast<double>(max_total_nodes)) {
            // accept the last estimate; the refinement difference is the
            // error estimate and the caller sees it
            MultiIntegralResult r;
            r.values = prev;
            r.error_estimate = prev_diff + band;
            r.nodes_per_axis = n;
            return r;
        }
        std::vector<Complex> cur = evaluate(next, &band);
        double diff = 0.0, scale = 0.0;
        for (int c = 0; c < ncomp; ++c) {
            diff = std::max(diff, std::abs(cur[c] - prev[c]));
            scale = std::max(scale, std::abs(cur[c]));
        }
        if (diff <= refine_rel * scale + 1e-12) {
            MultiIntegralResult r;
            r.values = cur;
            r.error_estimate = diff + band;
            r.nodes_per_axis = next;
            return r;
        }
        if (prev_diff < std::numeric_limits<double>::infinity() && diff > 16.0 * prev_diff &&
            diff > 1e-6 * scale) {
            raise(ErrorKind::Integration,
                  "quadrature refinement diverging at " + std::to_string(next) +
                      " nodes per axis (diff " + std::to_string(diff) + ")");
        }
        prev = std::move(cur);
        prev_diff = diff;
        n = next;
    }
}

IntegralResult integrate_over_chart(const Chart& chart,
                                    const std::function<Complex(const Pt&)>& density,
                                    int initial_nodes, int max_nodes,
                                    long max_total_nodes, double refine_rel) {
    MultiIntegralResult m = integrate_over_chart_multi(
        chart, 1,
        [&density](const Pt& p, std::span<Complex> out) { out[0] = density(p); },
        initial_nodes, max_nodes, max_total_nodes, refine_rel);
    IntegralResult r;
    r.value = m.values[0];
    r.error_estimate = m.error_estimate;
    r.nodes_per_axis = m.nodes_per_axis;
    return r;
}

}  // namespace eqloc
