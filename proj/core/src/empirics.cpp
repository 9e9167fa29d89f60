#include "altbase/empirics.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace altbase {

namespace {

struct StepD {
    std::vector<double> bps;   // ascending, first 0, last 1
    std::vector<double> vals;  // one per cell
};

StepD render(const Histogram& h) {
    StepD s;
    s.bps.reserve(static_cast<std::size_t>(h.bins) + 1);
    for (int i = 0; i <= h.bins; ++i) s.bps.push_back(static_cast<double>(i) / h.bins);
    s.vals = h.heights;
    return s;
}

StepD render(const PiecewiseConstantFn& f) {
    StepD s;
    for (const FieldElem& b : f.breakpoints) s.bps.push_back(b.to_double());
    for (const FieldElem& v : f.values) s.vals.push_back(v.to_double());
    return s;
}

double value_at(const StepD& s, double x) {
    auto it = std::upper_bound(s.bps.begin(), s.bps.end(), x);
    std::size_t idx = static_cast<std::size_t>(it - s.bps.begin());
    if (idx == 0) return s.vals.front();
    if (idx >= s.bps.size()) return s.vals.back();
    return s.vals[idx - 1];
}

double l1(const StepD& f, const StepD& g) {
    std::vector<double> bps = f.bps;
    bps.insert(bps.end(), g.bps.begin(), g.bps.end());
    std::sort(bps.begin(), bps.end());
    bps.erase(std::unique(bps.begin(), bps.end()), bps.end());
    double acc = 0.0;
    for (std::size_t i = 0; i + 1 < bps.size(); ++i) {
        double mid = 0.5 * (bps[i] + bps[i + 1]);
        acc += std::abs(value_at(f, mid) - value_at(g, mid)) * (bps[i + 1] - bps[i]);
    }
    return acc;
}

}  // namespace

double l1_distance(const Histogram& f, const Histogram& g) { return l1(render(f), render(g)); }
double l1_distance(const PiecewiseConstantFn& f, const Histogram& g) {
    return l1(render(f), render(g));
}
double l1_distance(const PiecewiseConstantFn& f, const PiecewiseConstantFn& g) {
    return l1(render(f), render(g));
}

Histogram birkhoff_histogram(const PiecewiseAffineMap& map, std::optional<double> x0,
                             long long iterations, int bins, long long burn_in,
                             std::uint64_t seed) {
    if (bins < 2) throw Error(ErrorCode::PointOutOfRange, "need at least 2 bins");
    if (iterations <= burn_in)
        throw Error(ErrorCode::PointOutOfRange, "iterations must exceed burn_in");

    std::vector<double> lo, slope, intercept;
    for (const AffineBranch& b : map.branches()) {
        lo.push_back(b.lo.to_double());
        slope.push_back(b.slope.to_double());
        intercept.push_back(b.intercept.to_double());
    }

    double x;
    if (x0) {
        x = *x0;
    } else {
        std::mt19937_64 rng(seed);
        std::uniform_real_distribution<double> uni(0.0, 1.0);
        x = uni(rng);
    }
    if (x < 0.0 || x >= 1.0) throw Error(ErrorCode::PointOutOfRange, "x0 outside [0,1)");

    // When the slope is a small dyadic (e.g. 2 for T_{(3/2)∘(4/3)}),
    // x -> slope*x + c consumes one mantissa bit per step and every
    // double orbit collapses onto the dyadic lattice, then onto the
    // absorbing fixed point 0. A seeded dither far below the bin width
    // restores the lost entropy without disturbing the histogram.
    std::mt19937_64 dither_rng(seed ^ 0x9e3779b97f4a7c15ULL);
    std::uniform_real_distribution<double> dither(0.0, 1e-12);

    Histogram h;
    h.bins = bins;
    h.counts.assign(static_cast<std::size_t>(bins), 0);
    const double top = std::nextafter(1.0, 0.0);
    for (long long it = 0; it < iterations; ++it) {
        // Last branch with lo <= x; ties at a rendered breakpoint go right.
        std::size_t idx =
            static_cast<std::size_t>(std::upper_bound(lo.begin(), lo.end(), x) - lo.begin()) - 1;
        x = slope[idx] * x + intercept[idx] + dither(dither_rng);
        if (x < 0.0) x = 0.0;
        if (x >= 1.0) x = top;
        if (it >= burn_in) {
            auto bin = static_cast<std::size_t>(x * bins);
            if (bin >= static_cast<std::size_t>(bins)) bin = static_cast<std::size_t>(bins) - 1;
            ++h.counts[bin];
        }
    }
    h.samples = iterations - burn_in;
    h.heights.resize(static_cast<std::size_t>(bins));
    for (int i = 0; i < bins; ++i)
        h.heights[static_cast<std::size_t>(i)] =
            static_cast<double>(h.counts[static_cast<std::size_t>(i)]) * bins / h.samples;
    return h;
}

Histogram ulam_density(const PiecewiseAffineMap& map, int cells, int power_iters) {
    if (cells < 2) throw Error(ErrorCode::PointOutOfRange, "need at least 2 cells");
    const long long c = cells;
    const FieldElem cc(c);
    FieldElem inv_slope = map.slope().inverse();

    // Sparse row-stochastic matrix: entries[i] holds (j, P_ij). Overlap
    // widths are exact; the only rounding is the final to_double.
    std::vector<std::vector<std::pair<int, double>>> rows(static_cast<std::size_t>(cells));
    for (const AffineBranch& b : map.branches()) {
        long i_lo = (b.lo * cc).floor().get_si();
        for (long i = i_lo; i < cells; ++i) {
            FieldElem cell_lo(i, c), cell_hi(i + 1, c);
            if (cell_lo >= b.hi) break;
            FieldElem seg_lo = std::max(cell_lo, b.lo, [](const FieldElem& a, const FieldElem& b2) { return a < b2; });
            FieldElem seg_hi = std::min(cell_hi, b.hi, [](const FieldElem& a, const FieldElem& b2) { return a < b2; });
            if (seg_hi <= seg_lo) continue;
            FieldElem y_lo = b.apply(seg_lo), y_hi = b.apply(seg_hi);
            long j_lo = (y_lo * cc).floor().get_si();
            for (long j = j_lo; j < cells; ++j) {
                FieldElem img_lo(j, c), img_hi(j + 1, c);
                if (img_lo >= y_hi) break;
                FieldElem o_lo = std::max(img_lo, y_lo, [](const FieldElem& a, const FieldElem& b2) { return a < b2; });
                FieldElem o_hi = std::min(img_hi, y_hi, [](const FieldElem& a, const FieldElem& b2) { return a < b2; });
                if (o_hi <= o_lo) continue;
                // lambda(cell_i cap T^-1 cell_j) / lambda(cell_i)
                FieldElem w = (o_hi - o_lo) * inv_slope * cc;
                rows[static_cast<std::size_t>(i)].emplace_back(static_cast<int>(j), w.to_double());
            }
        }
    }

    std::vector<double> v(static_cast<std::size_t>(cells), 1.0 / cells);
    std::vector<double> next(static_cast<std::size_t>(cells));
    for (int iter = 0; iter < power_iters; ++iter) {
        std::fill(next.begin(), next.end(), 0.0);
        for (std::size_t i = 0; i < rows.size(); ++i)
            for (const auto& [j, w] : rows[i]) next[static_cast<std::size_t>(j)] += v[i] * w;
        double mass = 0.0;
        for (double t : next) mass += t;
        for (double& t : next) t /= mass;
        double resid = 0.0;
        for (std::size_t i = 0; i < v.size(); ++i) resid += std::abs(next[i] - v[i]);
        v.swap(next);
        if (resid < 1e-12) {
            Histogram h;
            h.bins = cells;
            h.samples = 0;
            h.counts.assign(static_cast<std::size_t>(cells), 0);
            h.heights.resize(static_cast<std::size_t>(cells));
            for (int i = 0; i < cells; ++i)
                h.heights[static_cast<std::size_t>(i)] = v[static_cast<std::size_t>(i)] * cells;
            return h;
        }
    }
    throw Error(ErrorCode::NonConvergence, "Ulam power iteration did not converge");
}

}  // namespace altbase
