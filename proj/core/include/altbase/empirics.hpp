#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "altbase/density.hpp"

namespace altbase {

// Floating-point cross-validation of the exact densities: Birkhoff
// orbit histograms and the Ulam discretization of the transfer operator.
struct Histogram {
    int bins = 0;
    std::vector<long long> counts;
    long long samples = 0;
    std::vector<double> heights;  // normalized: integrates to 1 over [0,1)
};

// Iterates the float rendering of the map and bins the trajectory.
// Branch membership uses the exactly-rendered breakpoints (ties go to
// the right branch); deterministic given the seed, which picks x0 when
// none is supplied.
Histogram birkhoff_histogram(const PiecewiseAffineMap& map, std::optional<double> x0,
                             long long iterations, int bins, long long burn_in,
                             std::uint64_t seed);

// Ulam discretization on a uniform grid: row-stochastic matrix with
// overlaps computed exactly from the branch data, then one rounding to
// double; the left fixed vector is found by power iteration to relative
// L1 residual < 1e-12.
Histogram ulam_density(const PiecewiseAffineMap& map, int cells, int power_iters = 100000);

double l1_distance(const Histogram& f, const Histogram& g);
double l1_distance(const PiecewiseConstantFn& f, const Histogram& g);
double l1_distance(const PiecewiseConstantFn& f, const PiecewiseConstantFn& g);

}  // namespace altbase
