#pragma once

#include <vector>

#include "altbase/maps.hpp"
#include "altbase/orbits.hpp"

namespace altbase {

// Exact step function on [0,1): strictly increasing breakpoints with
// first = 0 and last = 1, one value per half-open cell [b_i, b_{i+1}).
struct PiecewiseConstantFn {
    std::vector<FieldElem> breakpoints;
    std::vector<FieldElem> values;

    FieldElem integral() const;
    FieldElem value_at(const FieldElem& x) const;  // requires 0 <= x < 1
    PiecewiseConstantFn normalized() const;        // scaled so the integral is 1
    PiecewiseConstantFn merged() const;            // adjacent equal cells fused
};

// Builds a step function from an unsorted list of (breakpoint, value)
// candidates evaluated cell-by-cell; used internally and by tests.
PiecewiseConstantFn step_function(std::vector<FieldElem> breakpoints,
                                  std::vector<FieldElem> values);

// a.e. equality: identical on the common refinement.
bool same_function(const PiecewiseConstantFn& f, const PiecewiseConstantFn& g);

// First cell of the common refinement where f and g differ, if any.
struct FnMismatch {
    FieldElem point, lhs, rhs;
};
std::optional<FnMismatch> first_difference(const PiecewiseConstantFn& f,
                                           const PiecewiseConstantFn& g);

// Perron-Frobenius image of f under the map:
// (Lf)(x) = slope^-1 * sum over branches covering x of f(branch^-1(x)).
// Exact; invariant densities are fixed points of this operator.
PiecewiseConstantFn apply_transfer(const PiecewiseAffineMap& map, const PiecewiseConstantFn& f);

struct FundamentalInterval {
    FieldElem lo, hi;
    int rank = 1;
    FieldElem image_hi;  // T^rank maps [lo,hi) onto [0, image_hi)
    bool full = false;
};

struct Refinement {
    std::vector<FundamentalInterval> intervals;  // all rank-k intervals
    std::vector<FundamentalInterval> dk;         // non-full, not under a full ancestor
};

// Rank-k fundamental intervals by exact pullback, together with D_k.
Refinement refine(const PiecewiseAffineMap& map, int k);

struct Dk10Result {
    PiecewiseConstantFn f;
    bool exact = false;
    Rational tail;  // 0 when exact; residual bound proxy otherwise
};

// Invariant density as the normalized non-full-interval series
// phi = 1 + sum_k sum_{E in D_k} slope^-k 1_{[0, image(E))}. Sums the
// geometric tail in closed form once the D_k structure is self-similar;
// otherwise truncates at max_rank and reports a residual proxy.
Dk10Result dk10_density(const PiecewiseAffineMap& map, int max_rank,
                        double tail_threshold = 1e6);

// Closed form for T_{(p/q) ∘ kq} with p > q > 1 coprime, p = mq + r:
// f = (p-r)/p * (1 + q/(p-r) * 1_{[0, r/q)}); independent of k.
PiecewiseConstantFn closed_form_density(long p, long q, long k);

// Independent oracle: exact transfer-operator fixed point on the
// partition generated by the map's breakpoints and the orbits of its
// discontinuity seeds. Requires those orbits to be finite.
PiecewiseConstantFn solve_density_exact(const PiecewiseAffineMap& map);
PiecewiseConstantFn solve_density_exact(const PiecewiseAffineMap& map, const OrbitOptions& opts);

struct RenyiParryResult {
    PiecewiseConstantFn f;
    bool exact = false;
};

// Density of the classical beta-transformation invariant measure,
// proportional to sum_n beta^-n 1_{[0, T^n(1))}; exact when the orbit
// of 1 terminates or cycles, truncated at max_rank otherwise.
RenyiParryResult renyi_parry_density(const FieldElem& beta, int max_rank);

}  // namespace altbase
