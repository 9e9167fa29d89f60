#pragma once

#include <optional>
#include <vector>

#include "altbase/density.hpp"

namespace altbase {

// Invariant measure of the skew product as p weighted component
// densities; component i is invariant for the composition of the bases
// rotated to start at level i.
struct MeasureComponent {
    int level = 0;
    PiecewiseAffineMap map;
    PiecewiseConstantFn density;
    Rational weight;  // 1/p
};

struct MeasureSpec {
    std::vector<MeasureComponent> components;
};

MeasureSpec build_measure(const AltBaseSystem& system);
MeasureSpec build_measure(const AltBaseSystem& system, const OrbitOptions& opts);

enum class VerdictReason { ClosedForm, ExactDensityComparison };

struct CoincidenceWitness {
    int level = 0;
    FieldElem point, lhs, rhs;  // the two density values at the point
};

struct CoincidenceVerdict {
    bool equal = false;
    VerdictReason reason = VerdictReason::ClosedForm;
    std::optional<CoincidenceWitness> witness;
};

// Measure coincidence for (beta, n) vs (beta2, m) by the theorem's
// closed form: equal iff both bases are integers, or
// beta = beta2 = p/q non-integer rational with q | n and q | m, or the
// two systems are literally identical.
CoincidenceVerdict decide_coincidence_closed_form(const FieldElem& beta, long n,
                                                  const FieldElem& beta2, long m);

// Independent route: exact cell-by-cell comparison of both component
// densities. Throws OrbitNotFinite when a component density is not
// exactly computable.
CoincidenceVerdict decide_coincidence_exact(const FieldElem& beta, long n,
                                            const FieldElem& beta2, long m);

// Same comparison for two general period-2 systems (all bases > 1).
CoincidenceVerdict compare_general_pair(const FieldElem& beta1, const FieldElem& beta2,
                                        const FieldElem& beta3, const FieldElem& beta4);

struct SearchSystem {
    FieldElem base1, base2;
};

// Systems found to share the skew-product invariant measure, grouped by
// measure; only groups with at least two systems are reported, in a
// deterministic order.
using CoincidenceGroup = std::vector<SearchSystem>;

// Enumerates period-2 systems (b1, b2) with b1 a non-integer rational
// with numerator <= p_max and denominator <= den_max, and b2 either an
// integer in [2, n_max] or such a rational; systems whose discontinuity
// orbits cannot be certified finite are skipped.
std::vector<CoincidenceGroup> coincidence_search(long p_max, long den_max, long n_max,
                                                 int jobs = 1);

}  // namespace altbase
