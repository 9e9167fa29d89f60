#pragma once

#include <cstddef>
#include <vector>

#include "altbase/field_elem.hpp"

namespace altbase {

// One affine branch x -> slope*x + intercept on [lo, hi), mapping it
// onto [0, image_hi). Every branch image of a mod-1 composition starts
// at 0, i.e. slope*lo + intercept = 0 exactly.
struct AffineBranch {
    FieldElem lo, hi;
    FieldElem slope, intercept;
    FieldElem image_hi;

    bool full() const { return image_hi == FieldElem(1); }
    FieldElem apply(const FieldElem& x) const { return slope * x + intercept; }
    FieldElem invert(const FieldElem& y) const { return (y - intercept) / slope; }
};

// A piecewise affine mod-1 map of constant slope on [0,1): the
// beta-transformations T_beta and their compositions. Branch intervals
// partition [0,1) exactly and are right-open; the value at 1 exists
// only as the left limit exposed by eval_at_one().
//
// Factor order convention: factors (f1, f2, ...) means "apply f1
// first", so the paper-style composition T_{b∘n} = T_b after T_n is
// compose({n, b}).
class PiecewiseAffineMap {
public:
    static PiecewiseAffineMap beta_map(const FieldElem& beta);
    static PiecewiseAffineMap compose(const std::vector<FieldElem>& factors);

    const std::vector<AffineBranch>& branches() const { return branches_; }
    const FieldElem& slope() const { return slope_; }
    const std::vector<FieldElem>& factors() const { return factors_; }

    std::size_t branch_index(const FieldElem& x) const;  // requires 0 <= x < 1
    FieldElem eval(const FieldElem& x) const;
    FieldElem eval_at_one() const;  // image_hi of the last branch

private:
    PiecewiseAffineMap() = default;
    static PiecewiseAffineMap compose_two(const PiecewiseAffineMap& first,
                                          const PiecewiseAffineMap& then);
    void check_invariants() const;

    std::vector<AffineBranch> branches_;
    FieldElem slope_;
    std::vector<FieldElem> factors_;
};

struct AltBaseSystem {
    std::vector<FieldElem> bases;  // each > 1, applied cyclically
    int period() const { return static_cast<int>(bases.size()); }
};

struct SkewState {
    int level = 0;
    FieldElem point;
};

// One step of the skew product K: advance the level mod p and apply the
// level's base map to the point.
SkewState skew_step(const AltBaseSystem& system, const SkewState& state);

}  // namespace altbase
