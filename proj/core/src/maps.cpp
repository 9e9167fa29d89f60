#include "altbase/maps.hpp"

#include <algorithm>

namespace altbase {

namespace {
const FieldElem kZero(0);
const FieldElem kOne(1);
}  // namespace

PiecewiseAffineMap PiecewiseAffineMap::beta_map(const FieldElem& beta) {
    if (beta <= kOne) throw Error(ErrorCode::BetaNotGreaterThanOne, "base must exceed 1");
    PiecewiseAffineMap m;
    m.slope_ = beta;
    m.factors_ = {beta};
    Int fl = beta.floor();
    FieldElem inv = beta.inverse();
    // Branch j covers [j/beta, (j+1)/beta) cap [0,1); the last branch is
    // non-full iff beta is not an integer.
    bool integral = (FieldElem(fl) == beta);
    Int last = integral ? fl - 1 : fl;
    for (Int j = 0; j <= last; ++j) {
        AffineBranch b;
        b.lo = FieldElem(j) * inv;
        bool is_last = (j == last);
        b.hi = is_last ? kOne : FieldElem(Int(j + 1)) * inv;
        b.slope = beta;
        b.intercept = FieldElem(Int(-j));
        b.image_hi = is_last ? (integral ? kOne : beta - FieldElem(fl)) : kOne;
        m.branches_.push_back(std::move(b));
    }
    m.check_invariants();
    return m;
}

PiecewiseAffineMap PiecewiseAffineMap::compose_two(const PiecewiseAffineMap& first,
                                                   const PiecewiseAffineMap& then) {
    PiecewiseAffineMap m;
    m.slope_ = first.slope_ * then.slope_;
    for (const AffineBranch& b1 : first.branches_) {
        // b1 maps its cell onto [0, e); pull the cells of `then` back
        // through it.
        const FieldElem& e = b1.image_hi;
        for (const AffineBranch& b2 : then.branches_) {
            if (b2.lo >= e) break;
            bool cut = b2.hi > e;
            FieldElem seg_hi = cut ? e : b2.hi;
            AffineBranch nb;
            nb.lo = b1.invert(b2.lo);
            nb.hi = b1.invert(seg_hi);
            nb.slope = b1.slope * b2.slope;
            nb.intercept = b2.slope * b1.intercept + b2.intercept;
            nb.image_hi = cut ? b2.apply(e) : b2.image_hi;
            m.branches_.push_back(std::move(nb));
        }
    }
    return m;
}

PiecewiseAffineMap PiecewiseAffineMap::compose(const std::vector<FieldElem>& factors) {
    if (factors.empty()) throw Error(ErrorCode::EmptyFactorList, "composition needs a factor");
    PiecewiseAffineMap m = beta_map(factors.front());
    for (std::size_t i = 1; i < factors.size(); ++i) {
        m = compose_two(m, beta_map(factors[i]));
    }
    m.factors_ = factors;
    m.check_invariants();
    return m;
}

void PiecewiseAffineMap::check_invariants() const {
    FieldElem cursor = kZero;
    for (const AffineBranch& b : branches_) {
        if (b.lo != cursor || b.hi <= b.lo)
            throw Error(ErrorCode::Internal, "branch intervals do not partition [0,1)");
        if (!(b.apply(b.lo).is_zero()))
            throw Error(ErrorCode::Internal, "branch image does not start at 0");
        cursor = b.hi;
    }
    if (cursor != kOne) throw Error(ErrorCode::Internal, "branches do not cover [0,1)");
}

std::size_t PiecewiseAffineMap::branch_index(const FieldElem& x) const {
    if (x < kZero || x >= kOne) throw Error(ErrorCode::PointOutOfRange, "point outside [0,1)");
    // Last branch whose lo <= x.
    std::size_t lo = 0, hi = branches_.size();
    while (hi - lo > 1) {
        std::size_t mid = (lo + hi) / 2;
        if (branches_[mid].lo <= x)
            lo = mid;
        else
            hi = mid;
    }
    return lo;
}

FieldElem PiecewiseAffineMap::eval(const FieldElem& x) const {
    return branches_[branch_index(x)].apply(x);
}

FieldElem PiecewiseAffineMap::eval_at_one() const { return branches_.back().image_hi; }

SkewState skew_step(const AltBaseSystem& system, const SkewState& state) {
    const int p = system.period();
    if (state.level < 0 || state.level >= p)
        throw Error(ErrorCode::PointOutOfRange, "skew level outside [0,p)");
    if (state.point < kZero || state.point >= kOne)
        throw Error(ErrorCode::PointOutOfRange, "skew point outside [0,1)");
    const FieldElem& beta = system.bases[static_cast<std::size_t>(state.level)];
    FieldElem y = beta * state.point;
    FieldElem next = y - FieldElem(y.floor());
    return SkewState{(state.level + 1) % p, next};
}

}  // namespace altbase
