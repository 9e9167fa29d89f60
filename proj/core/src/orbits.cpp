#include "altbase/orbits.hpp"

#include <cstdlib>
#include <map>

namespace altbase {

namespace {

const FieldElem kZero(0);
const FieldElem kOne(1);

struct FieldElemLess {
    bool operator()(const FieldElem& a, const FieldElem& b) const { return a < b; }
};

// Blow-up factor applicable to this map's orbits: for a two-factor
// all-rational composition T_{b1∘b2} this is the z of the denominator
// lemma; for a single rational factor p/q the same argument applies
// with z = q. Otherwise 0 (no shortcut).
Int blowup_factor(const PiecewiseAffineMap& map) {
    const auto& fs = map.factors();
    if (fs.size() == 1 && fs[0].is_rational()) return fs[0].rat().get_den();
    if (fs.size() == 2 && fs[0].is_rational() && fs[1].is_rational()) {
        Int p1 = fs[1].rat().get_num();  // outer factor
        Int q2 = fs[0].rat().get_den();  // inner factor
        Int g;
        mpz_gcd(g.get_mpz_t(), p1.get_mpz_t(), q2.get_mpz_t());
        return q2 / g;
    }
    return 0;
}

OrbitReport classify(const PiecewiseAffineMap& map, FieldElem pt, const OrbitOptions& opts) {
    OrbitReport rep;
    Int z = blowup_factor(map);
    std::map<FieldElem, int, FieldElemLess> seen;
    for (int i = 0; i < opts.max_iter; ++i) {
        auto it = seen.find(pt);
        if (it != seen.end()) {
            rep.status = OrbitStatus::EventuallyPeriodic;
            rep.preperiod = it->second;
            rep.period = i - it->second;
            return rep;
        }
        seen.emplace(pt, i);
        rep.points.push_back(pt);
        if (pt.is_zero()) {
            rep.status = OrbitStatus::Terminated;
            return rep;
        }
        if (pt == kOne) {
            // Only reachable as the full-endpoint limit T(1) = 1; fixed
            // under the limit convention.
            rep.status = OrbitStatus::EventuallyPeriodic;
            rep.preperiod = i;
            rep.period = 1;
            return rep;
        }
        if (pt.is_rational()) {
            if (z > 1) {
                Int g;
                mpz_gcd(g.get_mpz_t(), pt.rat().get_num().get_mpz_t(), z.get_mpz_t());
                if (g == 1) {
                    rep.status = OrbitStatus::DiagnosedInfinite;
                    rep.reason = InfiniteReason::DenominatorBlowup;
                    rep.z = z;
                    return rep;
                }
            }
            if (mpz_sizeinbase(pt.rat().get_den().get_mpz_t(), 2) > opts.max_denominator_bits) {
                rep.status = OrbitStatus::DiagnosedInfinite;
                rep.reason = InfiniteReason::DenominatorGrowth;
                return rep;
            }
        }
        pt = map.eval(pt);
    }
    rep.status = OrbitStatus::Truncated;
    return rep;
}

}  // namespace

unsigned long default_max_denominator_bits() {
    if (const char* env = std::getenv("ALTBASE_MAX_BITS")) {
        char* end = nullptr;
        unsigned long v = std::strtoul(env, &end, 10);
        if (end != env && v > 0) return v;
    }
    return 4096;
}

OrbitReport orbit_of_one(const PiecewiseAffineMap& map, const OrbitOptions& opts) {
    if (opts.max_iter < 1) throw Error(ErrorCode::PointOutOfRange, "max_iter must be >= 1");
    return classify(map, map.eval_at_one(), opts);
}

OrbitReport orbit_of_one(const PiecewiseAffineMap& map, int max_iter) {
    return orbit_of_one(map, OrbitOptions{max_iter, default_max_denominator_bits()});
}

OrbitReport orbit_of_point(const PiecewiseAffineMap& map, const FieldElem& x0,
                           const OrbitOptions& opts) {
    if (x0 < kZero || x0 >= kOne) throw Error(ErrorCode::PointOutOfRange, "seed outside [0,1)");
    return classify(map, map.eval(x0), opts);
}

OrbitReport orbit_of_point(const PiecewiseAffineMap& map, const FieldElem& x0, int max_iter) {
    return orbit_of_point(map, x0, OrbitOptions{max_iter, default_max_denominator_bits()});
}

Lemma41Result lemma41_diagnosis(const Rational& beta1, const Rational& beta2) {
    Rational b1 = beta1, b2 = beta2;
    b1.canonicalize();
    b2.canonicalize();
    Int g;
    mpz_gcd(g.get_mpz_t(), b1.get_num().get_mpz_t(), b2.get_den().get_mpz_t());
    Lemma41Result r;
    r.z = b2.get_den() / g;
    r.infinite = r.z > 1;
    return r;
}

std::vector<FieldElem> discontinuity_seeds(const PiecewiseAffineMap& map) {
    std::vector<FieldElem> seeds;
    for (const AffineBranch& b : map.branches()) {
        if (b.full()) continue;
        bool dup = false;
        for (const FieldElem& s : seeds)
            if (s == b.image_hi) dup = true;
        if (!dup) seeds.push_back(b.image_hi);
    }
    return seeds;
}

}  // namespace altbase
