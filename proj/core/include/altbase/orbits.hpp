#pragma once

#include <optional>
#include <vector>

#include "altbase/maps.hpp"

namespace altbase {

enum class OrbitStatus {
    Terminated,          // hit exact 0 (all later iterates are 0)
    EventuallyPeriodic,  // certified by exact equality of two iterates
    DiagnosedInfinite,   // denominator blow-up argument or bit bound
    Truncated,           // max_iter reached without a verdict
};

enum class InfiniteReason {
    DenominatorBlowup,  // two-factor rational composition, z > 1
    DenominatorGrowth,  // denominator bit-length exceeded the bound
};

struct OrbitReport {
    std::vector<FieldElem> points;  // as visited, starting at T(seed)
    OrbitStatus status = OrbitStatus::Truncated;
    int preperiod = 0;  // EventuallyPeriodic only
    int period = 0;
    std::optional<InfiniteReason> reason;
    std::optional<Int> z;  // blow-up factor, when diagnosed by the lemma

    bool finite() const {
        return status == OrbitStatus::Terminated || status == OrbitStatus::EventuallyPeriodic;
    }
};

struct OrbitOptions {
    int max_iter = 1000;
    unsigned long max_denominator_bits = 4096;  // overridable via ALTBASE_MAX_BITS
};

unsigned long default_max_denominator_bits();

// Forward orbit of the left limit at 1 (the first density discontinuity).
OrbitReport orbit_of_one(const PiecewiseAffineMap& map, int max_iter);
OrbitReport orbit_of_one(const PiecewiseAffineMap& map, const OrbitOptions& opts);

// Forward orbit seeded at an arbitrary point of [0,1).
OrbitReport orbit_of_point(const PiecewiseAffineMap& map, const FieldElem& x0, int max_iter);
OrbitReport orbit_of_point(const PiecewiseAffineMap& map, const FieldElem& x0,
                           const OrbitOptions& opts);

struct Lemma41Result {
    bool infinite = false;
    Int z;  // denominator blow-up factor of p1/q2 in lowest terms
};

// Denominator blow-up test for the orbit of 1 under T_{b1∘b2} (apply b2
// first): infinite iff z = den(b2)/gcd(num(b1), den(b2)) > 1.
Lemma41Result lemma41_diagnosis(const Rational& beta1, const Rational& beta2);

// Distinct image heights of the non-full branches; each is a seed whose
// orbit may carry a density discontinuity.
std::vector<FieldElem> discontinuity_seeds(const PiecewiseAffineMap& map);

}  // namespace altbase
