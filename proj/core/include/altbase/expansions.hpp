#pragma once

#include <vector>

#include "altbase/maps.hpp"

namespace altbase {

// Finite prefix of a greedy alternate-base digit expansion. Digit a_n
// lies in {0, ..., ceil(beta_{(start_level+n) mod p}) - 1}.
struct DigitString {
    std::vector<Int> digits;
    AltBaseSystem system;
    int start_level = 0;
};

// Generates `count` greedy digits of x by iterating the skew product:
// a_n = floor(beta_level * point) at each step.
DigitString greedy_digits(const AltBaseSystem& system, const FieldElem& x, int count);

struct Reconstruction {
    FieldElem value;       // partial sum of a_n / prod_{k<=n} beta_k
    Rational error_bound;  // rational upper bound on 1 / prod beta_k
};

// Exact partial sum with a certified tail bound: |x - value| <= error_bound.
Reconstruction reconstruct(const DigitString& ds);

}  // namespace altbase
