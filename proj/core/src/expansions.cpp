#include "altbase/expansions.hpp"

namespace altbase {

DigitString greedy_digits(const AltBaseSystem& system, const FieldElem& x, int count) {
    if (x < FieldElem(0) || x >= FieldElem(1))
        throw Error(ErrorCode::PointOutOfRange, "expansion point outside [0,1)");
    DigitString ds;
    ds.system = system;
    ds.start_level = 0;
    SkewState state{0, x};
    const int p = system.period();
    for (int i = 0; i < count; ++i) {
        const FieldElem& beta = system.bases[static_cast<std::size_t>(state.level)];
        ds.digits.push_back((beta * state.point).floor());
        state = SkewState{(state.level + 1) % p, beta * state.point - FieldElem(ds.digits.back())};
    }
    return ds;
}

namespace {

// Smallest-effort rational upper bound on an exact value: exact for
// rationals, a 2^-64-tight dyadic cover for quadratics.
Rational rational_upper_bound(const FieldElem& x) {
    if (x.is_rational()) return x.rat();
    Int scale = Int(1) << 64;
    Int fl = (x * FieldElem(scale)).floor();
    Rational r(fl + 1, scale);
    r.canonicalize();
    return r;
}

}  // namespace

Reconstruction reconstruct(const DigitString& ds) {
    FieldElem value(0);
    FieldElem prod(1);
    const int p = ds.system.period();
    for (std::size_t n = 0; n < ds.digits.size(); ++n) {
        const FieldElem& beta =
            ds.system.bases[static_cast<std::size_t>((ds.start_level + static_cast<int>(n)) % p)];
        prod = prod * beta;
        value = value + FieldElem(ds.digits[n]) / prod;
    }
    return Reconstruction{value, rational_upper_bound(prod.inverse())};
}

}  // namespace altbase
