#include "altbase/measures.hpp"

#include <algorithm>
#include <map>
#include <string>
#include <thread>

namespace altbase {

namespace {

std::vector<FieldElem> rotated_bases(const AltBaseSystem& system, int start) {
    std::vector<FieldElem> out;
    const int p = system.period();
    for (int i = 0; i < p; ++i) out.push_back(system.bases[static_cast<std::size_t>((start + i) % p)]);
    return out;
}

}  // namespace

MeasureSpec build_measure(const AltBaseSystem& system) {
    return build_measure(system, OrbitOptions{1000, default_max_denominator_bits()});
}

MeasureSpec build_measure(const AltBaseSystem& system, const OrbitOptions& opts) {
    MeasureSpec spec;
    const int p = system.period();
    for (int level = 0; level < p; ++level) {
        PiecewiseAffineMap map = PiecewiseAffineMap::compose(rotated_bases(system, level));
        PiecewiseConstantFn density;
        try {
            density = solve_density_exact(map, opts);
        } catch (const Error& e) {
            if (e.code() == ErrorCode::OrbitNotFinite)
                throw Error(ErrorCode::OrbitNotFinite,
                            "level " + std::to_string(level) + " composition: " + e.what());
            throw;
        }
        spec.components.push_back(
            MeasureComponent{level, std::move(map), std::move(density), Rational(1, p)});
    }
    return spec;
}

namespace {

CoincidenceVerdict compare_measures(const MeasureSpec& a, const MeasureSpec& b) {
    CoincidenceVerdict v;
    v.reason = VerdictReason::ExactDensityComparison;
    for (std::size_t i = 0; i < a.components.size(); ++i) {
        auto diff = first_difference(a.components[i].density, b.components[i].density);
        if (diff) {
            v.equal = false;
            v.witness = CoincidenceWitness{a.components[i].level, diff->point, diff->lhs, diff->rhs};
            return v;
        }
    }
    v.equal = true;
    return v;
}

}  // namespace

CoincidenceVerdict decide_coincidence_closed_form(const FieldElem& beta, long n,
                                                  const FieldElem& beta2, long m) {
    CoincidenceVerdict v;
    v.reason = VerdictReason::ClosedForm;
    if (beta.is_integer() && beta2.is_integer()) {
        v.equal = true;  // all four component measures are Lebesgue
        return v;
    }
    if (!identical(beta, beta2)) {
        v.equal = false;
        return v;
    }
    if (beta.is_rational()) {
        // beta = beta2 = p/q non-integer: equal iff q | n and q | m.
        const Int& q = beta.rat().get_den();
        v.equal = (Int(n) % q == 0) && (Int(m) % q == 0);
    } else {
        // Irrational: only the literally identical pair coincides.
        v.equal = (n == m);
    }
    return v;
}

CoincidenceVerdict decide_coincidence_exact(const FieldElem& beta, long n,
                                            const FieldElem& beta2, long m) {
    MeasureSpec a = build_measure(AltBaseSystem{{beta, FieldElem(n)}});
    MeasureSpec b = build_measure(AltBaseSystem{{beta2, FieldElem(m)}});
    return compare_measures(a, b);
}

CoincidenceVerdict compare_general_pair(const FieldElem& beta1, const FieldElem& beta2,
                                        const FieldElem& beta3, const FieldElem& beta4) {
    MeasureSpec a = build_measure(AltBaseSystem{{beta1, beta2}});
    MeasureSpec b = build_measure(AltBaseSystem{{beta3, beta4}});
    return compare_measures(a, b);
}

namespace {

std::string density_key(const PiecewiseConstantFn& f) {
    std::string key;
    for (std::size_t i = 0; i < f.values.size(); ++i)
        key += f.breakpoints[i].str() + ":" + f.values[i].str() + ";";
    return key;
}

std::optional<std::string> measure_key(const SearchSystem& sys, const OrbitOptions& opts) {
    try {
        MeasureSpec spec = build_measure(AltBaseSystem{{sys.base1, sys.base2}}, opts);
        std::string key;
        for (const MeasureComponent& c : spec.components) key += density_key(c.density) + "|";
        return key;
    } catch (const Error& e) {
        if (e.code() == ErrorCode::OrbitNotFinite) return std::nullopt;
        throw;
    }
}

}  // namespace

std::vector<CoincidenceGroup> coincidence_search(long p_max, long den_max, long n_max, int jobs) {
    if (p_max < 2 || den_max < 2 || n_max < 2)
        throw Error(ErrorCode::PointOutOfRange, "search bounds must be >= 2");

    std::vector<FieldElem> rationals;  // non-integer, > 1
    for (long den = 2; den <= den_max; ++den) {
        for (long num = den + 1; num <= p_max; ++num) {
            Rational q(num, den);
            q.canonicalize();
            if (q.get_den() == 1) continue;
            FieldElem e{q};
            bool dup = false;
            for (const FieldElem& r : rationals)
                if (r == e) dup = true;
            if (!dup) rationals.push_back(e);
        }
    }
    std::vector<FieldElem> seconds;
    for (long n = 2; n <= n_max; ++n) seconds.push_back(FieldElem(n));
    seconds.insert(seconds.end(), rationals.begin(), rationals.end());

    std::vector<SearchSystem> systems;
    for (const FieldElem& b1 : rationals)
        for (const FieldElem& b2 : seconds) systems.push_back(SearchSystem{b1, b2});

    const OrbitOptions opts{500, 2048};
    std::vector<std::optional<std::string>> keys(systems.size());
    if (jobs <= 1) {
        for (std::size_t i = 0; i < systems.size(); ++i) keys[i] = measure_key(systems[i], opts);
    } else {
        std::vector<std::thread> workers;
        std::size_t per = (systems.size() + static_cast<std::size_t>(jobs) - 1) /
                          static_cast<std::size_t>(jobs);
        for (int w = 0; w < jobs; ++w) {
            std::size_t lo = static_cast<std::size_t>(w) * per;
            std::size_t hi = std::min(systems.size(), lo + per);
            if (lo >= hi) break;
            workers.emplace_back([&, lo, hi] {
                for (std::size_t i = lo; i < hi; ++i) keys[i] = measure_key(systems[i], opts);
            });
        }
        for (std::thread& t : workers) t.join();
    }

    // Group by exact measure signature, in enumeration order.
    std::map<std::string, std::size_t> group_of;
    std::vector<CoincidenceGroup> groups;
    for (std::size_t i = 0; i < systems.size(); ++i) {
        if (!keys[i]) continue;
        auto [it, inserted] = group_of.emplace(*keys[i], groups.size());
        if (inserted) groups.emplace_back();
        groups[it->second].push_back(systems[i]);
    }
    std::vector<CoincidenceGroup> coincident;
    for (CoincidenceGroup& g : groups)
        if (g.size() >= 2) coincident.push_back(std::move(g));
    return coincident;
}

}  // namespace altbase
