#include "altbase/density.hpp"

#include <algorithm>
#include <map>

namespace altbase {

namespace {

const FieldElem kZero(0);
const FieldElem kOne(1);

struct FieldElemLess {
    bool operator()(const FieldElem& a, const FieldElem& b) const { return a < b; }
};

using WeightMap = std::map<FieldElem, FieldElem, FieldElemLess>;  // height -> weight
using CountMap = std::map<FieldElem, Int, FieldElemLess>;         // height -> multiplicity

Rational rational_upper_bound(const FieldElem& x) {
    if (x.is_rational()) return x.rat();
    Int scale = Int(1) << 64;
    Int fl = (x * FieldElem(scale)).floor();
    Rational r(fl + 1, scale);
    r.canonicalize();
    return r;
}

// base + sum of w_h * 1_{[0,h)} as a step function.
PiecewiseConstantFn from_indicators(const FieldElem& base, const WeightMap& weights) {
    std::vector<FieldElem> bps;
    bps.push_back(kZero);
    for (const auto& [h, w] : weights) {
        if (h > kZero && h < kOne) bps.push_back(h);
    }
    bps.push_back(kOne);
    PiecewiseConstantFn f;
    f.breakpoints = bps;
    for (std::size_t i = 0; i + 1 < bps.size(); ++i) {
        FieldElem v = base;
        for (const auto& [h, w] : weights) {
            if (h >= bps[i + 1]) v = v + w;  // 1_{[0,h)} covers the cell iff h >= cell hi
        }
        f.values.push_back(v);
    }
    return f;
}

std::vector<FieldElem> merge_breakpoints(const PiecewiseConstantFn& f,
                                         const PiecewiseConstantFn& g) {
    std::vector<FieldElem> bps = f.breakpoints;
    bps.insert(bps.end(), g.breakpoints.begin(), g.breakpoints.end());
    std::sort(bps.begin(), bps.end());
    bps.erase(std::unique(bps.begin(), bps.end()), bps.end());
    return bps;
}

}  // namespace

FieldElem PiecewiseConstantFn::integral() const {
    FieldElem acc(0);
    for (std::size_t i = 0; i < values.size(); ++i)
        acc = acc + values[i] * (breakpoints[i + 1] - breakpoints[i]);
    return acc;
}

FieldElem PiecewiseConstantFn::value_at(const FieldElem& x) const {
    if (x < kZero || x >= kOne) throw Error(ErrorCode::PointOutOfRange, "point outside [0,1)");
    std::size_t lo = 0, hi = breakpoints.size() - 1;
    while (hi - lo > 1) {
        std::size_t mid = (lo + hi) / 2;
        if (breakpoints[mid] <= x)
            lo = mid;
        else
            hi = mid;
    }
    return values[lo];
}

PiecewiseConstantFn PiecewiseConstantFn::normalized() const {
    FieldElem mass = integral();
    if (mass.is_zero()) throw Error(ErrorCode::NoPositiveFixedPoint, "cannot normalize zero function");
    PiecewiseConstantFn f = *this;
    FieldElem inv = mass.inverse();
    for (FieldElem& v : f.values) v = v * inv;
    return f;
}

PiecewiseConstantFn PiecewiseConstantFn::merged() const {
    PiecewiseConstantFn f;
    f.breakpoints.push_back(breakpoints.front());
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (!f.values.empty() && f.values.back() == values[i]) continue;  // fuse
        if (!f.values.empty()) f.breakpoints.push_back(breakpoints[i]);
        f.values.push_back(values[i]);
    }
    f.breakpoints.push_back(breakpoints.back());
    return f;
}

PiecewiseConstantFn step_function(std::vector<FieldElem> breakpoints,
                                  std::vector<FieldElem> values) {
    if (breakpoints.size() != values.size() + 1 || breakpoints.front() != kZero ||
        breakpoints.back() != kOne)
        throw Error(ErrorCode::Internal, "malformed step function");
    for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i)
        if (breakpoints[i] >= breakpoints[i + 1])
            throw Error(ErrorCode::Internal, "breakpoints not strictly increasing");
    return PiecewiseConstantFn{std::move(breakpoints), std::move(values)};
}

bool same_function(const PiecewiseConstantFn& f, const PiecewiseConstantFn& g) {
    return !first_difference(f, g).has_value();
}

std::optional<FnMismatch> first_difference(const PiecewiseConstantFn& f,
                                           const PiecewiseConstantFn& g) {
    std::vector<FieldElem> bps = merge_breakpoints(f, g);
    for (std::size_t i = 0; i + 1 < bps.size(); ++i) {
        FieldElem a = f.value_at(bps[i]);
        FieldElem b = g.value_at(bps[i]);
        if (a != b) return FnMismatch{bps[i], a, b};
    }
    return std::nullopt;
}

PiecewiseConstantFn apply_transfer(const PiecewiseAffineMap& map, const PiecewiseConstantFn& f) {
    std::vector<FieldElem> bps;
    bps.push_back(kZero);
    bps.push_back(kOne);
    for (const AffineBranch& b : map.branches()) {
        if (!b.full()) bps.push_back(b.image_hi);
        for (const FieldElem& t : f.breakpoints) {
            if (t > b.lo && t < b.hi) bps.push_back(b.apply(t));
        }
    }
    std::sort(bps.begin(), bps.end());
    bps.erase(std::unique(bps.begin(), bps.end()), bps.end());

    FieldElem inv_slope = map.slope().inverse();
    PiecewiseConstantFn out;
    out.breakpoints = bps;
    for (std::size_t i = 0; i + 1 < bps.size(); ++i) {
        FieldElem mid = (bps[i] + bps[i + 1]) / FieldElem(2);
        FieldElem v(0);
        for (const AffineBranch& b : map.branches()) {
            if (mid < b.image_hi) v = v + f.value_at(b.invert(mid));
        }
        out.values.push_back(inv_slope * v);
    }
    return out;
}

namespace {

std::vector<FundamentalInterval> children_of(const PiecewiseAffineMap& map,
                                             const FundamentalInterval& parent,
                                             bool nonfull_only) {
    // T^rank maps [lo,hi) affinely onto [0, image_hi) with left endpoint
    // to 0, so the restricted map is x -> slope^rank (x - lo).
    FieldElem s = map.slope().pow(parent.rank);
    FieldElem inv_s = s.inverse();
    std::vector<FundamentalInterval> out;
    for (const AffineBranch& b : map.branches()) {
        if (b.lo >= parent.image_hi) break;
        bool cut = b.hi > parent.image_hi;
        FundamentalInterval child;
        child.rank = parent.rank + 1;
        child.lo = parent.lo + b.lo * inv_s;
        child.hi = parent.lo + (cut ? parent.image_hi : b.hi) * inv_s;
        child.image_hi = cut ? b.apply(parent.image_hi) : b.image_hi;
        child.full = !cut && b.full();
        if (!nonfull_only || !child.full) out.push_back(std::move(child));
    }
    return out;
}

std::vector<FundamentalInterval> rank_one_intervals(const PiecewiseAffineMap& map) {
    std::vector<FundamentalInterval> out;
    for (const AffineBranch& b : map.branches())
        out.push_back(FundamentalInterval{b.lo, b.hi, 1, b.image_hi, b.full()});
    return out;
}

}  // namespace

Refinement refine(const PiecewiseAffineMap& map, int k) {
    if (k < 1) throw Error(ErrorCode::PointOutOfRange, "rank must be >= 1");
    std::vector<FundamentalInterval> all = rank_one_intervals(map);
    std::vector<FundamentalInterval> chain;  // D_r for the current rank r
    for (const FundamentalInterval& iv : all)
        if (!iv.full) chain.push_back(iv);
    for (int r = 2; r <= k; ++r) {
        std::vector<FundamentalInterval> next_all;
        for (const FundamentalInterval& iv : all) {
            auto ch = children_of(map, iv, false);
            next_all.insert(next_all.end(), ch.begin(), ch.end());
        }
        all = std::move(next_all);
        std::vector<FundamentalInterval> next_chain;
        for (const FundamentalInterval& iv : chain) {
            auto ch = children_of(map, iv, true);
            next_chain.insert(next_chain.end(), ch.begin(), ch.end());
        }
        chain = std::move(next_chain);
    }
    return Refinement{std::move(all), std::move(chain)};
}

Dk10Result dk10_density(const PiecewiseAffineMap& map, int max_rank, double tail_threshold) {
    if (max_rank < 1) throw Error(ErrorCode::PointOutOfRange, "max_rank must be >= 1");
    const FieldElem& slope = map.slope();
    FieldElem inv_slope = slope.inverse();

    // Heights of D_k with multiplicities; the intervals themselves are
    // irrelevant to phi, only the images [0, height) and counts matter.
    CountMap counts;
    for (const AffineBranch& b : map.branches())
        if (!b.full()) counts[b.image_hi] += 1;

    WeightMap acc;  // accumulated sum over ranks of count * slope^-k
    bool exact = false;
    FieldElem weight = inv_slope;  // slope^-k for the current rank
    CountMap prev;
    int rank = 1;
    for (;; ++rank) {
        if (counts.empty()) {
            exact = true;
            break;
        }
        for (const auto& [h, c] : counts) acc[h] = acc[h] + FieldElem(Rational(c)) * weight;

        // Self-similarity: same height set as the previous rank with a
        // uniform multiplicity ratio rho; then the remaining ranks form
        // a geometric series summed in closed form.
        if (!prev.empty() && prev.size() == counts.size()) {
            bool same_keys = true;
            auto it1 = prev.begin();
            auto it2 = counts.begin();
            for (; it1 != prev.end(); ++it1, ++it2)
                if (it1->first != it2->first) same_keys = false;
            if (same_keys) {
                Rational rho(counts.begin()->second, prev.begin()->second);
                rho.canonicalize();
                bool uniform = true;
                for (it1 = prev.begin(), it2 = counts.begin(); it1 != prev.end(); ++it1, ++it2) {
                    if (Rational(it2->second) != rho * Rational(it1->second)) uniform = false;
                }
                if (uniform) {
                    FieldElem rho_f{Rational(rho)};
                    if (rho_f >= slope)
                        throw Error(ErrorCode::TailNotConvergent,
                                    "non-full interval count grows as fast as the slope");
                    // sum_{j>=1} count * slope^-(rank+j) * rho^j
                    FieldElem geom = rho_f / (slope - rho_f);
                    for (const auto& [h, c] : counts)
                        acc[h] = acc[h] + FieldElem(Rational(c)) * weight * geom;
                    exact = true;
                    break;
                }
            }
        }
        if (rank == max_rank) break;

        CountMap next;
        for (const auto& [h, c] : counts) {
            for (const AffineBranch& b : map.branches()) {
                if (b.lo >= h) break;
                bool cut = b.hi > h;
                if (!cut && b.full()) continue;
                next[cut ? b.apply(h) : b.image_hi] += c;
            }
        }
        prev = std::move(counts);
        counts = std::move(next);
        weight = weight * inv_slope;
    }

    PiecewiseConstantFn phi = from_indicators(kOne, acc);
    Dk10Result res;
    res.f = phi.normalized().merged();
    res.exact = exact;
    if (exact) {
        res.tail = Rational(0);
    } else {
        // Residual proxy: integral of the last computed phi_k times the
        // crude geometric envelope slope/(slope-1).
        FieldElem last_mass(0);
        for (const auto& [h, c] : counts) last_mass = last_mass + FieldElem(Rational(c)) * weight * h;
        FieldElem proxy = last_mass * slope / (slope - kOne);
        res.tail = rational_upper_bound(proxy);
        if (res.tail.get_d() > tail_threshold)
            throw Error(ErrorCode::TailNotConvergent, "residual proxy exceeds threshold");
    }
    return res;
}

PiecewiseConstantFn closed_form_density(long p, long q, long k) {
    if (q <= 1 || p <= q) throw Error(ErrorCode::QNotLessThanP, "need p > q > 1");
    if (k < 1) throw Error(ErrorCode::PointOutOfRange, "need k >= 1");
    Int g;
    Int pz(p), qz(q);
    mpz_gcd(g.get_mpz_t(), pz.get_mpz_t(), qz.get_mpz_t());
    if (g != 1) throw Error(ErrorCode::NotCoprime, "p and q must be coprime");
    long r = p % q;  // 1 <= r <= q-1 since gcd(p,q)=1 and q > 1
    PiecewiseConstantFn f;
    f.breakpoints = {kZero, FieldElem(r, q), kOne};
    f.values = {FieldElem(p - r + q, p), FieldElem(p - r, p)};
    return f;
}

PiecewiseConstantFn solve_density_exact(const PiecewiseAffineMap& map) {
    return solve_density_exact(map, OrbitOptions{1000, default_max_denominator_bits()});
}

PiecewiseConstantFn solve_density_exact(const PiecewiseAffineMap& map, const OrbitOptions& opts) {
    // Partition generated by {0,1}, the map's breakpoints, and the
    // orbits of all non-full image heights; closed under the map, so the
    // transfer operator acts on step functions over it as a matrix.
    std::vector<FieldElem> pts;
    pts.push_back(kZero);
    pts.push_back(kOne);
    for (const AffineBranch& b : map.branches()) pts.push_back(b.lo);
    for (const FieldElem& seed : discontinuity_seeds(map)) {
        pts.push_back(seed);
        OrbitReport rep = orbit_of_point(map, seed, opts);
        if (!rep.finite())
            throw Error(ErrorCode::OrbitNotFinite,
                        "discontinuity orbit of " + seed.str() + " not certified finite");
        for (const FieldElem& x : rep.points)
            if (x > kZero && x < kOne) pts.push_back(x);
    }
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

    const std::size_t n = pts.size() - 1;  // cells
    auto index_of = [&pts](const FieldElem& x) -> std::size_t {
        auto it = std::lower_bound(pts.begin(), pts.end(), x);
        if (it == pts.end() || *it != x)
            throw Error(ErrorCode::Internal, "partition not closed under the map");
        return static_cast<std::size_t>(it - pts.begin());
    };

    // A[i][j] = coefficient of cell i in L(1_{cell j}).
    FieldElem inv_slope = map.slope().inverse();
    std::vector<std::vector<FieldElem>> A(n, std::vector<FieldElem>(n, kZero));
    for (const AffineBranch& b : map.branches()) {
        std::size_t jlo = index_of(b.lo);
        std::size_t jhi = index_of(b.hi);
        for (std::size_t j = jlo; j < jhi; ++j) {
            std::size_t ilo = index_of(b.apply(pts[j]));
            std::size_t ihi = index_of(b.apply(pts[j + 1]));
            for (std::size_t i = ilo; i < ihi; ++i) A[i][j] = A[i][j] + inv_slope;
        }
    }

    // Nullspace of (A - I) by exact Gaussian elimination.
    for (std::size_t i = 0; i < n; ++i) A[i][i] = A[i][i] - kOne;
    std::vector<long> pivot_row_of_col(n, -1);
    std::size_t row = 0;
    for (std::size_t col = 0; col < n && row < n; ++col) {
        std::size_t piv = row;
        while (piv < n && A[piv][col].is_zero()) ++piv;
        if (piv == n) continue;
        std::swap(A[piv], A[row]);
        FieldElem inv = A[row][col].inverse();
        for (std::size_t c = col; c < n; ++c) A[row][c] = A[row][c] * inv;
        for (std::size_t r = 0; r < n; ++r) {
            if (r == row || A[r][col].is_zero()) continue;
            FieldElem factor = A[r][col];
            for (std::size_t c = col; c < n; ++c) A[r][c] = A[r][c] - factor * A[row][c];
        }
        pivot_row_of_col[col] = static_cast<long>(row);
        ++row;
    }
    std::vector<std::size_t> free_cols;
    for (std::size_t col = 0; col < n; ++col)
        if (pivot_row_of_col[col] < 0) free_cols.push_back(col);
    if (free_cols.size() != 1)
        throw Error(ErrorCode::NoPositiveFixedPoint,
                    "fixed-point space does not have dimension 1");

    std::vector<FieldElem> x(n, kZero);
    std::size_t fc = free_cols[0];
    x[fc] = kOne;
    for (std::size_t col = 0; col < n; ++col) {
        long pr = pivot_row_of_col[col];
        if (pr >= 0) x[col] = -A[static_cast<std::size_t>(pr)][fc];
    }

    PiecewiseConstantFn f;
    f.breakpoints = pts;
    f.values = std::move(x);
    FieldElem mass = f.integral();
    if (mass.is_zero()) throw Error(ErrorCode::NoPositiveFixedPoint, "fixed vector has zero mass");
    if (mass.sign() < 0)
        for (FieldElem& v : f.values) v = -v;
    f = f.normalized();
    for (const FieldElem& v : f.values)
        if (v.sign() < 0)
            throw Error(ErrorCode::NoPositiveFixedPoint, "fixed vector changes sign");
    return f.merged();
}

RenyiParryResult renyi_parry_density(const FieldElem& beta, int max_rank) {
    PiecewiseAffineMap map = PiecewiseAffineMap::beta_map(beta);
    FieldElem inv_beta = beta.inverse();

    WeightMap acc;
    std::map<FieldElem, int, FieldElemLess> seen;  // point -> index
    std::vector<FieldElem> orbit;                  // T^n(1) for n = 0, 1, ...
    FieldElem pt = kOne;                           // T^0(1)
    FieldElem w = kOne;                            // beta^-n
    bool exact = false;
    for (int n = 0; n < max_rank; ++n) {
        if (pt.is_zero()) {
            exact = true;  // all later indicators are empty
            break;
        }
        auto it = seen.find(pt);
        if (it != seen.end()) {
            // Cycle of length L: the remaining mass is the cycle's
            // contribution scaled by sum_{m>=1} beta^{-mL} = 1/(beta^L - 1).
            int j = it->second;
            long len = n - j;
            FieldElem g = (beta.pow(len) - kOne).inverse();
            FieldElem wj = beta.pow(-static_cast<long>(j));
            FieldElem wc = wj;
            for (int i = j; i < n; ++i) {
                acc[orbit[static_cast<std::size_t>(i)]] =
                    acc[orbit[static_cast<std::size_t>(i)]] + wc * g;
                wc = wc * inv_beta;
            }
            exact = true;
            break;
        }
        seen.emplace(pt, n);
        orbit.push_back(pt);
        acc[pt] = acc[pt] + w;
        w = w * inv_beta;
        pt = (pt == kOne) ? map.eval_at_one() : map.eval(pt);
    }

    RenyiParryResult res;
    res.f = from_indicators(kZero, acc).normalized().merged();
    res.exact = exact;
    return res;
}

}  // namespace altbase
