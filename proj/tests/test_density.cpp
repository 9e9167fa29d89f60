#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <numeric>

#include "altbase/density.hpp"

using namespace altbase;

namespace {

PiecewiseConstantFn step(std::vector<FieldElem> bps, std::vector<FieldElem> vals) {
    return step_function(std::move(bps), std::move(vals));
}

}  // namespace

TEST_CASE("step function plumbing") {
    auto f = step({FieldElem(0), FieldElem(1, 2), FieldElem(1)},
                  {FieldElem(4, 3), FieldElem(2, 3)});
    CHECK(f.integral() == FieldElem(1));
    CHECK(f.value_at(FieldElem(0)) == FieldElem(4, 3));
    CHECK(f.value_at(FieldElem(1, 2)) == FieldElem(2, 3));
    CHECK(f.value_at(FieldElem(99, 100)) == FieldElem(2, 3));
    auto g = step({FieldElem(0), FieldElem(1, 3), FieldElem(1)}, {FieldElem(2), FieldElem(2)});
    CHECK(g.merged().values.size() == 1);
    CHECK(g.normalized().integral() == FieldElem(1));
    CHECK(same_function(g.merged(), step({FieldElem(0), FieldElem(1)}, {FieldElem(2)})));
    auto diff = first_difference(f, g.normalized());
    REQUIRE(diff.has_value());
    CHECK(f.value_at(diff->point) == diff->lhs);
}

TEST_CASE("refine counts for T_{(7/3)o3}") {
    auto m = PiecewiseAffineMap::compose({FieldElem(3), FieldElem(7, 3)});
    auto r1 = refine(m, 1);
    CHECK(r1.intervals.size() == 9);
    CHECK(r1.dk.size() == 3);
    auto r2 = refine(m, 2);
    CHECK(r2.dk.size() == 3);  // r*k^2*q with p=7, q=3, k=1, r=1
}

TEST_CASE("refine counts |D_2| = r k^2 q in general") {
    struct Case { long p, q, k; };
    for (const Case c : {Case{7, 3, 2}, Case{5, 2, 1}, Case{5, 2, 2}, Case{8, 3, 1}}) {
        auto m = PiecewiseAffineMap::compose({FieldElem(c.k * c.q), FieldElem(c.p, c.q)});
        long r = c.p % c.q;
        CHECK(refine(m, 1).dk.size() == static_cast<std::size_t>(c.k * c.q));
        CHECK(refine(m, 2).dk.size() == static_cast<std::size_t>(r * c.k * c.k * c.q));
    }
}

TEST_CASE("integer maps have empty D_k") {
    auto m = PiecewiseAffineMap::beta_map(FieldElem(4));
    for (int k = 1; k <= 3; ++k) CHECK(refine(m, k).dk.empty());
}

TEST_CASE("dk10 densities match the worked examples") {
    auto d1 = dk10_density(PiecewiseAffineMap::compose({FieldElem(3), FieldElem(7, 3)}), 20);
    CHECK(d1.exact);
    CHECK(same_function(d1.f, step({FieldElem(0), FieldElem(1, 3), FieldElem(1)},
                                   {FieldElem(9, 7), FieldElem(6, 7)})));

    auto d2 = dk10_density(PiecewiseAffineMap::compose({FieldElem(4, 3), FieldElem(3, 2)}), 20);
    CHECK(d2.exact);
    CHECK(same_function(d2.f, step({FieldElem(0), FieldElem(1, 2), FieldElem(1)},
                                   {FieldElem(4, 3), FieldElem(2, 3)})));

    auto d3 = dk10_density(PiecewiseAffineMap::compose({FieldElem(4, 3), FieldElem(9, 2)}), 20);
    CHECK(d3.exact);
    CHECK(same_function(d3.f, step({FieldElem(0), FieldElem(1, 2), FieldElem(1)},
                                   {FieldElem(8, 7), FieldElem(6, 7)})));
}

TEST_CASE("closed form density examples") {
    auto f = closed_form_density(7, 3, 1);
    CHECK(same_function(f, step({FieldElem(0), FieldElem(1, 3), FieldElem(1)},
                                {FieldElem(9, 7), FieldElem(6, 7)})));
    CHECK(same_function(closed_form_density(7, 3, 5), f));  // independent of k
    auto g = closed_form_density(5, 2, 1);
    CHECK(same_function(g, step({FieldElem(0), FieldElem(1, 2), FieldElem(1)},
                                {FieldElem(6, 5), FieldElem(4, 5)})));
    CHECK(g.integral() == FieldElem(1));
    CHECK_THROWS_AS(closed_form_density(6, 3, 1), Error);   // not coprime
    CHECK_THROWS_AS(closed_form_density(3, 7, 1), Error);   // q > p
    CHECK_THROWS_AS(closed_form_density(3, 1, 1), Error);   // q must exceed 1
}

TEST_CASE("solve_density_exact oracle") {
    CHECK(same_function(
        solve_density_exact(PiecewiseAffineMap::compose({FieldElem(3), FieldElem(7, 3)})),
        closed_form_density(7, 3, 1)));
    CHECK(same_function(solve_density_exact(PiecewiseAffineMap::beta_map(FieldElem(5))),
                        step({FieldElem(0), FieldElem(1)}, {FieldElem(1)})));
    CHECK(same_function(
        solve_density_exact(PiecewiseAffineMap::compose({FieldElem(4, 3), FieldElem(9, 2)})),
        step({FieldElem(0), FieldElem(1, 2), FieldElem(1)},
             {FieldElem(8, 7), FieldElem(6, 7)})));
    CHECK_THROWS_AS(
        solve_density_exact(PiecewiseAffineMap::compose({FieldElem(5, 3), FieldElem(7, 4)})),
        Error);
}

TEST_CASE("solve_density_exact handles quadratic bases with finite orbits") {
    FieldElem golden = FieldElem::quadratic(Int(1), Int(1), Int(2), Int(5));
    auto f = solve_density_exact(PiecewiseAffineMap::beta_map(golden));
    CHECK(f.integral() == FieldElem(1));
    CHECK(f.value_at(FieldElem(0)) ==
          FieldElem::quadratic(Int(5), Int(3), Int(10), Int(5)));
}

TEST_CASE("apply_transfer fixes every exact density") {
    std::vector<PiecewiseAffineMap> maps = {
        PiecewiseAffineMap::compose({FieldElem(3), FieldElem(7, 3)}),
        PiecewiseAffineMap::compose({FieldElem(4, 3), FieldElem(3, 2)}),
        PiecewiseAffineMap::compose({FieldElem(4, 3), FieldElem(9, 2)}),
        PiecewiseAffineMap::beta_map(FieldElem(3)),
    };
    for (const auto& m : maps) {
        auto f = solve_density_exact(m);
        CHECK(same_function(apply_transfer(m, f), f));
        CHECK(f.integral() == FieldElem(1));
        for (const auto& v : f.values) CHECK(v.sign() >= 0);
    }
    // and a non-fixed function moves
    auto m = PiecewiseAffineMap::compose({FieldElem(3), FieldElem(7, 3)});
    auto lebesgue = step({FieldElem(0), FieldElem(1)}, {FieldElem(1)});
    CHECK(!same_function(apply_transfer(m, lebesgue), lebesgue));
}

TEST_CASE("dk10 agrees with closed form across the coprime grid") {
    for (long p = 3; p <= 9; ++p) {
        for (long q = 2; q < p; ++q) {
            if (std::gcd(p, q) != 1) continue;
            auto m = PiecewiseAffineMap::compose({FieldElem(q), FieldElem(p, q)});
            auto dk = dk10_density(m, 25);
            CHECK(dk.exact);
            CHECK(same_function(dk.f, closed_form_density(p, q, 1)));
        }
    }
}

TEST_CASE("dk10 truncates honestly on infinite-orbit maps") {
    auto m = PiecewiseAffineMap::compose({FieldElem(5, 3), FieldElem(7, 4)});
    auto d = dk10_density(m, 8);
    CHECK(!d.exact);
    CHECK(d.tail > 0);
    CHECK(d.f.integral() == FieldElem(1));
}

TEST_CASE("renyi_parry examples") {
    auto two = renyi_parry_density(FieldElem(2), 10);
    CHECK(two.exact);
    CHECK(same_function(two.f, step({FieldElem(0), FieldElem(1)}, {FieldElem(1)})));

    FieldElem golden = FieldElem::quadratic(Int(1), Int(1), Int(2), Int(5));
    auto g = renyi_parry_density(golden, 30);
    CHECK(g.exact);
    FieldElem inv_b = golden.inverse();  // = (sqrt(5)-1)/2
    CHECK(same_function(
        g.f, step({FieldElem(0), inv_b, FieldElem(1)},
                  {FieldElem::quadratic(Int(5), Int(3), Int(10), Int(5)),
                   FieldElem::quadratic(Int(5), Int(1), Int(10), Int(5))})));
    CHECK(g.f.integral() == FieldElem(1));

    // orbit of 1 under T_{7/3} has denominators 3^k: never exact
    auto r = renyi_parry_density(FieldElem(7, 3), 12);
    CHECK(!r.exact);
    CHECK(r.f.integral() == FieldElem(1));
    CHECK(r.f.breakpoints.size() >= 4);
}

TEST_CASE("discontinuities of exact densities live on seed orbits") {
    auto m = PiecewiseAffineMap::compose({FieldElem(4, 3), FieldElem(9, 2)});
    auto f = solve_density_exact(m);
    std::vector<FieldElem> allowed{FieldElem(0), FieldElem(1)};
    for (const auto& s : discontinuity_seeds(m)) {
        allowed.push_back(s);
        auto rep = orbit_of_point(m, s, 100);
        REQUIRE(rep.finite());
        for (const auto& p : rep.points) allowed.push_back(p);
    }
    for (const auto& b : f.merged().breakpoints) {
        bool ok = false;
        for (const auto& a : allowed) ok = ok || a == b;
        CHECK(ok);
    }
}
