#include <doctest.h>

#include <cmath>

#include "corpus.hpp"
#include "orbitq/quotient.hpp"
#include "orbitq/torus.hpp"

using namespace orbitq;

TEST_CASE("quotient of a trivial action is the system itself") {
    FiniteDynSystem sys = corpus::trivial_system(5);
    QuotientSystem q = build_quotient(sys);
    CHECK(q.num_classes() == 5);
    CHECK(q.tprime == sys.t);
}

TEST_CASE("two glued fixed points become one") {
    QuotientSystem q = build_quotient(corpus::glue_only());
    CHECK(q.num_classes() == 1);
    CHECK(q.tprime == std::vector<int>{0});
}

TEST_CASE("classification of the basic behaviors") {
    // trivial group: everything survives
    {
        FiniteDynSystem sys = corpus::trivial_system(4);
        QuotientSystem q = build_quotient(sys);
        for (const auto& rec : orbits(sys)) {
            OrbitBehavior b = classify_orbit(sys, q, rec);
            CHECK(b.delta == 1);
            CHECK(b.theta == 1);
            CHECK(b.kind == BehaviorKind::surviving);
        }
    }
    // swap cycle with the swap action: shortens by 2
    {
        FiniteDynSystem sys = corpus::shorten_only();
        QuotientSystem q = build_quotient(sys);
        OrbitBehavior b = classify_orbit(sys, q, orbits(sys)[0]);
        CHECK(b.delta == 2);
        CHECK(b.theta == 1);
        CHECK(b.kind == BehaviorKind::shortening);
        CHECK(b.quotient_length == 1);
    }
    // two fixed points glued
    {
        FiniteDynSystem sys = corpus::glue_only();
        QuotientSystem q = build_quotient(sys);
        OrbitBehavior b = classify_orbit(sys, q, orbits(sys)[0]);
        CHECK(b.delta == 1);
        CHECK(b.theta == 2);
        CHECK(b.kind == BehaviorKind::glueing);
    }
}

TEST_CASE("census on the hand examples") {
    auto c2 = corpus::c2();
    int triv = c2->classes.trivial_class;
    int full = c2->classes.full_class;

    BehaviorCensus glue = behavior_census(corpus::glue_only(), 2);
    CHECK(glue.count(triv, 1, 2, 1) == 2);
    CHECK(glue.quotient_total(1) == 1);

    BehaviorCensus shorten = behavior_census(corpus::shorten_only(), 2);
    CHECK(shorten.count(triv, 2, 1, 2) == 1);
    CHECK(shorten.quotient_total(1) == 1);

    BehaviorCensus mix = behavior_census(corpus::survive_and_shorten(), 2);
    CHECK(mix.count(full, 1, 1, 1) == 1);
    CHECK(mix.count(triv, 2, 1, 2) == 1);
    CHECK(mix.quotient_total(1) == 2);

    // trivial group: counts concentrate on the full-stabilizer channel
    FiniteDynSystem ts = corpus::trivial_system(4);
    BehaviorCensus tc = behavior_census(ts, 4);
    PeriodCounts pc = period_counts(ts, 4);
    auto tg = corpus::trivial_group();
    for (int n = 1; n <= 4; ++n)
        CHECK(tc.count(tg->classes.full_class, 1, 1, n) == pc.o[n - 1]);
}

TEST_CASE("quotient fixed count of the first torus layer") {
    // all four quotient points fixed by the induced map appear in the
    // quotient-period system of order 1
    CHECK(torus::quotient_fixed_count(1) == 4);
    // and the layer-4 brute force agrees (all relevant preimages have period
    // dividing 4)
    FiniteDynSystem layer4 = torus::layer_system(4);
    QuotientSystem q = build_quotient(layer4);
    long long fixed = 0;
    for (const auto& rec : cycle_decomposition(q.tprime))
        if (rec.length == 1) ++fixed;
    CHECK(fixed == 4);
}

TEST_CASE("bounds on the hand examples") {
    // glue-only: lower periodic-point bound is met with equality
    BoundsReport glue = check_bounds(corpus::glue_only(), 2);
    CHECK(glue.ok());
    CHECK(glue.rows[0].f_value == glue.rows[0].f_lower);
    CHECK(glue.rows[0].f_value == Rat(1));

    // survive+shorten: orbit-count upper bound met with equality at n=1
    BoundsReport mix = check_bounds(corpus::survive_and_shorten(), 1);
    CHECK(mix.ok());
    CHECK(mix.rows[0].o_value == mix.rows[0].o_upper);
    CHECK(mix.rows[0].o_value == Rat(2));

    // trivial group: both sides of the periodic-point bound collapse
    BoundsReport triv = check_bounds(corpus::trivial_system(6), 3);
    CHECK(triv.ok());
    for (const auto& row : triv.rows) {
        CHECK(row.f_value == row.f_lower);
        CHECK(row.f_value == row.f_upper);
    }
}

TEST_CASE("bounds on torus layers: lower always, upper needs the glue fix") {
    // The displayed upper bounds assume shortening orbits glue by |G|/delta.
    // Layer 2 is a counterexample: its four 2-cycles shorten with glue 2
    // (axis/diagonal stabilizers), so O_1(T') = 3 exceeds
    // O_1 + O_2/4 + O_4/2 = 2. The minimum-glue form holds.
    {
        BoundsReport rep = check_bounds(torus::layer_system(2), 2);
        CHECK(!rep.rows[0].ok());
        CHECK(rep.rows[0].o_value == Rat(3));
        CHECK(rep.rows[0].o_upper == Rat(2));
        CHECK(rep.ok_minglue());
    }
    for (int n : {2, 3, 4}) {
        BoundsReport rep = check_bounds(torus::layer_system(n), 2);
        CHECK(rep.ok_minglue());
        for (const auto& row : rep.rows) {
            CHECK(row.f_lower <= row.f_value);
            if (row.o_lower_applies) CHECK(row.o_lower <= row.o_value);
        }
    }
    // the nine-point layer's minimum glue factors: delta 2 pairs with glue 1
    // (the Klein class), delta 4 with glue 2
    auto mg = min_glue_by_delta(*torus::square_symmetry_group());
    CHECK(mg.at(1) == 1);
    CHECK(mg.at(2) == 1);
    CHECK(mg.at(4) == 2);
}

TEST_CASE("upper periodic-point bound arithmetic on the first torus layer") {
    // with the full-torus counts F_n = (2^n-1)^2 the bound at n=1 reads
    // 4 <= 1 + (1/8) F_2 + (1/8) F_4 = 121/4
    Rat f1(1), f2(9), f4(225);
    Rat upper = f1 + f2 / Rat(2 * 4) + f4 / Rat(4 * 2);
    CHECK(upper == Rat(121, 4));
    CHECK(Rat(4) <= upper);
    CHECK(Rat(1, 8) * Rat(8) == Rat(1));  // fibre size |G| at the lower end
    CHECK(Rat(4) >= f1 / Rat(8));
}

TEST_CASE("lemma property suite on hand examples and torus layers") {
    corpus::check_behavior_properties(corpus::glue_only());
    corpus::check_behavior_properties(corpus::shorten_only());
    corpus::check_behavior_properties(corpus::survive_and_shorten());
    corpus::check_behavior_properties(corpus::trivial_system(6));
    for (int n = 1; n <= 4; ++n)
        corpus::check_behavior_properties(torus::layer_system(n));
}

TEST_CASE("growth estimate on the closed-form torus counts") {
    // periodic points (2^n-1)^2 upstairs and 4^n downstairs
    PeriodCounts up, down;
    up.horizon = down.horizon = 8;
    auto o_up = torus::torus_orbit_counts(8);
    up.o = o_up;
    for (int n = 1; n <= 8; ++n) {
        long long m = torus::layer_modulus(n);
        up.f.push_back(m * m);
        down.f.push_back(1LL << (2 * n));
    }
    // downstairs orbit counts via Moebius inversion of 4^n
    for (int n = 1; n <= 8; ++n) {
        long long sum = 0;
        for (int d = 1; d <= n; ++d) {
            if (n % d) continue;
            int v = d, mu = 1;
            for (int p = 2; p * p <= v; ++p) {
                if (v % p) continue;
                v /= p;
                if (v % p == 0) { mu = 0; break; }
                mu = -mu;
            }
            if (v > 1 && mu != 0) mu = -mu;
            sum += mu * (1LL << (2 * (n / d)));
        }
        down.o.push_back(sum / n);
    }
    up.pi = up.o;
    down.pi = down.o;

    GrowthReport rep = growth_estimate(up, down, 4);
    CHECK(rep.window_ok);
    // both exponents sit at log 4 by n = 8, within 0.01 of each other
    CHECK(std::abs(rep.f_exponents_up.back() - std::log(4.0)) < 0.01);
    CHECK(std::abs(rep.f_exponents_down.back() - std::log(4.0)) < 0.01);
    CHECK(std::abs(rep.f_exponents_up.back() - rep.f_exponents_down.back()) < 0.01);

    PeriodCounts tiny;
    tiny.horizon = 2;
    tiny.o = {1, 1};
    tiny.f = {1, 3};
    tiny.pi = {1, 2};
    CHECK_THROWS_AS(growth_estimate(tiny, tiny, 2), HorizonTooSmall);
}

TEST_CASE("growth estimate on constant orbit counts tends to zero") {
    PeriodCounts flat;
    flat.horizon = 12;
    for (int n = 1; n <= 12; ++n) {
        flat.o.push_back(2);
        long long f = 0;
        for (int d = 1; d <= n; ++d)
            if (n % d == 0) f += 2 * d;
        flat.f.push_back(f);
        flat.pi.push_back(2 * n);
    }
    GrowthReport rep = growth_estimate(flat, flat, 2);
    CHECK(rep.orbit_exponent_up < 0.1);
    CHECK(rep.f_exponents_up.back() < 0.5);
}
