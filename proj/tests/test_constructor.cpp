#include <doctest.h>

#include "corpus.hpp"
#include "orbitq/constructor.hpp"
#include "orbitq/torus.hpp"

using namespace orbitq;

TEST_CASE("channel geometry: glue-only channels use the identity") {
    for (const auto& name : corpus::catalog_names()) {
        auto ctx = corpus::load_group(name);
        for (int cls = 0; cls < ctx->classes.num_classes(); ++cls) {
            int index = ctx->order() / ctx->classes.representative(cls).order();
            ChannelGeometry geom = select_channel_geometry(*ctx, cls, 1, index);
            CHECK(geom.h_sigma == ctx->group.identity());
            CHECK(geom.k.mask == ctx->classes.representative(cls).mask);
            CHECK((int)geom.transversal.size() == index);
        }
    }
}

TEST_CASE("channel geometry: involution channel of C2") {
    auto c2 = corpus::c2();
    ChannelGeometry geom = select_channel_geometry(*c2, c2->classes.trivial_class, 2, 1);
    CHECK(geom.h_sigma == 1);
    CHECK(geom.k.order() == 2);
    CHECK(geom.transversal == std::vector<int>{0});
}

TEST_CASE("channel geometry: maximal shortening channel of the square group") {
    auto d8 = torus::square_symmetry_group();
    ChannelGeometry geom = select_channel_geometry(*d8, d8->classes.trivial_class, 4, 2);
    CHECK(geom.h_sigma == 1);                       // the rotation
    CHECK(geom.k.elements == std::vector<int>{0, 1, 2, 3});  // <a>
    CHECK(geom.transversal.size() == 2);
    CHECK(geom.transversal[0] == 0);
}

TEST_CASE("coset decomposition") {
    auto d8 = torus::square_symmetry_group();
    const FiniteGroup& g = d8->group;
    ChannelGeometry geom = select_channel_geometry(*d8, d8->classes.trivial_class, 4, 2);

    // identity decomposes as (s, 0) for every s
    for (int s = 0; s < geom.theta; ++s) {
        auto [sp, l] = decompose(*d8, geom, g.identity(), s);
        CHECK(sp == s);
        CHECK(l == 0);
    }
    // h_sigma on the coset of K itself gives l = 1
    {
        int s_in_k = -1;
        for (int s = 0; s < geom.theta; ++s)
            if (geom.k.contains(geom.transversal[s])) s_in_k = s;
        REQUIRE(s_in_k >= 0);
        auto [sp, l] = decompose(*d8, geom, geom.h_sigma, s_in_k);
        CHECK(sp == s_in_k);
        CHECK(l == 1);
    }
    // exhaustive check of the defining property: s'^-1 g s lies in h^l H
    for (int gg = 0; gg < g.order(); ++gg)
        for (int s = 0; s < geom.theta; ++s) {
            auto [sp, l] = decompose(*d8, geom, gg, s);
            int t = g.mul(g.inv(geom.transversal[sp]), g.mul(gg, geom.transversal[s]));
            int hl = g.pow(geom.h_sigma, l);
            CHECK(geom.h.contains(g.mul(g.inv(hl), t)));
        }
}

TEST_CASE("build: anchor alone gives one fixed point") {
    auto c2 = corpus::c2();
    BehaviorSpec spec;
    spec.ctx = c2;
    spec.entries[{c2->classes.full_class, 1, 1, 1}] = 1;
    FiniteDynSystem sys = build_system(spec);
    CHECK(sys.npoints == 1);
    CHECK(validate_system(sys).ok());
    CHECK(stabilizer(sys, 0).order() == 2);
    auto orbs = orbits(sys);
    REQUIRE(orbs.size() == 1);
    CHECK(orbs[0].length == 1);
}

TEST_CASE("build: anchor plus one shortening cycle over C2") {
    auto c2 = corpus::c2();
    BehaviorSpec spec;
    spec.ctx = c2;
    spec.entries[{c2->classes.full_class, 1, 1, 1}] = 1;
    spec.entries[{c2->classes.trivial_class, 2, 1, 1}] = 1;
    FiniteDynSystem sys = build_system(spec);
    CHECK(sys.npoints == 3);
    CHECK(validate_system(sys).ok());

    PeriodCounts up = period_counts(sys, 2);
    CHECK(up.o == std::vector<long long>{1, 1});
    QuotientSystem q = build_quotient(sys);
    PeriodCounts down = period_counts_from_orbits(cycle_decomposition(q.tprime), 2);
    CHECK(down.o == std::vector<long long>{2, 0});
}

TEST_CASE("build: eight freely permuted fixed points over the square group") {
    auto d8 = torus::square_symmetry_group();
    BehaviorSpec spec;
    spec.ctx = d8;
    spec.entries[{d8->classes.full_class, 1, 1, 1}] = 1;
    spec.entries[{d8->classes.trivial_class, 1, 8, 1}] = 1;
    FiniteDynSystem sys = build_system(spec);
    CHECK(sys.npoints == 9);
    CHECK(validate_system(sys).ok());
    PeriodCounts up = period_counts(sys, 1);
    CHECK(up.o[0] == 9);
    QuotientSystem q = build_quotient(sys);
    CHECK(q.num_classes() == 2);
}

TEST_CASE("predicted counts formulas") {
    auto c2 = corpus::c2();
    BehaviorSpec spec;
    spec.ctx = c2;
    spec.entries[{c2->classes.full_class, 1, 1, 1}] = 1;
    spec.entries[{c2->classes.trivial_class, 2, 1, 1}] = 1;
    auto [a, b] = predicted_counts(spec, 2);
    CHECK(a == std::vector<long long>{1, 1});
    CHECK(b == std::vector<long long>{2, 0});

    BehaviorSpec anchor_only;
    anchor_only.ctx = c2;
    anchor_only.entries[{c2->classes.full_class, 1, 1, 1}] = 1;
    auto [a2, b2] = predicted_counts(anchor_only, 3);
    CHECK(a2 == std::vector<long long>{1, 0, 0});
    CHECK(b2 == std::vector<long long>{1, 0, 0});

    // maximal-shortening channel of the square group: 3 orbits at length 1
    // downstairs appear as 2*3 orbits of length 4 upstairs
    auto d8 = torus::square_symmetry_group();
    BehaviorSpec sd8;
    sd8.ctx = d8;
    sd8.entries[{d8->classes.full_class, 1, 1, 1}] = 1;
    sd8.entries[{d8->sigma.h_nabla_class, 4, 2, 1}] = 3;
    auto [a3, b3] = predicted_counts(sd8, 4);
    CHECK(a3 == std::vector<long long>{1, 0, 0, 6});
    CHECK(b3 == std::vector<long long>{4, 0, 0, 0});
}

TEST_CASE("spec validation rejects bad prescriptions") {
    auto c2 = corpus::c2();
    BehaviorSpec no_anchor;
    no_anchor.ctx = c2;
    no_anchor.entries[{c2->classes.trivial_class, 1, 2, 1}] = 1;
    CHECK_THROWS_AS(no_anchor.validate(), SpecError);
    no_anchor.allow_no_anchor = true;
    CHECK_NOTHROW(no_anchor.validate());

    BehaviorSpec bad_channel;
    bad_channel.ctx = c2;
    bad_channel.entries[{c2->classes.full_class, 1, 1, 1}] = 1;
    bad_channel.entries[{c2->classes.trivial_class, 2, 2, 1}] = 1;  // theta must be 1
    CHECK_THROWS_AS(bad_channel.validate(), SpecError);
}

TEST_CASE("round trip: C2 prescriptions") {
    auto c2 = corpus::c2();
    for (uint64_t seed = 0; seed < 10; ++seed) {
        BehaviorSpec spec = corpus::random_spec(c2, seed);
        ConstructionReport rep = verify_construction(spec, 4);
        INFO("seed ", seed);
        for (const auto& m : rep.mismatches) INFO(m);
        CHECK(rep.ok);
    }
}

TEST_CASE("round trip: sparse square-group prescriptions to horizon 12") {
    auto d8 = torus::square_symmetry_group();
    for (uint64_t seed = 100; seed < 110; ++seed) {
        BehaviorSpec spec = corpus::random_spec(d8, seed);
        ConstructionReport rep = verify_construction(spec, 12);
        INFO("seed ", seed);
        for (const auto& m : rep.mismatches) INFO(m);
        CHECK(rep.ok);
    }
}

TEST_CASE("round trip: S3 with a three-fold shortening channel") {
    auto s3 = corpus::load_group("s3");
    BehaviorSpec spec;
    spec.ctx = s3;
    spec.entries[{s3->classes.full_class, 1, 1, 1}] = 1;
    spec.entries[{s3->classes.trivial_class, 3, 2, 1}] = 2;
    spec.entries[{s3->classes.trivial_class, 3, 2, 3}] = 1;
    ConstructionReport rep = verify_construction(spec, 9);
    for (const auto& m : rep.mismatches) INFO(m);
    CHECK(rep.ok);
}

TEST_CASE("constructed blocks have conjugate stabilizers and shortening witnesses") {
    auto d8 = torus::square_symmetry_group();
    BehaviorSpec spec;
    spec.ctx = d8;
    spec.entries[{d8->classes.full_class, 1, 1, 1}] = 1;
    auto ids = torus::square_class_ids();
    spec.entries[{ids.axis, 2, 2, 2}] = 1;
    spec.entries[{d8->classes.trivial_class, 4, 2, 1}] = 1;
    FiniteDynSystem sys = build_system(spec);
    REQUIRE(validate_system(sys).ok());

    QuotientSystem q = build_quotient(sys);
    auto orbs = orbits(sys);
    for (const auto& rec : orbs) {
        OrbitBehavior b = classify_orbit(sys, q, rec);
        // stabilizer class matches the block's prescription
        long long want = spec.entry(b.class_id, b.delta, b.theta, b.quotient_length);
        CHECK(want > 0);
        // shortening witness: T^(len/delta) acts as some group element on
        // the whole orbit
        if (b.delta > 1) {
            int x = rec.representative;
            int tm = x;
            for (int i = 0; i < b.quotient_length; ++i) tm = sys.t[tm];
            bool witnessed = false;
            for (int g = 0; g < d8->order(); ++g)
                if (sys.act(g, x) == tm) witnessed = true;
            CHECK(witnessed);
        }
    }
    corpus::check_behavior_properties(sys);
}

TEST_CASE("verify_construction flags a tampered prescription") {
    auto c2 = corpus::c2();
    BehaviorSpec spec;
    spec.ctx = c2;
    spec.entries[{c2->classes.full_class, 1, 1, 1}] = 1;
    spec.entries[{c2->classes.trivial_class, 1, 2, 2}] = 2;
    FiniteDynSystem sys = build_system(spec);
    // the honest system round-trips
    CHECK(verify_construction(spec, 4).ok);
    // a different prescription over the same group does not match it
    BehaviorSpec other = spec;
    other.entries[{c2->classes.trivial_class, 1, 2, 2}] = 1;
    auto [a, b] = predicted_counts(other, 4);
    PeriodCounts up = period_counts(sys, 4);
    CHECK(up.o[1] != a[1]);
}
