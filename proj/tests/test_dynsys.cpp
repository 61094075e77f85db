#include <doctest.h>

#include <numeric>

#include "corpus.hpp"
#include "orbitq/dynsys.hpp"
#include "orbitq/torus.hpp"

using namespace orbitq;

TEST_CASE("validation accepts the hand examples") {
    CHECK(validate_system(corpus::glue_only()).ok());
    CHECK(validate_system(corpus::shorten_only()).ok());
    CHECK(validate_system(corpus::survive_and_shorten()).ok());
    CHECK(validate_system(corpus::trivial_system(5)).ok());
}

TEST_CASE("validation reports commutation witnesses") {
    auto rep = validate_system(corpus::broken_commutation());
    CHECK(!rep.ok());
    bool found = false;
    for (const auto& i : rep.issues)
        if (i.kind == ValidationIssue::Kind::commutation && i.g == 1 && i.x == 0)
            found = true;
    CHECK(found);
    CHECK_THROWS_AS(require_valid(corpus::broken_commutation()), DynSysError);
}

TEST_CASE("validation rejects non-bijections and bad action tables") {
    auto c2 = corpus::c2();
    FiniteDynSystem not_bij = FiniteDynSystem::make(c2, 2, {0, 0}, {0, 1, 1, 0});
    CHECK(!validate_system(not_bij).ok());

    // action row for the involution is not a homomorphic extension
    FiniteDynSystem bad_comp = FiniteDynSystem::make(c2, 3, {0, 1, 2}, {0, 1, 2, 1, 2, 0});
    auto rep = validate_system(bad_comp);
    bool comp = false;
    for (const auto& i : rep.issues)
        if (i.kind == ValidationIssue::Kind::composition) comp = true;
    CHECK(comp);
}

TEST_CASE("orbit decomposition basics") {
    // identity map: k singleton orbits
    auto triv = corpus::trivial_group();
    std::vector<int> ident{0, 1, 2, 3};
    FiniteDynSystem sys = FiniteDynSystem::make(triv, 4, ident, ident);
    auto orbs = orbits(sys);
    CHECK(orbs.size() == 4);
    for (const auto& o : orbs) CHECK(o.length == 1);

    // single 5-cycle
    std::vector<int> cyc{1, 2, 3, 4, 0};
    std::vector<int> id5{0, 1, 2, 3, 4};
    FiniteDynSystem sys5 = FiniteDynSystem::make(triv, 5, cyc, id5);
    auto orbs5 = orbits(sys5);
    REQUIRE(orbs5.size() == 1);
    CHECK(orbs5[0].length == 5);
    CHECK(orbs5[0].representative == 0);
    CHECK(orbs5[0].points == std::vector<int>{0, 1, 2, 3, 4});
}

TEST_CASE("orbit records partition the point set") {
    for (const auto& sys : {corpus::glue_only(), corpus::shorten_only(),
                            corpus::survive_and_shorten(), torus::layer_system(3)}) {
        auto orbs = orbits(sys);
        std::vector<char> seen(sys.npoints, 0);
        long long total = 0;
        for (const auto& o : orbs) {
            CHECK((int)o.points.size() == o.length);
            CHECK(o.representative == *std::min_element(o.points.begin(), o.points.end()));
            CHECK(sys.t[o.points.back()] == o.points.front());
            for (int p : o.points) {
                CHECK(!seen[p]);
                seen[p] = 1;
            }
            total += o.length;
        }
        CHECK(total == sys.npoints);
    }
}

TEST_CASE("period counts") {
    auto triv = corpus::trivial_group();
    // a single 2-cycle
    FiniteDynSystem two = FiniteDynSystem::make(triv, 2, {1, 0}, {0, 1});
    PeriodCounts pc = period_counts(two, 2);
    CHECK(pc.o == std::vector<long long>{0, 1});
    CHECK(pc.f == std::vector<long long>{0, 2});
    CHECK(pc.pi == std::vector<long long>{0, 1});

    // identity on three points
    std::vector<int> id3{0, 1, 2};
    FiniteDynSystem idsys = FiniteDynSystem::make(triv, 3, id3, id3);
    PeriodCounts pc3 = period_counts(idsys, 2);
    CHECK(pc3.o == std::vector<long long>{3, 0});
    CHECK(pc3.f == std::vector<long long>{3, 3});

    // F is divisibility-monotone on arbitrary systems
    PeriodCounts layer = period_counts(torus::layer_system(4), 8);
    for (int n = 1; n <= 8; ++n)
        for (int d = 1; d <= n; ++d)
            if (n % d == 0) CHECK(layer.f[d - 1] <= layer.f[n - 1]);
}

TEST_CASE("torus layer period counts match the closed form") {
    for (int n = 1; n <= 6; ++n) {
        FiniteDynSystem sys = torus::layer_system(n);
        PeriodCounts pc = period_counts(sys, n);
        long long m = torus::layer_modulus(n);
        CHECK(pc.f[n - 1] == m * m);
    }
}

TEST_CASE("stabilizers") {
    // trivial action: stabilizer is the whole group
    auto c2 = corpus::c2();
    FiniteDynSystem fixed = FiniteDynSystem::make(c2, 1, {0}, {0, 0});
    CHECK(stabilizer(fixed, 0).order() == 2);

    // free action point: trivial stabilizer
    CHECK(stabilizer(corpus::glue_only(), 0).order() == 1);

    // the origin of a torus layer is fixed by all eight symmetries
    FiniteDynSystem layer = torus::layer_system(2);
    CHECK(stabilizer(layer, 0).order() == 8);
}

TEST_CASE("partition by class") {
    auto part = partition_by_class(corpus::glue_only());
    auto c2 = corpus::c2();
    REQUIRE(part.size() == 1);
    CHECK(part.begin()->first == c2->classes.trivial_class);

    FiniteDynSystem fixed = FiniteDynSystem::make(c2, 2, {0, 1}, {0, 1, 0, 1});
    auto part2 = partition_by_class(fixed);
    REQUIRE(part2.size() == 1);
    CHECK(part2.begin()->first == c2->classes.full_class);

    // torus layer 2: only the origin plus axis and diagonal points; larger
    // layers add free points but never a Klein-class stabilizer
    auto ids = torus::square_class_ids();
    auto part3 = partition_by_class(torus::layer_system(2));
    std::set<int> present;
    for (const auto& [cls, pts] : part3)
        if (!pts.empty()) present.insert(cls);
    CHECK(present == std::set<int>{ids.full, ids.axis, ids.diagonal});
    for (int n : {3, 4}) {
        auto part = partition_by_class(torus::layer_system(n));
        std::set<int> allowed{ids.full, ids.axis, ids.diagonal, ids.trivial};
        for (const auto& [cls, pts] : part) {
            if (pts.empty()) continue;
            CHECK(allowed.count(cls) == 1);
            CHECK(cls != ids.klein);
        }
    }
}

TEST_CASE("disjoint union adds censuses") {
    FiniteDynSystem a = corpus::glue_only();
    FiniteDynSystem b = corpus::shorten_only();
    FiniteDynSystem u = disjoint_union(a, b);
    CHECK(validate_system(u).ok());
    PeriodCounts pa = period_counts(a, 4), pb = period_counts(b, 4),
                 pu = period_counts(u, 4);
    for (int n = 1; n <= 4; ++n) {
        CHECK(pu.o[n - 1] == pa.o[n - 1] + pb.o[n - 1]);
        CHECK(pu.f[n - 1] == pa.f[n - 1] + pb.f[n - 1]);
    }
}

TEST_CASE("generator-only action completes to the full group") {
    auto d8 = torus::square_symmetry_group();
    FiniteDynSystem layer = torus::layer_system(2);
    // rebuild from just the rotation and reflection rows
    std::vector<std::pair<int, std::vector<int>>> gens;
    for (int e : {1, 4}) {  // a, t
        std::vector<int> row(layer.npoints);
        for (int x = 0; x < layer.npoints; ++x) row[x] = layer.act(e, x);
        gens.emplace_back(e, row);
    }
    FiniteDynSystem rebuilt =
        FiniteDynSystem::from_generator_action(d8, layer.npoints, layer.t, gens);
    CHECK(rebuilt.action_ == layer.action_);

    // a non-generating set must be rejected
    std::vector<std::pair<int, std::vector<int>>> only_center;
    {
        std::vector<int> row(layer.npoints);
        for (int x = 0; x < layer.npoints; ++x) row[x] = layer.act(2, x);
        only_center.emplace_back(2, row);
    }
    CHECK_THROWS_AS(FiniteDynSystem::from_generator_action(d8, layer.npoints, layer.t,
                                                           only_center),
                    DynSysError);
}
