#include <doctest.h>

#include "corpus.hpp"
#include "orbitq/torus.hpp"

// The parallel kernels must agree with the serial reference bit for bit,
// whatever the schedule.

using namespace orbitq;

namespace {

void check_modes_agree(const FiniteDynSystem& sys) {
    auto orb_s = orbits(sys, ExecMode::serial);
    auto orb_p = orbits(sys, ExecMode::parallel);
    REQUIRE(orb_s.size() == orb_p.size());
    for (size_t i = 0; i < orb_s.size(); ++i) {
        CHECK(orb_s[i].representative == orb_p[i].representative);
        CHECK(orb_s[i].points == orb_p[i].points);
    }

    ValidationReport val_s = validate_system(sys, ExecMode::serial);
    ValidationReport val_p = validate_system(sys, ExecMode::parallel);
    CHECK(val_s.issues.size() == val_p.issues.size());

    QuotientSystem q_s = build_quotient(sys, ExecMode::serial);
    QuotientSystem q_p = build_quotient(sys, ExecMode::parallel);
    CHECK(q_s.projection == q_p.projection);
    CHECK(q_s.tprime == q_p.tprime);

    BehaviorCensus c_s = behavior_census(sys, 4, ExecMode::serial);
    BehaviorCensus c_p = behavior_census(sys, 4, ExecMode::parallel);
    CHECK(c_s.counts == c_p.counts);
    CHECK(c_s.quotient_totals == c_p.quotient_totals);
}

}  // namespace

TEST_CASE("serial and parallel kernels agree on torus layers") {
    for (int n : {2, 4, 6}) check_modes_agree(torus::layer_system(n));
}

TEST_CASE("serial and parallel kernels agree on constructed systems") {
    auto d8 = torus::square_symmetry_group();
    for (uint64_t seed = 0; seed < 5; ++seed)
        check_modes_agree(build_system(corpus::random_spec(d8, seed)));
}

TEST_CASE("serial and parallel kernels agree on the quotient-period set") {
    check_modes_agree(torus::quotient_period_system(3).system);
}

TEST_CASE("cycle decomposition handles large single cycles in both modes") {
    const int k = 5000;
    std::vector<int> cyc(k);
    for (int i = 0; i < k; ++i) cyc[i] = (i + 1) % k;
    auto s = cycle_decomposition(cyc, ExecMode::serial);
    auto p = cycle_decomposition(cyc, ExecMode::parallel);
    REQUIRE(s.size() == 1);
    REQUIRE(p.size() == 1);
    CHECK(s[0].points == p[0].points);
}
