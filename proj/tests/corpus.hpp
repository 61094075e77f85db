#pragma once

// Shared fixtures: catalog groups, hand-built example systems, the seeded
// random prescription sampler, and the orbit-behavior property checks that
// every system in the corpus must satisfy.

#include <random>
#include <set>
#include <string>
#include <vector>

#include "orbitq/constructor.hpp"
#include "orbitq/io.hpp"
#include "orbitq/quotient.hpp"

#ifndef ORBITQ_DATA_DIR
#define ORBITQ_DATA_DIR "data"
#endif

namespace corpus {

using namespace orbitq;

inline std::string data_path(const std::string& name) {
    return std::string(ORBITQ_DATA_DIR) + "/" + name;
}

inline std::shared_ptr<const GroupContext> load_group(const std::string& name) {
    return GroupContext::analyze(io::load_group_file(data_path(name + ".json")));
}

inline const std::vector<std::string>& catalog_names() {
    static const std::vector<std::string> names{"c2", "c3", "c4", "c2c2",
                                                "s3", "d8", "q8"};
    return names;
}

// --------------------------------------------------------------------------
// hand-built examples

inline std::shared_ptr<const GroupContext> c2() {
    static auto ctx = GroupContext::analyze(
        FiniteGroup::from_cayley({{0, 1}, {1, 0}}, {"e", "s"}));
    return ctx;
}

inline std::shared_ptr<const GroupContext> trivial_group() {
    static auto ctx = GroupContext::analyze(FiniteGroup::from_cayley({{0}}, {"e"}));
    return ctx;
}

/// Two fixed points of T swapped by the involution: everything glues.
inline FiniteDynSystem glue_only() {
    return FiniteDynSystem::make(c2(), 2, {0, 1}, {0, 1, 1, 0});
}

/// One 2-cycle with the involution equal to T on it: the cycle shortens.
inline FiniteDynSystem shorten_only() {
    return FiniteDynSystem::make(c2(), 2, {1, 0}, {0, 1, 1, 0});
}

/// A surviving fixed point plus a 2-cycle that shortens: the orbit-count
/// upper bound is met with equality at n = 1.
inline FiniteDynSystem survive_and_shorten() {
    return FiniteDynSystem::make(c2(), 3, {0, 2, 1}, {0, 1, 2, 0, 2, 1});
}

/// Commutation violation: the involution swaps a T-fixed point with a moving
/// point.
inline FiniteDynSystem broken_commutation() {
    return FiniteDynSystem::make(c2(), 3, {0, 2, 1}, {0, 1, 2, 1, 0, 2});
}

inline FiniteDynSystem trivial_system(int k) {
    std::vector<int> t(k), act(k);
    for (int i = 0; i < k; ++i) t[i] = act[i] = i;
    std::rotate(t.begin(), t.begin() + (k > 1 ? 1 : 0), t.end());
    return FiniteDynSystem::make(trivial_group(), k, std::move(t), std::move(act));
}

// --------------------------------------------------------------------------
// seeded random prescriptions (entry values <= 3, lengths <= 4)

inline BehaviorSpec random_spec(std::shared_ptr<const GroupContext> ctx,
                                uint64_t seed) {
    return sample_behavior_spec(std::move(ctx), seed, 3, 4);
}

// --------------------------------------------------------------------------
// the orbit-behavior property suite, implemented here independently of the
// library's census path

struct PropertyFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline void check_behavior_properties(const FiniteDynSystem& sys) {
    const GroupContext& ctx = *sys.ctx;
    const FiniteGroup& grp = ctx.group;
    auto fail = [](const std::string& what) { throw PropertyFailure(what); };

    if (!validate_system(sys).ok()) fail("system does not validate");

    auto orbs = orbits(sys);
    QuotientSystem q = build_quotient(sys);

    // stabilizer-class partition: pieces disjoint, covering, T-invariant
    {
        auto partition = partition_by_class(sys);
        long long total = 0;
        for (const auto& [cls, pts] : partition) {
            (void)cls;
            total += (long long)pts.size();
        }
        if (total != sys.npoints) fail("class partition does not cover the point set");
        for (int x = 0; x < sys.npoints; ++x)
            if (stabilizer_mask(sys, x) != stabilizer_mask(sys, sys.t[x]))
                fail("stabilizer changes along an orbit");
    }

    int nabla = ctx.sigma.nabla;
    std::map<int, int> quotient_len;  // quotient class -> orbit length under T'
    std::map<int, int> quotient_orbit_of;  // quotient class -> its T'-orbit rep
    {
        for (const auto& rec : cycle_decomposition(q.tprime))
            for (int c : rec.points) {
                quotient_len[c] = rec.length;
                quotient_orbit_of[c] = rec.representative;
            }
    }
    // upstairs orbits grouped by the T'-orbit they cover
    std::map<int, std::vector<int>> fiber;
    for (const auto& rec : orbs)
        fiber[quotient_orbit_of.at(q.projection[rec.representative])].push_back(
            rec.representative);

    std::map<std::tuple<int, int, int, int>, long long> census;  // (cls, delta, theta, n) -> count
    std::map<int, long long> o_up;
    std::map<std::pair<int, int>, long long> o_down_by_class;

    for (const auto& rec : orbs) {
        int x = rec.representative;
        std::set<int> t_orbit(rec.points.begin(), rec.points.end());
        std::set<int> g_orbit;
        for (int g = 0; g < grp.order(); ++g) g_orbit.insert(sys.act(g, x));

        int delta = 0;
        for (int y : g_orbit)
            if (t_orbit.count(y)) ++delta;

        // shortening, forward: intersection size k forces quotient length n/k
        int qlen = quotient_len.at(q.projection[x]);
        if (rec.length % delta != 0 || rec.length / delta != qlen)
            fail("shortening factor does not match the quotient orbit length");
        // shortening, backward: quotient length n/k forces intersection size k
        if (qlen == 0 || rec.length % qlen != 0 || rec.length / qlen != delta)
            fail("quotient orbit length does not match the intersection size");

        // the intersection is a single cyclic-orbit: T^(n/k)(x) = g(x) and
        // the intersection is exactly the <g>-orbit of x
        {
            int tm = x;
            for (int i = 0; i < qlen; ++i) tm = sys.t[tm];
            int gw = -1;
            for (int g = 0; g < grp.order(); ++g)
                if (sys.act(g, x) == tm) {
                    gw = g;
                    break;
                }
            if (delta > 1 && gw < 0) fail("no group element witnesses the shortening step");
            if (gw >= 0) {
                std::set<int> cyc;
                int cur = x;
                for (int i = 0; i < grp.element_order(gw); ++i) {
                    cyc.insert(cur);
                    cur = sys.act(gw, cur);
                }
                std::set<int> inter;
                for (int y : g_orbit)
                    if (t_orbit.count(y)) inter.insert(y);
                if (cyc != inter) fail("intersection is not the cyclic orbit of the witness");
            }
        }

        // glueing: number of upstairs orbits covering the same quotient orbit
        int glue = (int)g_orbit.size() / delta;
        if ((int)fiber.at(quotient_orbit_of.at(q.projection[x])).size() != glue)
            fail("glue count does not match the fiber cardinality");
        if (g_orbit.size() == 1 && (delta != 1 || glue != 1))
            fail("singleton group orbit must survive");

        // admissible behavior for the stabilizer class
        Subgroup h = stabilizer(sys, x);
        Subgroup nh = normalizer(grp, h);
        std::set<int> coset_orders;
        for (int e : nh.elements) coset_orders.insert(coset_order(grp, h, e));
        if (!coset_orders.count(delta)) fail("shortening factor is not a coset order");
        if (glue * delta * h.order() != grp.order())
            fail("glue count is not the index divided by the shortening factor");
        if (delta > nabla) fail("shortening factor exceeds the maximal element order");

        int cls = ctx.class_of_mask(h.mask);
        census[{cls, delta, glue, rec.length}] += 1;
        o_up[rec.length] += 1;
    }
    for (const auto& rec : cycle_decomposition(q.tprime)) {
        int cls = ctx.class_of_mask(stabilizer_mask(sys, q.classes[rec.representative][0]));
        o_down_by_class[{cls, rec.length}] += 1;
    }

    // upstairs decomposition; channel constraints
    for (const auto& [n, total] : o_up) {
        long long sum = 0;
        for (const auto& [key, c] : census)
            if (std::get<3>(key) == n) sum += c;
        if (sum != total) fail("upstairs orbit-count decomposition failed");
    }
    for (const auto& [key, c] : census) {
        auto [cls, delta, theta, n] = key;
        (void)cls;
        if (c % theta != 0) fail("glue-divisibility constraint failed");
        if (n % delta != 0) fail("shortening-divisibility constraint failed");
    }
    // downstairs decomposition, per class
    for (const auto& [cn, total] : o_down_by_class) {
        auto [cls, n] = cn;
        long long sum = 0;
        for (const auto& ch : ctx.sigma.per_class[cls]) {
            auto it = census.find({cls, ch.delta, ch.theta, ch.delta * n});
            if (it != census.end()) sum += it->second / ch.theta;
        }
        if (sum != total) fail("quotient orbit-count decomposition failed");
    }

    // the library's census performs the same verification internally
    behavior_census(sys, std::max(1, (int)o_up.size()));
}

}  // namespace corpus
