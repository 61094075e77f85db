#include "orbitq/quotient.hpp"

#include <algorithm>
#include <cmath>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace orbitq {

QuotientSystem build_quotient(const FiniteDynSystem& sys, ExecMode mode) {
    const int k = sys.npoints;
    const int n = sys.group().order();
    std::vector<int> rep(k);

    const bool par =
#ifdef _OPENMP
        mode == ExecMode::parallel && k >= 2048;
#else
        false;
    (void)mode;
#endif

#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (par)
#endif
    for (int x = 0; x < k; ++x) {
        int mn = x;
        for (int g = 0; g < n; ++g) mn = std::min(mn, sys.act(g, x));
        rep[x] = mn;
    }

    QuotientSystem q;
    q.projection.assign(k, -1);
    std::vector<int> class_of_rep(k, -1);
    for (int x = 0; x < k; ++x) {
        if (rep[x] != x) continue;
        class_of_rep[x] = (int)q.classes.size();
        q.classes.emplace_back();
    }
    for (int x = 0; x < k; ++x) {
        int c = class_of_rep[rep[x]];
        q.projection[x] = c;
        q.classes[c].push_back(x);
    }

    q.tprime.resize(q.num_classes());
    for (int c = 0; c < q.num_classes(); ++c)
        q.tprime[c] = q.projection[sys.t[q.classes[c][0]]];
    // well-definedness: every member of a class must map consistently
    for (int x = 0; x < k; ++x)
        if (q.projection[sys.t[x]] != q.tprime[q.projection[x]])
            throw QuotientError(
                "induced map ill-defined at point " + std::to_string(x) +
                " (commutation failure upstream)");
    return q;
}

const char* behavior_kind_name(BehaviorKind k) {
    switch (k) {
        case BehaviorKind::surviving: return "surviving";
        case BehaviorKind::glueing: return "glueing";
        case BehaviorKind::shortening: return "shortening";
        case BehaviorKind::glueing_and_shortening: return "glueing+shortening";
    }
    return "?";
}

OrbitBehavior classify_orbit(const FiniteDynSystem& sys, const QuotientSystem& q,
                             const OrbitRecord& orbit) {
    const auto& ctx = *sys.ctx;
    const int x = orbit.representative;

    // G-orbit of x and its intersection with the T-orbit
    std::vector<int> g_orbit;
    {
        std::set<int> seen;
        for (int g = 0; g < ctx.order(); ++g) seen.insert(sys.act(g, x));
        g_orbit.assign(seen.begin(), seen.end());
    }
    int delta = 0;
    {
        std::set<int> t_orbit(orbit.points.begin(), orbit.points.end());
        for (int y : g_orbit)
            if (t_orbit.count(y)) ++delta;
    }

    OrbitBehavior b;
    b.length = orbit.length;
    b.representative = x;
    b.delta = delta;
    b.theta = (int)g_orbit.size() / delta;
    b.class_id = ctx.class_of_mask(stabilizer_mask(sys, x));
    b.quotient_class = q.projection[x];

    if (orbit.length % delta != 0)
        throw QuotientError("shortening factor does not divide orbit length");
    b.quotient_length = orbit.length / delta;

    // cross-checks against the quotient itself and against the admissible
    // channel table for the stabilizer class
    {
        int c = q.projection[x];
        int len = 1;
        int cur = q.tprime[c];
        while (cur != c) {
            cur = q.tprime[cur];
            ++len;
        }
        if (len != b.quotient_length)
            throw QuotientError("quotient orbit length disagrees with |orbit(T) n orbit(G)|");
    }
    if (!ctx.sigma.has_channel(b.class_id, b.delta, b.theta))
        throw QuotientError("orbit behavior (" + std::to_string(b.delta) + "," +
                            std::to_string(b.theta) +
                            ") is not an admissible channel of its stabilizer class");

    if (b.delta == 1)
        b.kind = b.theta == 1 ? BehaviorKind::surviving : BehaviorKind::glueing;
    else
        b.kind = b.theta == 1 ? BehaviorKind::shortening
                              : BehaviorKind::glueing_and_shortening;
    return b;
}

std::vector<OrbitBehavior> classify_all(const FiniteDynSystem& sys, const QuotientSystem& q,
                                        const std::vector<OrbitRecord>& orbs,
                                        ExecMode mode) {
    std::vector<OrbitBehavior> out(orbs.size());
    const bool par =
#ifdef _OPENMP
        mode == ExecMode::parallel && orbs.size() >= 256;
#else
        false;
    (void)mode;
#endif
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 64) if (par)
#endif
    for (long long i = 0; i < (long long)orbs.size(); ++i) {
        out[i] = classify_orbit(sys, q, orbs[i]);
        out[i].orbit_index = (int)i;
    }
    return out;
}

long long BehaviorCensus::count(int cls, int delta, int theta, int n) const {
    auto it = counts.find({cls, delta, theta, n});
    return it == counts.end() ? 0 : it->second;
}

long long BehaviorCensus::quotient_count(int cls, int n) const {
    auto it = quotient_by_class.find({cls, n});
    return it == quotient_by_class.end() ? 0 : it->second;
}

long long BehaviorCensus::upstairs_total(int n) const {
    auto it = upstairs_totals.find(n);
    return it == upstairs_totals.end() ? 0 : it->second;
}

long long BehaviorCensus::quotient_total(int n) const {
    auto it = quotient_totals.find(n);
    return it == quotient_totals.end() ? 0 : it->second;
}

BehaviorCensus behavior_census(const FiniteDynSystem& sys, int horizon, ExecMode mode) {
    BehaviorCensus census;
    census.horizon = horizon;

    QuotientSystem q = build_quotient(sys, mode);
    std::vector<OrbitRecord> orbs = orbits(sys, mode);
    std::vector<OrbitBehavior> behaviors = classify_all(sys, q, orbs, mode);

    for (const OrbitBehavior& b : behaviors) {
        census.counts[{b.class_id, b.delta, b.theta, b.length}] += 1;
        census.upstairs_totals[b.length] += 1;
    }
    // downstairs census, classed by the stabilizer class of any fiber point
    // (constant on the fiber up to conjugacy)
    {
        std::vector<OrbitRecord> qorbs = cycle_decomposition(q.tprime, mode);
        for (const auto& rec : qorbs) {
            int some_point = q.classes[rec.representative][0];
            int cls = sys.ctx->class_of_mask(stabilizer_mask(sys, some_point));
            census.quotient_by_class[{cls, rec.length}] += 1;
            census.quotient_totals[rec.length] += 1;
        }
    }

    // the decomposition identities and channel constraints are theorems;
    // verify them on the full census and treat any mismatch as a bug
    for (const auto& [n, total] : census.upstairs_totals) {
        long long sum = 0;
        for (const auto& [key, c] : census.counts)
            if (std::get<3>(key) == n) sum += c;
        if (sum != total)
            throw QuotientError("orbit-count decomposition (upstairs) failed at n=" +
                                std::to_string(n));
    }
    for (const auto& [key, c] : census.counts) {
        auto [cls, delta, theta, n] = key;
        (void)cls;
        if (c % theta != 0)
            throw QuotientError("glue-divisibility constraint failed at n=" +
                                std::to_string(n));
        if (n % delta != 0)
            throw QuotientError("shortening-divisibility constraint failed at n=" +
                                std::to_string(n));
    }
    for (const auto& [cn, total] : census.quotient_by_class) {
        auto [cls, n] = cn;
        long long sum = 0;
        for (const auto& ch : sys.ctx->sigma.per_class[cls]) {
            long long c = census.count(cls, ch.delta, ch.theta, ch.delta * n);
            if (c % ch.theta != 0)
                throw QuotientError("glue-divisibility constraint failed in class sum");
            sum += c / ch.theta;
        }
        if (sum != total)
            throw QuotientError("quotient orbit-count decomposition failed at class " +
                                std::to_string(cls) + ", n=" + std::to_string(n));
    }
    // every channel count must feed a quotient orbit, so the class sums
    // above covered all of them
    for (const auto& [key, c] : census.counts) {
        auto [cls, delta, theta, n] = key;
        (void)theta;
        if (c > 0 && !census.quotient_by_class.count({cls, n / delta}))
            throw QuotientError(
                "quotient orbit-count decomposition missed a channel at n=" +
                std::to_string(n));
    }
    return census;
}

bool BoundsRow::ok() const {
    if (f_value < f_lower || f_upper < f_value) return false;
    if (o_upper < o_value) return false;
    if (o_lower_applies && o_value < o_lower) return false;
    return true;
}

bool BoundsRow::ok_minglue() const {
    if (f_value < f_lower || f_upper_minglue < f_value) return false;
    if (o_upper_minglue < o_value) return false;
    if (o_lower_applies && o_value < o_lower) return false;
    return true;
}

bool BoundsReport::ok() const {
    for (const auto& r : rows)
        if (!r.ok()) return false;
    return true;
}

bool BoundsReport::ok_minglue() const {
    for (const auto& r : rows)
        if (!r.ok_minglue()) return false;
    return true;
}

std::map<int, int> min_glue_by_delta(const GroupContext& ctx) {
    std::map<int, int> out;
    for (const auto& channels : ctx.sigma.per_class)
        for (const auto& ch : channels) {
            auto it = out.find(ch.delta);
            if (it == out.end() || ch.theta < it->second) out[ch.delta] = ch.theta;
        }
    return out;
}

BoundsReport check_bounds(const FiniteDynSystem& sys, int horizon, ExecMode mode) {
    const auto& ctx = *sys.ctx;
    const int nabla = ctx.sigma.nabla;
    const long long gsize = ctx.order();

    std::vector<OrbitRecord> orbs = orbits(sys, mode);
    PeriodCounts up = period_counts_from_orbits(orbs, nabla * horizon);
    QuotientSystem q = build_quotient(sys, mode);
    PeriodCounts down = period_counts_from_orbits(cycle_decomposition(q.tprime, mode),
                                                  nabla * horizon);

    const auto& sigma_i = ctx.sigma.per_class[ctx.classes.trivial_class];
    std::map<int, int> min_glue = min_glue_by_delta(ctx);

    BoundsReport rep;
    for (int n = 1; n <= horizon; ++n) {
        BoundsRow row;
        row.n = n;
        row.f_value = Rat(down.f[n - 1]);
        row.f_lower = Rat(up.f[n - 1], gsize);
        row.f_upper = Rat(up.f[n - 1]);
        row.f_upper_minglue = row.f_upper;
        row.o_value = Rat(down.o[n - 1]);
        row.o_upper = Rat(up.o[n - 1]);
        row.o_upper_minglue = row.o_upper;

        for (const auto& ch : sigma_i) {
            if (ch.delta <= 1) continue;
            Rat f_dn(up.f[(size_t)ch.delta * n - 1]);
            Rat o_dn(up.o[(size_t)ch.delta * n - 1]);
            row.f_upper = row.f_upper + f_dn / Rat((long long)ch.delta * ch.theta);
            row.o_upper = row.o_upper + o_dn / Rat(ch.theta);
            int tmin = min_glue.at(ch.delta);
            row.f_upper_minglue =
                row.f_upper_minglue + f_dn / Rat((long long)ch.delta * tmin);
            row.o_upper_minglue = row.o_upper_minglue + o_dn / Rat(tmin);
        }

        bool divisible_by_some = false;
        for (const auto& ch : sigma_i)
            if (ch.delta > 1 && n % ch.delta == 0) divisible_by_some = true;
        row.o_lower_applies = !divisible_by_some;
        if (row.o_lower_applies) row.o_lower = Rat(up.o[n - 1], gsize);

        rep.rows.push_back(row);
    }
    return rep;
}

std::vector<std::string> property_audit(const FiniteDynSystem& sys, ExecMode mode) {
    std::vector<std::string> out;
    const GroupContext& ctx = *sys.ctx;
    const FiniteGroup& grp = ctx.group;

    ValidationReport val = validate_system(sys, mode);
    if (!val.ok()) {
        out.push_back("system axioms: " + val.issues.front().describe(sys));
        return out;
    }

    QuotientSystem q = build_quotient(sys, mode);
    std::vector<OrbitRecord> orbs = orbits(sys, mode);

    std::map<int, int> qlen, qrep;
    for (const auto& rec : cycle_decomposition(q.tprime, mode))
        for (int c : rec.points) {
            qlen[c] = rec.length;
            qrep[c] = rec.representative;
        }
    std::map<int, long long> fiber;
    for (const auto& rec : orbs) fiber[qrep.at(q.projection[rec.representative])] += 1;

    for (const auto& rec : orbs) {
        const int x = rec.representative;
        std::set<int> t_orbit(rec.points.begin(), rec.points.end());
        std::set<int> g_orbit;
        for (int g = 0; g < grp.order(); ++g) g_orbit.insert(sys.act(g, x));
        int delta = 0;
        for (int y : g_orbit)
            if (t_orbit.count(y)) ++delta;
        auto where = [&] { return " (orbit of point " + std::to_string(x) + ")"; };

        int len_down = qlen.at(q.projection[x]);
        if (rec.length != delta * len_down) {
            out.push_back("shortening factor: |orbit(T) n orbit(G)| = " +
                          std::to_string(delta) + " but lengths are " +
                          std::to_string(rec.length) + " over " +
                          std::to_string(len_down) + where());
            continue;
        }
        // cyclic witness: T^(n/delta) agrees with one group element, whose
        // cyclic orbit is exactly the intersection
        {
            int tm = x;
            for (int i = 0; i < len_down; ++i) tm = sys.t[tm];
            int gw = -1;
            for (int g = 0; g < grp.order(); ++g)
                if (sys.act(g, x) == tm) gw = g;
            if (gw < 0) {
                out.push_back("shortening witness: no group element matches T^" +
                              std::to_string(len_down) + where());
            } else {
                std::set<int> cyc;
                int cur = x;
                for (int i = 0; i < grp.element_order(gw); ++i) {
                    cyc.insert(cur);
                    cur = sys.act(gw, cur);
                }
                std::set<int> inter;
                for (int y : g_orbit)
                    if (t_orbit.count(y)) inter.insert(y);
                if (cyc != inter)
                    out.push_back(
                        "shortening witness: intersection is not the cyclic orbit" +
                        where());
            }
        }
        int glue = (int)g_orbit.size() / delta;
        if (fiber.at(qrep.at(q.projection[x])) != glue)
            out.push_back("glue count: fiber has " +
                          std::to_string(fiber.at(qrep.at(q.projection[x]))) +
                          " orbits, expected " + std::to_string(glue) + where());
        if (g_orbit.size() == 1 && (delta != 1 || glue != 1))
            out.push_back("surviving orbit: singleton group orbit did not survive" +
                          where());
        Subgroup h = stabilizer(sys, x);
        int cls = ctx.class_of_mask(h.mask);
        if (!ctx.sigma.has_channel(cls, delta, glue))
            out.push_back("admissible channels: (" + std::to_string(delta) + "," +
                          std::to_string(glue) +
                          ") is not admissible for the stabilizer class" + where());
        if (delta > ctx.sigma.nabla)
            out.push_back("shortening cap: factor exceeds the maximal element order" +
                          where());
    }

    // stabilizer-class partition is T-invariant
    for (int x = 0; x < sys.npoints; ++x)
        if (stabilizer_mask(sys, x) != stabilizer_mask(sys, sys.t[x])) {
            out.push_back("class partition: stabilizer changes along the orbit of point " +
                          std::to_string(x));
            break;
        }

    // the count decompositions and divisibility constraints
    try {
        behavior_census(sys, 1, mode);
    } catch (const QuotientError& e) {
        out.push_back(e.what());
    }
    return out;
}

GrowthReport growth_estimate(const PeriodCounts& up, const PeriodCounts& down, int nabla,
                             double tolerance) {
    if (up.horizon < 4 || down.horizon < 4)
        throw HorizonTooSmall("growth estimate needs horizon >= 4");
    GrowthReport rep;
    rep.nabla = nabla;
    int h = std::min(up.horizon, down.horizon);
    for (int n = 1; n <= h; ++n) {
        rep.f_exponents_up.push_back(std::log((double)std::max(up.f[n - 1], 1LL)) / n);
        rep.f_exponents_down.push_back(std::log((double)std::max(down.f[n - 1], 1LL)) / n);
    }
    rep.orbit_exponent_up = std::log((double)std::max(up.o[h - 1], 1LL)) / h;
    rep.orbit_exponent_down = std::log((double)std::max(down.o[h - 1], 1LL)) / h;

    double lo = rep.f_exponents_up.back();
    double hi = nabla * lo;
    double v = rep.f_exponents_down.back();
    rep.window_ok = v >= lo - tolerance && v <= hi + tolerance;
    return rep;
}

}  // namespace orbitq
