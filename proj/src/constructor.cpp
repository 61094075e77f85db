#include "orbitq/constructor.hpp"

#include <algorithm>
#include <random>

namespace orbitq {

void BehaviorSpec::validate() const {
    if (!ctx) throw SpecError("spec has no group");
    for (const auto& [key, b] : entries) {
        auto [cls, delta, theta, n] = key;
        if (b < 0) throw SpecError("negative channel count");
        if (n < 1) throw SpecError("channel length must be >= 1");
        if (cls < 0 || cls >= ctx->classes.num_classes())
            throw SpecError("unknown stabilizer class " + std::to_string(cls));
        if (!ctx->sigma.has_channel(cls, delta, theta))
            throw SpecError("(" + std::to_string(delta) + "," + std::to_string(theta) +
                            ") is not an admissible channel of class " +
                            std::to_string(cls));
    }
    if (!allow_no_anchor) {
        if (entry(ctx->classes.full_class, 1, 1, 1) < 1)
            throw SpecError(
                "prescription lacks the anchor fixed point with full stabilizer "
                "(count at ([G],(1,1),1) must be >= 1, or set allow_no_anchor)");
    }
}

long long BehaviorSpec::entry(int cls, int delta, int theta, int n) const {
    auto it = entries.find({cls, delta, theta, n});
    return it == entries.end() ? 0 : it->second;
}

int BehaviorSpec::max_upstairs_length() const {
    int m = 0;
    for (const auto& [key, b] : entries)
        if (b > 0) m = std::max(m, std::get<1>(key) * std::get<3>(key));
    return m;
}

ChannelGeometry select_channel_geometry(const GroupContext& ctx, int class_id, int delta,
                                        int theta) {
    if (!ctx.sigma.has_channel(class_id, delta, theta))
        throw SpecError("channel (" + std::to_string(delta) + "," +
                        std::to_string(theta) + ") not admissible for class " +
                        std::to_string(class_id));
    const FiniteGroup& g = ctx.group;
    ChannelGeometry geom;
    geom.class_id = class_id;
    geom.delta = delta;
    geom.theta = theta;
    geom.h = ctx.classes.representative(class_id);

    Subgroup n = normalizer(g, geom.h);
    geom.h_sigma = -1;
    for (int x : n.elements)
        if (coset_order(g, geom.h, x) == delta) {
            geom.h_sigma = x;
            break;
        }
    if (geom.h_sigma < 0)
        throw SpecError("no element of coset order " + std::to_string(delta) +
                        " in the normalizer");  // unreachable for admissible channels

    std::vector<int> kgens = geom.h.elements;
    kgens.push_back(geom.h_sigma);
    geom.k = generated_subgroup(g, kgens);
    if (geom.k.order() != delta * geom.h.order())
        throw SpecError("channel subgroup has wrong order");  // internal check

    // greedy minimum sweep over left cosets s*K
    geom.coset_rep_of.assign(g.order(), -1);
    for (int s = 0; s < g.order(); ++s) {
        if (geom.coset_rep_of[s] >= 0) continue;
        int idx = (int)geom.transversal.size();
        geom.transversal.push_back(s);
        for (int x : geom.k.elements) geom.coset_rep_of[g.mul(s, x)] = idx;
    }
    if ((int)geom.transversal.size() != theta)
        throw SpecError("transversal size mismatch");  // internal check
    return geom;
}

std::pair<int, int> decompose(const GroupContext& ctx, const ChannelGeometry& geom, int g,
                              int s) {
    const FiniteGroup& grp = ctx.group;
    int gs = grp.mul(g, geom.transversal[s]);
    int sp = geom.coset_rep_of[gs];
    // t = s'^-1 * g * s lies in K; find l with t in h_sigma^l H, i.e. the
    // least l such that h_sigma^-l * t lands in H
    int t = grp.mul(grp.inv(geom.transversal[sp]), gs);
    int cur = t;
    for (int l = 0; l < geom.delta; ++l) {
        if (geom.h.contains(cur)) return {sp, l};
        cur = grp.mul(grp.inv(geom.h_sigma), cur);
    }
    throw SpecError("coset decomposition failed");  // unreachable: K = U h^l H
}

namespace {

struct Block {
    BehaviorSpec::Key key;
    ChannelGeometry geom;
    long long count = 0;     // b value
    int down_length = 0;     // n
    int up_length = 0;       // delta * n
    long long first_point = 0;

    long long size() const { return (long long)geom.theta * count * up_length; }
    long long point(int s, long long i, int m) const {
        return first_point + ((long long)s * count + i) * up_length + m;
    }
};

}  // namespace

FiniteDynSystem build_system(const BehaviorSpec& spec) {
    spec.validate();
    const GroupContext& ctx = *spec.ctx;
    const FiniteGroup& grp = ctx.group;

    std::vector<Block> blocks;
    long long total = 0;
    for (const auto& [key, b] : spec.entries) {
        if (b == 0) continue;
        auto [cls, delta, theta, n] = key;
        Block blk;
        blk.key = key;
        blk.geom = select_channel_geometry(ctx, cls, delta, theta);
        blk.count = b;
        blk.down_length = n;
        blk.up_length = delta * n;
        blk.first_point = total;
        total += blk.size();
        blocks.push_back(std::move(blk));
    }
    if (total > 50'000'000)
        throw SpecError("prescription too large: " + std::to_string(total) + " points");

    const int k = (int)total;
    std::vector<int> t(k);
    std::vector<int> action((size_t)grp.order() * k);
    // per-point labels are for inspection of small systems; realized growth
    // instances run to millions of points where they would dominate memory
    const bool want_labels = total <= 200'000;
    std::vector<std::string> labels(want_labels ? k : 0);

    for (const Block& blk : blocks) {
        const ChannelGeometry& geom = blk.geom;
        const int up = blk.up_length;
        for (int s = 0; s < geom.theta; ++s)
            for (long long i = 0; i < blk.count; ++i)
                for (int m = 0; m < up; ++m) {
                    long long p = blk.point(s, i, m);
                    t[p] = (int)blk.point(s, i, (m + 1) % up);
                    if (want_labels)
                        labels[p] = "c" + std::to_string(std::get<0>(blk.key)) + ":d" +
                                    std::to_string(geom.delta) + "t" +
                                    std::to_string(geom.theta) + ":n" +
                                    std::to_string(blk.down_length) + ":s" +
                                    std::to_string(s) + ":i" + std::to_string(i) +
                                    ":m" + std::to_string(m);
                }
        for (int g = 0; g < grp.order(); ++g) {
            for (int s = 0; s < geom.theta; ++s) {
                auto [sp, l] = decompose(ctx, geom, g, s);
                const int shift = l * blk.down_length;  // l * up/delta
                for (long long i = 0; i < blk.count; ++i)
                    for (int m = 0; m < up; ++m)
                        action[(size_t)g * k + blk.point(s, i, m)] =
                            (int)blk.point(sp, i, (m + shift) % up);
            }
        }
    }

    FiniteDynSystem sys =
        FiniteDynSystem::make(spec.ctx, k, std::move(t), std::move(action));
    sys.point_labels = std::move(labels);
    return sys;
}

std::pair<std::vector<long long>, std::vector<long long>> predicted_counts(
    const BehaviorSpec& spec, int horizon) {
    std::vector<long long> a(horizon, 0), b(horizon, 0);
    for (const auto& [key, count] : spec.entries) {
        auto [cls, delta, theta, n] = key;
        (void)cls;
        if (n <= horizon) b[n - 1] += count;
        long long up = (long long)delta * n;
        if (up <= horizon) a[up - 1] += (long long)theta * count;
    }
    return {a, b};
}

ConstructionReport verify_construction(const BehaviorSpec& spec, int horizon,
                                       ExecMode mode) {
    return verify_built_system(spec, build_system(spec), horizon, mode);
}

ConstructionReport verify_built_system(const BehaviorSpec& spec,
                                       const FiniteDynSystem& sys, int horizon,
                                       ExecMode mode) {
    ConstructionReport rep;
    auto fail = [&](std::string msg) {
        rep.ok = false;
        rep.mismatches.push_back(std::move(msg));
    };

    ValidationReport val = validate_system(sys, mode);
    if (!val.ok()) {
        fail("constructed system failed validation: " +
             val.issues.front().describe(sys));
        return rep;
    }

    auto [a, b] = predicted_counts(spec, horizon);
    PeriodCounts up = period_counts(sys, horizon, mode);
    QuotientSystem q = build_quotient(sys, mode);
    PeriodCounts down = period_counts_from_orbits(cycle_decomposition(q.tprime, mode),
                                                  horizon);
    for (int n = 1; n <= horizon; ++n) {
        if (up.o[n - 1] != a[n - 1])
            fail("upstairs orbit count at n=" + std::to_string(n) + ": got " +
                 std::to_string(up.o[n - 1]) + ", prescribed " + std::to_string(a[n - 1]));
        if (down.o[n - 1] != b[n - 1])
            fail("downstairs orbit count at n=" + std::to_string(n) + ": got " +
                 std::to_string(down.o[n - 1]) + ", prescribed " +
                 std::to_string(b[n - 1]));
    }

    // channel-by-channel: the census at upstairs length delta*n must equal
    // theta * b_n, and nothing else may appear
    BehaviorCensus census = behavior_census(sys, horizon, mode);
    std::map<BehaviorCensus::Key, long long> expect;
    for (const auto& [key, count] : spec.entries) {
        if (count == 0) continue;
        auto [cls, delta, theta, n] = key;
        expect[{cls, delta, theta, delta * n}] += theta * count;
    }
    if (expect != census.counts) {
        for (const auto& [key, c] : expect) {
            auto it = census.counts.find(key);
            long long got = it == census.counts.end() ? 0 : it->second;
            if (got != c)
                fail("channel census mismatch at (class " +
                     std::to_string(std::get<0>(key)) + ", delta " +
                     std::to_string(std::get<1>(key)) + ", theta " +
                     std::to_string(std::get<2>(key)) + ", n " +
                     std::to_string(std::get<3>(key)) + "): got " + std::to_string(got) +
                     ", prescribed " + std::to_string(c));
        }
        for (const auto& [key, c] : census.counts)
            if (!expect.count(key))
                fail("unexpected census channel (class " +
                     std::to_string(std::get<0>(key)) + ", delta " +
                     std::to_string(std::get<1>(key)) + ", theta " +
                     std::to_string(std::get<2>(key)) + ", n " +
                     std::to_string(std::get<3>(key)) + ") with count " +
                     std::to_string(c));
    }
    return rep;
}

BehaviorSpec sample_behavior_spec(std::shared_ptr<const GroupContext> ctx, uint64_t seed,
                                  int max_count, int max_n) {
    std::mt19937_64 rng(seed);
    auto uniform = [&](int lo, int hi) {
        return (int)(lo + rng() % (uint64_t)(hi - lo + 1));
    };
    BehaviorSpec spec;
    spec.ctx = ctx;
    spec.entries[{ctx->classes.full_class, 1, 1, 1}] = uniform(1, max_count);
    int extra = uniform(1, 5);
    for (int i = 0; i < extra; ++i) {
        int cls = uniform(0, ctx->classes.num_classes() - 1);
        const auto& channels = ctx->sigma.per_class[cls];
        const auto& ch = channels[uniform(0, (int)channels.size() - 1)];
        int n = uniform(1, max_n);
        spec.entries[{cls, ch.delta, ch.theta, n}] += uniform(1, max_count);
    }
    spec.validate();
    return spec;
}

}  // namespace orbitq
