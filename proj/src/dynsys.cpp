#include "orbitq/dynsys.hpp"

#include <algorithm>
#include <queue>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace orbitq {

namespace {

bool parallel_enabled(ExecMode mode, int npoints) {
#ifdef _OPENMP
    return mode == ExecMode::parallel && npoints >= 2048;
#else
    (void)mode;
    (void)npoints;
    return false;
#endif
}

}  // namespace

FiniteDynSystem FiniteDynSystem::make(std::shared_ptr<const GroupContext> ctx, int npoints,
                                      std::vector<int> t, std::vector<int> action_table) {
    FiniteDynSystem sys;
    if ((int)t.size() != npoints)
        throw DynSysError("T size does not match point count");
    if (action_table.size() != (size_t)ctx->order() * npoints)
        throw DynSysError("action table size does not match |G| x points");
    sys.ctx = std::move(ctx);
    sys.npoints = npoints;
    sys.t = std::move(t);
    sys.action_ = std::move(action_table);
    return sys;
}

FiniteDynSystem FiniteDynSystem::from_generator_action(
    std::shared_ptr<const GroupContext> ctx, int npoints, std::vector<int> t,
    const std::vector<std::pair<int, std::vector<int>>>& generator_action) {
    const FiniteGroup& g = ctx->group;
    const int n = g.order();
    std::vector<std::vector<int>> rows(n);
    std::vector<char> known(n, 0);

    std::vector<int> ident(npoints);
    for (int i = 0; i < npoints; ++i) ident[i] = i;
    rows[g.identity()] = ident;
    known[g.identity()] = 1;

    for (const auto& [elem, perm] : generator_action) {
        if (elem < 0 || elem >= n) throw DynSysError("generator element index out of range");
        if ((int)perm.size() != npoints)
            throw DynSysError("generator action size does not match point count");
        rows[elem] = perm;
        known[elem] = 1;
    }

    // complete to all of G: row(a*b)[x] = row(a)[row(b)[x]]
    std::queue<int> work;
    for (int e = 0; e < n; ++e)
        if (known[e]) work.push(e);
    while (!work.empty()) {
        int b = work.front();
        work.pop();
        for (const auto& [a, perm_a] : generator_action) {
            int ab = g.mul(a, b);
            if (known[ab]) continue;
            std::vector<int> row(npoints);
            for (int x = 0; x < npoints; ++x) row[x] = perm_a[rows[b][x]];
            rows[ab] = std::move(row);
            known[ab] = 1;
            work.push(ab);
        }
    }
    for (int e = 0; e < n; ++e)
        if (!known[e])
            throw DynSysError("listed generators do not generate the group (element " +
                              g.label(e) + " unreachable)");

    std::vector<int> table((size_t)n * npoints);
    for (int e = 0; e < n; ++e)
        std::copy(rows[e].begin(), rows[e].end(), table.begin() + (size_t)e * npoints);
    return make(std::move(ctx), npoints, std::move(t), std::move(table));
}

std::string ValidationIssue::describe(const FiniteDynSystem& sys) const {
    const auto& grp = sys.group();
    switch (kind) {
        case Kind::t_not_bijective:
            return "T is not a bijection (point " + std::to_string(x) + ")";
        case Kind::identity_action:
            return "identity does not fix point " + std::to_string(x);
        case Kind::composition:
            return "action(" + grp.label(g) + "*" + grp.label(h) + ", " +
                   std::to_string(x) + ") != action(" + grp.label(g) + ", action(" +
                   grp.label(h) + ", x))";
        case Kind::commutation:
            return "action(" + grp.label(g) + ", T(" + std::to_string(x) +
                   ")) != T(action(" + grp.label(g) + ", " + std::to_string(x) + "))";
    }
    return "";
}

ValidationReport validate_system(const FiniteDynSystem& sys, ExecMode mode) {
    ValidationReport rep;
    const int k = sys.npoints;
    const int n = sys.group().order();
    const FiniteGroup& grp = sys.group();

    {
        std::vector<char> hit(k, 0);
        for (int x = 0; x < k; ++x) {
            int y = sys.t[x];
            if (y < 0 || y >= k || hit[y]) {
                rep.issues.push_back({ValidationIssue::Kind::t_not_bijective, -1, -1, x});
            } else {
                hit[y] = 1;
            }
        }
    }

    const bool par = parallel_enabled(mode, k);
    std::vector<std::vector<ValidationIssue>> buckets(par ? 0 : 1);
#ifdef _OPENMP
    if (par) buckets.resize(omp_get_max_threads());
#endif
    if (buckets.empty()) buckets.resize(1);

#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (par)
#endif
    for (int x = 0; x < k; ++x) {
        int tid = 0;
#ifdef _OPENMP
        if (par) tid = omp_get_thread_num();
#endif
        auto& out = buckets[tid];
        if (sys.act(grp.identity(), x) != x)
            out.push_back({ValidationIssue::Kind::identity_action, -1, -1, x});
        for (int g = 0; g < n; ++g) {
            for (int h = 0; h < n; ++h)
                if (sys.act(grp.mul(g, h), x) != sys.act(g, sys.act(h, x)))
                    out.push_back({ValidationIssue::Kind::composition, g, h, x});
            if (sys.act(g, sys.t[x]) != sys.t[sys.act(g, x)])
                out.push_back({ValidationIssue::Kind::commutation, g, -1, x});
        }
    }
    for (auto& b : buckets)
        rep.issues.insert(rep.issues.end(), b.begin(), b.end());
    std::sort(rep.issues.begin(), rep.issues.end(), [](const auto& a, const auto& b) {
        return std::tie(a.kind, a.g, a.h, a.x) < std::tie(b.kind, b.g, b.h, b.x);
    });
    return rep;
}

void require_valid(const FiniteDynSystem& sys, ExecMode mode) {
    ValidationReport rep = validate_system(sys, mode);
    if (!rep.ok())
        throw DynSysError("invalid system: " + rep.issues.front().describe(sys) +
                          (rep.issues.size() > 1
                               ? " (+" + std::to_string(rep.issues.size() - 1) + " more)"
                               : ""));
}

std::vector<OrbitRecord> cycle_decomposition(const std::vector<int>& bijection,
                                             ExecMode mode) {
    const int k = (int)bijection.size();
    std::vector<OrbitRecord> out;

    if (!parallel_enabled(mode, k)) {
        std::vector<char> visited(k, 0);
        for (int x = 0; x < k; ++x) {
            if (visited[x]) continue;
            OrbitRecord rec;
            rec.representative = x;  // sweep order makes x the cycle minimum
            int cur = x;
            do {
                visited[cur] = 1;
                rec.points.push_back(cur);
                cur = bijection[cur];
            } while (cur != x);
            rec.length = (int)rec.points.size();
            out.push_back(std::move(rec));
        }
        return out;
    }

#ifdef _OPENMP
    // each cycle is claimed by its minimal point; a walk abandons as soon as
    // it meets a smaller index, so the output is schedule-independent
    std::vector<std::vector<OrbitRecord>> buckets(omp_get_max_threads());
#pragma omp parallel for schedule(dynamic, 512)
    for (int x = 0; x < k; ++x) {
        int cur = bijection[x];
        bool owner = true;
        while (cur != x) {
            if (cur < x) {
                owner = false;
                break;
            }
            cur = bijection[cur];
        }
        if (!owner) continue;
        OrbitRecord rec;
        rec.representative = x;
        int p = x;
        do {
            rec.points.push_back(p);
            p = bijection[p];
        } while (p != x);
        rec.length = (int)rec.points.size();
        buckets[omp_get_thread_num()].push_back(std::move(rec));
    }
    for (auto& b : buckets)
        for (auto& rec : b) out.push_back(std::move(rec));
    std::sort(out.begin(), out.end(), [](const OrbitRecord& a, const OrbitRecord& b) {
        return a.representative < b.representative;
    });
#endif
    return out;
}

std::vector<OrbitRecord> orbits(const FiniteDynSystem& sys, ExecMode mode) {
    return cycle_decomposition(sys.t, mode);
}

PeriodCounts period_counts_from_orbits(const std::vector<OrbitRecord>& orbs, int horizon) {
    PeriodCounts pc;
    pc.horizon = horizon;
    pc.o.assign(horizon, 0);
    pc.f.assign(horizon, 0);
    pc.pi.assign(horizon, 0);
    for (const auto& rec : orbs)
        if (rec.length <= horizon) pc.o[rec.length - 1] += 1;
    for (int n = 1; n <= horizon; ++n) {
        for (int d = 1; d <= n; ++d)
            if (n % d == 0) pc.f[n - 1] += (long long)d * pc.o[d - 1];
        pc.pi[n - 1] = pc.o[n - 1] + (n > 1 ? pc.pi[n - 2] : 0);
    }
    return pc;
}

PeriodCounts period_counts(const FiniteDynSystem& sys, int horizon, ExecMode mode) {
    if (horizon < 1) throw DynSysError("horizon must be >= 1");
    return period_counts_from_orbits(orbits(sys, mode), horizon);
}

uint32_t stabilizer_mask(const FiniteDynSystem& sys, int x) {
    uint32_t m = 0;
    for (int g = 0; g < sys.group().order(); ++g)
        if (sys.act(g, x) == x) m |= 1u << g;
    return m;
}

Subgroup stabilizer(const FiniteDynSystem& sys, int x) {
    return Subgroup::from_mask(stabilizer_mask(sys, x));
}

std::map<int, std::vector<int>> partition_by_class(const FiniteDynSystem& sys,
                                                   ExecMode mode) {
    const int k = sys.npoints;
    std::vector<int> cls(k);
    const bool par = parallel_enabled(mode, k);
#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (par)
#endif
    for (int x = 0; x < k; ++x) cls[x] = sys.ctx->class_of_mask(stabilizer_mask(sys, x));

    // stabilizers must be T-invariant along (periodic) orbits
    for (int x = 0; x < k; ++x)
        if (stabilizer_mask(sys, x) != stabilizer_mask(sys, sys.t[x]))
            throw DynSysError("stabilizer not T-invariant at point " + std::to_string(x));

    std::map<int, std::vector<int>> out;
    for (int x = 0; x < k; ++x) out[cls[x]].push_back(x);
    return out;
}

FiniteDynSystem disjoint_union(const FiniteDynSystem& a, const FiniteDynSystem& b) {
    if (a.ctx != b.ctx) throw DynSysError("disjoint union requires a shared group context");
    const int ka = a.npoints, kb = b.npoints;
    const int n = a.group().order();
    FiniteDynSystem sys;
    sys.ctx = a.ctx;
    sys.npoints = ka + kb;
    sys.t.resize(ka + kb);
    for (int x = 0; x < ka; ++x) sys.t[x] = a.t[x];
    for (int x = 0; x < kb; ++x) sys.t[ka + x] = b.t[x] + ka;
    sys.action_.resize((size_t)n * (ka + kb));
    for (int g = 0; g < n; ++g) {
        for (int x = 0; x < ka; ++x) sys.action_[(size_t)g * (ka + kb) + x] = a.act(g, x);
        for (int x = 0; x < kb; ++x)
            sys.action_[(size_t)g * (ka + kb) + ka + x] = b.act(g, x) + ka;
    }
    if (!a.point_labels.empty() || !b.point_labels.empty()) {
        sys.point_labels.resize(ka + kb);
        for (int x = 0; x < ka; ++x)
            sys.point_labels[x] = x < (int)a.point_labels.size() ? a.point_labels[x] : "";
        for (int x = 0; x < kb; ++x)
            sys.point_labels[ka + x] =
                x < (int)b.point_labels.size() ? b.point_labels[x] : "";
    }
    return sys;
}

}  // namespace orbitq
