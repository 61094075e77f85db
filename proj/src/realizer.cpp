#include "orbitq/realizer.hpp"

#include <algorithm>

namespace orbitq {

SequencePair make_sequence_pair(std::shared_ptr<const GroupContext> ctx,
                                std::vector<long long> a, std::vector<long long> b,
                                int crossover) {
    if (a.size() != b.size()) throw PairError("sequences must have equal length");
    if (a.empty()) throw PairError("sequences must be nonempty");
    if (crossover < 1) throw PairError("crossover must be >= 1");
    const int m = (int)a.size();
    const long long gsize = ctx->order();
    const int nabla = ctx->sigma.nabla;
    const long long theta_cap = ctx->sigma.theta_cap;

    for (int n = 1; n <= m; ++n)
        if (a[n - 1] < 0 || b[n - 1] < 0) throw PairError("sequences must be nonnegative");
    if (a[0] < 1) throw PairError("a_1 must be >= 1");
    if (!(Rat(b[0]) > Rat(a[0], gsize)))
        throw PairError("b_1 must exceed a_1/|G| (got b_1=" + std::to_string(b[0]) +
                        ", a_1/|G|=" + Rat(a[0], gsize).str() + ")");

    SequencePair pair;
    pair.ctx = std::move(ctx);
    pair.a = std::move(a);
    pair.b = std::move(b);
    pair.crossover = crossover;

    for (int n = 1; n <= m; ++n) {
        long long an = pair.a[n - 1], bn = pair.b[n - 1];
        if (n < crossover) {
            if (Rat(bn) < Rat(an, gsize))
                throw PairError("b_" + std::to_string(n) + " < a_" + std::to_string(n) +
                                "/|G|");
            if (bn > an)
                throw PairError("b_" + std::to_string(n) + " > a_" + std::to_string(n));
        } else {
            if (bn < an)
                throw PairError("b_" + std::to_string(n) + " < a_" + std::to_string(n) +
                                " above the crossover");
            if ((long long)nabla * n <= m) {
                Rat cap(pair.a[(size_t)nabla * n - 1], theta_cap);
                if (Rat(bn) > cap)
                    throw PairError("b_" + std::to_string(n) +
                                    " exceeds a_{nabla n}/Theta = " + cap.str());
                if (cap < Rat(an))
                    throw PairError("hypothesis a_{nabla n}/Theta >= a_n fails at n=" +
                                    std::to_string(n));
            } else {
                pair.provisional.push_back(n);
            }
        }
    }
    return pair;
}

namespace {

struct GlueChannel {
    int theta;     // > 1
    int class_id;  // deterministic representative class for this theta
};

/// All distinct theta values of delta = 1, theta > 1 channels, each assigned
/// to the class with the smallest canonical representative admitting it.
/// Sorted by descending theta.
std::vector<GlueChannel> glue_channels(const GroupContext& ctx) {
    std::map<int, int> by_theta;  // theta -> class
    for (int c = 0; c < ctx.classes.num_classes(); ++c)
        for (const auto& ch : ctx.sigma.per_class[c])
            if (ch.delta == 1 && ch.theta > 1 && !by_theta.count(ch.theta))
                by_theta[ch.theta] = c;  // classes are in canonical-rep order
    std::vector<GlueChannel> out;
    for (auto it = by_theta.rbegin(); it != by_theta.rend(); ++it)
        out.push_back({it->first, it->second});
    return out;
}

/// Greedy largest-theta-first search with backtracking for nonnegative x
/// with sum x_i*(theta_i - 1) = residual and sum x_i <= budget.
bool solve_glue(const std::vector<GlueChannel>& channels, size_t idx, long long residual,
                long long budget, std::vector<long long>& x) {
    if (residual == 0) return true;
    if (idx >= channels.size() || budget <= 0) return false;
    long long weight = channels[idx].theta - 1;
    long long top = std::min(residual / weight, budget);
    for (long long take = top; take >= 0; --take) {
        x[idx] = take;
        if (solve_glue(channels, idx + 1, residual - take * weight, budget - take, x))
            return true;
    }
    x[idx] = 0;
    return false;
}

}  // namespace

BehaviorSpec split_sequences(const SequencePair& pair, SplitMode mode) {
    const GroupContext& ctx = *pair.ctx;
    const int m = pair.horizon();
    const int cross = pair.crossover;
    const int nabla = ctx.sigma.nabla;
    const long long gsize = ctx.order();
    const long long theta_cap = ctx.sigma.theta_cap;
    const int cls_full = ctx.classes.full_class;
    const int cls_triv = ctx.classes.trivial_class;
    const int cls_nabla = ctx.sigma.h_nabla_class;

    BehaviorSpec spec;
    spec.ctx = pair.ctx;

    std::vector<long long> b_full(m + 1, 0);   // [G], (1,1)
    std::vector<long long> b_nabla(m + 1, 0);  // [H_nabla], (nabla, Theta)
    std::vector<GlueChannel> glue = glue_channels(ctx);

    for (int n = 1; n <= m; ++n) {
        long long an = pair.a[n - 1], bn = pair.b[n - 1];
        if (n < cross) {
            long long residual = an - bn;  // >= 0 by the pair invariants
            if (mode == SplitMode::verbatim) {
                if (gsize == 1) {
                    if (residual != 0) throw InfeasibleSplit(n, residual);
                    b_full[n] = bn;
                } else {
                    long long bi = (residual + gsize - 2) / (gsize - 1);  // ceil
                    if (bi * (gsize - 1) != residual)
                        throw InfeasibleSplit(n, residual);  // ceiling not exact
                    if (bn - bi < (n == 1 ? 1 : 0)) throw InfeasibleSplit(n, residual);
                    if (bi > 0)
                        spec.entries[{cls_triv, 1, (int)gsize, n}] = bi;
                    b_full[n] = bn - bi;
                }
            } else {
                long long budget = bn - (n == 1 ? 1 : 0);
                std::vector<long long> x(glue.size(), 0);
                if (!solve_glue(glue, 0, residual, budget, x))
                    throw InfeasibleSplit(n, residual);
                long long used = 0;
                for (size_t i = 0; i < glue.size(); ++i) {
                    if (x[i] == 0) continue;
                    spec.entries[{glue[i].class_id, 1, glue[i].theta, n}] += x[i];
                    used += x[i];
                }
                b_full[n] = bn - used;
            }
        } else {
            // recursion through the maximal-shortening channel
            long long carried = (n % nabla == 0) ? b_nabla[n / nabla] : 0;
            long long bg = an - theta_cap * carried;
            if (bg < 0) throw InfeasibleSplit(n, an - bn);
            b_full[n] = bg;
            b_nabla[n] = bn - bg;
            if (b_nabla[n] < 0) throw InfeasibleSplit(n, an - bn);
        }
    }

    for (int n = 1; n <= m; ++n) {
        if (b_full[n] > 0) spec.entries[{cls_full, 1, 1, n}] += b_full[n];
        if (b_nabla[n] > 0)
            spec.entries[{cls_nabla, nabla, (int)theta_cap, n}] += b_nabla[n];
    }

    if (spec.entry(cls_full, 1, 1, 1) < 1) throw InfeasibleSplit(1, pair.a[0] - pair.b[0]);
    spec.validate();

    // exactness guarantee: the prescription reproduces the pair on 1..m
    auto [pa, pb] = predicted_counts(spec, m);
    for (int n = 1; n <= m; ++n)
        if (pa[n - 1] != pair.a[n - 1] || pb[n - 1] != pair.b[n - 1])
            throw InfeasibleSplit(n, pair.a[n - 1] - pair.b[n - 1]);
    return spec;
}

SequencePair growth_rate_instance(std::shared_ptr<const GroupContext> ctx, Rat lambda,
                                Rat eta, Rat c, int horizon) {
    const int nabla = ctx->sigma.nabla;
    const long long theta_cap = ctx->sigma.theta_cap;
    const long long gsize = ctx->order();
    if (!(lambda > Rat(1))) throw CaseViolation("lambda must exceed 1");
    if (!(c > Rat(0))) throw CaseViolation("c must be positive");
    Rat lam_nabla = lambda.pow(nabla);

    bool case_same = eta == lambda && c >= Rat(1, gsize);
    bool case_mid = lambda < eta && eta < lam_nabla;
    bool case_top = eta == lam_nabla && c <= Rat(1, theta_cap);
    if (!case_same && !case_mid && !case_top)
        throw CaseViolation(
            "(lambda, eta, c) outside the admissible cases: need eta = lambda with "
            "c >= 1/|G|, or lambda < eta < lambda^nabla, or eta = lambda^nabla with "
            "c <= 1/Theta");

    // least crossover with c*eta^N < lambda^(nabla N)/Theta; at the exact
    // boundary (eta = lambda^nabla, c = 1/Theta) equality holds identically
    // and the first index works
    int cross = -1;
    for (int n = 1; n <= 2 * horizon + 64; ++n) {
        Rat lhs = c * eta.pow(n);
        Rat rhs = lam_nabla.pow(n) / Rat(theta_cap);
        if (lhs < rhs || (case_top && lhs == rhs)) {
            cross = n;
            break;
        }
    }
    if (cross < 0) throw CaseViolation("no admissible crossover index found");

    std::vector<long long> a(horizon), b(horizon);
    for (int n = 1; n <= horizon; ++n) {
        a[n - 1] = lambda.pow(n).ceil();
        b[n - 1] = (n < cross ? c * lambda.pow(n) : c * eta.pow(n)).ceil();
    }
    return make_sequence_pair(std::move(ctx), std::move(a), std::move(b), cross);
}

RealizeReport realize_and_verify(const SequencePair& pair, int horizon, SplitMode mode,
                                 ExecMode exec) {
    RealizeReport rep;
    rep.spec = split_sequences(pair, mode);
    FiniteDynSystem sys = build_system(rep.spec);
    ConstructionReport con = verify_built_system(rep.spec, sys, horizon, exec);
    if (!con.ok) {
        rep.ok = false;
        rep.mismatches = con.mismatches;
        return rep;
    }
    PeriodCounts up = period_counts(sys, horizon, exec);
    QuotientSystem q = build_quotient(sys, exec);
    PeriodCounts down =
        period_counts_from_orbits(cycle_decomposition(q.tprime, exec), horizon);
    for (int n = 1; n <= std::min(horizon, pair.horizon()); ++n) {
        if (up.o[n - 1] != pair.a[n - 1]) {
            rep.ok = false;
            rep.mismatches.push_back("O_" + std::to_string(n) + "(T) = " +
                                     std::to_string(up.o[n - 1]) + ", wanted " +
                                     std::to_string(pair.a[n - 1]));
        }
        if (down.o[n - 1] != pair.b[n - 1]) {
            rep.ok = false;
            rep.mismatches.push_back("O_" + std::to_string(n) + "(T') = " +
                                     std::to_string(down.o[n - 1]) + ", wanted " +
                                     std::to_string(pair.b[n - 1]));
        }
    }
    return rep;
}

}  // namespace orbitq
