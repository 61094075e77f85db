#include "orbitq/torus.hpp"

#include <algorithm>
#include <unordered_map>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace orbitq::torus {

namespace {

Rat mod1(const Rat& r) {
    long long fl = r.floor();
    return fl == 0 ? r : r - Rat(fl);
}

long long mod_ll(long long v, long long m) {
    long long r = v % m;
    return r < 0 ? r + m : r;
}

}  // namespace

TorusPoint TorusPoint::make(Rat x, Rat y) {
    return TorusPoint{mod1(x), mod1(y)};
}

TorusPoint double_point(const TorusPoint& p) {
    return TorusPoint::make(p.x * Rat(2), p.y * Rat(2));
}

TorusPoint AffineSymmetry::apply(const TorusPoint& p) const {
    return TorusPoint::make(p.x * Rat(a[0]) + p.y * Rat(a[1]) + cx,
                            p.x * Rat(a[2]) + p.y * Rat(a[3]) + cy);
}

const std::vector<AffineSymmetry>& square_symmetries() {
    static const std::vector<AffineSymmetry> syms = [] {
        std::vector<AffineSymmetry> s(8);
        s[0] = {{1, 0, 0, 1}, Rat(0), Rat(0), "1"};
        s[1] = {{0, -1, 1, 0}, Rat(0), Rat(0), "a"};    // (x,y) -> (-y, x)
        s[2] = {{-1, 0, 0, -1}, Rat(0), Rat(0), "a2"};
        s[3] = {{0, 1, -1, 0}, Rat(0), Rat(0), "a3"};
        s[4] = {{0, 1, 1, 0}, Rat(0), Rat(0), "t"};     // (x,y) -> (y, x)
        s[5] = {{-1, 0, 0, 1}, Rat(0), Rat(0), "at"};
        s[6] = {{0, -1, -1, 0}, Rat(0), Rat(0), "a2t"};
        s[7] = {{1, 0, 0, -1}, Rat(0), Rat(0), "a3t"};
        return s;
    }();
    return syms;
}

std::shared_ptr<const GroupContext> square_symmetry_group() {
    static const std::shared_ptr<const GroupContext> ctx = [] {
        const auto& syms = square_symmetries();
        const int n = (int)syms.size();
        auto index_of = [&](const std::array<long long, 4>& m) {
            for (int i = 0; i < n; ++i)
                if (syms[i].a == m) return i;
            throw TorusError("symmetry composition left the set");
        };
        std::vector<std::vector<int>> table(n, std::vector<int>(n));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                const auto& p = syms[i].a;
                const auto& q = syms[j].a;
                // i applied after j
                std::array<long long, 4> prod{
                    p[0] * q[0] + p[1] * q[2], p[0] * q[1] + p[1] * q[3],
                    p[2] * q[0] + p[3] * q[2], p[2] * q[1] + p[3] * q[3]};
                table[i][j] = index_of(prod);
            }
        std::vector<std::string> labels;
        for (const auto& s : syms) labels.push_back(s.label);
        return GroupContext::analyze(FiniteGroup::from_cayley(table, labels));
    }();
    return ctx;
}

SquareClassIds square_class_ids() {
    auto ctx = square_symmetry_group();
    auto class_of = [&](std::initializer_list<int> elems) {
        uint32_t m = 0;
        for (int e : elems) m |= 1u << e;
        return ctx->class_of_mask(m);
    };
    SquareClassIds ids;
    ids.full = ctx->classes.full_class;
    ids.trivial = ctx->classes.trivial_class;
    ids.klein = class_of({0, 2, 5, 7});    // {1, a2, at, a3t}
    ids.axis = class_of({0, 7});           // {1, a3t} ~ {1, at}
    ids.diagonal = class_of({0, 4});       // {1, t} ~ {1, a2t}
    return ids;
}

Smith2x2 smith_normal_form(std::array<long long, 4> m) {
    std::array<long long, 4> u{1, 0, 0, 1}, v{1, 0, 0, 1};

    // row0 <- r00*row0 + r01*row1, row1 <- r10*row0 + r11*row1; m <- R m, u <- R u
    auto row_op = [&](long long r00, long long r01, long long r10, long long r11) {
        std::array<long long, 4> nm{r00 * m[0] + r01 * m[2], r00 * m[1] + r01 * m[3],
                                    r10 * m[0] + r11 * m[2], r10 * m[1] + r11 * m[3]};
        std::array<long long, 4> nu{r00 * u[0] + r01 * u[2], r00 * u[1] + r01 * u[3],
                                    r10 * u[0] + r11 * u[2], r10 * u[1] + r11 * u[3]};
        m = nm;
        u = nu;
    };
    // col0 <- c00*col0 + c01*col1, col1 <- c10*col0 + c11*col1; m <- m C, v <- v C
    auto col_op = [&](long long c00, long long c01, long long c10, long long c11) {
        std::array<long long, 4> nm{c00 * m[0] + c01 * m[1], c10 * m[0] + c11 * m[1],
                                    c00 * m[2] + c01 * m[3], c10 * m[2] + c11 * m[3]};
        std::array<long long, 4> nv{c00 * v[0] + c01 * v[1], c10 * v[0] + c11 * v[1],
                                    c00 * v[2] + c01 * v[3], c10 * v[2] + c11 * v[3]};
        m = nm;
        v = nv;
    };
    // extended gcd: returns (g, s, t) with s*a + t*b = g
    auto egcd = [](long long a, long long b) {
        long long s0 = 1, t0 = 0, s1 = 0, t1 = 1;
        while (b != 0) {
            long long q = a / b;
            long long r = a - q * b;
            long long s2 = s0 - q * s1, t2 = t0 - q * t1;
            a = b; b = r;
            s0 = s1; t0 = t1;
            s1 = s2; t1 = t2;
        }
        return std::array<long long, 3>{a, s0, t0};
    };

    auto diagonalize = [&] {
        for (int iter = 0; iter < 64; ++iter) {
            if (m[2] != 0) {
                auto [g, s, t] = egcd(m[0], m[2]);
                row_op(s, t, -(m[2] / g), m[0] / g);
            }
            if (m[1] != 0) {
                auto [g, s, t] = egcd(m[0], m[1]);
                col_op(s, t, -(m[1] / g), m[0] / g);
            }
            if (m[1] == 0 && m[2] == 0) return;
        }
        throw TorusError("smith normal form did not converge");
    };

    diagonalize();
    if (m[0] == 0 && m[3] != 0) {
        row_op(0, 1, 1, 0);
        col_op(0, 1, 1, 0);
    }
    if (m[0] != 0 && m[3] % m[0] != 0) {
        col_op(1, 1, 0, 1);  // col0 += col1 puts d1 into the first column
        diagonalize();       // leaves diag(gcd(d0,d1), lcm-multiple)
    }
    if (m[0] < 0) row_op(-1, 0, 0, 1);
    if (m[3] < 0) row_op(1, 0, 0, -1);

    Smith2x2 out;
    out.u = u;
    out.v = v;
    out.d0 = m[0];
    out.d1 = m[3];
    if (out.d0 != 0 && out.d1 % out.d0 != 0)
        throw TorusError("smith normal form divisibility failed");
    return out;
}

CongruenceSolutionSet solve_congruence(std::array<long long, 4> mat, Rat cx, Rat cy) {
    Smith2x2 snf = smith_normal_form(mat);
    // M v = c (mod 1)  <=>  D w = U c (mod 1) with v = V w
    Rat uc0 = Rat(snf.u[0]) * cx + Rat(snf.u[1]) * cy;
    Rat uc1 = Rat(snf.u[2]) * cx + Rat(snf.u[3]) * cy;

    CongruenceSolutionSet out;
    std::array<long long, 2> d{snf.d0, snf.d1};
    std::array<Rat, 2> c{uc0, uc1};
    std::array<std::vector<Rat>, 2> choices;
    std::array<bool, 2> free_coord{false, false};
    for (int i = 0; i < 2; ++i) {
        if (d[i] == 0) {
            if (!c[i].is_integer()) return out;  // no solutions; empty finite set
            free_coord[i] = true;
            choices[i].push_back(Rat(0));
        } else {
            for (long long k = 0; k < d[i]; ++k)
                choices[i].push_back((c[i] + Rat(k)) / Rat(d[i]));
        }
    }

    out.finite = !free_coord[0] && !free_coord[1];
    auto emit = [&](const Rat& w0, const Rat& w1) {
        TorusPoint p = TorusPoint::make(Rat(snf.v[0]) * w0 + Rat(snf.v[1]) * w1,
                                        Rat(snf.v[2]) * w0 + Rat(snf.v[3]) * w1);
        (out.finite ? out.points : out.bases).push_back(p);
    };
    for (const Rat& w0 : choices[0])
        for (const Rat& w1 : choices[1]) emit(w0, w1);
    if (!out.finite) {
        for (int i = 0; i < 2; ++i)
            if (free_coord[i])
                out.free_dirs.push_back(
                    {Rat(snf.v[i == 0 ? 0 : 1]), Rat(snf.v[i == 0 ? 2 : 3])});
        std::sort(out.bases.begin(), out.bases.end());
    } else {
        std::sort(out.points.begin(), out.points.end());
    }
    return out;
}

TorusPoint layer_point(int n, long long i, long long j) {
    long long m = layer_modulus(n);
    return TorusPoint::make(Rat(mod_ll(i, m), m), Rat(mod_ll(j, m), m));
}

FiniteDynSystem layer_system(int n) {
    if (n < 1 || n > 10) throw TorusError("layer guard: need 1 <= n <= 10");
    auto ctx = square_symmetry_group();
    const long long m = layer_modulus(n);
    const long long k = m * m;
    const auto& syms = square_symmetries();

    std::vector<int> t(k);
    std::vector<int> action((size_t)syms.size() * k);
#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (k >= 4096)
#endif
    for (long long i = 0; i < m; ++i)
        for (long long j = 0; j < m; ++j) {
            long long p = i * m + j;
            t[p] = (int)(mod_ll(2 * i, m) * m + mod_ll(2 * j, m));
            for (size_t g = 0; g < syms.size(); ++g) {
                const auto& a = syms[g].a;
                long long gi = mod_ll(a[0] * i + a[1] * j, m);
                long long gj = mod_ll(a[2] * i + a[3] * j, m);
                action[g * k + p] = (int)(gi * m + gj);
            }
        }
    return FiniteDynSystem::make(ctx, (int)k, std::move(t), std::move(action));
}

namespace {

struct PointHash {
    size_t operator()(const TorusPoint& p) const {
        size_t h = std::hash<long long>()(p.x.num);
        h = h * 1000003u ^ std::hash<long long>()(p.x.den);
        h = h * 1000003u ^ std::hash<long long>()(p.y.num);
        h = h * 1000003u ^ std::hash<long long>()(p.y.den);
        return h;
    }
};

}  // namespace

QuotientPeriodSystem quotient_period_system(int n) {
    if (n < 1 || n > 8) throw TorusError("quotient-period guard: need 1 <= n <= 8");
    const auto& syms = square_symmetries();
    const long long two_n = 1LL << n;

    std::vector<TorusPoint> pts;
    for (const auto& sym : syms) {
        // fixed set of (g^-1 o T^n): 2^n v = A v + c (mod 1)
        std::array<long long, 4> mat{two_n - sym.a[0], -sym.a[1], -sym.a[2],
                                     two_n - sym.a[3]};
        CongruenceSolutionSet sol = solve_congruence(mat, sym.cx, sym.cy);
        if (!sol.finite)
            throw SingularCongruence(
                "fixed set of " + sym.label +
                " composed with the n-th doubling iterate is infinite");
        pts.insert(pts.end(), sol.points.begin(), sol.points.end());
    }
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

    std::unordered_map<TorusPoint, int, PointHash> index;
    index.reserve(pts.size() * 2);
    for (int i = 0; i < (int)pts.size(); ++i) {
        if (!pts[i].odd_denominators())
            throw TorusError("congruence solution with even denominator");  // impossible
        index.emplace(pts[i], i);
    }

    const int k = (int)pts.size();
    std::vector<int> t(k);
    std::vector<int> action((size_t)syms.size() * k);
#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (k >= 4096)
#endif
    for (int i = 0; i < k; ++i) {
        t[i] = index.at(double_point(pts[i]));
        for (size_t g = 0; g < syms.size(); ++g)
            action[g * k + i] = index.at(syms[g].apply(pts[i]));
    }

    QuotientPeriodSystem out;
    out.system =
        FiniteDynSystem::make(square_symmetry_group(), k, std::move(t), std::move(action));
    out.points = std::move(pts);
    return out;
}

long long quotient_fixed_count(int n) {
    QuotientPeriodSystem y = quotient_period_system(n);
    return build_quotient(y.system).num_classes();
}

bool in_fundamental_domain(const TorusPoint& p) {
    return p.y <= p.x && p.x <= Rat(1, 2);
}

TorusPoint triangle_map(const TorusPoint& p) {
    if (!in_fundamental_domain(p))
        throw TorusError("point " + p.str() + " outside the fundamental triangle");
    const Rat quarter(1, 4);
    const Rat half(1, 2);
    std::vector<TorusPoint> images;
    if (p.x <= quarter)
        images.push_back({p.x * Rat(2), p.y * Rat(2)});
    if (p.x >= quarter && p.y <= half - p.x)
        images.push_back({Rat(1) - p.x * Rat(2), p.y * Rat(2)});
    if (p.x >= quarter && p.y <= quarter && p.y >= half - p.x)
        images.push_back({p.y * Rat(2), Rat(1) - p.x * Rat(2)});
    if (p.y >= quarter)
        images.push_back({Rat(1) - p.y * Rat(2), Rat(1) - p.x * Rat(2)});
    if (images.empty()) throw TorusError("no branch applies");  // cannot happen
    for (const auto& im : images) {
        if (!(im == images.front()))
            throw TorusError("branch overlap disagreement at " + p.str());
        if (!in_fundamental_domain(im))
            throw TorusError("branch image left the fundamental triangle");
    }
    return images.front();
}

TorusPoint fundamental_rep(const TorusPoint& p) {
    const auto& syms = square_symmetries();
    bool found = false;
    TorusPoint best;
    for (const auto& sym : syms) {
        TorusPoint q = sym.apply(p);
        if (!in_fundamental_domain(q)) continue;
        if (!found || q < best) {
            best = q;
            found = true;
        }
    }
    if (!found) throw TorusError("orbit misses the fundamental triangle");  // cannot happen
    return best;
}

uint32_t point_stabilizer_mask(const TorusPoint& p) {
    const auto& syms = square_symmetries();
    uint32_t m = 0;
    for (size_t g = 0; g < syms.size(); ++g)
        if (syms[g].apply(p) == p) m |= 1u << g;
    return m;
}

SemiconjReport verify_semiconjugacy(int n) {
    if (n < 1 || n > 8) throw TorusError("semiconjugacy guard: need 1 <= n <= 8");
    SemiconjReport rep;
    rep.n = n;
    const long long m = layer_modulus(n);

    std::vector<std::string> failures;
#ifdef _OPENMP
#pragma omp parallel if (m >= 63)
#endif
    {
        std::vector<std::string> local;
#ifdef _OPENMP
#pragma omp for schedule(dynamic, 8)
#endif
        for (long long i = 0; i < m; ++i)
            for (long long j = 0; j < m; ++j) {
                TorusPoint v = layer_point(n, i, j);
                TorusPoint lhs = fundamental_rep(double_point(v));
                TorusPoint rhs = triangle_map(fundamental_rep(v));
                if (!(lhs == rhs))
                    local.push_back(v.str() + ": " + lhs.str() + " != " + rhs.str());
            }
#ifdef _OPENMP
#pragma omp critical
#endif
        failures.insert(failures.end(), local.begin(), local.end());
    }
    std::sort(failures.begin(), failures.end());
    rep.failures = std::move(failures);
    rep.checked = m * m;
    return rep;
}

std::vector<long long> torus_orbit_counts(int n) {
    auto mobius = [](int v) {
        int mu = 1;
        for (int p = 2; p * p <= v; ++p) {
            if (v % p) continue;
            v /= p;
            if (v % p == 0) return 0;
            mu = -mu;
        }
        if (v > 1) mu = -mu;
        return mu;
    };
    std::vector<long long> o(n);
    for (int k = 1; k <= n; ++k) {
        long long sum = 0;
        for (int d = 1; d <= k; ++d) {
            if (k % d) continue;
            long long f = layer_modulus(k / d) * layer_modulus(k / d);
            sum += mobius(d) * f;
        }
        o[k - 1] = sum / k;
    }
    return o;
}

ChannelCensusReport channel_census(int n) {
    if (n < 1 || n > 6) throw TorusError("channel census guard: need 1 <= n <= 6");
    ChannelCensusReport rep;
    rep.n = n;

    QuotientPeriodSystem y = quotient_period_system(n);
    BehaviorCensus census = behavior_census(y.system, 4 * n);
    SquareClassIds ids = square_class_ids();

    auto line = [&](const char* name, int cls, long long lhs, long long rhs,
                    const std::string& detail) {
        rep.lines.push_back(std::string(name) + " class " + std::to_string(cls) +
                            ": quotient count " + std::to_string(lhs) + " vs " + detail +
                            " = " + std::to_string(rhs));
        return lhs == rhs;
    };

    bool ok = true;
    {
        long long lhs = census.quotient_count(ids.full, n);
        long long rhs = census.count(ids.full, 1, 1, n);
        ok &= line("[G]", ids.full, lhs, rhs, "(1,1)@" + std::to_string(n));
    }
    for (auto [name, cls] : {std::pair<const char*, int>{"[axis]", ids.axis},
                             {"[diag]", ids.diagonal}}) {
        long long c14 = census.count(cls, 1, 4, n);
        long long c22 = census.count(cls, 2, 2, 2 * n);
        if (c14 % 4 || c22 % 2) ok = false;
        long long lhs = census.quotient_count(cls, n);
        ok &= line(name, cls, lhs, c14 / 4 + c22 / 2,
                   std::to_string(c14) + "/4 + " + std::to_string(c22) + "/2");
    }
    {
        long long c18 = census.count(ids.trivial, 1, 8, n);
        long long c24 = census.count(ids.trivial, 2, 4, 2 * n);
        long long c42 = census.count(ids.trivial, 4, 2, 4 * n);
        if (c18 % 8 || c24 % 4 || c42 % 2) ok = false;
        long long lhs = census.quotient_count(ids.trivial, n);
        ok &= line("[I]", ids.trivial, lhs, c18 / 8 + c24 / 4 + c42 / 2,
                   std::to_string(c18) + "/8 + " + std::to_string(c24) + "/4 + " +
                       std::to_string(c42) + "/2");
    }
    rep.identities_ok = ok;

    // Klein-class stabilizers never occur on periodic points
    rep.klein_empty = true;
    for (const auto& [cls, pts] : partition_by_class(y.system))
        if (cls == ids.klein && !pts.empty()) rep.klein_empty = false;

    // shortening-proportion diagnostic: shortening orbits of length <= 2n,
    // counted once via the system whose quotient length matches exactly
    std::map<int, long long> short_by_len;
    for (int q = 1; q <= n; ++q) {
        QuotientPeriodSystem yq = quotient_period_system(q);
        QuotientSystem quot = build_quotient(yq.system);
        auto orbs = orbits(yq.system);
        for (const auto& b : classify_all(yq.system, quot, orbs))
            if (b.delta > 1 && b.quotient_length == q) short_by_len[b.length] += 1;
    }
    std::vector<long long> total = torus_orbit_counts(2 * n);
    long long cum_short = 0, cum_total = 0;
    for (int k = 1; k <= 2 * n; ++k) {
        auto it = short_by_len.find(k);
        if (it != short_by_len.end()) cum_short += it->second;
        cum_total += total[k - 1];
        rep.shorten_fraction.push_back(Rat(cum_short, cum_total));
    }
    {
        bool mono = true;
        for (int k = 4; k <= 2 * n; k += 2)
            if (rep.shorten_fraction[k - 3] < rep.shorten_fraction[k - 1]) mono = false;
        rep.fraction_trend_nonincreasing = mono;
    }
    return rep;
}

}  // namespace orbitq::torus
