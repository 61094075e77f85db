#include "orbitq/group.hpp"

#include <algorithm>
#include <queue>

namespace orbitq {

FiniteGroup FiniteGroup::from_cayley(const std::vector<std::vector<int>>& table,
                                     std::vector<std::string> labels,
                                     int order_guard) {
    const int n = (int)table.size();
    if (n == 0)
        throw GroupError(GroupError::Kind::bad_table, "empty multiplication table");
    if (order_guard > kHardOrderLimit) order_guard = kHardOrderLimit;
    if (n > order_guard)
        throw GroupError(GroupError::Kind::order_guard_exceeded,
                         "group order " + std::to_string(n) + " exceeds guard " +
                             std::to_string(order_guard));
    for (int i = 0; i < n; ++i) {
        if ((int)table[i].size() != n)
            throw GroupError(GroupError::Kind::bad_table, "table is not square");
        for (int j = 0; j < n; ++j)
            if (table[i][j] < 0 || table[i][j] >= n)
                throw GroupError(GroupError::Kind::bad_table,
                                 "table entry out of range at (" + std::to_string(i) +
                                     "," + std::to_string(j) + ")");
    }

    FiniteGroup g;
    g.n_ = n;
    g.table_ = table;
    g.mul_.resize((size_t)n * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) g.mul_[(size_t)i * n + j] = table[i][j];

    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c)
                if (g.mul(g.mul(a, b), c) != g.mul(a, g.mul(b, c)))
                    throw GroupError(GroupError::Kind::not_associative,
                                     "not associative at (" + std::to_string(a) + "," +
                                         std::to_string(b) + "," + std::to_string(c) + ")",
                                     a, b, c);

    int id = -1;
    for (int e = 0; e < n; ++e) {
        bool ok = true;
        for (int x = 0; x < n && ok; ++x)
            ok = g.mul(e, x) == x && g.mul(x, e) == x;
        if (ok) {
            id = e;
            break;
        }
    }
    if (id < 0)
        throw GroupError(GroupError::Kind::no_identity, "no two-sided identity");
    g.identity_ = id;

    g.inv_.assign(n, -1);
    for (int x = 0; x < n; ++x) {
        for (int y = 0; y < n; ++y)
            if (g.mul(x, y) == id && g.mul(y, x) == id) {
                g.inv_[x] = y;
                break;
            }
        if (g.inv_[x] < 0)
            throw GroupError(GroupError::Kind::no_inverse,
                             "element " + std::to_string(x) + " has no two-sided inverse",
                             x);
    }

    if (labels.empty()) {
        for (int i = 0; i < n; ++i) labels.push_back("g" + std::to_string(i));
    } else if ((int)labels.size() != n) {
        throw GroupError(GroupError::Kind::bad_table, "label count does not match order");
    }
    g.labels_ = std::move(labels);
    g.finalize();
    return g;
}

FiniteGroup FiniteGroup::from_permutations(int degree,
                                           const std::vector<std::vector<int>>& generators,
                                           std::vector<std::string> generator_labels,
                                           int order_guard) {
    if (order_guard > kHardOrderLimit) order_guard = kHardOrderLimit;
    if (degree <= 0)
        throw GroupError(GroupError::Kind::bad_table, "degree must be positive");
    for (const auto& p : generators) {
        if ((int)p.size() != degree)
            throw GroupError(GroupError::Kind::not_bijective,
                             "generator length does not match degree");
        std::vector<char> seen(degree, 0);
        for (int v : p) {
            if (v < 0 || v >= degree || seen[v])
                throw GroupError(GroupError::Kind::not_bijective,
                                 "generator is not a bijection on 0.." +
                                     std::to_string(degree - 1));
            seen[v] = 1;
        }
    }

    std::vector<int> ident(degree);
    for (int i = 0; i < degree; ++i) ident[i] = i;

    // BFS closure under composition
    std::vector<std::vector<int>> elems{ident};
    std::map<std::vector<int>, int> index{{ident, 0}};
    std::queue<int> work;
    work.push(0);
    auto add = [&](const std::vector<int>& p) -> int {
        auto it = index.find(p);
        if (it != index.end()) return it->second;
        if ((int)elems.size() >= order_guard + 1)
            throw GroupError(GroupError::Kind::order_guard_exceeded,
                             "closure exceeds order guard " + std::to_string(order_guard));
        int id = (int)elems.size();
        elems.push_back(p);
        index.emplace(p, id);
        work.push(id);
        return id;
    };
    for (const auto& gen : generators) add(gen);
    while (!work.empty()) {
        int i = work.front();
        work.pop();
        for (const auto& gen : generators) {
            // (gen . elems[i])(x) = gen(elems[i](x))
            std::vector<int> prod(degree);
            for (int x = 0; x < degree; ++x) prod[x] = gen[elems[i][x]];
            add(prod);
            std::vector<int> prod2(degree);
            for (int x = 0; x < degree; ++x) prod2[x] = elems[i][gen[x]];
            add(prod2);
        }
    }
    const int n = (int)elems.size();
    if (n > order_guard)
        throw GroupError(GroupError::Kind::order_guard_exceeded,
                         "closure exceeds order guard " + std::to_string(order_guard));

    std::vector<std::vector<int>> table(n, std::vector<int>(n));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            std::vector<int> prod(degree);
            for (int x = 0; x < degree; ++x) prod[x] = elems[a][elems[b][x]];
            table[a][b] = index.at(prod);
        }

    std::vector<std::string> labels;
    for (int i = 0; i < n; ++i) {
        std::string lab;
        if (!generator_labels.empty()) {
            for (size_t j = 0; j < generators.size(); ++j)
                if (elems[i] == generators[j] && j < generator_labels.size()) {
                    lab = generator_labels[j];
                    break;
                }
        }
        if (lab.empty()) {
            if (elems[i] == ident) {
                lab = "e";
            } else {
                lab = "p";
                for (int x : elems[i]) lab += std::to_string(x);
            }
        }
        labels.push_back(lab);
    }
    return from_cayley(table, std::move(labels), order_guard);
}

void FiniteGroup::finalize() {
    elem_order_.assign(n_, 0);
    for (int g = 0; g < n_; ++g) {
        int k = 1;
        int cur = g;
        while (cur != identity_) {
            cur = mul(cur, g);
            ++k;
        }
        elem_order_[g] = k;
    }
}

int FiniteGroup::pow(int g, long long e) const {
    int ord = elem_order_[g];
    e %= ord;
    if (e < 0) e += ord;
    int r = identity_;
    for (long long i = 0; i < e; ++i) r = mul(r, g);
    return r;
}

int FiniteGroup::element_by_label(const std::string& s) const {
    for (int i = 0; i < n_; ++i)
        if (labels_[i] == s) return i;
    return -1;
}

Subgroup Subgroup::from_mask(uint32_t m) {
    Subgroup h;
    h.mask = m;
    for (int i = 0; i < 32; ++i)
        if ((m >> i) & 1u) h.elements.push_back(i);
    return h;
}

Subgroup Subgroup::from_elements(std::vector<int> elems) {
    std::sort(elems.begin(), elems.end());
    elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
    Subgroup h;
    h.elements = std::move(elems);
    for (int e : h.elements) h.mask |= 1u << e;
    return h;
}

bool Subgroup::operator<(const Subgroup& o) const {
    return std::lexicographical_compare(elements.begin(), elements.end(),
                                        o.elements.begin(), o.elements.end());
}

bool is_subgroup(const FiniteGroup& g, const Subgroup& h) {
    if (!h.contains(g.identity())) return false;
    for (int a : h.elements) {
        if (!h.contains(g.inv(a))) return false;
        for (int b : h.elements)
            if (!h.contains(g.mul(a, b))) return false;
    }
    return true;
}

Subgroup generated_subgroup(const FiniteGroup& g, const std::vector<int>& gens) {
    uint32_t mask = 1u << g.identity();
    std::vector<int> frontier{g.identity()};
    for (int x : gens)
        if (!((mask >> x) & 1u)) {
            mask |= 1u << x;
            frontier.push_back(x);
        }
    bool grew = true;
    while (grew) {
        grew = false;
        std::vector<int> cur = Subgroup::from_mask(mask).elements;
        for (int a : cur)
            for (int b : cur) {
                int p = g.mul(a, b);
                if (!((mask >> p) & 1u)) {
                    mask |= 1u << p;
                    grew = true;
                }
            }
    }
    return Subgroup::from_mask(mask);
}

std::vector<Subgroup> enumerate_subgroups(const FiniteGroup& g) {
    const int n = g.order();
    if (n > kHardOrderLimit)
        throw GroupError(GroupError::Kind::order_guard_exceeded,
                         "subgroup enumeration needs order <= " +
                             std::to_string(kHardOrderLimit));
    std::set<uint32_t> masks;
    masks.insert(1u << g.identity());
    for (int x = 0; x < n; ++x) masks.insert(generated_subgroup(g, {x}).mask);

    // pairwise joins until no new subgroup appears; every subgroup is an
    // iterated join of cyclic ones, so this reaches the full lattice
    bool grew = true;
    while (grew) {
        grew = false;
        std::vector<uint32_t> cur(masks.begin(), masks.end());
        for (size_t i = 0; i < cur.size(); ++i)
            for (size_t j = i + 1; j < cur.size(); ++j) {
                uint32_t un = cur[i] | cur[j];
                if (masks.count(un)) continue;
                Subgroup join = generated_subgroup(g, Subgroup::from_mask(un).elements);
                if (masks.insert(join.mask).second) grew = true;
            }
    }

    std::vector<Subgroup> out;
    out.reserve(masks.size());
    for (uint32_t m : masks) out.push_back(Subgroup::from_mask(m));
    std::sort(out.begin(), out.end());
    return out;
}

Subgroup conjugate_subgroup(const FiniteGroup& g, const Subgroup& h, int by) {
    std::vector<int> elems;
    elems.reserve(h.elements.size());
    int byi = g.inv(by);
    for (int x : h.elements) elems.push_back(g.mul(g.mul(by, x), byi));
    return Subgroup::from_elements(std::move(elems));
}

Subgroup normalizer(const FiniteGroup& g, const Subgroup& h) {
    std::vector<int> elems;
    for (int x = 0; x < g.order(); ++x)
        if (conjugate_subgroup(g, h, x).mask == h.mask) elems.push_back(x);
    return Subgroup::from_elements(std::move(elems));
}

std::set<int> delta_set(const FiniteGroup& g, const Subgroup& h) {
    std::set<int> out;
    for (int x : h.elements) out.insert(g.element_order(x));
    return out;
}

int coset_order(const FiniteGroup& g, const Subgroup& h, int elem) {
    if (conjugate_subgroup(g, h, elem).mask != h.mask)
        throw GroupError(GroupError::Kind::not_in_normalizer,
                         "element " + std::to_string(elem) + " does not normalize H",
                         elem);
    int cur = elem;
    int k = 1;
    while (!h.contains(cur)) {
        cur = g.mul(cur, elem);
        ++k;
    }
    return k;
}

int ConjClassTable::class_of(const Subgroup& h) const {
    auto it = class_of_mask.find(h.mask);
    if (it == class_of_mask.end())
        throw std::out_of_range("subgroup is not in the conjugacy class table");
    return it->second;
}

ConjClassTable conjugacy_classes_of_subgroups(const FiniteGroup& g) {
    std::vector<Subgroup> subs = enumerate_subgroups(g);
    ConjClassTable table;
    std::set<uint32_t> assigned;
    for (const Subgroup& h : subs) {
        if (assigned.count(h.mask)) continue;
        std::vector<Subgroup> cls;
        std::set<uint32_t> seen;
        for (int x = 0; x < g.order(); ++x) {
            Subgroup c = conjugate_subgroup(g, h, x);
            if (seen.insert(c.mask).second) cls.push_back(c);
        }
        std::sort(cls.begin(), cls.end());
        for (const Subgroup& c : cls) assigned.insert(c.mask);
        table.classes.push_back(std::move(cls));
    }
    // order classes by canonical representative; subs is already sorted, and
    // the first unassigned subgroup starts each class, so classes come out in
    // representative order already -- sort anyway for safety
    std::sort(table.classes.begin(), table.classes.end(),
              [](const auto& a, const auto& b) { return a[0] < b[0]; });
    for (int i = 0; i < (int)table.classes.size(); ++i)
        for (const Subgroup& h : table.classes[i]) table.class_of_mask[h.mask] = i;

    uint32_t trivial = 1u << g.identity();
    uint32_t full = g.order() >= 32 ? ~0u : ((1u << g.order()) - 1);
    table.trivial_class = table.class_of_mask.at(trivial);
    table.full_class = table.class_of_mask.at(full);
    return table;
}

bool SigmaTable::has_channel(int cls, int delta, int theta) const {
    if (cls < 0 || cls >= (int)per_class.size()) return false;
    for (const Channel& c : per_class[cls])
        if (c.delta == delta && c.theta == theta) return true;
    return false;
}

SigmaTable sigma_table(const FiniteGroup& g, const ConjClassTable& classes) {
    SigmaTable t;
    t.per_class.resize(classes.num_classes());
    for (int c = 0; c < classes.num_classes(); ++c) {
        const Subgroup& h = classes.representative(c);
        Subgroup n = normalizer(g, h);
        std::set<int> deltas;
        for (int x : n.elements) deltas.insert(coset_order(g, h, x));
        int index = g.order() / h.order();
        for (int d : deltas) t.per_class[c].push_back({d, index / d});
    }

    for (int x = 0; x < g.order(); ++x)
        t.nabla = std::max(t.nabla, g.element_order(x));

    // maximal-order subgroup whose class admits delta = nabla; ties broken by
    // the (lexicographically) smallest canonical representative
    int best = -1;
    for (int c = 0; c < classes.num_classes(); ++c) {
        bool admits = false;
        for (const auto& ch : t.per_class[c])
            if (ch.delta == t.nabla) admits = true;
        if (!admits) continue;
        if (best < 0 ||
            classes.representative(c).order() > classes.representative(best).order())
            best = c;
        // classes are in representative order, so the first hit at a given
        // order is already the tie-break winner
    }
    t.h_nabla_class = best;
    t.theta_cap = (g.order() / classes.representative(best).order()) / t.nabla;
    return t;
}

std::shared_ptr<const GroupContext> GroupContext::analyze(FiniteGroup g) {
    auto ctx = std::make_shared<GroupContext>(std::move(g));
    ctx->subgroups = enumerate_subgroups(ctx->group);
    ctx->classes = conjugacy_classes_of_subgroups(ctx->group);
    ctx->sigma = sigma_table(ctx->group, ctx->classes);
    return ctx;
}

int GroupContext::class_of_mask(uint32_t mask) const {
    auto it = classes.class_of_mask.find(mask);
    if (it == classes.class_of_mask.end())
        throw std::out_of_range("mask is not a subgroup of this group");
    return it->second;
}

}  // namespace orbitq
