#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace orbitq {

// Groups are kept small: subgroup enumeration walks the full lattice, which is
// only feasible (and only needed) for catalog-sized groups. The ceiling is
// configurable but bounded by the 32-bit element masks used internally.
inline constexpr int kDefaultOrderGuard = 24;
inline constexpr int kHardOrderLimit = 30;

struct GroupError : std::runtime_error {
    enum class Kind {
        not_associative,
        no_identity,
        no_inverse,
        order_guard_exceeded,
        not_bijective,
        not_in_normalizer,
        bad_table,
    };
    Kind kind;
    // witness element indices, meaning depends on kind (e.g. the triple
    // breaking associativity); -1 where unused
    int w0 = -1, w1 = -1, w2 = -1;
    GroupError(Kind k, const std::string& msg, int a = -1, int b = -1, int c = -1)
        : std::runtime_error(msg), kind(k), w0(a), w1(b), w2(c) {}
};

/// A finite group as a validated multiplication table over element indices
/// 0..order-1. Immutable after construction.
class FiniteGroup {
  public:
    /// Validates associativity, identity, and inverses exhaustively.
    static FiniteGroup from_cayley(const std::vector<std::vector<int>>& table,
                                   std::vector<std::string> labels = {},
                                   int order_guard = kDefaultOrderGuard);

    /// Closes a generating set of permutations of 0..degree-1 under
    /// composition and reads off the multiplication table.
    static FiniteGroup from_permutations(int degree,
                                         const std::vector<std::vector<int>>& generators,
                                         std::vector<std::string> generator_labels = {},
                                         int order_guard = kDefaultOrderGuard);

    int order() const { return n_; }
    int identity() const { return identity_; }
    int mul(int a, int b) const { return mul_[(size_t)a * n_ + b]; }
    int inv(int a) const { return inv_[a]; }
    /// Least k >= 1 with g^k = identity.
    int element_order(int g) const { return elem_order_[g]; }

    int pow(int g, long long e) const;

    const std::vector<std::string>& labels() const { return labels_; }
    const std::string& label(int g) const { return labels_[g]; }
    /// Index of the element carrying this label, or -1.
    int element_by_label(const std::string& s) const;

    const std::vector<std::vector<int>>& cayley() const { return table_; }

  private:
    FiniteGroup() = default;
    void finalize();  // fills inv_, elem_order_ after table validation

    int n_ = 0;
    int identity_ = 0;
    std::vector<int> mul_;  // row-major n x n
    std::vector<int> inv_;
    std::vector<int> elem_order_;
    std::vector<std::string> labels_;
    std::vector<std::vector<int>> table_;
};

/// A subgroup given by its sorted element indices. The 32-bit mask mirrors
/// the element set for O(1) membership tests.
struct Subgroup {
    std::vector<int> elements;
    uint32_t mask = 0;

    static Subgroup from_mask(uint32_t m);
    static Subgroup from_elements(std::vector<int> elems);
    bool contains(int g) const { return (mask >> g) & 1u; }
    int order() const { return (int)elements.size(); }
    bool operator==(const Subgroup& o) const { return mask == o.mask; }
    bool operator<(const Subgroup& o) const;  // lexicographic on element lists
};

/// True iff the element set is closed under mul/inv and contains the identity.
bool is_subgroup(const FiniteGroup& g, const Subgroup& h);

/// Closure of a set of elements under multiplication.
Subgroup generated_subgroup(const FiniteGroup& g, const std::vector<int>& gens);

/// Complete list of subgroups, built bottom-up from cyclic subgroups by
/// pairwise join until stable. Sorted lexicographically.
std::vector<Subgroup> enumerate_subgroups(const FiniteGroup& g);

/// { g : g H g^-1 = H }
Subgroup normalizer(const FiniteGroup& g, const Subgroup& h);

/// Set of element orders of H.
std::set<int> delta_set(const FiniteGroup& g, const Subgroup& h);

/// Least k >= 1 with g^k in H; g must normalize H.
int coset_order(const FiniteGroup& g, const Subgroup& h, int elem);

Subgroup conjugate_subgroup(const FiniteGroup& g, const Subgroup& h, int by);

/// Conjugacy classes of subgroups. Class representatives are the
/// lexicographically smallest element sets; classes are ordered by
/// representative.
struct ConjClassTable {
    std::vector<std::vector<Subgroup>> classes;  // each sorted, [0] = canonical rep
    std::map<uint32_t, int> class_of_mask;

    int class_of(const Subgroup& h) const;
    const Subgroup& representative(int cls) const { return classes[cls][0]; }
    int num_classes() const { return (int)classes.size(); }
    /// Class containing the trivial subgroup / the whole group.
    int trivial_class = -1;
    int full_class = -1;
};

ConjClassTable conjugacy_classes_of_subgroups(const FiniteGroup& g);

/// Per conjugacy class: the admissible (delta, theta) channel pairs, where
/// delta ranges over the coset orders of N(H)/H and theta = [G:H]/delta.
/// Also the group-wide extremal data: nabla = max element order, the class
/// of a maximal-order subgroup admitting delta = nabla, and
/// theta_cap = [G:H]/nabla for that class.
struct SigmaTable {
    struct Channel {
        int delta;
        int theta;
        bool operator==(const Channel& o) const { return delta == o.delta && theta == o.theta; }
    };
    std::vector<std::vector<Channel>> per_class;  // sorted by delta
    int nabla = 1;
    int h_nabla_class = -1;
    int theta_cap = 1;

    bool has_channel(int cls, int delta, int theta) const;
};

SigmaTable sigma_table(const FiniteGroup& g, const ConjClassTable& classes);

/// Bundle of a group with its analyzed subgroup lattice; nearly every
/// operation downstream needs all three pieces together.
struct GroupContext {
    FiniteGroup group;
    std::vector<Subgroup> subgroups;
    ConjClassTable classes;
    SigmaTable sigma;

    explicit GroupContext(FiniteGroup g) : group(std::move(g)) {}
    static std::shared_ptr<const GroupContext> analyze(FiniteGroup g);

    int order() const { return group.order(); }
    /// Class id of the stabilizer-style subgroup given by a mask.
    int class_of_mask(uint32_t mask) const;
};

}  // namespace orbitq
