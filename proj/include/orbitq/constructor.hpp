#pragma once

#include <map>
#include <tuple>
#include <vector>

#include "orbitq/dynsys.hpp"
#include "orbitq/quotient.hpp"

namespace orbitq {

struct SpecError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A finitely supported prescription of orbit behavior: for each channel
/// (stabilizer class, delta, theta) and downstairs length n, how many
/// quotient orbits of length n that channel must produce. Every key must be
/// an admissible channel of its class, and by default the prescription must
/// contain an anchor: at least one fixed point with full stabilizer.
struct BehaviorSpec {
    using Key = std::tuple<int, int, int, int>;  // (class, delta, theta, n)
    std::shared_ptr<const GroupContext> ctx;
    std::map<Key, long long> entries;
    bool allow_no_anchor = false;

    void validate() const;  // throws SpecError
    long long entry(int cls, int delta, int theta, int n) const;
    /// Largest upstairs orbit length the prescription produces.
    int max_upstairs_length() const;
};

/// The concrete data the block construction needs for one channel: an
/// element h whose coset has order delta in N(H)/H, the subgroup
/// K = <H, h> of order delta*|H|, and a transversal of G/K of size theta.
struct ChannelGeometry {
    int class_id = -1;
    int delta = 1;
    int theta = 1;
    Subgroup h;            // canonical class representative
    int h_sigma = -1;      // identity when delta = 1
    Subgroup k;            // <H, h_sigma>
    std::vector<int> transversal;        // coset reps of G/K, ascending
    std::vector<int> coset_rep_of;       // element -> index into transversal
};

/// Deterministic: h_sigma is the first qualifying element in element order,
/// the transversal is the greedy minimum sweep over left cosets of K.
ChannelGeometry select_channel_geometry(const GroupContext& ctx, int class_id, int delta,
                                        int theta);

/// Writes g*s = s' * h_sigma^l * h' with s' in the transversal, l mod delta,
/// h' in H. Unique because K decomposes as the disjoint union of the cosets
/// h_sigma^l H.
std::pair<int, int> decompose(const GroupContext& ctx, const ChannelGeometry& geom, int g,
                              int s);

/// Builds the disjoint union of blocks transversal x {1..b} x Z/(delta*n)
/// realizing the prescription: T steps the cyclic coordinate, g sends
/// (s,i,m) to (s', i, m + l*n). Point layout is deterministic.
FiniteDynSystem build_system(const BehaviorSpec& spec);

/// The orbit counts the construction must produce:
///   upstairs   a_n = sum over channels with delta | n of theta * b_{n/delta}
///   downstairs b_n = sum over channels of b_n.
std::pair<std::vector<long long>, std::vector<long long>> predicted_counts(
    const BehaviorSpec& spec, int horizon);

struct ConstructionReport {
    bool ok = true;
    std::vector<std::string> mismatches;
};

/// Builds the system, validates it, brute-forces upstairs and downstairs
/// orbit counts, and compares them (and the full behavior census) with the
/// prescription.
ConstructionReport verify_construction(const BehaviorSpec& spec, int horizon,
                                       ExecMode mode = kDefaultExec);

/// Same checks against an already-built system.
ConstructionReport verify_built_system(const BehaviorSpec& spec,
                                       const FiniteDynSystem& sys, int horizon,
                                       ExecMode mode = kDefaultExec);

/// Seeded random prescription: an anchor plus up to five channel entries
/// with counts <= max_count and lengths <= max_n. Same seed, same spec.
BehaviorSpec sample_behavior_spec(std::shared_ptr<const GroupContext> ctx, uint64_t seed,
                                  int max_count = 3, int max_n = 4);

}  // namespace orbitq
