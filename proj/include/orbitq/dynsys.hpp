#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "orbitq/group.hpp"

namespace orbitq {

/// Kernel execution mode. Parallel falls back to serial when the binary is
/// built without OpenMP. Results are identical either way; the parallel
/// variants claim work by canonical ownership so the schedule cannot leak
/// into the output.
enum class ExecMode { serial, parallel };

inline constexpr ExecMode kDefaultExec = ExecMode::parallel;

struct DynSysError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A finite point set with a bijection T and a commuting group action, stored
/// as a full |G| x k table. Immutable once validated.
struct FiniteDynSystem {
    std::shared_ptr<const GroupContext> ctx;
    int npoints = 0;
    std::vector<int> t;        // T[x]
    std::vector<int> action_;  // row-major |G| x k
    std::vector<std::string> point_labels;  // optional

    int act(int g, int x) const { return action_[(size_t)g * npoints + x]; }
    const FiniteGroup& group() const { return ctx->group; }

    static FiniteDynSystem make(std::shared_ptr<const GroupContext> ctx, int npoints,
                                std::vector<int> t, std::vector<int> action_table);

    /// Builds the full action table from the action of a generating set,
    /// given as (element index, permutation) pairs.
    static FiniteDynSystem from_generator_action(
        std::shared_ptr<const GroupContext> ctx, int npoints, std::vector<int> t,
        const std::vector<std::pair<int, std::vector<int>>>& generator_action);
};

struct ValidationIssue {
    enum class Kind { t_not_bijective, identity_action, composition, commutation };
    Kind kind;
    int g = -1, h = -1, x = -1;
    std::string describe(const FiniteDynSystem& sys) const;
};

struct ValidationReport {
    std::vector<ValidationIssue> issues;
    bool ok() const { return issues.empty(); }
};

/// Checks T bijectivity, the action axioms, and commutation of the action
/// with T, exhaustively. Lists every violating witness.
ValidationReport validate_system(const FiniteDynSystem& sys, ExecMode mode = kDefaultExec);

/// Throws DynSysError unless the system validates cleanly.
void require_valid(const FiniteDynSystem& sys, ExecMode mode = kDefaultExec);

struct OrbitRecord {
    std::vector<int> points;  // in T order starting at the representative
    int length = 0;
    int representative = 0;  // smallest point index on the orbit
};

/// Cycle decomposition of a bijection; records ordered by representative.
std::vector<OrbitRecord> cycle_decomposition(const std::vector<int>& bijection,
                                             ExecMode mode = kDefaultExec);

std::vector<OrbitRecord> orbits(const FiniteDynSystem& sys, ExecMode mode = kDefaultExec);

/// Per-n orbit counts O_n, periodic-point counts F_n = sum_{d|n} d*O_d, and
/// the cumulative orbit count pi(n) = sum_{m<=n} O_m, for n = 1..N.
struct PeriodCounts {
    int horizon = 0;
    std::vector<long long> o;   // o[n-1] = O_n
    std::vector<long long> f;   // f[n-1] = F_n
    std::vector<long long> pi;  // pi[n-1]
};

PeriodCounts period_counts_from_orbits(const std::vector<OrbitRecord>& orbs, int horizon);
PeriodCounts period_counts(const FiniteDynSystem& sys, int horizon,
                           ExecMode mode = kDefaultExec);

/// Stabilizer of a point as a bitmask over group elements.
uint32_t stabilizer_mask(const FiniteDynSystem& sys, int x);
Subgroup stabilizer(const FiniteDynSystem& sys, int x);

/// Points grouped by the conjugacy class of their stabilizer. Verifies that
/// stabilizers are constant along orbits (they must be: every point of a
/// finite bijection is periodic).
std::map<int, std::vector<int>> partition_by_class(const FiniteDynSystem& sys,
                                                   ExecMode mode = kDefaultExec);

/// Concatenates systems over the same group; point indices shift by offset.
FiniteDynSystem disjoint_union(const FiniteDynSystem& a, const FiniteDynSystem& b);

}  // namespace orbitq
