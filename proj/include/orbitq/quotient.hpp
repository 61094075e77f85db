#pragma once

#include <map>
#include <tuple>
#include <vector>

#include "orbitq/dynsys.hpp"
#include "orbitq/rational.hpp"

namespace orbitq {

struct QuotientError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// The space of G-orbits with the induced map. Class ids are assigned in
/// order of the minimal point index of each orbit.
struct QuotientSystem {
    std::vector<std::vector<int>> classes;  // sorted point lists
    std::vector<int> tprime;                // induced bijection on class ids
    std::vector<int> projection;            // point -> class id

    int num_classes() const { return (int)classes.size(); }
};

/// Builds the quotient and checks the semi-conjugacy projection(T(x)) =
/// Tprime(projection(x)) on every point.
QuotientSystem build_quotient(const FiniteDynSystem& sys, ExecMode mode = kDefaultExec);

enum class BehaviorKind { surviving, glueing, shortening, glueing_and_shortening };

const char* behavior_kind_name(BehaviorKind k);

/// How one T-orbit behaves in the quotient: stabilizer class, shortening
/// factor delta = |orbit(T) n orbit(G)|, glue count theta.
struct OrbitBehavior {
    int orbit_index = -1;
    int length = 0;
    int representative = 0;
    int class_id = -1;
    int delta = 1;
    int theta = 1;
    BehaviorKind kind = BehaviorKind::surviving;
    int quotient_class = -1;   // image class id
    int quotient_length = 0;   // = length / delta
};

OrbitBehavior classify_orbit(const FiniteDynSystem& sys, const QuotientSystem& q,
                             const OrbitRecord& orbit);

std::vector<OrbitBehavior> classify_all(const FiniteDynSystem& sys, const QuotientSystem& q,
                                        const std::vector<OrbitRecord>& orbs,
                                        ExecMode mode = kDefaultExec);

/// Census of orbit behaviors: per-channel counts of upstairs orbits, plus
/// downstairs orbit counts split by stabilizer class. Construction verifies
/// the two decomposition identities
///   O_n(T)  = sum over channels of the channel count at n,
///   O_n(T') = sum over channels of count(delta*n) / theta,
/// and the channel constraints (theta divides every count; counts vanish off
/// multiples of delta). These are theorems, so a mismatch is an
/// implementation bug and throws.
struct BehaviorCensus {
    // (class, delta, theta, upstairs length) -> orbit count
    using Key = std::tuple<int, int, int, int>;
    std::map<Key, long long> counts;
    std::map<std::pair<int, int>, long long> quotient_by_class;  // (class, n) -> count
    std::map<int, long long> upstairs_totals;                    // n -> O_n(T)
    std::map<int, long long> quotient_totals;                    // n -> O_n(T')
    int horizon = 0;

    long long count(int cls, int delta, int theta, int n) const;
    long long quotient_count(int cls, int n) const;
    long long upstairs_total(int n) const;
    long long quotient_total(int n) const;
};

BehaviorCensus behavior_census(const FiniteDynSystem& sys, int horizon,
                               ExecMode mode = kDefaultExec);

/// The periodic-point and orbit-count bounds for the quotient, in exact
/// rational arithmetic:
///   F_n(T)/|G| <= F_n(T') <= F_n(T) + sum_{delta>1} F_{delta n}(T)/(delta theta)
///   O_n(T')    <= O_n(T) + sum_{delta>1} O_{delta n}(T)/theta
/// with (delta, theta) running over the trivial-stabilizer channels, and,
/// when no delta > 1 divides n,
///   O_n(T')    >= O_n(T)/|G|.
///
/// The two upper bounds as displayed assume every shortening orbit glues by
/// the full |G|/delta. Orbits with nontrivial stabilizer glue by
/// [G:H]/delta, which can be smaller, and the displayed bounds do fail on
/// such systems (the 9-point doubling layer under the square symmetries
/// already breaks the orbit bound at n = 1). The report therefore carries a
/// second pair of upper bounds using the minimum glue factor over all
/// stabilizer classes admitting each delta; those follow from the fiber
/// count and hold on every system. Lower bounds are unaffected.
struct BoundsRow {
    int n = 0;
    Rat f_lower, f_value, f_upper;
    Rat o_value, o_upper;
    Rat f_upper_minglue, o_upper_minglue;
    bool o_lower_applies = false;
    Rat o_lower;
    bool ok() const;           // the bounds as displayed
    bool ok_minglue() const;   // lower bounds + minimum-glue upper bounds
};

struct BoundsReport {
    std::vector<BoundsRow> rows;
    bool ok() const;
    bool ok_minglue() const;
};

BoundsReport check_bounds(const FiniteDynSystem& sys, int horizon,
                          ExecMode mode = kDefaultExec);

/// theta_min(delta) = min over classes [H] with delta admissible of
/// [G:H]/delta; the glue factor that must accompany a delta-fold shortening
/// in the worst case.
std::map<int, int> min_glue_by_delta(const GroupContext& ctx);

/// Finite-horizon growth diagnostics. The per-n sequences are (1/n) log F_n
/// for the system and its quotient; the headline exponents are read off the
/// orbit counts at the horizon, (1/N) log O_N, which is the quantity the
/// realization machinery controls. All of this is heuristic: a finite prefix
/// cannot determine a limsup.
struct GrowthReport {
    std::vector<double> f_exponents_up;
    std::vector<double> f_exponents_down;
    double orbit_exponent_up = 0.0;
    double orbit_exponent_down = 0.0;
    int nabla = 1;
    bool window_ok = false;  // down in [up, nabla*up] within tolerance
    bool heuristic = true;
};

struct HorizonTooSmall : std::runtime_error {
    using std::runtime_error::runtime_error;
};

GrowthReport growth_estimate(const PeriodCounts& up, const PeriodCounts& down, int nabla,
                             double tolerance = 1e-9);

/// Runs every orbit-level property the theory demands on one system and
/// returns human-readable violation reports (empty means all hold):
/// shortening in both directions with its cyclic witness, glue counts by
/// fiber cardinality, admissibility of (delta, theta) for the stabilizer
/// class, the stabilizer-class partition, and the two count decompositions
/// with their divisibility constraints.
std::vector<std::string> property_audit(const FiniteDynSystem& sys,
                                     ExecMode mode = kDefaultExec);

}  // namespace orbitq
