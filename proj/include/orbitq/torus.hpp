#pragma once

#include <array>
#include <vector>

#include "orbitq/quotient.hpp"
#include "orbitq/rational.hpp"

namespace orbitq::torus {

struct TorusError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A rational point of the 2-torus, coordinates normalized into [0,1) and
/// reduced. Equality and ordering are exact.
struct TorusPoint {
    Rat x, y;

    static TorusPoint make(Rat x, Rat y);
    bool operator==(const TorusPoint& o) const { return x == o.x && y == o.y; }
    bool operator<(const TorusPoint& o) const {
        if (x != o.x) return x < o.x;
        return y < o.y;
    }
    /// Periodic points of doubling are exactly the odd-denominator points.
    bool odd_denominators() const { return x.den % 2 == 1 && y.den % 2 == 1; }
    std::string str() const { return "(" + x.str() + "," + y.str() + ")"; }
};

TorusPoint double_point(const TorusPoint& p);

/// An integer-matrix torus map with a rational shift, v -> A v + c (mod 1).
struct AffineSymmetry {
    std::array<long long, 4> a{1, 0, 0, 1};  // row-major
    Rat cx, cy;
    std::string label;

    TorusPoint apply(const TorusPoint& p) const;
    long long det() const { return a[0] * a[3] - a[1] * a[2]; }
};

/// The eight square symmetries (identity, quarter rotations, reflections),
/// all linear mod 1, all commuting with doubling.
const std::vector<AffineSymmetry>& square_symmetries();

/// The symmetry group as an analyzed FiniteGroup (order 8), element order
/// matching square_symmetries().
std::shared_ptr<const GroupContext> square_symmetry_group();

/// Conjugacy class ids of the symmetry group that appear with nonempty fixed
/// sets on the torus: the full group, the rotation+axis Klein subgroup, the
/// axis-reflection pairs, the diagonal-reflection pairs, and the trivial
/// class.
struct SquareClassIds {
    int full, klein, axis, diagonal, trivial;
};
SquareClassIds square_class_ids();

/// Smith normal form of a 2x2 integer matrix: u * m * v = diag(d0, d1) with
/// u, v unimodular, d0, d1 >= 0 and d0 | d1.
struct Smith2x2 {
    std::array<long long, 4> u, v;
    long long d0 = 0, d1 = 0;
};
Smith2x2 smith_normal_form(std::array<long long, 4> m);

struct SingularCongruence : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Exact solution set of M v = c (mod 1) on the torus. When M is
/// nonsingular the set is finite with |det M| points. When M is singular the
/// set is a union of lines (or everything); it is returned as base points
/// plus free directions rather than aborting.
struct CongruenceSolutionSet {
    bool finite = true;
    std::vector<TorusPoint> points;          // when finite; sorted
    std::vector<TorusPoint> bases;           // when not finite
    std::vector<std::array<Rat, 2>> free_dirs;
    bool empty() const { return finite && points.empty(); }
};

CongruenceSolutionSet solve_congruence(std::array<long long, 4> m, Rat cx, Rat cy);

inline long long layer_modulus(int n) { return (1LL << n) - 1; }

/// The points of period n of doubling -- the full (Z/(2^n-1))^2 grid -- as a
/// finite system under the symmetry group. Guard: n <= 10.
FiniteDynSystem layer_system(int n);

/// The point of layer n at grid coordinates (i, j).
TorusPoint layer_point(int n, long long i, long long j);

/// The finite invariant set { v : T^n v = g v for some symmetry g } as a
/// system: every point of the quotient torus whose induced orbit length
/// divides n has its full preimage in here. Built by exact congruence
/// solving, never by enumerating the period-(4n) layer. Guard: n <= 8.
struct QuotientPeriodSystem {
    FiniteDynSystem system;
    std::vector<TorusPoint> points;  // sorted, index-aligned with the system
};
QuotientPeriodSystem quotient_period_system(int n);

/// Number of points of the quotient torus fixed by the n-th iterate of the
/// induced map. Guard: n <= 8.
long long quotient_fixed_count(int n);

/// The induced map on the fundamental triangle 0 <= y <= x <= 1/2, evaluated
/// exactly by its four-piece formula. All applicable pieces are evaluated
/// and must agree on overlaps. Throws if p is outside the triangle.
TorusPoint triangle_map(const TorusPoint& p);

bool in_fundamental_domain(const TorusPoint& p);

/// The unique orbit representative inside the fundamental triangle
/// (lexicographic minimum on boundary ties).
TorusPoint fundamental_rep(const TorusPoint& p);

/// Stabilizer of an exact torus point inside the symmetry group, as an
/// element bitmask.
uint32_t point_stabilizer_mask(const TorusPoint& p);

struct SemiconjReport {
    int n = 0;
    long long checked = 0;
    std::vector<std::string> failures;
    bool ok() const { return failures.empty(); }
};

/// Exhaustively checks fundamental_rep(T v) == triangle_map(fundamental_rep v)
/// over layer n. Guard: n <= 8.
SemiconjReport verify_semiconjugacy(int n);

/// Per-class channel identities for induced orbits of length n, checked in
/// exact integers on the congruence-solved point set:
///   [G]    : quotient count = channel (1,1) count at n
///   [axis] : quotient count = (1,4) at n / 4 + (2,2) at 2n / 2
///   [diag] : quotient count = (1,4) at n / 4 + (2,2) at 2n / 2
///   [I]    : quotient count = (1,8) at n / 8 + (2,4) at 2n / 4 + (4,2) at 4n / 2
/// plus: no periodic point has Klein-class stabilizer. Guard: n <= 6.
struct ChannelCensusReport {
    int n = 0;
    bool identities_ok = false;
    bool klein_empty = false;
    // per class: (quotient count, per-channel upstairs counts in channel order)
    std::vector<std::string> lines;
    // shortening-proportion diagnostic over lengths 1..2n: fraction of orbits
    // of length <= k that shorten. Shortening orbits only exist at even
    // lengths (delta is 2 or 4 here), so the fraction dips at every odd k
    // and peaks at even k; the trend is read along the even subsequence.
    // Finite-range diagnostic only.
    std::vector<Rat> shorten_fraction;
    bool fraction_trend_nonincreasing = false;
    bool ok() const { return identities_ok && klein_empty; }
};
ChannelCensusReport channel_census(int n);

/// Exact orbit counts O_1..O_n of doubling on the torus from the
/// periodic-point counts F_k = (2^k-1)^2 by Moebius inversion.
std::vector<long long> torus_orbit_counts(int n);

}  // namespace orbitq::torus
