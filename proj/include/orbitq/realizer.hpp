#pragma once

#include <vector>

#include "orbitq/constructor.hpp"
#include "orbitq/rational.hpp"

namespace orbitq {

struct PairError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Split failure: no nonnegative integer channel combination reproduces
/// (a_n, b_n) at index n. residual = a_n - b_n at the failing index.
struct InfeasibleSplit : std::runtime_error {
    int n;
    long long residual;
    InfeasibleSplit(int n_, long long residual_)
        : std::runtime_error("no integer channel combination reproduces the pair at n=" +
                             std::to_string(n_) + " (residual " +
                             std::to_string(residual_) + ")"),
          n(n_),
          residual(residual_) {}
};

/// Target orbit-count pair (a_n upstairs, b_n downstairs) with crossover
/// index N. Validated on construction:
///   a_1 >= 1, b_1 > a_1/|G|,
///   a_n/|G| <= b_n <= a_n            for n < N,
///   a_n <= b_n <= a_{nabla*n}/Theta  for n >= N (upper checked in range,
///                                    out-of-range indices flagged),
///   a_{nabla*n}/Theta >= a_n         for n >= N, where in range.
struct SequencePair {
    std::shared_ptr<const GroupContext> ctx;
    std::vector<long long> a;
    std::vector<long long> b;
    int crossover = 1;
    std::vector<int> provisional;  // indices whose upper bound was out of range

    int horizon() const { return (int)a.size(); }
};

SequencePair make_sequence_pair(std::shared_ptr<const GroupContext> ctx,
                                std::vector<long long> a, std::vector<long long> b,
                                int crossover);

enum class SplitMode {
    /// Exact integer feasibility search over all delta = 1 channels below
    /// the crossover; reports infeasibility instead of approximating.
    repaired,
    /// The ceiling recipe below the crossover. Exact only when |G|-1 divides
    /// a_n - b_n there (always for |G| = 2); otherwise throws.
    verbatim,
};

/// Splits the pair into a behavior prescription whose predicted counts
/// reproduce (a, b) exactly on 1..horizon. Above the crossover this is the
/// recursion through the maximal-shortening channel; below it the chosen
/// mode decides how the glue channels absorb a_n - b_n.
BehaviorSpec split_sequences(const SequencePair& pair, SplitMode mode = SplitMode::repaired);

/// Builds the pair a_n = ceil(lambda^n) and b_n = ceil(c*lambda^n) before /
/// ceil(c*eta^n) after the least crossover N with c*eta^N < lambda^(nabla N)/Theta.
/// Admissible parameter ranges: eta = lambda with c >= 1/|G|, or
/// lambda < eta < lambda^nabla, or eta = lambda^nabla with c <= 1/Theta.
struct CaseViolation : std::runtime_error {
    using std::runtime_error::runtime_error;
};

SequencePair growth_rate_instance(std::shared_ptr<const GroupContext> ctx, Rat lambda,
                                Rat eta, Rat c, int horizon);

struct RealizeReport {
    bool ok = true;
    BehaviorSpec spec;
    std::vector<std::string> mismatches;
};

/// split -> build -> brute-force counts, compared against (a, b) on
/// 1..horizon.
RealizeReport realize_and_verify(const SequencePair& pair, int horizon,
                                 SplitMode mode = SplitMode::repaired,
                                 ExecMode exec = kDefaultExec);

}  // namespace orbitq
