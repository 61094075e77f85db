#pragma once

#include <iosfwd>
#include <string>

#include "orbitq/constructor.hpp"
#include "orbitq/realizer.hpp"

namespace orbitq::io {

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Group file: {"cayley": [[...]], "labels": [...]} or
/// {"perm": {"degree": d, "generators": [[...], ...], "labels": [...]}}.
FiniteGroup load_group_file(const std::string& path, int order_guard = kDefaultOrderGuard);
FiniteGroup load_group_json(const std::string& text, int order_guard = kDefaultOrderGuard);
std::string group_to_json(const FiniteGroup& g);

/// System file: {"group": <path or inline object>, "points": k,
/// "T": [k entries], "action": {"<element label>": [k entries], ...}}.
/// The action may list a generating set only; it is completed here.
FiniteDynSystem load_system_file(const std::string& path,
                                 int order_guard = kDefaultOrderGuard);
FiniteDynSystem load_system_json(const std::string& text,
                                 const std::string& base_dir = ".",
                                 int order_guard = kDefaultOrderGuard);
std::string system_to_json(const FiniteDynSystem& sys);

/// Prescription file: {"group": <path or inline, optional if supplied>,
/// "entries": [{"class": [elements...], "delta": d, "theta": t, "n": n,
/// "count": b}, ...], "allow_no_anchor": false}.
BehaviorSpec load_spec_file(const std::string& path,
                            std::shared_ptr<const GroupContext> ctx = nullptr,
                            int order_guard = kDefaultOrderGuard);
BehaviorSpec load_spec_json(const std::string& text,
                            std::shared_ptr<const GroupContext> ctx = nullptr,
                            const std::string& base_dir = ".",
                            int order_guard = kDefaultOrderGuard);
std::string spec_to_json(const BehaviorSpec& spec);

/// Sequence pair CSV: header-free rows "n,a_n,b_n" (n ascending from 1).
std::pair<std::vector<long long>, std::vector<long long>> load_pairs_csv(
    const std::string& path);

/// Census CSV: channel table (n, class, delta, theta, count), a blank line,
/// then the totals table (n, O_n(T), O_n(T'), F_n(T), F_n(T')).
void write_census_csv(std::ostream& os, const BehaviorCensus& census,
                      const PeriodCounts& up, const PeriodCounts& down);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace orbitq::io
