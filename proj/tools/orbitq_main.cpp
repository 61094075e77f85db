// orbitq: exact analysis of closed-orbit behavior in finite systems with a
// commuting finite group action -- quotient censuses and bounds,
// prescription construction, sequence realization, and the
// doubling-map/triangle-map verification suite.
//
// Exit codes: 0 all checks passed, 1 a property check failed, 2 usage error.

#include <cstdlib>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "orbitq/io.hpp"
#include "orbitq/realizer.hpp"
#include "orbitq/torus.hpp"

using namespace orbitq;
using nlohmann::json;

namespace {

enum class Format { table, csv, json_fmt };

struct Table {
    std::string name;
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

void print_tables(const std::vector<Table>& tables, Format fmt) {
    if (fmt == Format::json_fmt) {
        json out = json::object();
        for (const auto& t : tables) {
            json rows = json::array();
            for (const auto& r : t.rows) {
                json row = json::object();
                for (size_t i = 0; i < t.header.size(); ++i) row[t.header[i]] = r[i];
                rows.push_back(row);
            }
            out[t.name] = rows;
        }
        std::cout << out.dump(2) << "\n";
        return;
    }
    bool first = true;
    for (const auto& t : tables) {
        if (!first) std::cout << "\n";
        first = false;
        if (fmt == Format::csv) {
            std::cout << "# " << t.name << "\n";
            for (size_t i = 0; i < t.header.size(); ++i)
                std::cout << t.header[i] << (i + 1 < t.header.size() ? "," : "\n");
            for (const auto& r : t.rows)
                for (size_t i = 0; i < r.size(); ++i)
                    std::cout << r[i] << (i + 1 < r.size() ? "," : "\n");
        } else {
            std::cout << "== " << t.name << "\n";
            std::vector<size_t> w(t.header.size());
            for (size_t i = 0; i < t.header.size(); ++i) w[i] = t.header[i].size();
            for (const auto& r : t.rows)
                for (size_t i = 0; i < r.size(); ++i) w[i] = std::max(w[i], r[i].size());
            auto line = [&](const std::vector<std::string>& cells) {
                for (size_t i = 0; i < cells.size(); ++i)
                    std::cout << std::left << std::setw((int)w[i] + 2) << cells[i];
                std::cout << "\n";
            };
            line(t.header);
            for (const auto& r : t.rows) line(r);
        }
    }
}

int order_guard_from_env() {
    const char* env = std::getenv("ORBITQ_ORDER_GUARD");
    if (!env) return kDefaultOrderGuard;
    return std::max(1, std::atoi(env));
}

std::string class_label(const GroupContext& ctx, int cls) {
    std::string s = "{";
    const auto& rep = ctx.classes.representative(cls);
    for (size_t i = 0; i < rep.elements.size(); ++i) {
        if (i) s += " ";
        s += ctx.group.label(rep.elements[i]);
    }
    return s + "}";
}

std::string fixed6(double v) {
    std::ostringstream ss;
    ss << std::fixed << std::setprecision(6) << v;
    return ss.str();
}

// ---------------------------------------------------------------- group

int cmd_group(const std::string& path, bool show_sigma, bool show_invariants,
              Format fmt) {
    auto ctx = GroupContext::analyze(io::load_group_file(path, order_guard_from_env()));
    const FiniteGroup& g = ctx->group;

    std::vector<Table> tables;
    Table summary{"group",
                  {"order", "subgroups", "classes", "nabla", "theta_cap", "h_nabla_class"},
                  {}};
    summary.rows.push_back({std::to_string(g.order()),
                            std::to_string(ctx->subgroups.size()),
                            std::to_string(ctx->classes.num_classes()),
                            std::to_string(ctx->sigma.nabla),
                            std::to_string(ctx->sigma.theta_cap),
                            std::to_string(ctx->sigma.h_nabla_class)});
    tables.push_back(summary);

    if (show_sigma) {
        Table sig{"sigma", {"class", "representative", "order", "channels"}, {}};
        for (int c = 0; c < ctx->classes.num_classes(); ++c) {
            std::string channels;
            for (const auto& ch : ctx->sigma.per_class[c]) {
                if (!channels.empty()) channels += " ";
                channels +=
                    "(" + std::to_string(ch.delta) + "," + std::to_string(ch.theta) + ")";
            }
            sig.rows.push_back({std::to_string(c), class_label(*ctx, c),
                                std::to_string(ctx->classes.representative(c).order()),
                                channels});
        }
        tables.push_back(sig);
    }

    int violations = 0;
    if (show_invariants) {
        Table inv{"invariants", {"property", "status"}, {}};
        auto add = [&](const std::string& name, bool ok) {
            inv.rows.push_back({name, ok ? "ok" : "VIOLATED"});
            if (!ok) ++violations;
        };
        bool closed = true;
        {
            std::set<uint32_t> masks;
            for (const auto& h : ctx->subgroups) masks.insert(h.mask);
            for (const auto& h : ctx->subgroups)
                for (int x = 0; x < g.order(); ++x)
                    if (!masks.count(conjugate_subgroup(g, h, x).mask)) closed = false;
        }
        add("subgroup lattice closed under conjugation", closed);
        bool products = true, unit_channel = true;
        for (int c = 0; c < ctx->classes.num_classes(); ++c) {
            int index = g.order() / ctx->classes.representative(c).order();
            bool has_one = false;
            for (const auto& ch : ctx->sigma.per_class[c]) {
                if (ch.delta * ch.theta != index) products = false;
                if (ch.delta == 1) has_one = true;
            }
            if (!has_one) unit_channel = false;
        }
        add("delta * theta equals the subgroup index on every channel", products);
        add("every class admits the glue-only channel", unit_channel);
        add("nabla divides the group order", g.order() % ctx->sigma.nabla == 0);
        add("nabla * theta_cap divides the group order",
            g.order() % (ctx->sigma.nabla * ctx->sigma.theta_cap) == 0);
        tables.push_back(inv);
    }

    print_tables(tables, fmt);
    return violations ? 1 : 0;
}

// ---------------------------------------------------------------- system

int cmd_system(const std::string& path, bool classify, bool bounds, int max_n,
               const std::string& emit_census, Format fmt) {
    FiniteDynSystem sys = io::load_system_file(path, order_guard_from_env());
    std::vector<Table> tables;

    ValidationReport val = validate_system(sys);
    Table vt{"validation", {"status", "issues"}, {}};
    vt.rows.push_back({val.ok() ? "ok" : "INVALID", std::to_string(val.issues.size())});
    tables.push_back(vt);
    if (!val.ok()) {
        Table wt{"violations", {"witness"}, {}};
        for (size_t i = 0; i < val.issues.size() && i < 20; ++i)
            wt.rows.push_back({val.issues[i].describe(sys)});
        tables.push_back(wt);
        print_tables(tables, fmt);
        return 1;
    }

    int rc = 0;
    if (classify) {
        QuotientSystem q = build_quotient(sys);
        BehaviorCensus census = behavior_census(sys, max_n);
        Table ct{"census", {"n", "class", "delta", "theta", "count", "kind"}, {}};
        for (const auto& [key, count] : census.counts) {
            auto [cls, delta, theta, n] = key;
            BehaviorKind kind =
                delta == 1 ? (theta == 1 ? BehaviorKind::surviving : BehaviorKind::glueing)
                           : (theta == 1 ? BehaviorKind::shortening
                                         : BehaviorKind::glueing_and_shortening);
            ct.rows.push_back({std::to_string(n), class_label(*sys.ctx, cls),
                               std::to_string(delta), std::to_string(theta),
                               std::to_string(count), behavior_kind_name(kind)});
        }
        tables.push_back(ct);
        PeriodCounts up = period_counts(sys, max_n);
        PeriodCounts down = period_counts_from_orbits(cycle_decomposition(q.tprime), max_n);
        Table tt{"totals", {"n", "O_n(T)", "O_n(T')", "F_n(T)", "F_n(T')"}, {}};
        for (int n = 1; n <= max_n; ++n)
            tt.rows.push_back({std::to_string(n), std::to_string(up.o[n - 1]),
                               std::to_string(down.o[n - 1]), std::to_string(up.f[n - 1]),
                               std::to_string(down.f[n - 1])});
        tables.push_back(tt);

        auto audit = property_audit(sys);
        Table at{"properties", {"status", "violations"}, {}};
        at.rows.push_back({audit.empty() ? "ok" : "VIOLATED", std::to_string(audit.size())});
        tables.push_back(at);
        if (!audit.empty()) {
            Table aw{"property_violations", {"detail"}, {}};
            for (size_t i = 0; i < audit.size() && i < 20; ++i)
                aw.rows.push_back({audit[i]});
            tables.push_back(aw);
            rc = 1;
        }
        if (!emit_census.empty()) {
            std::ostringstream ss;
            io::write_census_csv(ss, census, up, down);
            io::write_file(emit_census, ss.str());
        }
    }
    if (bounds) {
        BoundsReport rep = check_bounds(sys, max_n);
        Table bt{"bounds",
                 {"n", "F_lower", "F_n(T')", "F_upper", "F_upper_minglue", "O_n(T')",
                  "O_upper", "O_upper_minglue", "O_lower", "displayed", "minglue"},
                 {}};
        for (const auto& row : rep.rows) {
            bt.rows.push_back(
                {std::to_string(row.n), row.f_lower.str(), row.f_value.str(),
                 row.f_upper.str(), row.f_upper_minglue.str(), row.o_value.str(),
                 row.o_upper.str(), row.o_upper_minglue.str(),
                 row.o_lower_applies ? row.o_lower.str() : "-",
                 row.ok() ? "ok" : "violated", row.ok_minglue() ? "ok" : "VIOLATED"});
        }
        tables.push_back(bt);
        // the displayed upper bounds are not theorems for stabilized
        // shortening; the provable minimum-glue form gates the exit code
        if (!rep.ok_minglue()) rc = 1;
    }
    print_tables(tables, fmt);
    return rc;
}

// ---------------------------------------------------------------- construct

int cmd_construct(const std::string& group_path, const std::string& spec_path,
                  bool verify, int max_n, const std::string& emit, Format fmt) {
    auto ctx = GroupContext::analyze(io::load_group_file(group_path, order_guard_from_env()));
    BehaviorSpec spec = io::load_spec_file(spec_path, ctx, order_guard_from_env());
    FiniteDynSystem sys = build_system(spec);

    std::vector<Table> tables;
    Table st{"system", {"points", "orbits"}, {}};
    st.rows.push_back({std::to_string(sys.npoints), std::to_string(orbits(sys).size())});
    tables.push_back(st);

    int rc = 0;
    if (verify) {
        ConstructionReport rep = verify_construction(spec, max_n);
        auto [a, b] = predicted_counts(spec, max_n);
        PeriodCounts up = period_counts(sys, max_n);
        QuotientSystem q = build_quotient(sys);
        PeriodCounts down = period_counts_from_orbits(cycle_decomposition(q.tprime), max_n);
        Table vt{"verification",
                 {"n", "O_n(T)", "prescribed_a", "O_n(T')", "prescribed_b"},
                 {}};
        for (int n = 1; n <= max_n; ++n)
            vt.rows.push_back({std::to_string(n), std::to_string(up.o[n - 1]),
                               std::to_string(a[n - 1]), std::to_string(down.o[n - 1]),
                               std::to_string(b[n - 1])});
        tables.push_back(vt);
        Table rt{"result", {"status", "mismatches"}, {}};
        rt.rows.push_back(
            {rep.ok ? "ok" : "MISMATCH", std::to_string(rep.mismatches.size())});
        tables.push_back(rt);
        if (!rep.ok) {
            Table mt{"mismatches", {"detail"}, {}};
            for (const auto& m : rep.mismatches) mt.rows.push_back({m});
            tables.push_back(mt);
            rc = 1;
        }
    }
    if (!emit.empty()) io::write_file(emit, io::system_to_json(sys));
    print_tables(tables, fmt);
    return rc;
}

// ---------------------------------------------------------------- realize

int cmd_realize(const std::string& group_path, const std::string& pairs_path,
                int crossover, int max_n, const std::string& mode_name,
                const std::string& emit, Format fmt) {
    auto ctx = GroupContext::analyze(io::load_group_file(group_path, order_guard_from_env()));
    auto [a, b] = io::load_pairs_csv(pairs_path);
    if (max_n <= 0) max_n = (int)a.size();

    SplitMode mode = mode_name == "verbatim" ? SplitMode::verbatim : SplitMode::repaired;
    SequencePair pair = make_sequence_pair(ctx, a, b, crossover);
    RealizeReport rep = realize_and_verify(pair, max_n, mode);

    std::vector<Table> tables;
    Table pt{"prescription", {"class", "delta", "theta", "n", "count"}, {}};
    for (const auto& [key, count] : rep.spec.entries) {
        auto [cls, delta, theta, n] = key;
        pt.rows.push_back({class_label(*ctx, cls), std::to_string(delta),
                           std::to_string(theta), std::to_string(n),
                           std::to_string(count)});
    }
    tables.push_back(pt);
    Table rt{"result", {"status", "mismatches"}, {}};
    rt.rows.push_back({rep.ok ? "ok" : "MISMATCH", std::to_string(rep.mismatches.size())});
    tables.push_back(rt);
    if (!emit.empty()) io::write_file(emit, io::spec_to_json(rep.spec));
    print_tables(tables, fmt);
    return rep.ok ? 0 : 1;
}

// ---------------------------------------------------------------- cor12

int cmd_cor12(const std::string& group_path, const std::string& lambda,
              const std::string& eta, const std::string& c, int max_n, Format fmt) {
    auto ctx = GroupContext::analyze(io::load_group_file(group_path, order_guard_from_env()));
    SequencePair pair =
        growth_rate_instance(ctx, Rat::parse(lambda), Rat::parse(eta), Rat::parse(c), max_n);
    RealizeReport rep = realize_and_verify(pair, max_n);

    std::vector<Table> tables;
    Table st{"instance", {"crossover", "nabla", "theta_cap"}, {}};
    st.rows.push_back({std::to_string(pair.crossover), std::to_string(ctx->sigma.nabla),
                       std::to_string(ctx->sigma.theta_cap)});
    tables.push_back(st);
    Table seq{"sequences", {"n", "a_n", "b_n"}, {}};
    for (int n = 1; n <= pair.horizon(); ++n)
        seq.rows.push_back({std::to_string(n), std::to_string(pair.a[n - 1]),
                            std::to_string(pair.b[n - 1])});
    tables.push_back(seq);

    if (rep.ok && max_n >= 4) {
        FiniteDynSystem sys = build_system(rep.spec);
        PeriodCounts up = period_counts(sys, max_n);
        QuotientSystem q = build_quotient(sys);
        PeriodCounts down = period_counts_from_orbits(cycle_decomposition(q.tprime), max_n);
        GrowthReport growth = growth_estimate(up, down, ctx->sigma.nabla, 1e-9);
        Table gt{"growth",
                 {"orbit_exponent_up", "orbit_exponent_down", "f_exponent_up",
                  "f_exponent_down", "window"},
                 {}};
        gt.rows.push_back({fixed6(growth.orbit_exponent_up),
                           fixed6(growth.orbit_exponent_down),
                           fixed6(growth.f_exponents_up.back()),
                           fixed6(growth.f_exponents_down.back()),
                           growth.window_ok ? "ok" : "outside"});
        tables.push_back(gt);
    }
    Table rt{"result", {"status"}, {}};
    rt.rows.push_back({rep.ok ? "ok" : "MISMATCH"});
    tables.push_back(rt);
    print_tables(tables, fmt);
    return rep.ok ? 0 : 1;
}

// ---------------------------------------------------------------- torus

int cmd_torus(int max_n, const std::string& check, const std::string& emit,
              const std::string& dump_points, Format fmt) {
    std::vector<Table> tables;
    bool all_ok = true;

    if (!emit.empty()) {
        // combined count table: n, F_n(T), (2^n-1)^2, F_n(induced), 4^n, flags
        std::ostringstream ss;
        ss << "n,F_up,closed_up,F_down,closed_down,match_up,match_down\n";
        int top = std::min(max_n, 10);
        for (int n = 1; n <= top; ++n) {
            long long m = torus::layer_modulus(n);
            PeriodCounts pc = period_counts(torus::layer_system(n), n);
            bool up_ok = pc.f[n - 1] == m * m;
            all_ok &= up_ok;
            ss << n << "," << pc.f[n - 1] << "," << m * m << ",";
            if (n <= 8) {
                long long got = torus::quotient_fixed_count(n);
                bool down_ok = got == (1LL << (2 * n));
                all_ok &= down_ok;
                ss << got << "," << (1LL << (2 * n)) << "," << (up_ok ? "ok" : "no")
                   << "," << (down_ok ? "ok" : "no") << "\n";
            } else {
                ss << ",," << (up_ok ? "ok" : "no") << ",\n";
            }
        }
        io::write_file(emit, ss.str());
    }
    if (!dump_points.empty()) {
        // audit dump of the congruence-solved point sets
        std::ostringstream ss;
        ss << "n,x,y\n";
        for (int n = 1; n <= std::min(max_n, 8); ++n)
            for (const auto& p : torus::quotient_period_system(n).points)
                ss << n << "," << p.x.str() << "," << p.y.str() << "\n";
        io::write_file(dump_points, ss.str());
    }

    if (check == "fcounts") {
        int top = std::min(max_n, 10);
        Table t{"fcounts", {"n", "points", "F_n(T)", "closed_form", "match"}, {}};
        for (int n = 1; n <= top; ++n) {
            FiniteDynSystem sys = torus::layer_system(n);
            PeriodCounts pc = period_counts(sys, n);
            long long m = torus::layer_modulus(n);
            bool ok = pc.f[n - 1] == m * m;
            all_ok &= ok;
            t.rows.push_back({std::to_string(n), std::to_string(sys.npoints),
                              std::to_string(pc.f[n - 1]), std::to_string(m * m),
                              ok ? "ok" : "MISMATCH"});
        }
        tables.push_back(t);
    } else if (check == "quotient") {
        int top = std::min(max_n, 8);
        Table t{"quotient_fcounts", {"n", "F_n(induced)", "closed_form", "match"}, {}};
        for (int n = 1; n <= top; ++n) {
            long long got = torus::quotient_fixed_count(n);
            long long want = 1LL << (2 * n);
            all_ok &= got == want;
            t.rows.push_back({std::to_string(n), std::to_string(got),
                              std::to_string(want), got == want ? "ok" : "MISMATCH"});
        }
        tables.push_back(t);
    } else if (check == "eq9" || check == "channels") {
        int top = std::min(max_n, 6);
        Table t{"channel_census", {"n", "identities", "klein_empty", "shorten_fraction"}, {}};
        Table lines{"channel_lines", {"n", "line"}, {}};
        for (int n = 1; n <= top; ++n) {
            torus::ChannelCensusReport rep = torus::channel_census(n);
            all_ok &= rep.ok();
            t.rows.push_back({std::to_string(n), rep.identities_ok ? "ok" : "MISMATCH",
                              rep.klein_empty ? "ok" : "NONEMPTY",
                              rep.shorten_fraction.back().str()});
            for (const auto& line : rep.lines)
                lines.rows.push_back({std::to_string(n), line});
        }
        tables.push_back(t);
        tables.push_back(lines);
    } else if (check == "triangle") {
        int top = std::min(max_n, 8);
        Table t{"triangle", {"n", "points", "orbit_consistent"}, {}};
        // iterate the induced map on fundamental representatives and compare
        // with the projected upstairs orbit
        for (int n = 1; n <= top; ++n) {
            long long m = torus::layer_modulus(n);
            bool ok = true;
            for (long long i = 0; i < m && ok; ++i)
                for (long long j = 0; j < m && ok; ++j) {
                    torus::TorusPoint up = torus::layer_point(n, i, j);
                    torus::TorusPoint down = torus::fundamental_rep(up);
                    for (int step = 0; step < n; ++step) {
                        up = torus::double_point(up);
                        down = torus::triangle_map(down);
                        if (!(down == torus::fundamental_rep(up))) ok = false;
                    }
                }
            all_ok &= ok;
            t.rows.push_back(
                {std::to_string(n), std::to_string(m * m), ok ? "ok" : "MISMATCH"});
        }
        tables.push_back(t);
    } else if (check == "semiconj") {
        int top = std::min(max_n, 8);
        Table t{"semiconjugacy", {"n", "checked", "status"}, {}};
        for (int n = 1; n <= top; ++n) {
            torus::SemiconjReport rep = torus::verify_semiconjugacy(n);
            all_ok &= rep.ok();
            t.rows.push_back({std::to_string(n), std::to_string(rep.checked),
                              rep.ok() ? "ok" : rep.failures.front()});
        }
        tables.push_back(t);
    } else {
        std::cerr << "unknown check \"" << check
                  << "\" (want fcounts|quotient|eq9|triangle|semiconj)\n";
        return 2;
    }

    print_tables(tables, fmt);
    return all_ok ? 0 : 1;
}

// ---------------------------------------------------------------- selftest

int cmd_selftest(uint64_t seed, int cases, const std::string& data_dir, Format fmt) {
    const std::vector<std::string> names{"c2", "c3", "c4", "c2c2", "s3", "d8", "q8"};
    std::vector<std::shared_ptr<const GroupContext>> groups;
    for (const auto& name : names)
        groups.push_back(
            GroupContext::analyze(io::load_group_file(data_dir + "/" + name + ".json")));

    std::vector<Table> tables;
    Table t{"selftest", {"case", "group", "points", "roundtrip", "properties"}, {}};
    int failures = 0;
    for (int i = 0; i < cases; ++i) {
        auto ctx = groups[i % groups.size()];
        uint64_t case_seed = seed * 1000003ull + (uint64_t)i;
        BehaviorSpec spec = sample_behavior_spec(ctx, case_seed);
        FiniteDynSystem sys = build_system(spec);
        ConstructionReport rep = verify_construction(spec, 12);
        auto audit = property_audit(sys);
        if (!rep.ok || !audit.empty()) ++failures;
        t.rows.push_back({std::to_string(i), names[i % names.size()],
                          std::to_string(sys.npoints), rep.ok ? "ok" : "MISMATCH",
                          audit.empty() ? "ok" : audit.front()});
    }
    // the doubling-map identities join the sweep
    {
        bool torus_ok = true;
        for (int n = 1; n <= 3; ++n) {
            torus_ok &= torus::quotient_fixed_count(n) == (1LL << (2 * n));
            torus_ok &= torus::verify_semiconjugacy(n).ok();
        }
        torus_ok &= torus::channel_census(2).ok();
        if (!torus_ok) ++failures;
        t.rows.push_back({"torus", "-", "-", torus_ok ? "ok" : "MISMATCH",
                          torus_ok ? "ok" : "see the torus subcommand"});
    }
    tables.push_back(t);
    Table rt{"result", {"status", "failures"}, {}};
    rt.rows.push_back({failures ? "FAILED" : "ok", std::to_string(failures)});
    tables.push_back(rt);
    print_tables(tables, fmt);
    return failures ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"closed-orbit behavior of finite systems under commuting group actions"};
    app.require_subcommand(1);
    app.fallthrough();  // allow global options after the subcommand name

    std::string fmt_name = "table";
    app.add_option("--format", fmt_name, "output format: table|csv|json")
        ->check(CLI::IsMember({"table", "csv", "json"}));

    std::string group_file;
    bool show_sigma = false, show_invariants = false;
    auto* sc_group = app.add_subcommand("group", "analyze a finite group file");
    sc_group->add_option("file", group_file, "group JSON file")->required();
    sc_group->add_flag("--sigma", show_sigma, "print per-class channel tables");
    sc_group->add_flag("--invariants", show_invariants, "check structural invariants");

    std::string system_file;
    bool classify = false, bounds = false;
    int max_n = 8;
    auto* sc_system = app.add_subcommand("system", "analyze a dynamical system file");
    sc_system->add_option("file", system_file, "system JSON file")->required();
    sc_system->add_flag("--classify", classify, "orbit behavior census");
    sc_system->add_flag("--bounds", bounds, "quotient count bounds");
    sc_system->add_option("--max-n", max_n, "horizon");
    std::string emit_census;
    sc_system->add_option("--emit-census", emit_census, "write the census CSV here");

    std::string c_group, c_spec, c_emit;
    bool c_verify = false;
    int c_max_n = 8;
    auto* sc_construct =
        app.add_subcommand("construct", "build a system from a behavior prescription");
    sc_construct->add_option("group", c_group, "group JSON file")->required();
    sc_construct->add_option("spec", c_spec, "prescription JSON file")->required();
    sc_construct->add_flag("--verify", c_verify, "brute-force the counts");
    sc_construct->add_option("--max-n", c_max_n, "verification horizon");
    sc_construct->add_option("--emit", c_emit, "write the constructed system JSON here");

    std::string r_group, r_pairs, r_mode = "repaired", r_emit;
    int r_cross = 1, r_max_n = 0;
    auto* sc_realize = app.add_subcommand("realize", "realize an orbit-count sequence pair");
    sc_realize->add_option("group", r_group, "group JSON file")->required();
    sc_realize->add_option("--pairs", r_pairs, "CSV rows n,a_n,b_n")->required();
    sc_realize->add_option("--crossover", r_cross, "crossover index N")->required();
    sc_realize->add_option("--max-n", r_max_n, "verification horizon (default: all)");
    sc_realize->add_option("--mode", r_mode, "splitter: repaired|verbatim")
        ->check(CLI::IsMember({"repaired", "verbatim"}));
    sc_realize->add_option("--emit", r_emit, "write the prescription JSON here");

    std::string g_group, g_lambda, g_eta, g_c;
    int g_max_n = 8;
    auto* sc_cor12 = app.add_subcommand("cor12", "build and verify a growth-rate instance");
    sc_cor12->add_option("group", g_group, "group JSON file")->required();
    sc_cor12->add_option("--lambda", g_lambda, "upstairs rate (rational p/q)")->required();
    sc_cor12->add_option("--eta", g_eta, "quotient rate (rational p/q)")->required();
    sc_cor12->add_option("--c", g_c, "quotient constant (rational p/q)")->required();
    sc_cor12->add_option("--max-n", g_max_n, "horizon");

    int t_max_n = 4;
    std::string t_check = "fcounts";
    auto* sc_torus = app.add_subcommand("torus", "doubling map under the square symmetries");
    sc_torus->add_option("--max-n", t_max_n, "horizon");
    sc_torus->add_option("--check", t_check, "fcounts|quotient|eq9|triangle|semiconj");
    std::string t_emit, t_dump;
    sc_torus->add_option("--emit", t_emit, "write the combined count CSV here");
    sc_torus->add_option("--dump-points", t_dump, "write the audit point sets here");

    uint64_t s_seed = 0;
    int s_cases = 20;
    std::string s_data = ORBITQ_DEFAULT_DATA_DIR;
    auto* sc_selftest =
        app.add_subcommand("selftest", "seeded prescription round-trips and property sweeps");
    sc_selftest->add_option("--seed", s_seed, "random seed");
    sc_selftest->add_option("--cases", s_cases, "number of prescriptions");
    sc_selftest->add_option("--data", s_data, "catalog group directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    Format fmt = fmt_name == "csv"    ? Format::csv
                 : fmt_name == "json" ? Format::json_fmt
                                      : Format::table;
    try {
        if (sc_group->parsed())
            return cmd_group(group_file, show_sigma, show_invariants, fmt);
        if (sc_system->parsed())
            return cmd_system(system_file, classify, bounds, max_n, emit_census, fmt);
        if (sc_construct->parsed())
            return cmd_construct(c_group, c_spec, c_verify, c_max_n, c_emit, fmt);
        if (sc_realize->parsed())
            return cmd_realize(r_group, r_pairs, r_cross, r_max_n, r_mode, r_emit, fmt);
        if (sc_cor12->parsed()) return cmd_cor12(g_group, g_lambda, g_eta, g_c, g_max_n, fmt);
        if (sc_torus->parsed()) return cmd_torus(t_max_n, t_check, t_emit, t_dump, fmt);
        if (sc_selftest->parsed()) return cmd_selftest(s_seed, s_cases, s_data, fmt);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
