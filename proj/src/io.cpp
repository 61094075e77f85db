#include "orbitq/io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace orbitq::io {

using nlohmann::json;

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write " + path);
    out << content;
}

namespace {

std::string dir_of(const std::string& path) {
    auto pos = path.find_last_of('/');
    return pos == std::string::npos ? std::string(".") : path.substr(0, pos);
}

FiniteGroup group_from_json(const json& j, int order_guard) {
    if (j.contains("cayley")) {
        std::vector<std::vector<int>> table = j.at("cayley");
        std::vector<std::string> labels;
        if (j.contains("labels")) labels = j.at("labels").get<std::vector<std::string>>();
        return FiniteGroup::from_cayley(table, labels, order_guard);
    }
    if (j.contains("perm")) {
        const json& p = j.at("perm");
        int degree = p.at("degree");
        std::vector<std::vector<int>> gens = p.at("generators");
        std::vector<std::string> labels;
        if (p.contains("labels")) labels = p.at("labels").get<std::vector<std::string>>();
        return FiniteGroup::from_permutations(degree, gens, labels, order_guard);
    }
    throw IoError("group object needs a \"cayley\" or \"perm\" key");
}

FiniteGroup group_from_ref(const json& j, const std::string& base_dir, int order_guard) {
    if (j.is_string())
        return load_group_file(base_dir + "/" + j.get<std::string>(), order_guard);
    return group_from_json(j, order_guard);
}

}  // namespace

FiniteGroup load_group_json(const std::string& text, int order_guard) {
    return group_from_json(json::parse(text), order_guard);
}

FiniteGroup load_group_file(const std::string& path, int order_guard) {
    try {
        return load_group_json(read_file(path), order_guard);
    } catch (const json::exception& e) {
        throw IoError(path + ": " + e.what());
    }
}

std::string group_to_json(const FiniteGroup& g) {
    json j;
    j["cayley"] = g.cayley();
    j["labels"] = g.labels();
    return j.dump(2);
}

FiniteDynSystem load_system_json(const std::string& text, const std::string& base_dir,
                                 int order_guard) {
    json j = json::parse(text);
    FiniteGroup g = group_from_ref(j.at("group"), base_dir, order_guard);
    auto ctx = GroupContext::analyze(std::move(g));
    int points = j.at("points");
    std::vector<int> t = j.at("T");
    std::vector<std::pair<int, std::vector<int>>> gen_action;
    for (const auto& [label, perm] : j.at("action").items()) {
        int elem = ctx->group.element_by_label(label);
        if (elem < 0) throw IoError("action names unknown element \"" + label + "\"");
        gen_action.emplace_back(elem, perm.get<std::vector<int>>());
    }
    FiniteDynSystem sys =
        FiniteDynSystem::from_generator_action(ctx, points, std::move(t), gen_action);
    if (j.contains("point_labels"))
        sys.point_labels = j.at("point_labels").get<std::vector<std::string>>();
    return sys;
}

FiniteDynSystem load_system_file(const std::string& path, int order_guard) {
    try {
        return load_system_json(read_file(path), dir_of(path), order_guard);
    } catch (const json::exception& e) {
        throw IoError(path + ": " + e.what());
    }
}

std::string system_to_json(const FiniteDynSystem& sys) {
    json j;
    j["group"] = json::parse(group_to_json(sys.group()));
    j["points"] = sys.npoints;
    j["T"] = sys.t;
    json action = json::object();
    for (int g = 0; g < sys.group().order(); ++g) {
        std::vector<int> row(sys.npoints);
        for (int x = 0; x < sys.npoints; ++x) row[x] = sys.act(g, x);
        action[sys.group().label(g)] = row;
    }
    j["action"] = action;
    if (!sys.point_labels.empty()) j["point_labels"] = sys.point_labels;
    return j.dump(2);
}

BehaviorSpec load_spec_json(const std::string& text, std::shared_ptr<const GroupContext> ctx,
                            const std::string& base_dir, int order_guard) {
    json j = json::parse(text);
    if (j.contains("group")) {
        FiniteGroup g = group_from_ref(j.at("group"), base_dir, order_guard);
        if (ctx && g.cayley() != ctx->group.cayley())
            throw IoError("prescription group disagrees with the supplied group");
        if (!ctx) ctx = GroupContext::analyze(std::move(g));
    }
    if (!ctx) throw IoError("prescription needs a group (inline or supplied)");

    BehaviorSpec spec;
    spec.ctx = ctx;
    if (j.contains("allow_no_anchor")) spec.allow_no_anchor = j.at("allow_no_anchor");
    for (const json& e : j.at("entries")) {
        std::vector<int> elems = e.at("class");
        Subgroup h = Subgroup::from_elements(elems);
        int cls;
        try {
            cls = ctx->classes.class_of(h);
        } catch (const std::out_of_range&) {
            throw IoError("entry class is not a subgroup of the group");
        }
        int delta = e.at("delta");
        int theta = e.at("theta");
        int n = e.at("n");
        long long count = e.at("count");
        spec.entries[{cls, delta, theta, n}] += count;
    }
    spec.validate();
    return spec;
}

BehaviorSpec load_spec_file(const std::string& path, std::shared_ptr<const GroupContext> ctx,
                            int order_guard) {
    try {
        return load_spec_json(read_file(path), std::move(ctx), dir_of(path), order_guard);
    } catch (const json::exception& e) {
        throw IoError(path + ": " + e.what());
    }
}

std::string spec_to_json(const BehaviorSpec& spec) {
    json j;
    j["group"] = json::parse(group_to_json(spec.ctx->group));
    j["allow_no_anchor"] = spec.allow_no_anchor;
    json entries = json::array();
    for (const auto& [key, count] : spec.entries) {
        auto [cls, delta, theta, n] = key;
        json e;
        e["class"] = spec.ctx->classes.representative(cls).elements;
        e["delta"] = delta;
        e["theta"] = theta;
        e["n"] = n;
        e["count"] = count;
        entries.push_back(e);
    }
    j["entries"] = entries;
    return j.dump(2);
}

std::pair<std::vector<long long>, std::vector<long long>> load_pairs_csv(
    const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path);
    std::vector<long long> a, b;
    std::string line;
    int expect = 1;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#' || line.rfind("n,", 0) == 0) continue;
        std::istringstream ss(line);
        std::string cell;
        long long vals[3];
        for (int i = 0; i < 3; ++i) {
            if (!std::getline(ss, cell, ','))
                throw IoError("pair CSV row needs n,a_n,b_n: " + line);
            vals[i] = std::stoll(cell);
        }
        if (vals[0] != expect)
            throw IoError("pair CSV rows must list n = 1,2,... in order");
        ++expect;
        a.push_back(vals[1]);
        b.push_back(vals[2]);
    }
    if (a.empty()) throw IoError("pair CSV is empty");
    return {a, b};
}

void write_census_csv(std::ostream& os, const BehaviorCensus& census,
                      const PeriodCounts& up, const PeriodCounts& down) {
    os << "n,class,delta,theta,count\n";
    for (const auto& [key, count] : census.counts) {
        auto [cls, delta, theta, n] = key;
        os << n << "," << cls << "," << delta << "," << theta << "," << count << "\n";
    }
    os << "\n";
    os << "n,O_n(T),O_n(T'),F_n(T),F_n(T')\n";
    int h = std::min(up.horizon, down.horizon);
    for (int n = 1; n <= h; ++n)
        os << n << "," << up.o[n - 1] << "," << down.o[n - 1] << "," << up.f[n - 1] << ","
           << down.f[n - 1] << "\n";
}

}  // namespace orbitq::io
