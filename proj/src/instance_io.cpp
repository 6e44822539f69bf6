#include "hbm/instance_io.hpp"

#include <algorithm>
#include <numeric>

#include <json.hpp>

namespace hbm {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& where, const std::string& what) {
    throw ParseError(where + ": " + what);
}

void reject_unknown(const json& object, std::initializer_list<const char*> known,
                    const std::string& where) {
    for (auto it = object.begin(); it != object.end(); ++it) {
        if (std::find_if(known.begin(), known.end(), [&](const char* k) {
                return it.key() == k;
            }) == known.end())
            fail(where, "unknown field \"" + it.key() + "\"");
    }
}

Count require_int(const json& object, const char* field, const std::string& where) {
    if (!object.contains(field)) fail(where, std::string("missing field \"") + field + "\"");
    const json& value = object.at(field);
    if (!value.is_number_integer()) fail(where + "." + field, "expected an integer");
    return value.get<Count>();
}

}  // namespace

Instance parse_instance(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& err) {
        // Report the line of the failure, counting newlines up to the byte offset.
        std::size_t offset = std::min(err.byte, text.size());
        long line = 1 + std::count(text.begin(), text.begin() + offset, '\n');
        fail("line " + std::to_string(line), err.what());
    }
    if (!doc.is_object()) fail("document", "expected a JSON object");
    reject_unknown(doc, {"format_version", "n", "vertex_b", "edges", "sets"}, "document");

    if (require_int(doc, "format_version", "document") != kFormatVersion)
        fail("document.format_version", "unknown format version");
    Count n_count = require_int(doc, "n", "document");
    if (n_count < 1 || n_count > 1'000'000) fail("document.n", "out of range");
    int n = static_cast<int>(n_count);

    if (!doc.contains("vertex_b") || !doc.at("vertex_b").is_array())
        fail("document.vertex_b", "expected an array");
    const json& vertex_b = doc.at("vertex_b");
    if (static_cast<int>(vertex_b.size()) != n) fail("document.vertex_b", "expected n entries");
    std::vector<Count> singleton_b;
    for (const json& value : vertex_b) {
        if (!value.is_number_integer()) fail("document.vertex_b", "expected integers");
        singleton_b.push_back(value.get<Count>());
    }

    if (!doc.contains("edges") || !doc.at("edges").is_array())
        fail("document.edges", "expected an array");
    std::vector<std::pair<int, int>> edge_list;
    std::vector<std::pair<std::pair<int, int>, Count>> edge_caps;
    for (const json& record : doc.at("edges")) {
        if (!record.is_object()) fail("document.edges", "expected objects");
        reject_unknown(record, {"u", "v", "c"}, "edge record");
        int u = static_cast<int>(require_int(record, "u", "edge record"));
        int v = static_cast<int>(require_int(record, "v", "edge record"));
        Count cap = require_int(record, "c", "edge record");
        if (u > v) std::swap(u, v);
        edge_list.emplace_back(u, v);
        edge_caps.push_back({{u, v}, cap});
    }

    std::vector<std::vector<int>> sets;
    std::vector<Count> set_b;
    bool root_given = false;
    Count root_b = 0;
    if (doc.contains("sets")) {
        if (!doc.at("sets").is_array()) fail("document.sets", "expected an array");
        for (const json& record : doc.at("sets")) {
            if (!record.is_object()) fail("document.sets", "expected objects");
            reject_unknown(record, {"members", "b"}, "set record");
            if (!record.contains("members") || !record.at("members").is_array())
                fail("set record.members", "expected an array");
            std::vector<int> members;
            for (const json& value : record.at("members")) {
                if (!value.is_number_integer()) fail("set record.members", "expected integers");
                members.push_back(static_cast<int>(value.get<Count>()));
            }
            if (members.size() == 1)
                fail("set record", "singleton bounds belong in vertex_b");
            Count bound = require_int(record, "b", "set record");
            if (static_cast<int>(members.size()) == n && n > 1) {
                if (root_given) fail("set record", "duplicate root record");
                root_given = true;
                root_b = bound;
                continue;
            }
            sets.push_back(std::move(members));
            set_b.push_back(bound);
        }
    }
    if (!root_given) root_b = std::accumulate(singleton_b.begin(), singleton_b.end(), Count{0});

    Graph graph = Graph::create(n, edge_list);
    LaminarFamily family = validate_family(sets, n, /*insert_defaults=*/true);

    std::vector<Count> b(family.m + 1, 0);
    for (int v = 1; v <= n; ++v) b[v] = singleton_b[v - 1];
    for (std::size_t i = 0; i < sets.size(); ++i) b[n + 1 + static_cast<int>(i)] = set_b[i];
    if (n > 1) b[family.m] = root_b;

    // Capacities follow the lex order assigned by the graph.
    std::sort(edge_caps.begin(), edge_caps.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<Count> c;
    for (auto& [_, cap] : edge_caps) c.push_back(cap);

    return make_instance(std::move(graph), std::move(family), std::move(b), std::move(c));
}

std::string emit_instance(const Instance& inst) {
    json doc;
    doc["format_version"] = kFormatVersion;
    doc["n"] = inst.n();
    json vertex_b = json::array();
    for (int v = 1; v <= inst.n(); ++v) vertex_b.push_back(inst.b[v]);
    doc["vertex_b"] = std::move(vertex_b);
    json edges = json::array();
    for (int e = 0; e < inst.graph.edge_count(); ++e) {
        edges.push_back(json{{"u", inst.graph.edges[e].first},
                             {"v", inst.graph.edges[e].second},
                             {"c", inst.c[e]}});
    }
    doc["edges"] = std::move(edges);
    json sets = json::array();
    for (int k = inst.n() + 1; k <= inst.m(); ++k) {
        sets.push_back(json{{"members", inst.family.sets[k]}, {"b", inst.b[k]}});
    }
    doc["sets"] = std::move(sets);
    return doc.dump(2) + "\n";
}

std::string emit_solution(const SolveReport& report, const Instance& inst) {
    json doc;
    doc["format_version"] = kFormatVersion;
    doc["algorithm"] = to_string(report.algo);
    doc["instance_digest"] = report.instance_digest;
    doc["size"] = report.size;
    json edges = json::array();
    for (int e = 0; e < inst.graph.edge_count(); ++e) {
        edges.push_back(json{{"u", inst.graph.edges[e].first},
                             {"v", inst.graph.edges[e].second},
                             {"x", report.x.x[e]},
                             {"c", inst.c[e]},
                             {"slack", inst.c[e] - report.x.x[e]}});
    }
    doc["edges"] = std::move(edges);
    json sets = json::array();
    for (int k = 1; k <= inst.m(); ++k) {
        sets.push_back(json{{"index", k},
                            {"members", inst.family.sets[k]},
                            {"b", inst.b[k]},
                            {"degree", report.set_degree[k]},
                            {"slack", report.set_slack[k]}});
    }
    doc["sets"] = std::move(sets);
    json counters;
    counters["elapsed_us"] = report.elapsed_us;
    if (report.flow_value >= 0) counters["flow_value"] = report.flow_value;
    if (report.rounding_loss_halves >= 0)
        counters["rounding_loss_halves"] = report.rounding_loss_halves;
    if (report.augmentations >= 0) counters["augmentations"] = report.augmentations;
    if (report.algo == Algo::Oracle) counters["oracle_nodes"] = report.oracle_nodes;
    doc["counters"] = std::move(counters);
    return doc.dump(2) + "\n";
}

}  // namespace hbm
