#pragma once

// JSON encodings for every value the command-line front end reads or writes.
// Decoding is strict: missing or unknown keys raise ParseError, and payloads
// that parse but break an invariant raise InvalidSystem.
//
// Canonical output relies on nlohmann::json's defaults: object keys sorted,
// dump() without whitespace, doubles printed as the shortest round-trip
// decimal.

#include <initializer_list>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "dynam.hpp"
#include "grothendieck.hpp"

namespace opencospan
{

using json = nlohmann::json;

inline constexpr std::string_view model_format_version = "1";

namespace detail
{

inline void expect_keys(const json &j, std::initializer_list<std::string_view> required,
                        std::initializer_list<std::string_view> optional, std::string_view context)
{
    if (!j.is_object()) {
        throw ParseError(std::string(context) + ": expected a JSON object");
    }
    for (auto k : required) {
        if (!j.contains(std::string(k))) {
            throw ParseError(std::string(context) + ": missing key '" + std::string(k) + "'");
        }
    }
    for (const auto &[k, v] : j.items()) {
        bool known = false;
        for (auto r : required) {
            known = known || r == k;
        }
        for (auto o : optional) {
            known = known || o == k;
        }
        if (!known) {
            throw ParseError(std::string(context) + ": unknown key '" + k + "'");
        }
    }
}

inline std::size_t to_index(const json &j, std::string_view context)
{
    if (!j.is_number_integer() || j.get<long long>() < 0) {
        throw ParseError(std::string(context) + ": expected a nonnegative integer");
    }
    return j.get<std::size_t>();
}

inline double to_real(const json &j, std::string_view context)
{
    if (!j.is_number()) {
        throw ParseError(std::string(context) + ": expected a number");
    }
    return j.get<double>();
}

inline std::vector<std::size_t> to_indices(const json &j, std::string_view context)
{
    if (!j.is_array()) {
        throw ParseError(std::string(context) + ": expected an array");
    }
    std::vector<std::size_t> out;
    out.reserve(j.size());
    for (const auto &x : j) {
        out.push_back(to_index(x, context));
    }
    return out;
}

// Runs a decoder, mapping constructor invariant failures to InvalidSystem.
template <class F>
auto guarded(F &&f, std::string_view context)
{
    try {
        return f();
    } catch (const std::invalid_argument &e) {
        throw InvalidSystem(std::string(context) + ": " + e.what());
    } catch (const json::exception &e) {
        throw ParseError(std::string(context) + ": " + e.what());
    }
}

inline json multiset_to_json(const Multiset &m)
{
    json j = json::object();
    for (std::size_t p = 0; p < m.counts.size(); ++p) {
        if (m.counts[p] != 0) {
            j[std::to_string(p)] = m.counts[p];
        }
    }
    return j;
}

inline Multiset multiset_from_json(const json &j, std::size_t places, std::string_view context)
{
    if (!j.is_object()) {
        throw ParseError(std::string(context) + ": expected an object of place counts");
    }
    Multiset m(places);
    for (const auto &[k, v] : j.items()) {
        std::size_t p = 0;
        try {
            std::size_t used = 0;
            p = std::stoul(k, &used);
            if (used != k.size()) {
                throw std::invalid_argument(k);
            }
        } catch (const std::exception &) {
            throw ParseError(std::string(context) + ": place key '" + k + "' is not an index");
        }
        if (p >= places) {
            throw InvalidSystem(std::string(context) + ": place " + k + " out of range");
        }
        m.counts[p] = static_cast<std::uint32_t>(to_index(v, context));
    }
    return m;
}

} // namespace detail

inline json to_json(FinSetOb a)
{
    return json{{"size", a.size}};
}

inline json to_json(const FinFunction &f)
{
    return json{{"dom", f.dom_size()}, {"cod", f.cod_size()}, {"table", f.table()}};
}

inline FinFunction fin_function_from_json(const json &j)
{
    detail::expect_keys(j, {"dom", "cod", "table"}, {}, "function");
    auto dom = detail::to_index(j["dom"], "function.dom");
    auto cod = detail::to_index(j["cod"], "function.cod");
    auto table = detail::to_indices(j["table"], "function.table");
    if (table.size() != dom) {
        throw InvalidSystem("function: table has " + std::to_string(table.size()) + " entries but dom is "
                            + std::to_string(dom));
    }
    return detail::guarded([&] { return FinFunction(cod, std::move(table)); }, "function");
}

inline json to_json(const Graph &g)
{
    return json{{"nodes", g.nodes}, {"edges", g.edge_count()}, {"src", g.src.table()}, {"tgt", g.tgt.table()}};
}

inline json to_json(const LabeledGraph &g)
{
    auto j = to_json(g.graph);
    j["labels"] = g.labels;
    return j;
}

inline json to_json(const PetriNet &p)
{
    json ts = json::array();
    for (std::size_t k = 0; k < p.edge_count(); ++k) {
        ts.push_back(json{{"src", detail::multiset_to_json(p.src[k])}, {"tgt", detail::multiset_to_json(p.tgt[k])}});
    }
    return json{{"places", p.places}, {"transitions", std::move(ts)}};
}

inline json to_json(const PetriNetWithRates &p)
{
    auto j = to_json(p.net);
    for (std::size_t k = 0; k < p.edge_count(); ++k) {
        j["transitions"][k]["rate"] = p.rates[k];
    }
    return j;
}

template <System S>
S system_from_json(const json &j);

template <>
inline Graph system_from_json<Graph>(const json &j)
{
    detail::expect_keys(j, {"nodes", "edges", "src", "tgt"}, {}, "graph");
    auto n = detail::to_index(j["nodes"], "graph.nodes");
    auto m = detail::to_index(j["edges"], "graph.edges");
    auto s = detail::to_indices(j["src"], "graph.src");
    auto t = detail::to_indices(j["tgt"], "graph.tgt");
    if (s.size() != m || t.size() != m) {
        throw InvalidSystem("graph: src/tgt must have one entry per edge");
    }
    return detail::guarded([&] { return Graph(n, std::move(s), std::move(t)); }, "graph");
}

template <>
inline LabeledGraph system_from_json<LabeledGraph>(const json &j)
{
    detail::expect_keys(j, {"nodes", "edges", "src", "tgt", "labels"}, {}, "labelled graph");
    json bare = j;
    bare.erase("labels");
    auto g = system_from_json<Graph>(bare);
    if (!j["labels"].is_array()) {
        throw ParseError("labelled graph: labels must be an array");
    }
    std::vector<std::string> labels;
    for (const auto &l : j["labels"]) {
        if (!l.is_string()) {
            throw ParseError("labelled graph: labels must be strings");
        }
        labels.push_back(l.get<std::string>());
    }
    return LabeledGraph(std::move(g), std::move(labels));
}

namespace detail
{

inline PetriNet petri_from_json(const json &j, bool rated, std::vector<double> *rates)
{
    detail::expect_keys(j, {"places", "transitions"}, {}, "petri net");
    auto n = detail::to_index(j["places"], "petri net.places");
    if (!j["transitions"].is_array()) {
        throw ParseError("petri net: transitions must be an array");
    }
    std::vector<Multiset> s, t;
    for (const auto &tr : j["transitions"]) {
        if (rated) {
            detail::expect_keys(tr, {"src", "tgt", "rate"}, {}, "transition");
            rates->push_back(detail::to_real(tr["rate"], "transition.rate"));
        } else {
            detail::expect_keys(tr, {"src", "tgt"}, {}, "transition");
        }
        s.push_back(multiset_from_json(tr["src"], n, "transition.src"));
        t.push_back(multiset_from_json(tr["tgt"], n, "transition.tgt"));
    }
    return PetriNet(n, std::move(s), std::move(t));
}

} // namespace detail

template <>
inline PetriNet system_from_json<PetriNet>(const json &j)
{
    return detail::petri_from_json(j, false, nullptr);
}

template <>
inline PetriNetWithRates system_from_json<PetriNetWithRates>(const json &j)
{
    std::vector<double> rates;
    auto net = detail::petri_from_json(j, true, &rates);
    return PetriNetWithRates(std::move(net), std::move(rates));
}

inline json to_json(const Polynomial &p)
{
    json terms = json::array();
    for (const auto &t : p.terms()) {
        terms.push_back(json{{"coefficient", t.coefficient}, {"exponents", t.exponents}});
    }
    return terms;
}

inline json to_json(const PolyVectorField &v)
{
    json comps = json::array();
    for (const auto &p : v.components()) {
        comps.push_back(to_json(p));
    }
    return json{{"places", v.size()}, {"components", std::move(comps)}};
}

inline PolyVectorField field_from_json(const json &j)
{
    detail::expect_keys(j, {"places", "components"}, {}, "vector field");
    auto n = detail::to_index(j["places"], "vector field.places");
    if (!j["components"].is_array() || j["components"].size() != n) {
        throw InvalidSystem("vector field: expected one component per place");
    }
    std::vector<Polynomial> comps;
    for (const auto &c : j["components"]) {
        if (!c.is_array()) {
            throw ParseError("vector field: component must be an array of terms");
        }
        std::vector<Term> terms;
        for (const auto &t : c) {
            detail::expect_keys(t, {"coefficient", "exponents"}, {}, "term");
            std::vector<std::uint32_t> e;
            for (auto x : detail::to_indices(t["exponents"], "term.exponents")) {
                e.push_back(static_cast<std::uint32_t>(x));
            }
            terms.push_back({detail::to_real(t["coefficient"], "term.coefficient"), std::move(e)});
        }
        comps.push_back(detail::guarded([&] { return Polynomial(n, std::move(terms)); }, "vector field"));
    }
    return detail::guarded([&] { return PolyVectorField(n, std::move(comps)); }, "vector field");
}

inline json decoration_to_json(const PolyVectorField &v)
{
    return to_json(v);
}

template <System S>
json decoration_to_json(const S &s)
{
    return to_json(s);
}

template <DecorationTheory T>
json to_json(const DecoratedCospan<T> &c)
{
    json j{{"footLeft", c.foot_left().size},
           {"footRight", c.foot_right().size},
           {"legLeft", c.left_leg.table()},
           {"legRight", c.right_leg.table()},
           {"representation", "decorated"}};
    if constexpr (std::is_same_v<T, DynamicalDecoration>) {
        j["field"] = to_json(c.decoration);
    } else {
        j["system"] = to_json(c.decoration);
    }
    return j;
}

namespace detail
{

inline std::pair<FinFunction, FinFunction> cospan_legs_from_json(const json &j, std::size_t apex)
{
    auto fl = to_index(j["footLeft"], "cospan.footLeft");
    auto fr = to_index(j["footRight"], "cospan.footRight");
    auto l = to_indices(j["legLeft"], "cospan.legLeft");
    auto r = to_indices(j["legRight"], "cospan.legRight");
    if (l.size() != fl || r.size() != fr) {
        throw InvalidSystem("cospan: legs must have one entry per foot element");
    }
    return std::pair{guarded([&] { return FinFunction(apex, std::move(l)); }, "cospan.legLeft"),
                     guarded([&] { return FinFunction(apex, std::move(r)); }, "cospan.legRight")};
}

} // namespace detail

template <System S>
DecoratedCospan<SystemDecoration<S>> decorated_from_json(const json &j)
{
    detail::expect_keys(j, {"footLeft", "footRight", "legLeft", "legRight", "system", "representation"}, {},
                        "cospan");
    if (j["representation"] != "decorated") {
        throw ParseError("cospan: expected representation 'decorated'");
    }
    auto sys = system_from_json<S>(j["system"]);
    auto [l, r] = detail::cospan_legs_from_json(j, sys.vertex_count());
    return DecoratedCospan<SystemDecoration<S>>(std::move(l), std::move(r), std::move(sys));
}

inline OpenDynam open_dynam_from_json(const json &j)
{
    detail::expect_keys(j, {"footLeft", "footRight", "legLeft", "legRight", "field", "representation"}, {},
                        "open dynamical system");
    if (j["representation"] != "decorated") {
        throw ParseError("open dynamical system: expected representation 'decorated'");
    }
    auto field = field_from_json(j["field"]);
    auto [l, r] = detail::cospan_legs_from_json(j, field.size());
    return OpenDynam(std::move(l), std::move(r), std::move(field));
}

// Structured cospans use the same layout. A foot given as a number is the
// discrete system on that many vertices; a foot given as a system object
// needs its leg as {"vertices": [...], "edges": [...]}.
template <System S>
json to_json(const StructuredCospan<S> &c)
{
    json j{{"system", to_json(c.apex)}, {"representation", "structured"}};
    auto put = [&](const S &foot, const SystemMorphism &leg, const char *foot_key, const char *leg_key) {
        if (is_discrete(foot)) {
            j[foot_key] = foot.vertex_count();
            j[leg_key] = leg.vertex_map.table();
        } else {
            j[foot_key] = to_json(foot);
            j[leg_key] = json{{"vertices", leg.vertex_map.table()}, {"edges", leg.edge_map.table()}};
        }
    };
    put(c.left_foot, c.left_leg, "footLeft", "legLeft");
    put(c.right_foot, c.right_leg, "footRight", "legRight");
    return j;
}

template <System S>
StructuredCospan<S> structured_from_json(const json &j)
{
    detail::expect_keys(j, {"footLeft", "footRight", "legLeft", "legRight", "system", "representation"}, {},
                        "cospan");
    if (j["representation"] != "structured") {
        throw ParseError("cospan: expected representation 'structured'");
    }
    auto apex = system_from_json<S>(j["system"]);
    auto get = [&](const char *foot_key, const char *leg_key) {
        const auto &fj = j[foot_key];
        const auto &lj = j[leg_key];
        S foot = fj.is_object() ? system_from_json<S>(fj) : S::discrete(detail::to_index(fj, foot_key));
        std::vector<std::size_t> v, e;
        if (lj.is_object()) {
            detail::expect_keys(lj, {"vertices", "edges"}, {}, leg_key);
            v = detail::to_indices(lj["vertices"], leg_key);
            e = detail::to_indices(lj["edges"], leg_key);
        } else {
            v = detail::to_indices(lj, leg_key);
        }
        if (v.size() != foot.vertex_count() || e.size() != foot.edge_count()) {
            throw InvalidSystem(std::string("cospan: ") + leg_key + " does not match its foot");
        }
        auto leg = detail::guarded(
            [&] {
                return SystemMorphism{FinFunction(apex.vertex_count(), std::move(v)),
                                      FinFunction(apex.edge_count(), std::move(e))};
            },
            leg_key);
        return std::pair{std::move(foot), std::move(leg)};
    };
    auto [lf, ll] = get("footLeft", "legLeft");
    auto [rf, rl] = get("footRight", "legRight");
    return StructuredCospan<S>(std::move(lf), std::move(apex), std::move(rf), std::move(ll), std::move(rl));
}

// Optional presentation names for apex elements and feet.
struct Names {
    std::vector<std::string> apex;
    std::vector<std::string> foot_left;
    std::vector<std::string> foot_right;

    bool empty() const
    {
        return apex.empty() && foot_left.empty() && foot_right.empty();
    }
    friend bool operator==(const Names &, const Names &) = default;
};

inline json to_json(const Names &n)
{
    json j = json::object();
    if (!n.apex.empty()) {
        j["apex"] = n.apex;
    }
    if (!n.foot_left.empty()) {
        j["footLeft"] = n.foot_left;
    }
    if (!n.foot_right.empty()) {
        j["footRight"] = n.foot_right;
    }
    return j;
}

inline Names names_from_json(const json &j)
{
    detail::expect_keys(j, {}, {"apex", "footLeft", "footRight"}, "names");
    auto strings = [&](const char *k) {
        std::vector<std::string> out;
        if (j.contains(k)) {
            if (!j[k].is_array()) {
                throw ParseError(std::string("names.") + k + " must be an array");
            }
            for (const auto &s : j[k]) {
                if (!s.is_string()) {
                    throw ParseError(std::string("names.") + k + " must contain strings");
                }
                out.push_back(s.get<std::string>());
            }
        }
        return out;
    };
    return {strings("apex"), strings("footLeft"), strings("footRight")};
}

// The envelope every model file uses:
//   {"version": "1", "kind": <graph|lgraph|petri|petri_rates|dynam>,
//    "payload": <cospan or bare system>, "names": {...}?}
// A payload with a "representation" key is a cospan; otherwise it is a system.
struct ModelFile {
    std::string version{model_format_version};
    std::string kind;
    json payload;
    Names names;

    bool is_cospan() const
    {
        return payload.is_object() && payload.contains("representation");
    }
    std::string representation() const
    {
        return is_cospan() ? payload["representation"].get<std::string>() : std::string("system");
    }
};

inline json to_json(const ModelFile &m)
{
    json j{{"version", m.version}, {"kind", m.kind}, {"payload", m.payload}};
    if (!m.names.empty()) {
        j["names"] = to_json(m.names);
    }
    return j;
}

inline ModelFile model_from_json(const json &j)
{
    detail::expect_keys(j, {"version", "kind", "payload"}, {"names"}, "model file");
    if (!j["version"].is_string() || j["version"].get<std::string>() != model_format_version) {
        throw ParseError("model file: unsupported version (expected \"" + std::string(model_format_version) + "\")");
    }
    if (!j["kind"].is_string()) {
        throw ParseError("model file: kind must be a string");
    }
    ModelFile m;
    m.kind = j["kind"].get<std::string>();
    if (m.kind != "dynam") {
        parse_kind(m.kind);
    }
    m.payload = j["payload"];
    if (j.contains("names")) {
        m.names = names_from_json(j["names"]);
    }
    if (m.is_cospan()) {
        const auto &r = m.payload["representation"];
        if (!r.is_string() || (r != "structured" && r != "decorated")) {
            throw ParseError("model file: representation must be 'structured' or 'decorated'");
        }
        if (m.kind == "dynam" && r != "decorated") {
            throw ParseError("model file: open dynamical systems only have a decorated representation");
        }
    }
    return m;
}

inline std::string canonical_dump(const json &j)
{
    return j.dump();
}

} // namespace opencospan
