#pragma once

// The concrete system categories that open systems are built from: graphs,
// edge-labelled graphs, Petri nets and Petri nets with rates. Each type
// exposes the same small surface (vertex/edge counts, discrete objects and
// an "edge signature" describing an edge's boundary after relabelling the
// vertices) and everything else in this header is written once on top of it.

#include <algorithm>
#include <cmath>
#include <concepts>
#include <optional>
#include <string>
#include <string_view>
#include <tuple>
#include <utility>
#include <vector>

#include "finset.hpp"
#include "multiset.hpp"

namespace opencospan
{

enum class SystemKind { graph, lgraph, petri, petri_rates };

constexpr std::string_view kind_name(SystemKind k)
{
    switch (k) {
        case SystemKind::graph:
            return "graph";
        case SystemKind::lgraph:
            return "lgraph";
        case SystemKind::petri:
            return "petri";
        case SystemKind::petri_rates:
            return "petri_rates";
    }
    return "?";
}

inline SystemKind parse_kind(std::string_view s)
{
    for (auto k : {SystemKind::graph, SystemKind::lgraph, SystemKind::petri, SystemKind::petri_rates}) {
        if (kind_name(k) == s) {
            return k;
        }
    }
    throw KindError("unknown system kind '" + std::string(s) + "'");
}

struct Graph {
    static constexpr SystemKind kind = SystemKind::graph;
    static constexpr std::string_view edge_noun = "edge";
    using Signature = std::pair<std::size_t, std::size_t>;

    std::size_t nodes = 0;
    FinFunction src;
    FinFunction tgt;

    Graph() = default;
    Graph(std::size_t n, FinFunction s, FinFunction t) : nodes(n), src(std::move(s)), tgt(std::move(t))
    {
        if (src.dom_size() != tgt.dom_size() || src.cod_size() != nodes || tgt.cod_size() != nodes) {
            throw InvalidSystem("graph: source/target maps must both go from the edges to the " + std::to_string(nodes)
                                + " nodes");
        }
    }
    Graph(std::size_t n, std::vector<std::size_t> s, std::vector<std::size_t> t)
        : Graph(n, FinFunction(n, std::move(s)), FinFunction(n, std::move(t)))
    {
    }

    static Graph discrete(std::size_t n)
    {
        return Graph(n, FinFunction::initial(n), FinFunction::initial(n));
    }

    std::size_t vertex_count() const
    {
        return nodes;
    }
    std::size_t edge_count() const
    {
        return src.dom_size();
    }
    Signature signature(std::size_t e, const FinFunction &vmap) const
    {
        return {vmap(src(e)), vmap(tgt(e))};
    }
    Signature signature(std::size_t e) const
    {
        return {src(e), tgt(e)};
    }
    static Graph from_signatures(std::size_t n, const std::vector<Signature> &sigs)
    {
        std::vector<std::size_t> s, t;
        for (auto [a, b] : sigs) {
            s.push_back(a);
            t.push_back(b);
        }
        return Graph(n, std::move(s), std::move(t));
    }

    friend bool operator==(const Graph &, const Graph &) = default;
};

// Labels are opaque strings compared exactly; circuits store decimal strings.
struct LabeledGraph {
    static constexpr SystemKind kind = SystemKind::lgraph;
    static constexpr std::string_view edge_noun = "edge";
    using Signature = std::tuple<std::size_t, std::size_t, std::string>;

    Graph graph;
    std::vector<std::string> labels;

    LabeledGraph() = default;
    LabeledGraph(Graph g, std::vector<std::string> l) : graph(std::move(g)), labels(std::move(l))
    {
        if (labels.size() != graph.edge_count()) {
            throw InvalidSystem("labelled graph: " + std::to_string(labels.size()) + " labels for "
                                + std::to_string(graph.edge_count()) + " edges");
        }
    }

    static LabeledGraph discrete(std::size_t n)
    {
        return LabeledGraph(Graph::discrete(n), {});
    }

    std::size_t vertex_count() const
    {
        return graph.nodes;
    }
    std::size_t edge_count() const
    {
        return graph.edge_count();
    }
    Signature signature(std::size_t e, const FinFunction &vmap) const
    {
        auto [s, t] = graph.signature(e, vmap);
        return {s, t, labels[e]};
    }
    Signature signature(std::size_t e) const
    {
        return {graph.src(e), graph.tgt(e), labels[e]};
    }
    static LabeledGraph from_signatures(std::size_t n, const std::vector<Signature> &sigs)
    {
        std::vector<std::size_t> s, t;
        std::vector<std::string> l;
        for (const auto &[a, b, lab] : sigs) {
            s.push_back(a);
            t.push_back(b);
            l.push_back(lab);
        }
        return LabeledGraph(Graph(n, std::move(s), std::move(t)), std::move(l));
    }

    friend bool operator==(const LabeledGraph &, const LabeledGraph &) = default;
};

struct PetriNet {
    static constexpr SystemKind kind = SystemKind::petri;
    static constexpr std::string_view edge_noun = "transition";
    using Signature = std::pair<Multiset, Multiset>;

    std::size_t places = 0;
    std::vector<Multiset> src;
    std::vector<Multiset> tgt;

    PetriNet() = default;
    PetriNet(std::size_t p, std::vector<Multiset> s, std::vector<Multiset> t)
        : places(p), src(std::move(s)), tgt(std::move(t))
    {
        if (src.size() != tgt.size()) {
            throw InvalidSystem("petri net: " + std::to_string(src.size()) + " sources but "
                                + std::to_string(tgt.size()) + " targets");
        }
        for (std::size_t k = 0; k < src.size(); ++k) {
            if (src[k].counts.size() != places || tgt[k].counts.size() != places) {
                throw InvalidSystem("petri net: transition " + std::to_string(k) + " is not over the "
                                    + std::to_string(places) + " places");
            }
        }
    }

    static PetriNet discrete(std::size_t n)
    {
        return PetriNet(n, {}, {});
    }

    std::size_t vertex_count() const
    {
        return places;
    }
    std::size_t edge_count() const
    {
        return src.size();
    }
    Signature signature(std::size_t e, const FinFunction &vmap) const
    {
        return {src[e].push_forward(vmap), tgt[e].push_forward(vmap)};
    }
    Signature signature(std::size_t e) const
    {
        return {src[e], tgt[e]};
    }
    static PetriNet from_signatures(std::size_t n, const std::vector<Signature> &sigs)
    {
        std::vector<Multiset> s, t;
        for (const auto &[a, b] : sigs) {
            s.push_back(a);
            t.push_back(b);
        }
        return PetriNet(n, std::move(s), std::move(t));
    }

    friend bool operator==(const PetriNet &, const PetriNet &) = default;
};

struct PetriNetWithRates {
    static constexpr SystemKind kind = SystemKind::petri_rates;
    static constexpr std::string_view edge_noun = "transition";
    using Signature = PetriNet::Signature;

    PetriNet net;
    std::vector<double> rates;

    PetriNetWithRates() = default;
    PetriNetWithRates(PetriNet n, std::vector<double> r) : net(std::move(n)), rates(std::move(r))
    {
        if (rates.size() != net.edge_count()) {
            throw InvalidSystem("rated petri net: " + std::to_string(rates.size()) + " rates for "
                                + std::to_string(net.edge_count()) + " transitions");
        }
        for (std::size_t k = 0; k < rates.size(); ++k) {
            if (!(rates[k] >= 0.0) || !std::isfinite(rates[k])) {
                throw InvalidSystem("rated petri net: rate of transition " + std::to_string(k)
                                    + " must be a finite nonnegative number");
            }
        }
    }

    static PetriNetWithRates discrete(std::size_t n)
    {
        return PetriNetWithRates(PetriNet::discrete(n), {});
    }

    std::size_t vertex_count() const
    {
        return net.places;
    }
    std::size_t edge_count() const
    {
        return net.edge_count();
    }
    Signature signature(std::size_t e, const FinFunction &vmap) const
    {
        return net.signature(e, vmap);
    }
    Signature signature(std::size_t e) const
    {
        return net.signature(e);
    }

    friend bool operator==(const PetriNetWithRates &, const PetriNetWithRates &) = default;
};

template <class S>
concept System = requires(const S &x, std::size_t n, const FinFunction &f) {
    { S::kind } -> std::convertible_to<SystemKind>;
    { S::discrete(n) } -> std::same_as<S>;
    { x.vertex_count() } -> std::same_as<std::size_t>;
    { x.edge_count() } -> std::same_as<std::size_t>;
    { x.signature(n, f) } -> std::same_as<typename S::Signature>;
    { x.signature(n) } -> std::same_as<typename S::Signature>;
    { x == x } -> std::convertible_to<bool>;
};

template <class S>
inline constexpr bool has_rates = std::is_same_v<S, PetriNetWithRates>;

// Relative tolerance used whenever two rate constants are compared.
inline bool rates_match(double a, double b)
{
    return std::abs(a - b) <= 1e-9 * std::max({1.0, std::abs(a), std::abs(b)});
}

// A pair of maps: vertices (nodes or places) and edges (or transitions).
struct SystemMorphism {
    FinFunction vertex_map;
    FinFunction edge_map;

    static SystemMorphism identity(std::size_t vertices, std::size_t edges)
    {
        return {FinFunction::identity(vertices), FinFunction::identity(edges)};
    }
    template <System S>
    static SystemMorphism identity(const S &x)
    {
        return identity(x.vertex_count(), x.edge_count());
    }

    friend bool operator==(const SystemMorphism &, const SystemMorphism &) = default;
};

inline SystemMorphism compose(const SystemMorphism &g, const SystemMorphism &f)
{
    return {compose(g.vertex_map, f.vertex_map), compose(g.edge_map, f.edge_map)};
}

inline SystemMorphism sum(const SystemMorphism &f, const SystemMorphism &g)
{
    return {sum(f.vertex_map, g.vertex_map), sum(f.edge_map, g.edge_map)};
}

template <System S>
S discrete(std::size_t n)
{
    return S::discrete(n);
}

template <System S>
bool is_discrete(const S &x)
{
    return x.edge_count() == 0;
}

// The underlying interface set U(x).
template <System S>
FinSetOb interface_of(const S &x)
{
    return {x.vertex_count()};
}

// Image of x along a vertex map and a surjective edge map. Edges identified by
// the edge map must have identical boundaries after relabelling; identified
// rated transitions have their rates summed.
template <System S>
S push_forward(const S &x, const FinFunction &vmap, const FinFunction &emap)
{
    if (vmap.dom_size() != x.vertex_count() || emap.dom_size() != x.edge_count()) {
        throw MorphismShapeError("push_forward: maps do not start at the system's vertices and "
                                 + std::string(S::edge_noun) + "s");
    }
    std::vector<std::optional<typename S::Signature>> sigs(emap.cod_size());
    std::vector<double> rates(emap.cod_size(), 0.0);
    for (std::size_t e = 0; e < x.edge_count(); ++e) {
        auto s = x.signature(e, vmap);
        auto &slot = sigs[emap(e)];
        if (slot && *slot != s) {
            throw InvalidSystem("push_forward: " + std::string(S::edge_noun) + "s merged into "
                                + std::to_string(emap(e)) + " have different boundaries");
        }
        slot = std::move(s);
        if constexpr (has_rates<S>) {
            rates[emap(e)] += x.rates[e];
        }
    }
    std::vector<typename S::Signature> out;
    out.reserve(sigs.size());
    for (std::size_t k = 0; k < sigs.size(); ++k) {
        if (!sigs[k]) {
            throw InvalidSystem("push_forward: " + std::string(S::edge_noun) + " " + std::to_string(k)
                                + " has no preimage");
        }
        out.push_back(std::move(*sigs[k]));
    }
    if constexpr (has_rates<S>) {
        return PetriNetWithRates(PetriNet::from_signatures(vmap.cod_size(), out), std::move(rates));
    } else {
        return S::from_signatures(vmap.cod_size(), out);
    }
}

// Relabel vertices along f, keeping every edge.
template <System S>
S relabel(const S &x, const FinFunction &f)
{
    return push_forward(x, f, FinFunction::identity(x.edge_count()));
}

template <System S>
struct SystemCoproduct {
    S object;
    SystemMorphism left;
    SystemMorphism right;
};

template <System S>
SystemCoproduct<S> system_coproduct(const S &x, const S &y)
{
    auto v = coproduct(interface_of(x), interface_of(y));
    auto e = coproduct(FinSetOb{x.edge_count()}, FinSetOb{y.edge_count()});
    std::vector<typename S::Signature> sigs;
    sigs.reserve(e.object.size);
    for (std::size_t k = 0; k < x.edge_count(); ++k) {
        sigs.push_back(x.signature(k, v.left));
    }
    for (std::size_t k = 0; k < y.edge_count(); ++k) {
        sigs.push_back(y.signature(k, v.right));
    }
    S obj = [&] {
        if constexpr (has_rates<S>) {
            auto r = x.rates;
            r.insert(r.end(), y.rates.begin(), y.rates.end());
            return PetriNetWithRates(PetriNet::from_signatures(v.object.size, sigs), std::move(r));
        } else {
            return S::from_signatures(v.object.size, sigs);
        }
    }();
    return {std::move(obj), {v.left, e.left}, {v.right, e.right}};
}

inline void require_shape(const SystemMorphism &m, std::size_t v_dom, std::size_t e_dom, std::size_t v_cod,
                          std::size_t e_cod)
{
    if (m.vertex_map.dom_size() != v_dom || m.vertex_map.cod_size() != v_cod || m.edge_map.dom_size() != e_dom
        || m.edge_map.cod_size() != e_cod) {
        throw MorphismShapeError("morphism maps " + std::to_string(m.vertex_map.dom_size()) + "->"
                                 + std::to_string(m.vertex_map.cod_size()) + " vertices and "
                                 + std::to_string(m.edge_map.dom_size()) + "->"
                                 + std::to_string(m.edge_map.cod_size()) + " edges, expected "
                                 + std::to_string(v_dom) + "->" + std::to_string(v_cod) + " and "
                                 + std::to_string(e_dom) + "->" + std::to_string(e_cod));
    }
}

// Every failed commuting square, with coordinates. Empty means valid.
template <System S>
std::vector<std::string> validate_morphism(const SystemMorphism &m, const S &x, const S &y)
{
    require_shape(m, x.vertex_count(), x.edge_count(), y.vertex_count(), y.edge_count());
    std::vector<std::string> out;
    for (std::size_t e = 0; e < x.edge_count(); ++e) {
        if (x.signature(e, m.vertex_map) != y.signature(m.edge_map(e))) {
            out.push_back(std::string(S::edge_noun) + " " + std::to_string(e) + " -> " + std::to_string(m.edge_map(e))
                          + ": boundary or label does not commute with the vertex map");
        }
    }
    if constexpr (has_rates<S>) {
        std::vector<double> fibre(y.edge_count(), 0.0);
        for (std::size_t e = 0; e < x.edge_count(); ++e) {
            fibre[m.edge_map(e)] += x.rates[e];
        }
        for (std::size_t k = 0; k < y.edge_count(); ++k) {
            if (!rates_match(fibre[k], y.rates[k])) {
                out.push_back("rate sum mismatch at τ' = " + std::to_string(k) + ": target rate "
                              + std::to_string(y.rates[k]) + ", sum over fibre " + std::to_string(fibre[k]));
            }
        }
    }
    return out;
}

template <System S>
bool is_valid_morphism(const SystemMorphism &m, const S &x, const S &y)
{
    return validate_morphism(m, x, y).empty();
}

template <System S>
struct SystemPushout {
    S object;
    SystemMorphism left;
    SystemMorphism right;
    FinFunction vertex_quotient; // V_B + V_C -> V_P
    FinFunction edge_quotient;   // E_B + E_C -> E_P
};

// Pushout of b <-f- domain -g-> c, computed separately on vertices and edges.
// Rated nets may only be glued along discrete domains; their injections are
// then morphisms of the underlying nets, since each transition keeps its rate
// and the other summand's transitions have empty fibres.
template <System S>
SystemPushout<S> system_pushout(const S &domain, const S &b, const S &c, const SystemMorphism &f,
                                const SystemMorphism &g)
{
    if constexpr (has_rates<S>) {
        if (!is_discrete(domain)) {
            throw UnsupportedGluing("rated petri nets can only be glued along a set of places, not along "
                                    + std::to_string(domain.edge_count()) + " transitions");
        }
    }
    // A discrete domain has no transitions, so for rated nets the legs can
    // only be morphisms of the underlying nets.
    for (const auto *leg : {&f, &g}) {
        const S &cod = leg == &f ? b : c;
        std::vector<std::string> v;
        if constexpr (has_rates<S>) {
            v = validate_morphism(*leg, domain.net, cod.net);
        } else {
            v = validate_morphism(*leg, domain, cod);
        }
        if (!v.empty()) {
            throw SpanError("pushout: span leg is not a morphism (" + v.front() + ")");
        }
    }
    auto vpo = pushout(f.vertex_map, g.vertex_map);
    auto epo = pushout(f.edge_map, g.edge_map);
    auto co = system_coproduct(b, c);
    S obj = push_forward(co.object, vpo.quotient, epo.quotient);
    return {std::move(obj), {vpo.left, epo.left}, {vpo.right, epo.right}, vpo.quotient, epo.quotient};
}

// For each vertex v, the sorted signatures of all edges seen through the map
// sending v to 1 and every other vertex to 0. Isomorphisms preserve it, so it
// prunes vertex bijections early.
template <System S>
std::vector<std::vector<typename S::Signature>> vertex_profiles(const S &x)
{
    std::vector<std::vector<typename S::Signature>> out(x.vertex_count());
    for (std::size_t v = 0; v < x.vertex_count(); ++v) {
        std::vector<std::size_t> chi(x.vertex_count(), 0);
        chi[v] = 1;
        FinFunction indicator(2, std::move(chi));
        for (std::size_t e = 0; e < x.edge_count(); ++e) {
            out[v].push_back(x.signature(e, indicator));
        }
        std::sort(out[v].begin(), out[v].end());
    }
    return out;
}

// Search for a system isomorphism x -> y honouring the given pins. Vertex
// bijections are enumerated lexicographically; for each one an edge bijection
// matching signatures (and rates) is searched.
template <System S>
std::optional<SystemMorphism> find_system_iso(const S &x, const S &y,
                                              std::span<const std::pair<std::size_t, std::size_t>> vertex_pins,
                                              std::span<const std::pair<std::size_t, std::size_t>> edge_pins,
                                              SearchBudget &budget)
{
    if (x.vertex_count() != y.vertex_count() || x.edge_count() != y.edge_count()) {
        return std::nullopt;
    }
    std::optional<FinFunction> edges;
    const auto px = vertex_profiles(x);
    const auto py = vertex_profiles(y);
    auto vertex_ok = [&](std::span<const std::size_t> partial) {
        if (!partial.empty() && px[partial.size() - 1] != py[partial.back()]) {
            return false;
        }
        if (partial.size() < x.vertex_count()) {
            return true;
        }
        FinFunction vmap(y.vertex_count(), {partial.begin(), partial.end()});
        auto edge_ok = [&](std::span<const std::size_t> ep) {
            if (ep.empty()) {
                return true;
            }
            auto e = ep.size() - 1;
            if (x.signature(e, vmap) != y.signature(ep[e])) {
                return false;
            }
            if constexpr (has_rates<S>) {
                return rates_match(x.rates[e], y.rates[ep[e]]);
            }
            return true;
        };
        edges = find_iso({x.edge_count()}, {y.edge_count()}, edge_pins, edge_ok, budget);
        return edges.has_value();
    };
    auto v = find_iso(interface_of(x), interface_of(y), vertex_pins, vertex_ok, budget);
    if (!v) {
        return std::nullopt;
    }
    return SystemMorphism{*v, *edges};
}

template <System S>
std::optional<SystemMorphism> find_system_iso(const S &x, const S &y, SearchBudget &budget)
{
    return find_system_iso(x, y, {}, {}, budget);
}

} // namespace opencospan
