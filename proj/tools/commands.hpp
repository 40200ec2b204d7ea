#pragma once

// Subcommand implementations for the opencospan tool. Each command returns
// its exit code: 0 success, 2 domain or validation error, 3 I/O or parse
// error.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <type_traits>
#include <vector>

#include <opencospan/json_io.hpp>
#include <opencospan/opencospan.hpp>

namespace opencospan::cli
{

enum ExitCode : int { ok = 0, domain_failure = 2, io_failure = 3 };

class IoError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

inline std::uint64_t iso_budget_from_env()
{
    if (const char *s = std::getenv("OPENCOSPAN_ISO_BUDGET")) {
        try {
            std::size_t used = 0;
            auto v = std::stoull(s, &used);
            if (used == std::string(s).size()) {
                return v;
            }
        } catch (const std::exception &) {
        }
        throw ParseError(std::string("OPENCOSPAN_ISO_BUDGET is not a nonnegative integer: '") + s + "'");
    }
    return SearchBudget::default_nodes;
}

inline json read_json_file(const std::string &path)
{
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open '" + path + "'");
    }
    try {
        return json::parse(in);
    } catch (const json::parse_error &e) {
        throw ParseError(path + ": " + e.what());
    }
}

inline void write_text(const std::string &path, const std::string &text, std::ostream &stdout_stream)
{
    if (path.empty() || path == "-") {
        stdout_stream << text;
        return;
    }
    std::ofstream out(path);
    if (!out) {
        throw IoError("cannot write '" + path + "'");
    }
    out << text;
    if (!out) {
        throw IoError("failed writing '" + path + "'");
    }
}

inline ModelFile load_model(const std::string &path)
{
    auto j = read_json_file(path);
    try {
        return model_from_json(j);
    } catch (const ParseError &e) {
        throw ParseError(path + ": " + e.what());
    }
}

template <class F>
decltype(auto) with_system_type(std::string_view kind, F &&f)
{
    switch (parse_kind(kind)) {
        case SystemKind::graph:
            return f(std::type_identity<Graph>{});
        case SystemKind::lgraph:
            return f(std::type_identity<LabeledGraph>{});
        case SystemKind::petri:
            return f(std::type_identity<PetriNet>{});
        case SystemKind::petri_rates:
            return f(std::type_identity<PetriNetWithRates>{});
    }
    throw KindError("unknown kind");
}

// A cospan of one system type as read from a model file, kept in the
// representation it was stored in.
template <System S>
struct LoadedCospan {
    std::optional<DecoratedCospan<SystemDecoration<S>>> decorated;
    std::optional<StructuredCospan<S>> structured;

    static LoadedCospan from_model(const ModelFile &m)
    {
        if (!m.is_cospan()) {
            throw KindError("expected an open system (cospan), got a bare system");
        }
        LoadedCospan c;
        if (m.representation() == "decorated") {
            c.decorated = decorated_from_json<S>(m.payload);
        } else {
            c.structured = structured_from_json<S>(m.payload);
        }
        return c;
    }
    DecoratedCospan<SystemDecoration<S>> as_decorated() const
    {
        return decorated ? *decorated : to_decorated(*structured);
    }
    json to_payload() const
    {
        return decorated ? to_json(*decorated) : to_json(*structured);
    }
};

inline void check_names(const ModelFile &m, std::size_t apex, std::size_t left, std::size_t right)
{
    const auto &n = m.names;
    auto bad = [](const std::vector<std::string> &v, std::size_t size) { return !v.empty() && v.size() != size; };
    if (bad(n.apex, apex) || bad(n.foot_left, left) || bad(n.foot_right, right)) {
        throw InvalidSystem("names do not match the sizes of the apex and feet");
    }
}

// Validates a model's payload against its kind. Throws on failure.
inline void validate_model(const ModelFile &m)
{
    if (m.kind == "dynam") {
        if (m.is_cospan()) {
            auto d = open_dynam_from_json(m.payload);
            check_names(m, d.apex().size, d.foot_left().size, d.foot_right().size);
        } else {
            field_from_json(m.payload);
        }
        return;
    }
    with_system_type(m.kind, [&]<class S>(std::type_identity<S>) {
        if (!m.is_cospan()) {
            auto s = system_from_json<S>(m.payload);
            check_names(m, s.vertex_count(), 0, 0);
            return;
        }
        auto c = LoadedCospan<S>::from_model(m);
        if (c.decorated) {
            check_names(m, c.decorated->apex().size, c.decorated->foot_left().size, c.decorated->foot_right().size);
        } else {
            check_names(m, c.structured->apex.vertex_count(), c.structured->left_foot.vertex_count(),
                        c.structured->right_foot.vertex_count());
        }
    });
}

inline std::string serialize(const ModelFile &m)
{
    return canonical_dump(to_json(m)) + "\n";
}

namespace detail
{

// Apex names after gluing along a pushout: each class takes the name of its
// first member in B + C order.
inline std::vector<std::string> glue_names(const std::vector<std::string> &b, const std::vector<std::string> &c,
                                           const FinFunction &quotient)
{
    if (b.empty() || c.empty()) {
        return {};
    }
    std::vector<std::string> all = b;
    all.insert(all.end(), c.begin(), c.end());
    std::vector<std::string> out(quotient.cod_size());
    std::vector<bool> set(quotient.cod_size(), false);
    for (std::size_t x = 0; x < all.size(); ++x) {
        if (!set[quotient(x)]) {
            out[quotient(x)] = all[x];
            set[quotient(x)] = true;
        }
    }
    return out;
}

inline std::vector<std::string> concat_names(const std::vector<std::string> &a, std::size_t a_size,
                                             const std::vector<std::string> &b, std::size_t b_size)
{
    if (a.empty() && b.empty()) {
        return {};
    }
    auto fill = [](const std::vector<std::string> &v, std::size_t n, std::size_t offset) {
        if (!v.empty()) {
            return v;
        }
        std::vector<std::string> out;
        for (std::size_t k = 0; k < n; ++k) {
            out.push_back(std::to_string(offset + k));
        }
        return out;
    };
    auto out = fill(a, a_size, 0);
    auto rest = fill(b, b_size, a_size);
    out.insert(out.end(), rest.begin(), rest.end());
    return out;
}

inline void require_same_shape(const std::vector<ModelFile> &models)
{
    for (const auto &m : models) {
        if (m.kind != models.front().kind) {
            throw KindError("models have different kinds ('" + models.front().kind + "' and '" + m.kind + "')");
        }
        if (!m.is_cospan()) {
            throw KindError("expected open systems (cospans), got a bare system");
        }
        if (m.representation() != models.front().representation()) {
            throw KindError("models use different representations; convert them first");
        }
    }
}

template <DecorationTheory T>
std::pair<DecoratedCospan<T>, Names> fold_decorated(const std::vector<DecoratedCospan<T>> &cs,
                                                     const std::vector<ModelFile> &models, bool tensor)
{
    auto acc = cs.front();
    Names names = models.front().names;
    for (std::size_t k = 1; k < cs.size(); ++k) {
        const auto &next = cs[k];
        const auto &nn = models[k].names;
        if (tensor) {
            names.apex = concat_names(names.apex, acc.apex().size, nn.apex, next.apex().size);
            names.foot_left = concat_names(names.foot_left, acc.foot_left().size, nn.foot_left, next.foot_left().size);
            names.foot_right =
                concat_names(names.foot_right, acc.foot_right().size, nn.foot_right, next.foot_right().size);
            acc = tensor_h(acc, next);
        } else {
            require_composable(acc.foot_right(), next.foot_left());
            names.apex = glue_names(names.apex, nn.apex, pushout(acc.right_leg, next.left_leg).quotient);
            names.foot_right = nn.foot_right;
            acc = compose_h(acc, next);
        }
    }
    return {std::move(acc), std::move(names)};
}

template <System S>
std::pair<StructuredCospan<S>, Names> fold_structured(const std::vector<StructuredCospan<S>> &cs,
                                                      const std::vector<ModelFile> &models, bool tensor)
{
    auto acc = cs.front();
    Names names = models.front().names;
    for (std::size_t k = 1; k < cs.size(); ++k) {
        const auto &next = cs[k];
        const auto &nn = models[k].names;
        if (tensor) {
            names.apex =
                concat_names(names.apex, acc.apex.vertex_count(), nn.apex, next.apex.vertex_count());
            names.foot_left = concat_names(names.foot_left, acc.left_foot.vertex_count(), nn.foot_left,
                                           next.left_foot.vertex_count());
            names.foot_right = concat_names(names.foot_right, acc.right_foot.vertex_count(), nn.foot_right,
                                            next.right_foot.vertex_count());
            acc = tensor_h(acc, next);
        } else {
            require_composable(acc.foot_right_set(), next.foot_left_set());
            names.apex = glue_names(names.apex, nn.apex,
                                    pushout(acc.right_leg.vertex_map, next.left_leg.vertex_map).quotient);
            names.foot_right = nn.foot_right;
            acc = compose_h(acc, next);
        }
    }
    return {std::move(acc), std::move(names)};
}

} // namespace detail

// compose / tensor: left fold over the files.
inline ModelFile combine_models(const std::vector<ModelFile> &models, bool tensor)
{
    if (models.empty()) {
        throw KindError("nothing to combine");
    }
    detail::require_same_shape(models);
    ModelFile out;
    out.kind = models.front().kind;
    if (out.kind == "dynam") {
        std::vector<OpenDynam> cs;
        for (const auto &m : models) {
            cs.push_back(open_dynam_from_json(m.payload));
        }
        auto [c, names] = detail::fold_decorated(cs, models, tensor);
        out.payload = to_json(c);
        out.names = std::move(names);
        return out;
    }
    with_system_type(out.kind, [&]<class S>(std::type_identity<S>) {
        if (models.front().representation() == "decorated") {
            std::vector<DecoratedCospan<SystemDecoration<S>>> cs;
            for (const auto &m : models) {
                cs.push_back(decorated_from_json<S>(m.payload));
            }
            auto [c, names] = detail::fold_decorated(cs, models, tensor);
            out.payload = to_json(c);
            out.names = std::move(names);
        } else {
            std::vector<StructuredCospan<S>> cs;
            for (const auto &m : models) {
                cs.push_back(structured_from_json<S>(m.payload));
            }
            auto [c, names] = detail::fold_structured(cs, models, tensor);
            out.payload = to_json(c);
            out.names = std::move(names);
        }
    });
    return out;
}

inline ModelFile convert_model(const ModelFile &m, const std::string &to)
{
    if (to != "structured" && to != "decorated") {
        throw ParseError("convert: --to must be 'structured' or 'decorated'");
    }
    if (m.kind == "dynam") {
        if (to == "structured") {
            throw KindError("open dynamical systems have no structured representation: the forgetful functor "
                            "out of their total category has no left adjoint");
        }
        ModelFile out = m;
        out.payload = to_json(open_dynam_from_json(m.payload));
        return out;
    }
    ModelFile out = m;
    with_system_type(m.kind, [&]<class S>(std::type_identity<S>) {
        auto c = LoadedCospan<S>::from_model(m);
        if (to == "structured") {
            out.payload = to_json(c.decorated ? to_structured(*c.decorated) : *c.structured);
        } else {
            out.payload = to_json(c.as_decorated());
        }
    });
    return out;
}

inline ModelFile graybox_model(const ModelFile &m)
{
    if (m.kind != "petri_rates") {
        throw KindError("graybox needs an open petri net with rates, got kind '" + m.kind + "'");
    }
    auto c = LoadedCospan<PetriNetWithRates>::from_model(m);
    ModelFile out;
    out.kind = "dynam";
    out.payload = to_json(graybox(c.as_decorated()));
    out.names = m.names;
    return out;
}

inline OpenDynam dynam_from_model(const ModelFile &m)
{
    if (m.kind == "dynam") {
        if (!m.is_cospan()) {
            throw KindError("expected an open dynamical system, got a bare vector field");
        }
        return open_dynam_from_json(m.payload);
    }
    if (m.kind == "petri_rates") {
        return graybox(LoadedCospan<PetriNetWithRates>::from_model(m).as_decorated());
    }
    throw KindError("simulate needs kind 'dynam' or 'petri_rates', got '" + m.kind + "'");
}

struct SimConfig {
    double t0 = 0.0;
    double t1 = 0.0;
    double dt = 0.0;
    std::vector<double> initial_state;
    FlowSchedule schedule;
    std::size_t sample_every = 1;
};

namespace detail
{

inline std::size_t resolve_name(const std::string &name, const std::vector<std::string> &names, std::size_t size,
                                const char *what)
{
    for (std::size_t k = 0; k < names.size(); ++k) {
        if (names[k] == name) {
            return k;
        }
    }
    try {
        std::size_t used = 0;
        auto k = std::stoul(name, &used);
        if (used == name.size() && k < size) {
            return k;
        }
    } catch (const std::exception &) {
    }
    throw InvalidSystem(std::string("config: '") + name + "' does not name a " + what);
}

inline PiecewiseConstant flow_from_json(const json &j, const std::string &name)
{
    if (!j.is_array()) {
        throw ParseError("config: flow '" + name + "' must be an array of [time, value] pairs");
    }
    std::vector<std::pair<double, double>> pts;
    for (const auto &p : j) {
        if (!p.is_array() || p.size() != 2) {
            throw ParseError("config: flow '" + name + "' breakpoints must be [time, value] pairs");
        }
        pts.emplace_back(opencospan::detail::to_real(p[0], "flow time"),
                         opencospan::detail::to_real(p[1], "flow value"));
    }
    return PiecewiseConstant(std::move(pts));
}

} // namespace detail

// {"t0", "t1", "dt", "initialState": {name: value}, "schedule": {"inflows":
// {foot: [[t, v], ...]}, "outflows": {...}}, "sampleEvery": k}. Names resolve
// through the model's names, or as decimal indices.
inline SimConfig sim_config_from_json(const json &j, const OpenDynam &sys, const Names &names)
{
    opencospan::detail::expect_keys(j, {"t0", "t1", "dt"}, {"initialState", "schedule", "sampleEvery"}, "config");
    SimConfig cfg;
    cfg.t0 = opencospan::detail::to_real(j["t0"], "config.t0");
    cfg.t1 = opencospan::detail::to_real(j["t1"], "config.t1");
    cfg.dt = opencospan::detail::to_real(j["dt"], "config.dt");
    if (!(cfg.dt > 0.0)) {
        throw InvalidSystem("config: dt must be positive");
    }
    if (!(cfg.t1 > cfg.t0)) {
        throw InvalidSystem("config: t1 must be after t0");
    }
    cfg.initial_state.assign(sys.apex().size, 0.0);
    if (j.contains("initialState")) {
        if (!j["initialState"].is_object()) {
            throw ParseError("config.initialState must be an object");
        }
        for (const auto &[k, v] : j["initialState"].items()) {
            cfg.initial_state[detail::resolve_name(k, names.apex, sys.apex().size, "place")] =
                opencospan::detail::to_real(v, "config.initialState");
        }
    }
    cfg.schedule = FlowSchedule::zero(sys);
    if (j.contains("schedule")) {
        const auto &s = j["schedule"];
        opencospan::detail::expect_keys(s, {}, {"inflows", "outflows"}, "config.schedule");
        auto fill = [&](const char *key, std::vector<PiecewiseConstant> &flows, const std::vector<std::string> &nm,
                        std::size_t size) {
            if (!s.contains(key)) {
                return;
            }
            if (!s[key].is_object()) {
                throw ParseError(std::string("config.schedule.") + key + " must be an object");
            }
            for (const auto &[k, v] : s[key].items()) {
                flows[detail::resolve_name(k, nm, size, "foot element")] = detail::flow_from_json(v, k);
            }
        };
        fill("inflows", cfg.schedule.inflows, names.foot_left, sys.foot_left().size);
        fill("outflows", cfg.schedule.outflows, names.foot_right, sys.foot_right().size);
    }
    if (j.contains("sampleEvery")) {
        cfg.sample_every = opencospan::detail::to_index(j["sampleEvery"], "config.sampleEvery");
        if (cfg.sample_every == 0) {
            throw InvalidSystem("config: sampleEvery must be at least 1");
        }
    }
    return cfg;
}

inline std::string format_real(double x)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

inline std::string trajectory_csv(const Trajectory &traj, const std::vector<std::string> &place_names,
                                  std::size_t places)
{
    std::ostringstream out;
    out << "t";
    for (std::size_t k = 0; k < places; ++k) {
        out << ',' << (place_names.empty() ? std::to_string(k) : place_names[k]);
    }
    out << '\n';
    for (std::size_t r = 0; r < traj.times.size(); ++r) {
        out << format_real(traj.times[r]);
        for (auto v : traj.states[r]) {
            out << ',' << format_real(v);
        }
        out << '\n';
    }
    return out.str();
}

// Law checks for `check`. Each returns an empty string on success or the
// first counterexample.
struct LawResult {
    std::string law;
    std::string failure;
};

namespace detail
{

inline std::string first_or_empty(const std::vector<std::string> &v)
{
    return v.empty() ? std::string() : v.front();
}

template <DecorationTheory T>
std::string check_unitors(const DecoratedCospan<T> &m, SearchBudget &budget)
{
    auto left = compose_h(identity_cospan<T>(m.foot_left()), m);
    auto right = compose_h(m, identity_cospan<T>(m.foot_right()));
    if (!iso_cospan(left, m, budget)) {
        return "U ⊙ M is not isomorphic to M";
    }
    if (!iso_cospan(right, m, budget)) {
        return "M ⊙ U is not isomorphic to M";
    }
    if (auto v = validate_two_morphism(left_unitor(m)); !v.empty()) {
        return "left unitor: " + v.front();
    }
    if (auto v = validate_two_morphism(right_unitor(m)); !v.empty()) {
        return "right unitor: " + v.front();
    }
    return {};
}

template <DecorationTheory T>
std::string check_adjoints(const FinFunction &f)
{
    if (auto v = check_companion(f, companion<T>(f)); !v.empty()) {
        return std::string(T::name) + " companion: " + v.front();
    }
    if (auto v = check_conjoint(f, conjoint<T>(f)); !v.empty()) {
        return std::string(T::name) + " conjoint: " + v.front();
    }
    return {};
}

} // namespace detail

inline std::vector<LawResult> run_checks(const std::vector<std::string> &files, const std::vector<std::string> &laws,
                                         const std::string &kind_filter)
{
    SearchBudget budget(iso_budget_from_env());
    std::vector<LawResult> results;

    // A bare function file ({"dom","cod","table"}) only supports the companion law.
    std::vector<json> raw;
    for (const auto &f : files) {
        raw.push_back(read_json_file(f));
    }
    const bool function_input = raw.size() == 1 && raw[0].is_object() && raw[0].contains("table");
    std::vector<ModelFile> models;
    if (!function_input) {
        for (std::size_t k = 0; k < raw.size(); ++k) {
            try {
                models.push_back(model_from_json(raw[k]));
            } catch (const ParseError &e) {
                throw ParseError(files[k] + ": " + e.what());
            }
        }
    }

    for (const auto &law : laws) {
        LawResult r{law, {}};
        try {
            if (law == "validate") {
                if (function_input) {
                    fin_function_from_json(raw[0]);
                } else {
                    for (const auto &m : models) {
                        validate_model(m);
                    }
                }
            } else if (law == "companion") {
                if (!function_input) {
                    throw KindError("the companion law needs a function file {\"dom\",\"cod\",\"table\"}");
                }
                auto f = fin_function_from_json(raw[0]);
                auto check_kind = [&](std::string_view name, auto tag) {
                    using T = typename decltype(tag)::type;
                    if (r.failure.empty() && (kind_filter.empty() || kind_filter == name)) {
                        r.failure = detail::check_adjoints<T>(f);
                    }
                };
                check_kind("graph", std::type_identity<GraphTheory>{});
                check_kind("lgraph", std::type_identity<CircuitTheory>{});
                check_kind("petri", std::type_identity<PetriTheory>{});
                check_kind("petri_rates", std::type_identity<RatedPetriTheory>{});
                check_kind("dynam", std::type_identity<DynamicalDecoration>{});
            } else if (function_input) {
                throw KindError("law '" + law + "' needs model files");
            } else if (law == "roundtrip") {
                for (const auto &m : models) {
                    if (m.kind == "dynam") {
                        continue;
                    }
                    with_system_type(m.kind, [&]<class S>(std::type_identity<S>) {
                        auto c = LoadedCospan<S>::from_model(m);
                        if (c.decorated) {
                            if (!(to_decorated(to_structured(*c.decorated)) == *c.decorated)) {
                                r.failure = "decorated -> structured -> decorated is not the identity";
                            }
                        } else if (c.structured->is_l_structured()) {
                            if (!(to_structured(to_decorated(*c.structured)) == *c.structured)) {
                                r.failure = "structured -> decorated -> structured is not the identity";
                            }
                        } else {
                            r.failure = "structured cospan has a non-discrete foot";
                        }
                    });
                }
            } else if (law == "unitors") {
                for (const auto &m : models) {
                    if (!r.failure.empty()) {
                        break;
                    }
                    if (m.kind == "dynam") {
                        r.failure = detail::check_unitors(open_dynam_from_json(m.payload), budget);
                        continue;
                    }
                    with_system_type(m.kind, [&]<class S>(std::type_identity<S>) {
                        r.failure = detail::check_unitors(LoadedCospan<S>::from_model(m).as_decorated(), budget);
                    });
                }
            } else if (law == "iso") {
                if (models.size() != 2) {
                    throw KindError("the iso law needs exactly two model files");
                }
                detail::require_same_shape({models[0], models[1]});
                if (models[0].kind == "dynam") {
                    if (!iso_cospan(open_dynam_from_json(models[0].payload),
                                    open_dynam_from_json(models[1].payload), budget)) {
                        r.failure = "no isomorphism between the two open systems";
                    }
                } else {
                    with_system_type(models[0].kind, [&]<class S>(std::type_identity<S>) {
                        auto a = LoadedCospan<S>::from_model(models[0]).as_decorated();
                        auto b = LoadedCospan<S>::from_model(models[1]).as_decorated();
                        if (!iso_cospan(a, b, budget)) {
                            r.failure = "no isomorphism between the two open systems";
                        }
                    });
                }
            } else if (law == "graybox") {
                for (const auto &m : models) {
                    if (m.kind != "petri_rates") {
                        throw KindError("the graybox law needs kind 'petri_rates'");
                    }
                }
                auto a = LoadedCospan<PetriNetWithRates>::from_model(models[0]).as_decorated();
                auto b = models.size() > 1 ? LoadedCospan<PetriNetWithRates>::from_model(models[1]).as_decorated()
                                           : identity_cospan<RatedPetriTheory>(a.foot_right());
                if (!same_cospan(graybox(compose_h(a, b)), compose_open_dynam(graybox(a), graybox(b)))) {
                    r.failure = "graybox(M ⊙ N) differs from graybox(M) ⊙ graybox(N)";
                }
            } else {
                throw ParseError("unknown law '" + law + "'");
            }
        } catch (const ParseError &) {
            throw;
        } catch (const Error &e) {
            r.failure = e.what();
        }
        results.push_back(std::move(r));
    }
    return results;
}

// Maps exceptions to exit codes and prints the message.
template <class F>
int guarded_command(F &&f, std::ostream &err)
{
    try {
        return f();
    } catch (const ParseError &e) {
        err << "parse error: " << e.what() << '\n';
        return io_failure;
    } catch (const IoError &e) {
        err << "i/o error: " << e.what() << '\n';
        return io_failure;
    } catch (const ComposabilityError &e) {
        err << "ComposabilityError: " << e.what() << '\n';
        return domain_failure;
    } catch (const NotInImageOfL &e) {
        err << "NotInImageOfL: " << e.what() << '\n';
        return domain_failure;
    } catch (const DivergenceError &e) {
        err << "DivergenceError: " << e.what() << " (last good time " << e.last_good_time() << ")\n";
        return domain_failure;
    } catch (const Error &e) {
        err << "error: " << e.what() << '\n';
        return domain_failure;
    } catch (const std::invalid_argument &e) {
        err << "error: " << e.what() << '\n';
        return domain_failure;
    }
}

inline int cmd_combine(const std::vector<std::string> &files, const std::string &output, bool tensor,
                       std::ostream &out, std::ostream &err)
{
    return guarded_command(
        [&] {
            if (files.size() < 2) {
                throw ParseError(std::string(tensor ? "tensor" : "compose") + " needs at least two files");
            }
            std::vector<ModelFile> models;
            for (const auto &f : files) {
                models.push_back(load_model(f));
            }
            write_text(output, serialize(combine_models(models, tensor)), out);
            return ok;
        },
        err);
}

inline int cmd_compose(const std::vector<std::string> &files, const std::string &output, std::ostream &out,
                       std::ostream &err)
{
    return cmd_combine(files, output, false, out, err);
}

inline int cmd_tensor(const std::vector<std::string> &files, const std::string &output, std::ostream &out,
                      std::ostream &err)
{
    return cmd_combine(files, output, true, out, err);
}

inline int cmd_convert(const std::string &file, const std::string &to, const std::string &output, std::ostream &out,
                       std::ostream &err)
{
    return guarded_command(
        [&] {
            write_text(output, serialize(convert_model(load_model(file), to)), out);
            return ok;
        },
        err);
}

inline int cmd_graybox(const std::string &file, const std::string &output, std::ostream &out, std::ostream &err)
{
    return guarded_command(
        [&] {
            write_text(output, serialize(graybox_model(load_model(file))), out);
            return ok;
        },
        err);
}

inline int cmd_simulate(const std::string &file, const std::string &config, const std::string &output,
                        std::ostream &out, std::ostream &err)
{
    return guarded_command(
        [&] {
            auto model = load_model(file);
            auto sys = dynam_from_model(model);
            check_names(model, sys.apex().size, sys.foot_left().size, sys.foot_right().size);
            auto cfg = sim_config_from_json(read_json_file(config), sys, model.names);
            auto traj = simulate(sys, cfg.schedule, cfg.initial_state, cfg.t0, cfg.t1, cfg.dt, cfg.sample_every);
            write_text(output, trajectory_csv(traj, model.names.apex, sys.apex().size), out);
            return ok;
        },
        err);
}

inline int cmd_check(const std::vector<std::string> &files, const std::vector<std::string> &laws,
                     const std::string &kind, std::ostream &out, std::ostream &err)
{
    return guarded_command(
        [&] {
            if (files.empty() || files.size() > 2) {
                throw ParseError("check takes one file or a pair of files");
            }
            auto results = run_checks(files, laws.empty() ? std::vector<std::string>{"validate"} : laws, kind);
            bool all = true;
            for (const auto &r : results) {
                if (r.failure.empty()) {
                    out << "PASS " << r.law << '\n';
                } else {
                    out << "FAIL " << r.law << ": " << r.failure << '\n';
                    all = false;
                }
            }
            return all ? ok : domain_failure;
        },
        err);
}

} // namespace opencospan::cli
