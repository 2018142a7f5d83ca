#include "tsynth/cli/documents.hpp"

#include <fstream>

#include "tsynth/core/errors.hpp"

namespace tsynth {

namespace {

template <class... Fs>
struct Overload : Fs... {
    using Fs::operator()...;
};
template <class... Fs>
Overload(Fs...) -> Overload<Fs...>;

const Json& field(const Json& j, const char* name) {
    if (!j.is_object()) throw InputError("expected an object holding '" + std::string(name) + "'");
    auto it = j.find(name);
    if (it == j.end()) throw InputError("missing field '" + std::string(name) + "'");
    return *it;
}

const Json* optional_field(const Json& j, const char* name) {
    auto it = j.find(name);
    return it == j.end() || it->is_null() ? nullptr : &*it;
}

std::int64_t integer(const Json& j, const char* what) {
    if (!j.is_number_integer()) throw InputError(std::string(what) + " must be an integer");
    return j.get<std::int64_t>();
}

std::size_t count(const Json& j, const char* what) {
    auto v = integer(j, what);
    if (v < 0) throw InputError(std::string(what) + " must be non-negative");
    return static_cast<std::size_t>(v);
}

Word word(const Json& j, const char* what) {
    if (!j.is_string()) throw InputError(std::string(what) + " must be a string");
    return from_utf8(j.get<std::string>());
}

Symbol character(const Json& j, const char* what) {
    if (j.is_number_integer()) {
        auto v = j.get<std::int64_t>();
        if (v < 0 || v > static_cast<std::int64_t>(kMaxCodePoint)) throw InputError(std::string(what) + " is not a code point");
        return static_cast<Symbol>(v);
    }
    auto w = word(j, what);
    if (w.size() != 1) throw InputError(std::string(what) + " must be a single character");
    return w[0];
}

Json text(std::u32string_view w) { return to_utf8(w); }

Alphabet alphabet_from_json(const Json& j) {
    auto w = word(j, "alphabet");
    if (w.empty()) throw InputError("alphabet must not be empty");
    return Alphabet::from_word(w);
}

Universe universe_from_json(const Json& j) {
    if (!j.is_array() || j.size() != 2) throw InputError("universe must be a [lo, hi] pair");
    Universe u{character(j[0], "universe bound"), character(j[1], "universe bound")};
    if (u.lo > u.hi) throw InputError("universe bounds are reversed");
    return u;
}

Json to_json(const Universe& u) { return Json::array({u.lo, u.hi}); }

std::vector<State> transitions_table(const Json& moves, std::size_t states, const Alphabet& sigma,
                                     const std::function<void(const Json&, std::size_t)>& extra = {}) {
    std::vector<State> next(states * sigma.size());
    std::vector<bool> seen(next.size(), false);
    if (!moves.is_array()) throw InputError("transitions must be an array");
    for (const auto& m : moves) {
        auto from = count(field(m, "from"), "transition source");
        auto to = count(field(m, "to"), "transition target");
        auto on = character(field(m, "on"), "transition symbol");
        if (from >= states || to >= states) throw InputError("transition state out of range");
        auto sym = sigma.index_of(on);
        if (!sym) throw InputError("transition symbol " + quote(Word(1, on)) + " is not in the alphabet");
        auto i = from * sigma.size() + *sym;
        if (seen[i]) throw InputError("two transitions share a source and symbol");
        seen[i] = true;
        next[i] = static_cast<State>(to);
        if (extra) extra(m, i);
    }
    for (bool s : seen)
        if (!s) throw InputError("transition table is not total");
    return next;
}

std::vector<bool> finals_from_json(const Json& j, std::size_t states) {
    std::vector<bool> finals(states, false);
    if (!j.is_array()) throw InputError("finals must be an array of states");
    for (const auto& f : j) {
        auto s = count(f, "final state");
        if (s >= states) throw InputError("final state out of range");
        finals[s] = true;
    }
    return finals;
}

Json finals_to_json(const std::vector<bool>& finals) {
    Json out = Json::array();
    for (std::size_t s = 0; s < finals.size(); ++s)
        if (finals[s]) out.push_back(s);
    return out;
}

OutputFunc output_func_from_json(const Json& j) {
    if (j.is_string() && j.get<std::string>() == "identity") return OutputFunc::identity();
    if (auto* c = optional_field(j, "const")) return OutputFunc::constant(character(*c, "constant output"));
    if (auto* o = optional_field(j, "offset")) return OutputFunc::offset(static_cast<long>(integer(*o, "offset")));
    throw InputError("output function must be \"identity\", {\"const\": c} or {\"offset\": n}");
}

Json to_json(const OutputFunc& f) {
    switch (f.kind()) {
        case OutputFunc::Kind::Identity: return "identity";
        case OutputFunc::Kind::Offset: return Json{{"offset", f.delta()}};
        case OutputFunc::Kind::Const: return Json{{"const", to_utf8(f.value())}};
    }
    return nullptr;
}

Ft ft_from_json(const Json& j) {
    auto sigma = alphabet_from_json(field(j, "alphabet"));
    auto states = count(field(j, "states"), "states");
    if (states == 0) throw InputError("a transducer needs at least one state");
    std::vector<Word> out(states * sigma.size());
    auto next = transitions_table(field(j, "transitions"), states, sigma,
                                  [&](const Json& m, std::size_t i) { out[i] = word(field(m, "out"), "output"); });
    auto init = count(field(j, "init"), "init");
    if (init >= states) throw InputError("initial state out of range");
    for (const auto& w : out) sigma.encode(w);
    return Ft(sigma, states, static_cast<State>(init), std::move(next), std::move(out));
}

Sft sft_from_json(const Json& j) {
    auto u = universe_from_json(field(j, "universe"));
    auto states = count(field(j, "states"), "states");
    std::vector<SftMove> moves;
    for (const auto& m : field(j, "transitions")) {
        std::vector<OutputFunc> out;
        for (const auto& f : field(m, "out")) out.push_back(output_func_from_json(f));
        moves.push_back({static_cast<State>(count(field(m, "from"), "transition source")),
                         predicate_from_json(field(m, "guard")), std::move(out),
                         static_cast<State>(count(field(m, "to"), "transition target"))});
    }
    try {
        return Sft(u, states, static_cast<State>(count(field(j, "init"), "init")), std::move(moves));
    } catch (const ConstructionError& e) {
        throw InputError(e.what());
    }
}

LookaheadFt lookahead_from_json(const Json& j) {
    auto sigma = alphabet_from_json(field(j, "alphabet"));
    auto r = dfa_from_json(field(j, "lookahead"), sigma);
    auto states = count(field(j, "states"), "states");
    auto init = count(field(j, "init"), "init");
    if (states == 0 || init >= states) throw InputError("bad state count or initial state");
    const auto kr = r.num_states();
    std::vector<State> next(states * kr * sigma.size());
    std::vector<Word> out(next.size());
    std::vector<bool> seen(next.size(), false);
    for (const auto& m : field(j, "transitions")) {
        auto from = count(field(m, "from"), "transition source");
        auto rho = count(field(m, "lookahead"), "lookahead state");
        auto to = count(field(m, "to"), "transition target");
        auto sym = sigma.index_of(character(field(m, "on"), "transition symbol"));
        if (from >= states || to >= states || rho >= kr || !sym) throw InputError("transition out of range");
        auto i = (from * kr + rho) * sigma.size() + *sym;
        if (seen[i]) throw InputError("two transitions share a source, lookahead state and symbol");
        seen[i] = true;
        next[i] = static_cast<State>(to);
        out[i] = word(field(m, "out"), "output");
        sigma.encode(out[i]);
    }
    for (bool s : seen)
        if (!s) throw InputError("transition table is not total");
    return LookaheadFt(states, static_cast<State>(init), std::move(r), std::move(next), std::move(out));
}

DomainRestrictedFt restricted_from_json(const Json& j) {
    std::vector<Branch> branches;
    for (const auto& b : field(j, "branches")) {
        auto m = ft_from_json(field(b, "machine"));
        branches.push_back({m, dfa_from_json(field(b, "domain"), m.alphabet())});
    }
    if (branches.empty()) throw InputError("a restricted transducer needs at least one branch");
    try {
        return DomainRestrictedFt(std::move(branches));
    } catch (const ConstructionError& e) {
        throw InputError(e.what());
    }
}

TypeDocument type_from_json(const Json& j, const std::variant<Alphabet, Universe>& alphabet) {
    if (auto* re = optional_field(j, "regex")) {
        if (!re->is_string()) throw InputError("regex must be a string");
        Regex::parse_utf8(re->get<std::string>());
        return re->get<std::string>();
    }
    if (auto* d = optional_field(j, "dfa")) {
        std::optional<Alphabet> fallback;
        if (auto* a = std::get_if<Alphabet>(&alphabet)) fallback = *a;
        return dfa_from_json(*d, fallback);
    }
    if (auto* s = optional_field(j, "sfa")) {
        std::optional<Universe> fallback;
        if (auto* u = std::get_if<Universe>(&alphabet)) fallback = *u;
        return sfa_from_json(*s, fallback);
    }
    throw InputError("a type must be one of {regex}, {dfa} or {sfa}");
}

Json type_to_json(const TypeDocument& t) {
    return std::visit(Overload{[](const std::string& re) { return Json{{"regex", re}}; },
                               [](const Dfa& d) { return Json{{"dfa", to_json(d)}}; },
                               [](const Sfa& s) { return Json{{"sfa", to_json(s)}}; }},
                      t);
}

TypeSpec to_type_spec(const TypeDocument& t) {
    return std::visit(Overload{[](const std::string& re) -> TypeSpec { return Regex::parse_utf8(re); },
                               [](const Dfa& d) -> TypeSpec { return d; },
                               [](const Sfa& s) -> TypeSpec { return s; }},
                      t);
}

void check_in_alphabet(const std::variant<Alphabet, Universe>& alphabet, const Word& w) {
    for (auto c : w) {
        bool ok = std::visit(Overload{[&](const Alphabet& a) { return a.contains(c); },
                                      [&](const Universe& u) { return u.contains(c); }},
                             alphabet);
        if (!ok) throw InputError("character " + quote(Word(1, c)) + " is outside the alphabet");
    }
}

}  // namespace

IntervalPred predicate_from_json(const Json& j) {
    if (!j.is_array()) throw InputError("a predicate is an array of characters and [lo, hi] ranges");
    std::vector<Interval> iv;
    for (const auto& part : j) {
        if (part.is_array()) {
            if (part.size() != 2) throw InputError("a range is a [lo, hi] pair");
            auto lo = character(part[0], "range bound");
            auto hi = character(part[1], "range bound");
            if (lo > hi) throw InputError("range bounds are reversed");
            iv.push_back({lo, hi});
        } else {
            for (auto c : word(part, "predicate characters")) iv.push_back({c, c});
        }
    }
    return IntervalPred(std::move(iv));
}

Json to_json(const IntervalPred& p) {
    Json out = Json::array();
    for (const auto& i : p.intervals())
        out.push_back(i.lo == i.hi ? Json(to_utf8(i.lo)) : Json::array({to_utf8(i.lo), to_utf8(i.hi)}));
    return out;
}

Json to_json(const MintermMap& mm) {
    Json out = Json::array();
    for (const auto& m : mm.minterms()) out.push_back({{"witness", to_utf8(m.witness)}, {"predicate", to_json(m.pred)}});
    return out;
}

Dfa dfa_from_json(const Json& j, const std::optional<Alphabet>& fallback) {
    std::optional<Alphabet> sigma = fallback;
    if (auto* a = optional_field(j, "alphabet")) sigma = alphabet_from_json(*a);
    if (!sigma) throw InputError("automaton needs an alphabet");
    auto states = count(field(j, "states"), "states");
    if (states == 0) throw InputError("automaton needs at least one state");
    auto next = transitions_table(field(j, "transitions"), states, *sigma);
    auto init = count(field(j, "init"), "init");
    if (init >= states) throw InputError("initial state out of range");
    return Dfa(*sigma, states, static_cast<State>(init), finals_from_json(field(j, "finals"), states), std::move(next));
}

Json to_json(const Dfa& d) {
    Json moves = Json::array();
    for (State s = 0; s < d.num_states(); ++s)
        for (std::size_t a = 0; a < d.alphabet().size(); ++a)
            moves.push_back({{"from", s}, {"on", to_utf8(d.alphabet()[a])}, {"to", d.step(s, a)}});
    return {{"alphabet", to_utf8(Word(d.alphabet().symbols().begin(), d.alphabet().symbols().end()))},
            {"states", d.num_states()},
            {"init", d.init()},
            {"finals", finals_to_json(d.finals())},
            {"transitions", moves}};
}

Sfa sfa_from_json(const Json& j, const std::optional<Universe>& fallback) {
    std::optional<Universe> u = fallback;
    if (auto* f = optional_field(j, "universe")) u = universe_from_json(*f);
    if (!u) throw InputError("symbolic automaton needs a universe");
    auto states = count(field(j, "states"), "states");
    std::vector<SfaMove> moves;
    for (const auto& m : field(j, "transitions"))
        moves.push_back({static_cast<State>(count(field(m, "from"), "transition source")),
                         predicate_from_json(field(m, "guard")),
                         static_cast<State>(count(field(m, "to"), "transition target"))});
    try {
        return Sfa(*u, states, static_cast<State>(count(field(j, "init"), "init")),
                   finals_from_json(field(j, "finals"), states), std::move(moves));
    } catch (const ConstructionError& e) {
        throw InputError(e.what());
    }
}

Json to_json(const Sfa& a) {
    Json moves = Json::array();
    for (const auto& m : a.moves()) moves.push_back({{"from", m.from}, {"guard", to_json(m.guard)}, {"to", m.to}});
    return {{"universe", to_json(a.universe())},
            {"states", a.num_states()},
            {"init", a.init()},
            {"finals", finals_to_json(a.finals())},
            {"transitions", moves}};
}

Json to_json(const Ft& t) {
    Json moves = Json::array();
    for (State s = 0; s < t.num_states(); ++s)
        for (std::size_t a = 0; a < t.alphabet().size(); ++a)
            moves.push_back({{"from", s},
                             {"on", to_utf8(t.alphabet()[a])},
                             {"out", text(t.output(s, a))},
                             {"to", t.next(s, a)}});
    return {{"kind", "ft"},
            {"alphabet", to_utf8(Word(t.alphabet().symbols().begin(), t.alphabet().symbols().end()))},
            {"states", t.num_states()},
            {"init", t.init()},
            {"transitions", moves}};
}

Json to_json(const Sft& t) {
    Json moves = Json::array();
    for (const auto& m : t.moves()) {
        Json out = Json::array();
        for (const auto& f : m.out) out.push_back(to_json(f));
        moves.push_back({{"from", m.from}, {"guard", to_json(m.guard)}, {"out", out}, {"to", m.to}});
    }
    return {{"kind", "sft"},
            {"universe", to_json(t.universe())},
            {"states", t.num_states()},
            {"init", t.init()},
            {"transitions", moves}};
}

Json to_json(const LookaheadFt& t) {
    Json moves = Json::array();
    for (State s = 0; s < t.num_states(); ++s)
        for (State r = 0; r < t.num_lookahead_states(); ++r)
            for (std::size_t a = 0; a < t.alphabet().size(); ++a)
                moves.push_back({{"from", s},
                                 {"lookahead", r},
                                 {"on", to_utf8(t.alphabet()[a])},
                                 {"out", text(t.output(s, r, a))},
                                 {"to", t.next(s, r, a)}});
    return {{"kind", "lookahead"},
            {"alphabet", to_utf8(Word(t.alphabet().symbols().begin(), t.alphabet().symbols().end()))},
            {"states", t.num_states()},
            {"init", t.init()},
            {"lookahead", to_json(t.lookahead())},
            {"transitions", moves}};
}

Json to_json(const DomainRestrictedFt& t) {
    Json branches = Json::array();
    for (const auto& b : t.branches()) branches.push_back({{"machine", to_json(b.machine)}, {"domain", to_json(b.domain)}});
    return {{"kind", "restricted"}, {"branches", branches}};
}

Json to_json(const TransducerDocument& t) {
    return std::visit([](const auto& m) { return to_json(m); }, t);
}

TransducerDocument transducer_from_json(const Json& j) {
    auto kind = field(j, "kind");
    if (!kind.is_string()) throw InputError("kind must be a string");
    auto k = kind.get<std::string>();
    if (k == "ft") return ft_from_json(j);
    if (k == "sft") return sft_from_json(j);
    if (k == "lookahead") return lookahead_from_json(j);
    if (k == "restricted") return restricted_from_json(j);
    throw InputError("unknown transducer kind '" + k + "'");
}

SpecDocument spec_from_json(const Json& j) {
    SpecDocument s;
    const auto& alpha = field(j, "alphabet");
    if (alpha.is_string()) {
        s.alphabet = alphabet_from_json(alpha);
    } else if (alpha.is_array() && alpha.size() == 1 && alpha[0].is_array()) {
        s.alphabet = universe_from_json(alpha[0]);
    } else {
        throw InputError("alphabet must be a string of characters or a single [lo, hi] range in a list");
    }
    if (auto* k = optional_field(j, "k")) s.k = count(*k, "k");
    if (auto* l = optional_field(j, "l")) s.l = count(*l, "l");
    if (s.k == 0 || s.l == 0) throw InputError("k and l must be at least 1");
    if (auto* ex = optional_field(j, "examples"))
        for (const auto& e : *ex) {
            Example pair{word(field(e, "in"), "example input"), word(field(e, "out"), "example output")};
            check_in_alphabet(s.alphabet, pair.first);
            check_in_alphabet(s.alphabet, pair.second);
            s.examples.push_back(std::move(pair));
        }
    if (auto* t = optional_field(j, "inputType")) s.input_type = type_from_json(*t, s.alphabet);
    if (auto* t = optional_field(j, "outputType")) s.output_type = type_from_json(*t, s.alphabet);
    if (auto* d = optional_field(j, "distance")) {
        if (auto* m = optional_field(*d, "mean")) {
            auto r = m->is_number_integer() ? Rational(m->get<std::int64_t>())
                                            : parse_rational(m->is_string() ? m->get<std::string>() : "");
            if (r <= 0) throw InputError("mean distance must be positive");
            s.distance = MeanBound{r};
        } else if (auto* t = optional_field(*d, "total")) {
            s.distance = TotalBound{static_cast<std::int64_t>(count(*t, "total distance"))};
        } else {
            throw InputError("distance must be {\"mean\": \"p/q\"} or {\"total\": n}");
        }
    }
    if (auto* la = optional_field(j, "lookaheadStates")) {
        s.lookahead = count(*la, "lookaheadStates");
        if (*s.lookahead == 0) throw InputError("lookaheadStates must be at least 1");
    }
    if (auto* t = optional_field(j, "template"))
        for (const auto& m : *t) {
            TemplateMove move{static_cast<State>(count(field(m, "from"), "template source")), 0,
                              character(field(m, "on"), "template symbol"), word(field(m, "out"), "template output"),
                              static_cast<State>(count(field(m, "to"), "template target"))};
            if (auto* r = optional_field(m, "lookahead")) move.lookahead = static_cast<State>(count(*r, "lookahead state"));
            check_in_alphabet(s.alphabet, Word(1, move.on));
            check_in_alphabet(s.alphabet, move.out);
            s.template_moves.push_back(std::move(move));
        }
    if (auto* cm = optional_field(j, "customMinterms")) {
        if (!std::holds_alternative<Universe>(s.alphabet))
            throw InputError("customMinterms need a symbolic alphabet");
        for (const auto& p : *cm) s.custom_minterms.push_back(predicate_from_json(p));
    }
    if (auto* sv = optional_field(j, "solver")) {
        if (auto* p = optional_field(*sv, "path")) s.solver.path = word(*p, "solver path").empty() ? "" : p->get<std::string>();
        if (auto* a = optional_field(*sv, "args")) {
            std::vector<std::string> args;
            for (const auto& x : *a) {
                if (!x.is_string()) throw InputError("solver arguments must be strings");
                args.push_back(x.get<std::string>());
            }
            s.solver.args = std::move(args);
        }
        if (auto* t = optional_field(*sv, "timeoutSec")) {
            if (!t->is_number() || t->get<double>() <= 0) throw InputError("timeoutSec must be a positive number");
            s.solver.timeout_sec = t->get<double>();
        }
    }
    return s;
}

Json to_json(const SpecDocument& s) {
    Json j;
    if (auto* a = std::get_if<Alphabet>(&s.alphabet))
        j["alphabet"] = to_utf8(Word(a->symbols().begin(), a->symbols().end()));
    else
        j["alphabet"] = Json::array({to_json(std::get<Universe>(s.alphabet))});
    j["k"] = s.k;
    j["l"] = s.l;
    j["examples"] = Json::array();
    for (const auto& [in, out] : s.examples) j["examples"].push_back({{"in", text(in)}, {"out", text(out)}});
    if (s.input_type) j["inputType"] = type_to_json(*s.input_type);
    if (s.output_type) j["outputType"] = type_to_json(*s.output_type);
    if (auto* m = std::get_if<MeanBound>(&s.distance)) j["distance"] = {{"mean", format_rational(m->d)}};
    if (auto* t = std::get_if<TotalBound>(&s.distance)) j["distance"] = {{"total", t->bound}};
    if (s.lookahead) j["lookaheadStates"] = *s.lookahead;
    if (!s.template_moves.empty()) {
        j["template"] = Json::array();
        for (const auto& m : s.template_moves)
            j["template"].push_back({{"from", m.from},
                                     {"lookahead", m.lookahead},
                                     {"on", to_utf8(m.on)},
                                     {"out", text(m.out)},
                                     {"to", m.to}});
    }
    if (!s.custom_minterms.empty()) {
        j["customMinterms"] = Json::array();
        for (const auto& p : s.custom_minterms) j["customMinterms"].push_back(to_json(p));
    }
    Json solver = Json::object();
    if (s.solver.path) solver["path"] = *s.solver.path;
    if (s.solver.args) solver["args"] = *s.solver.args;
    if (s.solver.timeout_sec) solver["timeoutSec"] = *s.solver.timeout_sec;
    if (!solver.empty()) j["solver"] = solver;
    return j;
}

SynthesisSpec to_synthesis_spec(const SpecDocument& s) {
    SynthesisSpec spec;
    if (auto* a = std::get_if<Alphabet>(&s.alphabet)) spec.alphabet = *a;
    else spec.universe = std::get<Universe>(s.alphabet);
    spec.k = s.k;
    spec.l = s.l;
    spec.examples = s.examples;
    if (s.input_type) spec.input_type = to_type_spec(*s.input_type);
    if (s.output_type) spec.output_type = to_type_spec(*s.output_type);
    spec.distance = s.distance;
    spec.lookahead = s.lookahead;
    spec.custom_minterms = s.custom_minterms;
    if (!s.template_moves.empty()) {
        auto fin = finitize_spec(spec);
        const auto kr = s.lookahead.value_or(1);
        for (const auto& m : s.template_moves) {
            if (m.lookahead >= kr) throw InputError("template lookahead state out of range");
            auto on = fin.minterms ? fin.minterms->project(Word(1, m.on)) : Word(1, m.on);
            auto out = fin.minterms ? fin.minterms->project(m.out) : m.out;
            spec.pins.push_back({m.from, m.lookahead * fin.sigma.size() + fin.sigma.require_index(on[0]), m.to, out});
        }
    }
    return spec;
}

SolverConfig solver_config(const SpecDocument& s) {
    auto cfg = SolverConfig::from_environment();
    if (s.solver.path && !s.solver.path->empty()) cfg.path = *s.solver.path;
    if (s.solver.args) cfg.args = *s.solver.args;
    if (s.solver.timeout_sec) cfg.timeout = std::chrono::duration<double>(*s.solver.timeout_sec);
    return cfg;
}

Json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open " + path);
    try {
        return Json::parse(in);
    } catch (const Json::exception& e) {
        throw InputError(path + ": " + e.what());
    }
}

}  // namespace tsynth
