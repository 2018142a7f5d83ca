#include "tsynth/encoder/encoder.hpp"

#include <algorithm>
#include <cstdlib>

#include "tsynth/core/errors.hpp"
#include "tsynth/core/word.hpp"

namespace tsynth {

namespace {

Expr num(std::size_t v) { return Expr(static_cast<std::int64_t>(v)); }

std::string join(std::initializer_list<std::size_t> parts) {
    std::string s;
    for (auto p : parts) s += "_" + std::to_string(p);
    return s;
}

}  // namespace

VarRegistry::VarRegistry(std::size_t k, Alphabet sigma, std::size_t l, std::size_t lookahead_states)
    : k_(k), sigma_(std::move(sigma)), l_(l), kr_(lookahead_states) {
    if (k_ == 0) throw InputError("state bound k must be at least 1");
    if (l_ == 0) throw InputError("output bound l must be at least 1");
    const auto n = static_cast<std::int64_t>(sigma_.size());
    for (State q = 0; q < k_; ++q)
        for (std::size_t c = 0; c < columns(); ++c) {
            base_.declare_int(dst(q, c).name(), 0, static_cast<std::int64_t>(k_) - 1);
            for (std::size_t z = 0; z < l_; ++z) base_.declare_int(out_char(q, c, z).name(), 0, n - 1);
            base_.declare_int(out_len(q, c).name(), 0, static_cast<std::int64_t>(l_));
        }
    if (kr_ > 0)
        for (State r = 0; r < kr_; ++r)
            for (std::size_t a = 0; a < sigma_.size(); ++a)
                base_.declare_int(look_step(r, a).name(), 0, static_cast<std::int64_t>(kr_) - 1);
}

Expr VarRegistry::dst(State q, std::size_t col) const { return Expr::var("dst" + join({q, col}), Sort::Int); }
Expr VarRegistry::out_char(State q, std::size_t col, std::size_t z) const {
    return Expr::var("ch" + join({q, col, z}), Sort::Int);
}
Expr VarRegistry::out_len(State q, std::size_t col) const { return Expr::var("len" + join({q, col}), Sort::Int); }
Expr VarRegistry::look_step(State rho, std::size_t sym) const {
    return Expr::var("dR" + join({rho, sym}), Sort::Int);
}

VarRegistry declare_transducer_vars(std::size_t k, const Alphabet& sigma, std::size_t l, std::size_t lookahead_states) {
    return VarRegistry(k, sigma, l, lookahead_states);
}

namespace {

struct ExampleVars {
    std::vector<Expr> pos;
    std::vector<Expr> st;
    std::vector<std::size_t> in;
    std::vector<std::size_t> out;
};

ExampleVars example_vars(VarRegistry& reg, Formula& f, const Example& ex, std::size_t id) {
    ExampleVars v;
    v.in = reg.alphabet().encode(ex.first);
    v.out = reg.alphabet().encode(ex.second);
    const auto n = v.in.size();
    const auto m = static_cast<std::int64_t>(v.out.size());
    for (std::size_t i = 0; i <= n; ++i) {
        v.pos.push_back(f.declare_int("pos" + join({id, i}), 0, m));
        v.st.push_back(f.declare_int("st" + join({id, i}), 0, static_cast<std::int64_t>(reg.k()) - 1));
    }
    f.add(Family::ExampleInit, eq(v.pos[0], Expr(0)) && eq(v.st[0], Expr(0)));
    if (v.out.size() > n * reg.l()) {
        f.note("example " + quote(ex.first) + " needs more than " + std::to_string(reg.l()) +
               " output characters per input character");
        f.add(Family::ExampleInfeasible, Expr(false));
    }
    return v;
}

// Output b_j.. agrees with the transition's output, and the configuration advances.
Expr example_move(const VarRegistry& reg, const ExampleVars& v, std::size_t i, std::size_t j, State q,
                  std::size_t col) {
    const auto m = v.out.size();
    std::vector<Expr> parts;
    for (std::size_t z = 0; z < reg.l(); ++z) {
        Expr matches = j + z < m ? eq(reg.out_char(q, col, z), num(v.out[j + z])) : Expr(false);
        parts.push_back(matches || ge(num(z), reg.out_len(q, col)));
    }
    parts.push_back(eq(v.pos[i + 1], num(j) + reg.out_len(q, col)));
    parts.push_back(eq(v.st[i + 1], reg.dst(q, col)));
    return all_of(std::move(parts));
}

void example_final(const VarRegistry& reg, Formula& f, const ExampleVars& v) {
    std::vector<Expr> ends;
    for (State q = 0; q < reg.k(); ++q) ends.push_back(eq(v.pos.back(), num(v.out.size())) && eq(v.st.back(), num(q)));
    f.add(Family::ExampleFinal, any_of(std::move(ends)));
}

Formula plain_example(VarRegistry& reg, const Example& ex) {
    Formula f;
    auto id = reg.next_example_id();
    auto v = example_vars(reg, f, ex, id);
    const auto n = v.in.size();
    const auto m = v.out.size();
    const auto sigma = reg.alphabet().size();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < m; ++j)
            for (std::size_t c = 0; c < sigma; ++c)
                for (State q = 0; q < reg.k(); ++q) {
                    Expr pre = all_of({eq(v.pos[i], num(j)), eq(v.st[i], num(q)), Expr(v.in[i] == c)});
                    f.add(Family::ExampleStep, implies(pre, example_move(reg, v, i, j, q, c)));
                }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t c = 0; c < sigma; ++c)
            for (State q = 0; q < reg.k(); ++q) {
                Expr pre = all_of({eq(v.pos[i], num(m)), eq(v.st[i], num(q)), Expr(v.in[i] == c)});
                f.add(Family::ExampleTail, implies(pre, example_move(reg, v, i, m, q, c)));
            }
    example_final(reg, f, v);
    return f;
}

Formula lookahead_example(VarRegistry& reg, const Example& ex) {
    Formula f;
    auto id = reg.next_example_id();
    auto v = example_vars(reg, f, ex, id);
    const auto n = v.in.size();
    const auto m = v.out.size();
    const auto sigma = reg.alphabet().size();
    const auto kr = reg.lookahead_states();
    std::vector<Expr> look;
    for (std::size_t i = 0; i < n; ++i)
        look.push_back(f.declare_int("look" + join({id, i}), 0, static_cast<std::int64_t>(kr) - 1));
    if (n > 0) {
        std::vector<Expr> chain{eq(look[n - 1], Expr(0))};
        for (std::size_t i = 0; i + 1 < n; ++i) {
            std::vector<Expr> options;
            for (State r = 0; r < kr; ++r) options.push_back(reg.look_step(r, v.in[i + 1]));
            chain.push_back(eq(look[i], select(look[i + 1], options)));
        }
        f.add(Family::LookaheadLook, all_of(std::move(chain)));
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j <= m; ++j)
            for (std::size_t c = 0; c < sigma; ++c)
                for (State r = 0; r < kr; ++r)
                    for (State q = 0; q < reg.k(); ++q) {
                        Expr pre = all_of({eq(v.pos[i], num(j)), eq(v.st[i], num(q)), Expr(v.in[i] == c),
                                           eq(look[i], num(r))});
                        f.add(Family::LookaheadExampleStep,
                              implies(pre, example_move(reg, v, i, j, q, r * sigma + c)));
                    }
    example_final(reg, f, v);
    return f;
}

std::string q_table_name() { return "dQ"; }

Expr q_step(const Dfa& q, const Expr& r, const Expr& c) {
    if (r.is_int_lit() && c.is_int_lit())
        return num(q.step(static_cast<State>(r.value()), static_cast<std::size_t>(c.value())));
    return Expr::call(q_table_name(), {r, c}, Sort::Int);
}

Table q_table(const Dfa& q) {
    Table t{q_table_name(), q.num_states(), q.alphabet().size(), {}};
    for (auto s : q.table()) t.values.push_back(s);
    return t;
}

// Per (p, q_T, r, rho, rho', c) instance data shared by the simulation-style steps.
struct Step {
    State p;
    State q;
    State r;
    State pending;
    State pred;
    std::size_t sym;
    std::size_t col;
    State p_next;
};

std::string step_suffix(const VarRegistry& reg, const Step& s) {
    if (reg.has_lookahead()) return join({s.p, s.q, s.r, s.pending, s.pred, s.sym});
    return join({s.p, s.q, s.r, s.sym});
}

template <class Fn>
void for_each_step(const VarRegistry& reg, const VarRegistry::Simulation& sim, Fn&& fn) {
    const auto& p = sim.p;
    const auto kr = reg.lookahead_states();
    for (State ps = 0; ps < p.num_states(); ++ps) {
        if (!sim.live[ps]) continue;
        for (State q = 0; q < reg.k(); ++q)
            for (State r = 0; r < sim.q.num_states(); ++r)
                for (State pending = 0; pending < kr; ++pending)
                    for (State pred = 0; pred < kr; ++pred)
                        for (std::size_t c = 0; c < reg.alphabet().size(); ++c)
                            fn(Step{ps, q, r, pending, pred, c, pred * reg.alphabet().size() + c, p.step(ps, c)});
    }
}

Expr sim_var(const VarRegistry& reg, State p, State q, State r, State rho) {
    if (reg.has_lookahead()) return Expr::var("simR" + join({p, q, r, rho}), Sort::Bool);
    return Expr::var("sim" + join({p, q, r}), Sort::Bool);
}

Expr energy_var(const VarRegistry& reg, State p, State q, State r, State rho) {
    if (reg.has_lookahead()) return Expr::var("enR" + join({p, q, r, rho}), Sort::Int);
    return Expr::var("en" + join({p, q, r}), Sort::Int);
}

// f(p', q', r') for a variable q' and r', as a nested selection.
template <class Cell>
Expr indexed(const VarRegistry& reg, const Dfa& qdfa, const Expr& qv, const Expr& rv, Cell&& cell) {
    std::vector<Expr> rows;
    for (State q = 0; q < reg.k(); ++q) {
        std::vector<Expr> cols;
        for (State r = 0; r < qdfa.num_states(); ++r) cols.push_back(cell(q, r));
        rows.push_back(select(rv, cols));
    }
    return select(qv, rows);
}

// Guard of a step: the simulation holds, and with lookahead, rho' is a
// predecessor of the pending state on the step's symbol.
Expr step_guard(const VarRegistry& reg, const Step& s) {
    Expr g = sim_var(reg, s.p, s.q, s.r, s.pending);
    if (reg.has_lookahead()) g = g && eq(reg.look_step(s.pred, s.sym), num(s.pending));
    return g;
}

// For each output length z: the output characters, the Q states they lead
// through, and whatever `target(r_z)` demands of the successor.
template <class Target>
Expr through_outputs(const VarRegistry& reg, Formula& f, const Dfa& qdfa, const Step& s, const std::string& tag,
                     Target&& target) {
    const auto suffix = step_suffix(reg, s);
    const auto sigma = static_cast<std::int64_t>(reg.alphabet().size());
    std::vector<Expr> chars;
    std::vector<Expr> states;
    for (std::size_t x = 0; x < reg.l(); ++x)
        chars.push_back(f.declare_int(tag + "c" + suffix + "_" + std::to_string(x), 0, sigma - 1));
    for (std::size_t x = 0; x <= reg.l(); ++x)
        states.push_back(f.declare_int(tag + "r" + suffix + "_" + std::to_string(x), 0,
                                       static_cast<std::int64_t>(qdfa.num_states()) - 1));
    std::vector<Expr> branches;
    for (std::size_t z = 0; z <= reg.l(); ++z) {
        std::vector<Expr> body;
        for (std::size_t x = 0; x < z; ++x) body.push_back(eq(reg.out_char(s.q, s.col, x), chars[x]));
        body.push_back(eq(states[0], num(s.r)));
        for (std::size_t x = 1; x <= z; ++x) body.push_back(eq(states[x], q_step(qdfa, states[x - 1], chars[x - 1])));
        body.push_back(target(states[z]));
        branches.push_back(implies(eq(reg.out_len(s.q, s.col), num(z)), all_of(std::move(body))));
    }
    return all_of(std::move(branches));
}

std::vector<bool> live_states(const Dfa& p) { return p.live_states(); }

}  // namespace

Formula encode_example(VarRegistry& reg, const Example& ex) {
    return reg.has_lookahead() ? lookahead_example(reg, ex) : plain_example(reg, ex);
}

Formula encode_types(VarRegistry& reg, const Dfa& p, const Dfa& q) {
    require_same_alphabet(p.alphabet(), reg.alphabet());
    require_same_alphabet(q.alphabet(), reg.alphabet());
    reg.set_simulation({p, q, live_states(p)});
    const auto& sim = *reg.simulation();
    const auto la = reg.has_lookahead();
    const auto kr = reg.lookahead_states();
    Formula f;
    f.define_table(q_table(q));
    for (State ps = 0; ps < p.num_states(); ++ps) {
        if (!sim.live[ps]) continue;
        for (State qs = 0; qs < reg.k(); ++qs)
            for (State r = 0; r < q.num_states(); ++r)
                for (State rho = 0; rho < kr; ++rho) f.declare(sim_var(reg, ps, qs, r, rho).name(), Sort::Bool);
    }

    std::vector<Expr> init;
    if (sim.live[p.init()])
        for (State rho = 0; rho < kr; ++rho) init.push_back(sim_var(reg, p.init(), 0, q.init(), rho));
    f.add(la ? Family::LookaheadTypeInit : Family::TypeInit, all_of(std::move(init)));

    for_each_step(reg, sim, [&](const Step& s) {
        Expr body(true);
        if (sim.live[s.p_next])
            body = through_outputs(reg, f, q, s, "t", [&](const Expr& r_end) {
                return indexed(reg, q, reg.dst(s.q, s.col), r_end,
                               [&](State q2, State r2) { return sim_var(reg, s.p_next, q2, r2, s.pred); });
            });
        f.add(la ? Family::LookaheadTypeStep : Family::TypeStep, implies(step_guard(reg, s), body));
    });

    std::vector<Expr> bad;
    for (State ps = 0; ps < p.num_states(); ++ps) {
        if (!sim.live[ps] || !p.is_final(ps)) continue;
        for (State qs = 0; qs < reg.k(); ++qs)
            for (State r = 0; r < q.num_states(); ++r)
                if (!q.is_final(r)) bad.push_back(!sim_var(reg, ps, qs, r, 0));
    }
    f.add(la ? Family::LookaheadTypeFinal : Family::TypeFinal, all_of(std::move(bad)));
    return f;
}

namespace {

const VarRegistry::Simulation& require_simulation(const VarRegistry& reg) {
    if (!reg.simulation()) throw InputError("distance constraints need the type constraints on the same registry");
    return *reg.simulation();
}

Expr ed_var(State q, std::size_t col) { return Expr::var("ed" + join({q, col}), Sort::Int); }

// Edit distance of each transition, by whether its output contains its input.
void encode_edit_distance(VarRegistry& reg, Formula& f) {
    if (reg.edit_distance_encoded()) return;
    reg.mark_edit_distance();
    const auto sigma = reg.alphabet().size();
    for (State q = 0; q < reg.k(); ++q)
        for (std::size_t col = 0; col < reg.columns(); ++col) {
            auto ed = f.declare_int(ed_var(q, col).name(), 0, static_cast<std::int64_t>(reg.l()));
            auto len = reg.out_len(q, col);
            auto c = num(col % sigma);
            std::vector<Expr> hit, miss;
            for (std::size_t z = 0; z < reg.l(); ++z) {
                hit.push_back(lt(num(z), len) && eq(reg.out_char(q, col, z), c));
                miss.push_back(ge(num(z), len) || ne(reg.out_char(q, col, z), c));
            }
            Expr empty = eq(len, Expr(0));
            f.add(Family::EditContains,
                  implies(any_of(hit), implies(empty, eq(ed, Expr(1))) && implies(!empty, eq(ed, len - Expr(1)))));
            f.add(Family::EditExcludes,
                  implies(all_of(miss), implies(empty, eq(ed, Expr(1))) && implies(!empty, eq(ed, len))));
        }
}

std::size_t energy_count(const VarRegistry& reg, const VarRegistry::Simulation& sim) {
    auto live = static_cast<std::size_t>(std::count(sim.live.begin(), sim.live.end(), true));
    return live * reg.k() * sim.q.num_states() * reg.lookahead_states();
}

// Shortest-path energies of the reachable triples stay within
// [lo, hi], so the range loses no models.
void declare_energy(const VarRegistry& reg, const VarRegistry::Simulation& sim, Formula& f, std::int64_t lo,
                    std::int64_t hi) {
    for (State ps = 0; ps < sim.p.num_states(); ++ps) {
        if (!sim.live[ps]) continue;
        for (State qs = 0; qs < reg.k(); ++qs)
            for (State r = 0; r < sim.q.num_states(); ++r)
                for (State rho = 0; rho < reg.lookahead_states(); ++rho)
                    f.declare_int(energy_var(reg, ps, qs, r, rho).name(), lo, hi);
    }
}

Expr energy_init(const VarRegistry& reg, const VarRegistry::Simulation& sim, std::int64_t value) {
    std::vector<Expr> init;
    if (sim.live[sim.p.init()])
        for (State rho = 0; rho < reg.lookahead_states(); ++rho)
            init.push_back(eq(energy_var(reg, sim.p.init(), 0, sim.q.init(), rho), Expr(value)));
    return all_of(std::move(init));
}

void energy_final(const VarRegistry& reg, const VarRegistry::Simulation& sim, Formula& f) {
    std::vector<Expr> ok;
    for (State ps = 0; ps < sim.p.num_states(); ++ps) {
        if (!sim.live[ps] || !sim.p.is_final(ps)) continue;
        for (State qs = 0; qs < reg.k(); ++qs)
            for (State r = 0; r < sim.q.num_states(); ++r)
                ok.push_back(implies(sim_var(reg, ps, qs, r, 0), ge(energy_var(reg, ps, qs, r, 0), Expr(0))));
    }
    f.add(Family::EnergyFinal, all_of(std::move(ok)));
}

// relation(current energy, successor energy, transition) per step.
template <class Relation>
void energy_steps(VarRegistry& reg, const VarRegistry::Simulation& sim, Formula& f, Family family,
                  Relation&& relation) {
    for_each_step(reg, sim, [&](const Step& s) {
        Expr body(true);
        if (sim.live[s.p_next]) {
            auto here = energy_var(reg, s.p, s.q, s.r, s.pending);
            body = through_outputs(reg, f, sim.q, s, "e", [&](const Expr& r_end) {
                auto next = indexed(reg, sim.q, reg.dst(s.q, s.col), r_end, [&](State q2, State r2) {
                    return energy_var(reg, s.p_next, q2, r2, s.pred);
                });
                return relation(here, next, s);
            });
        }
        f.add(family, implies(step_guard(reg, s), body));
    });
}

}  // namespace

Formula encode_distance(VarRegistry& reg, const Rational& d) {
    if (d <= 0) throw InputError("distance bound must be positive");
    const auto& sim = require_simulation(reg);
    Formula f;
    encode_edit_distance(reg, f);
    for (State q = 0; q < reg.k(); ++q)
        for (std::size_t col = 0; col < reg.columns(); ++col) {
            auto w = f.declare("wed" + join({q, col}), Sort::Int);
            f.add(Family::Weight, eq(w, Expr(d.numerator()) - scale(d.denominator(), ed_var(q, col))));
        }
    const auto n = static_cast<std::int64_t>(energy_count(reg, sim));
    const auto l = static_cast<std::int64_t>(reg.l());
    const auto w = std::max(std::abs(d.numerator()), std::abs(d.numerator() - d.denominator() * l));
    declare_energy(reg, sim, f, -n * w, n * w);
    f.add(Family::EnergyInit, energy_init(reg, sim, 0));
    energy_steps(reg, sim, f, Family::EnergyStep, [&](const Expr& here, const Expr& next, const Step& s) {
        return ge(here, next - Expr::var("wed" + join({s.q, s.col}), Sort::Int));
    });
    energy_final(reg, sim, f);
    return f;
}

Formula encode_bounded_distance(VarRegistry& reg, std::int64_t bound) {
    if (bound < 0) throw InputError("total distance bound must be non-negative");
    const auto& sim = require_simulation(reg);
    Formula f;
    encode_edit_distance(reg, f);
    const auto n = static_cast<std::int64_t>(energy_count(reg, sim));
    declare_energy(reg, sim, f, bound - n * static_cast<std::int64_t>(reg.l()), bound);
    f.add(Family::BoundedInit, energy_init(reg, sim, bound));
    energy_steps(reg, sim, f, Family::BoundedStep, [&](const Expr& here, const Expr& next, const Step& s) {
        return le(next, here - ed_var(s.q, s.col));
    });
    energy_final(reg, sim, f);
    return f;
}

Formula encode_lookahead(VarRegistry& reg, const std::vector<Example>& examples,
                         const std::optional<std::pair<Dfa, Dfa>>& types) {
    if (!reg.has_lookahead()) throw InputError("registry has no lookahead automaton");
    Formula f;
    for (const auto& ex : examples) f += encode_example(reg, ex);
    if (types) f += encode_types(reg, types->first, types->second);
    return f;
}

Formula encode_template(const VarRegistry& reg, const std::vector<Pin>& pins) {
    Formula f;
    std::vector<const Pin*> seen(reg.k() * reg.columns(), nullptr);
    for (const auto& pin : pins) {
        if (pin.from >= reg.k() || pin.column >= reg.columns() || pin.to >= reg.k())
            throw InputError("template pins a transition outside the declared shape");
        if (pin.out.size() > reg.l()) throw InputError("template output longer than l");
        auto& slot = seen[pin.from * reg.columns() + pin.column];
        if (slot) {
            if (!(*slot == pin)) throw InputError("template pins one transition twice with different values");
            continue;
        }
        slot = &pin;
        std::vector<Expr> parts{eq(reg.dst(pin.from, pin.column), num(pin.to)),
                                eq(reg.out_len(pin.from, pin.column), num(pin.out.size()))};
        auto idx = reg.alphabet().encode(pin.out);
        for (std::size_t z = 0; z < idx.size(); ++z) parts.push_back(eq(reg.out_char(pin.from, pin.column, z), num(idx[z])));
        f.add(Family::Template, all_of(std::move(parts)));
    }
    return f;
}

std::vector<Pin> pins_from(const Ft& t, const std::vector<std::pair<State, std::size_t>>& except) {
    std::vector<Pin> pins;
    for (State q = 0; q < t.num_states(); ++q)
        for (std::size_t a = 0; a < t.alphabet().size(); ++a)
            if (std::find(except.begin(), except.end(), std::pair{q, a}) == except.end())
                pins.push_back({q, a, t.next(q, a), t.output(q, a)});
    return pins;
}

}  // namespace tsynth
