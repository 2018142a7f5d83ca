#include "tsynth/core/dfa.hpp"

#include <algorithm>
#include <deque>
#include <map>

#include "tsynth/core/errors.hpp"

namespace tsynth {

Dfa::Dfa(Alphabet sigma, std::size_t num_states, State init, std::vector<bool> finals,
         std::vector<State> delta)
    : sigma_(std::move(sigma)), init_(init), finals_(std::move(finals)), delta_(std::move(delta)) {
    if (num_states == 0) throw InputError("automaton needs at least one state");
    if (finals_.size() != num_states) throw InputError("final-state vector has wrong size");
    if (delta_.size() != num_states * sigma_.size()) throw InputError("transition table is not total");
    if (init_ >= num_states) throw InputError("initial state out of range");
    for (State t : delta_)
        if (t >= num_states) throw InputError("transition target out of range");
}

Dfa Dfa::empty_language(Alphabet sigma) {
    auto n = sigma.size();
    return Dfa(std::move(sigma), 1, 0, {false}, std::vector<State>(n, 0));
}

Dfa Dfa::universal(Alphabet sigma) {
    auto n = sigma.size();
    return Dfa(std::move(sigma), 1, 0, {true}, std::vector<State>(n, 0));
}

State Dfa::run(State from, std::u32string_view w) const {
    State s = from;
    for (Symbol c : w) s = step(s, sigma_.require_index(c));
    return s;
}

bool Dfa::accepts(std::u32string_view w) const { return is_final(run(init_, w)); }

std::vector<bool> Dfa::reachable_states() const {
    std::vector<bool> seen(num_states(), false);
    std::vector<State> stack{init_};
    seen[init_] = true;
    while (!stack.empty()) {
        State s = stack.back();
        stack.pop_back();
        for (std::size_t a = 0; a < sigma_.size(); ++a) {
            State t = step(s, a);
            if (!seen[t]) {
                seen[t] = true;
                stack.push_back(t);
            }
        }
    }
    return seen;
}

std::vector<bool> Dfa::coreachable_states() const {
    std::vector<std::vector<State>> preds(num_states());
    for (State s = 0; s < num_states(); ++s)
        for (std::size_t a = 0; a < sigma_.size(); ++a) preds[step(s, a)].push_back(s);
    std::vector<bool> seen(num_states(), false);
    std::vector<State> stack;
    for (State s = 0; s < num_states(); ++s)
        if (finals_[s]) {
            seen[s] = true;
            stack.push_back(s);
        }
    while (!stack.empty()) {
        State s = stack.back();
        stack.pop_back();
        for (State p : preds[s])
            if (!seen[p]) {
                seen[p] = true;
                stack.push_back(p);
            }
    }
    return seen;
}

std::vector<bool> Dfa::live_states() const {
    auto r = reachable_states();
    auto c = coreachable_states();
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = r[i] && c[i];
    return r;
}

namespace {

// Renumber the reachable part in BFS order from init, symbols in alphabet order.
Dfa canonical(const Alphabet& sigma, State init, const std::vector<bool>& finals,
              const std::vector<State>& delta) {
    const auto n = finals.size();
    const auto k = sigma.size();
    std::vector<State> id(n, static_cast<State>(-1));
    std::vector<State> order;
    id[init] = 0;
    order.push_back(init);
    for (std::size_t head = 0; head < order.size(); ++head) {
        State s = order[head];
        for (std::size_t a = 0; a < k; ++a) {
            State t = delta[s * k + a];
            if (id[t] == static_cast<State>(-1)) {
                id[t] = static_cast<State>(order.size());
                order.push_back(t);
            }
        }
    }
    std::vector<bool> f(order.size());
    std::vector<State> d(order.size() * k);
    for (std::size_t i = 0; i < order.size(); ++i) {
        f[i] = finals[order[i]];
        for (std::size_t a = 0; a < k; ++a) d[i * k + a] = id[delta[order[i] * k + a]];
    }
    return Dfa(sigma, order.size(), 0, std::move(f), std::move(d));
}

}  // namespace

Dfa minimize(const Dfa& input) {
    Dfa a = canonical(input.alphabet(), input.init(), input.finals(), input.table());
    const auto n = a.num_states();
    const auto k = a.alphabet().size();

    std::vector<std::vector<std::vector<State>>> inverse(k, std::vector<std::vector<State>>(n));
    for (State s = 0; s < n; ++s)
        for (std::size_t c = 0; c < k; ++c) inverse[c][a.step(s, c)].push_back(s);

    std::vector<std::vector<State>> blocks;
    std::vector<std::size_t> block_of(n);
    {
        std::vector<State> acc, rej;
        for (State s = 0; s < n; ++s) (a.is_final(s) ? acc : rej).push_back(s);
        for (auto* b : {&acc, &rej})
            if (!b->empty()) {
                for (State s : *b) block_of[s] = blocks.size();
                blocks.push_back(std::move(*b));
            }
    }

    std::vector<bool> in_work(blocks.size(), false);
    std::deque<std::size_t> work;
    if (blocks.size() == 2) {
        std::size_t smaller = blocks[0].size() <= blocks[1].size() ? 0 : 1;
        work.push_back(smaller);
        in_work[smaller] = true;
    }

    std::vector<bool> marked(n, false);
    while (!work.empty()) {
        std::size_t splitter = work.front();
        work.pop_front();
        in_work[splitter] = false;
        const std::vector<State> members = blocks[splitter];
        for (std::size_t c = 0; c < k; ++c) {
            std::vector<State> pre;
            for (State t : members)
                for (State s : inverse[c][t])
                    if (!marked[s]) {
                        marked[s] = true;
                        pre.push_back(s);
                    }
            std::map<std::size_t, std::vector<State>> touched;
            for (State s : pre) touched[block_of[s]].push_back(s);
            for (auto& [b, inside] : touched) {
                if (inside.size() == blocks[b].size()) continue;
                std::vector<State> outside;
                for (State s : blocks[b])
                    if (!marked[s]) outside.push_back(s);
                std::size_t fresh = blocks.size();
                blocks[b] = std::move(outside);
                for (State s : inside) block_of[s] = fresh;
                blocks.push_back(std::move(inside));
                in_work.push_back(false);
                if (in_work[b]) {
                    work.push_back(fresh);
                    in_work[fresh] = true;
                } else {
                    std::size_t pick = blocks[b].size() <= blocks[fresh].size() ? b : fresh;
                    work.push_back(pick);
                    in_work[pick] = true;
                }
            }
            for (State s : pre) marked[s] = false;
        }
    }

    std::vector<bool> finals(blocks.size());
    std::vector<State> delta(blocks.size() * k);
    for (std::size_t b = 0; b < blocks.size(); ++b) {
        State rep = blocks[b].front();
        finals[b] = a.is_final(rep);
        for (std::size_t c = 0; c < k; ++c) delta[b * k + c] = static_cast<State>(block_of[a.step(rep, c)]);
    }
    return canonical(a.alphabet(), static_cast<State>(block_of[a.init()]), finals, delta);
}

namespace {

Dfa product(const Dfa& a, const Dfa& b, BoolOp op) {
    require_same_alphabet(a.alphabet(), b.alphabet());
    const auto k = a.alphabet().size();
    std::map<std::pair<State, State>, State> id;
    std::vector<std::pair<State, State>> order;
    auto intern = [&](State x, State y) {
        auto [it, fresh] = id.try_emplace({x, y}, static_cast<State>(order.size()));
        if (fresh) order.emplace_back(x, y);
        return it->second;
    };
    intern(a.init(), b.init());
    std::vector<State> delta;
    for (std::size_t head = 0; head < order.size(); ++head) {
        auto [x, y] = order[head];
        for (std::size_t c = 0; c < k; ++c) delta.push_back(intern(a.step(x, c), b.step(y, c)));
    }
    std::vector<bool> finals(order.size());
    for (std::size_t i = 0; i < order.size(); ++i) {
        bool fa = a.is_final(order[i].first);
        bool fb = b.is_final(order[i].second);
        switch (op) {
            case BoolOp::Intersect: finals[i] = fa && fb; break;
            case BoolOp::Union: finals[i] = fa || fb; break;
            case BoolOp::Difference: finals[i] = fa && !fb; break;
            case BoolOp::Complement: break;
        }
    }
    return minimize(Dfa(a.alphabet(), order.size(), 0, std::move(finals), std::move(delta)));
}

}  // namespace

Dfa dfa_complement(const Dfa& a) {
    std::vector<bool> finals = a.finals();
    finals.flip();
    return minimize(Dfa(a.alphabet(), a.num_states(), a.init(), std::move(finals), a.table()));
}

Dfa dfa_intersect(const Dfa& a, const Dfa& b) { return product(a, b, BoolOp::Intersect); }
Dfa dfa_union(const Dfa& a, const Dfa& b) { return product(a, b, BoolOp::Union); }
Dfa dfa_difference(const Dfa& a, const Dfa& b) { return product(a, b, BoolOp::Difference); }

Dfa dfa_boolean(BoolOp op, const Dfa& a, const std::optional<Dfa>& b) {
    if (op == BoolOp::Complement) {
        if (b) throw InputError("complement takes a single operand");
        return dfa_complement(a);
    }
    if (!b) throw InputError("binary operation needs two operands");
    return product(a, *b, op);
}

std::optional<Word> dfa_emptiness(const Dfa& a) {
    const auto n = a.num_states();
    const auto k = a.alphabet().size();
    std::vector<std::pair<State, std::size_t>> parent(n, {static_cast<State>(-1), 0});
    std::vector<bool> seen(n, false);
    std::deque<State> queue{a.init()};
    seen[a.init()] = true;
    while (!queue.empty()) {
        State s = queue.front();
        queue.pop_front();
        if (a.is_final(s)) {
            Word w;
            for (State cur = s; cur != a.init();) {
                w += a.alphabet()[parent[cur].second];
                cur = parent[cur].first;
            }
            std::reverse(w.begin(), w.end());
            return w;
        }
        for (std::size_t c = 0; c < k; ++c) {
            State t = a.step(s, c);
            if (!seen[t]) {
                seen[t] = true;
                parent[t] = {s, c};
                queue.push_back(t);
            }
        }
    }
    return std::nullopt;
}

bool dfa_is_empty(const Dfa& a) {
    auto co = a.coreachable_states();
    return !co[a.init()];
}

bool dfa_equivalent(const Dfa& a, const Dfa& b) {
    return dfa_is_empty(dfa_difference(a, b)) && dfa_is_empty(dfa_difference(b, a));
}

Dfa determinize(const Nfa& n) {
    const auto k = n.sigma.size();
    auto closure = [&](std::vector<State> set) {
        std::vector<bool> in(n.edges.size(), false);
        for (State s : set) in[s] = true;
        for (std::size_t i = 0; i < set.size(); ++i)
            for (const auto& e : n.edges[set[i]])
                if (e.symbol == Nfa::kEpsilon && !in[e.target]) {
                    in[e.target] = true;
                    set.push_back(e.target);
                }
        std::sort(set.begin(), set.end());
        set.erase(std::unique(set.begin(), set.end()), set.end());
        return set;
    };

    std::map<std::vector<State>, State> id;
    std::vector<std::vector<State>> order;
    auto intern = [&](std::vector<State> set) {
        auto [it, fresh] = id.try_emplace(set, static_cast<State>(order.size()));
        if (fresh) order.push_back(std::move(set));
        return it->second;
    };
    intern(closure({n.init}));
    std::vector<State> delta;
    for (std::size_t head = 0; head < order.size(); ++head) {
        for (std::size_t c = 0; c < k; ++c) {
            std::vector<State> next;
            for (State s : order[head])
                for (const auto& e : n.edges[s])
                    if (e.symbol == c) next.push_back(e.target);
            delta.push_back(intern(closure(std::move(next))));
        }
    }
    std::vector<bool> finals(order.size(), false);
    for (std::size_t i = 0; i < order.size(); ++i)
        for (State s : order[i])
            if (n.finals[s]) finals[i] = true;
    return minimize(Dfa(n.sigma, order.size(), 0, std::move(finals), std::move(delta)));
}

}  // namespace tsynth
