#include "tsynth/core/oracles.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <map>
#include <tuple>

#include "search.hpp"
#include "weighted.hpp"
#include "tsynth/core/errors.hpp"

namespace tsynth {

namespace {

using Triple = std::tuple<State, State, State>;

State advance(const Dfa& q, State r, const Word& out) {
    for (Symbol c : out) r = q.step(r, q.alphabet().require_index(c));
    return r;
}

// Shortest path from each DFA state to a final state, as a successor symbol.
struct ToFinal {
    std::vector<std::size_t> dist;
    std::vector<std::size_t> symbol;
};

ToFinal paths_to_final(const Dfa& p) {
    const auto n = p.num_states();
    const auto k = p.alphabet().size();
    constexpr auto inf = std::numeric_limits<std::size_t>::max();
    ToFinal r{std::vector<std::size_t>(n, inf), std::vector<std::size_t>(n, 0)};
    for (State s = 0; s < n; ++s)
        if (p.is_final(s)) r.dist[s] = 0;
    for (bool changed = true; changed;) {
        changed = false;
        for (State s = 0; s < n; ++s)
            for (std::size_t a = 0; a < k; ++a) {
                auto d = r.dist[p.step(s, a)];
                if (d != inf && d + 1 < r.dist[s]) {
                    r.dist[s] = d + 1;
                    r.symbol[s] = a;
                    changed = true;
                }
            }
    }
    return r;
}

Word suffix_to_final(const Dfa& p, const ToFinal& tf, State s) {
    Word w;
    while (!p.is_final(s)) {
        w += p.alphabet()[tf.symbol[s]];
        s = p.step(s, tf.symbol[s]);
    }
    return w;
}

// Product of p with t weighted per transition; accepting where p is final.
template <class Weight>
detail::WeightedGraph weighted_product(const Dfa& p, const Ft& t, Weight&& weight) {
    require_same_alphabet(p.alphabet(), t.alphabet());
    detail::WeightedGraph g(p.alphabet());
    std::map<std::pair<State, State>, std::size_t> id;
    std::vector<std::pair<State, State>> order;
    auto intern = [&](State ps, State ts) {
        auto [it, fresh] = id.try_emplace({ps, ts}, order.size());
        if (fresh) {
            order.emplace_back(ps, ts);
            g.add_node(p.is_final(ps));
        }
        return it->second;
    };
    intern(p.init(), t.init());
    for (std::size_t head = 0; head < order.size(); ++head) {
        auto [ps, ts] = order[head];
        for (std::size_t a = 0; a < p.alphabet().size(); ++a) {
            auto to = intern(p.step(ps, a), t.next(ts, a));
            g.add_edge(head, to, a, weight(a, t.output(ts, a)));
        }
    }
    return g;
}

}  // namespace

std::optional<Word> hoare_check(const Dfa& p, const Ft& t, const Dfa& q) {
    require_same_alphabet(p.alphabet(), t.alphabet());
    require_same_alphabet(p.alphabet(), q.alphabet());
    return detail::bfs_path(
        p.alphabet(), Triple{p.init(), t.init(), q.init()},
        [&](const Triple& n, std::size_t a) -> std::optional<Triple> {
            auto [ps, ts, qs] = n;
            return Triple{p.step(ps, a), t.next(ts, a), advance(q, qs, t.output(ts, a))};
        },
        [&](const Triple& n) { return p.is_final(std::get<0>(n)) && !q.is_final(std::get<2>(n)); });
}

std::optional<Word> check_mean_aggregate(const Dfa& p, const Ft& t, const Rational& d) {
    if (d <= 0) throw InputError("distance bound must be positive");
    const auto num = d.numerator();
    const auto den = d.denominator();
    auto g = weighted_product(p, t, [&](std::size_t a, const Word& out) {
        return num - den * static_cast<std::int64_t>(transition_distance(p.alphabet()[a], out));
    });
    return g.find_below(0);
}

std::optional<Word> check_total_aggregate(const Dfa& p, const Ft& t, std::int64_t bound) {
    if (bound < 0) throw InputError("total distance bound must be non-negative");
    auto g = weighted_product(p, t, [&](std::size_t a, const Word& out) {
        return -static_cast<std::int64_t>(transition_distance(p.alphabet()[a], out));
    });
    return g.find_below(-bound);
}

Dfa output_language(const Dfa& p, const Ft& t) {
    require_same_alphabet(p.alphabet(), t.alphabet());
    const auto& sigma = p.alphabet();
    Nfa nfa(sigma);
    std::map<std::pair<State, State>, State> id;
    std::vector<std::pair<State, State>> order;
    auto intern = [&](State ps, State ts) {
        auto it = id.find({ps, ts});
        if (it != id.end()) return it->second;
        State s = nfa.add_state(p.is_final(ps));
        id[{ps, ts}] = s;
        order.emplace_back(ps, ts);
        return s;
    };
    nfa.init = intern(p.init(), t.init());
    for (std::size_t head = 0; head < order.size(); ++head) {
        auto [ps, ts] = order[head];
        State from = id[{ps, ts}];
        for (std::size_t a = 0; a < sigma.size(); ++a) {
            State to = intern(p.step(ps, a), t.next(ts, a));
            const Word& y = t.output(ts, a);
            if (y.empty()) {
                nfa.add_edge(from, Nfa::kEpsilon, to);
                continue;
            }
            State cur = from;
            for (std::size_t i = 0; i + 1 < y.size(); ++i) {
                State mid = nfa.add_state();
                nfa.add_edge(cur, sigma.require_index(y[i]), mid);
                cur = mid;
            }
            nfa.add_edge(cur, sigma.require_index(y.back()), to);
        }
    }
    return determinize(nfa);
}

Dfa bad_inputs(const Dfa& p, const Ft& t, const Dfa& q) {
    require_same_alphabet(p.alphabet(), t.alphabet());
    require_same_alphabet(p.alphabet(), q.alphabet());
    const auto k = p.alphabet().size();
    std::map<Triple, State> id;
    std::vector<Triple> order;
    auto intern = [&](const Triple& n) {
        auto [it, fresh] = id.try_emplace(n, static_cast<State>(order.size()));
        if (fresh) order.push_back(n);
        return it->second;
    };
    intern({p.init(), t.init(), q.init()});
    std::vector<State> delta;
    for (std::size_t head = 0; head < order.size(); ++head) {
        auto [ps, ts, qs] = order[head];
        for (std::size_t a = 0; a < k; ++a)
            delta.push_back(intern({p.step(ps, a), t.next(ts, a), advance(q, qs, t.output(ts, a))}));
    }
    std::vector<bool> finals(order.size());
    for (std::size_t i = 0; i < order.size(); ++i)
        finals[i] = p.is_final(std::get<0>(order[i])) && !q.is_final(std::get<2>(order[i]));
    return minimize(Dfa(p.alphabet(), order.size(), 0, std::move(finals), std::move(delta)));
}

std::optional<Word> find_distinguishing_input(const Ft& t1, const Ft& t2, const Dfa& p) {
    require_same_alphabet(t1.alphabet(), t2.alphabet());
    require_same_alphabet(t1.alphabet(), p.alphabet());
    const auto& sigma = p.alphabet();
    const auto live = p.live_states();
    if (!live[p.init()]) return std::nullopt;

    // lead: 0 in step, 1 when t1 is ahead by `pending`, 2 when t2 is;
    // diverged: outputs already disagree on a common position.
    struct Node {
        State ps, q1, q2;
        bool diverged;
        int lead;
        Word pending;
        auto key() const { return std::tie(ps, q1, q2, diverged, lead, pending); }
        bool operator<(const Node& o) const { return key() < o.key(); }
    };
    struct Entry {
        Node node;
        std::size_t parent;
        std::size_t symbol;
        std::size_t depth;
    };

    const auto to_final = paths_to_final(p);
    std::size_t live_count = std::count(live.begin(), live.end(), true);
    std::size_t l = std::max<std::size_t>({t1.max_output_length(), t2.max_output_length(), 1});
    std::size_t lag_bound = l * live_count * t1.num_states() * t2.num_states();

    auto path_to = [&](const std::vector<Entry>& entries, std::size_t i) {
        Word w;
        for (; entries[i].parent != static_cast<std::size_t>(-1); i = entries[i].parent) w += sigma[entries[i].symbol];
        return Word(w.rbegin(), w.rend());
    };

    std::vector<Entry> entries{{Node{p.init(), t1.init(), t2.init(), false, 0, {}}, static_cast<std::size_t>(-1), 0, 0}};
    std::map<Node, std::size_t> seen{{entries[0].node, 0}};
    std::optional<Word> best;

    for (std::size_t head = 0; head < entries.size(); ++head) {
        const Node cur = entries[head].node;
        const auto depth = entries[head].depth;
        if (best && depth >= best->size()) break;
        if (p.is_final(cur.ps) && (cur.diverged || !cur.pending.empty())) return path_to(entries, head);

        for (std::size_t a = 0; a < sigma.size(); ++a) {
            State pn = p.step(cur.ps, a);
            if (!live[pn]) continue;
            Node next{pn, 0, 0, true, 0, {}};
            if (!cur.diverged) {
                Word o1 = (cur.lead == 1 ? cur.pending : Word{}) + t1.output(cur.q1, a);
                Word o2 = (cur.lead == 2 ? cur.pending : Word{}) + t2.output(cur.q2, a);
                const Word& shorter = o1.size() <= o2.size() ? o1 : o2;
                const Word& longer = o1.size() <= o2.size() ? o2 : o1;
                next.q1 = t1.next(cur.q1, a);
                next.q2 = t2.next(cur.q2, a);
                if (longer.compare(0, shorter.size(), shorter) == 0) {
                    next.diverged = false;
                    next.pending = longer.substr(shorter.size());
                    next.lead = next.pending.empty() ? 0 : (o1.size() > o2.size() ? 1 : 2);
                }
            }
            if (!next.diverged && next.pending.size() > lag_bound) {
                // Too far apart for the slower side to catch up before the
                // shortest completion in p; that completion distinguishes.
                Word w = path_to(entries, head) + sigma[a] + suffix_to_final(p, to_final, pn);
                if (!best || w.size() < best->size()) best = std::move(w);
                continue;
            }
            if (seen.try_emplace(next, entries.size()).second)
                entries.push_back({next, head, a, depth + 1});
        }
    }
    return best;
}

}  // namespace tsynth
