#include "tsynth/core/lookahead.hpp"

#include <algorithm>
#include <map>
#include <tuple>

#include "tsynth/core/errors.hpp"
#include "weighted.hpp"

namespace tsynth {

LookaheadFt::LookaheadFt(std::size_t num_states, State init, Dfa lookahead, std::vector<State> next,
                         std::vector<Word> out)
    : init_(init), r_(std::move(lookahead)), next_(std::move(next)), out_(std::move(out)) {
    const auto cells = num_states * r_.num_states() * alphabet().size();
    if (num_states == 0) throw InputError("transducer needs at least one state");
    if (next_.size() != cells || out_.size() != cells) throw InputError("lookahead transducer tables are not total");
    if (init_ >= num_states) throw InputError("initial state out of range");
    for (State t : next_)
        if (t >= num_states) throw InputError("transition target out of range");
    for (const Word& y : out_)
        for (Symbol c : y) alphabet().require_index(c);
}

std::size_t LookaheadFt::max_output_length() const {
    std::size_t m = 0;
    for (const Word& y : out_) m = std::max(m, y.size());
    return m;
}

std::vector<State> LookaheadFt::look(std::u32string_view w) const {
    std::vector<State> out(w.size());
    State rho = r_.init();
    for (std::size_t i = w.size(); i-- > 0;) {
        out[i] = rho;
        rho = r_.step(rho, alphabet().require_index(w[i]));
    }
    return out;
}

Word LookaheadFt::run(std::u32string_view w) const {
    auto la = look(w);
    Word result;
    State q = init_;
    for (std::size_t i = 0; i < w.size(); ++i) {
        auto a = alphabet().require_index(w[i]);
        result += output(q, la[i], a);
        q = next(q, la[i], a);
    }
    return result;
}

std::size_t lookahead_aggregate_cost(const LookaheadFt& t, std::u32string_view w) {
    if (w.empty()) throw InputError("aggregate cost is undefined for an empty input");
    auto la = t.look(w);
    std::size_t total = 0;
    State q = t.init();
    for (std::size_t i = 0; i < w.size(); ++i) {
        auto a = t.alphabet().require_index(w[i]);
        total += transition_distance(w[i], t.output(q, la[i], a));
        q = t.next(q, la[i], a);
    }
    return total;
}

namespace {

// The searches below guess, at each position, the lookahead state of the
// remaining suffix (`pending`). A path is a genuine run exactly when the
// final guess is the initial lookahead state; kAny marks the start, before
// any symbol has fixed the guess.
constexpr State kAny = static_cast<State>(-1);

template <class Visit>
void guess_steps(const LookaheadFt& t, State pending, std::size_t a, Visit&& visit) {
    const auto& r = t.lookahead();
    for (State rho = 0; rho < r.num_states(); ++rho)
        if (pending == kAny || r.step(rho, a) == pending) visit(rho);
}

bool closes(const LookaheadFt& t, State pending) { return pending == kAny || pending == t.lookahead().init(); }

template <class Weight>
detail::WeightedGraph weighted_product(const Dfa& p, const LookaheadFt& t, Weight&& weight) {
    require_same_alphabet(p.alphabet(), t.alphabet());
    using Node = std::tuple<State, State, State>;
    detail::WeightedGraph g(p.alphabet());
    std::map<Node, std::size_t> id;
    std::vector<Node> order;
    auto intern = [&](const Node& n) {
        auto [it, fresh] = id.try_emplace(n, order.size());
        if (fresh) {
            order.push_back(n);
            g.add_node(p.is_final(std::get<0>(n)) && closes(t, std::get<2>(n)));
        }
        return it->second;
    };
    intern({p.init(), t.init(), kAny});
    for (std::size_t head = 0; head < order.size(); ++head) {
        auto [ps, qs, pending] = order[head];
        for (std::size_t a = 0; a < p.alphabet().size(); ++a)
            guess_steps(t, pending, a, [&](State rho) {
                auto to = intern({p.step(ps, a), t.next(qs, rho, a), rho});
                g.add_edge(head, to, a, weight(a, t.output(qs, rho, a)));
            });
    }
    return g;
}

}  // namespace

std::optional<Word> lookahead_hoare_check(const Dfa& p, const LookaheadFt& t, const Dfa& q) {
    require_same_alphabet(p.alphabet(), t.alphabet());
    require_same_alphabet(p.alphabet(), q.alphabet());
    using Node = std::tuple<State, State, State, State>;
    struct Entry {
        Node node;
        std::size_t parent;
        std::size_t symbol;
    };
    std::vector<Entry> entries{{{p.init(), t.init(), q.init(), kAny}, static_cast<std::size_t>(-1), 0}};
    std::map<Node, std::size_t> seen{{entries[0].node, 0}};
    for (std::size_t head = 0; head < entries.size(); ++head) {
        auto [ps, ts, qs, pending] = entries[head].node;
        if (p.is_final(ps) && !q.is_final(qs) && closes(t, pending)) {
            Word w;
            for (auto i = head; entries[i].parent != static_cast<std::size_t>(-1); i = entries[i].parent)
                w += p.alphabet()[entries[i].symbol];
            return Word(w.rbegin(), w.rend());
        }
        for (std::size_t a = 0; a < p.alphabet().size(); ++a)
            guess_steps(t, pending, a, [&](State rho) {
                State qn = qs;
                for (Symbol c : t.output(ts, rho, a)) qn = q.step(qn, q.alphabet().require_index(c));
                Node next{p.step(ps, a), t.next(ts, rho, a), qn, rho};
                if (seen.try_emplace(next, entries.size()).second) entries.push_back({next, head, a});
            });
    }
    return std::nullopt;
}

std::optional<Word> lookahead_check_mean_aggregate(const Dfa& p, const LookaheadFt& t, const Rational& d) {
    if (d <= 0) throw InputError("distance bound must be positive");
    auto g = weighted_product(p, t, [&](std::size_t a, const Word& out) {
        return d.numerator() - d.denominator() * static_cast<std::int64_t>(transition_distance(p.alphabet()[a], out));
    });
    return g.find_below(0);
}

std::optional<Word> lookahead_check_total_aggregate(const Dfa& p, const LookaheadFt& t, std::int64_t bound) {
    if (bound < 0) throw InputError("total distance bound must be non-negative");
    auto g = weighted_product(p, t, [&](std::size_t a, const Word& out) {
        return -static_cast<std::int64_t>(transition_distance(p.alphabet()[a], out));
    });
    return g.find_below(-bound);
}

}  // namespace tsynth
