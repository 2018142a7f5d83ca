#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "tsynth/core/alphabet.hpp"

namespace tsynth {

using State = std::uint32_t;

// Total deterministic automaton. Transitions are stored row-major:
// delta[state * |alphabet| + symbol_index].
class Dfa {
public:
    Dfa(Alphabet sigma, std::size_t num_states, State init, std::vector<bool> finals,
        std::vector<State> delta);

    static Dfa empty_language(Alphabet sigma);
    static Dfa universal(Alphabet sigma);

    const Alphabet& alphabet() const noexcept { return sigma_; }
    std::size_t num_states() const noexcept { return finals_.size(); }
    State init() const noexcept { return init_; }
    bool is_final(State s) const { return finals_.at(s); }
    const std::vector<bool>& finals() const noexcept { return finals_; }
    State step(State s, std::size_t sym) const { return delta_[s * sigma_.size() + sym]; }
    const std::vector<State>& table() const noexcept { return delta_; }

    State run(State from, std::u32string_view w) const;
    bool accepts(std::u32string_view w) const;

    // Reachable from init and able to reach a final state.
    std::vector<bool> live_states() const;
    std::vector<bool> reachable_states() const;
    std::vector<bool> coreachable_states() const;

    bool operator==(const Dfa&) const = default;

private:
    Alphabet sigma_;
    State init_;
    std::vector<bool> finals_;
    std::vector<State> delta_;
};

enum class BoolOp { Complement, Intersect, Union, Difference };

Dfa dfa_boolean(BoolOp op, const Dfa& a, const std::optional<Dfa>& b = std::nullopt);
Dfa dfa_complement(const Dfa& a);
Dfa dfa_intersect(const Dfa& a, const Dfa& b);
Dfa dfa_union(const Dfa& a, const Dfa& b);
Dfa dfa_difference(const Dfa& a, const Dfa& b);

// Shortest accepted string, ties broken by alphabet order.
std::optional<Word> dfa_emptiness(const Dfa& a);
bool dfa_is_empty(const Dfa& a);
bool dfa_equivalent(const Dfa& a, const Dfa& b);

// Hopcroft refinement over the reachable part followed by BFS renumbering.
Dfa minimize(const Dfa& a);

// Nondeterministic automaton with epsilon moves, used as an intermediate.
struct Nfa {
    static constexpr std::size_t kEpsilon = static_cast<std::size_t>(-1);
    struct Edge {
        std::size_t symbol;
        State target;
    };

    explicit Nfa(Alphabet s) : sigma(std::move(s)) {}

    State add_state(bool final = false) {
        edges.emplace_back();
        finals.push_back(final);
        return static_cast<State>(edges.size() - 1);
    }
    void add_edge(State from, std::size_t symbol, State to) { edges[from].push_back({symbol, to}); }

    Alphabet sigma;
    std::vector<std::vector<Edge>> edges;
    std::vector<bool> finals;
    State init = 0;
};

// Subset construction; result is total, minimized and canonically numbered.
Dfa determinize(const Nfa& n);

}  // namespace tsynth
