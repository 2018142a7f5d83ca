#pragma once

#include <optional>
#include <utility>

#include "tsynth/core/distance.hpp"
#include "tsynth/core/ft.hpp"
#include "tsynth/encoder/formula.hpp"

namespace tsynth {

using Example = std::pair<Word, Word>;

// Names and shapes of the unknowns of one encoding. A transducer with k
// states over sigma, outputs of length at most l, and optionally a lookahead
// automaton with lookahead_states states. Transitions are indexed by
// (state, column) where column = rho * |sigma| + symbol, rho being the
// lookahead state (always 0 without lookahead).
class VarRegistry {
public:
    VarRegistry(std::size_t k, Alphabet sigma, std::size_t l, std::size_t lookahead_states = 0);

    std::size_t k() const noexcept { return k_; }
    const Alphabet& alphabet() const noexcept { return sigma_; }
    std::size_t l() const noexcept { return l_; }
    bool has_lookahead() const noexcept { return kr_ > 0; }
    std::size_t lookahead_states() const noexcept { return kr_ == 0 ? 1 : kr_; }
    std::size_t columns() const noexcept { return lookahead_states() * sigma_.size(); }

    Expr dst(State q, std::size_t col) const;
    Expr out_char(State q, std::size_t col, std::size_t z) const;
    Expr out_len(State q, std::size_t col) const;
    Expr look_step(State rho, std::size_t sym) const;

    // Declarations and range assertions for the unknown machine(s).
    const Formula& base() const noexcept { return base_; }

    std::size_t next_example_id() { return examples_++; }

    // Bookkeeping shared between the type and distance families.
    struct Simulation {
        Dfa p;
        Dfa q;
        std::vector<bool> live;
    };
    const std::optional<Simulation>& simulation() const noexcept { return sim_; }
    void set_simulation(Simulation s) { sim_ = std::move(s); }
    bool edit_distance_encoded() const noexcept { return ed_done_; }
    void mark_edit_distance() { ed_done_ = true; }

private:
    std::size_t k_;
    Alphabet sigma_;
    std::size_t l_;
    std::size_t kr_;
    Formula base_;
    std::size_t examples_ = 0;
    std::optional<Simulation> sim_;
    bool ed_done_ = false;
};

VarRegistry declare_transducer_vars(std::size_t k, const Alphabet& sigma, std::size_t l,
                                    std::size_t lookahead_states = 0);

Formula encode_example(VarRegistry& reg, const Example& ex);
Formula encode_types(VarRegistry& reg, const Dfa& p, const Dfa& q);
// Requires encode_types for the same P and Q on this registry.
Formula encode_distance(VarRegistry& reg, const Rational& d);
Formula encode_bounded_distance(VarRegistry& reg, std::int64_t bound);
// Examples and (optionally) types for a registry with lookahead.
Formula encode_lookahead(VarRegistry& reg, const std::vector<Example>& examples,
                         const std::optional<std::pair<Dfa, Dfa>>& types);

struct Pin {
    State from;
    std::size_t column;
    State to;
    Word out;
    bool operator==(const Pin&) const = default;
};

Formula encode_template(const VarRegistry& reg, const std::vector<Pin>& pins);
// Pins every transition of t except those listed.
std::vector<Pin> pins_from(const Ft& t, const std::vector<std::pair<State, std::size_t>>& except = {});

}  // namespace tsynth
