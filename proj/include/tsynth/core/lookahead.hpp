#pragma once

#include <optional>
#include <vector>

#include "tsynth/core/distance.hpp"
#include "tsynth/core/ft.hpp"

namespace tsynth {

// Transducer whose transitions read (lookahead state, symbol) pairs. The
// lookahead automaton runs over the reversed input: at position i the
// transducer sees the state reached on a_{n-1} ... a_{i+1}.
// Tables are indexed [(q * |Q_R| + rho) * |alphabet| + symbol].
class LookaheadFt {
public:
    LookaheadFt(std::size_t num_states, State init, Dfa lookahead, std::vector<State> next, std::vector<Word> out);

    const Alphabet& alphabet() const noexcept { return r_.alphabet(); }
    const Dfa& lookahead() const noexcept { return r_; }
    std::size_t num_states() const noexcept { return next_.size() / (r_.num_states() * alphabet().size()); }
    std::size_t num_lookahead_states() const noexcept { return r_.num_states(); }
    State init() const noexcept { return init_; }

    std::size_t index(State q, State rho, std::size_t sym) const {
        return (q * r_.num_states() + rho) * alphabet().size() + sym;
    }
    State next(State q, State rho, std::size_t sym) const { return next_[index(q, rho, sym)]; }
    const Word& output(State q, State rho, std::size_t sym) const { return out_[index(q, rho, sym)]; }
    std::size_t max_output_length() const;

    std::vector<State> look(std::u32string_view w) const;
    Word run(std::u32string_view w) const;

    bool operator==(const LookaheadFt&) const = default;

private:
    State init_;
    Dfa r_;
    std::vector<State> next_;
    std::vector<Word> out_;
};

std::optional<Word> lookahead_hoare_check(const Dfa& p, const LookaheadFt& t, const Dfa& q);
std::optional<Word> lookahead_check_mean_aggregate(const Dfa& p, const LookaheadFt& t, const Rational& d);
std::optional<Word> lookahead_check_total_aggregate(const Dfa& p, const LookaheadFt& t, std::int64_t bound);
std::size_t lookahead_aggregate_cost(const LookaheadFt& t, std::u32string_view w);

}  // namespace tsynth
