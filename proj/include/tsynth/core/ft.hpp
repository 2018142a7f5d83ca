#pragma once

#include <vector>

#include "tsynth/core/dfa.hpp"

namespace tsynth {

// Total deterministic finite transducer. Tables are row-major by
// (state, symbol index), as in Dfa.
class Ft {
public:
    Ft(Alphabet sigma, std::size_t num_states, State init, std::vector<State> next,
       std::vector<Word> out);

    static Ft identity(Alphabet sigma);

    const Alphabet& alphabet() const noexcept { return sigma_; }
    std::size_t num_states() const noexcept { return next_.size() / sigma_.size(); }
    State init() const noexcept { return init_; }
    State next(State q, std::size_t sym) const { return next_[q * sigma_.size() + sym]; }
    const Word& output(State q, std::size_t sym) const { return out_[q * sigma_.size() + sym]; }
    const std::vector<State>& next_table() const noexcept { return next_; }
    const std::vector<Word>& output_table() const noexcept { return out_; }
    std::size_t max_output_length() const;

    Word run(std::u32string_view w) const;
    // State sequence q0..qn of the run on w.
    std::vector<State> trace(std::u32string_view w) const;

    Ft with_transition(State q, std::size_t sym, State target, Word output) const;

    bool operator==(const Ft&) const = default;

private:
    Alphabet sigma_;
    State init_;
    std::vector<State> next_;
    std::vector<Word> out_;
};

}  // namespace tsynth
