#include "tsynth/core/ft.hpp"

#include <algorithm>

#include "tsynth/core/errors.hpp"

namespace tsynth {

Ft::Ft(Alphabet sigma, std::size_t num_states, State init, std::vector<State> next,
       std::vector<Word> out)
    : sigma_(std::move(sigma)), init_(init), next_(std::move(next)), out_(std::move(out)) {
    if (num_states == 0) throw InputError("transducer needs at least one state");
    const auto cells = num_states * sigma_.size();
    if (next_.size() != cells || out_.size() != cells) throw InputError("transducer tables are not total");
    if (init_ >= num_states) throw InputError("initial state out of range");
    for (State t : next_)
        if (t >= num_states) throw InputError("transition target out of range");
    for (const Word& y : out_)
        for (Symbol c : y) sigma_.require_index(c);
}

Ft Ft::identity(Alphabet sigma) {
    std::vector<Word> out;
    for (Symbol c : sigma.symbols()) out.emplace_back(1, c);
    auto n = sigma.size();
    return Ft(std::move(sigma), 1, 0, std::vector<State>(n, 0), std::move(out));
}

std::size_t Ft::max_output_length() const {
    std::size_t m = 0;
    for (const Word& y : out_) m = std::max(m, y.size());
    return m;
}

Word Ft::run(std::u32string_view w) const {
    Word result;
    State q = init_;
    for (Symbol c : w) {
        auto a = sigma_.require_index(c);
        result += output(q, a);
        q = next(q, a);
    }
    return result;
}

std::vector<State> Ft::trace(std::u32string_view w) const {
    std::vector<State> states{init_};
    State q = init_;
    for (Symbol c : w) {
        q = next(q, sigma_.require_index(c));
        states.push_back(q);
    }
    return states;
}

Ft Ft::with_transition(State q, std::size_t sym, State target, Word output) const {
    auto next = next_;
    auto out = out_;
    next.at(q * sigma_.size() + sym) = target;
    out.at(q * sigma_.size() + sym) = std::move(output);
    return Ft(sigma_, num_states(), init_, std::move(next), std::move(out));
}

}  // namespace tsynth
