#pragma once

#include <map>
#include <tuple>
#include <vector>

#include "tsynth/core/ft.hpp"
#include "tsynth/core/regex.hpp"

namespace fixtures {

using tsynth::Alphabet;
using tsynth::Ft;
using tsynth::State;
using tsynth::Word;

struct Move {
    State from;
    char32_t on;
    Word out;
    State to;
};

// Builds a total FT; transitions not listed go to `sink` copying their input.
inline Ft make_ft(const Alphabet& sigma, std::size_t states, const std::vector<Move>& moves,
                  std::optional<State> sink = std::nullopt) {
    std::vector<State> next(states * sigma.size(), sink.value_or(0));
    std::vector<Word> out(states * sigma.size());
    std::vector<bool> set(states * sigma.size(), false);
    for (const auto& m : moves) {
        auto i = m.from * sigma.size() + sigma.require_index(m.on);
        next[i] = m.to;
        out[i] = m.out;
        set[i] = true;
    }
    for (std::size_t i = 0; i < set.size(); ++i) {
        if (set[i]) continue;
        if (!sink) throw std::logic_error("fixture transducer is not total");
        out[i] = Word(1, sigma[i % sigma.size()]);
    }
    return Ft(sigma, states, 0, std::move(next), std::move(out));
}

inline Alphabet quotes() { return Alphabet::from_word(U"a\"\\"); }

// The escaping transducer: a/a and "/\" loop on q0, \ moves to q1 which
// copies the next character and returns to q0.
inline Ft escape_quotes() {
    return make_ft(quotes(), 2,
                   {{0, U'a', U"a", 0},
                    {0, U'"', U"\\\"", 0},
                    {0, U'\\', U"\\", 1},
                    {1, U'a', U"a", 0},
                    {1, U'"', U"\"", 0},
                    {1, U'\\', U"\\", 0}});
}

// Type regexes exactly as printed in the running example.
inline const char32_t* quotes_input_regex() { return U"[a\"]*\\\\?|([a\"]*\\\\[a\"\\\\][a\"]*)*"; }
inline const char32_t* quotes_output_regex() { return U"a*\\\\?|(a*\\\\[a\"\\\\]a*)*"; }

inline std::vector<std::pair<Word, Word>> quotes_examples() {
    return {{U"a\"a", U"a\\\"a"}, {U"a\\\\a", U"a\\\\a"}, {U"a\\a", U"a\\a"}, {U"a\\\"a", U"a\\\"a"}, {U"\\", U"\\"}};
}

inline Alphabet ab() { return Alphabet::from_word(U"ab"); }

// Delayed-output machine and its undelayed equivalent on a(ba)*a.
inline Ft delayed() {
    return make_ft(ab(), 4, {{0, U'a', U"", 1}, {1, U'b', U"a", 2}, {2, U'a', U"b", 1}, {1, U'a', U"a", 3}}, 3);
}
inline Ft undelayed() {
    return make_ft(ab(), 4, {{0, U'a', U"a", 1}, {1, U'b', U"b", 2}, {2, U'a', U"a", 1}, {1, U'a', U"", 3}}, 3);
}

}  // namespace fixtures

namespace fixtures {

// Tag extraction: "a" stands for any character other than < and >.
inline Alphabet tags() { return Alphabet::from_word(U"<>a"); }
inline const char32_t* tags_input_regex() { return U"(a|<|<a>)*"; }
inline const char32_t* tags_output_regex() { return U"(<a>)*"; }
inline std::vector<std::pair<Word, Word>> tags_examples() {
    return {{U"<a>", U"<a>"}, {U"a<a>a", U"<a>"}, {U"<<a>", U"<a>"}, {U"<a", U""}, {U"<a><a>", U"<a><a>"}};
}

inline Alphabet abcd() { return Alphabet::from_word(U"abcd"); }

// Translation a(ba)^n a -> (ab)^n a.
inline std::vector<std::pair<Word, Word>> undelay_examples() {
    return {{U"aa", U"a"}, {U"abaa", U"aba"}, {U"ababaa", U"ababa"}};
}

}  // namespace fixtures

namespace fixtures {

// Types the reference escaping machine satisfies.
inline const char32_t* quotes_fitting_input_regex() { return U"([a\"]|\\\\[a\"\\\\])*\\\\?"; }
inline const char32_t* quotes_fitting_output_regex() { return U"(a|\\\\[a\"\\\\])*\\\\?"; }

struct Fault {
    State from;
    char32_t on;
    State to;
    Word out;
};

// Single-transition faults: an unescaped quote, a lost escape state, and a
// doubled escape after a backslash.
inline std::vector<Fault> quote_faults() {
    return {{0, U'"', 0, U"\""}, {0, U'\\', 0, U"\\"}, {1, U'"', 0, U"\\\""}};
}

inline Ft inject(const Ft& t, const Fault& f) {
    return t.with_transition(f.from, t.alphabet().require_index(f.on), f.to, f.out);
}

}  // namespace fixtures
