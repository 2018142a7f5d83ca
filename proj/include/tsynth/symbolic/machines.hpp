#pragma once

#include <utility>
#include <vector>

#include "tsynth/core/ft.hpp"
#include "tsynth/core/regex.hpp"
#include "tsynth/symbolic/minterms.hpp"

namespace tsynth {

class OutputFunc {
public:
    enum class Kind { Identity, Offset, Const };

    static OutputFunc identity() { return OutputFunc(Kind::Identity, 0, 0); }
    static OutputFunc offset(long k) { return OutputFunc(Kind::Offset, k, 0); }
    static OutputFunc constant(Symbol c) { return OutputFunc(Kind::Const, 0, c); }

    Kind kind() const noexcept { return kind_; }
    long delta() const noexcept { return delta_; }
    Symbol value() const noexcept { return value_; }

    // Throws ConstructionError when an offset leaves the code-point range.
    Symbol apply(Symbol x) const;
    // Image of a guard under this function.
    IntervalPred image(const IntervalPred& guard) const;

    bool operator==(const OutputFunc&) const = default;

private:
    OutputFunc(Kind k, long d, Symbol v) : kind_(k), delta_(d), value_(v) {}
    Kind kind_;
    long delta_;
    Symbol value_;
};

struct SfaMove {
    State from;
    IntervalPred guard;
    State to;
    bool operator==(const SfaMove&) const = default;
};

struct SftMove {
    State from;
    IntervalPred guard;
    std::vector<OutputFunc> out;
    State to;
    bool operator==(const SftMove&) const = default;
};

// Symbolic automaton; deterministic and total over its universe.
class Sfa {
public:
    Sfa(Universe u, std::size_t num_states, State init, std::vector<bool> finals, std::vector<SfaMove> moves);

    const Universe& universe() const noexcept { return u_; }
    std::size_t num_states() const noexcept { return finals_.size(); }
    State init() const noexcept { return init_; }
    const std::vector<bool>& finals() const noexcept { return finals_; }
    const std::vector<SfaMove>& moves() const noexcept { return moves_; }
    std::vector<IntervalPred> predicates() const;

    State step(State q, Symbol c) const;
    bool accepts(std::u32string_view w) const;

    bool operator==(const Sfa&) const = default;

private:
    Universe u_;
    State init_;
    std::vector<bool> finals_;
    std::vector<SfaMove> moves_;
};

// Symbolic transducer; deterministic and total over its universe.
class Sft {
public:
    Sft(Universe u, std::size_t num_states, State init, std::vector<SftMove> moves);

    const Universe& universe() const noexcept { return u_; }
    std::size_t num_states() const noexcept { return n_; }
    State init() const noexcept { return init_; }
    const std::vector<SftMove>& moves() const noexcept { return moves_; }
    // Guards, plus what finitization needs for outputs to stay on witnesses.
    std::vector<IntervalPred> predicates() const;
    std::size_t max_output_length() const;

    const SftMove& move(State q, Symbol c) const;
    Word run(std::u32string_view w) const;

    bool operator==(const Sft&) const = default;

private:
    Universe u_;
    std::size_t n_;
    State init_;
    std::vector<SftMove> moves_;
};

// Finite versions over the witness alphabet of a minterm map. The map must
// refine every guard of the machine.
Dfa finitize_sfa(const Sfa& m, const MintermMap& mm);
Ft finitize_sft(const Sft& m, const MintermMap& mm);
std::pair<Dfa, MintermMap> finitize_sfa(const Sfa& m);
std::pair<Ft, MintermMap> finitize_sft(const Sft& m);

// Per output character: identity, offset between equal-size single
// intervals, otherwise a constant.
Sft recover_sft(const Ft& t, const MintermMap& mm);

// Predicates of the leaves of a regex, for inclusion in a minterm map.
std::vector<IntervalPred> regex_predicates(const Regex& re, const Universe& u);
// Resolves regex leaves to minterm indices.
LeafResolver minterm_resolver(const MintermMap& mm);
Dfa compile_regex(const Regex& re, const MintermMap& mm);

}  // namespace tsynth
