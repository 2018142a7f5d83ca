#include "tsynth/core/errors.hpp"
#include "tsynth/solver/solver.hpp"

namespace tsynth {

namespace {

std::int64_t value_in(const Model& m, const Expr& var, std::int64_t lo, std::int64_t hi) {
    auto it = m.find(var.name());
    if (it == m.end()) throw DecodeError("model has no value for " + var.name());
    if (it->second < lo || it->second > hi)
        throw DecodeError("model value " + std::to_string(it->second) + " of " + var.name() + " is out of range");
    return it->second;
}

struct Tables {
    std::vector<State> next;
    std::vector<Word> out;
};

Tables decode_tables(const Model& m, const VarRegistry& reg) {
    Tables t;
    const auto k = static_cast<std::int64_t>(reg.k());
    const auto sigma = static_cast<std::int64_t>(reg.alphabet().size());
    const auto l = static_cast<std::int64_t>(reg.l());
    for (State q = 0; q < reg.k(); ++q)
        for (std::size_t col = 0; col < reg.columns(); ++col) {
            t.next.push_back(static_cast<State>(value_in(m, reg.dst(q, col), 0, k - 1)));
            auto len = static_cast<std::size_t>(value_in(m, reg.out_len(q, col), 0, l));
            Word w;
            for (std::size_t z = 0; z < len; ++z)
                w += reg.alphabet()[static_cast<std::size_t>(value_in(m, reg.out_char(q, col, z), 0, sigma - 1))];
            t.out.push_back(std::move(w));
        }
    return t;
}

}  // namespace

Ft decode_model(const Model& m, const VarRegistry& reg) {
    if (reg.has_lookahead()) throw DecodeError("registry has a lookahead automaton; decode it as a lookahead transducer");
    auto t = decode_tables(m, reg);
    return Ft(reg.alphabet(), reg.k(), 0, std::move(t.next), std::move(t.out));
}

LookaheadFt decode_lookahead_model(const Model& m, const VarRegistry& reg) {
    if (!reg.has_lookahead()) throw DecodeError("registry has no lookahead automaton");
    const auto kr = reg.lookahead_states();
    std::vector<State> delta;
    for (State r = 0; r < kr; ++r)
        for (std::size_t a = 0; a < reg.alphabet().size(); ++a)
            delta.push_back(static_cast<State>(value_in(m, reg.look_step(r, a), 0, static_cast<std::int64_t>(kr) - 1)));
    Dfa look(reg.alphabet(), kr, 0, std::vector<bool>(kr, false), std::move(delta));
    auto t = decode_tables(m, reg);
    return LookaheadFt(reg.k(), 0, std::move(look), std::move(t.next), std::move(t.out));
}

}  // namespace tsynth
