#include "tsynth/symbolic/machines.hpp"

#include <algorithm>

#include "tsynth/core/errors.hpp"

namespace tsynth {

Symbol OutputFunc::apply(Symbol x) const {
    switch (kind_) {
        case Kind::Identity: return x;
        case Kind::Const: return value_;
        case Kind::Offset: {
            long y = static_cast<long>(x) + delta_;
            if (y < 0 || y > static_cast<long>(kMaxCodePoint))
                throw ConstructionError("offset moves characters outside the code-point range");
            return static_cast<Symbol>(y);
        }
    }
    return x;
}

IntervalPred OutputFunc::image(const IntervalPred& guard) const {
    switch (kind_) {
        case Kind::Identity: return guard;
        case Kind::Const: return IntervalPred::single(value_);
        case Kind::Offset: return guard.shifted(delta_);
    }
    return guard;
}

namespace {

template <class Move>
void check_moves(const Universe& u, std::size_t n, const std::vector<Move>& moves) {
    std::vector<IntervalPred> covered(n);
    for (const auto& m : moves) {
        if (m.from >= n || m.to >= n) throw InputError("transition state out of range");
        if (m.guard.empty()) continue;
        if (covered[m.from].intersects(m.guard))
            throw InputError("symbolic machine is not deterministic at state " + std::to_string(m.from));
        covered[m.from] = covered[m.from] | m.guard;
    }
    auto all = IntervalPred::all(u);
    for (std::size_t q = 0; q < n; ++q)
        if (!all.subset_of(covered[q]))
            throw InputError("symbolic machine is not total at state " + std::to_string(q));
}

template <class Move>
const Move& find_move(const std::vector<Move>& moves, State q, Symbol c) {
    for (const auto& m : moves)
        if (m.from == q && m.guard.contains(c)) return m;
    throw InputError("character " + quote(Word(1, c)) + " is outside the universe");
}

}  // namespace

Sfa::Sfa(Universe u, std::size_t num_states, State init, std::vector<bool> finals, std::vector<SfaMove> moves)
    : u_(u), init_(init), finals_(std::move(finals)), moves_(std::move(moves)) {
    if (num_states == 0 || finals_.size() != num_states) throw InputError("bad state count in symbolic automaton");
    if (init_ >= num_states) throw InputError("initial state out of range");
    check_moves(u_, num_states, moves_);
}

std::vector<IntervalPred> Sfa::predicates() const {
    std::vector<IntervalPred> out;
    for (const auto& m : moves_) out.push_back(m.guard);
    return out;
}

State Sfa::step(State q, Symbol c) const { return find_move(moves_, q, c).to; }

bool Sfa::accepts(std::u32string_view w) const {
    State q = init_;
    for (Symbol c : w) q = step(q, c);
    return finals_[q];
}

Sft::Sft(Universe u, std::size_t num_states, State init, std::vector<SftMove> moves)
    : u_(u), n_(num_states), init_(init), moves_(std::move(moves)) {
    if (num_states == 0) throw InputError("bad state count in symbolic transducer");
    if (init_ >= num_states) throw InputError("initial state out of range");
    check_moves(u_, n_, moves_);
    for (const auto& m : moves_)
        for (const auto& f : m.out) (void)f.image(m.guard);
}

std::vector<IntervalPred> Sft::predicates() const {
    std::vector<IntervalPred> out;
    for (const auto& m : moves_) {
        out.push_back(m.guard);
        for (const auto& f : m.out)
            if (f.kind() != OutputFunc::Kind::Identity && !m.guard.empty()) out.push_back(f.image(m.guard));
    }
    return out;
}

std::size_t Sft::max_output_length() const {
    std::size_t l = 0;
    for (const auto& m : moves_) l = std::max(l, m.out.size());
    return l;
}

const SftMove& Sft::move(State q, Symbol c) const { return find_move(moves_, q, c); }

Word Sft::run(std::u32string_view w) const {
    Word out;
    State q = init_;
    for (Symbol c : w) {
        const auto& m = move(q, c);
        for (const auto& f : m.out) out += f.apply(c);
        q = m.to;
    }
    return out;
}

Dfa finitize_sfa(const Sfa& m, const MintermMap& mm) {
    if (!(m.universe() == mm.universe())) throw InputError("minterm universe differs from the automaton's");
    const auto k = mm.size();
    std::vector<State> delta(m.num_states() * k);
    for (State q = 0; q < m.num_states(); ++q)
        for (std::size_t i = 0; i < k; ++i) {
            const auto& mv = find_move(m.moves(), q, mm.minterms()[i].witness);
            if (!mm.minterms()[i].pred.subset_of(mv.guard))
                throw InputError("minterm " + describe(mm.minterms()[i].pred) + " splits guard " + describe(mv.guard));
            delta[q * k + i] = mv.to;
        }
    return Dfa(mm.alphabet(), m.num_states(), m.init(), m.finals(), std::move(delta));
}

Ft finitize_sft(const Sft& m, const MintermMap& mm) {
    if (!(m.universe() == mm.universe())) throw InputError("minterm universe differs from the transducer's");
    const auto k = mm.size();
    std::vector<State> next(m.num_states() * k);
    std::vector<Word> out(m.num_states() * k);
    for (State q = 0; q < m.num_states(); ++q)
        for (std::size_t i = 0; i < k; ++i) {
            Symbol w = mm.minterms()[i].witness;
            const auto& mv = m.move(q, w);
            if (!mm.minterms()[i].pred.subset_of(mv.guard))
                throw InputError("minterm " + describe(mm.minterms()[i].pred) + " splits guard " + describe(mv.guard));
            next[q * k + i] = mv.to;
            for (const auto& f : mv.out) {
                Symbol y = f.apply(w);
                if (!mm.alphabet().contains(y))
                    throw ConstructionError("output " + quote(Word(1, y)) + " is not a minterm witness");
                out[q * k + i] += y;
            }
        }
    return Ft(mm.alphabet(), m.num_states(), m.init(), std::move(next), std::move(out));
}

std::pair<Dfa, MintermMap> finitize_sfa(const Sfa& m) {
    MintermMap mm(m.predicates(), m.universe());
    auto d = finitize_sfa(m, mm);
    return {std::move(d), std::move(mm)};
}

std::pair<Ft, MintermMap> finitize_sft(const Sft& m) {
    MintermMap mm(m.predicates(), m.universe());
    auto t = finitize_sft(m, mm);
    return {std::move(t), std::move(mm)};
}

namespace {

OutputFunc recover_char(Symbol c, Symbol y, const MintermMap& mm) {
    if (c == y) return OutputFunc::identity();
    const auto& in = mm.pred_of_witness(c).intervals();
    const auto& out = mm.minterms()[mm.index_of(y)].pred.intervals();
    if (in.size() == 1 && out.size() == 1 && in[0].size() == out[0].size()) {
        long delta = static_cast<long>(out[0].lo) - static_cast<long>(in[0].lo);
        if (static_cast<long>(c) + delta == static_cast<long>(y)) return OutputFunc::offset(delta);
    }
    return OutputFunc::constant(y);
}

}  // namespace

Sft recover_sft(const Ft& t, const MintermMap& mm) {
    std::vector<SftMove> moves;
    const auto& sigma = t.alphabet();
    for (State q = 0; q < t.num_states(); ++q)
        for (std::size_t a = 0; a < sigma.size(); ++a) {
            Symbol c = sigma[a];
            std::vector<OutputFunc> fs;
            for (Symbol y : t.output(q, a)) fs.push_back(recover_char(c, y, mm));
            moves.push_back({q, mm.pred_of_witness(c), std::move(fs), t.next(q, a)});
        }
    // Minterms absent from t's alphabet would leave the machine partial.
    for (const auto& m : mm.minterms())
        if (!sigma.contains(m.witness)) throw InputError("transducer alphabet does not cover every minterm");
    return Sft(mm.universe(), t.num_states(), t.init(), std::move(moves));
}

namespace {

IntervalPred leaf_pred(const Regex& leaf, const Universe& u) {
    if (leaf.kind() == Regex::Kind::Literal) return IntervalPred::single(leaf.symbol());
    std::vector<Interval> iv;
    for (const auto& r : leaf.ranges()) iv.push_back({r.lo, r.hi});
    IntervalPred p(std::move(iv));
    return leaf.negated() ? p.complement(u) : p & IntervalPred::all(u);
}

}  // namespace

std::vector<IntervalPred> regex_predicates(const Regex& re, const Universe& u) {
    std::vector<IntervalPred> out;
    re.for_each_leaf([&](const Regex& leaf) { out.push_back(leaf_pred(leaf, u)); });
    return out;
}

LeafResolver minterm_resolver(const MintermMap& mm) {
    return [&mm](const Regex& leaf) {
        auto p = leaf_pred(leaf, mm.universe());
        if (leaf.kind() == Regex::Kind::Literal && !mm.universe().contains(leaf.symbol()))
            throw InputError("regex literal " + quote(Word(1, leaf.symbol())) + " is outside the universe");
        return mm.cover(p);
    };
}

Dfa compile_regex(const Regex& re, const MintermMap& mm) { return compile_regex(re, mm.alphabet(), minterm_resolver(mm)); }

}  // namespace tsynth
