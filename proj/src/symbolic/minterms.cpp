#include "tsynth/symbolic/minterms.hpp"

#include <algorithm>

#include "tsynth/core/errors.hpp"

namespace tsynth {

int witness_rank(Symbol c) {
    if (c >= U'a' && c <= U'z') return 0;
    if (c >= U'A' && c <= U'Z') return 1;
    if (c >= U'0' && c <= U'9') return 2;
    if (c >= 0x20 && c <= 0x7E) return 3;
    return 4;
}

Symbol preferred_member(const IntervalPred& p) {
    if (p.empty()) throw InputError("empty predicate has no member");
    static const IntervalPred bands[] = {IntervalPred::range(U'a', U'z'), IntervalPred::range(U'A', U'Z'),
                                         IntervalPred::range(U'0', U'9'), IntervalPred::range(0x20, 0x7E)};
    for (const auto& band : bands)
        if (auto m = (p & band).min()) return *m;
    return *p.min();
}

namespace {

std::vector<Minterm> refine(const std::vector<IntervalPred>& preds, const Universe& u) {
    if (u.lo > u.hi) throw InputError("empty universe");
    std::vector<IntervalPred> blocks{IntervalPred::all(u)};
    for (const auto& p : preds) {
        std::vector<IntervalPred> next;
        for (const auto& b : blocks) {
            auto in = b & p;
            auto out = b - p;
            if (!in.empty()) next.push_back(std::move(in));
            if (!out.empty()) next.push_back(std::move(out));
        }
        blocks = std::move(next);
    }
    std::vector<Minterm> out;
    for (auto& b : blocks) {
        Symbol w = preferred_member(b);
        out.push_back({std::move(b), w});
    }
    std::sort(out.begin(), out.end(), [](const Minterm& a, const Minterm& b) {
        return std::pair(witness_rank(a.witness), a.witness) < std::pair(witness_rank(b.witness), b.witness);
    });
    return out;
}

std::vector<Symbol> witnesses(const std::vector<Minterm>& ms) {
    std::vector<Symbol> w;
    for (const auto& m : ms) w.push_back(m.witness);
    return w;
}

}  // namespace

MintermMap::MintermMap(std::vector<IntervalPred> preds, Universe universe)
    : universe_(universe), minterms_(refine(preds, universe)), sigma_(witnesses(minterms_)) {}

std::size_t MintermMap::index_of(Symbol c) const {
    for (std::size_t i = 0; i < minterms_.size(); ++i)
        if (minterms_[i].pred.contains(c)) return i;
    throw InputError("character " + quote(Word(1, c)) + " is outside the universe");
}

const IntervalPred& MintermMap::pred_of_witness(Symbol w) const { return minterms_[sigma_.require_index(w)].pred; }

Word MintermMap::project(std::u32string_view w) const {
    Word out;
    for (Symbol c : w) out += witness_of(c);
    return out;
}

std::vector<std::size_t> MintermMap::cover(const IntervalPred& p) const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < minterms_.size(); ++i) {
        const auto& m = minterms_[i].pred;
        if (!m.intersects(p)) continue;
        if (!m.subset_of(p))
            throw InputError("predicate " + describe(p) + " splits minterm " + describe(m));
        out.push_back(i);
    }
    return out;
}

MintermMap compute_minterms(const std::vector<IntervalPred>& preds, const Universe& universe) {
    return MintermMap(preds, universe);
}

}  // namespace tsynth
