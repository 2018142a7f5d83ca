#pragma once

#include <vector>

#include "tsynth/core/alphabet.hpp"
#include "tsynth/symbolic/predicate.hpp"

namespace tsynth {

struct Minterm {
    IntervalPred pred;
    Symbol witness;
    bool operator==(const Minterm&) const = default;
};

// Partition of a universe into minterms, each with a representative
// character. Minterms are ordered by witness preference, and that order is
// the order of the finite witness alphabet.
class MintermMap {
public:
    MintermMap(std::vector<IntervalPred> preds, Universe universe);

    const Universe& universe() const noexcept { return universe_; }
    const std::vector<Minterm>& minterms() const noexcept { return minterms_; }
    std::size_t size() const noexcept { return minterms_.size(); }
    const Alphabet& alphabet() const noexcept { return sigma_; }

    // Index of the minterm holding c; throws InputError outside the universe.
    std::size_t index_of(Symbol c) const;
    Symbol witness_of(Symbol c) const { return minterms_[index_of(c)].witness; }
    const IntervalPred& pred_of_witness(Symbol w) const;
    // Every character replaced by its witness.
    Word project(std::u32string_view w) const;
    // Indices of minterms intersecting p; p must be a union of minterms.
    std::vector<std::size_t> cover(const IntervalPred& p) const;

    bool operator==(const MintermMap& o) const { return universe_ == o.universe_ && minterms_ == o.minterms_; }

private:
    Universe universe_;
    std::vector<Minterm> minterms_;
    Alphabet sigma_;
};

// Ranking used to pick witnesses: lowercase, uppercase, digits, other
// printable ASCII, then everything else; ties by code point.
int witness_rank(Symbol c);
Symbol preferred_member(const IntervalPred& p);

MintermMap compute_minterms(const std::vector<IntervalPred>& preds, const Universe& universe = {});

}  // namespace tsynth
