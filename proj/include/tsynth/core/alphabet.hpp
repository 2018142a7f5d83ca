#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "tsynth/core/word.hpp"

namespace tsynth {

// Finite ordered alphabet. The order given at construction is the
// tie-breaking order used by every search in the library.
class Alphabet {
public:
    explicit Alphabet(std::vector<Symbol> symbols);
    static Alphabet from_word(std::u32string_view symbols);

    std::size_t size() const noexcept { return symbols_.size(); }
    Symbol operator[](std::size_t i) const { return symbols_.at(i); }
    const std::vector<Symbol>& symbols() const noexcept { return symbols_; }

    std::optional<std::size_t> index_of(Symbol c) const;
    std::size_t require_index(Symbol c) const;
    bool contains(Symbol c) const { return index_of(c).has_value(); }

    std::vector<std::size_t> encode(std::u32string_view w) const;
    Word decode(const std::vector<std::size_t>& idx) const;

    bool operator==(const Alphabet& other) const { return symbols_ == other.symbols_; }

private:
    std::vector<Symbol> symbols_;
    std::vector<std::pair<Symbol, std::size_t>> sorted_;
};

void require_same_alphabet(const Alphabet& a, const Alphabet& b);

}  // namespace tsynth
