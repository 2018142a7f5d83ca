#include "tsynth/core/alphabet.hpp"

#include <algorithm>

#include "tsynth/core/errors.hpp"

namespace tsynth {

Alphabet::Alphabet(std::vector<Symbol> symbols) : symbols_(std::move(symbols)) {
    if (symbols_.empty()) throw InputError("alphabet must not be empty");
    sorted_.reserve(symbols_.size());
    for (std::size_t i = 0; i < symbols_.size(); ++i) sorted_.emplace_back(symbols_[i], i);
    std::sort(sorted_.begin(), sorted_.end());
    for (std::size_t i = 1; i < sorted_.size(); ++i)
        if (sorted_[i].first == sorted_[i - 1].first)
            throw InputError("duplicate alphabet symbol " + quote(Word(1, sorted_[i].first)));
}

Alphabet Alphabet::from_word(std::u32string_view symbols) {
    return Alphabet(std::vector<Symbol>(symbols.begin(), symbols.end()));
}

std::optional<std::size_t> Alphabet::index_of(Symbol c) const {
    auto it = std::lower_bound(sorted_.begin(), sorted_.end(), std::pair<Symbol, std::size_t>{c, 0});
    if (it == sorted_.end() || it->first != c) return std::nullopt;
    return it->second;
}

std::size_t Alphabet::require_index(Symbol c) const {
    if (auto i = index_of(c)) return *i;
    throw InputError("symbol " + quote(Word(1, c)) + " is not in the alphabet");
}

std::vector<std::size_t> Alphabet::encode(std::u32string_view w) const {
    std::vector<std::size_t> out;
    out.reserve(w.size());
    for (Symbol c : w) out.push_back(require_index(c));
    return out;
}

Word Alphabet::decode(const std::vector<std::size_t>& idx) const {
    Word out;
    for (auto i : idx) out += symbols_.at(i);
    return out;
}

void require_same_alphabet(const Alphabet& a, const Alphabet& b) {
    if (!(a == b)) throw InputError("alphabet mismatch");
}

}  // namespace tsynth
