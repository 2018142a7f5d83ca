#pragma once

#include <map>
#include <optional>
#include <vector>

#include "tsynth/core/alphabet.hpp"

namespace tsynth::detail {

// Breadth-first search over an implicit graph whose edges are labelled by
// alphabet indices. Returns the label path to the first goal node found;
// symbols are expanded in alphabet order so the path is the shortest one
// that is least in that order among the shortest.
template <class Node, class Expand, class Goal>
std::optional<Word> bfs_path(const Alphabet& sigma, const Node& start, Expand&& expand, Goal&& goal) {
    struct Entry {
        Node node;
        std::size_t parent;
        std::size_t symbol;
    };
    std::vector<Entry> entries{{start, static_cast<std::size_t>(-1), 0}};
    std::map<Node, std::size_t> seen{{start, 0}};
    for (std::size_t head = 0; head < entries.size(); ++head) {
        if (goal(entries[head].node)) {
            Word w;
            for (std::size_t i = head; entries[i].parent != static_cast<std::size_t>(-1); i = entries[i].parent)
                w += sigma[entries[i].symbol];
            return Word(w.rbegin(), w.rend());
        }
        for (std::size_t a = 0; a < sigma.size(); ++a) {
            std::optional<Node> next = expand(entries[head].node, a);
            if (!next) continue;
            if (seen.try_emplace(*next, entries.size()).second) entries.push_back({*next, head, a});
        }
    }
    return std::nullopt;
}

}  // namespace tsynth::detail
