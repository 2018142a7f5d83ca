#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "tsynth/core/alphabet.hpp"

namespace tsynth::detail {

// Edge-weighted graph with a single source (node 0) and a set of accepting
// nodes. Edges carry an alphabet index, or kSilent for edges that spell
// nothing.
class WeightedGraph {
public:
    static constexpr std::size_t kSilent = static_cast<std::size_t>(-1);

    explicit WeightedGraph(Alphabet sigma) : sigma_(std::move(sigma)) {}

    std::size_t add_node(bool accepting) {
        accepting_.push_back(accepting);
        return accepting_.size() - 1;
    }
    void add_edge(std::size_t from, std::size_t to, std::size_t symbol, std::int64_t weight) {
        edges_.push_back({from, to, symbol, weight});
    }

    // A word spelled by a source-to-accepting path of total weight < bound.
    // Paths through negative cycles are pumped until the bound is crossed.
    std::optional<Word> find_below(std::int64_t bound) const;

private:
    struct Edge {
        std::size_t from;
        std::size_t to;
        std::size_t symbol;
        std::int64_t weight;
    };

    Word spell(const std::vector<std::size_t>& edge_ids) const;
    std::int64_t weigh(const std::vector<std::size_t>& edge_ids) const;
    std::vector<std::size_t> hop_path(const std::vector<bool>& keep, std::size_t from,
                                      std::optional<std::size_t> to) const;

    Alphabet sigma_;
    std::vector<bool> accepting_;
    std::vector<Edge> edges_;
};

}  // namespace tsynth::detail
