#include "weighted.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <stdexcept>

namespace tsynth::detail {

namespace {

constexpr auto kNone = static_cast<std::size_t>(-1);

}  // namespace

Word WeightedGraph::spell(const std::vector<std::size_t>& edge_ids) const {
    Word w;
    for (auto e : edge_ids)
        if (edges_[e].symbol != kSilent) w += sigma_[edges_[e].symbol];
    return w;
}

std::int64_t WeightedGraph::weigh(const std::vector<std::size_t>& edge_ids) const {
    std::int64_t s = 0;
    for (auto e : edge_ids) s += edges_[e].weight;
    return s;
}

std::vector<std::size_t> WeightedGraph::hop_path(const std::vector<bool>& keep, std::size_t from,
                                                 std::optional<std::size_t> to) const {
    std::vector<std::vector<std::size_t>> out(accepting_.size());
    for (std::size_t e = 0; e < edges_.size(); ++e)
        if (keep[edges_[e].from] && keep[edges_[e].to]) out[edges_[e].from].push_back(e);
    std::vector<std::size_t> via(accepting_.size(), kNone);
    std::vector<bool> seen(accepting_.size(), false);
    std::deque<std::size_t> queue{from};
    seen[from] = true;
    while (!queue.empty()) {
        auto v = queue.front();
        queue.pop_front();
        if (to ? v == *to : static_cast<bool>(accepting_[v])) {
            std::vector<std::size_t> path;
            for (auto x = v; x != from; x = edges_[via[x]].from) path.push_back(via[x]);
            return {path.rbegin(), path.rend()};
        }
        for (auto e : out[v])
            if (!seen[edges_[e].to]) {
                seen[edges_[e].to] = true;
                via[edges_[e].to] = e;
                queue.push_back(edges_[e].to);
            }
    }
    throw std::logic_error("weighted graph: trimmed node without a path");
}

std::optional<Word> WeightedGraph::find_below(std::int64_t bound) const {
    const auto n = accepting_.size();
    if (n == 0) return std::nullopt;

    // Trim to nodes on some source-to-accepting path.
    std::vector<bool> fwd(n, false), bwd(n, false);
    {
        std::vector<std::vector<std::size_t>> succ(n), pred(n);
        for (const auto& e : edges_) {
            succ[e.from].push_back(e.to);
            pred[e.to].push_back(e.from);
        }
        std::vector<std::size_t> stack{0};
        fwd[0] = true;
        while (!stack.empty()) {
            auto v = stack.back();
            stack.pop_back();
            for (auto t : succ[v])
                if (!fwd[t]) fwd[t] = true, stack.push_back(t);
        }
        for (std::size_t v = 0; v < n; ++v)
            if (accepting_[v]) bwd[v] = true, stack.push_back(v);
        while (!stack.empty()) {
            auto v = stack.back();
            stack.pop_back();
            for (auto s : pred[v])
                if (!bwd[s]) bwd[s] = true, stack.push_back(s);
        }
    }
    std::vector<bool> keep(n);
    for (std::size_t v = 0; v < n; ++v) keep[v] = fwd[v] && bwd[v];
    if (!keep[0]) return std::nullopt;

    constexpr auto inf = std::numeric_limits<std::int64_t>::max();
    std::vector<std::int64_t> dist(n, inf);
    std::vector<std::size_t> pred(n, kNone);
    dist[0] = 0;
    std::size_t relaxed = kNone;
    for (std::size_t round = 0; round < n; ++round) {
        relaxed = kNone;
        for (std::size_t e = 0; e < edges_.size(); ++e) {
            const auto& edge = edges_[e];
            if (!keep[edge.from] || !keep[edge.to] || dist[edge.from] == inf) continue;
            if (dist[edge.from] + edge.weight < dist[edge.to]) {
                dist[edge.to] = dist[edge.from] + edge.weight;
                pred[edge.to] = e;
                relaxed = edge.to;
            }
        }
        if (relaxed == kNone) break;
    }

    if (relaxed != kNone) {
        std::size_t x = relaxed;
        for (std::size_t i = 0; i < n; ++i) x = edges_[pred[x]].from;
        std::vector<std::size_t> cycle;
        std::size_t v = x;
        do {
            cycle.push_back(pred[v]);
            v = edges_[pred[v]].from;
        } while (v != x);
        std::reverse(cycle.begin(), cycle.end());
        auto prefix = hop_path(keep, 0, x);
        auto suffix = hop_path(keep, x, std::nullopt);
        std::int64_t fixed = weigh(prefix) + weigh(suffix);
        std::int64_t loop = weigh(cycle);
        std::int64_t reps = 1;
        if (fixed - bound >= 0) reps = (fixed - bound) / (-loop) + 1;
        Word w = spell(prefix);
        Word c = spell(cycle);
        for (std::int64_t i = 0; i < reps; ++i) w += c;
        return w + spell(suffix);
    }

    std::optional<std::size_t> best;
    for (std::size_t v = 0; v < n; ++v)
        if (keep[v] && accepting_[v] && dist[v] < bound && (!best || dist[v] < dist[*best])) best = v;
    if (!best) return std::nullopt;
    std::vector<std::size_t> path;
    for (std::size_t v = *best; v != 0; v = edges_[pred[v]].from) path.push_back(pred[v]);
    return spell({path.rbegin(), path.rend()});
}

}  // namespace tsynth::detail
