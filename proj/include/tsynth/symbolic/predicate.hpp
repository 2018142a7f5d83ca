#pragma once

#include <optional>
#include <vector>

#include "tsynth/core/word.hpp"

namespace tsynth {

struct Interval {
    Symbol lo;
    Symbol hi;
    std::size_t size() const noexcept { return static_cast<std::size_t>(hi - lo) + 1; }
    bool operator==(const Interval&) const = default;
};

// Code points a symbolic machine ranges over. Defaults to 7-bit ASCII.
struct Universe {
    Symbol lo = 0;
    Symbol hi = 0x7F;
    bool contains(Symbol c) const noexcept { return lo <= c && c <= hi; }
    bool operator==(const Universe&) const = default;
};

inline constexpr Symbol kMaxCodePoint = 0x10FFFF;

// Union of closed code-point intervals kept sorted, disjoint and
// non-adjacent, so equal sets compare equal.
class IntervalPred {
public:
    IntervalPred() = default;
    explicit IntervalPred(std::vector<Interval> intervals);

    static IntervalPred single(Symbol c) { return IntervalPred({{c, c}}); }
    static IntervalPred range(Symbol lo, Symbol hi) { return IntervalPred({{lo, hi}}); }
    static IntervalPred all(const Universe& u) { return range(u.lo, u.hi); }

    const std::vector<Interval>& intervals() const noexcept { return iv_; }
    bool empty() const noexcept { return iv_.empty(); }
    bool contains(Symbol c) const;
    std::size_t count() const;
    // Least member, if any.
    std::optional<Symbol> min() const;

    IntervalPred operator&(const IntervalPred& o) const;
    IntervalPred operator|(const IntervalPred& o) const;
    IntervalPred operator-(const IntervalPred& o) const;
    IntervalPred complement(const Universe& u) const;
    bool intersects(const IntervalPred& o) const { return !(*this & o).empty(); }
    bool subset_of(const IntervalPred& o) const { return (*this - o).empty(); }
    // Every interval moved by delta; throws ConstructionError outside the code-point range.
    IntervalPred shifted(long delta) const;

    bool operator==(const IntervalPred&) const = default;

private:
    std::vector<Interval> iv_;
};

std::string describe(const IntervalPred& p);

}  // namespace tsynth
