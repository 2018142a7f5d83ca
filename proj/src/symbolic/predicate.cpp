#include "tsynth/symbolic/predicate.hpp"

#include <algorithm>

#include "tsynth/core/errors.hpp"

namespace tsynth {

IntervalPred::IntervalPred(std::vector<Interval> intervals) {
    for (const auto& i : intervals)
        if (i.lo > i.hi) throw InputError("interval with lo > hi");
    std::sort(intervals.begin(), intervals.end(), [](auto a, auto b) { return a.lo < b.lo; });
    for (const auto& i : intervals) {
        if (!iv_.empty() && i.lo <= iv_.back().hi + 1)
            iv_.back().hi = std::max(iv_.back().hi, i.hi);
        else
            iv_.push_back(i);
    }
}

bool IntervalPred::contains(Symbol c) const {
    auto it = std::upper_bound(iv_.begin(), iv_.end(), c, [](Symbol x, const Interval& i) { return x < i.lo; });
    return it != iv_.begin() && std::prev(it)->hi >= c;
}

std::size_t IntervalPred::count() const {
    std::size_t n = 0;
    for (const auto& i : iv_) n += i.size();
    return n;
}

std::optional<Symbol> IntervalPred::min() const {
    if (iv_.empty()) return std::nullopt;
    return iv_.front().lo;
}

IntervalPred IntervalPred::operator&(const IntervalPred& o) const {
    std::vector<Interval> out;
    std::size_t i = 0, j = 0;
    while (i < iv_.size() && j < o.iv_.size()) {
        Symbol lo = std::max(iv_[i].lo, o.iv_[j].lo);
        Symbol hi = std::min(iv_[i].hi, o.iv_[j].hi);
        if (lo <= hi) out.push_back({lo, hi});
        if (iv_[i].hi < o.iv_[j].hi)
            ++i;
        else
            ++j;
    }
    return IntervalPred(std::move(out));
}

IntervalPred IntervalPred::operator|(const IntervalPred& o) const {
    auto all = iv_;
    all.insert(all.end(), o.iv_.begin(), o.iv_.end());
    return IntervalPred(std::move(all));
}

IntervalPred IntervalPred::complement(const Universe& u) const {
    std::vector<Interval> out;
    Symbol next = u.lo;
    for (const auto& i : iv_) {
        if (i.hi < u.lo) continue;
        if (i.lo > u.hi) break;
        if (i.lo > next) out.push_back({next, i.lo - 1});
        if (i.hi >= u.hi) return IntervalPred(std::move(out));
        next = std::max<Symbol>(next, i.hi + 1);
    }
    out.push_back({next, u.hi});
    return IntervalPred(std::move(out));
}

IntervalPred IntervalPred::operator-(const IntervalPred& o) const {
    return *this & o.complement({0, kMaxCodePoint});
}

IntervalPred IntervalPred::shifted(long delta) const {
    std::vector<Interval> out;
    for (const auto& i : iv_) {
        long lo = static_cast<long>(i.lo) + delta;
        long hi = static_cast<long>(i.hi) + delta;
        if (lo < 0 || hi > static_cast<long>(kMaxCodePoint))
            throw ConstructionError("offset moves characters outside the code-point range");
        out.push_back({static_cast<Symbol>(lo), static_cast<Symbol>(hi)});
    }
    return IntervalPred(std::move(out));
}

std::string describe(const IntervalPred& p) {
    if (p.empty()) return "[]";
    std::string s = "[";
    for (const auto& i : p.intervals()) {
        s += to_utf8(i.lo);
        if (i.hi != i.lo) s += "-" + to_utf8(i.hi);
    }
    return s + "]";
}

}  // namespace tsynth
