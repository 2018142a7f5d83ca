#include "tsynth/core/distance.hpp"

#include <algorithm>
#include <charconv>
#include <vector>

#include "tsynth/core/errors.hpp"

namespace tsynth {

namespace {

std::int64_t parse_int(std::string_view s) {
    std::int64_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size()) throw InputError("bad integer '" + std::string(s) + "'");
    return v;
}

}  // namespace

Rational parse_rational(std::string_view text) {
    auto slash = text.find('/');
    if (slash == std::string_view::npos) return Rational(parse_int(text));
    auto den = parse_int(text.substr(slash + 1));
    if (den == 0) throw InputError("zero denominator");
    return Rational(parse_int(text.substr(0, slash)), den);
}

std::string format_rational(const Rational& r) {
    if (r.denominator() == 1) return std::to_string(r.numerator());
    return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

std::size_t edit_distance(std::u32string_view s, std::u32string_view t) {
    std::vector<std::size_t> prev(t.size() + 1), cur(t.size() + 1);
    for (std::size_t j = 0; j <= t.size(); ++j) prev[j] = j;
    for (std::size_t i = 1; i <= s.size(); ++i) {
        cur[0] = i;
        for (std::size_t j = 1; j <= t.size(); ++j) {
            std::size_t sub = prev[j - 1] + (s[i - 1] == t[j - 1] ? 0 : 1);
            cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, sub});
        }
        std::swap(prev, cur);
    }
    return prev[t.size()];
}

Rational mean_edit_distance(std::u32string_view s, std::u32string_view t) {
    if (s.empty()) throw InputError("mean edit distance is undefined for an empty input");
    return Rational(static_cast<std::int64_t>(edit_distance(s, t)), static_cast<std::int64_t>(s.size()));
}

std::size_t transition_distance(Symbol c, std::u32string_view out) {
    if (out.empty()) return 1;
    bool contains = std::find(out.begin(), out.end(), c) != out.end();
    return contains ? out.size() - 1 : out.size();
}

std::size_t aggregate_cost(const Ft& t, std::u32string_view w) {
    if (w.empty()) throw InputError("aggregate cost is undefined for an empty input");
    std::size_t total = 0;
    State q = t.init();
    for (Symbol c : w) {
        auto a = t.alphabet().require_index(c);
        total += edit_distance(std::u32string_view(&c, 1), t.output(q, a));
        q = t.next(q, a);
    }
    return total;
}

}  // namespace tsynth
