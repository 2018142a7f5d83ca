#pragma once

#include <optional>

#include "tsynth/core/distance.hpp"
#include "tsynth/core/ft.hpp"

namespace tsynth {

// nullopt when every w in L(p) has t(w) in L(q); otherwise a shortest
// violating input.
std::optional<Word> hoare_check(const Dfa& p, const Ft& t, const Dfa& q);

// nullopt when every non-empty w in L(p) has aggregate cost <= d * |w|;
// otherwise an input in L(p) that exceeds the bound.
std::optional<Word> check_mean_aggregate(const Dfa& p, const Ft& t, const Rational& d);

// nullopt when every w in L(p) has aggregate cost <= bound.
std::optional<Word> check_total_aggregate(const Dfa& p, const Ft& t, std::int64_t bound);

// { t(w) | w in L(p) }.
Dfa output_language(const Dfa& p, const Ft& t);

// { w in L(p) | t(w) not in L(q) }.
Dfa bad_inputs(const Dfa& p, const Ft& t, const Dfa& q);

// A shortest w in L(p) with t1(w) != t2(w), or nullopt if none exists.
std::optional<Word> find_distinguishing_input(const Ft& t1, const Ft& t2, const Dfa& p);

}  // namespace tsynth
