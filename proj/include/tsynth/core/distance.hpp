#pragma once

#include <cstdint>
#include <string>

#include <boost/rational.hpp>

#include "tsynth/core/ft.hpp"

namespace tsynth {

using Rational = boost::rational<std::int64_t>;

// Accepts "p/q" or an integer.
Rational parse_rational(std::string_view text);
std::string format_rational(const Rational& r);

std::size_t edit_distance(std::u32string_view s, std::u32string_view t);

// Throws InputError when s is empty.
Rational mean_edit_distance(std::u32string_view s, std::u32string_view t);

// Sum of per-transition distances between the input symbol and its output.
std::size_t aggregate_cost(const Ft& t, std::u32string_view w);

// Distance between one input symbol and a transition output.
std::size_t transition_distance(Symbol c, std::u32string_view out);

}  // namespace tsynth
