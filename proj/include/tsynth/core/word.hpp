#pragma once

#include <string>
#include <string_view>

namespace tsynth {

using Symbol = char32_t;
using Word = std::u32string;

std::string to_utf8(std::u32string_view w);
std::string to_utf8(Symbol c);
Word from_utf8(std::string_view s);

// Printable rendering for diagnostics: non-printable code points as \u{..}.
std::string quote(std::u32string_view w);

}  // namespace tsynth
