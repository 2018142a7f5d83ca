#include "tsynth/core/word.hpp"

#include <cstdio>

#include "tsynth/core/errors.hpp"

namespace tsynth {

std::string to_utf8(Symbol c) {
    std::string out;
    auto u = static_cast<std::uint32_t>(c);
    if (u < 0x80) {
        out += static_cast<char>(u);
    } else if (u < 0x800) {
        out += static_cast<char>(0xC0 | (u >> 6));
        out += static_cast<char>(0x80 | (u & 0x3F));
    } else if (u < 0x10000) {
        out += static_cast<char>(0xE0 | (u >> 12));
        out += static_cast<char>(0x80 | ((u >> 6) & 0x3F));
        out += static_cast<char>(0x80 | (u & 0x3F));
    } else if (u <= 0x10FFFF) {
        out += static_cast<char>(0xF0 | (u >> 18));
        out += static_cast<char>(0x80 | ((u >> 12) & 0x3F));
        out += static_cast<char>(0x80 | ((u >> 6) & 0x3F));
        out += static_cast<char>(0x80 | (u & 0x3F));
    } else {
        throw InputError("code point out of range");
    }
    return out;
}

std::string to_utf8(std::u32string_view w) {
    std::string out;
    for (Symbol c : w) out += to_utf8(c);
    return out;
}

Word from_utf8(std::string_view s) {
    Word out;
    std::size_t i = 0;
    while (i < s.size()) {
        auto b = static_cast<unsigned char>(s[i]);
        int extra = 0;
        std::uint32_t cp = 0;
        if (b < 0x80) {
            cp = b;
        } else if ((b & 0xE0) == 0xC0) {
            cp = b & 0x1F;
            extra = 1;
        } else if ((b & 0xF0) == 0xE0) {
            cp = b & 0x0F;
            extra = 2;
        } else if ((b & 0xF8) == 0xF0) {
            cp = b & 0x07;
            extra = 3;
        } else {
            throw InputError("invalid UTF-8 lead byte");
        }
        if (i + extra >= s.size() && extra > 0) throw InputError("truncated UTF-8 sequence");
        for (int k = 1; k <= extra; ++k) {
            auto cb = static_cast<unsigned char>(s[i + k]);
            if ((cb & 0xC0) != 0x80) throw InputError("invalid UTF-8 continuation byte");
            cp = (cp << 6) | (cb & 0x3F);
        }
        out += static_cast<Symbol>(cp);
        i += 1 + extra;
    }
    return out;
}

std::string quote(std::u32string_view w) {
    std::string out = "\"";
    for (Symbol c : w) {
        if (c == U'"' || c == U'\\') {
            out += '\\';
            out += static_cast<char>(c);
        } else if (c >= 0x20 && c < 0x7F) {
            out += static_cast<char>(c);
        } else {
            char buf[16];
            std::snprintf(buf, sizeof buf, "\\u{%X}", static_cast<unsigned>(c));
            out += buf;
        }
    }
    return out + "\"";
}

}  // namespace tsynth
