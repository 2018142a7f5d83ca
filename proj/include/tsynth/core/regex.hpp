#pragma once

#include <functional>
#include <memory>
#include <vector>

#include "tsynth/core/dfa.hpp"

namespace tsynth {

struct CodeRange {
    Symbol lo;
    Symbol hi;
    bool operator==(const CodeRange&) const = default;
};

// Regular expression syntax tree. Syntax accepted by parse():
// literals, '.', classes [a-z] and [^...], grouping, '|', '*', '?', '+',
// and backslash escapes for any of the metacharacters.
class Regex {
public:
    enum class Kind { Empty, Epsilon, Literal, Class, Concat, Union, Star, Optional };

    static Regex parse(std::u32string_view text);
    static Regex parse_utf8(std::string_view text) { return parse(from_utf8(text)); }

    static Regex empty();
    static Regex epsilon();
    static Regex literal(Symbol c);
    static Regex char_class(std::vector<CodeRange> ranges, bool negated = false);
    static Regex concat(Regex a, Regex b);
    static Regex alt(Regex a, Regex b);
    static Regex star(Regex a);
    static Regex optional(Regex a);

    Kind kind() const noexcept { return node_->kind; }
    Symbol symbol() const noexcept { return node_->symbol; }
    const std::vector<CodeRange>& ranges() const noexcept { return node_->ranges; }
    bool negated() const noexcept { return node_->negated; }
    const Regex& left() const { return *node_->left; }
    const Regex& right() const { return *node_->right; }

    // Every literal and class in the tree, in syntax order.
    void for_each_leaf(const std::function<void(const Regex&)>& fn) const;

private:
    struct Node {
        Kind kind = Kind::Empty;
        Symbol symbol = 0;
        std::vector<CodeRange> ranges;
        bool negated = false;
        std::shared_ptr<const Regex> left;
        std::shared_ptr<const Regex> right;
    };
    explicit Regex(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
    std::shared_ptr<const Node> node_;
};

// Maps a Literal or Class leaf to the alphabet indices it matches.
using LeafResolver = std::function<std::vector<std::size_t>(const Regex&)>;

LeafResolver plain_resolver(const Alphabet& sigma);

Dfa compile_regex(const Regex& re, const Alphabet& sigma);
Dfa compile_regex(const Regex& re, const Alphabet& sigma, const LeafResolver& resolve);

}  // namespace tsynth
