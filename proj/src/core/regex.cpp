#include "tsynth/core/regex.hpp"

#include <algorithm>

#include "tsynth/core/errors.hpp"

namespace tsynth {

Regex Regex::empty() {
    Node n;
    n.kind = Kind::Empty;
    return Regex(std::make_shared<Node>(std::move(n)));
}

Regex Regex::epsilon() {
    Node n;
    n.kind = Kind::Epsilon;
    return Regex(std::make_shared<Node>(std::move(n)));
}

Regex Regex::literal(Symbol c) {
    Node n;
    n.kind = Kind::Literal;
    n.symbol = c;
    return Regex(std::make_shared<Node>(std::move(n)));
}

Regex Regex::char_class(std::vector<CodeRange> ranges, bool negated) {
    for (const auto& r : ranges)
        if (r.lo > r.hi) throw InputError("character class range is reversed");
    Node n;
    n.kind = Kind::Class;
    n.ranges = std::move(ranges);
    n.negated = negated;
    return Regex(std::make_shared<Node>(std::move(n)));
}

Regex Regex::concat(Regex a, Regex b) {
    Node n;
    n.kind = Kind::Concat;
    n.left = std::make_shared<const Regex>(std::move(a));
    n.right = std::make_shared<const Regex>(std::move(b));
    return Regex(std::make_shared<Node>(std::move(n)));
}

Regex Regex::alt(Regex a, Regex b) {
    Node n;
    n.kind = Kind::Union;
    n.left = std::make_shared<const Regex>(std::move(a));
    n.right = std::make_shared<const Regex>(std::move(b));
    return Regex(std::make_shared<Node>(std::move(n)));
}

Regex Regex::star(Regex a) {
    Node n;
    n.kind = Kind::Star;
    n.left = std::make_shared<const Regex>(std::move(a));
    return Regex(std::make_shared<Node>(std::move(n)));
}

Regex Regex::optional(Regex a) {
    Node n;
    n.kind = Kind::Optional;
    n.left = std::make_shared<const Regex>(std::move(a));
    return Regex(std::make_shared<Node>(std::move(n)));
}

void Regex::for_each_leaf(const std::function<void(const Regex&)>& fn) const {
    switch (kind()) {
        case Kind::Literal:
        case Kind::Class: fn(*this); break;
        case Kind::Concat:
        case Kind::Union:
            left().for_each_leaf(fn);
            right().for_each_leaf(fn);
            break;
        case Kind::Star:
        case Kind::Optional: left().for_each_leaf(fn); break;
        default: break;
    }
}

namespace {

class Parser {
public:
    explicit Parser(std::u32string_view text) : text_(text) {}

    Regex run() {
        Regex r = parse_alt();
        if (pos_ != text_.size()) fail("unexpected ')'");
        return r;
    }

private:
    [[noreturn]] void fail(const std::string& what) const {
        throw InputError("regex: " + what + " at offset " + std::to_string(pos_));
    }
    bool done() const { return pos_ >= text_.size(); }
    Symbol peek() const { return text_[pos_]; }

    Regex parse_alt() {
        Regex r = parse_concat();
        while (!done() && peek() == U'|') {
            ++pos_;
            r = Regex::alt(std::move(r), parse_concat());
        }
        return r;
    }

    Regex parse_concat() {
        std::optional<Regex> acc;
        while (!done() && peek() != U'|' && peek() != U')') {
            Regex piece = parse_repeat();
            acc = acc ? Regex::concat(std::move(*acc), std::move(piece)) : std::move(piece);
        }
        return acc ? std::move(*acc) : Regex::epsilon();
    }

    Regex parse_repeat() {
        Regex r = parse_atom();
        while (!done()) {
            Symbol c = peek();
            if (c == U'*') {
                r = Regex::star(std::move(r));
            } else if (c == U'?') {
                r = Regex::optional(std::move(r));
            } else if (c == U'+') {
                r = Regex::concat(r, Regex::star(r));
            } else {
                break;
            }
            ++pos_;
        }
        return r;
    }

    Symbol escaped() {
        ++pos_;
        if (done()) fail("dangling backslash");
        return text_[pos_++];
    }

    Regex parse_atom() {
        Symbol c = peek();
        switch (c) {
            case U'(': {
                ++pos_;
                Regex inner = parse_alt();
                if (done() || peek() != U')') fail("missing ')'");
                ++pos_;
                return inner;
            }
            case U'[': return parse_class();
            case U'.': ++pos_; return Regex::char_class({}, true);
            case U'\\': return Regex::literal(escaped());
            case U'*':
            case U'?':
            case U'+': fail("repetition without operand");
            case U']': fail("unbalanced ']'");
            default: ++pos_; return Regex::literal(c);
        }
    }

    Symbol class_char() {
        if (done()) fail("unterminated character class");
        if (peek() == U'\\') return escaped();
        return text_[pos_++];
    }

    Regex parse_class() {
        ++pos_;
        bool negated = false;
        if (!done() && peek() == U'^') {
            negated = true;
            ++pos_;
        }
        std::vector<CodeRange> ranges;
        while (true) {
            if (done()) fail("unterminated character class");
            if (peek() == U']') {
                ++pos_;
                break;
            }
            Symbol lo = class_char();
            Symbol hi = lo;
            if (pos_ + 1 < text_.size() && peek() == U'-' && text_[pos_ + 1] != U']') {
                ++pos_;
                hi = class_char();
                if (hi < lo) fail("reversed class range");
            }
            ranges.push_back({lo, hi});
        }
        return Regex::char_class(std::move(ranges), negated);
    }

    std::u32string_view text_;
    std::size_t pos_ = 0;
};

void thompson(const Regex& re, Nfa& nfa, State from, State to, const LeafResolver& resolve) {
    using K = Regex::Kind;
    switch (re.kind()) {
        case K::Empty: break;
        case K::Epsilon: nfa.add_edge(from, Nfa::kEpsilon, to); break;
        case K::Literal:
        case K::Class:
            for (std::size_t a : resolve(re)) nfa.add_edge(from, a, to);
            break;
        case K::Concat: {
            State mid = nfa.add_state();
            thompson(re.left(), nfa, from, mid, resolve);
            thompson(re.right(), nfa, mid, to, resolve);
            break;
        }
        case K::Union:
            thompson(re.left(), nfa, from, to, resolve);
            thompson(re.right(), nfa, from, to, resolve);
            break;
        case K::Star: {
            State hub = nfa.add_state();
            nfa.add_edge(from, Nfa::kEpsilon, hub);
            nfa.add_edge(hub, Nfa::kEpsilon, to);
            State back = nfa.add_state();
            thompson(re.left(), nfa, hub, back, resolve);
            nfa.add_edge(back, Nfa::kEpsilon, hub);
            break;
        }
        case K::Optional:
            nfa.add_edge(from, Nfa::kEpsilon, to);
            thompson(re.left(), nfa, from, to, resolve);
            break;
    }
}

}  // namespace

Regex Regex::parse(std::u32string_view text) { return Parser(text).run(); }

LeafResolver plain_resolver(const Alphabet& sigma) {
    return [sigma](const Regex& leaf) {
        if (leaf.kind() == Regex::Kind::Literal) return std::vector<std::size_t>{sigma.require_index(leaf.symbol())};
        std::vector<bool> in(sigma.size(), false);
        for (const auto& r : leaf.ranges()) {
            if (r.lo == r.hi) sigma.require_index(r.lo);
            for (std::size_t a = 0; a < sigma.size(); ++a)
                if (sigma[a] >= r.lo && sigma[a] <= r.hi) in[a] = true;
        }
        std::vector<std::size_t> out;
        for (std::size_t a = 0; a < sigma.size(); ++a)
            if (in[a] != leaf.negated()) out.push_back(a);
        return out;
    };
}

Dfa compile_regex(const Regex& re, const Alphabet& sigma) { return compile_regex(re, sigma, plain_resolver(sigma)); }

Dfa compile_regex(const Regex& re, const Alphabet& sigma, const LeafResolver& resolve) {
    Nfa nfa(sigma);
    State start = nfa.add_state();
    State accept = nfa.add_state(true);
    nfa.init = start;
    thompson(re, nfa, start, accept, resolve);
    return determinize(nfa);
}

}  // namespace tsynth
