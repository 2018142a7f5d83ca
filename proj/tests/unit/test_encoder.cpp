#include <doctest.h>

#include <random>

#include "brute.hpp"
#include "fixtures.hpp"
#include "tsynth/core/errors.hpp"
#include "tsynth/encoder/encoder.hpp"
#include "tsynth/solver/solver.hpp"

using namespace tsynth;

namespace {

std::size_t count_prefix(const Formula& f, const std::string& prefix) {
    std::size_t n = 0;
    for (const auto& d : f.declarations())
        if (d.name.rfind(prefix, 0) == 0) ++n;
    return n;
}

Alphabet abc() { return Alphabet::from_word(U"abc"); }

// Two live states, all reachable and co-reachable.
Dfa two_state(const Alphabet& sigma, bool final0, bool final1) {
    std::vector<State> delta;
    for (State s = 0; s < 2; ++s)
        for (std::size_t a = 0; a < sigma.size(); ++a) delta.push_back(static_cast<State>((s + a) % 2));
    return Dfa(sigma, 2, 0, {final0, final1}, delta);
}

}  // namespace

TEST_CASE("transducer variables and their ranges") {
    VarRegistry tiny(1, Alphabet::from_word(U"a"), 1);
    CHECK(tiny.base().declarations().size() == 3);
    CHECK(tiny.base().declares(tiny.dst(0, 0).name()));
    CHECK(tiny.base().declares(tiny.out_char(0, 0, 0).name()));
    CHECK(tiny.base().declares(tiny.out_len(0, 0).name()));

    VarRegistry reg(2, abc(), 2);
    CHECK(count_prefix(reg.base(), "dst") == 6);
    CHECK(count_prefix(reg.base(), "ch") == 12);
    CHECK(count_prefix(reg.base(), "len") == 6);
    CHECK(encoding_stats(reg.base()).count(Family::Range) == 24);
    CHECK(to_smtlib(reg.base().assertions().back().expr) == "(and (<= 0 len_1_2) (<= len_1_2 2))");

    VarRegistry look(2, abc(), 1, 3);
    CHECK(look.columns() == 9);
    CHECK(count_prefix(look.base(), "dR") == 9);
    CHECK(count_prefix(look.base(), "dst") == 18);

    CHECK_THROWS_AS(VarRegistry(0, abc(), 1), InputError);
    CHECK_THROWS_AS(VarRegistry(1, abc(), 0), InputError);
}

TEST_CASE("example constraint counts") {
    VarRegistry reg(2, abc(), 2);
    auto f = encode_example(reg, {U"abc", U"aabb"});
    auto s = encoding_stats(f);
    CHECK(s.count(Family::ExampleInit) == 1);
    CHECK(s.count(Family::ExampleStep) == 3 * 4 * 2 * 3);
    CHECK(s.count(Family::ExampleFinal) == 1);
    CHECK(s.count(Family::ExampleInfeasible) == 0);

    auto empty = encoding_stats(encode_example(reg, {U"", U""}));
    CHECK(empty.count(Family::ExampleInit) == 1);
    CHECK(empty.count(Family::ExampleStep) == 0);
    CHECK(empty.count(Family::ExampleTail) == 0);
    CHECK(empty.count(Family::ExampleFinal) == 1);
}

TEST_CASE("examples whose output is too long are flagged") {
    VarRegistry reg(1, abc(), 1);
    auto f = encode_example(reg, {U"a", U"ab"});
    CHECK(f.diagnostics().size() == 1);
    CHECK(encoding_stats(f).count(Family::ExampleInfeasible) == 1);
    bool has_false = false;
    for (const auto& a : f.assertions()) has_false = has_false || a.expr.is_false();
    CHECK(has_false);
}

TEST_CASE("type and distance constraint counts") {
    auto sigma = fixtures::ab();
    for (std::size_t k : {1, 2, 3}) {
        VarRegistry reg(k, sigma, 2);
        auto p = two_state(sigma, true, false);
        auto q = two_state(sigma, false, true);
        auto types = encoding_stats(encode_types(reg, p, q));
        CHECK(types.count(Family::TypeInit) == 1);
        CHECK(types.count(Family::TypeStep) == 2 * k * 2 * 2);
        CHECK(types.count(Family::TypeFinal) == 1);
        auto dist = encoding_stats(encode_distance(reg, Rational(1, 2)));
        CHECK(dist.count(Family::EditContains) == k * 2);
        CHECK(dist.count(Family::EditExcludes) == k * 2);
        CHECK(dist.count(Family::EnergyInit) == 1);
        CHECK(dist.count(Family::EnergyStep) == 2 * k * 2 * 2);
        CHECK(dist.count(Family::EnergyFinal) == 1);
    }
}

TEST_CASE("dead input-type states are left out of the simulation") {
    auto sigma = fixtures::ab();
    // a* with a rejecting sink on b.
    Dfa p(sigma, 2, 0, {true, false}, {0, 1, 1, 1});
    VarRegistry reg(2, sigma, 1);
    auto s = encoding_stats(encode_types(reg, p, Dfa::universal(sigma)));
    CHECK(s.count(Family::TypeStep) == 1 * 2 * 1 * 2);
}

TEST_CASE("distance needs the type constraints first") {
    VarRegistry reg(1, fixtures::ab(), 1);
    CHECK_THROWS_AS(encode_distance(reg, Rational(1)), InputError);
    CHECK_THROWS_AS(encode_bounded_distance(reg, 2), InputError);
    encode_types(reg, Dfa::universal(fixtures::ab()), Dfa::universal(fixtures::ab()));
    CHECK_THROWS_AS(encode_distance(reg, Rational(0)), InputError);
    CHECK_NOTHROW(encode_distance(reg, Rational(1)));
}

TEST_CASE("lookahead constraint counts") {
    auto sigma = fixtures::ab();
    VarRegistry reg(2, sigma, 1, 2);
    auto f = encode_lookahead(reg, {{U"ab", U"b"}}, std::pair{two_state(sigma, true, true), Dfa::universal(sigma)});
    auto s = encoding_stats(f);
    CHECK(s.count(Family::LookaheadLook) == 1);
    CHECK(s.count(Family::LookaheadExampleStep) == 2 * 2 * 2 * 2 * 2);
    CHECK(s.count(Family::LookaheadTypeStep) == 2 * 2 * 1 * 2 * 2 * 2);
    CHECK(s.count(Family::ExampleStep) == 0);

    VarRegistry plain(2, sigma, 1);
    CHECK_THROWS_AS(encode_lookahead(plain, {}, std::nullopt), InputError);
}

TEST_CASE("template pins") {
    auto t = fixtures::escape_quotes();
    VarRegistry reg(2, t.alphabet(), 2);
    auto pins = pins_from(t);
    CHECK(pins.size() == 6);
    CHECK(pins_from(t, {{0, 1}}).size() == 5);
    CHECK(encoding_stats(encode_template(reg, pins)).count(Family::Template) == 6);

    auto dup = pins;
    dup.push_back(pins.front());
    CHECK(encoding_stats(encode_template(reg, dup)).count(Family::Template) == 6);
    dup.back().out = U"aa";
    CHECK_THROWS_AS(encode_template(reg, dup), InputError);
    CHECK_THROWS_AS(encode_template(reg, {{2, 0, 0, U""}}), InputError);
    CHECK_THROWS_AS(encode_template(reg, {{0, 0, 0, U"aaa"}}), InputError);
}

TEST_CASE("encoding is deterministic") {
    auto build = [] {
        auto sigma = fixtures::quotes();
        VarRegistry reg(2, sigma, 2);
        Formula f = reg.base();
        for (const auto& ex : fixtures::quotes_examples()) f += encode_example(reg, ex);
        auto p = compile_regex(Regex::parse(fixtures::quotes_input_regex()), sigma);
        auto q = compile_regex(Regex::parse(fixtures::quotes_output_regex()), sigma);
        f += encode_types(reg, p, q);
        f += encode_distance(reg, Rational(1));
        return emit_smtlib(f);
    };
    auto a = build();
    CHECK(a == build());
    CHECK(a.find("(define-fun dQ") != std::string::npos);
    CHECK(a.find("(check-sat)") != std::string::npos);
}

TEST_CASE("empty formula emission") {
    auto doc = emit_smtlib(Formula{});
    CHECK(doc == "(set-option :produce-models true)\n(set-logic QF_LIA)\n(check-sat)\n");
}
