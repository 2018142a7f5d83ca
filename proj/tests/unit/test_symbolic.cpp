#include <doctest.h>

#include <map>
#include <random>

#include "brute.hpp"
#include "fixtures.hpp"
#include "symbolic_fixtures.hpp"
#include "tsynth/core/errors.hpp"

using namespace tsynth;

namespace {

// Groups code points of the universe by their membership signature.
std::vector<IntervalPred> signature_partition(const std::vector<IntervalPred>& preds, const Universe& u) {
    std::map<std::vector<bool>, std::vector<Interval>> groups;
    for (Symbol c = u.lo; c <= u.hi; ++c) {
        std::vector<bool> sig;
        for (const auto& p : preds) sig.push_back(p.contains(c));
        groups[sig].push_back({c, c});
    }
    std::vector<IntervalPred> out;
    for (auto& [sig, iv] : groups) out.emplace_back(std::move(iv));
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.min() < b.min(); });
    return out;
}

std::vector<IntervalPred> sorted_preds(const MintermMap& mm) {
    std::vector<IntervalPred> out;
    for (const auto& m : mm.minterms()) out.push_back(m.pred);
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.min() < b.min(); });
    return out;
}

IntervalPred random_pred(std::mt19937& rng, const Universe& u) {
    std::uniform_int_distribution<Symbol> pt(u.lo, u.hi);
    std::uniform_int_distribution<int> n(1, 3);
    std::vector<Interval> iv;
    for (int i = n(rng); i > 0; --i) {
        Symbol a = pt(rng), b = pt(rng);
        iv.push_back({std::min(a, b), std::max(a, b)});
    }
    return IntervalPred(iv);
}

Sfa as_sfa(const Dfa& d, const MintermMap& mm) {
    std::vector<SfaMove> moves;
    for (State q = 0; q < d.num_states(); ++q)
        for (std::size_t a = 0; a < mm.size(); ++a) moves.push_back({q, mm.minterms()[a].pred, d.step(q, a)});
    return Sfa(mm.universe(), d.num_states(), d.init(), d.finals(), moves);
}

}  // namespace

TEST_CASE("interval predicates") {
    auto p = IntervalPred({{U'd', U'f'}, {U'a', U'c'}, {U'x', U'z'}});
    CHECK(p.intervals() == std::vector<Interval>{{U'a', U'f'}, {U'x', U'z'}});
    CHECK(p.contains(U'e'));
    CHECK_FALSE(p.contains(U'g'));
    CHECK(p.count() == 9);
    CHECK((p & IntervalPred::range(U'e', U'y')).intervals() == std::vector<Interval>{{U'e', U'f'}, {U'x', U'y'}});
    CHECK(p.complement({U'a', U'z'}) == IntervalPred::range(U'g', U'w'));
    CHECK((p - IntervalPred::single(U'b')).count() == 8);
    CHECK(IntervalPred().empty());
    CHECK(IntervalPred::range(U'a', U'z').shifted(-32) == IntervalPred::range(U'A', U'Z'));
    CHECK_THROWS_AS(IntervalPred::single(1).shifted(-5), ConstructionError);

    std::mt19937 rng(1);
    Universe u{0, 60};
    for (int round = 0; round < 200; ++round) {
        auto a = random_pred(rng, u), b = random_pred(rng, u);
        for (Symbol c = 0; c <= 60; ++c) {
            CHECK((a & b).contains(c) == (a.contains(c) && b.contains(c)));
            CHECK((a | b).contains(c) == (a.contains(c) || b.contains(c)));
            CHECK((a - b).contains(c) == (a.contains(c) && !b.contains(c)));
            CHECK(a.complement(u).contains(c) == !a.contains(c));
        }
    }
}

TEST_CASE("minterms of the escaping transducer") {
    auto sft = fixtures::escape_quotes_sft();
    auto mm = compute_minterms(sft.predicates());
    REQUIRE(mm.size() == 3);
    CHECK(mm.minterms()[0].pred == fixtures::not_quote_or_backslash());
    CHECK(mm.minterms()[0].witness == U'a');
    CHECK(mm.minterms()[1].pred == IntervalPred::single(U'"'));
    CHECK(mm.minterms()[1].witness == U'"');
    CHECK(mm.minterms()[2].pred == IntervalPred::single(U'\\'));
    CHECK(mm.minterms()[2].witness == U'\\');
    CHECK(mm.alphabet() == fixtures::quotes());
    CHECK(mm.project(U"x\"y\\") == U"a\"a\\");
}

TEST_CASE("minterm partitions") {
    CHECK(compute_minterms({IntervalPred::all({})}).size() == 1);
    CHECK(compute_minterms({}).size() == 1);

    auto az = IntervalPred::range(U'a', U'z');
    auto mm = compute_minterms({az, IntervalPred::single(U'a')});
    CHECK(sorted_preds(mm) == signature_partition({az, IntervalPred::single(U'a')}, {}));
    std::vector<IntervalPred> expect{IntervalPred::single(U'a'), IntervalPred::range(U'b', U'z'), az.complement({})};
    auto got = sorted_preds(mm);
    CHECK(got.size() == 3);
    for (const auto& e : expect) CHECK(std::count(got.begin(), got.end(), e) == 1);

    std::mt19937 rng(2);
    Universe u{0, 80};
    for (int round = 0; round < 100; ++round) {
        std::vector<IntervalPred> preds;
        for (int i = 0; i < 4; ++i) preds.push_back(random_pred(rng, u));
        auto m = compute_minterms(preds, u);
        auto got = sorted_preds(m);
        CHECK(got == signature_partition(preds, u));
        IntervalPred all;
        for (const auto& mt : m.minterms()) {
            CHECK(mt.pred.contains(mt.witness));
            CHECK_FALSE(all.intersects(mt.pred));
            all = all | mt.pred;
        }
        CHECK(all == IntervalPred::all(u));
    }
}

TEST_CASE("finitizing the escaping transducer") {
    auto [ft, mm] = finitize_sft(fixtures::escape_quotes_sft());
    CHECK(ft == fixtures::escape_quotes());
    auto q1 = mm.alphabet();
    CHECK(ft.next(1, q1.require_index(U'a')) == 0);
    CHECK(ft.next(1, q1.require_index(U'"')) == 0);
    CHECK(ft.output(1, q1.require_index(U'"')) == U"\"");

    auto ident = Sft({}, 1, 0, {{0, IntervalPred::all({}), {OutputFunc::identity()}, 0}});
    auto [id, m1] = finitize_sft(ident);
    CHECK(id == Ft::identity(m1.alphabet()));

    auto az = IntervalPred::range(U'a', U'z');
    auto upper = Sft({}, 1, 0,
                     {{0, az, {OutputFunc::offset(-32)}, 0}, {0, az.complement({}), {OutputFunc::identity()}, 0}});
    auto [up, m2] = finitize_sft(upper);
    CHECK(up.output(0, m2.alphabet().require_index(U'a')) == U"A");
    CHECK(upper.run(U"hi!") == U"HI!");

    CHECK_THROWS_AS(Sft({}, 1, 0, {{0, IntervalPred::all({}), {OutputFunc::offset(-200)}, 0}}), ConstructionError);
    CHECK_THROWS_AS(OutputFunc::offset(-200).apply(U'a'), ConstructionError);
    CHECK_THROWS_AS(Sft({}, 1, 0, {{0, az, {}, 0}}), InputError);
    CHECK_THROWS_AS(Sft({}, 1, 0, {{0, IntervalPred::all({}), {}, 0}, {0, az, {}, 0}}), InputError);
}

TEST_CASE("finitized automata keep their language") {
    auto quotes_type = Regex::parse(fixtures::quotes_input_regex());
    MintermMap mm(regex_predicates(quotes_type, {}), {});
    auto sfa = as_sfa(compile_regex(quotes_type, mm), mm);
    auto [dfa, m2] = finitize_sfa(sfa);
    std::mt19937 rng(4);
    auto pool = Alphabet::from_word(U"a\"\\bx~");
    int accepted = 0;
    for (int round = 0; round < 50; ++round) {
        auto w = brute::random_word(rng, pool, 6);
        bool truth = brute::matches(quotes_type, w);
        CHECK(sfa.accepts(w) == truth);
        CHECK(dfa.accepts(m2.project(w)) == truth);
        accepted += truth;
    }
    CHECK(accepted > 0);
    for (const auto& w : brute::words(m2.alphabet(), 5)) CHECK(dfa.accepts(w) == sfa.accepts(w));

    auto one = Sfa({}, 1, 0, {true}, {{0, IntervalPred::all({}), 0}});
    CHECK(finitize_sfa(one).first.alphabet().size() == 1);
}

TEST_CASE("recovering symbolic transducers") {
    auto mm = compute_minterms(fixtures::escape_quotes_sft().predicates());
    auto sft = recover_sft(fixtures::escape_quotes(), mm);
    const auto& a_move = sft.move(0, U'x');
    REQUIRE(a_move.out.size() == 1);
    CHECK(a_move.out[0] == OutputFunc::identity());
    // Both singletons have size one, so the offset rule applies: '"' + 58 = '\\'.
    CHECK(sft.move(0, U'"').out == std::vector<OutputFunc>{OutputFunc::offset(58), OutputFunc::identity()});
    CHECK(sft.run(U"x\"y") == U"x\\\"y");

    auto az = IntervalPred::range(U'a', U'z');
    auto AZ = IntervalPred::range(U'A', U'Z');
    auto cm = compute_minterms({az, AZ});
    auto lower = cm.alphabet().require_index(U'a');
    std::vector<State> next(cm.size(), 0);
    std::vector<Word> out;
    for (auto c : cm.alphabet().symbols()) out.push_back(Word(1, c));
    out[lower] = U"A";
    auto t = Ft(cm.alphabet(), 1, 0, next, out);
    auto up = recover_sft(t, cm);
    CHECK(up.move(0, U'q').out == std::vector<OutputFunc>{OutputFunc::offset(-32)});
    CHECK(up.run(U"q") == U"Q");

    // The remaining minterm is a union of intervals, so only a constant fits.
    auto other = cm.witness_of(U'!');
    CHECK(cm.minterms()[cm.index_of(U'!')].pred.intervals().size() > 1);
    out[cm.alphabet().require_index(other)] = U"A";
    auto cst = recover_sft(Ft(cm.alphabet(), 1, 0, next, out), cm);
    CHECK(cst.move(0, U'!').out == std::vector<OutputFunc>{OutputFunc::constant(U'A')});
}

TEST_CASE("finitize after recover is the identity") {
    auto mm = compute_minterms(fixtures::escape_quotes_sft().predicates());
    CHECK(finitize_sft(recover_sft(fixtures::escape_quotes(), mm), mm) == fixtures::escape_quotes());
    std::mt19937 rng(6);
    auto cm = compute_minterms({IntervalPred::range(U'a', U'z'), IntervalPred::range(U'A', U'Z'),
                                IntervalPred::single(U'"')});
    for (int round = 0; round < 50; ++round) {
        auto t = brute::random_ft(rng, cm.alphabet(), 3, 3);
        CHECK(finitize_sft(recover_sft(t, cm), cm) == t);
    }
}
