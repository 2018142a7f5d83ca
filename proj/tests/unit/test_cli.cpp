#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "brute.hpp"
#include "fixtures.hpp"
#include "tsynth/cli/commands.hpp"
#include "tsynth/cli/documents.hpp"
#include "tsynth/core/errors.hpp"

using namespace tsynth;

namespace {

namespace fs = std::filesystem;

const fs::path kFixtures = TSYNTH_FIXTURES;

std::string fixture(const char* name) { return (kFixtures / name).string(); }

struct Invocation {
    int code;
    std::string out;
    std::string err;
};

Invocation tsynth_cli(std::vector<std::string> args, const std::string& input = "") {
    args.insert(args.begin(), "tsynth");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::istringstream in(input);
    std::ostringstream out, err;
    int code = cli::run(static_cast<int>(argv.size()), argv.data(), in, out, err);
    return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
    auto dir = fs::temp_directory_path() / "tsynth-cli-test";
    fs::create_directories(dir);
    return dir / name;
}

Alphabet random_alphabet(std::mt19937& rng) {
    // Includes characters that need JSON escapes and multi-byte UTF-8.
    const std::u32string pool = U"ab\"\\\né中\U0001F600";
    std::vector<Symbol> picked(pool.begin(), pool.end());
    std::shuffle(picked.begin(), picked.end(), rng);
    picked.resize(std::uniform_int_distribution<std::size_t>(1, 4)(rng));
    return Alphabet(picked);
}

IntervalPred random_pred(std::mt19937& rng, const Universe& u) {
    std::uniform_int_distribution<Symbol> pt(u.lo, u.hi);
    std::vector<Interval> iv;
    for (int i = std::uniform_int_distribution<int>(1, 3)(rng); i > 0; --i) {
        Symbol a = pt(rng), b = pt(rng);
        iv.push_back({std::min(a, b), std::max(a, b)});
    }
    return IntervalPred(iv);
}

OutputFunc random_func(std::mt19937& rng, const Universe& u) {
    switch (std::uniform_int_distribution<int>(0, 2)(rng)) {
        case 0: return OutputFunc::identity();
        case 1: return OutputFunc::offset(std::uniform_int_distribution<long>(-3, 3)(rng));
        default: return OutputFunc::constant(std::uniform_int_distribution<Symbol>(u.lo, u.hi)(rng));
    }
}

Sft random_sft(std::mt19937& rng, const Universe& u) {
    std::vector<IntervalPred> preds{random_pred(rng, u), random_pred(rng, u)};
    auto mm = compute_minterms(preds, u);
    const std::size_t n = std::uniform_int_distribution<std::size_t>(1, 3)(rng);
    std::uniform_int_distribution<State> st(0, static_cast<State>(n - 1));
    std::vector<SftMove> moves;
    for (State q = 0; q < n; ++q)
        for (const auto& m : mm.minterms()) {
            std::vector<OutputFunc> out;
            for (int i = std::uniform_int_distribution<int>(0, 2)(rng); i > 0; --i) out.push_back(random_func(rng, u));
            moves.push_back({q, m.pred, out, st(rng)});
        }
    return Sft(u, n, 0, moves);
}

Sfa random_sfa(std::mt19937& rng, const Universe& u) {
    auto mm = compute_minterms({random_pred(rng, u)}, u);
    const std::size_t n = std::uniform_int_distribution<std::size_t>(1, 3)(rng);
    std::uniform_int_distribution<State> st(0, static_cast<State>(n - 1));
    std::bernoulli_distribution coin;
    std::vector<SfaMove> moves;
    std::vector<bool> finals;
    for (State q = 0; q < n; ++q) {
        finals.push_back(coin(rng));
        for (const auto& m : mm.minterms()) moves.push_back({q, m.pred, st(rng)});
    }
    return Sfa(u, n, 0, finals, moves);
}

LookaheadFt random_lookahead(std::mt19937& rng, const Alphabet& sigma) {
    auto r = brute::random_dfa(rng, sigma, 2);
    const std::size_t n = 2;
    std::uniform_int_distribution<State> st(0, n - 1);
    std::vector<State> next;
    std::vector<Word> out;
    for (std::size_t i = 0; i < n * r.num_states() * sigma.size(); ++i) {
        next.push_back(st(rng));
        out.push_back(brute::random_word(rng, sigma, 2));
    }
    return LookaheadFt(n, 0, r, next, out);
}

template <class T>
T reparse(const T& value) {
    auto text = to_json(value).dump();
    auto back = transducer_from_json(Json::parse(text));
    REQUIRE(std::holds_alternative<T>(back));
    return std::get<T>(back);
}

SpecDocument random_spec(std::mt19937& rng) {
    std::bernoulli_distribution coin;
    SpecDocument s;
    const char* regexes[] = {"(a|b)*", "a(ba)*a", "[ab]?b*", "a|b"};
    if (coin(rng)) {
        s.alphabet = Alphabet::from_word(U"ab");
        for (int i = 0; i < 3; ++i)
            s.examples.push_back({brute::random_word(rng, Alphabet::from_word(U"ab"), 4),
                                  brute::random_word(rng, Alphabet::from_word(U"ab"), 4)});
        s.input_type = std::string(regexes[rng() % 4]);
        if (coin(rng)) s.output_type = brute::random_dfa(rng, Alphabet::from_word(U"ab"), 3);
        if (coin(rng)) s.template_moves.push_back({0, 0, U'b', U"ab", 1});
    } else {
        Universe u{0x20, 0x2FF};
        s.alphabet = u;
        s.examples.push_back({U"xé", U"X"});
        s.input_type = random_sfa(rng, u);
        s.output_type = std::string(regexes[rng() % 4]);
        s.custom_minterms = {random_pred(rng, u)};
    }
    s.k = 1 + rng() % 3;
    s.l = 1 + rng() % 2;
    switch (rng() % 3) {
        case 0: s.distance = MeanBound{Rational(1 + rng() % 5, 1 + rng() % 4)}; break;
        case 1: s.distance = TotalBound{static_cast<std::int64_t>(rng() % 6)}; break;
        default: break;
    }
    if (coin(rng)) s.lookahead = 1 + rng() % 2;
    if (coin(rng)) s.solver = {"z3", std::vector<std::string>{"-in", "-T:5"}, 12.5};
    return s;
}

}  // namespace

TEST_CASE("transducer documents round trip") {
    std::mt19937 rng(41);
    const Universe u{0x20, 0x24F};
    for (int round = 0; round < 100; ++round) {
        auto sigma = random_alphabet(rng);
        auto ft = brute::random_ft(rng, sigma, 1 + round % 3, 2);
        CHECK(reparse(ft) == ft);
        auto sft = random_sft(rng, u);
        CHECK(reparse(sft) == sft);
        auto la = random_lookahead(rng, sigma);
        CHECK(reparse(la) == la);
        auto d = brute::random_dfa(rng, sigma, 3);
        CHECK(dfa_from_json(Json::parse(to_json(d).dump())) == d);
        auto sfa = random_sfa(rng, u);
        CHECK(sfa_from_json(Json::parse(to_json(sfa).dump())) == sfa);

        auto dom = brute::random_dfa(rng, sigma, 2);
        DomainRestrictedFt r({{ft, dom}, {brute::random_ft(rng, sigma, 2, 1), dfa_complement(dom)}});
        auto back = reparse(r);
        REQUIRE(back.branches().size() == 2);
        for (std::size_t i = 0; i < 2; ++i) {
            CHECK(back.branches()[i].machine == r.branches()[i].machine);
            CHECK(back.branches()[i].domain == r.branches()[i].domain);
        }
    }
}

TEST_CASE("specification documents round trip") {
    std::mt19937 rng(7);
    for (int round = 0; round < 100; ++round) {
        auto s = random_spec(rng);
        CHECK(spec_from_json(Json::parse(to_json(s).dump())) == s);
    }
}

TEST_CASE("documents reject malformed input") {
    auto bad = [](const char* text) { return transducer_from_json(Json::parse(text)); };
    CHECK_THROWS_AS(bad(R"({"kind":"ft","alphabet":"ab","states":1,"init":0,
        "transitions":[{"from":0,"on":"a","out":"a","to":0}]})"),
                    InputError);  // not total
    CHECK_THROWS_AS(bad(R"({"kind":"ft","alphabet":"a","states":1,"init":0,
        "transitions":[{"from":0,"on":"a","out":"a","to":0},{"from":0,"on":"a","out":"","to":0}]})"),
                    InputError);  // not deterministic
    CHECK_THROWS_AS(bad(R"({"kind":"ft","alphabet":"a","states":1,"init":0,
        "transitions":[{"from":0,"on":"a","out":"z","to":0}]})"),
                    InputError);  // output outside the alphabet
    CHECK_THROWS_AS(bad(R"({"kind":"sft","universe":[0,127],"states":1,"init":0,
        "transitions":[{"from":0,"guard":[[0,100]],"out":[],"to":0}]})"),
                    InputError);  // guards do not cover the universe
    CHECK_THROWS_AS(bad(R"({"kind":"pda"})"), InputError);
    CHECK_THROWS_AS(spec_from_json(Json::parse(R"({"alphabet":"ab","examples":[{"in":"c","out":""}]})")),
                    InputError);
    CHECK_THROWS_AS(spec_from_json(Json::parse(R"({"alphabet":[[0,9],[20,30]]})")), InputError);
    CHECK_THROWS_AS(spec_from_json(Json::parse(R"({"alphabet":"ab","distance":{"mean":"0"}})")), InputError);
    CHECK_THROWS_AS(spec_from_json(Json::parse(R"({"alphabet":"ab","inputType":{"regex":"(a"}})")), InputError);
}

TEST_CASE("template moves become pins on the finite alphabet") {
    auto doc = spec_from_json(Json::parse(R"({"alphabet":"ab","k":2,"lookaheadStates":2,
        "template":[{"from":1,"lookahead":1,"on":"b","out":"ab","to":0}]})"));
    auto spec = to_synthesis_spec(doc);
    REQUIRE(spec.pins.size() == 1);
    CHECK(spec.pins[0].from == 1);
    CHECK(spec.pins[0].column == 1 * 2 + 1);
    CHECK(spec.pins[0].to == 0);
    CHECK(spec.pins[0].out == U"ab");
}

TEST_CASE("synth writes a transducer that passes check") {
    auto out = scratch("escape.json");
    auto r = tsynth_cli({"synth", fixture("escape_quotes.spec.json"), "--out", out.string(), "--emit-smt"});
    CHECK(r.code == cli::exit_code::ok);
    CHECK(r.out.find("found") != std::string::npos);
    CHECK(fs::exists(fs::path(out).replace_extension(".smt2")));
    auto c = tsynth_cli({"check", out.string(), fixture("escape_quotes.spec.json")});
    CHECK(c.code == cli::exit_code::ok);
    auto t = std::get<Ft>(transducer_from_json(read_json_file(out.string())));
    CHECK(t.run(U"a\"a") == U"a\\\"a");
}

TEST_CASE("synth on an unsatisfiable specification") {
    // No one-state machine with outputs of length at most one fits both examples.
    auto sigma = Alphabet::from_word(U"ab");
    std::size_t fitting = 0;
    for (const auto& x : brute::words(sigma, 1))
        for (const auto& y : brute::words(sigma, 1)) {
            Ft t(sigma, 1, 0, {0, 0}, {x, y});
            if (t.run(U"a") == U"b" && t.run(U"aa") == U"a") ++fitting;
        }
    REQUIRE(fitting == 0);
    auto r = tsynth_cli({"synth", fixture("unsat.spec.json")});
    CHECK(r.code == cli::exit_code::no_solution);
    CHECK(r.out.find("no-solution") != std::string::npos);
}

TEST_CASE("missing solver is a usage error") {
    auto spec = spec_from_json(read_json_file(fixture("unsat.spec.json")));
    spec.solver.path = "/nonexistent/solver";
    auto path = scratch("nosolver.json");
    std::ofstream(path) << to_json(spec).dump();
    auto r = tsynth_cli({"synth", path.string()});
    CHECK(r.code == cli::exit_code::usage);
    CHECK(r.err.find("/nonexistent/solver") != std::string::npos);
}

TEST_CASE("check reports each objective") {
    auto ok = tsynth_cli({"check", fixture("escape_quotes.ft.json"), fixture("escape_quotes.spec.json")});
    CHECK(ok.code == cli::exit_code::ok);
    auto id = tsynth_cli({"check", fixture("identity.ft.json"), fixture("identity.spec.json")});
    CHECK(id.code == cli::exit_code::ok);
    auto delayed = tsynth_cli({"check", fixture("delayed.ft.json"), fixture("undelay.spec.json")});
    CHECK(delayed.code == cli::exit_code::no_solution);
    CHECK(delayed.out.find("distance: FAIL") != std::string::npos);
    CHECK(delayed.out.find("types: PASS") != std::string::npos);
    auto sym = tsynth_cli({"check", fixture("escape_quotes.sft.json"), fixture("escape_quotes.spec.json")});
    CHECK(sym.code == cli::exit_code::usage);
}

TEST_CASE("run, diff and finitize") {
    auto r = tsynth_cli({"run", fixture("escape_quotes.ft.json")}, "a\"a\n\\\\\nab\n");
    CHECK(r.out == "a\\\"a\n\\\\\n");
    CHECK(r.code == cli::exit_code::no_solution);
    auto s = tsynth_cli({"run", fixture("escape_quotes.sft.json")}, "say \"hi\"\n");
    CHECK(s.out == "say \\\"hi\\\"\n");

    auto same = tsynth_cli({"diff", fixture("delayed.ft.json"), fixture("undelayed.ft.json"), "--domain", "a(ba)*a"});
    CHECK(same.code == cli::exit_code::ok);
    CHECK(same.out == "equivalent\n");
    auto differ = tsynth_cli({"diff", fixture("delayed.ft.json"), fixture("undelayed.ft.json")});
    CHECK(differ.code == cli::exit_code::no_solution);
    CHECK(differ.out.rfind("differ on \"a\"", 0) == 0);

    auto f = tsynth_cli({"finitize", fixture("escape_quotes.sft.json")});
    REQUIRE(f.code == cli::exit_code::ok);
    auto j = Json::parse(f.out);
    std::string witnesses;
    for (const auto& m : j["minterms"]) witnesses += m["witness"].get<std::string>();
    CHECK(witnesses == "a\"\\");
    auto ft = std::get<Ft>(transducer_from_json(j["machine"]));
    CHECK(ft == fixtures::escape_quotes());
}

TEST_CASE("usage errors") {
    CHECK(tsynth_cli({}).code == cli::exit_code::usage);
    CHECK(tsynth_cli({"synth"}).code == cli::exit_code::usage);
    CHECK(tsynth_cli({"synth", fixture("nope.json")}).code == cli::exit_code::usage);
    CHECK(tsynth_cli({"repair", fixture("escape_quotes.ft.json"), fixture("escape_quotes.spec.json"), "--mode", "x"}).code ==
          cli::exit_code::usage);
    CHECK(tsynth_cli({"--help"}).code == cli::exit_code::ok);
}

TEST_CASE("repair from the command line") {
    auto faulty = fixtures::inject(fixtures::escape_quotes(), fixtures::quote_faults()[0]);
    auto path = scratch("faulty.json");
    std::ofstream(path) << to_json(faulty).dump();
    for (const char* mode : {"input", "template"}) {
        auto out = scratch(std::string("repaired-") + mode + ".json");
        auto r = tsynth_cli({"repair", path.string(), fixture("escape_quotes.spec.json"), "--mode", mode, "--out",
                             out.string()});
        CHECK(r.code == cli::exit_code::ok);
        auto c = tsynth_cli({"check", out.string(), fixture("escape_quotes.spec.json")});
        CHECK(c.code == cli::exit_code::ok);
    }
}
