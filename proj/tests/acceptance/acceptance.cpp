// Acceptance checks: one PASS/FAIL line per criterion, non-zero exit on any failure.

#include <chrono>
#include <fstream>
#include <filesystem>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include "brute.hpp"
#include "fixtures.hpp"
#include "symbolic_fixtures.hpp"
#include "tsynth/cli/commands.hpp"
#include "tsynth/cli/documents.hpp"
#include "tsynth/core/errors.hpp"
#include "tsynth/core/oracles.hpp"

using namespace tsynth;

namespace {

namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

const fs::path kFixtures = TSYNTH_FIXTURES;

struct Report {
    bool pass = true;
    std::vector<std::string> notes;

    void require(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            notes.push_back("failed: " + what);
        }
    }
    void note(std::string s) { notes.push_back(std::move(s)); }
};

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string seconds(double s) {
    std::ostringstream out;
    out.precision(2);
    out << std::fixed << s << " s";
    return out.str();
}

SolverConfig config(int timeout) {
    auto cfg = SolverConfig::from_environment();
    cfg.timeout = std::chrono::seconds(timeout);
    return cfg;
}

struct Invocation {
    int code;
    std::string out;
    std::string err;
};

Invocation tsynth_cli(std::vector<std::string> args) {
    args.insert(args.begin(), "tsynth");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::istringstream in;
    std::ostringstream out, err;
    int code = cli::run(static_cast<int>(argv.size()), argv.data(), in, out, err);
    return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
    auto dir = fs::temp_directory_path() / "tsynth-acceptance";
    fs::create_directories(dir);
    return dir / name;
}

Dfa quotes_dfa(const std::string& regex) { return compile_regex(Regex::parse_utf8(regex), fixtures::quotes()); }

// Synthesizes through the command line and compares with the reference on L(P) up to length 8.
void escape_run(Report& v, const char* spec_name, const std::string& label) {
    auto spec_file = (kFixtures / spec_name).string();
    auto out = scratch(std::string(spec_name) + ".out.json");
    fs::remove(out);
    auto start = Clock::now();
    auto r = tsynth_cli({"synth", spec_file, "--out", out.string()});
    auto took = seconds_since(start);
    v.note(label + ": exit " + std::to_string(r.code) + " in " + seconds(took));
    v.require(r.code == cli::exit_code::ok, label + ": synth returns Found");
    v.require(took <= 60, label + ": within 60 s");
    if (r.code != cli::exit_code::ok) return;
    auto doc = spec_from_json(read_json_file(spec_file));
    auto p = quotes_dfa(std::get<std::string>(*doc.input_type));
    auto t = std::get<Ft>(transducer_from_json(read_json_file(out.string())));
    auto reference = fixtures::escape_quotes();
    std::size_t checked = 0, disagree = 0;
    for (const auto& w : brute::words(fixtures::quotes(), 8))
        if (p.accepts(w)) {
            ++checked;
            if (t.run(w) != reference.run(w)) ++disagree;
        }
    v.note(label + ": " + std::to_string(checked) + " inputs compared, " + std::to_string(disagree) + " disagree");
    v.require(disagree == 0, label + ": agrees with the reference on L(P) up to length 8");
}

Report escape_quotes_end_to_end() {
    Report v;
    escape_run(v, "escape_quotes_printed.spec.json", "printed types");
    // Not part of the verdict: the same run with the types the reference machine satisfies.
    Report fitting;
    escape_run(fitting, "escape_quotes.spec.json", "table-consistent types");
    for (auto& n : fitting.notes) v.note("(reference only) " + n);
    v.note(std::string("(reference only) table-consistent run ") + (fitting.pass ? "passes" : "fails"));
    return v;
}

// Runs (T, R) directly from the definition: R reads the reversed suffix after each position.
Word run_with_lookahead(const LookaheadFt& t, const Word& w) {
    const auto& r = t.lookahead();
    const auto& sigma = t.alphabet();
    Word out;
    State q = t.init();
    for (std::size_t i = 0; i < w.size(); ++i) {
        State rho = r.init();
        for (std::size_t j = w.size(); j-- > i + 1;) rho = r.step(rho, sigma.require_index(w[j]));
        auto a = sigma.require_index(w[i]);
        out += t.output(q, rho, a);
        q = t.next(q, rho, a);
    }
    return out;
}

Report get_tags() {
    Report v;
    SynthesisSpec spec;
    spec.alphabet = fixtures::tags();
    spec.k = 2;
    spec.l = 2;
    spec.lookahead = 2;
    spec.examples = fixtures::tags_examples();
    spec.input_type = Regex::parse(fixtures::tags_input_regex());
    spec.output_type = Regex::parse(fixtures::tags_output_regex());
    spec.distance = MeanBound{Rational(1)};
    auto start = Clock::now();
    auto result = synthesize_with_lookahead(spec, config(120));
    auto took = seconds_since(start);
    v.note(std::string("outcome ") + outcome_name(result.outcome) + " in " + seconds(took));
    v.require(result.outcome == Outcome::Found && result.lookahead, "synthesis returns Found");
    v.require(took <= 120, "within 120 s");
    if (!result.lookahead) return v;
    for (const auto& [in, out] : spec.examples)
        v.require(run_with_lookahead(*result.lookahead, in) == out, "example " + quote(in) + " -> " + quote(out));
    return v;
}

Report distance_discrimination() {
    Report v;
    auto sigma = fixtures::ab();
    auto p = compile_regex(Regex::parse(U"a(ba)*a"), sigma);
    SynthesisSpec spec;
    spec.alphabet = sigma;
    spec.k = 4;
    spec.l = 1;
    spec.examples = fixtures::undelay_examples();
    spec.input_type = p;
    spec.distance = MeanBound{Rational(1, 2)};
    auto start = Clock::now();
    auto result = synthesize(spec, config(60));
    auto took = seconds_since(start);
    v.note(std::string("outcome ") + outcome_name(result.outcome) + " in " + seconds(took));
    v.require(result.outcome == Outcome::Found, "synthesis returns Found");
    v.require(took <= 60, "within 60 s");
    if (result.ft) {
        auto file = scratch("undelay.out.json");
        std::ofstream(file) << to_json(*result.ft).dump(2);
        auto d = tsynth_cli({"diff", file.string(), (kFixtures / "undelayed.ft.json").string(), "--domain", "a(ba)*a"});
        v.note("diff against the undelayed machine: " + d.out.substr(0, d.out.find('\n')));
        v.require(d.code == cli::exit_code::ok && d.out == "equivalent\n", "equivalent to the undelayed machine on P");
    }
    auto cex = check_mean_aggregate(p, fixtures::delayed(), Rational(1, 2));
    v.require(cex.has_value(), "delayed machine rejected at d = 1/2");
    if (cex) v.note("delayed machine exceeds 1/2 on " + quote(*cex));
    return v;
}

Dfa random_live_dfa(std::mt19937& rng, const Alphabet& sigma, std::size_t states) {
    for (;;) {
        auto d = brute::random_dfa(rng, sigma, states);
        if (!dfa_is_empty(d)) return d;
    }
}

Report encoding_properties() {
    Report v;
    std::mt19937 rng(2024);
    const std::vector<Rational> bounds{Rational(1, 2), Rational(1), Rational(3, 2), Rational(2)};
    std::size_t instances = 0, typed = 0, distanced = 0, violations = 0;
    auto fail = [&](const std::string& what) {
        if (++violations <= 5) v.note("violation: " + what);
    };
    for (int round = 0; round < 120; ++round) {
        auto sigma = Alphabet::from_word(std::u32string(U"abc").substr(0, 1 + round % 3));
        std::size_t k = 1 + (round / 3) % 3;
        std::size_t l = 1 + (round / 9) % 2;
        auto target = brute::random_ft(rng, sigma, k, l);
        auto p = random_live_dfa(rng, sigma, 2 + round % 2);
        ++instances;

        // (a) examples drawn from a random machine: Sat, and the model reproduces them.
        SynthesisSpec ex;
        ex.alphabet = sigma;
        ex.k = k;
        ex.l = l;
        for (int i = 0; i < 5; ++i) {
            auto w = brute::random_word(rng, sigma, 5);
            ex.examples.emplace_back(w, target.run(w));
        }
        auto fin = finitize_spec(ex);
        auto enc = encode_spec(ex, fin);
        auto out = solve(enc.formula, config(60));
        if (out.verdict != Verdict::Sat) {
            fail("example encoding not Sat in round " + std::to_string(round));
            continue;
        }
        auto t = decode_model(out.model, enc.reg);
        for (const auto& [in, want] : ex.examples)
            if (t.run(in) != want) fail("decoded machine misses an example in round " + std::to_string(round));

        // (b), (c) types from the target's own image, and a bound the target meets.
        auto typed_spec = ex;
        typed_spec.input_type = p;
        typed_spec.output_type = output_language(p, target);
        Rational d = bounds[round % bounds.size()];
        bool with_distance = !check_mean_aggregate(p, target, d).has_value();
        if (with_distance) typed_spec.distance = MeanBound{d};
        SynthesisResult r;
        try {
            r = synthesize(typed_spec, config(60));
        } catch (const SoundnessError& e) {
            fail(std::string("soundness error: ") + e.what());
            continue;
        }
        if (r.outcome != Outcome::Found) {
            fail("typed instance not Found in round " + std::to_string(round));
            continue;
        }
        ++typed;
        if (hoare_check(p, *r.ft, std::get<Dfa>(*typed_spec.output_type)))
            fail("hoare_check rejects a Found model in round " + std::to_string(round));
        if (!with_distance) continue;
        ++distanced;
        if (check_mean_aggregate(p, *r.ft, d)) fail("check_mean_aggregate rejects a Found model");
        for (const auto& w : brute::words(sigma, 5))
            if (!w.empty() && p.accepts(w) && mean_edit_distance(w, r.ft->run(w)) > d)
                fail("sampled mean edit distance above the bound on " + quote(w));
    }
    v.note(std::to_string(instances) + " instances, " + std::to_string(typed) + " typed, " +
           std::to_string(distanced) + " with a distance bound, " + std::to_string(violations) + " violations");
    v.require(instances >= 100, "at least 100 instances");
    v.require(distanced > 0, "some instances carry a distance bound");
    v.require(violations == 0, "no violations");
    return v;
}

Report finitization_fidelity() {
    Report v;
    auto [ft, mm] = finitize_sft(fixtures::escape_quotes_sft());
    v.require(ft == fixtures::escape_quotes(), "finite machine equals the reference (states, transitions, outputs)");
    const std::vector<std::pair<IntervalPred, Symbol>> expected{
        {fixtures::not_quote_or_backslash(), U'a'}, {IntervalPred::single(U'"'), U'"'}, {IntervalPred::single(U'\\'), U'\\'}};
    bool same = mm.size() == expected.size();
    for (std::size_t i = 0; same && i < expected.size(); ++i)
        same = mm.minterms()[i].pred == expected[i].first && mm.minterms()[i].witness == expected[i].second;
    v.require(same, "minterms and witnesses a, \", \\");
    v.require(finitize_sft(recover_sft(fixtures::escape_quotes(), mm), mm) == fixtures::escape_quotes(),
              "recovery round trip on the escaping machine");

    std::mt19937 rng(77);
    auto cm = compute_minterms({IntervalPred::range(U'a', U'z'), IntervalPred::range(U'A', U'Z'),
                                IntervalPred::single(U'"'), IntervalPred::range(U'0', U'9')});
    std::size_t ok = 0;
    for (int round = 0; round < 50; ++round) {
        auto t = brute::random_ft(rng, cm.alphabet(), 1 + round % 3, 3);
        if (finitize_sft(recover_sft(t, cm), cm) == t) ++ok;
    }
    v.note(std::to_string(ok) + "/50 random round trips");
    v.require(ok == 50, "recovery round trip on 50 random machines");
    return v;
}

Report repair_faults() {
    Report v;
    const auto in_re = fixtures::quotes_fitting_input_regex();
    const auto out_re = fixtures::quotes_fitting_output_regex();
    auto p = compile_regex(Regex::parse(in_re), fixtures::quotes());
    auto q = compile_regex(Regex::parse(out_re), fixtures::quotes());
    const auto faults = fixtures::quote_faults();
    for (std::size_t i = 0; i < faults.size(); ++i) {
        const auto& fault = faults[i];
        auto bad = fixtures::inject(fixtures::escape_quotes(), fault);
        auto label = "fault " + std::to_string(i + 1);
        Transition injected{fault.from, fixtures::quotes().require_index(fault.on)};
        v.require(localize_faults(bad, fixtures::quotes_examples()).count(injected) == 1,
                  label + ": localized");
        RepairProblem prob{bad, fixtures::quotes_examples(), Regex::parse(in_re), Regex::parse(out_re), 2, 2, {}, {}};
        for (bool templ : {false, true}) {
            auto name = label + (templ ? " template" : " input");
            auto start = Clock::now();
            auto r = templ ? repair_with_template(prob, config(60)) : repair_from_input(prob, config(60));
            auto took = seconds_since(start);
            v.note(name + ": " + repair_outcome_name(r.outcome) + " in " + seconds(took));
            v.require(r.outcome == RepairOutcome::Repaired && r.machine, name + ": repaired");
            v.require(took <= 60, name + ": within 60 s");
            if (!r.machine) continue;
            for (const auto& [in, out] : fixtures::quotes_examples())
                v.require(r.machine->run(in) == out, name + ": example " + quote(in));
            v.require(!dfa_emptiness(dfa_difference(p, r.machine->domain())), name + ": covers P");
            for (const auto& b : r.machine->branches())
                v.require(!hoare_check(dfa_intersect(p, b.domain), b.machine, q), name + ": well typed");
        }
    }
    return v;
}

// States 0..n-1 in a cycle on the first symbol; every state is live when one is final.
Dfa cyclic(const Alphabet& sigma, std::size_t n, std::vector<bool> finals) {
    std::vector<State> delta;
    for (State s = 0; s < n; ++s)
        for (std::size_t a = 0; a < sigma.size(); ++a) delta.push_back(static_cast<State>((s + a + 1) % n));
    return Dfa(sigma, n, 0, std::move(finals), delta);
}

Report encoding_sizes() {
    Report v;
    struct Setting {
        const char32_t* sigma;
        std::size_t k, l, qp, qq;
        Example example;
    };
    const std::vector<Setting> settings{
        {U"abc", 2, 2, 2, 2, {U"abc", U"aabb"}},
        {U"ab", 1, 1, 3, 2, {U"ab", U"b"}},
        {U"abcd", 3, 2, 2, 3, {U"abcd", U"dcbaa"}},
    };
    for (const auto& s : settings) {
        auto sigma = Alphabet::from_word(s.sigma);
        const std::size_t n = s.example.first.size(), m = s.example.second.size(), k = s.k, a = sigma.size();
        std::vector<bool> fp(s.qp, false), fq(s.qq, true);
        fp[0] = true;
        fq[0] = false;
        VarRegistry reg(k, sigma, s.l);
        auto ex = encoding_stats(encode_example(reg, s.example));
        auto ty = encoding_stats(encode_types(reg, cyclic(sigma, s.qp, fp), cyclic(sigma, s.qq, fq)));
        auto di = encoding_stats(encode_distance(reg, Rational(1, 2)));
        std::ostringstream label;
        label << "k=" << k << " |S|=" << a << " n=" << n << " m=" << m << " |QP|=" << s.qp << " |QQ|=" << s.qq;
        const std::vector<std::tuple<const char*, std::size_t, std::size_t>> rows{
            {"example init", ex.count(Family::ExampleInit), 1},
            {"example step", ex.count(Family::ExampleStep), n * m * k * a},
            {"example final", ex.count(Family::ExampleFinal), 1},
            {"type init", ty.count(Family::TypeInit), 1},
            {"type step", ty.count(Family::TypeStep), s.qp * k * s.qq * a},
            {"type final", ty.count(Family::TypeFinal), 1},
            {"edit contains", di.count(Family::EditContains), k * a},
            {"edit excludes", di.count(Family::EditExcludes), k * a},
            {"energy init", di.count(Family::EnergyInit), 1},
            {"energy step", di.count(Family::EnergyStep), s.qp * k * s.qq * a},
            {"energy final", di.count(Family::EnergyFinal), 1},
        };
        bool all = true;
        for (const auto& [name, got, want] : rows)
            if (got != want) {
                all = false;
                v.require(false, label.str() + " " + name + ": " + std::to_string(got) + " != " + std::to_string(want));
            }
        v.note(label.str() + (all ? ": all 11 counts exact" : ": mismatch"));
    }
    return v;
}

Report edit_distance_oracle() {
    Report v;
    v.require(edit_distance(U"ab", U"acb") == 1, "ed(ab, acb) = 1");
    v.require(mean_edit_distance(U"ab", U"acb") == Rational(1, 2), "mean(ab, acb) = 1/2");
    std::mt19937 rng(1000);
    auto sigma = Alphabet::from_word(U"abc");
    std::size_t bad = 0;
    for (int round = 0; round < 1000; ++round) {
        auto x = brute::random_word(rng, sigma, 6);
        auto y = brute::random_word(rng, sigma, 6);
        auto z = brute::random_word(rng, sigma, 6);
        auto xy = edit_distance(x, y), yz = edit_distance(y, z), xz = edit_distance(x, z);
        bool ok = edit_distance(x, x) == 0 && (xy == 0) == (x == y) && xy == edit_distance(y, x) && xz <= xy + yz &&
                  xy == brute::levenshtein_recursive(x, y);
        if (!ok) ++bad;
    }
    v.note("1000 triples, " + std::to_string(bad) + " violations");
    v.require(bad == 0, "metric properties and agreement with the recursive definition");
    return v;
}

}  // namespace

int main() {
    const std::vector<std::pair<const char*, std::function<Report()>>> criteria{
        {"escapeQuotes end-to-end", escape_quotes_end_to_end},
        {"getTags with lookahead", get_tags},
        {"distance discrimination", distance_discrimination},
        {"encoding property suites", encoding_properties},
        {"finitization fidelity", finitization_fidelity},
        {"repair of injected faults", repair_faults},
        {"encoding sizes", encoding_sizes},
        {"edit-distance oracle", edit_distance_oracle},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Report v;
        try {
            v = criteria[i].second();
        } catch (const std::exception& e) {
            v.pass = false;
            v.note(std::string("exception: ") + e.what());
        }
        std::cout << "criterion " << i + 1 << ": " << (v.pass ? "PASS" : "FAIL") << "  " << criteria[i].first << '\n';
        for (const auto& n : v.notes) std::cout << "    " << n << '\n';
        std::cout.flush();
        if (!v.pass) ++failed;
    }
    std::cout << criteria.size() - failed << "/" << criteria.size() << " criteria pass\n";
    return failed == 0 ? 0 : 1;
}
