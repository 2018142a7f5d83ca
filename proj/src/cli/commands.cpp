#include "tsynth/cli/commands.hpp"

#include <unistd.h>

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>

#include "tsynth/cli/documents.hpp"
#include "tsynth/core/errors.hpp"
#include "tsynth/core/oracles.hpp"

namespace tsynth::cli {

namespace {

namespace fs = std::filesystem;

struct Io {
    std::istream& in;
    std::ostream& out;
    std::ostream& err;
};

void write_json(const Json& j, const std::string& path, Io& io) {
    if (path.empty() || path == "-") {
        io.out << j.dump(2) << '\n';
        return;
    }
    std::ofstream f(path);
    if (!f) throw InputError("cannot write " + path);
    f << j.dump(2) << '\n';
}

void write_text(const std::string& text, const std::string& path) {
    std::ofstream f(path);
    if (!f) throw InputError("cannot write " + path);
    f << text;
}

bool executable_on_path(const std::string& name) {
    if (name.find('/') != std::string::npos) return ::access(name.c_str(), X_OK) == 0;
    const char* path = std::getenv("PATH");
    if (!path) return false;
    std::string dirs = path;
    for (std::size_t start = 0; start <= dirs.size();) {
        auto end = dirs.find(':', start);
        if (end == std::string::npos) end = dirs.size();
        auto dir = dirs.substr(start, end - start);
        auto candidate = (dir.empty() ? fs::path(".") : fs::path(dir)) / name;
        if (::access(candidate.c_str(), X_OK) == 0) return true;
        start = end + 1;
    }
    return false;
}

SolverConfig checked_solver(const SpecDocument& doc) {
    auto cfg = solver_config(doc);
    if (!executable_on_path(cfg.path)) throw InputError("solver '" + cfg.path + "' not found or not executable");
    return cfg;
}

// ---------------------------------------------------------------- synth

struct SynthOptions {
    std::string spec;
    std::optional<std::size_t> k_max;
    std::optional<std::size_t> lookahead;
    std::string out;
    bool emit_smt = false;
    bool stats = false;
    std::size_t jobs = 1;
};

Json result_document(const SynthesisResult& r) {
    if (r.lookahead) return to_json(*r.lookahead);
    if (r.sft) return to_json(*r.sft);
    return to_json(*r.ft);
}

std::string smt_path(const SynthOptions& o) {
    fs::path base = o.out.empty() || o.out == "-" ? fs::path(o.spec) : fs::path(o.out);
    return base.replace_extension(".smt2").string();
}

int synth(const SynthOptions& o, Io& io) {
    auto doc = spec_from_json(read_json_file(o.spec));
    auto spec = to_synthesis_spec(doc);
    if (o.lookahead && !spec.lookahead) spec.lookahead = 1;
    auto cfg = checked_solver(doc);

    SynthesisResult r;
    if (o.k_max || o.lookahead || o.jobs > 1) {
        DeepeningBounds b{o.k_max.value_or(spec.k), o.lookahead.value_or(spec.lookahead.value_or(1)), o.jobs};
        r = deepening_synthesize(spec, b, cfg);
    } else {
        r = synthesize(spec, cfg);
    }

    io.out << "outcome: " << outcome_name(r.outcome) << '\n';
    for (const auto& line : r.report) io.out << "  " << line << '\n';
    if (r.outcome == Outcome::Found) write_json(result_document(r), o.out, io);

    if (o.emit_smt) {
        auto last = spec;
        if (!r.attempts.empty()) {
            last.k = r.attempts.back().k;
            if (last.lookahead) last.lookahead = r.attempts.back().lookahead;
        }
        if (r.outcome == Outcome::Found) {
            last.k = r.lookahead ? r.lookahead->num_states() : r.ft->num_states();
            if (r.lookahead) last.lookahead = r.lookahead->num_lookahead_states();
        }
        auto fin = finitize_spec(last);
        auto enc = encode_spec(last, fin);
        write_text(emit_smtlib(enc.formula, cfg.logic), smt_path(o));
        io.err << "smt-lib written to " << smt_path(o) << '\n';
    }

    if (o.stats) {
        io.out << "variables: " << r.stats.variables << '\n';
        for (const auto& [family, s] : r.stats.families)
            io.out << "  " << std::left << std::setw(20) << family_name(family) << s.constraints
                   << " constraints, at most " << s.max_variables << " variables each\n";
        for (const auto& a : r.attempts)
            io.out << "attempt k=" << a.k << (spec.lookahead ? " lookahead=" + std::to_string(a.lookahead) : "")
                   << ": " << outcome_name(a.outcome) << " in " << std::fixed << std::setprecision(3) << a.seconds
                   << " s\n";
        io.out.unsetf(std::ios::floatfield);
    }

    switch (r.outcome) {
        case Outcome::Found: return exit_code::ok;
        case Outcome::NoSolution: return exit_code::no_solution;
        case Outcome::Timeout: return exit_code::timeout;
    }
    return exit_code::internal;
}

// ---------------------------------------------------------------- check

struct Checker {
    Io& io;
    bool all = true;

    void verdict(const std::string& objective, std::optional<std::string> failure) {
        if (failure) {
            all = false;
            io.out << objective << ": FAIL " << *failure << '\n';
        } else {
            io.out << objective << ": PASS\n";
        }
    }
};

std::optional<std::string> counterexample(const std::optional<Word>& w) {
    if (!w) return std::nullopt;
    return "on input " + quote(*w);
}

// Finite view of a transducer against a finitized specification.
void require_alphabet(const Alphabet& a, const FiniteSpec& fin) {
    if (!(a == fin.sigma)) throw InputError("transducer alphabet differs from the specification alphabet");
}

int check(const std::string& machine_file, const std::string& spec_file, Io& io) {
    auto machine = transducer_from_json(read_json_file(machine_file));
    auto doc = spec_from_json(read_json_file(spec_file));
    auto spec = to_synthesis_spec(doc);
    if (auto* sft = std::get_if<Sft>(&machine)) {
        if (spec.alphabet) throw InputError("a symbolic transducer needs a symbolic specification");
        if (!(sft->universe() == spec.universe)) throw InputError("transducer universe differs from the specification");
        for (auto& p : sft->predicates()) spec.custom_minterms.push_back(p);
    }
    auto fin = finitize_spec(spec);
    Checker c{io};

    std::optional<std::string> bad_example;
    for (std::size_t i = 0; i < spec.examples.size() && !bad_example; ++i) {
        const auto& [in, want] = spec.examples[i];
        const auto& fin_in = fin.examples[i].first;
        std::optional<Word> got = std::visit(
            [&](const auto& m) -> std::optional<Word> {
                using M = std::decay_t<decltype(m)>;
                if constexpr (std::is_same_v<M, Sft>) return m.run(in);
                else if constexpr (std::is_same_v<M, DomainRestrictedFt>) return m.run(fin_in);
                else return m.run(fin_in);
            },
            machine);
        const auto& expect = std::holds_alternative<Sft>(machine) ? want : fin.examples[i].second;
        if (!got) bad_example = "input " + quote(in) + " lies outside every domain";
        else if (*got != expect)
            bad_example = "on " + quote(in) + ": expected " + quote(expect) + ", got " + quote(*got);
    }
    c.verdict("examples", bad_example);

    std::visit(
        [&](const auto& m) {
            using M = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<M, DomainRestrictedFt>) {
                for (const auto& b : m.branches()) require_alphabet(b.machine.alphabet(), fin);
                c.verdict("domain", counterexample(dfa_emptiness(dfa_difference(fin.input, m.domain()))));
                std::optional<std::string> types, dist;
                for (const auto& b : m.branches()) {
                    auto p = dfa_intersect(fin.input, b.domain);
                    if (fin.typed && !types) types = counterexample(hoare_check(p, b.machine, fin.output));
                    if (auto* mb = std::get_if<MeanBound>(&spec.distance); mb && !dist)
                        dist = counterexample(check_mean_aggregate(p, b.machine, mb->d));
                    if (auto* tb = std::get_if<TotalBound>(&spec.distance); tb && !dist)
                        dist = counterexample(check_total_aggregate(p, b.machine, tb->bound));
                }
                if (fin.typed) c.verdict("types", types);
                if (!std::holds_alternative<std::monostate>(spec.distance)) c.verdict("distance", dist);
            } else if constexpr (std::is_same_v<M, LookaheadFt>) {
                require_alphabet(m.alphabet(), fin);
                if (fin.typed) c.verdict("types", counterexample(lookahead_hoare_check(fin.input, m, fin.output)));
                if (auto* mb = std::get_if<MeanBound>(&spec.distance))
                    c.verdict("distance", counterexample(lookahead_check_mean_aggregate(fin.input, m, mb->d)));
                if (auto* tb = std::get_if<TotalBound>(&spec.distance))
                    c.verdict("distance", counterexample(lookahead_check_total_aggregate(fin.input, m, tb->bound)));
            } else {
                Ft ft = [&] {
                    if constexpr (std::is_same_v<M, Sft>) return finitize_sft(m, *fin.minterms);
                    else return m;
                }();
                require_alphabet(ft.alphabet(), fin);
                if (fin.typed) c.verdict("types", counterexample(hoare_check(fin.input, ft, fin.output)));
                if (auto* mb = std::get_if<MeanBound>(&spec.distance))
                    c.verdict("distance", counterexample(check_mean_aggregate(fin.input, ft, mb->d)));
                if (auto* tb = std::get_if<TotalBound>(&spec.distance))
                    c.verdict("distance", counterexample(check_total_aggregate(fin.input, ft, tb->bound)));
            }
        },
        machine);
    io.out << (c.all ? "all objectives pass" : "some objectives fail") << '\n';
    return c.all ? exit_code::ok : exit_code::no_solution;
}

// ---------------------------------------------------------------- run

int run_lines(const std::string& machine_file, Io& io) {
    auto machine = transducer_from_json(read_json_file(machine_file));
    int status = exit_code::ok;
    for (std::string line; std::getline(io.in, line);) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        auto w = from_utf8(line);
        try {
            auto y = std::visit([&](const auto& m) -> std::optional<Word> { return m.run(w); }, machine);
            if (y) {
                io.out << to_utf8(*y) << '\n';
            } else {
                io.err << quote(w) << ": outside every domain\n";
                status = exit_code::no_solution;
            }
        } catch (const InputError& e) {
            io.err << quote(w) << ": " << e.what() << '\n';
            status = exit_code::no_solution;
        }
    }
    return status;
}

// ---------------------------------------------------------------- diff

int diff(const std::string& first, const std::string& second, const std::string& spec_file, const std::string& domain,
         Io& io) {
    if (!spec_file.empty() && !domain.empty()) throw InputError("give either --spec or --domain, not both");
    auto a = transducer_from_json(read_json_file(first));
    auto b = transducer_from_json(read_json_file(second));
    std::optional<Regex> re;
    if (!domain.empty()) re = Regex::parse_utf8(domain);
    std::optional<SynthesisSpec> spec;
    if (!spec_file.empty()) spec = to_synthesis_spec(spec_from_json(read_json_file(spec_file)));

    std::optional<Word> w;
    std::optional<MintermMap> mm;
    if (auto* t1 = std::get_if<Ft>(&a)) {
        auto* t2 = std::get_if<Ft>(&b);
        if (!t2) throw InputError("diff compares two transducers of the same kind");
        Dfa p = Dfa::universal(t1->alphabet());
        if (re) p = compile_regex(*re, t1->alphabet());
        if (spec) {
            auto fin = finitize_spec(*spec);
            require_alphabet(t1->alphabet(), fin);
            p = fin.input;
        }
        w = find_distinguishing_input(*t1, *t2, p);
    } else if (auto* s1 = std::get_if<Sft>(&a)) {
        auto* s2 = std::get_if<Sft>(&b);
        if (!s2) throw InputError("diff compares two transducers of the same kind");
        if (!(s1->universe() == s2->universe())) throw InputError("transducer universes differ");
        auto preds = s1->predicates();
        for (auto& p : s2->predicates()) preds.push_back(p);
        std::optional<Dfa> p;
        if (spec) {
            if (spec->alphabet) throw InputError("symbolic transducers need a symbolic specification");
            spec->custom_minterms.insert(spec->custom_minterms.end(), preds.begin(), preds.end());
            auto fin = finitize_spec(*spec);
            mm = *fin.minterms;
            p = fin.input;
        } else {
            if (re)
                for (auto& q : regex_predicates(*re, s1->universe())) preds.push_back(q);
            mm = compute_minterms(preds, s1->universe());
            p = re ? compile_regex(*re, *mm) : Dfa::universal(mm->alphabet());
        }
        w = find_distinguishing_input(finitize_sft(*s1, *mm), finitize_sft(*s2, *mm), *p);
    } else {
        throw InputError("diff supports plain and symbolic transducers");
    }

    if (!w) {
        io.out << "equivalent\n";
        return exit_code::ok;
    }
    auto out_of = [&](const TransducerDocument& t) {
        return std::visit(
            [&](const auto& m) -> std::string {
                if constexpr (requires { m.run(*w); }) {
                    auto y = m.run(*w);
                    if constexpr (std::is_same_v<decltype(y), Word>) return quote(y);
                    else return y ? quote(*y) : "undefined";
                }
                return "";
            },
            t);
    };
    io.out << "differ on " << quote(*w) << ": " << out_of(a) << " vs " << out_of(b) << '\n';
    if (mm) io.out << "(characters are minterm witnesses)\n";
    return exit_code::no_solution;
}

// ---------------------------------------------------------------- repair

int repair(const std::string& machine_file, const std::string& spec_file, const std::string& mode,
           const std::string& out, Io& io) {
    auto machine = transducer_from_json(read_json_file(machine_file));
    auto doc = spec_from_json(read_json_file(spec_file));
    auto spec = to_synthesis_spec(doc);
    RepairProblem prob{Ft::identity(Alphabet::from_word(U"a")), spec.examples, spec.input_type, spec.output_type,
                       spec.k, spec.l, spec.distance, spec.custom_minterms};
    if (auto* ft = std::get_if<Ft>(&machine)) prob.bad = *ft;
    else if (auto* sft = std::get_if<Sft>(&machine)) prob.bad = *sft;
    else throw InputError("repair takes a plain or symbolic transducer");
    auto cfg = checked_solver(doc);

    auto r = mode == "template" ? repair_with_template(prob, cfg) : repair_from_input(prob, cfg);
    io.out << "outcome: " << repair_outcome_name(r.outcome) << '\n';
    if (!r.suspicious.empty()) {
        io.out << "suspicious transitions:";
        for (const auto& [q, col] : r.suspicious) io.out << " (" << q << ", " << col << ")";
        io.out << '\n';
    }
    for (const auto& line : r.report) io.out << "  " << line << '\n';
    if (r.machine) {
        auto j = to_json(*r.machine);
        if (r.minterms) j["minterms"] = to_json(*r.minterms);
        write_json(j, out, io);
    }
    switch (r.outcome) {
        case RepairOutcome::Repaired: return exit_code::ok;
        case RepairOutcome::NoRepair: return exit_code::no_solution;
        case RepairOutcome::Timeout: return exit_code::timeout;
    }
    return exit_code::internal;
}

// ---------------------------------------------------------------- finitize

int finitize(const std::string& file, const std::string& out, Io& io) {
    auto j = read_json_file(file);
    Json result;
    if (j.contains("kind") && j["kind"] == "sft") {
        auto sft = std::get<Sft>(transducer_from_json(j));
        auto [ft, mm] = finitize_sft(sft);
        result = {{"machine", to_json(ft)}, {"minterms", to_json(mm)}};
    } else {
        auto [dfa, mm] = finitize_sfa(sfa_from_json(j));
        result = {{"machine", to_json(dfa)}, {"minterms", to_json(mm)}};
    }
    write_json(result, out, io);
    return exit_code::ok;
}

}  // namespace

int run(int argc, const char* const* argv, std::istream& in, std::ostream& out, std::ostream& err) {
    Io io{in, out, err};
    CLI::App app{"Synthesis and repair of finite-state transducers", "tsynth"};
    app.require_subcommand(1);

    SynthOptions so;
    auto* synth_cmd = app.add_subcommand("synth", "Synthesize a transducer from a specification");
    synth_cmd->add_option("spec", so.spec, "Specification file")->required()->check(CLI::ExistingFile);
    synth_cmd->add_option("--k-max", so.k_max, "Try 1..N states")->check(CLI::PositiveNumber);
    synth_cmd->add_option("--lookahead", so.lookahead, "Try 1..N lookahead states")->check(CLI::PositiveNumber);
    synth_cmd->add_option("--out,-o", so.out, "Output file (default stdout)");
    synth_cmd->add_flag("--emit-smt", so.emit_smt, "Write the SMT-LIB document beside the output");
    synth_cmd->add_flag("--stats", so.stats, "Print constraint statistics and attempts");
    synth_cmd->add_option("--jobs,-j", so.jobs, "Concurrent solver processes")->check(CLI::PositiveNumber);

    std::string machine, spec, second, domain, output, mode = "input";
    auto* check_cmd = app.add_subcommand("check", "Check a transducer against a specification");
    check_cmd->add_option("transducer", machine)->required()->check(CLI::ExistingFile);
    check_cmd->add_option("spec", spec)->required()->check(CLI::ExistingFile);

    auto* run_cmd = app.add_subcommand("run", "Apply a transducer to each line of stdin");
    run_cmd->add_option("transducer", machine)->required()->check(CLI::ExistingFile);

    auto* diff_cmd = app.add_subcommand("diff", "Find a shortest input on which two transducers differ");
    diff_cmd->add_option("first", machine)->required()->check(CLI::ExistingFile);
    diff_cmd->add_option("second", second)->required()->check(CLI::ExistingFile);
    diff_cmd->add_option("--spec", spec, "Restrict to the specification's input type")->check(CLI::ExistingFile);
    diff_cmd->add_option("--domain", domain, "Restrict to a regex");

    auto* repair_cmd = app.add_subcommand("repair", "Repair a transducer against a specification");
    repair_cmd->add_option("transducer", machine)->required()->check(CLI::ExistingFile);
    repair_cmd->add_option("spec", spec)->required()->check(CLI::ExistingFile);
    repair_cmd->add_option("--mode", mode, "input or template")->check(CLI::IsMember({"input", "template"}));
    repair_cmd->add_option("--out,-o", output, "Output file (default stdout)");

    auto* fin_cmd = app.add_subcommand("finitize", "Finitize a symbolic automaton or transducer");
    fin_cmd->add_option("file", machine)->required()->check(CLI::ExistingFile);
    fin_cmd->add_option("--out,-o", output, "Output file (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? exit_code::ok : exit_code::usage;
    }

    try {
        if (*synth_cmd) return synth(so, io);
        if (*check_cmd) return check(machine, spec, io);
        if (*run_cmd) return run_lines(machine, io);
        if (*diff_cmd) return diff(machine, second, spec, domain, io);
        if (*repair_cmd) return repair(machine, spec, mode, output, io);
        if (*fin_cmd) return finitize(machine, output, io);
    } catch (const InputError& e) {
        err << "error: " << e.what() << '\n';
        return exit_code::usage;
    } catch (const ConstructionError& e) {
        err << "error: " << e.what() << '\n';
        return exit_code::usage;
    } catch (const SoundnessError& e) {
        err << "internal error: " << e.what() << '\n';
        return exit_code::internal;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << '\n';
        return exit_code::internal;
    }
    return exit_code::usage;
}

}  // namespace tsynth::cli
