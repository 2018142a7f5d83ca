#include "tsynth/driver/driver.hpp"

#include <atomic>
#include <exception>
#include <mutex>
#include <thread>

#include "tsynth/core/errors.hpp"
#include "tsynth/core/oracles.hpp"

namespace tsynth {

namespace {

template <class... Fs>
struct Overload : Fs... {
    using Fs::operator()...;
};
template <class... Fs>
Overload(Fs...) -> Overload<Fs...>;

Dfa finite_type(const TypeSpec& t, const Alphabet& sigma) {
    return std::visit(Overload{[&](const Dfa& d) {
                                   require_same_alphabet(d.alphabet(), sigma);
                                   return d;
                               },
                               [&](const Regex& re) { return compile_regex(re, sigma); },
                               [](const Sfa&) -> Dfa {
                                   throw InputError("a symbolic type needs a specification without a fixed alphabet");
                               }},
                      t);
}

Dfa symbolic_type(const TypeSpec& t, const MintermMap& mm) {
    return std::visit(Overload{[](const Dfa&) -> Dfa {
                                   throw InputError("a finite type needs a specification with a fixed alphabet");
                               },
                               [&](const Regex& re) { return compile_regex(re, mm); },
                               [&](const Sfa& m) {
                                   if (!(m.universe() == mm.universe()))
                                       throw InputError("symbolic type is over a different universe");
                                   return finitize_sfa(m, mm);
                               }},
                      t);
}

void add_predicates(const std::optional<TypeSpec>& t, const Universe& u, std::vector<IntervalPred>& out) {
    if (!t) return;
    std::visit(Overload{[](const Dfa&) {},
                        [&](const Regex& re) {
                            auto p = regex_predicates(re, u);
                            out.insert(out.end(), p.begin(), p.end());
                        },
                        [&](const Sfa& m) {
                            auto p = m.predicates();
                            out.insert(out.end(), p.begin(), p.end());
                        }},
               *t);
}

bool has_distance(const SynthesisSpec& spec) { return !std::holds_alternative<std::monostate>(spec.distance); }

// Independent checks of a decoded machine; throws SoundnessError on failure.
template <class Machine, class Hoare, class Mean, class Total>
std::vector<std::string> verify(const SynthesisSpec& spec, const FiniteSpec& fin, const Machine& t, Hoare&& hoare,
                                Mean&& mean, Total&& total) {
    std::vector<std::string> report;
    for (const auto& [in, out] : fin.examples) {
        auto got = t.run(in);
        if (got != out)
            throw SoundnessError("decoded machine maps " + quote(in) + " to " + quote(got) + ", expected " + quote(out));
    }
    report.push_back("examples: ok (" + std::to_string(fin.examples.size()) + ")");
    if (t.max_output_length() > spec.l) throw SoundnessError("decoded machine exceeds the output bound");
    if (fin.typed) {
        auto bad = hoare(fin.input, t, fin.output);
        if (bad) throw SoundnessError("decoded machine violates the types on " + quote(*bad));
        report.push_back("types: ok");
    }
    if (auto* m = std::get_if<MeanBound>(&spec.distance)) {
        auto bad = mean(fin.input, t, m->d);
        if (bad) throw SoundnessError("decoded machine exceeds the mean distance on " + quote(*bad));
        report.push_back("distance: mean <= " + format_rational(m->d) + " ok");
    } else if (auto* b = std::get_if<TotalBound>(&spec.distance)) {
        auto bad = total(fin.input, t, b->bound);
        if (bad) throw SoundnessError("decoded machine exceeds the total distance on " + quote(*bad));
        report.push_back("distance: total <= " + std::to_string(b->bound) + " ok");
    }
    return report;
}

void verify_pins(const SynthesisSpec& spec, const Ft& t) {
    for (const auto& pin : spec.pins)
        if (t.next(pin.from, pin.column) != pin.to || t.output(pin.from, pin.column) != pin.out)
            throw SoundnessError("decoded machine ignores a template transition");
}

SynthesisResult run_synthesis(const SynthesisSpec& spec, const SolverConfig& cfg, std::stop_token stop) {
    SynthesisResult result;
    auto fin = finitize_spec(spec);
    auto enc = encode_spec(spec, fin);
    result.minterms = fin.minterms;
    result.stats = encoding_stats(enc.formula);
    result.report = enc.formula.diagnostics();
    if (result.stats.count(Family::ExampleInfeasible) > 0) {
        result.outcome = Outcome::NoSolution;
        return result;
    }
    auto out = solve(enc.formula, cfg, std::move(stop));
    result.solver_seconds = out.elapsed;
    switch (out.verdict) {
        case Verdict::Unsat: result.outcome = Outcome::NoSolution; return result;
        case Verdict::Unknown: result.report.push_back("solver answered unknown");
            [[fallthrough]];
        case Verdict::Timeout: result.outcome = Outcome::Timeout; return result;
        case Verdict::Sat: break;
    }
    result.outcome = Outcome::Found;
    if (enc.reg.has_lookahead()) {
        auto t = decode_lookahead_model(out.model, enc.reg);
        auto lines = verify(spec, fin, t, lookahead_hoare_check, lookahead_check_mean_aggregate,
                            lookahead_check_total_aggregate);
        result.report.insert(result.report.end(), lines.begin(), lines.end());
        result.lookahead = std::move(t);
        return result;
    }
    auto t = decode_model(out.model, enc.reg);
    auto lines = verify(spec, fin, t, hoare_check, check_mean_aggregate, check_total_aggregate);
    verify_pins(spec, t);
    result.report.insert(result.report.end(), lines.begin(), lines.end());
    result.restricted = restrict_union({{t, fin.input}});
    if (fin.minterms) result.sft = recover_sft(t, *fin.minterms);
    result.ft = std::move(t);
    return result;
}

}  // namespace

const char* outcome_name(Outcome o) {
    switch (o) {
        case Outcome::Found: return "found";
        case Outcome::NoSolution: return "no-solution";
        case Outcome::Timeout: return "timeout";
    }
    return "?";
}

FiniteSpec finitize_spec(const SynthesisSpec& spec) {
    const bool typed = spec.input_type.has_value() || spec.output_type.has_value();
    if (spec.alphabet) {
        if (!spec.custom_minterms.empty()) throw InputError("custom minterms need a specification without a fixed alphabet");
        const auto& sigma = *spec.alphabet;
        for (const auto& [in, out] : spec.examples) {
            sigma.encode(in);
            sigma.encode(out);
        }
        return FiniteSpec{sigma, std::nullopt, spec.examples,
                          spec.input_type ? finite_type(*spec.input_type, sigma) : Dfa::universal(sigma),
                          spec.output_type ? finite_type(*spec.output_type, sigma) : Dfa::universal(sigma), typed};
    }
    std::vector<IntervalPred> preds = spec.custom_minterms;
    add_predicates(spec.input_type, spec.universe, preds);
    add_predicates(spec.output_type, spec.universe, preds);
    MintermMap mm(preds, spec.universe);
    std::vector<Example> examples;
    for (const auto& [in, out] : spec.examples) examples.emplace_back(mm.project(in), mm.project(out));
    auto sigma = mm.alphabet();
    auto input = spec.input_type ? symbolic_type(*spec.input_type, mm) : Dfa::universal(sigma);
    auto output = spec.output_type ? symbolic_type(*spec.output_type, mm) : Dfa::universal(sigma);
    return FiniteSpec{sigma, std::move(mm), std::move(examples), std::move(input), std::move(output), typed};
}

Encoding encode_spec(const SynthesisSpec& spec, const FiniteSpec& fin) {
    if (spec.lookahead && *spec.lookahead == 0) throw InputError("lookahead automaton needs at least one state");
    Encoding enc{VarRegistry(spec.k, fin.sigma, spec.l, spec.lookahead.value_or(0)), Formula{}};
    auto& reg = enc.reg;
    enc.formula = reg.base();
    const bool need_types = fin.typed || has_distance(spec);
    if (reg.has_lookahead()) {
        std::optional<std::pair<Dfa, Dfa>> types;
        if (need_types) types.emplace(fin.input, fin.output);
        enc.formula += encode_lookahead(reg, fin.examples, types);
    } else {
        for (const auto& ex : fin.examples) enc.formula += encode_example(reg, ex);
        if (need_types) enc.formula += encode_types(reg, fin.input, fin.output);
    }
    if (auto* m = std::get_if<MeanBound>(&spec.distance)) enc.formula += encode_distance(reg, m->d);
    if (auto* b = std::get_if<TotalBound>(&spec.distance)) enc.formula += encode_bounded_distance(reg, b->bound);
    if (!spec.pins.empty()) enc.formula += encode_template(reg, spec.pins);
    return enc;
}

SynthesisResult synthesize(const SynthesisSpec& spec, const SolverConfig& cfg, std::stop_token stop) {
    auto result = run_synthesis(spec, cfg, std::move(stop));
    result.attempts.push_back({spec.k, spec.lookahead.value_or(0), result.outcome, result.solver_seconds});
    return result;
}

SynthesisResult synthesize_with_lookahead(const SynthesisSpec& spec, const SolverConfig& cfg, std::stop_token stop) {
    if (!spec.lookahead) throw InputError("lookahead synthesis needs a lookahead bound");
    return synthesize(spec, cfg, std::move(stop));
}

SynthesisResult deepening_synthesize(const SynthesisSpec& spec, const DeepeningBounds& bounds, const SolverConfig& cfg,
                                     std::stop_token stop) {
    if (bounds.k_max == 0) throw InputError("state bound must be at least 1");
    if (spec.lookahead && bounds.lookahead_max == 0) throw InputError("lookahead bound must be at least 1");
    std::vector<SynthesisSpec> candidates;
    for (std::size_t k = 1; k <= bounds.k_max; ++k) {
        const std::size_t kr_max = spec.lookahead ? bounds.lookahead_max : 1;
        for (std::size_t kr = 1; kr <= kr_max; ++kr) {
            auto c = spec;
            c.k = k;
            if (spec.lookahead) c.lookahead = kr;
            candidates.push_back(std::move(c));
        }
    }

    std::vector<std::optional<SynthesisResult>> results(candidates.size());
    if (bounds.jobs <= 1) {
        for (std::size_t i = 0; i < candidates.size() && !stop.stop_requested(); ++i) {
            results[i] = synthesize(candidates[i], cfg, stop);
            if (results[i]->outcome == Outcome::Found) break;
        }
    } else {
        std::vector<std::stop_source> cancel(candidates.size());
        std::stop_callback forward(stop, [&] {
            for (auto& s : cancel) s.request_stop();
        });
        std::atomic<std::size_t> next{0};
        std::mutex lock;
        std::exception_ptr failure;
        auto worker = [&] {
            for (std::size_t i; (i = next++) < candidates.size();) {
                if (cancel[i].stop_requested()) continue;
                try {
                    auto r = synthesize(candidates[i], cfg, cancel[i].get_token());
                    std::lock_guard guard(lock);
                    if (r.outcome == Outcome::Found)
                        for (std::size_t j = i + 1; j < candidates.size(); ++j) cancel[j].request_stop();
                    results[i] = std::move(r);
                } catch (...) {
                    std::lock_guard guard(lock);
                    if (!failure) failure = std::current_exception();
                    for (auto& s : cancel) s.request_stop();
                }
            }
        };
        {
            std::vector<std::jthread> pool;
            for (std::size_t t = 0; t < std::min(bounds.jobs, candidates.size()); ++t) pool.emplace_back(worker);
        }
        if (failure) std::rethrow_exception(failure);
    }

    // Candidates after the first success were cancelled, not refuted.
    std::vector<Attempt> attempts;
    for (auto& r : results) {
        if (!r) continue;
        attempts.insert(attempts.end(), r->attempts.begin(), r->attempts.end());
        if (r->outcome == Outcome::Found) {
            auto found = std::move(*r);
            found.attempts = attempts;
            return found;
        }
    }
    SynthesisResult none;
    none.attempts = attempts;
    bool timed_out = stop.stop_requested();
    for (const auto& a : attempts) timed_out = timed_out || a.outcome == Outcome::Timeout;
    none.outcome = timed_out ? Outcome::Timeout : Outcome::NoSolution;
    for (const auto& a : attempts)
        none.report.push_back("k=" + std::to_string(a.k) + (spec.lookahead ? " lookahead=" + std::to_string(a.lookahead) : "") +
                              ": " + outcome_name(a.outcome));
    return none;
}

}  // namespace tsynth
