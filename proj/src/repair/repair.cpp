#include "tsynth/repair/repair.hpp"

#include "tsynth/core/errors.hpp"
#include "tsynth/core/oracles.hpp"

namespace tsynth {

namespace {

struct Prepared {
    FiniteSpec fin;
    Ft bad;
};

Prepared prepare(const RepairProblem& prob) {
    SynthesisSpec spec;
    spec.examples = prob.examples;
    spec.input_type = prob.input_type;
    spec.output_type = prob.output_type;
    if (const auto* ft = std::get_if<Ft>(&prob.bad)) {
        if (!prob.custom_minterms.empty()) throw InputError("custom minterms only apply to symbolic machines");
        spec.alphabet = ft->alphabet();
        return {finitize_spec(spec), *ft};
    }
    const auto& sft = std::get<Sft>(prob.bad);
    spec.universe = sft.universe();
    spec.custom_minterms = prob.custom_minterms;
    auto preds = sft.predicates();
    spec.custom_minterms.insert(spec.custom_minterms.end(), preds.begin(), preds.end());
    auto fin = finitize_spec(spec);
    auto bad = finitize_sft(sft, *fin.minterms);
    return {std::move(fin), std::move(bad)};
}

// Finite specification for the replacement machine.
SynthesisSpec inner_spec(const RepairProblem& prob, const FiniteSpec& fin, std::size_t k) {
    SynthesisSpec spec;
    spec.alphabet = fin.sigma;
    spec.k = k;
    spec.l = prob.l;
    spec.distance = prob.distance;
    if (fin.typed) {
        spec.input_type = fin.input;
        spec.output_type = fin.output;
    }
    return spec;
}

RepairOutcome from_synthesis(Outcome o) {
    switch (o) {
        case Outcome::Found: return RepairOutcome::Repaired;
        case Outcome::NoSolution: return RepairOutcome::NoRepair;
        case Outcome::Timeout: return RepairOutcome::Timeout;
    }
    return RepairOutcome::NoRepair;
}

void verify_repaired(const FiniteSpec& fin, const DomainRestrictedFt& m, std::vector<std::string>& report) {
    std::size_t checked = 0;
    for (const auto& [in, out] : fin.examples) {
        auto got = m.run(in);
        if (!got) continue;
        if (*got != out) throw SoundnessError("repaired machine maps " + quote(in) + " to " + quote(*got));
        ++checked;
    }
    report.push_back("examples: ok (" + std::to_string(checked) + ")");
    if (!fin.typed) return;
    for (const auto& b : m.branches())
        if (auto bad = hoare_check(b.domain, b.machine, fin.output))
            throw SoundnessError("repaired machine violates the types on " + quote(*bad));
    report.push_back("types: ok");
}

}  // namespace

const char* repair_outcome_name(RepairOutcome o) {
    switch (o) {
        case RepairOutcome::Repaired: return "repaired";
        case RepairOutcome::NoRepair: return "no-repair";
        case RepairOutcome::Timeout: return "timeout";
    }
    return "?";
}

std::set<Transition> localize_faults(const Ft& bad, const std::vector<Example>& examples) {
    if (examples.empty()) throw InputError("fault localization needs examples");
    std::set<Transition> failing, passing;
    for (const auto& [in, out] : examples) {
        auto& into = bad.run(in) == out ? passing : failing;
        auto states = bad.trace(in);
        auto idx = bad.alphabet().encode(in);
        for (std::size_t i = 0; i < idx.size(); ++i) into.insert({states[i], idx[i]});
    }
    std::set<Transition> suspicious;
    for (const auto& t : failing)
        if (!passing.count(t)) suspicious.insert(t);
    return suspicious.empty() ? failing : suspicious;
}

RepairResult repair_from_input(const RepairProblem& prob, const SolverConfig& cfg, std::stop_token stop) {
    if (!prob.input_type || !prob.output_type) throw InputError("repair from the input language needs both types");
    auto [fin, bad] = prepare(prob);
    RepairResult result;
    result.minterms = fin.minterms;
    auto p_bad = bad_inputs(fin.input, bad, fin.output);
    if (dfa_is_empty(p_bad)) {
        result.report.push_back("machine already satisfies the types");
        for (const auto& [in, out] : fin.examples)
            if (fin.input.accepts(in) && bad.run(in) != out)
                throw InputError("example " + quote(in) + " fails without violating the types; use template repair");
        result.outcome = RepairOutcome::Repaired;
        result.machine = restrict_union({{bad, fin.input}});
        verify_repaired(fin, *result.machine, result.report);
        return result;
    }
    auto p_good = dfa_difference(fin.input, p_bad);
    auto spec = inner_spec(prob, fin, prob.k);
    spec.input_type = p_bad;
    for (const auto& ex : fin.examples) {
        if (p_bad.accepts(ex.first)) {
            spec.examples.push_back(ex);
        } else if (p_good.accepts(ex.first) && bad.run(ex.first) != ex.second) {
            throw InputError("example " + quote(ex.first) + " fails outside the badly typed inputs; use template repair");
        }
    }
    auto inner = synthesize(spec, cfg, std::move(stop));
    result.report = inner.report;
    result.outcome = from_synthesis(inner.outcome);
    if (inner.outcome != Outcome::Found) return result;
    result.machine = restrict_union({{*inner.ft, p_bad}, {bad, p_good}});
    verify_repaired(fin, *result.machine, result.report);
    return result;
}

RepairResult repair_with_template(const RepairProblem& prob, const SolverConfig& cfg, std::stop_token stop) {
    if (prob.examples.empty()) throw InputError("template repair needs examples");
    auto [fin, bad] = prepare(prob);
    RepairResult result;
    result.minterms = fin.minterms;
    result.suspicious = localize_faults(bad, fin.examples);
    auto spec = inner_spec(prob, fin, std::max(prob.k, bad.num_states()));
    spec.examples = fin.examples;
    spec.pins = pins_from(bad, {result.suspicious.begin(), result.suspicious.end()});
    auto inner = synthesize(spec, cfg, std::move(stop));
    result.report = inner.report;
    result.outcome = from_synthesis(inner.outcome);
    if (inner.outcome != Outcome::Found) return result;
    result.machine = restrict_union({{*inner.ft, fin.input}});
    verify_repaired(fin, *result.machine, result.report);
    return result;
}

}  // namespace tsynth
