#pragma once

#include <set>
#include <variant>

#include "tsynth/driver/driver.hpp"

namespace tsynth {

using Transition = std::pair<State, std::size_t>;

struct RepairProblem {
    std::variant<Ft, Sft> bad;
    std::vector<Example> examples;
    std::optional<TypeSpec> input_type;
    std::optional<TypeSpec> output_type;
    // Knobs for the replacement synthesis.
    std::size_t k = 1;
    std::size_t l = 1;
    DistanceBound distance;
    // Only for symbolic machines.
    std::vector<IntervalPred> custom_minterms;
};

enum class RepairOutcome { Repaired, NoRepair, Timeout };

const char* repair_outcome_name(RepairOutcome o);

struct RepairResult {
    RepairOutcome outcome = RepairOutcome::NoRepair;
    std::optional<DomainRestrictedFt> machine;
    std::set<Transition> suspicious;
    std::optional<MintermMap> minterms;
    std::vector<std::string> report;
};

// Transitions used by failing examples and by no passing one. When every
// such transition also occurs on a passing run, all transitions of the
// failing runs.
std::set<Transition> localize_faults(const Ft& bad, const std::vector<Example>& examples);

// Replaces the machine on the inputs whose outputs leave the output type.
RepairResult repair_from_input(const RepairProblem& prob, const SolverConfig& cfg, std::stop_token stop = {});

// Keeps every unsuspicious transition and re-synthesizes the rest.
RepairResult repair_with_template(const RepairProblem& prob, const SolverConfig& cfg, std::stop_token stop = {});

}  // namespace tsynth
