#pragma once

#include <optional>
#include <stop_token>
#include <variant>
#include <vector>

#include "tsynth/core/lookahead.hpp"
#include "tsynth/core/regex.hpp"
#include "tsynth/core/restricted.hpp"
#include "tsynth/solver/solver.hpp"
#include "tsynth/symbolic/machines.hpp"

namespace tsynth {

using TypeSpec = std::variant<Dfa, Regex, Sfa>;

struct MeanBound {
    Rational d;
    bool operator==(const MeanBound&) const = default;
};
struct TotalBound {
    std::int64_t bound;
    bool operator==(const TotalBound&) const = default;
};
using DistanceBound = std::variant<std::monostate, MeanBound, TotalBound>;

// Without an alphabet the specification is symbolic: the alphabet is the
// witness alphabet of the minterms of every predicate mentioned by the
// types and custom minterms, over `universe`.
struct SynthesisSpec {
    std::optional<Alphabet> alphabet;
    Universe universe;
    std::size_t k = 1;
    std::size_t l = 1;
    std::vector<Example> examples;
    std::optional<TypeSpec> input_type;
    std::optional<TypeSpec> output_type;
    DistanceBound distance;
    std::optional<std::size_t> lookahead;
    // Over the (witness) alphabet; columns follow VarRegistry.
    std::vector<Pin> pins;
    std::vector<IntervalPred> custom_minterms;
};

// Specification with every symbolic part finitized.
struct FiniteSpec {
    Alphabet sigma;
    std::optional<MintermMap> minterms;
    std::vector<Example> examples;
    Dfa input;
    Dfa output;
    bool typed = false;
};

FiniteSpec finitize_spec(const SynthesisSpec& spec);

struct Encoding {
    VarRegistry reg;
    Formula formula;
};

Encoding encode_spec(const SynthesisSpec& spec, const FiniteSpec& fin);

enum class Outcome { Found, NoSolution, Timeout };

const char* outcome_name(Outcome o);

struct Attempt {
    std::size_t k;
    std::size_t lookahead;
    Outcome outcome;
    double seconds;
};

struct SynthesisResult {
    Outcome outcome = Outcome::NoSolution;
    std::optional<Ft> ft;
    std::optional<DomainRestrictedFt> restricted;
    std::optional<Sft> sft;
    std::optional<LookaheadFt> lookahead;
    std::optional<MintermMap> minterms;
    std::vector<std::string> report;
    EncodingStats stats;
    double solver_seconds = 0;
    std::vector<Attempt> attempts;
};

// Found results have passed the examples, type and distance checks; a
// decoded machine that fails them raises SoundnessError.
SynthesisResult synthesize(const SynthesisSpec& spec, const SolverConfig& cfg, std::stop_token stop = {});
SynthesisResult synthesize_with_lookahead(const SynthesisSpec& spec, const SolverConfig& cfg,
                                          std::stop_token stop = {});

struct DeepeningBounds {
    std::size_t k_max = 1;
    // Lookahead sizes tried when spec.lookahead is set.
    std::size_t lookahead_max = 1;
    // Concurrent solver processes; 1 runs the candidates in order.
    std::size_t jobs = 1;
};

// Smallest (k, lookahead) in lexicographic order that yields Found.
SynthesisResult deepening_synthesize(const SynthesisSpec& spec, const DeepeningBounds& bounds, const SolverConfig& cfg,
                                     std::stop_token stop = {});

}  // namespace tsynth
