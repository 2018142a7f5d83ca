#pragma once

#include <json.hpp>
#include <variant>

#include "tsynth/driver/driver.hpp"
#include "tsynth/repair/repair.hpp"

namespace tsynth {

using Json = nlohmann::ordered_json;

// A type as written in a specification file; regexes stay as text.
using TypeDocument = std::variant<std::string, Dfa, Sfa>;

struct TemplateMove {
    State from;
    State lookahead = 0;
    Symbol on;
    Word out;
    State to;
    bool operator==(const TemplateMove&) const = default;
};

struct SolverDocument {
    std::optional<std::string> path;
    std::optional<std::vector<std::string>> args;
    std::optional<double> timeout_sec;
    bool operator==(const SolverDocument&) const = default;
};

struct SpecDocument {
    std::variant<Alphabet, Universe> alphabet = Alphabet::from_word(U"a");
    std::size_t k = 1;
    std::size_t l = 1;
    std::vector<Example> examples;
    std::optional<TypeDocument> input_type;
    std::optional<TypeDocument> output_type;
    DistanceBound distance;
    std::optional<std::size_t> lookahead;
    std::vector<TemplateMove> template_moves;
    std::vector<IntervalPred> custom_minterms;
    SolverDocument solver;
    bool operator==(const SpecDocument&) const = default;
};

using TransducerDocument = std::variant<Ft, Sft, LookaheadFt, DomainRestrictedFt>;

// Parsing throws InputError with a description of the offending field.
SpecDocument spec_from_json(const Json& j);
Json to_json(const SpecDocument& s);
SynthesisSpec to_synthesis_spec(const SpecDocument& s);
// TSYNTH_SOLVER (or z3) overridden by the document's solver block.
SolverConfig solver_config(const SpecDocument& s);

TransducerDocument transducer_from_json(const Json& j);
Json to_json(const TransducerDocument& t);
Json to_json(const Ft& t);
Json to_json(const Sft& t);
Json to_json(const LookaheadFt& t);
Json to_json(const DomainRestrictedFt& t);

Dfa dfa_from_json(const Json& j, const std::optional<Alphabet>& fallback = std::nullopt);
Json to_json(const Dfa& d);
Sfa sfa_from_json(const Json& j, const std::optional<Universe>& fallback = std::nullopt);
Json to_json(const Sfa& a);
IntervalPred predicate_from_json(const Json& j);
Json to_json(const IntervalPred& p);
Json to_json(const MintermMap& mm);

Json read_json_file(const std::string& path);

}  // namespace tsynth
