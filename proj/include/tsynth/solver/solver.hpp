#pragma once

#include <chrono>
#include <filesystem>
#include <map>
#include <optional>
#include <stop_token>
#include <string>
#include <vector>

#include "tsynth/core/lookahead.hpp"
#include "tsynth/encoder/encoder.hpp"

namespace tsynth {

struct SolverConfig {
    std::string path = "z3";
    std::vector<std::string> args = {"-in"};
    std::chrono::duration<double> timeout = std::chrono::seconds(300);
    std::string logic = "QF_LIA";
    // Each solve writes its query and response here when set.
    std::optional<std::filesystem::path> transcript_dir;

    // Solver path from TSYNTH_SOLVER when set, z3 on PATH otherwise.
    static SolverConfig from_environment();
};

// Integer values; booleans are 0 or 1.
using Model = std::map<std::string, std::int64_t>;

enum class Verdict { Sat, Unsat, Unknown, Timeout };

const char* verdict_name(Verdict v);

struct SolverOutcome {
    Verdict verdict = Verdict::Unknown;
    Model model;
    double elapsed = 0;
    std::string transcript;
};

std::string emit_smtlib(const Formula& f, const std::string& logic = "QF_LIA");

// Runs the solver as a child process; a stop request kills it and yields
// Timeout. Throws SolverError when the solver cannot be run or its reply
// cannot be read.
SolverOutcome solve(const std::string& document, const SolverConfig& cfg, std::stop_token stop = {});

// Emits, solves and checks that Sat models cover every declared variable.
SolverOutcome solve(const Formula& f, const SolverConfig& cfg, std::stop_token stop = {});

Ft decode_model(const Model& m, const VarRegistry& reg);
LookaheadFt decode_lookahead_model(const Model& m, const VarRegistry& reg);

}  // namespace tsynth
