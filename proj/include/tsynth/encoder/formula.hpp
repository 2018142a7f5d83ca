#pragma once

#include <map>
#include <string>
#include <vector>

#include "tsynth/encoder/expr.hpp"

namespace tsynth {

// Constraint families. Numbers in comments follow the order in which the
// families are introduced: examples, types, distance, lookahead, bounded.
enum class Family {
    Range,
    ExampleInit,       // configuration starts at (0, q0)
    ExampleStep,       // configuration update, output not yet complete
    ExampleTail,       // configuration update once the output is complete
    ExampleFinal,      // configuration ends at (m, q)
    ExampleInfeasible, // output longer than n * l
    TypeInit,
    TypeStep,
    TypeFinal,
    EditContains,
    EditExcludes,
    Weight,
    EnergyInit,
    EnergyStep,
    EnergyFinal,
    BoundedInit,
    BoundedStep,
    LookaheadLook,
    LookaheadExampleStep,
    LookaheadTypeInit,
    LookaheadTypeStep,
    LookaheadTypeFinal,
    Template,
};

const char* family_name(Family f);

struct Declaration {
    std::string name;
    Sort sort;
    bool operator==(const Declaration&) const = default;
};

// Constant integer table over (row, column), emitted as a defined function.
struct Table {
    std::string name;
    std::size_t rows;
    std::size_t cols;
    std::vector<std::int64_t> values;
    bool operator==(const Table&) const = default;
};

struct Assertion {
    Family family;
    Expr expr;
};

class Formula {
public:
    Expr declare(const std::string& name, Sort s);
    // Declares an integer constrained to [lo, hi].
    Expr declare_int(const std::string& name, std::int64_t lo, std::int64_t hi);
    void define_table(Table t);
    void add(Family f, Expr e);
    void note(std::string diagnostic) { diagnostics_.push_back(std::move(diagnostic)); }

    // Appends another formula's declarations, tables and assertions.
    Formula& operator+=(const Formula& other);

    const std::vector<Declaration>& declarations() const noexcept { return decls_; }
    const std::vector<Table>& tables() const noexcept { return tables_; }
    const std::vector<Assertion>& assertions() const noexcept { return asserts_; }
    const std::vector<std::string>& diagnostics() const noexcept { return diagnostics_; }
    bool declares(const std::string& name) const { return index_.count(name) > 0; }

private:
    std::vector<Declaration> decls_;
    std::map<std::string, Sort> index_;
    std::vector<Table> tables_;
    std::vector<Assertion> asserts_;
    std::vector<std::string> diagnostics_;
};

struct FamilyStats {
    std::size_t constraints = 0;
    std::size_t max_variables = 0;
};

struct EncodingStats {
    std::map<Family, FamilyStats> families;
    std::size_t variables = 0;
    std::size_t count(Family f) const;
    std::size_t max_variables(Family f) const;
};

EncodingStats encoding_stats(const Formula& f);

}  // namespace tsynth
