#include "tsynth/encoder/formula.hpp"

#include "tsynth/core/errors.hpp"

namespace tsynth {

const char* family_name(Family f) {
    switch (f) {
        case Family::Range: return "range";
        case Family::ExampleInit: return "example-init";
        case Family::ExampleStep: return "example-step";
        case Family::ExampleTail: return "example-tail";
        case Family::ExampleFinal: return "example-final";
        case Family::ExampleInfeasible: return "example-infeasible";
        case Family::TypeInit: return "type-init";
        case Family::TypeStep: return "type-step";
        case Family::TypeFinal: return "type-final";
        case Family::EditContains: return "edit-contains";
        case Family::EditExcludes: return "edit-excludes";
        case Family::Weight: return "weight";
        case Family::EnergyInit: return "energy-init";
        case Family::EnergyStep: return "energy-step";
        case Family::EnergyFinal: return "energy-final";
        case Family::BoundedInit: return "bounded-init";
        case Family::BoundedStep: return "bounded-step";
        case Family::LookaheadLook: return "lookahead-look";
        case Family::LookaheadExampleStep: return "lookahead-example-step";
        case Family::LookaheadTypeInit: return "lookahead-type-init";
        case Family::LookaheadTypeStep: return "lookahead-type-step";
        case Family::LookaheadTypeFinal: return "lookahead-type-final";
        case Family::Template: return "template";
    }
    return "?";
}

Expr Formula::declare(const std::string& name, Sort s) {
    if (!index_.emplace(name, s).second) throw std::logic_error("variable declared twice: " + name);
    decls_.push_back({name, s});
    return Expr::var(name, s);
}

Expr Formula::declare_int(const std::string& name, std::int64_t lo, std::int64_t hi) {
    auto v = declare(name, Sort::Int);
    add(Family::Range, le(Expr(lo), v) && le(v, Expr(hi)));
    return v;
}

void Formula::define_table(Table t) {
    for (const auto& existing : tables_)
        if (existing.name == t.name) {
            if (!(existing == t)) throw std::logic_error("table defined twice: " + t.name);
            return;
        }
    tables_.push_back(std::move(t));
}

void Formula::add(Family f, Expr e) {
    if (e.sort() != Sort::Bool) throw std::logic_error("assertion must be boolean");
    asserts_.push_back({f, std::move(e)});
}

Formula& Formula::operator+=(const Formula& other) {
    for (const auto& d : other.decls_) declare(d.name, d.sort);
    for (const auto& t : other.tables_) define_table(t);
    asserts_.insert(asserts_.end(), other.asserts_.begin(), other.asserts_.end());
    diagnostics_.insert(diagnostics_.end(), other.diagnostics_.begin(), other.diagnostics_.end());
    return *this;
}

std::size_t EncodingStats::count(Family f) const {
    auto it = families.find(f);
    return it == families.end() ? 0 : it->second.constraints;
}

std::size_t EncodingStats::max_variables(Family f) const {
    auto it = families.find(f);
    return it == families.end() ? 0 : it->second.max_variables;
}

EncodingStats encoding_stats(const Formula& f) {
    EncodingStats s;
    s.variables = f.declarations().size();
    for (const auto& a : f.assertions()) {
        auto& fam = s.families[a.family];
        ++fam.constraints;
        fam.max_variables = std::max(fam.max_variables, variables_of(a.expr).size());
    }
    return s;
}

}  // namespace tsynth
