#include <sstream>

#include "tsynth/solver/solver.hpp"

namespace tsynth {

namespace {

const char* sort_name(Sort s) { return s == Sort::Bool ? "Bool" : "Int"; }

std::string int_literal(std::int64_t v) {
    return v < 0 ? "(- " + std::to_string(-v) + ")" : std::to_string(v);
}

// (ite (= r 0) (ite (= c 0) v00 ...) ...), falling through to the last cell.
std::string table_body(const Table& t) {
    auto cell = [&](std::size_t r, std::size_t c) { return int_literal(t.values[r * t.cols + c]); };
    auto row = [&](std::size_t r) {
        std::string s = cell(r, t.cols - 1);
        for (std::size_t c = t.cols - 1; c-- > 0;) s = "(ite (= c " + std::to_string(c) + ") " + cell(r, c) + " " + s + ")";
        return s;
    };
    std::string s = row(t.rows - 1);
    for (std::size_t r = t.rows - 1; r-- > 0;) s = "(ite (= r " + std::to_string(r) + ") " + row(r) + " " + s + ")";
    return s;
}

}  // namespace

std::string emit_smtlib(const Formula& f, const std::string& logic) {
    std::ostringstream out;
    out << "(set-option :produce-models true)\n";
    out << "(set-logic " << logic << ")\n";
    for (const auto& d : f.declarations()) out << "(declare-const " << d.name << " " << sort_name(d.sort) << ")\n";
    for (const auto& t : f.tables())
        out << "(define-fun " << t.name << " ((r Int) (c Int)) Int " << table_body(t) << ")\n";
    for (const auto& a : f.assertions()) {
        if (a.expr.is_true()) continue;
        out << "(assert " << to_smtlib(a.expr) << ")\n";
    }
    out << "(check-sat)\n";
    if (!f.declarations().empty()) {
        out << "(get-value (";
        for (std::size_t i = 0; i < f.declarations().size(); ++i) out << (i ? " " : "") << f.declarations()[i].name;
        out << "))\n";
    }
    return out.str();
}

}  // namespace tsynth
