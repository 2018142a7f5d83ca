#include "tsynth/encoder/expr.hpp"

#include <set>
#include <sstream>

#include "tsynth/core/errors.hpp"

namespace tsynth {

Expr Expr::make(Op op, Sort s, std::vector<Expr> args, std::int64_t value, std::string name) {
    return Expr(std::make_shared<const Node>(Node{op, s, value, std::move(name), std::move(args)}));
}

Expr::Expr(bool b) : Expr(make(Op::BoolLit, Sort::Bool, {}, b ? 1 : 0)) {}
Expr::Expr(std::int64_t v) : Expr(make(Op::IntLit, Sort::Int, {}, v)) {}

Expr Expr::var(std::string name, Sort s) { return make(Op::Var, s, {}, 0, std::move(name)); }

Expr Expr::call(std::string fn, std::vector<Expr> args, Sort result) {
    return make(Op::Call, result, std::move(args), 0, std::move(fn));
}

namespace {

void require(const Expr& e, Sort s) {
    if (e.sort() != s) throw std::logic_error("expression sort mismatch");
}

}  // namespace

Expr operator!(const Expr& a) {
    require(a, Sort::Bool);
    if (a.op() == Expr::Op::BoolLit) return Expr(a.value() == 0);
    if (a.op() == Expr::Op::Not) return a.args()[0];
    return Expr::make(Expr::Op::Not, Sort::Bool, {a});
}

Expr all_of(std::vector<Expr> xs) {
    std::vector<Expr> keep;
    for (auto& x : xs) {
        require(x, Sort::Bool);
        if (x.is_false()) return Expr(false);
        if (x.is_true()) continue;
        if (x.op() == Expr::Op::And)
            keep.insert(keep.end(), x.args().begin(), x.args().end());
        else
            keep.push_back(std::move(x));
    }
    if (keep.empty()) return Expr(true);
    if (keep.size() == 1) return keep[0];
    return Expr::make(Expr::Op::And, Sort::Bool, std::move(keep));
}

Expr any_of(std::vector<Expr> xs) {
    std::vector<Expr> keep;
    for (auto& x : xs) {
        require(x, Sort::Bool);
        if (x.is_true()) return Expr(true);
        if (x.is_false()) continue;
        if (x.op() == Expr::Op::Or)
            keep.insert(keep.end(), x.args().begin(), x.args().end());
        else
            keep.push_back(std::move(x));
    }
    if (keep.empty()) return Expr(false);
    if (keep.size() == 1) return keep[0];
    return Expr::make(Expr::Op::Or, Sort::Bool, std::move(keep));
}

Expr implies(const Expr& a, const Expr& b) {
    require(a, Sort::Bool);
    require(b, Sort::Bool);
    if (a.is_false() || b.is_true()) return Expr(true);
    if (a.is_true()) return b;
    if (b.is_false()) return !a;
    return Expr::make(Expr::Op::Implies, Sort::Bool, {a, b});
}

Expr eq(const Expr& a, const Expr& b) {
    if (a.sort() != b.sort()) throw std::logic_error("expression sort mismatch");
    if ((a.op() == Expr::Op::IntLit || a.op() == Expr::Op::BoolLit) && a.op() == b.op())
        return Expr(a.value() == b.value());
    return Expr::make(Expr::Op::Eq, Sort::Bool, {a, b});
}

Expr le(const Expr& a, const Expr& b) {
    require(a, Sort::Int);
    require(b, Sort::Int);
    if (a.is_int_lit() && b.is_int_lit()) return Expr(a.value() <= b.value());
    return Expr::make(Expr::Op::Le, Sort::Bool, {a, b});
}

Expr lt(const Expr& a, const Expr& b) {
    require(a, Sort::Int);
    require(b, Sort::Int);
    if (a.is_int_lit() && b.is_int_lit()) return Expr(a.value() < b.value());
    return Expr::make(Expr::Op::Lt, Sort::Bool, {a, b});
}

Expr operator+(const Expr& a, const Expr& b) {
    require(a, Sort::Int);
    require(b, Sort::Int);
    if (a.is_int_lit() && b.is_int_lit()) return Expr(a.value() + b.value());
    if (a.is_int_lit() && a.value() == 0) return b;
    if (b.is_int_lit() && b.value() == 0) return a;
    return Expr::make(Expr::Op::Add, Sort::Int, {a, b});
}

Expr scale(std::int64_t k, const Expr& a) {
    require(a, Sort::Int);
    if (a.is_int_lit()) return Expr(k * a.value());
    if (k == 1) return a;
    if (k == 0) return Expr(std::int64_t{0});
    return Expr::make(Expr::Op::Scale, Sort::Int, {a}, k);
}

Expr ite(const Expr& c, const Expr& a, const Expr& b) {
    require(c, Sort::Bool);
    if (a.sort() != b.sort()) throw std::logic_error("expression sort mismatch");
    if (c.is_true()) return a;
    if (c.is_false()) return b;
    return Expr::make(Expr::Op::Ite, a.sort(), {c, a, b});
}

Expr select(const Expr& index, const std::vector<Expr>& options) {
    if (options.empty()) throw std::logic_error("select over no options");
    if (index.is_int_lit()) return options.at(static_cast<std::size_t>(index.value()));
    Expr out = options.back();
    for (std::size_t i = options.size() - 1; i-- > 0;)
        out = ite(eq(index, Expr(static_cast<std::int64_t>(i))), options[i], out);
    return out;
}

namespace {

void collect(const Expr& e, std::set<std::string>& seen, std::vector<std::string>& out) {
    if (e.op() == Expr::Op::Var) {
        if (seen.insert(e.name()).second) out.push_back(e.name());
        return;
    }
    for (const auto& a : e.args()) collect(a, seen, out);
}

void write(std::ostream& os, const Expr& e) {
    using Op = Expr::Op;
    auto nary = [&](const char* head) {
        os << '(' << head;
        for (const auto& a : e.args()) {
            os << ' ';
            write(os, a);
        }
        os << ')';
    };
    switch (e.op()) {
        case Op::BoolLit: os << (e.value() ? "true" : "false"); return;
        case Op::IntLit:
            if (e.value() < 0)
                os << "(- " << -e.value() << ')';
            else
                os << e.value();
            return;
        case Op::Var: os << e.name(); return;
        case Op::Not: nary("not"); return;
        case Op::And: nary("and"); return;
        case Op::Or: nary("or"); return;
        case Op::Implies: nary("=>"); return;
        case Op::Eq: nary("="); return;
        case Op::Le: nary("<="); return;
        case Op::Lt: nary("<"); return;
        case Op::Add: nary("+"); return;
        case Op::Ite: nary("ite"); return;
        case Op::Scale:
            os << "(* ";
            write(os, Expr(e.value()));
            os << ' ';
            write(os, e.args()[0]);
            os << ')';
            return;
        case Op::Call: nary(e.name().c_str()); return;
    }
}

}  // namespace

std::vector<std::string> variables_of(const Expr& e) {
    std::set<std::string> seen;
    std::vector<std::string> out;
    collect(e, seen, out);
    return out;
}

std::string to_smtlib(const Expr& e) {
    std::ostringstream os;
    write(os, e);
    return os.str();
}

}  // namespace tsynth
