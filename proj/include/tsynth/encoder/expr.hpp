#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace tsynth {

enum class Sort { Bool, Int };

// Quantifier-free term over booleans and linear integer arithmetic.
// Builders fold constants, so trivially true assertions stay cheap.
class Expr {
public:
    enum class Op { BoolLit, IntLit, Var, Not, And, Or, Implies, Eq, Le, Lt, Add, Scale, Ite, Call };

    Expr(bool b);  // NOLINT: literal conversion is intended
    Expr(int v) : Expr(static_cast<std::int64_t>(v)) {}  // NOLINT
    Expr(std::int64_t v);                                // NOLINT

    static Expr var(std::string name, Sort s);
    static Expr call(std::string fn, std::vector<Expr> args, Sort result);

    Op op() const noexcept { return node_->op; }
    Sort sort() const noexcept { return node_->sort; }
    std::int64_t value() const noexcept { return node_->value; }
    const std::string& name() const noexcept { return node_->name; }
    const std::vector<Expr>& args() const noexcept { return node_->args; }

    bool is_true() const { return op() == Op::BoolLit && value() != 0; }
    bool is_false() const { return op() == Op::BoolLit && value() == 0; }
    bool is_int_lit() const { return op() == Op::IntLit; }

private:
    struct Node {
        Op op;
        Sort sort;
        std::int64_t value = 0;
        std::string name;
        std::vector<Expr> args;
    };
    explicit Expr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
    static Expr make(Op op, Sort s, std::vector<Expr> args, std::int64_t value = 0, std::string name = {});
    std::shared_ptr<const Node> node_;

    friend Expr operator!(const Expr&);
    friend Expr all_of(std::vector<Expr>);
    friend Expr any_of(std::vector<Expr>);
    friend Expr implies(const Expr&, const Expr&);
    friend Expr eq(const Expr&, const Expr&);
    friend Expr le(const Expr&, const Expr&);
    friend Expr lt(const Expr&, const Expr&);
    friend Expr operator+(const Expr&, const Expr&);
    friend Expr scale(std::int64_t, const Expr&);
    friend Expr ite(const Expr&, const Expr&, const Expr&);
};

Expr operator!(const Expr& a);
Expr all_of(std::vector<Expr> xs);
Expr any_of(std::vector<Expr> xs);
inline Expr operator&&(const Expr& a, const Expr& b) { return all_of({a, b}); }
inline Expr operator||(const Expr& a, const Expr& b) { return any_of({a, b}); }
Expr implies(const Expr& a, const Expr& b);
Expr eq(const Expr& a, const Expr& b);
inline Expr ne(const Expr& a, const Expr& b) { return !eq(a, b); }
Expr le(const Expr& a, const Expr& b);
Expr lt(const Expr& a, const Expr& b);
inline Expr ge(const Expr& a, const Expr& b) { return le(b, a); }
inline Expr gt(const Expr& a, const Expr& b) { return lt(b, a); }
Expr operator+(const Expr& a, const Expr& b);
Expr scale(std::int64_t k, const Expr& a);
inline Expr operator-(const Expr& a, const Expr& b) { return a + scale(-1, b); }
Expr ite(const Expr& c, const Expr& a, const Expr& b);
// options[index], as a chain of conditionals; index must lie in range.
Expr select(const Expr& index, const std::vector<Expr>& options);

// Distinct variable names in e, in first-occurrence order.
std::vector<std::string> variables_of(const Expr& e);

std::string to_smtlib(const Expr& e);

}  // namespace tsynth
