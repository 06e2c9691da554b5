// First-order syntax: signatures, terms, formulas.
//
// Terms and formulas are immutable trees with shared-subtree value semantics.
// Variables carry a globally unique integer id; binding and substitution work
// by id, names are for display only.

#ifndef GAMEWIT_FOL_HPP
#define GAMEWIT_FOL_HPP

#include <algorithm>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "gamewit/util.hpp"

namespace gamewit {

// ── variables ───────────────────────────────────────────────────────────────

struct Var {
    std::string name;
    long long id = 0;

    bool operator==(const Var& o) const { return id == o.id && name == o.name; }
    bool operator!=(const Var& o) const { return !(*this == o); }
    bool operator<(const Var& o) const { return id != o.id ? id < o.id : name < o.name; }
};

inline Var fresh_var(const std::string& name) { return Var{name, next_fresh_id()}; }

// ── signature ───────────────────────────────────────────────────────────────
// Function symbols include the constants 0 and 1; `leq` is the designated
// binary relation used by bounded quantifiers. `=` is an ordinary binary
// relation when declared.

class Signature {
public:
    Signature() {
        add_function("0", 0);
        add_function("1", 0);
        add_relation("leq", 2);
    }

    void add_function(const std::string& name, int arity) {
        check_new(name, arity);
        funcs_[name] = arity;
    }
    void add_relation(const std::string& name, int arity) {
        check_new(name, arity);
        rels_[name] = arity;
    }

    bool has_function(const std::string& name) const { return funcs_.count(name) != 0; }
    bool has_relation(const std::string& name) const { return rels_.count(name) != 0; }
    int function_arity(const std::string& name) const { return funcs_.at(name); }
    int relation_arity(const std::string& name) const { return rels_.at(name); }

    const std::map<std::string, int>& functions() const { return funcs_; }
    const std::map<std::string, int>& relations() const { return rels_; }

    // if-then-else vocabulary used by strategy conversion; added on demand
    void ensure_ite() {
        if (!has_function("ite")) add_function("ite", 3);
        if (!has_function("eq01")) add_function("eq01", 2);
        if (!has_function("leq01")) add_function("leq01", 2);
    }
    bool has_ite() const { return has_function("ite") && has_function("eq01") && has_function("leq01"); }

private:
    void check_new(const std::string& name, int arity) {
        if (arity < 0) throw InputError("negative arity for symbol " + name);
        auto f = funcs_.find(name);
        auto r = rels_.find(name);
        if ((f != funcs_.end() && f->second != arity) || (r != rels_.end() && r->second != arity))
            throw InputError("symbol " + name + " redeclared with a different arity");
        if (f != funcs_.end() || r != rels_.end()) return;  // same decl is fine
    }

    std::map<std::string, int> funcs_;
    std::map<std::string, int> rels_;
};

// ── terms ───────────────────────────────────────────────────────────────────

class Term {
public:
    Term() = default;

    static Term var(const Var& v) {
        Term t;
        t.node_ = std::make_shared<Node>(Node{true, v, {}, {}});
        return t;
    }
    static Term app(std::string fn, std::vector<Term> args = {}) {
        Term t;
        t.node_ = std::make_shared<Node>(Node{false, {}, std::move(fn), std::move(args)});
        return t;
    }
    static Term zero() { return app("0"); }
    static Term one() { return app("1"); }

    bool ok() const { return node_ != nullptr; }
    bool is_var() const { return node_->is_var; }
    const Var& as_var() const { return node_->v; }
    const std::string& fn() const { return node_->fn; }
    const std::vector<Term>& args() const { return node_->args; }

    bool operator==(const Term& o) const {
        if (node_ == o.node_) return true;
        if (is_var() != o.is_var()) return false;
        if (is_var()) return as_var() == o.as_var();
        if (fn() != o.fn() || args().size() != o.args().size()) return false;
        for (std::size_t i = 0; i < args().size(); ++i)
            if (!(args()[i] == o.args()[i])) return false;
        return true;
    }
    bool operator!=(const Term& o) const { return !(*this == o); }

private:
    struct Node {
        bool is_var;
        Var v;
        std::string fn;
        std::vector<Term> args;
    };
    std::shared_ptr<const Node> node_;
};

inline void collect_vars(const Term& t, std::set<Var>& out) {
    if (t.is_var()) {
        out.insert(t.as_var());
        return;
    }
    for (const auto& a : t.args()) collect_vars(a, out);
}

inline std::set<Var> term_vars(const Term& t) {
    std::set<Var> s;
    collect_vars(t, s);
    return s;
}

inline bool term_mentions(const Term& t, const Var& v) {
    if (t.is_var()) return t.as_var() == v;
    for (const auto& a : t.args())
        if (term_mentions(a, v)) return true;
    return false;
}

inline Term substitute_term(const Term& t, const Var& v, const Term& s) {
    if (t.is_var()) return t.as_var() == v ? s : t;
    bool touched = false;
    std::vector<Term> args;
    args.reserve(t.args().size());
    for (const auto& a : t.args()) {
        Term b = substitute_term(a, v, s);
        if (!(b == a)) touched = true;
        args.push_back(std::move(b));
    }
    return touched ? Term::app(t.fn(), std::move(args)) : t;
}

// ── formulas ────────────────────────────────────────────────────────────────

enum class Kind { Atom, Bot, Imp, And, Or, Not, Forall, Exists };

inline bool is_quantifier(Kind k) { return k == Kind::Forall || k == Kind::Exists; }

class Formula {
public:
    Formula() = default;

    static Formula atom(std::string rel, std::vector<Term> args = {}) {
        auto n = std::make_shared<Node>();
        n->kind = Kind::Atom;
        n->rel = std::move(rel);
        n->args = std::move(args);
        return wrap(std::move(n));
    }
    static Formula bot() {
        auto n = std::make_shared<Node>();
        n->kind = Kind::Bot;
        return wrap(std::move(n));
    }
    static Formula imp(Formula a, Formula b) { return binary(Kind::Imp, std::move(a), std::move(b)); }
    static Formula conj(Formula a, Formula b) { return binary(Kind::And, std::move(a), std::move(b)); }
    static Formula disj(Formula a, Formula b) { return binary(Kind::Or, std::move(a), std::move(b)); }
    static Formula neg(Formula a) {
        auto n = std::make_shared<Node>();
        n->kind = Kind::Not;
        n->kids = {std::move(a)};
        return wrap(std::move(n));
    }
    static Formula quant(Kind k, const Var& v, Formula body, std::optional<Term> bound = std::nullopt) {
        if (!is_quantifier(k)) throw InputError("quant: not a quantifier kind");
        if (bound && term_mentions(*bound, v))
            throw InputError("bound term of a bounded quantifier mentions the quantified variable " + v.name);
        auto n = std::make_shared<Node>();
        n->kind = k;
        n->qvar = v;
        n->bound = std::move(bound);
        n->kids = {std::move(body)};
        return wrap(std::move(n));
    }
    static Formula forall(const Var& v, Formula body, std::optional<Term> bound = std::nullopt) {
        return quant(Kind::Forall, v, std::move(body), std::move(bound));
    }
    static Formula exists(const Var& v, Formula body, std::optional<Term> bound = std::nullopt) {
        return quant(Kind::Exists, v, std::move(body), std::move(bound));
    }

    bool ok() const { return node_ != nullptr; }
    Kind kind() const { return node_->kind; }
    const std::string& rel() const { return node_->rel; }
    const std::vector<Term>& args() const { return node_->args; }
    const Formula& child(std::size_t i = 0) const { return node_->kids.at(i); }
    std::size_t child_count() const { return node_ ? node_->kids.size() : 0; }
    const Var& qvar() const { return node_->qvar; }
    const std::optional<Term>& bound() const { return node_->bound; }
    bool bounded() const { return node_->bound.has_value(); }

    bool operator==(const Formula& o) const {
        if (node_ == o.node_) return true;
        if (kind() != o.kind()) return false;
        switch (kind()) {
            case Kind::Atom: {
                if (rel() != o.rel() || args().size() != o.args().size()) return false;
                for (std::size_t i = 0; i < args().size(); ++i)
                    if (!(args()[i] == o.args()[i])) return false;
                return true;
            }
            case Kind::Bot: return true;
            case Kind::Not: return child() == o.child();
            case Kind::Imp:
            case Kind::And:
            case Kind::Or: return child(0) == o.child(0) && child(1) == o.child(1);
            case Kind::Forall:
            case Kind::Exists: {
                if (!(qvar() == o.qvar())) return false;
                if (bound().has_value() != o.bound().has_value()) return false;
                if (bound() && !(*bound() == *o.bound())) return false;
                return child() == o.child();
            }
        }
        return false;
    }
    bool operator!=(const Formula& o) const { return !(*this == o); }

private:
    struct Node {
        Kind kind;
        std::string rel;
        std::vector<Term> args;
        std::vector<Formula> kids;
        Var qvar;
        std::optional<Term> bound;
    };
    static Formula wrap(std::shared_ptr<Node> n) {
        Formula f;
        f.node_ = std::move(n);
        return f;
    }
    static Formula binary(Kind k, Formula a, Formula b) {
        auto n = std::make_shared<Node>();
        n->kind = k;
        n->kids = {std::move(a), std::move(b)};
        return wrap(std::move(n));
    }
    std::shared_ptr<const Node> node_;
};

// ── free variables ──────────────────────────────────────────────────────────

inline void collect_free_vars(const Formula& f, std::set<Var>& bound, std::set<Var>& out) {
    switch (f.kind()) {
        case Kind::Atom:
            for (const auto& t : f.args()) {
                std::set<Var> vs = term_vars(t);
                for (const auto& v : vs)
                    if (!bound.count(v)) out.insert(v);
            }
            return;
        case Kind::Bot: return;
        case Kind::Not: collect_free_vars(f.child(), bound, out); return;
        case Kind::Imp:
        case Kind::And:
        case Kind::Or:
            collect_free_vars(f.child(0), bound, out);
            collect_free_vars(f.child(1), bound, out);
            return;
        case Kind::Forall:
        case Kind::Exists: {
            if (f.bound()) {
                std::set<Var> vs = term_vars(*f.bound());
                for (const auto& v : vs)
                    if (!bound.count(v)) out.insert(v);
            }
            bool inserted = bound.insert(f.qvar()).second;
            collect_free_vars(f.child(), bound, out);
            if (inserted) bound.erase(f.qvar());
            return;
        }
    }
}

inline std::set<Var> free_vars(const Formula& f) {
    std::set<Var> b, out;
    collect_free_vars(f, b, out);
    return out;
}

inline bool occurs_free(const Formula& f, const Var& v) { return free_vars(f).count(v) != 0; }

// ── substitution (capture-avoiding) ─────────────────────────────────────────

inline Formula substitute(const Formula& f, const Var& v, const Term& t) {
    switch (f.kind()) {
        case Kind::Atom: {
            std::vector<Term> args;
            args.reserve(f.args().size());
            bool touched = false;
            for (const auto& a : f.args()) {
                Term b = substitute_term(a, v, t);
                if (!(b == a)) touched = true;
                args.push_back(std::move(b));
            }
            return touched ? Formula::atom(f.rel(), std::move(args)) : f;
        }
        case Kind::Bot: return f;
        case Kind::Not: {
            Formula b = substitute(f.child(), v, t);
            return b == f.child() ? f : Formula::neg(std::move(b));
        }
        case Kind::Imp:
        case Kind::And:
        case Kind::Or: {
            Formula a = substitute(f.child(0), v, t);
            Formula b = substitute(f.child(1), v, t);
            if (a == f.child(0) && b == f.child(1)) return f;
            if (f.kind() == Kind::Imp) return Formula::imp(std::move(a), std::move(b));
            if (f.kind() == Kind::And) return Formula::conj(std::move(a), std::move(b));
            return Formula::disj(std::move(a), std::move(b));
        }
        case Kind::Forall:
        case Kind::Exists: {
            std::optional<Term> bound = f.bound();
            if (bound) bound = substitute_term(*bound, v, t);
            if (f.qvar() == v) {
                // v is shadowed in the body; only the bound term changes
                if (bound == f.bound()) return f;
                return Formula::quant(f.kind(), f.qvar(), f.child(), std::move(bound));
            }
            if (term_mentions(t, f.qvar()) && occurs_free(f.child(), v)) {
                // capture: rename the binder first
                Var w = fresh_var(f.qvar().name);
                Formula body = substitute(f.child(), f.qvar(), Term::var(w));
                body = substitute(body, v, t);
                return Formula::quant(f.kind(), w, std::move(body), std::move(bound));
            }
            Formula body = substitute(f.child(), v, t);
            if (body == f.child() && bound == f.bound()) return f;
            return Formula::quant(f.kind(), f.qvar(), std::move(body), std::move(bound));
        }
    }
    return f;
}

// ── alpha-equivalence ───────────────────────────────────────────────────────
// The comparison predicate for "formulas identified up to a renaming of the
// bounded variables". Free variables must match exactly.

namespace detail {

inline bool alpha_eq_term(const Term& a, const Term& b, std::map<long long, long long>& l2r,
                          std::map<long long, long long>& r2l) {
    if (a.is_var() != b.is_var()) return false;
    if (a.is_var()) {
        auto it = l2r.find(a.as_var().id);
        auto jt = r2l.find(b.as_var().id);
        if (it != l2r.end() || jt != r2l.end())
            return it != l2r.end() && jt != r2l.end() && it->second == b.as_var().id &&
                   jt->second == a.as_var().id;
        return a.as_var() == b.as_var();
    }
    if (a.fn() != b.fn() || a.args().size() != b.args().size()) return false;
    for (std::size_t i = 0; i < a.args().size(); ++i)
        if (!alpha_eq_term(a.args()[i], b.args()[i], l2r, r2l)) return false;
    return true;
}

inline bool alpha_eq(const Formula& a, const Formula& b, std::map<long long, long long>& l2r,
                     std::map<long long, long long>& r2l) {
    if (a.kind() != b.kind()) return false;
    switch (a.kind()) {
        case Kind::Atom: {
            if (a.rel() != b.rel() || a.args().size() != b.args().size()) return false;
            for (std::size_t i = 0; i < a.args().size(); ++i)
                if (!alpha_eq_term(a.args()[i], b.args()[i], l2r, r2l)) return false;
            return true;
        }
        case Kind::Bot: return true;
        case Kind::Not: return alpha_eq(a.child(), b.child(), l2r, r2l);
        case Kind::Imp:
        case Kind::And:
        case Kind::Or:
            return alpha_eq(a.child(0), b.child(0), l2r, r2l) && alpha_eq(a.child(1), b.child(1), l2r, r2l);
        case Kind::Forall:
        case Kind::Exists: {
            if (a.bound().has_value() != b.bound().has_value()) return false;
            if (a.bound() && !alpha_eq_term(*a.bound(), *b.bound(), l2r, r2l)) return false;
            auto save_l = l2r, save_r = r2l;
            l2r[a.qvar().id] = b.qvar().id;
            r2l[b.qvar().id] = a.qvar().id;
            bool eq = alpha_eq(a.child(), b.child(), l2r, r2l);
            l2r = std::move(save_l);
            r2l = std::move(save_r);
            return eq;
        }
    }
    return false;
}

} // namespace detail

inline bool alpha_equal(const Formula& a, const Formula& b) {
    std::map<long long, long long> l2r, r2l;
    return detail::alpha_eq(a, b, l2r, r2l);
}

// ── printing ────────────────────────────────────────────────────────────────
// Variables print as name?id so that parse(print(f)) is structurally equal to f.

inline void print_term(const Term& t, std::ostream& os) {
    if (t.is_var()) {
        os << t.as_var().name << '?' << t.as_var().id;
        return;
    }
    if (t.args().empty()) {
        os << t.fn();
        return;
    }
    os << '(' << t.fn();
    for (const auto& a : t.args()) {
        os << ' ';
        print_term(a, os);
    }
    os << ')';
}

inline std::string print_term(const Term& t) {
    std::ostringstream os;
    print_term(t, os);
    return os.str();
}

inline void print_formula(const Formula& f, std::ostream& os) {
    switch (f.kind()) {
        case Kind::Atom:
            if (f.args().empty()) {
                os << '(' << f.rel() << ')';
                return;
            }
            os << '(' << f.rel();
            for (const auto& a : f.args()) {
                os << ' ';
                print_term(a, os);
            }
            os << ')';
            return;
        case Kind::Bot: os << "(bot)"; return;
        case Kind::Not:
            os << "(not ";
            print_formula(f.child(), os);
            os << ')';
            return;
        case Kind::Imp:
        case Kind::And:
        case Kind::Or: {
            os << '(' << (f.kind() == Kind::Imp ? "imp" : f.kind() == Kind::And ? "and" : "or") << ' ';
            print_formula(f.child(0), os);
            os << ' ';
            print_formula(f.child(1), os);
            os << ')';
            return;
        }
        case Kind::Forall:
        case Kind::Exists: {
            os << '(' << (f.kind() == Kind::Forall ? "forall" : "exists") << ' ';
            if (f.bound()) {
                os << "(<= " << f.qvar().name << '?' << f.qvar().id << ' ';
                print_term(*f.bound(), os);
                os << ')';
            } else {
                os << f.qvar().name << '?' << f.qvar().id;
            }
            os << ' ';
            print_formula(f.child(), os);
            os << ')';
            return;
        }
    }
}

inline std::string print_formula(const Formula& f) {
    std::ostringstream os;
    print_formula(f, os);
    return os.str();
}

} // namespace gamewit

#endif
