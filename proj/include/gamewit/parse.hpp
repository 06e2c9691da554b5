// Text format for terms and formulas.
//
// Terms:    (f t1 ... tk) | x?id | x | 0 | 1
// Formulas: (imp a b) (bot) (and a b) (or a b) (not a)
//           (forall x a) (exists x a)
//           (forall (<= x t) a) (exists (<= x t) a)
//           (R t1 ... tk)
//
// A bare variable name gets one id per name within a parse (binders shadow);
// name?id pins the id explicitly. Whitespace-insensitive, `;` starts a
// line comment.

#ifndef GAMEWIT_PARSE_HPP
#define GAMEWIT_PARSE_HPP

#include <map>
#include <string>
#include <vector>

#include "gamewit/fol.hpp"
#include "gamewit/util.hpp"

namespace gamewit {

namespace detail {

inline bool is_var_token(const std::string& a) {
    if (a.empty()) return false;
    if (a == "0" || a == "1") return false;
    char c = a[0];
    return (std::isalpha(static_cast<unsigned char>(c)) || c == '_');
}

struct ParseScope {
    const Signature* sig;
    std::vector<std::pair<std::string, Var>> binders;  // innermost last
    std::map<std::string, Var> frees;

    Var resolve(const std::string& tok, std::size_t at) {
        auto q = tok.find('?');
        std::string name = tok.substr(0, q);
        if (q != std::string::npos) {
            long long id;
            try {
                id = std::stoll(tok.substr(q + 1));
            } catch (...) {
                throw ParseError("malformed variable token " + tok, at);
            }
            bump_fresh_id(id);
            return Var{name, id};
        }
        for (auto it = binders.rbegin(); it != binders.rend(); ++it)
            if (it->first == name) return it->second;
        auto f = frees.find(name);
        if (f != frees.end()) return f->second;
        Var v = fresh_var(name);
        frees.emplace(name, v);
        return v;
    }

    Var bind(const std::string& tok, std::size_t at) {
        auto q = tok.find('?');
        Var v;
        if (q != std::string::npos) {
            v = resolve(tok, at);
        } else {
            v = fresh_var(tok);
        }
        binders.emplace_back(tok.substr(0, q), v);
        return v;
    }
    void unbind() { binders.pop_back(); }
};

inline Term term_of(const Sexpr& e, ParseScope& sc) {
    const Signature& sig = *sc.sig;
    if (e.is_atom) {
        if (sig.has_function(e.atom)) {
            if (sig.function_arity(e.atom) != 0)
                throw ParseError("function " + e.atom + " used without arguments", e.pos);
            return Term::app(e.atom);
        }
        if (!is_var_token(e.atom)) throw ParseError("unknown symbol " + e.atom, e.pos);
        return Term::var(sc.resolve(e.atom, e.pos));
    }
    if (e.items.empty() || !e.items[0].is_atom) throw ParseError("expected a function application", e.pos);
    const std::string& fn = e.items[0].atom;
    if (!sig.has_function(fn)) throw ParseError("unknown function symbol " + fn, e.pos);
    int arity = sig.function_arity(fn);
    if (static_cast<int>(e.items.size()) - 1 != arity)
        throw ParseError("function " + fn + " expects " + std::to_string(arity) + " arguments, got " +
                             std::to_string(e.items.size() - 1),
                         e.pos);
    std::vector<Term> args;
    for (std::size_t i = 1; i < e.items.size(); ++i) args.push_back(term_of(e.items[i], sc));
    return Term::app(fn, std::move(args));
}

inline Formula formula_of(const Sexpr& e, ParseScope& sc) {
    const Signature& sig = *sc.sig;
    if (e.is_atom) throw ParseError("expected a formula, got atom " + e.atom, e.pos);
    if (e.items.empty() || !e.items[0].is_atom) throw ParseError("expected a formula", e.pos);
    const std::string& h = e.items[0].atom;

    auto expect = [&](std::size_t n) {
        if (e.items.size() != n)
            throw ParseError(h + " expects " + std::to_string(n - 1) + " arguments", e.pos);
    };

    if (h == "bot") {
        expect(1);
        return Formula::bot();
    }
    if (h == "not") {
        expect(2);
        return Formula::neg(formula_of(e.items[1], sc));
    }
    if (h == "imp" || h == "and" || h == "or") {
        expect(3);
        Formula a = formula_of(e.items[1], sc);
        Formula b = formula_of(e.items[2], sc);
        if (h == "imp") return Formula::imp(std::move(a), std::move(b));
        if (h == "and") return Formula::conj(std::move(a), std::move(b));
        return Formula::disj(std::move(a), std::move(b));
    }
    if (h == "forall" || h == "exists") {
        expect(3);
        Kind k = h == "forall" ? Kind::Forall : Kind::Exists;
        const Sexpr& binder = e.items[1];
        if (binder.is_atom) {
            Var v = sc.bind(binder.atom, binder.pos);
            Formula body = formula_of(e.items[2], sc);
            sc.unbind();
            return Formula::quant(k, v, std::move(body));
        }
        if (binder.size() != 3 || !binder.at(0).is_atom || binder.at(0).atom != "<=" ||
            !binder.at(1).is_atom)
            throw ParseError("bounded binder must be (<= x t)", binder.pos);
        Term bound = term_of(binder.at(2), sc);  // bound read outside the binder scope
        Var v = sc.bind(binder.at(1).atom, binder.at(1).pos);
        if (term_mentions(bound, v))
            throw ParseError("bound term mentions the quantified variable " + v.name, binder.pos);
        Formula body = formula_of(e.items[2], sc);
        sc.unbind();
        return Formula::quant(k, v, std::move(body), std::move(bound));
    }

    if (!sig.has_relation(h)) throw ParseError("unknown relation symbol " + h, e.pos);
    int arity = sig.relation_arity(h);
    if (static_cast<int>(e.items.size()) - 1 != arity)
        throw ParseError("relation " + h + " expects " + std::to_string(arity) + " arguments, got " +
                             std::to_string(e.items.size() - 1),
                         e.pos);
    std::vector<Term> args;
    for (std::size_t i = 1; i < e.items.size(); ++i) args.push_back(term_of(e.items[i], sc));
    return Formula::atom(h, std::move(args));
}

} // namespace detail

inline Formula parse_formula(const std::string& text, const Signature& sig) {
    Sexpr e = parse_sexpr(text);
    detail::ParseScope sc{&sig, {}, {}};
    return detail::formula_of(e, sc);
}

inline Formula parse_formula(const Sexpr& e, const Signature& sig) {
    detail::ParseScope sc{&sig, {}, {}};
    return detail::formula_of(e, sc);
}

inline Term parse_term(const std::string& text, const Signature& sig) {
    Sexpr e = parse_sexpr(text);
    detail::ParseScope sc{&sig, {}, {}};
    return detail::term_of(e, sc);
}

// Infer a signature from raw formula text: heads in formula position become
// relations, heads in term position functions, anything else a variable.
namespace detail {

inline void infer_term(const Sexpr& e, Signature& sig) {
    if (e.is_atom) return;  // variable or constant
    if (e.items.empty() || !e.items[0].is_atom) throw ParseError("expected a function application", e.pos);
    sig.add_function(e.items[0].atom, static_cast<int>(e.items.size()) - 1);
    for (std::size_t i = 1; i < e.items.size(); ++i) infer_term(e.items[i], sig);
}

inline void infer_formula(const Sexpr& e, Signature& sig) {
    if (e.is_atom) throw ParseError("expected a formula, got atom " + e.atom, e.pos);
    if (e.items.empty() || !e.items[0].is_atom) throw ParseError("expected a formula", e.pos);
    const std::string& h = e.items[0].atom;
    if (h == "bot") return;
    if (h == "not") {
        infer_formula(e.at(1), sig);
        return;
    }
    if (h == "imp" || h == "and" || h == "or") {
        infer_formula(e.at(1), sig);
        infer_formula(e.at(2), sig);
        return;
    }
    if (h == "forall" || h == "exists") {
        const Sexpr& binder = e.at(1);
        if (!binder.is_atom) {
            if (binder.size() == 3) infer_term(binder.at(2), sig);
        }
        infer_formula(e.at(2), sig);
        return;
    }
    sig.add_relation(h, static_cast<int>(e.items.size()) - 1);
    for (std::size_t i = 1; i < e.items.size(); ++i) infer_term(e.items[i], sig);
}

} // namespace detail

inline void infer_signature(const std::string& text, Signature& sig) {
    for (const Sexpr& e : parse_sexprs(text)) detail::infer_formula(e, sig);
}

} // namespace gamewit

#endif
