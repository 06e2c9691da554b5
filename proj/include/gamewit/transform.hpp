// Normal forms and translations on formulas: the {imp,bot} fragment, NNF,
// prenexification, the implicit-bounding translation, strong or-expansion,
// prefix slicing, Herbrand normal form, and the alternating prenex view.

#ifndef GAMEWIT_TRANSFORM_HPP
#define GAMEWIT_TRANSFORM_HPP

#include <optional>
#include <string>
#include <vector>

#include "gamewit/fol.hpp"

namespace gamewit {

// ── shadowing normalization ─────────────────────────────────────────────────
// Gives every binder a fresh variable, so no free/bound or bound/bound
// shadowing remains.

inline Formula rename_apart(const Formula& f) {
    switch (f.kind()) {
        case Kind::Atom:
        case Kind::Bot: return f;
        case Kind::Not: return Formula::neg(rename_apart(f.child()));
        case Kind::Imp: return Formula::imp(rename_apart(f.child(0)), rename_apart(f.child(1)));
        case Kind::And: return Formula::conj(rename_apart(f.child(0)), rename_apart(f.child(1)));
        case Kind::Or: return Formula::disj(rename_apart(f.child(0)), rename_apart(f.child(1)));
        case Kind::Forall:
        case Kind::Exists: {
            Var w = fresh_var(f.qvar().name);
            Formula body = substitute(f.child(), f.qvar(), Term::var(w));
            return Formula::quant(f.kind(), w, rename_apart(body), f.bound());
        }
    }
    return f;
}

// ── desugar to {imp, bot} ───────────────────────────────────────────────────
//   not a        -> a -> bot
//   a and b      -> (a -> (b -> bot)) -> bot
//   a or b       -> (a -> bot) -> b
//   (not a) or b -> a -> b

inline Formula desugar_to_imp(const Formula& f) {
    switch (f.kind()) {
        case Kind::Atom:
        case Kind::Bot: return f;
        case Kind::Not: return Formula::imp(desugar_to_imp(f.child()), Formula::bot());
        case Kind::Imp: return Formula::imp(desugar_to_imp(f.child(0)), desugar_to_imp(f.child(1)));
        case Kind::And:
            return Formula::imp(Formula::imp(desugar_to_imp(f.child(0)),
                                             Formula::imp(desugar_to_imp(f.child(1)), Formula::bot())),
                                Formula::bot());
        case Kind::Or:
            if (f.child(0).kind() == Kind::Not)
                return Formula::imp(desugar_to_imp(f.child(0).child()), desugar_to_imp(f.child(1)));
            return Formula::imp(Formula::imp(desugar_to_imp(f.child(0)), Formula::bot()),
                                desugar_to_imp(f.child(1)));
        case Kind::Forall:
        case Kind::Exists:
            return Formula::quant(f.kind(), f.qvar(), desugar_to_imp(f.child()), f.bound());
    }
    return f;
}

// ── negation normal form ────────────────────────────────────────────────────
// Negations pushed to atoms (bot counts as a leaf); implications expanded.

inline Formula to_nnf(const Formula& f);

inline Formula nnf_neg(const Formula& f) {
    switch (f.kind()) {
        case Kind::Atom:
        case Kind::Bot: return Formula::neg(f);
        case Kind::Not: return to_nnf(f.child());
        case Kind::Imp: return Formula::conj(to_nnf(f.child(0)), nnf_neg(f.child(1)));
        case Kind::And: return Formula::disj(nnf_neg(f.child(0)), nnf_neg(f.child(1)));
        case Kind::Or: return Formula::conj(nnf_neg(f.child(0)), nnf_neg(f.child(1)));
        case Kind::Forall: return Formula::exists(f.qvar(), nnf_neg(f.child()), f.bound());
        case Kind::Exists: return Formula::forall(f.qvar(), nnf_neg(f.child()), f.bound());
    }
    return f;
}

inline Formula to_nnf(const Formula& f) {
    switch (f.kind()) {
        case Kind::Atom:
        case Kind::Bot: return f;
        case Kind::Not: return nnf_neg(f.child());
        case Kind::Imp: return Formula::disj(nnf_neg(f.child(0)), to_nnf(f.child(1)));
        case Kind::And: return Formula::conj(to_nnf(f.child(0)), to_nnf(f.child(1)));
        case Kind::Or: return Formula::disj(to_nnf(f.child(0)), to_nnf(f.child(1)));
        case Kind::Forall:
        case Kind::Exists: return Formula::quant(f.kind(), f.qvar(), to_nnf(f.child()), f.bound());
    }
    return f;
}

inline bool is_quantifier_free(const Formula& f) {
    switch (f.kind()) {
        case Kind::Atom:
        case Kind::Bot: return true;
        case Kind::Not: return is_quantifier_free(f.child());
        case Kind::Imp:
        case Kind::And:
        case Kind::Or: return is_quantifier_free(f.child(0)) && is_quantifier_free(f.child(1));
        case Kind::Forall:
        case Kind::Exists: return false;
    }
    return true;
}

inline bool is_prenex(const Formula& f) {
    const Formula* g = &f;
    while (is_quantifier(g->kind())) g = &g->child();
    return is_quantifier_free(*g);
}

inline bool is_universal_formula(const Formula& f) {
    const Formula* g = &f;
    while (g->kind() == Kind::Forall && !g->bound()) g = &g->child();
    return is_quantifier_free(*g);
}

// ── prenexification ─────────────────────────────────────────────────────────
// Input in NNF. Quantifiers are pulled out left to right; bounded quantifiers
// are unfolded into their guarded unbounded form on the way out, which keeps
// the move evaluation-preserving even over empty ranges.

inline Formula to_prenex(const Formula& f) {
    switch (f.kind()) {
        case Kind::Atom:
        case Kind::Bot:
        case Kind::Not: return f;
        case Kind::Imp: throw InputError("to_prenex: input must be in NNF");
        case Kind::Forall:
        case Kind::Exists: {
            Formula body = f.child();
            if (f.bound()) {
                Formula guard = Formula::atom("leq", {Term::var(f.qvar()), *f.bound()});
                body = f.kind() == Kind::Forall ? Formula::disj(Formula::neg(guard), body)
                                                : Formula::conj(guard, body);
            }
            return Formula::quant(f.kind(), f.qvar(), to_prenex(body));
        }
        case Kind::And:
        case Kind::Or: {
            Formula a = to_prenex(f.child(0));
            Formula b = to_prenex(f.child(1));
            // Drain a's prefix first, then b's.
            std::vector<std::pair<Kind, Var>> prefix;
            while (is_quantifier(a.kind())) {
                Var w = fresh_var(a.qvar().name);
                prefix.emplace_back(a.kind(), w);
                a = substitute(a.child(), a.qvar(), Term::var(w));
            }
            while (is_quantifier(b.kind())) {
                Var w = fresh_var(b.qvar().name);
                prefix.emplace_back(b.kind(), w);
                b = substitute(b.child(), b.qvar(), Term::var(w));
            }
            Formula out = f.kind() == Kind::And ? Formula::conj(std::move(a), std::move(b))
                                                : Formula::disj(std::move(a), std::move(b));
            for (auto it = prefix.rbegin(); it != prefix.rend(); ++it)
                out = Formula::quant(it->first, it->second, std::move(out));
            return out;
        }
    }
    return f;
}

// ── implicit bounding ───────────────────────────────────────────────────────
// Prenex bounded formula -> equivalent formula with unbounded quantifiers:
//   forall y<=t . a  ->  forall y . not(leq(y,t)) or a
//   exists y<=t . a  ->  exists y . leq(y,t) and a

inline Formula imp_translate(const Formula& f) {
    if (!is_prenex(f)) throw InputError("imp_translate: input must be prenex");
    if (is_quantifier_free(f)) return f;
    Formula body = imp_translate(f.child());
    if (!f.bound()) return Formula::quant(f.kind(), f.qvar(), std::move(body));
    Formula guard = Formula::atom("leq", {Term::var(f.qvar()), *f.bound()});
    if (f.kind() == Kind::Forall)
        return Formula::forall(f.qvar(), Formula::disj(Formula::neg(std::move(guard)), std::move(body)));
    return Formula::exists(f.qvar(), Formula::conj(std::move(guard), std::move(body)));
}

// ── subformula addressing & or-expansion ────────────────────────────────────
// A path is a sequence of child indices from the root (quantifiers have one
// child, binary connectives two, not one).

inline const Formula* subformula_at(const Formula& f, const std::vector<int>& path, std::size_t i = 0) {
    if (i == path.size()) return &f;
    int c = path[i];
    if (c < 0 || static_cast<std::size_t>(c) >= f.child_count()) return nullptr;
    return subformula_at(f.child(c), path, i + 1);
}

namespace detail {

inline Formula replace_at(const Formula& f, const std::vector<int>& path, std::size_t i, const Formula& g) {
    if (i == path.size()) return g;
    int c = path[i];
    switch (f.kind()) {
        case Kind::Not: return Formula::neg(replace_at(f.child(), path, i + 1, g));
        case Kind::Imp:
        case Kind::And:
        case Kind::Or: {
            Formula a = c == 0 ? replace_at(f.child(0), path, i + 1, g) : f.child(0);
            Formula b = c == 1 ? replace_at(f.child(1), path, i + 1, g) : f.child(1);
            if (f.kind() == Kind::Imp) return Formula::imp(std::move(a), std::move(b));
            if (f.kind() == Kind::And) return Formula::conj(std::move(a), std::move(b));
            return Formula::disj(std::move(a), std::move(b));
        }
        case Kind::Forall:
        case Kind::Exists:
            return Formula::quant(f.kind(), f.qvar(), replace_at(f.child(), path, i + 1, g), f.bound());
        default: throw InputError("or_expand: invalid subformula path");
    }
}

} // namespace detail

// Replaces the subformula psi at `path` by (psi or psi'), where psi' is a
// bound-variable-renamed copy. In strong mode psi must be existential.
inline Formula or_expand(const Formula& f, const std::vector<int>& path, bool strong = true) {
    const Formula* sub = subformula_at(f, path);
    if (!sub) throw InputError("or_expand: invalid subformula path");
    if (strong && sub->kind() != Kind::Exists)
        throw InputError("strong or-expansion requires an existentially quantified subformula");
    Formula copy = rename_apart(*sub);
    return detail::replace_at(f, path, 0, Formula::disj(*sub, std::move(copy)));
}

inline Formula strong_or_expand(const Formula& f, const std::vector<int>& path) {
    return or_expand(f, path, true);
}

// ── alternating prenex view ─────────────────────────────────────────────────

struct QuantSlot {
    bool existential;
    Var var;
    std::optional<Term> bound;
};

struct PrenexShape {
    std::vector<QuantSlot> slots;  // strictly alternating: E A E A ... ending with A
    Formula matrix;
    int k = 0;  // number of (exists, forall) pairs

    const Term* exists_bound(int round) const {  // round is 1-based
        return slots[2 * (round - 1)].bound ? &*slots[2 * (round - 1)].bound : nullptr;
    }
    const Term* forall_bound(int round) const {
        return slots[2 * round - 1].bound ? &*slots[2 * round - 1].bound : nullptr;
    }
    const Var& exists_var(int round) const { return slots[2 * (round - 1)].var; }
    const Var& forall_var(int round) const { return slots[2 * round - 1].var; }
};

// Pads a non-alternating prefix with dummy bounded quantifiers over bound 0
// so the result starts with exists and strictly alternates down to forall.
inline PrenexShape prenex_shape(const Formula& f) {
    if (!is_prenex(f)) throw InputError("prenex_shape: input must be prenex");
    PrenexShape out;
    const Formula* g = &f;
    bool want_exists = true;
    while (is_quantifier(g->kind())) {
        bool ex = g->kind() == Kind::Exists;
        if (ex != want_exists)
            out.slots.push_back(QuantSlot{want_exists, fresh_var("pad"), Term::zero()});
        out.slots.push_back(QuantSlot{ex, g->qvar(), g->bound()});
        want_exists = !ex;
        g = &g->child();
    }
    if (out.slots.size() % 2 == 1)  // ends with exists: pad a forall
        out.slots.push_back(QuantSlot{false, fresh_var("pad"), Term::zero()});
    out.matrix = *g;
    out.k = static_cast<int>(out.slots.size() / 2);
    return out;
}

// ── prefix slicing ──────────────────────────────────────────────────────────
// phi_slice(f, i) strips the first i (exists, forall) pairs; the freed
// variables become free with fresh ids. phi_slice(f, 0) is f itself.

inline Formula phi_slice(const Formula& f, int i) {
    if (i < 0) throw InputError("phi_slice: index out of range");
    if (i == 0) return f;
    const Formula* g = &f;
    std::vector<Var> freed;
    for (int pair = 0; pair < i; ++pair) {
        if (g->kind() != Kind::Exists) throw InputError("phi_slice: index out of range");
        freed.push_back(g->qvar());
        g = &g->child();
        if (g->kind() != Kind::Forall) throw InputError("phi_slice: prefix must strictly alternate");
        freed.push_back(g->qvar());
        g = &g->child();
    }
    Formula rest = *g;
    for (const Var& v : freed) rest = substitute(rest, v, Term::var(fresh_var(v.name)));
    return rest;
}

// ── Herbrand normal form ────────────────────────────────────────────────────
// exists y1 forall x1 ... exists yk forall xk M
//   -> exists y1 ... exists yk M[x_j := f_j(x, y1..yj)]
// over the signature extended with fresh function symbols f1..fk.

struct Herbrandization {
    Formula formula;
    std::vector<std::string> new_symbols;
    Signature extended;
};

inline Herbrandization herbrandize(const Formula& f, const Var& x, const Signature& sig) {
    Herbrandization out;
    out.extended = sig;
    const Formula* g = &f;
    std::vector<Var> evars, uvars;
    while (g->kind() == Kind::Exists) {
        if (g->bound()) throw InputError("herbrandize: input must be implicitly bounded (no bound terms)");
        evars.push_back(g->qvar());
        g = &g->child();
        if (g->kind() != Kind::Forall) throw InputError("herbrandize: prefix must strictly alternate");
        if (g->bound()) throw InputError("herbrandize: input must be implicitly bounded (no bound terms)");
        uvars.push_back(g->qvar());
        g = &g->child();
    }
    if (!is_quantifier_free(*g)) throw InputError("herbrandize: matrix must be quantifier-free");
    Formula body = *g;
    int k = static_cast<int>(evars.size());
    for (int j = 0; j < k; ++j) {
        std::string name;
        for (int n = j + 1;; ++n) {
            name = "f" + std::to_string(n);
            if (!out.extended.has_function(name) && !out.extended.has_relation(name)) break;
        }
        out.extended.add_function(name, j + 2);
        out.new_symbols.push_back(name);
        std::vector<Term> args{Term::var(x)};
        for (int c = 0; c <= j; ++c) args.push_back(Term::var(evars[c]));
        body = substitute(body, uvars[j], Term::app(name, std::move(args)));
    }
    for (int j = k - 1; j >= 0; --j) body = Formula::exists(evars[j], std::move(body));
    out.formula = std::move(body);
    return out;
}

} // namespace gamewit

#endif
