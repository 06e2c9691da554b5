// The Herbrand route to strategies: strong or-expansions, the quantifier
// tree of an expansion, witnessing substitutions found by bounded search and
// validated on small structures, and the strategy that replays the tree.

#ifndef GAMEWIT_HERBRAND_HPP
#define GAMEWIT_HERBRAND_HPP

#include <optional>
#include <vector>

#include "gamewit/enumerate.hpp"
#include "gamewit/search.hpp"
#include "gamewit/strategy.hpp"

namespace gamewit {

struct QuantifierTree {
    std::vector<int> parent;  // per existential (0-based, discovery order); -1 = root
    int k = 0;                // alternation depth; every leaf sits at level k

    int depth_of(int i) const { return parent[i] < 0 ? 1 : depth_of(parent[i]) + 1; }
};

struct HerbrandExpansion {
    QuantifierTree tree;
    std::vector<Var> evars;  // existential variable per node
    std::vector<Var> uvars;  // the paired universal variable per node
    Formula matrix;          // the expansion with all quantifiers stripped (guards kept)
};

// ── quantifier tree of a strong or-expansion ────────────────────────────────
// Input: an implicitly bounded NNF formula (an or-expansion of an alternating
// exists/forall formula), binders pairwise distinct.

namespace detail {

inline void scan_expansion(const Formula& f, int enclosing, std::optional<int>& await_forall,
                           HerbrandExpansion& out) {
    switch (f.kind()) {
        case Kind::Atom:
        case Kind::Bot:
        case Kind::Not: return;
        case Kind::Imp:
        case Kind::And:
        case Kind::Or:
            scan_expansion(f.child(0), enclosing, await_forall, out);
            scan_expansion(f.child(1), enclosing, await_forall, out);
            return;
        case Kind::Exists: {
            if (f.bound()) throw InputError("expansion must be implicitly bounded");
            if (await_forall)
                throw InputError("expansion is not alternating: exists before the paired forall");
            int idx = static_cast<int>(out.evars.size());
            out.evars.push_back(f.qvar());
            out.uvars.push_back(Var{});  // filled by the paired forall
            out.tree.parent.push_back(enclosing);
            std::optional<int> await = idx;
            scan_expansion(f.child(), idx, await, out);
            if (await) throw InputError("existential quantifier has no paired universal");
            return;
        }
        case Kind::Forall: {
            if (f.bound()) throw InputError("expansion must be implicitly bounded");
            if (!await_forall)
                throw InputError("universal quantifier is not paired with an existential");
            out.uvars[*await_forall] = f.qvar();
            await_forall.reset();
            std::optional<int> none;
            scan_expansion(f.child(), enclosing, none, out);
            return;
        }
    }
}

inline Formula strip_quantifiers(const Formula& f) {
    switch (f.kind()) {
        case Kind::Atom:
        case Kind::Bot:
        case Kind::Not: return f;
        case Kind::Imp: return Formula::imp(strip_quantifiers(f.child(0)), strip_quantifiers(f.child(1)));
        case Kind::And: return Formula::conj(strip_quantifiers(f.child(0)), strip_quantifiers(f.child(1)));
        case Kind::Or: return Formula::disj(strip_quantifiers(f.child(0)), strip_quantifiers(f.child(1)));
        case Kind::Forall:
        case Kind::Exists: return strip_quantifiers(f.child());
    }
    return f;
}

} // namespace detail

inline HerbrandExpansion quantifier_tree_of(const Formula& expansion) {
    HerbrandExpansion out;
    std::optional<int> none;
    detail::scan_expansion(expansion, -1, none, out);
    out.matrix = detail::strip_quantifiers(expansion);
    if (out.evars.empty()) {
        out.tree.k = 0;
        return out;
    }
    int k = -1;
    for (std::size_t i = 0; i < out.evars.size(); ++i) {
        bool leaf = true;
        for (int p : out.tree.parent)
            if (p == static_cast<int>(i)) leaf = false;
        if (leaf) {
            int d = out.tree.depth_of(static_cast<int>(i));
            if (k < 0) k = d;
            if (k != d) throw InputError("expansion leaves sit at different levels");
        }
    }
    out.tree.k = k;
    return out;
}

// ── witnessing substitutions ────────────────────────────────────────────────
// A witnessing substitution assigns a term t_i to each existential, with
// t_i's variables among x and the universal variables of earlier slots. It is
// validated by checking the substituted matrix on every structure up to the
// given domain cap that satisfies the axioms, under every assignment.

inline bool check_witnessing_substitution(const HerbrandExpansion& ex, const std::vector<Term>& ts,
                                          const Var& x, const std::vector<Formula>& axioms,
                                          const Signature& sig, int max_domain) {
    if (ts.size() != ex.evars.size()) return false;
    for (std::size_t i = 0; i < ts.size(); ++i) {
        for (const Var& v : term_vars(ts[i])) {
            if (v == x) continue;
            bool ok = false;
            for (std::size_t j = 0; j < i; ++j)
                if (ex.uvars[j] == v) ok = true;
            if (!ok) return false;  // free-variable discipline violated
        }
    }
    Formula m = ex.matrix;
    for (std::size_t i = 0; i < ts.size(); ++i) m = substitute(m, ex.evars[i], ts[i]);
    std::vector<Var> vars{x};
    for (const Var& u : ex.uvars) vars.push_back(u);
    for (int d = 1; d <= max_domain; ++d) {
        StructureEnumerator en(sig, d, axioms);
        while (auto s = en.next()) {
            std::size_t total = FiniteStructure::table_size(d, static_cast<int>(vars.size()));
            for (std::size_t it = 0; it < total; ++it) {
                Assignment a;
                std::size_t rest = it;
                for (const Var& v : vars) {
                    a.set(v, static_cast<Element>(rest % d));
                    rest /= d;
                }
                if (!eval_formula(*s, m, a)) return false;
            }
        }
    }
    return true;
}

// Brute-force search over pool-derived candidate tuples; the checker above is
// the acceptance oracle. Pool patterns may contain hole variables, filled
// from the slot's allowed variables.
inline std::optional<std::vector<Term>> find_witnessing_substitution(
    const HerbrandExpansion& ex, const Var& x, const std::vector<Formula>& axioms, const Signature& sig,
    const std::vector<Term>& pool, int max_domain, long long tuple_cap = 200'000) {
    std::size_t n = ex.evars.size();
    std::vector<std::vector<Term>> cands(n);
    for (std::size_t i = 0; i < n; ++i) {
        std::set<Var> allowed{x};
        for (std::size_t j = 0; j < i; ++j) allowed.insert(ex.uvars[j]);
        std::vector<Var> av(allowed.begin(), allowed.end());
        for (const Term& p : pool) detail::fill_holes(p, av, allowed, cands[i]);
        if (cands[i].empty()) return std::nullopt;
    }
    std::vector<std::size_t> idx(n, 0);
    long long tried = 0;
    while (true) {
        if (++tried > tuple_cap) throw CapExceeded("witness search exceeded the tuple cap");
        std::vector<Term> ts;
        for (std::size_t i = 0; i < n; ++i) ts.push_back(cands[i][idx[i]]);
        if (check_witnessing_substitution(ex, ts, x, axioms, sig, max_domain)) return ts;
        std::size_t i = 0;
        while (i < n && ++idx[i] == cands[i].size()) idx[i++] = 0;
        if (i == n) return std::nullopt;
    }
}

// ── the replay strategy ─────────────────────────────────────────────────────
// Round i attaches a node under the round of the parent existential (the root
// when the existential is top-level) and plays t_i; the falsifier's reply
// binds the paired universal variable, which later witnesses may mention.

inline LStrategy herbrand_extract(const HerbrandExpansion& ex, const std::vector<Term>& witnesses,
                                  const Var& x) {
    if (witnesses.size() != ex.evars.size())
        throw InputError("herbrand_extract: one witness per existential required");
    for (std::size_t i = 0; i < witnesses.size(); ++i)
        for (const Var& v : term_vars(witnesses[i])) {
            if (v == x) continue;
            bool ok = false;
            for (std::size_t j = 0; j < i; ++j)
                if (ex.uvars[j] == v) ok = true;
            if (!ok)
                throw InputError("herbrand_extract: witness " + std::to_string(i + 1) +
                                 " violates the free-variable discipline (" + v.name + ")");
        }
    LStrategy s;
    s.initial_size = 1;
    s.input_var = x;
    for (std::size_t i = 0; i < witnesses.size(); ++i) {
        StrategyMove m;
        m.p = witnesses[i];
        m.attach = ex.tree.parent[i] < 0 ? 1 : ex.tree.parent[i] + 2;  // round j creates node j+1
        m.reply_var = ex.uvars[i];
        s.moves.push_back(std::move(m));
    }
    return s;
}

} // namespace gamewit

#endif
