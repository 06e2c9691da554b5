// Bounded proof search for the {imp, bot, forall, exists} fragment.
//
// Iterative deepening over rule applications. Principal selection order:
// close by Ax / L-bot, then non-quantified principals (succedent right to
// left, antecedent left to right), then quantified ones in the same order.
// Witness terms for L-all / R-ex come from a term pool; pool entries may
// contain hole variables (variables not free in the goal), which are filled
// with the goal's current free variables in every combination. Search is
// incomplete by construction; any returned tree passes check_proof.

#ifndef GAMEWIT_SEARCH_HPP
#define GAMEWIT_SEARCH_HPP

#include <memory>
#include <optional>
#include <vector>

#include "gamewit/proof.hpp"

namespace gamewit {

struct SearchConfig {
    std::vector<Term> pool;        // term patterns; empty -> generated pool
    int generated_height = 2;      // height bound for the generated pool
    long long node_budget = 2'000'000;
};

namespace detail {

inline void fill_holes(const Term& pattern, const std::vector<Var>& free_here,
                       const std::set<Var>& goal_vars, std::vector<Term>& out) {
    // find first hole
    std::function<const Var*(const Term&)> first_hole = [&](const Term& t) -> const Var* {
        if (t.is_var()) return goal_vars.count(t.as_var()) ? nullptr : &t.as_var();
        for (const auto& a : t.args())
            if (const Var* v = first_hole(a)) return v;
        return nullptr;
    };
    const Var* hole = first_hole(pattern);
    if (!hole) {
        out.push_back(pattern);
        return;
    }
    for (const Var& v : free_here) {
        Term filled = substitute_term(pattern, *hole, Term::var(v));
        fill_holes(filled, free_here, goal_vars, out);
    }
}

inline std::vector<Term> witness_candidates(const Sequent& goal, const Signature& sig,
                                            const SearchConfig& cfg) {
    std::set<Var> gv = goal.free_variables();
    std::vector<Var> free_here(gv.begin(), gv.end());
    std::vector<Term> out;
    if (!cfg.pool.empty()) {
        for (const Term& p : cfg.pool) fill_holes(p, free_here, gv, out);
        return out;
    }
    // generated: all terms over the goal's free variables up to the height bound
    std::vector<Term> layer;
    for (const Var& v : free_here) layer.push_back(Term::var(v));
    for (const auto& [name, arity] : sig.functions())
        if (arity == 0) layer.push_back(Term::app(name));
    out = layer;
    std::vector<Term> prev = layer;
    for (int h = 1; h <= cfg.generated_height; ++h) {
        std::vector<Term> next;
        for (const auto& [name, arity] : sig.functions()) {
            if (arity == 0 || arity > 2) continue;  // keep the generated pool small
            if (arity == 1) {
                for (const auto& a : prev) next.push_back(Term::app(name, {a}));
            } else {
                for (const auto& a : prev)
                    for (const auto& b : prev) next.push_back(Term::app(name, {a, b}));
            }
        }
        out.insert(out.end(), next.begin(), next.end());
        prev = std::move(next);
        if (out.size() > 4000) break;
    }
    return out;
}

struct Searcher {
    const Signature& sig;
    const SearchConfig& cfg;
    long long nodes = 0;

    std::optional<std::unique_ptr<ProofNode>> close_leaf(const Sequent& goal) {
        for (const auto& a : goal.ant) {
            if (a.f.kind() == Kind::Bot) {
                RuleApp app;
                app.tag = Rule::LBot;
                app.principal = a.id;
                return apply_rule(goal, app);
            }
            if (a.f.kind() != Kind::Atom) continue;
            for (const auto& s : goal.suc)
                if (alpha_equal(a.f, s.f)) {
                    RuleApp app;
                    app.tag = Rule::Ax;
                    app.principal = a.id;
                    app.principal_suc = s.id;
                    return apply_rule(goal, app);
                }
        }
        return std::nullopt;
    }

    std::optional<std::unique_ptr<ProofNode>> try_app(const Sequent& goal, const RuleApp& app,
                                                      int height) {
        std::unique_ptr<ProofNode> n;
        try {
            n = apply_rule(goal, app);
        } catch (const InputError&) {
            return std::nullopt;
        }
        for (auto& kid : n->kids) {
            auto sub = search(kid->seq, height - 1);
            if (!sub) return std::nullopt;
            *kid = std::move(**sub);
        }
        return n;
    }

    // true when instantiating the quantifier with t adds a formula already
    // present on that side (no progress, safe to prune by contraction)
    static bool duplicate_active(const Sequent& goal, const Occ& principal, bool left, const Term& t) {
        Formula active = substitute(principal.f.child(), principal.f.qvar(), t);
        const auto& side = left ? goal.ant : goal.suc;
        for (const auto& o : side)
            if (alpha_equal(o.f, active)) return true;
        return false;
    }

    std::optional<std::unique_ptr<ProofNode>> search(const Sequent& goal, int height) {
        if (++nodes > cfg.node_budget) return std::nullopt;
        if (auto leaf = close_leaf(goal)) return leaf;
        if (height <= 0) return std::nullopt;

        // Invertible rules are applied greedily and committed to: inversion is
        // height-preserving in this calculus, so committing loses no proofs.
        // Eager R-all also keeps universal applications limited, which suits
        // the canonicalizer. Selection order: succedent right to left, then
        // antecedent left to right.
        for (auto it = goal.suc.rbegin(); it != goal.suc.rend(); ++it)
            if (it->f.kind() == Kind::Forall && !it->f.bound()) {
                RuleApp app;
                app.tag = Rule::RAll;
                app.principal = it->id;
                app.proper = fresh_var("z");
                return try_app(goal, app, height);
            }
        for (const auto& o : goal.ant)
            if (o.f.kind() == Kind::Exists && !o.f.bound()) {
                RuleApp app;
                app.tag = Rule::LEx;
                app.principal = o.id;
                app.proper = fresh_var("z");
                return try_app(goal, app, height);
            }
        for (auto it = goal.suc.rbegin(); it != goal.suc.rend(); ++it)
            if (it->f.kind() == Kind::Imp) {
                RuleApp app;
                app.tag = Rule::RImp;
                app.principal = it->id;
                return try_app(goal, app, height);
            }
        for (const auto& o : goal.ant)
            if (o.f.kind() == Kind::Imp) {
                RuleApp app;
                app.tag = Rule::LImp;
                app.principal = o.id;
                return try_app(goal, app, height);
            }

        // witness rules: the only backtracking points
        struct Cand {
            bool left;
            const Occ* occ;
        };
        std::vector<Cand> witness;
        for (auto it = goal.suc.rbegin(); it != goal.suc.rend(); ++it)
            if (it->f.kind() == Kind::Exists && !it->f.bound()) witness.push_back({false, &*it});
        for (const auto& o : goal.ant)
            if (o.f.kind() == Kind::Forall && !o.f.bound()) witness.push_back({true, &o});

        std::vector<Term> pool = witness_candidates(goal, sig, cfg);
        for (const Cand& c : witness) {
            for (const Term& t : pool) {
                if (duplicate_active(goal, *c.occ, c.left, t)) continue;
                RuleApp app;
                app.tag = c.left ? Rule::LAll : Rule::REx;
                app.principal = c.occ->id;
                app.witness = t;
                if (auto n = try_app(goal, app, height)) return n;
            }
        }
        return std::nullopt;
    }
};

} // namespace detail

// Iterative-deepening search; nullopt when no proof is found within the depth
// (which is not a refutation).
inline std::optional<ProofTree> proof_search(const Sequent& goal, int depth, const Signature& sig,
                                             SearchConfig cfg = {}) {
    for (int h = 1; h <= depth; ++h) {
        detail::Searcher s{sig, cfg};
        if (auto n = s.search(goal, h)) return ProofTree(std::move(*n));
    }
    return std::nullopt;
}

inline std::optional<ProofTree> proof_search(const Sequent& goal, int depth, const Signature& sig,
                                             const std::vector<Term>& pool) {
    SearchConfig cfg;
    cfg.pool = pool;
    return proof_search(goal, depth, sig, cfg);
}

} // namespace gamewit

#endif
