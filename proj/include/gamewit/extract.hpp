// Strategy extraction from canonical proofs: the [.]_pgt translation mapping
// sequents to term-labeled partial game trees, and the case-by-case
// extraction of a truthifier strategy whose length never exceeds the number
// of R-ex-all applications.

#ifndef GAMEWIT_EXTRACT_HPP
#define GAMEWIT_EXTRACT_HPP

#include <map>
#include <set>
#include <vector>

#include "gamewit/canonical.hpp"
#include "gamewit/strategy.hpp"

namespace gamewit {

// ── term-labeled partial game trees ─────────────────────────────────────────

struct PgtEdge {
    int parent = 0;  // 1-based; 0 for the root entry
    Term term;       // edge term q, unset on the root entry
    Var var;         // edge variable z
};

struct LTermGameTree {
    std::vector<PgtEdge> nodes;  // nodes[0] is the root; creation order is the numbering

    int size() const { return static_cast<int>(nodes.size()); }
};

struct SubPhiMap {
    LTermGameTree tree;
    std::map<long long, int> node_of;   // succedent occurrence id -> 1-based node
    std::map<long long, int> slice_of;  // succedent occurrence id -> slice index
};

// ── the pgt translation ─────────────────────────────────────────────────────

namespace detail {

inline void check_pgt_invariants(const SubPhiMap& m, const Var& x, const ProofNode& at) {
    std::set<Var> zs;
    for (std::size_t i = 1; i < m.tree.nodes.size(); ++i) {
        const PgtEdge& e = m.tree.nodes[i];
        if (!zs.insert(e.var).second)
            throw InputError("pgt invariant: edge variables are not pairwise distinct at " +
                             print_sequent(at.seq));
        for (const Var& v : term_vars(e.term)) {
            if (v == x) continue;
            bool earlier = false;
            for (std::size_t j = 1; j < i; ++j)
                if (m.tree.nodes[j].var == v) earlier = true;
            if (!earlier)
                throw InputError("pgt invariant: edge term mentions " + v.name +
                                 " which is not an earlier edge variable");
        }
    }
    if (static_cast<int>(m.node_of.size()) != m.tree.size())
        throw InputError("pgt invariant: formula/node correspondence is not a bijection");
    std::set<int> targets;
    for (const auto& [id, node] : m.node_of) {
        (void)id;
        if (!targets.insert(node).second)
            throw InputError("pgt invariant: two occurrences map to one node");
    }
}

inline void pgt_walk(const ProofNode& n, const SubPhiMap& here, const Var& x,
                     std::map<const ProofNode*, SubPhiMap>& out) {
    out[&n] = here;
    switch (n.rule.tag) {
        case Rule::Ax:
        case Rule::LBot: return;
        case Rule::LImp:
        case Rule::LAll:
        case Rule::RImpC:
            for (const auto& k : n.kids) pgt_walk(*k, here, x, out);
            return;
        case Rule::RExAll: {
            auto it = here.node_of.find(n.rule.principal);
            if (it == here.node_of.end())
                throw InputError("pgt: R-ex-all principal is not tracked in Sub(phi)");
            long long active = introduced_suc_id(n, *n.kids[0]);
            SubPhiMap next = here;
            PgtEdge e;
            e.parent = it->second;
            e.term = *n.rule.witness;
            e.var = *n.rule.proper;
            next.tree.nodes.push_back(std::move(e));
            next.node_of[active] = next.tree.size();
            next.slice_of[active] = here.slice_of.at(n.rule.principal) + 1;
            check_pgt_invariants(next, x, *n.kids[0]);
            pgt_walk(*n.kids[0], next, x, out);
            return;
        }
        default:
            throw InputError(std::string("pgt: rule ") + rule_name(n.rule.tag) +
                             " cannot appear in a canonical proof");
    }
}

} // namespace detail

// Maps every sequent occurrence of a canonical proof to its partial game
// tree. `x` is the designated input variable.
inline std::map<const ProofNode*, SubPhiMap> pgt_of(const ProofTree& t, const Formula& phi,
                                                    std::optional<Var> x_opt = std::nullopt) {
    CanonicalReport rep = is_canonical(t, phi, x_opt);
    if (!rep.ok) throw InputError("pgt_of: input is not canonical: " + rep.violation);
    std::set<Var> fv = free_vars(phi);
    Var x = x_opt ? *x_opt : (fv.empty() ? fresh_var("x") : *fv.begin());

    SubPhiMap root;
    root.tree.nodes.push_back(PgtEdge{});
    root.node_of[t.root->seq.suc[0].id] = 1;
    root.slice_of[t.root->seq.suc[0].id] = 0;
    std::map<const ProofNode*, SubPhiMap> out;
    detail::pgt_walk(*t.root, root, x, out);
    return out;
}

// ── strategy extraction ─────────────────────────────────────────────────────

namespace detail {

inline LStrategy extract_node(const ProofNode& n, const std::map<const ProofNode*, SubPhiMap>& pg,
                              const Var& x) {
    const SubPhiMap& here = pg.at(&n);
    int d = here.tree.size();

    auto empty_here = [&] {
        LStrategy s;
        s.initial_size = d;
        s.input_var = x;
        return s;
    };

    switch (n.rule.tag) {
        case Rule::Ax:
        case Rule::LBot:
            // either some antecedent formula is false / bot, or the matched
            // succedent occurrence is a winning node: nothing to play
            return empty_here();
        case Rule::RImpC:
        case Rule::LAll: {
            LStrategy s = extract_node(*n.kids[0], pg, x);
            s.initial_size = d;
            return s;
        }
        case Rule::LImp: {
            LStrategy a = extract_node(*n.kids[0], pg, x);
            LStrategy b = extract_node(*n.kids[1], pg, x);
            // b's references to its own created nodes shift past a's plays
            LStrategy s = empty_here();
            s.moves = a.moves;
            for (StrategyMove m : b.moves) {
                if (m.attach > d) m.attach += static_cast<int>(a.moves.size());
                s.moves.push_back(std::move(m));
            }
            std::set<long long> seen;
            for (const auto& m : s.moves)
                if (!seen.insert(m.reply_var.id).second)
                    throw InputError("extract: branches share a proper variable (freshen the proof)");
            return s;
        }
        case Rule::RExAll: {
            LStrategy inner = extract_node(*n.kids[0], pg, x);
            LStrategy s = empty_here();
            StrategyMove first;
            first.p = *n.rule.witness;
            first.attach = here.node_of.at(n.rule.principal);
            first.reply_var = *n.rule.proper;
            s.moves.push_back(std::move(first));
            for (StrategyMove m : inner.moves) s.moves.push_back(std::move(m));
            return s;
        }
        default:
            throw InputError(std::string("extract: rule ") + rule_name(n.rule.tag) +
                             " cannot appear in a canonical proof");
    }
}

} // namespace detail

inline LStrategy extract_strategy(const ProofTree& t, const Formula& phi,
                                  std::optional<Var> x_opt = std::nullopt) {
    std::set<Var> fv = free_vars(phi);
    Var x = x_opt ? *x_opt : (fv.empty() ? fresh_var("x") : *fv.begin());
    auto pg = pgt_of(t, phi, x);
    LStrategy s = detail::extract_node(*t.root, pg, x);
    int rexall = count_rule(t, Rule::RExAll);
    if (static_cast<int>(s.moves.size()) > rexall)
        throw InputError("extract: strategy length exceeds the R-ex-all count");
    return s;
}

} // namespace gamewit

#endif
