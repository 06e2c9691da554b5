// Proof normalization: substitution into proof trees, absorbing R-imp into
// R-imp-c, limiting universal applications, pairing into R-ex-all, and
// grounding stray free variables. The composition `canonicalize` turns any
// checked proof of a pipeline-shaped sequent into a canonical proof.

#ifndef GAMEWIT_CANONICAL_HPP
#define GAMEWIT_CANONICAL_HPP

#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "gamewit/proof.hpp"

namespace gamewit {

// ── substitution into proof trees ───────────────────────────────────────────

namespace detail {

inline void subst_node(ProofNode& n, const Var& v, const Term& s) {
    for (auto& o : n.seq.ant) o.f = substitute(o.f, v, s);
    for (auto& o : n.seq.suc) o.f = substitute(o.f, v, s);
    if (n.rule.witness) n.rule.witness = substitute_term(*n.rule.witness, v, s);
    for (auto& k : n.kids) subst_node(*k, v, s);
}

} // namespace detail

// T(v/s): replaces every free occurrence of v in the tree by s. Preconditions
// mirror the substitution lemma: v is not free in s, no free variable of s
// occurs in the tree, and v is not a proper variable of any rule in the tree.
inline ProofTree beta_substitute(const ProofTree& t, const Var& v, const Term& s) {
    if (term_mentions(s, v))
        throw InputError("beta_substitute: substituted term mentions " + v.name);
    std::set<Var> tv = tree_free_vars(*t.root);
    for (const Var& w : term_vars(s))
        if (tv.count(w))
            throw InputError("beta_substitute: variable " + w.name + "?" + std::to_string(w.id) +
                             " of the term already occurs in the tree");
    for (const Var& p : proper_vars(*t.root))
        if (p == v)
            throw InputError("beta_substitute: " + v.name + " is a proper variable of the tree");
    ProofTree out = t.clone();
    detail::subst_node(*out.root, v, s);
    return out;
}

// ── helpers on rule applications ────────────────────────────────────────────

namespace detail {

// The single succedent occurrence introduced by this node's rule into a kid
// (Kleene copies keep the principal id and do not count).
inline long long introduced_suc_id(const ProofNode& parent, const ProofNode& kid) {
    long long found = -1;
    for (const auto& o : kid.seq.suc) {
        if (parent.seq.find_suc(o.id)) continue;
        if (found != -1) throw InputError("malformed tree: several new succedent occurrences");
        found = o.id;
    }
    return found;
}

inline bool is_limited_rall(const ProofNode* parent, const ProofNode& n) {
    if (n.rule.tag != Rule::RAll) return false;
    if (!parent || parent->rule.tag != Rule::REx) return false;
    return introduced_suc_id(*parent, n) == n.rule.principal;
}

inline void rename_occ_everywhere(ProofNode& n, long long from, long long to) {
    for (auto& o : n.seq.ant)
        if (o.id == from) o.id = to;
    for (auto& o : n.seq.suc)
        if (o.id == from) o.id = to;
    if (n.rule.principal == from) n.rule.principal = to;
    if (n.rule.principal_suc == from) n.rule.principal_suc = to;
    for (auto& k : n.kids) rename_occ_everywhere(*k, from, to);
}

inline void add_suc_everywhere(ProofNode& n, const Occ& o) {
    n.seq.suc.push_back(o);
    for (auto& k : n.kids) add_suc_everywhere(*k, o);
}

} // namespace detail

// ── proper-variable freshening ──────────────────────────────────────────────
// Renames every proper variable to a brand-new one (leaves first, so nested
// reuses of the same name resolve innermost-out). Afterwards proper variables
// are pairwise distinct and distinct from every other variable in the tree,
// which the rethreading transformations below rely on.

namespace detail {

inline void freshen_proper_vars(ProofNode& n) {
    for (auto& k : n.kids) freshen_proper_vars(*k);
    if (!n.rule.proper) return;
    Var p = *n.rule.proper;
    Var q = fresh_var(p.name);
    for (auto& k : n.kids) subst_node(*k, p, Term::var(q));
    n.rule.proper = q;
}

} // namespace detail

inline ProofTree freshen_proper_vars(const ProofTree& t) {
    ProofTree out = t.clone();
    detail::freshen_proper_vars(*out.root);
    return out;
}

// ── absorb R-imp into R-imp-c ───────────────────────────────────────────────
// Each R-imp becomes R-imp-c; the principal is threaded through the premise
// subtree as a side or weak formula.

inline ProofTree absorb_r_imp(const ProofTree& t) {
    if (auto v = check_proof(t)) throw InputError("absorb_r_imp: input does not check: " + v->to_string());
    ProofTree out = t.clone();
    std::function<void(ProofNode&)> walk = [&](ProofNode& n) {
        if (n.rule.tag == Rule::RImp) {
            const Occ* p = n.seq.find_suc(n.rule.principal);
            if (!p) throw InputError("absorb_r_imp: malformed tree");
            n.rule.tag = Rule::RImpC;
            detail::add_suc_everywhere(*n.kids[0], Occ{p->id, p->f});
        }
        for (auto& k : n.kids) walk(*k);
    };
    walk(*out.root);
    return out;
}

// ── unpairing (normalizes mixed input back to the base calculus) ────────────

inline void unpair_rexall_node(ProofNode& n) {
    for (auto& k : n.kids) unpair_rexall_node(*k);
    if (n.rule.tag != Rule::RExAll) return;
    const Occ* p = n.seq.find_suc(n.rule.principal);
    if (!p) throw InputError("unpair: malformed tree");
    Formula inner = substitute(p->f.child(), p->f.qvar(), *n.rule.witness);  // forall x alpha(y/t)
    Sequent mid = n.seq;
    for (auto& o : mid.suc)
        if (o.id == p->id) o.f = p->f;  // keep copy
    // mid: conclusion of the R-all = premise of the R-ex
    long long mid_active = next_occ_id();
    Sequent mseq;
    for (const auto& o : n.seq.suc)
        if (o.id != p->id) mseq.suc.push_back(o);
    mseq.ant = n.seq.ant;
    mseq.suc.push_back({mid_active, inner});
    mseq.suc.push_back({p->id, p->f});

    auto rall = std::make_unique<ProofNode>();
    rall->seq = mseq;
    rall->rule.tag = Rule::RAll;
    rall->rule.principal = mid_active;
    rall->rule.proper = n.rule.proper;
    rall->kids = std::move(n.kids);

    n.rule.tag = Rule::REx;
    n.rule.proper.reset();
    n.kids.clear();
    n.kids.push_back(std::move(rall));
}

inline ProofTree unpair_rexall(const ProofTree& t) {
    ProofTree out = t.clone();
    unpair_rexall_node(*out.root);
    return out;
}

// ── limiting universal applications ─────────────────────────────────────────

namespace detail {

struct Unlimited {
    ProofNode* node;   // the unlimited R-all
    int depth;
};

inline void find_unlimited(ProofNode& n, ProofNode* parent, int depth, std::vector<Unlimited>& out) {
    if (n.rule.tag == Rule::RAll && !is_limited_rall(parent, n)) out.push_back({&n, depth});
    for (auto& k : n.kids) find_unlimited(*k, &n, depth + 1, out);
}

// Finds the node that introduced succedent occurrence `id`, walking down from
// `leaf` along the parent chain.
inline ProofNode* find_introducer(std::vector<ProofNode*>& chain, long long id) {
    // chain: root ... leaf. The introducer is the deepest node whose sequent
    // lacks the occurrence while its kid on the chain has it.
    for (std::size_t i = chain.size(); i-- > 1;) {
        if (!chain[i - 1]->seq.find_suc(id) && chain[i]->seq.find_suc(id)) return chain[i - 1];
    }
    return nullptr;
}

inline bool build_chain(ProofNode& n, ProofNode* target, std::vector<ProofNode*>& chain) {
    chain.push_back(&n);
    if (&n == target) return true;
    for (auto& k : n.kids)
        if (build_chain(*k, target, chain)) return true;
    chain.pop_back();
    return false;
}

// Replaces occurrence `from` by (to_id, g) in this subtree; at every R-all
// node consuming `from`, splices the beta-substituted premise subtree.
inline void rethread(std::unique_ptr<ProofNode>& slot, long long from, long long to_id, const Formula& g,
                     const Var& z) {
    ProofNode& n = *slot;
    bool consumed_here = n.rule.tag == Rule::RAll && n.rule.principal == from;
    if (consumed_here) {
        Var w = *n.rule.proper;
        long long active = introduced_suc_id(n, *n.kids[0]);
        std::unique_ptr<ProofNode> sub = std::move(n.kids[0]);
        if (!(w == z)) subst_node(*sub, w, Term::var(z));
        rename_occ_everywhere(*sub, active, to_id);
        slot = std::move(sub);
        return;
    }
    bool here = false;
    for (auto& o : n.seq.suc)
        if (o.id == from) {
            o.id = to_id;
            o.f = g;
            here = true;
        }
    if (!here) return;  // occurrence was not threaded into this branch
    if (n.rule.principal == from) n.rule.principal = to_id;
    if (n.rule.principal_suc == from) n.rule.principal_suc = to_id;
    for (auto& k : n.kids) rethread(k, from, to_id, g, z);
}

} // namespace detail

// Removes every unlimited application of R-all. Pre: the tree checks, has no
// R-imp and no R-ex-all, and the root is of pipeline shape (universal
// antecedent, structured succedent).
inline ProofTree limit_universals(const ProofTree& t) {
    if (auto v = check_proof(t))
        throw InputError("limit_universals: input does not check: " + v->to_string());
    ProofTree out = t.clone();

    auto metric = [&]() {
        std::vector<detail::Unlimited> u;
        detail::find_unlimited(*out.root, nullptr, 0, u);
        return std::pair<int, int>(static_cast<int>(u.size()), count_nodes(*out.root));
    };
    std::pair<int, int> before = metric();

    while (true) {
        std::vector<detail::Unlimited> unlimited;
        detail::find_unlimited(*out.root, nullptr, 0, unlimited);
        if (unlimited.empty()) break;

        // uppermost (deepest), ties broken by discovery order (leftmost)
        detail::Unlimited pick = unlimited.front();
        for (const auto& u : unlimited)
            if (u.depth > pick.depth) pick = u;

        long long q = pick.node->rule.principal;
        const Occ* qocc = pick.node->seq.find_suc(q);
        if (!qocc) throw InputError("limit_universals: malformed tree");
        Formula forall_f = qocc->f;

        std::vector<ProofNode*> chain;
        detail::build_chain(*out.root, pick.node, chain);
        ProofNode* intro = detail::find_introducer(chain, q);
        if (!intro || intro->rule.tag != Rule::REx)
            throw InputError("limit_universals: occurrence of " + print_formula(forall_f) +
                             " is not introduced by an R-ex (input not of pipeline shape)");

        // Insert the limited R-all X' immediately above the introducer.
        Var z = fresh_var("z");
        long long to_id = next_occ_id();
        Formula active_f = substitute(forall_f.child(), forall_f.qvar(), Term::var(z));

        std::unique_ptr<ProofNode> old_sub = std::move(intro->kids[0]);
        auto xprime = std::make_unique<ProofNode>();
        xprime->seq = old_sub->seq;  // = the introducer's premise, still holding q
        xprime->rule.tag = Rule::RAll;
        xprime->rule.principal = q;
        xprime->rule.proper = z;
        xprime->kids.push_back(std::move(old_sub));
        detail::rethread(xprime->kids[0], q, to_id, active_f, z);
        intro->kids[0] = std::move(xprime);

        std::pair<int, int> after = metric();
        if (after >= before)
            throw InputError("limit_universals: termination metric failed to decrease");
        before = after;
    }
    if (auto v = check_proof(out))
        throw InputError("limit_universals: output does not check: " + v->to_string());
    return out;
}

// ── making unlimited R-ex limited, then pairing ─────────────────────────────

// Adds a dummy limited R-all above every unlimited R-ex. Pre: no unlimited
// R-all (so the R-ex active occurrence is never consumed above).
inline ProofTree limit_existentials(const ProofTree& t) {
    ProofTree out = t.clone();
    std::function<void(ProofNode&)> walk = [&](ProofNode& n) {
        for (auto& k : n.kids) walk(*k);
        if (n.rule.tag != Rule::REx) return;
        long long a = detail::introduced_suc_id(n, *n.kids[0]);
        if (n.kids[0]->rule.tag == Rule::RAll && n.kids[0]->rule.principal == a) return;  // limited
        const Occ* aocc = n.kids[0]->seq.find_suc(a);
        if (!aocc || aocc->f.kind() != Kind::Forall)
            throw InputError("limit_existentials: R-ex active formula is not universal "
                             "(formula prefix does not alternate)");
        Formula forall_f = aocc->f;
        Var z = fresh_var("z");
        long long to_id = next_occ_id();
        Formula active_f = substitute(forall_f.child(), forall_f.qvar(), Term::var(z));

        std::unique_ptr<ProofNode> old_sub = std::move(n.kids[0]);
        auto xprime = std::make_unique<ProofNode>();
        xprime->seq = old_sub->seq;
        xprime->rule.tag = Rule::RAll;
        xprime->rule.principal = a;
        xprime->rule.proper = z;
        xprime->kids.push_back(std::move(old_sub));
        detail::rethread(xprime->kids[0], a, to_id, active_f, z);
        n.kids[0] = std::move(xprime);
    };
    walk(*out.root);
    return out;
}

// Merges each limited (R-all over R-ex) pair into one R-ex-all node.
inline ProofTree pair_exists_forall(const ProofTree& t) {
    ProofTree out = t.clone();
    std::function<void(ProofNode&)> walk = [&](ProofNode& n) {
        if (n.rule.tag == Rule::REx) {
            long long a = detail::introduced_suc_id(n, *n.kids[0]);
            if (n.kids[0]->rule.tag == Rule::RAll && n.kids[0]->rule.principal == a) {
                ProofNode& rall = *n.kids[0];
                n.rule.tag = Rule::RExAll;
                n.rule.proper = rall.rule.proper;
                auto grand = std::move(rall.kids);
                n.kids = std::move(grand);
            }
        }
        for (auto& k : n.kids) walk(*k);
    };
    walk(*out.root);
    return out;
}

// Substitutes 0 for every free variable of the tree that is neither free in
// the root sequent nor a proper variable of some rule.
inline ProofTree ground_stray(const ProofTree& t) {
    std::set<Var> keep = t.root->seq.free_variables();
    for (const Var& p : proper_vars(*t.root)) keep.insert(p);
    ProofTree out = t.clone();
    for (const Var& v : tree_free_vars(*out.root)) {
        if (keep.count(v)) continue;
        detail::subst_node(*out.root, v, Term::zero());
    }
    return out;
}

// ── canonical proofs ────────────────────────────────────────────────────────

struct CanonicalReport {
    bool ok = true;
    std::string violation;  // first violation, empty when ok
};

inline bool is_simple_formula(const Formula& f) {
    return is_quantifier_free(f) || is_universal_formula(f);
}

// Checks the three canonical-proof properties against phi. `x` is the
// designated input variable (defaults to the root succedent's free variable).
inline CanonicalReport is_canonical(const ProofTree& t, const Formula& phi,
                                    std::optional<Var> x = std::nullopt) {
    CanonicalReport rep;
    auto fail = [&](std::string why) {
        rep.ok = false;
        rep.violation = std::move(why);
        return rep;
    };
    if (!t.root) return fail("empty proof");

    // property 1: allowed rule tags only
    std::string bad;
    visit_proof(*t.root, [&](const ProofNode& n) {
        if (!bad.empty()) return;
        switch (n.rule.tag) {
            case Rule::RAll: bad = "contains R-all"; break;
            case Rule::REx: bad = "contains R-ex"; break;
            case Rule::RImp: bad = "contains R-imp"; break;
            case Rule::LEx: bad = "contains L-ex"; break;
            default: break;
        }
    });
    if (!bad.empty()) return fail("property 1: " + bad);

    // root shape
    if (t.root->seq.suc.size() != 1 || !alpha_equal(t.root->seq.suc[0].f, phi))
        return fail("property 2: root succedent is not the target formula");
    std::set<Var> rootfv = free_vars(t.root->seq.suc[0].f);
    if (!x && rootfv.size() == 1) x = *rootfv.begin();
    if (rootfv.size() > 1) return fail("target formula has more than one free variable");

    // alternation depth of phi
    int k = 0;
    {
        const Formula* g = &phi;
        while (g->kind() == Kind::Exists && !g->bound() && g->child().kind() == Kind::Forall &&
               !g->child().bound()) {
            ++k;
            g = &g->child().child();
        }
        if (!is_quantifier_free(*g))
            return fail("target formula is not alternating implicitly bounded prenex");
    }

    // property 2: antecedents simple; succedents split into slice
    // substitutions (traced from the root) plus quantifier-free formulas
    std::function<bool(const ProofNode&, std::map<long long, int>&)> walk =
        [&](const ProofNode& n, std::map<long long, int>& sub) -> bool {
        for (const auto& o : n.seq.ant)
            if (!is_simple_formula(o.f)) {
                fail("property 2: non-simple antecedent formula " + print_formula(o.f));
                return false;
            }
        for (const auto& o : n.seq.suc) {
            if (sub.count(o.id)) continue;
            if (!is_quantifier_free(o.f)) {
                fail("property 2: succedent formula neither traced from the target nor "
                     "quantifier-free: " +
                     print_formula(o.f));
                return false;
            }
        }
        if (n.rule.tag == Rule::RExAll) {
            auto it = sub.find(n.rule.principal);
            if (it == sub.end()) {
                fail("property 2: R-ex-all principal is not traced from the target formula");
                return false;
            }
            if (it->second >= k) {
                fail("property 2: R-ex-all applied below the matrix slice");
                return false;
            }
            long long a = detail::introduced_suc_id(n, *n.kids[0]);
            std::map<long long, int> next = sub;
            next[a] = it->second + 1;
            return walk(*n.kids[0], next);
        }
        for (const auto& k2 : n.kids)
            if (!walk(*k2, sub)) return false;
        return true;
    };
    std::map<long long, int> sub0;
    sub0[t.root->seq.suc[0].id] = 0;
    if (!walk(*t.root, sub0)) return rep;

    // property 3: every free variable except x arises as an R-ex-all proper
    std::set<Var> props = proper_vars(*t.root);
    for (const Var& v : tree_free_vars(*t.root)) {
        if (x && v == *x) continue;
        if (!props.count(v))
            return fail("property 3: free variable " + v.name + "?" + std::to_string(v.id) +
                        " is not introduced by any R-ex-all");
    }
    return rep;
}

// ── the full pipeline ───────────────────────────────────────────────────────

inline ProofTree canonicalize(const ProofTree& t, const Formula& phi) {
    if (auto v = check_proof(t)) throw InputError("canonicalize: input does not check: " + v->to_string());
    visit_proof(*t.root, [&](const ProofNode& n) {
        if (n.rule.tag == Rule::LEx)
            throw InputError("canonicalize: proof uses L-ex (antecedent is not universal)");
    });
    if (is_canonical(t, phi).ok) return t.clone();  // projection: fixed point

    ProofTree u = freshen_proper_vars(t);
    u = unpair_rexall(u);
    u = absorb_r_imp(u);
    u = limit_universals(u);
    u = limit_existentials(u);
    u = pair_exists_forall(u);
    u = ground_stray(u);

    if (auto v = check_proof(u))
        throw InputError("canonicalize: output does not check: " + v->to_string());
    CanonicalReport rep = is_canonical(u, phi);
    if (!rep.ok) throw InputError("canonicalize: output is not canonical: " + rep.violation);
    return u;
}

} // namespace gamewit

#endif
