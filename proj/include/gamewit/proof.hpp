// The cut-free sequent calculus: sequents with tracked formula occurrences,
// rule applications, proof trees, and the rule-by-rule checker.
//
// Rules: Ax, L-bot, L-imp, R-imp, L-all, L-ex, R-all, R-ex, plus the
// contraction variant R-imp-c and the paired R-ex-all used by canonical
// proofs. Occurrence ids persist from conclusion to premise for side
// formulas; Kleene copies keep the principal's id; active formulas get
// fresh ids.

#ifndef GAMEWIT_PROOF_HPP
#define GAMEWIT_PROOF_HPP

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "gamewit/fol.hpp"
#include "gamewit/transform.hpp"

namespace gamewit {

// ── sequents ────────────────────────────────────────────────────────────────

struct Occ {
    long long id;
    Formula f;
};

struct Sequent {
    std::vector<Occ> ant;
    std::vector<Occ> suc;

    const Occ* find_ant(long long id) const {
        for (const auto& o : ant)
            if (o.id == id) return &o;
        return nullptr;
    }
    const Occ* find_suc(long long id) const {
        for (const auto& o : suc)
            if (o.id == id) return &o;
        return nullptr;
    }

    std::set<Var> free_variables() const {
        std::set<Var> out;
        for (const auto& o : ant)
            for (const auto& v : free_vars(o.f)) out.insert(v);
        for (const auto& o : suc)
            for (const auto& v : free_vars(o.f)) out.insert(v);
        return out;
    }
};

inline long long next_occ_id() { return next_fresh_id(); }

inline Sequent make_sequent(const std::vector<Formula>& ant, const std::vector<Formula>& suc) {
    Sequent s;
    for (const auto& f : ant) s.ant.push_back({next_occ_id(), f});
    for (const auto& f : suc) s.suc.push_back({next_occ_id(), f});
    return s;
}

// Multiset comparison up to alpha-equivalence (ignores order and ids).
inline bool multiset_alpha_equal(const std::vector<Occ>& a, const std::vector<Occ>& b) {
    if (a.size() != b.size()) return false;
    std::vector<bool> used(b.size(), false);
    for (const auto& oa : a) {
        bool matched = false;
        for (std::size_t j = 0; j < b.size(); ++j) {
            if (used[j]) continue;
            if (alpha_equal(oa.f, b[j].f)) {
                used[j] = true;
                matched = true;
                break;
            }
        }
        if (!matched) return false;
    }
    return true;
}

inline bool sequent_alpha_equal(const Sequent& a, const Sequent& b) {
    return multiset_alpha_equal(a.ant, b.ant) && multiset_alpha_equal(a.suc, b.suc);
}

inline std::string print_sequent(const Sequent& s) {
    std::ostringstream os;
    for (std::size_t i = 0; i < s.ant.size(); ++i) os << (i ? ", " : "") << print_formula(s.ant[i].f);
    os << " => ";
    for (std::size_t i = 0; i < s.suc.size(); ++i) os << (i ? ", " : "") << print_formula(s.suc[i].f);
    return os.str();
}

// ── rules ───────────────────────────────────────────────────────────────────

enum class Rule { Ax, LBot, LImp, RImp, LAll, LEx, RAll, REx, RImpC, RExAll };

inline const char* rule_name(Rule r) {
    switch (r) {
        case Rule::Ax: return "Ax";
        case Rule::LBot: return "L-bot";
        case Rule::LImp: return "L-imp";
        case Rule::RImp: return "R-imp";
        case Rule::LAll: return "L-all";
        case Rule::LEx: return "L-ex";
        case Rule::RAll: return "R-all";
        case Rule::REx: return "R-ex";
        case Rule::RImpC: return "R-imp-c";
        case Rule::RExAll: return "R-ex-all";
    }
    return "?";
}

inline std::optional<Rule> rule_from_name(const std::string& n) {
    for (Rule r : {Rule::Ax, Rule::LBot, Rule::LImp, Rule::RImp, Rule::LAll, Rule::LEx, Rule::RAll,
                   Rule::REx, Rule::RImpC, Rule::RExAll})
        if (n == rule_name(r)) return r;
    return std::nullopt;
}

inline int premise_count(Rule r) {
    switch (r) {
        case Rule::Ax:
        case Rule::LBot: return 0;
        case Rule::LImp: return 2;
        default: return 1;
    }
}

struct RuleApp {
    Rule tag = Rule::Ax;
    long long principal = -1;      // occurrence id in the conclusion
    long long principal_suc = -1;  // Ax only: the matched succedent occurrence
    std::optional<Term> witness;   // LAll, REx, RExAll
    std::optional<Var> proper;     // RAll, LEx, RExAll
};

// ── proof trees ─────────────────────────────────────────────────────────────

struct ProofNode {
    Sequent seq;
    RuleApp rule;
    std::vector<std::unique_ptr<ProofNode>> kids;

    std::unique_ptr<ProofNode> clone() const {
        auto n = std::make_unique<ProofNode>();
        n->seq = seq;
        n->rule = rule;
        for (const auto& k : kids) n->kids.push_back(k->clone());
        return n;
    }
};

struct ProofTree {
    std::unique_ptr<ProofNode> root;

    ProofTree() = default;
    explicit ProofTree(std::unique_ptr<ProofNode> r) : root(std::move(r)) {}
    ProofTree clone() const { return ProofTree(root ? root->clone() : nullptr); }
};

template <typename F>
inline void visit_proof(const ProofNode& n, F&& f) {
    f(n);
    for (const auto& k : n.kids) visit_proof(*k, f);
}

inline int count_nodes(const ProofNode& n) {
    int c = 1;
    for (const auto& k : n.kids) c += count_nodes(*k);
    return c;
}

inline int count_rule(const ProofTree& t, Rule tag) {
    int c = 0;
    if (t.root)
        visit_proof(*t.root, [&](const ProofNode& n) {
            if (n.rule.tag == tag) ++c;
        });
    return c;
}

inline int count_rule(const ProofTree& t, const std::string& tag_name) {
    auto r = rule_from_name(tag_name);
    if (!r) throw InputError("unknown rule tag " + tag_name);
    return count_rule(t, *r);
}

// All variables with a free occurrence somewhere in the tree (sequents and
// witness terms).
inline std::set<Var> tree_free_vars(const ProofNode& n) {
    std::set<Var> out;
    visit_proof(n, [&](const ProofNode& m) {
        for (const auto& v : m.seq.free_variables()) out.insert(v);
        if (m.rule.witness)
            for (const auto& v : term_vars(*m.rule.witness)) out.insert(v);
    });
    return out;
}

inline std::set<Var> proper_vars(const ProofNode& n) {
    std::set<Var> out;
    visit_proof(n, [&](const ProofNode& m) {
        if (m.rule.proper) out.insert(*m.rule.proper);
    });
    return out;
}

// ── premise reconstruction ──────────────────────────────────────────────────
// Builds the premises demanded by a rule application on a conclusion, with
// occurrence-id propagation. Throws InputError when the rule does not apply
// syntactically (wrong principal shape etc.); side conditions such as
// freshness are the checker's job.

namespace detail {

inline Sequent without_ant(const Sequent& s, long long id) {
    Sequent out = s;
    out.ant.clear();
    for (const auto& o : s.ant)
        if (o.id != id) out.ant.push_back(o);
    return out;
}

inline Sequent without_suc(const Sequent& s, long long id) {
    Sequent out = s;
    out.suc.clear();
    for (const auto& o : s.suc)
        if (o.id != id) out.suc.push_back(o);
    return out;
}

inline void replace_suc(Sequent& s, long long id, const Formula& f) {
    for (auto& o : s.suc)
        if (o.id == id) {
            o.f = f;
            return;
        }
    throw InputError("occurrence not found");
}

} // namespace detail

inline std::vector<Sequent> expected_premises(const Sequent& concl, const RuleApp& app) {
    auto need_ant = [&](long long id) -> const Occ& {
        const Occ* o = concl.find_ant(id);
        if (!o) throw InputError("principal occurrence not found in the antecedent");
        return *o;
    };
    auto need_suc = [&](long long id) -> const Occ& {
        const Occ* o = concl.find_suc(id);
        if (!o) throw InputError("principal occurrence not found in the succedent");
        return *o;
    };

    switch (app.tag) {
        case Rule::Ax:
        case Rule::LBot: return {};

        case Rule::LImp: {
            const Occ& p = need_ant(app.principal);
            if (p.f.kind() != Kind::Imp) throw InputError("L-imp principal is not an implication");
            Sequent left = detail::without_ant(concl, p.id);
            left.suc.push_back({next_occ_id(), p.f.child(0)});
            Sequent right = detail::without_ant(concl, p.id);
            right.ant.push_back({next_occ_id(), p.f.child(1)});
            return {left, right};
        }
        case Rule::RImp: {
            const Occ& p = need_suc(app.principal);
            if (p.f.kind() != Kind::Imp) throw InputError("R-imp principal is not an implication");
            Sequent prem = detail::without_suc(concl, p.id);
            prem.ant.push_back({next_occ_id(), p.f.child(0)});
            prem.suc.push_back({next_occ_id(), p.f.child(1)});
            return {prem};
        }
        case Rule::RImpC: {
            const Occ& p = need_suc(app.principal);
            if (p.f.kind() != Kind::Imp) throw InputError("R-imp-c principal is not an implication");
            Sequent prem = concl;  // Kleene copy keeps the principal id
            prem.ant.push_back({next_occ_id(), p.f.child(0)});
            // new beta occurrence placed before the copy
            Formula beta = p.f.child(1);
            Sequent prem2 = detail::without_suc(prem, p.id);
            prem2.suc.push_back({next_occ_id(), beta});
            prem2.suc.push_back({p.id, p.f});
            return {prem2};
        }
        case Rule::LAll: {
            const Occ& p = need_ant(app.principal);
            if (p.f.kind() != Kind::Forall || p.f.bound())
                throw InputError("L-all principal is not an unbounded universal");
            if (!app.witness) throw InputError("L-all requires a witness term");
            Sequent prem = concl;  // Kleene copy stays in place
            prem.ant.push_back({next_occ_id(), substitute(p.f.child(), p.f.qvar(), *app.witness)});
            return {prem};
        }
        case Rule::REx: {
            const Occ& p = need_suc(app.principal);
            if (p.f.kind() != Kind::Exists || p.f.bound())
                throw InputError("R-ex principal is not an unbounded existential");
            if (!app.witness) throw InputError("R-ex requires a witness term");
            Sequent prem = detail::without_suc(concl, p.id);
            prem.suc.push_back({next_occ_id(), substitute(p.f.child(), p.f.qvar(), *app.witness)});
            prem.suc.push_back({p.id, p.f});  // Kleene copy
            return {prem};
        }
        case Rule::LEx: {
            const Occ& p = need_ant(app.principal);
            if (p.f.kind() != Kind::Exists || p.f.bound())
                throw InputError("L-ex principal is not an unbounded existential");
            if (!app.proper) throw InputError("L-ex requires a proper variable");
            Sequent prem = detail::without_ant(concl, p.id);
            prem.ant.push_back({next_occ_id(), substitute(p.f.child(), p.f.qvar(), Term::var(*app.proper))});
            return {prem};
        }
        case Rule::RAll: {
            const Occ& p = need_suc(app.principal);
            if (p.f.kind() != Kind::Forall || p.f.bound())
                throw InputError("R-all principal is not an unbounded universal");
            if (!app.proper) throw InputError("R-all requires a proper variable");
            Sequent prem = detail::without_suc(concl, p.id);
            prem.suc.push_back({next_occ_id(), substitute(p.f.child(), p.f.qvar(), Term::var(*app.proper))});
            return {prem};
        }
        case Rule::RExAll: {
            const Occ& p = need_suc(app.principal);
            if (p.f.kind() != Kind::Exists || p.f.bound() || p.f.child().kind() != Kind::Forall ||
                p.f.child().bound())
                throw InputError("R-ex-all principal must be exists-forall shaped");
            if (!app.witness) throw InputError("R-ex-all requires a witness term");
            if (!app.proper) throw InputError("R-ex-all requires a proper variable");
            Formula inner = substitute(p.f.child(), p.f.qvar(), *app.witness);  // forall x alpha(y/t)
            Formula active = substitute(inner.child(), inner.qvar(), Term::var(*app.proper));
            Sequent prem = detail::without_suc(concl, p.id);
            prem.suc.push_back({next_occ_id(), active});
            prem.suc.push_back({p.id, p.f});  // Kleene copy
            return {prem};
        }
    }
    throw InputError("unknown rule");
}

// ── the checker ─────────────────────────────────────────────────────────────

struct Violation {
    std::vector<int> path;  // child indices from the root
    std::string reason;

    std::string to_string() const {
        std::ostringstream os;
        os << "node ";
        if (path.empty())
            os << "(root)";
        else
            for (std::size_t i = 0; i < path.size(); ++i) os << (i ? "." : "") << path[i];
        os << ": " << reason;
        return os.str();
    }
};

using CheckResult = std::optional<Violation>;  // nullopt = ok

namespace detail {

// Occurrence-aware premise comparison. Occurrences inherited from the
// conclusion (side formulas, Kleene copies) must appear with the same id and
// an alpha-equal formula; freshly introduced actives match by formula alone,
// since their ids are minted anew on every reconstruction.
inline bool premise_occs_match(const std::vector<Occ>& expect, const std::vector<Occ>& got,
                               const std::set<long long>& concl_ids) {
    if (expect.size() != got.size()) return false;
    std::vector<bool> used(got.size(), false);
    for (const auto& e : expect) {
        if (!concl_ids.count(e.id)) continue;
        bool found = false;
        for (std::size_t j = 0; j < got.size(); ++j) {
            if (used[j]) continue;
            if (got[j].id == e.id && alpha_equal(got[j].f, e.f)) {
                used[j] = true;
                found = true;
                break;
            }
        }
        if (!found) return false;
    }
    for (const auto& e : expect) {
        if (concl_ids.count(e.id)) continue;
        bool found = false;
        for (std::size_t j = 0; j < got.size(); ++j) {
            if (used[j]) continue;
            if (alpha_equal(got[j].f, e.f)) {
                used[j] = true;
                found = true;
                break;
            }
        }
        if (!found) return false;
    }
    return true;
}

} // namespace detail

inline CheckResult check_rule(const Sequent& concl, const RuleApp& app,
                              const std::vector<const Sequent*>& premises) {
    auto fail = [&](std::string why) { return Violation{{}, std::move(why)}; };

    if (static_cast<int>(premises.size()) != premise_count(app.tag))
        return fail(std::string(rule_name(app.tag)) + " expects " +
                    std::to_string(premise_count(app.tag)) + " premise(s), got " +
                    std::to_string(premises.size()));

    // Side conditions first, so violations are reported by name.
    switch (app.tag) {
        case Rule::Ax: {
            const Occ* a = concl.find_ant(app.principal);
            const Occ* s = concl.find_suc(app.principal_suc);
            if (!a || !s) return fail("Ax principal occurrences not found");
            if (a->f.kind() != Kind::Atom) return fail("Ax principal is non-atomic");
            if (!alpha_equal(a->f, s->f)) return fail("Ax principal formulas differ");
            return std::nullopt;
        }
        case Rule::LBot: {
            const Occ* a = concl.find_ant(app.principal);
            if (!a) return fail("L-bot principal occurrence not found");
            if (a->f.kind() != Kind::Bot) return fail("L-bot principal is not bot");
            return std::nullopt;
        }
        case Rule::RAll:
        case Rule::LEx: {
            if (!app.proper)
                return fail(std::string(rule_name(app.tag)) + " requires a proper variable");
            const Var& z = *app.proper;
            for (const auto& v : concl.free_variables())
                if (v == z)
                    return fail(std::string(rule_name(app.tag)) + " proper variable " + z.name +
                                " occurs free in the conclusion (freshness)");
            break;
        }
        case Rule::RExAll: {
            if (!app.proper || !app.witness) return fail("R-ex-all requires a witness and a proper variable");
            const Var& z = *app.proper;
            for (const auto& v : concl.free_variables())
                if (v == z)
                    return fail("R-ex-all proper variable " + z.name +
                                " occurs free in the conclusion (freshness)");
            if (term_mentions(*app.witness, z))
                return fail("R-ex-all proper variable " + z.name + " occurs in the witness term (freshness)");
            break;
        }
        default: break;
    }

    std::vector<Sequent> expect;
    try {
        expect = expected_premises(concl, app);
    } catch (const InputError& e) {
        return fail(e.what());
    }
    std::set<long long> concl_ids;
    for (const auto& o : concl.ant) concl_ids.insert(o.id);
    for (const auto& o : concl.suc) concl_ids.insert(o.id);
    for (std::size_t i = 0; i < expect.size(); ++i) {
        if (!detail::premise_occs_match(expect[i].ant, premises[i]->ant, concl_ids))
            return fail(std::string(rule_name(app.tag)) + ": premise " + std::to_string(i + 1) +
                        " antecedent does not match the rule schema");
        if (!detail::premise_occs_match(expect[i].suc, premises[i]->suc, concl_ids))
            return fail(std::string(rule_name(app.tag)) + ": premise " + std::to_string(i + 1) +
                        " succedent does not match the rule schema");
    }
    return std::nullopt;
}

namespace detail {

inline CheckResult check_proof_node(const ProofNode& n, std::vector<int>& path) {
    for (std::size_t i = 0; i < n.kids.size(); ++i) {
        path.push_back(static_cast<int>(i));
        CheckResult r = check_proof_node(*n.kids[i], path);
        if (r) return r;
        path.pop_back();
    }
    std::vector<const Sequent*> prem;
    for (const auto& k : n.kids) prem.push_back(&k->seq);
    CheckResult r = check_rule(n.seq, n.rule, prem);
    if (r) r->path = path;
    return r;
}

} // namespace detail

// First violation in leftmost-deepest order; nullopt when the tree checks.
inline CheckResult check_proof(const ProofTree& t) {
    if (!t.root) return Violation{{}, "empty proof"};
    std::vector<int> path;
    return detail::check_proof_node(*t.root, path);
}

// ── builder ─────────────────────────────────────────────────────────────────
// Applies a rule to a conclusion, producing a node whose children must then
// be filled in (their sequents are pre-set to the expected premises).

inline std::unique_ptr<ProofNode> apply_rule(const Sequent& concl, RuleApp app) {
    auto n = std::make_unique<ProofNode>();
    n->seq = concl;
    std::vector<Sequent> prem = expected_premises(concl, app);
    n->rule = std::move(app);
    for (auto& p : prem) {
        auto k = std::make_unique<ProofNode>();
        k->seq = std::move(p);
        n->kids.push_back(std::move(k));
    }
    return n;
}

} // namespace gamewit

#endif
