// Proof file format.
//
//   (node (seq (ant F ...) (suc F ...))
//         (rule TAG [:principal i] [:principal2 j] [:term T] [:fresh x])
//         (children NODE ...))
//
// Principal formulas are referenced positionally: i indexes the antecedent
// for left rules and the succedent for right rules (0-based); Ax uses
// :principal for the antecedent member and :principal2 for the succedent one.
// The loader rebuilds each premise from the conclusion and the rule (keeping
// occurrence ids exact) and cross-checks it against the stated child sequent,
// so a structurally broken file is rejected on load while side-condition
// violations are left for check_proof to report.

#ifndef GAMEWIT_PROOF_IO_HPP
#define GAMEWIT_PROOF_IO_HPP

#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "gamewit/parse.hpp"
#include "gamewit/proof.hpp"

namespace gamewit {

// ── canonical variable numbering ─────────────────────────────────────────────
// Renumbers variable ids by first appearance so that emitted files are
// byte-stable across runs.

namespace detail {

inline void collect_ids_term(const Term& t, std::vector<std::pair<long long, std::string>>& order,
                             std::map<long long, long long>& seen) {
    if (t.is_var()) {
        if (!seen.count(t.as_var().id)) {
            seen[t.as_var().id] = static_cast<long long>(order.size()) + 1;
            order.push_back({t.as_var().id, t.as_var().name});
        }
        return;
    }
    for (const auto& a : t.args()) collect_ids_term(a, order, seen);
}

inline void collect_ids_formula(const Formula& f, std::vector<std::pair<long long, std::string>>& order,
                                std::map<long long, long long>& seen) {
    switch (f.kind()) {
        case Kind::Atom:
            for (const auto& t : f.args()) collect_ids_term(t, order, seen);
            return;
        case Kind::Bot: return;
        case Kind::Not: collect_ids_formula(f.child(), order, seen); return;
        case Kind::Imp:
        case Kind::And:
        case Kind::Or:
            collect_ids_formula(f.child(0), order, seen);
            collect_ids_formula(f.child(1), order, seen);
            return;
        case Kind::Forall:
        case Kind::Exists:
            if (f.bound()) collect_ids_term(*f.bound(), order, seen);
            collect_ids_term(Term::var(f.qvar()), order, seen);
            collect_ids_formula(f.child(), order, seen);
            return;
    }
}

inline Term renumber_term(const Term& t, const std::map<long long, long long>& m) {
    if (t.is_var()) {
        auto it = m.find(t.as_var().id);
        return it == m.end() ? t : Term::var(Var{t.as_var().name, it->second});
    }
    std::vector<Term> args;
    for (const auto& a : t.args()) args.push_back(renumber_term(a, m));
    return Term::app(t.fn(), std::move(args));
}

inline Formula renumber_formula(const Formula& f, const std::map<long long, long long>& m) {
    switch (f.kind()) {
        case Kind::Atom: {
            std::vector<Term> args;
            for (const auto& t : f.args()) args.push_back(renumber_term(t, m));
            return Formula::atom(f.rel(), std::move(args));
        }
        case Kind::Bot: return f;
        case Kind::Not: return Formula::neg(renumber_formula(f.child(), m));
        case Kind::Imp: return Formula::imp(renumber_formula(f.child(0), m), renumber_formula(f.child(1), m));
        case Kind::And:
            return Formula::conj(renumber_formula(f.child(0), m), renumber_formula(f.child(1), m));
        case Kind::Or: return Formula::disj(renumber_formula(f.child(0), m), renumber_formula(f.child(1), m));
        case Kind::Forall:
        case Kind::Exists: {
            Var v = f.qvar();
            auto it = m.find(v.id);
            if (it != m.end()) v.id = it->second;
            std::optional<Term> b = f.bound();
            if (b) b = renumber_term(*b, m);
            return Formula::quant(f.kind(), v, renumber_formula(f.child(), m), std::move(b));
        }
    }
    return f;
}

} // namespace detail

// Renumbers variable ids across a whole tree by first appearance (root first,
// children left to right). Distinctness is preserved, so binding is unchanged.
inline ProofTree renumber_proof_vars(const ProofTree& t) {
    std::vector<std::pair<long long, std::string>> order;
    std::map<long long, long long> seen;
    visit_proof(*t.root, [&](const ProofNode& n) {
        for (const auto& o : n.seq.ant) detail::collect_ids_formula(o.f, order, seen);
        for (const auto& o : n.seq.suc) detail::collect_ids_formula(o.f, order, seen);
        if (n.rule.witness) detail::collect_ids_term(*n.rule.witness, order, seen);
        if (n.rule.proper) detail::collect_ids_term(Term::var(*n.rule.proper), order, seen);
    });
    ProofTree out = t.clone();
    std::function<void(ProofNode&)> walk = [&](ProofNode& n) {
        for (auto& o : n.seq.ant) o.f = detail::renumber_formula(o.f, seen);
        for (auto& o : n.seq.suc) o.f = detail::renumber_formula(o.f, seen);
        if (n.rule.witness) n.rule.witness = detail::renumber_term(*n.rule.witness, seen);
        if (n.rule.proper) {
            auto it = seen.find(n.rule.proper->id);
            if (it != seen.end()) n.rule.proper->id = it->second;
        }
        for (auto& k : n.kids) walk(*k);
    };
    walk(*out.root);
    return out;
}

// ── saving ──────────────────────────────────────────────────────────────────

namespace detail {

inline int principal_index(const Sequent& s, const RuleApp& app, bool antecedent) {
    const auto& list = antecedent ? s.ant : s.suc;
    long long id = app.principal;
    if (app.tag == Rule::Ax && !antecedent) id = app.principal_suc;
    for (std::size_t i = 0; i < list.size(); ++i)
        if (list[i].id == id) return static_cast<int>(i);
    return -1;
}

inline bool principal_on_left(Rule r) {
    switch (r) {
        case Rule::Ax:
        case Rule::LBot:
        case Rule::LImp:
        case Rule::LAll:
        case Rule::LEx: return true;
        default: return false;
    }
}

inline void save_node(const ProofNode& n, std::ostream& os, int indent) {
    std::string pad(indent, ' ');
    os << pad << "(node\n" << pad << "  (seq (ant";
    for (const auto& o : n.seq.ant) os << ' ' << print_formula(o.f);
    os << ") (suc";
    for (const auto& o : n.seq.suc) os << ' ' << print_formula(o.f);
    os << "))\n" << pad << "  (rule " << rule_name(n.rule.tag);
    int pi = principal_index(n.seq, n.rule, principal_on_left(n.rule.tag));
    if (pi >= 0) os << " :principal " << pi;
    if (n.rule.tag == Rule::Ax) {
        int ps = principal_index(n.seq, n.rule, false);
        if (ps >= 0) os << " :principal2 " << ps;
    }
    if (n.rule.witness) os << " :term " << print_term(*n.rule.witness);
    if (n.rule.proper) os << " :fresh " << n.rule.proper->name << '?' << n.rule.proper->id;
    os << ")";
    if (!n.kids.empty()) {
        os << "\n" << pad << "  (children\n";
        for (std::size_t i = 0; i < n.kids.size(); ++i) {
            save_node(*n.kids[i], os, indent + 4);
            os << "\n";
        }
        os << pad << "  )";
    }
    os << ")";
}

} // namespace detail

inline std::string save_proof(const ProofTree& t, bool canonical_ids = true) {
    ProofTree u = canonical_ids ? renumber_proof_vars(t) : t.clone();
    std::ostringstream os;
    detail::save_node(*u.root, os, 0);
    os << "\n";
    return os.str();
}

// ── loading ─────────────────────────────────────────────────────────────────

namespace detail {

struct RuleAttrs {
    Rule tag;
    int principal = -1;
    int principal2 = -1;
    std::optional<Term> witness;
    std::optional<Var> proper;
};

inline RuleAttrs parse_rule_clause(const Sexpr& e, ParseScope& sc) {
    if (e.is_atom || e.items.empty() || e.head() != "rule")
        throw ParseError("expected a (rule ...) clause", e.pos);
    if (e.size() < 2 || !e.at(1).is_atom) throw ParseError("rule clause needs a tag", e.pos);
    auto tag = rule_from_name(e.at(1).atom);
    if (!tag) throw ParseError("unknown rule tag " + e.at(1).atom, e.at(1).pos);
    RuleAttrs out;
    out.tag = *tag;
    std::size_t i = 2;
    while (i < e.size()) {
        if (!e.at(i).is_atom) throw ParseError("expected a :keyword", e.at(i).pos);
        const std::string& kw = e.at(i).atom;
        if (i + 1 >= e.size()) throw ParseError("missing value after " + kw, e.at(i).pos);
        const Sexpr& val = e.at(i + 1);
        if (kw == ":principal") {
            out.principal = std::stoi(val.atom);
        } else if (kw == ":principal2") {
            out.principal2 = std::stoi(val.atom);
        } else if (kw == ":term") {
            out.witness = term_of(val, sc);
        } else if (kw == ":fresh") {
            if (!val.is_atom) throw ParseError(":fresh expects a variable", val.pos);
            out.proper = sc.resolve(val.atom, val.pos);
        } else {
            throw ParseError("unknown rule attribute " + kw, e.at(i).pos);
        }
        i += 2;
    }
    return out;
}

inline Sequent parse_seq_clause(const Sexpr& e, ParseScope& sc) {
    if (e.is_atom || e.items.empty() || e.head() != "seq") throw ParseError("expected a (seq ...) clause", e.pos);
    Sequent s;
    for (std::size_t i = 1; i < e.size(); ++i) {
        const Sexpr& half = e.at(i);
        if (half.is_atom || half.items.empty()) throw ParseError("expected (ant ...) or (suc ...)", half.pos);
        bool is_ant = half.head() == "ant";
        if (!is_ant && half.head() != "suc") throw ParseError("expected (ant ...) or (suc ...)", half.pos);
        for (std::size_t j = 1; j < half.size(); ++j) {
            Formula f = formula_of(half.at(j), sc);
            (is_ant ? s.ant : s.suc).push_back({next_occ_id(), std::move(f)});
        }
    }
    return s;
}

inline std::unique_ptr<ProofNode> load_node(const Sexpr& e, ParseScope& sc, const Sequent& seq) {
    if (e.is_atom || e.items.empty() || e.head() != "node") throw ParseError("expected a (node ...) form", e.pos);
    if (e.size() < 3) throw ParseError("node needs (seq ...) and (rule ...)", e.pos);

    RuleAttrs attrs = parse_rule_clause(e.at(2), sc);

    auto n = std::make_unique<ProofNode>();
    n->seq = seq;
    n->rule.tag = attrs.tag;
    n->rule.witness = attrs.witness;
    n->rule.proper = attrs.proper;

    bool left = principal_on_left(attrs.tag);
    const auto& plist = left ? seq.ant : seq.suc;
    if (attrs.principal >= 0) {
        if (attrs.principal >= static_cast<int>(plist.size()))
            throw ParseError("principal index out of range", e.pos);
        n->rule.principal = plist[attrs.principal].id;
    }
    if (attrs.tag == Rule::Ax) {
        if (attrs.principal2 < 0 || attrs.principal2 >= static_cast<int>(seq.suc.size()))
            throw ParseError("Ax needs a valid :principal2 index", e.pos);
        n->rule.principal_suc = seq.suc[attrs.principal2].id;
    }

    std::vector<const Sexpr*> child_nodes;
    if (e.size() > 3) {
        const Sexpr& ch = e.at(3);
        if (ch.is_atom || ch.items.empty() || ch.head() != "children")
            throw ParseError("expected a (children ...) clause", ch.pos);
        for (std::size_t i = 1; i < ch.size(); ++i) child_nodes.push_back(&ch.at(i));
    }
    if (static_cast<int>(child_nodes.size()) != premise_count(attrs.tag))
        throw ParseError(std::string("rule ") + rule_name(attrs.tag) + " expects " +
                             std::to_string(premise_count(attrs.tag)) + " children, file has " +
                             std::to_string(child_nodes.size()),
                         e.pos);

    std::vector<Sequent> expect;
    try {
        expect = expected_premises(seq, n->rule);
    } catch (const InputError& err) {
        throw ParseError(std::string("rule does not apply: ") + err.what(), e.pos);
    }
    for (std::size_t i = 0; i < child_nodes.size(); ++i) {
        Sequent stated = parse_seq_clause(child_nodes[i]->at(1), sc);
        if (!sequent_alpha_equal(stated, expect[i]))
            throw ParseError("stated premise does not match the rule application; expected: " +
                                 print_sequent(expect[i]) + "  stated: " + print_sequent(stated),
                             child_nodes[i]->pos);
        n->kids.push_back(load_node(*child_nodes[i], sc, expect[i]));
    }
    return n;
}

} // namespace detail

inline ProofTree load_proof(const std::string& text, const Signature& sig) {
    Sexpr e = parse_sexpr(text);
    detail::ParseScope sc{&sig, {}, {}};
    if (e.is_atom || e.items.empty() || e.head() != "node") throw ParseError("expected a (node ...) form", e.pos);
    Sequent root = detail::parse_seq_clause(e.at(1), sc);
    ProofTree t;
    t.root = detail::load_node(e, sc, root);
    return t;
}

// Signature inference over every formula and term in a proof file.
inline void infer_signature_from_proof(const std::string& text, Signature& sig) {
    Sexpr top = parse_sexpr(text);
    std::function<void(const Sexpr&)> walk = [&](const Sexpr& e) {
        if (e.is_atom || e.items.empty()) return;
        const std::string& h = e.head();
        if (h == "ant" || h == "suc") {
            for (std::size_t i = 1; i < e.size(); ++i) detail::infer_formula(e.at(i), sig);
            return;
        }
        if (h == "rule") {
            for (std::size_t i = 2; i + 1 < e.size(); i += 2)
                if (e.at(i).is_atom && e.at(i).atom == ":term") detail::infer_term(e.at(i + 1), sig);
            return;
        }
        for (std::size_t i = 0; i < e.size(); ++i) walk(e.at(i));
    };
    walk(top);
}

} // namespace gamewit

#endif
