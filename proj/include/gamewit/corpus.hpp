// Built-in corpus: the worked examples (the two-round canonical proof with
// its axiom, the prime-interval game board, the drinker benchmark, a
// synthetic proof with unlimited universal applications) and a family of
// small searched proofs of mixed rule shapes used by the verification suites.

#ifndef GAMEWIT_CORPUS_HPP
#define GAMEWIT_CORPUS_HPP

#include <string>
#include <vector>

#include "gamewit/canonical.hpp"
#include "gamewit/herbrand.hpp"
#include "gamewit/parse.hpp"
#include "gamewit/proof_io.hpp"
#include "gamewit/search.hpp"

namespace gamewit {

struct ProofBundle {
    std::string name;
    Signature sig;
    std::vector<Formula> axioms;
    Formula phi;
    Var x;
    ProofTree proof;  // a checked proof of axioms => phi
};

namespace detail {

inline long long suc_occ(const Sequent& s, const Formula& f) {
    for (const auto& o : s.suc)
        if (alpha_equal(o.f, f)) return o.id;
    throw InputError("corpus: succedent occurrence not found: " + print_formula(f));
}

inline long long ant_occ(const Sequent& s, const Formula& f) {
    for (const auto& o : s.ant)
        if (alpha_equal(o.f, f)) return o.id;
    throw InputError("corpus: antecedent occurrence not found: " + print_formula(f));
}

inline ProofNode* graft(ProofNode* n, const RuleApp& app) {
    auto b = apply_rule(n->seq, app);
    n->rule = b->rule;
    n->kids = std::move(b->kids);
    return n->kids.empty() ? nullptr : n->kids[0].get();
}

} // namespace detail

// ── the two-round canonical proof (worked example) ──────────────────────────
// axiom  forall u forall v (Q(f(u),v) -> P(u,g(u,v)))
// phi    exists y forall z (Q(y,z) -> P(x,y))
// The canonical tree uses R-ex-all twice with witnesses f(x) and g(x,z1);
// extraction yields the strategy <f(x),1; g(x,z1),1>.

inline ProofBundle fig2_bundle() {
    ProofBundle b;
    b.name = "fig2";
    b.sig.add_function("f", 1);
    b.sig.add_function("g", 2);
    b.sig.add_relation("P", 2);
    b.sig.add_relation("Q", 2);

    Var x = fresh_var("x"), u = fresh_var("u"), v = fresh_var("v");
    Var y = fresh_var("y"), z = fresh_var("z");
    auto Q = [](Term a, Term c) { return Formula::atom("Q", {a, c}); };
    auto P = [](Term a, Term c) { return Formula::atom("P", {a, c}); };
    Term fx = Term::app("f", {Term::var(x)});

    Formula axiom = Formula::forall(
        u, Formula::forall(v, Formula::imp(Q(Term::app("f", {Term::var(u)}), Term::var(v)),
                                           P(Term::var(u), Term::app("g", {Term::var(u), Term::var(v)})))));
    Formula phi =
        Formula::exists(y, Formula::forall(z, Formula::imp(Q(Term::var(y), Term::var(z)),
                                                           P(Term::var(x), Term::var(y)))));
    b.axioms = {axiom};
    b.phi = phi;
    b.x = x;

    Var z1 = fresh_var("z1"), z2 = fresh_var("z2");
    Term gxz1 = Term::app("g", {Term::var(x), Term::var(z1)});

    auto root = std::make_unique<ProofNode>();
    root->seq = make_sequent({axiom}, {phi});
    ProofNode* cur = root.get();

    RuleApp a1;  // (R-ex-all)_1 with witness f(x), proper z1
    a1.tag = Rule::RExAll;
    a1.principal = detail::suc_occ(cur->seq, phi);
    a1.witness = fx;
    a1.proper = z1;
    cur = detail::graft(cur, a1);

    Formula impl1 = Formula::imp(Q(fx, Term::var(z1)), P(Term::var(x), fx));
    RuleApp a2;
    a2.tag = Rule::RImpC;
    a2.principal = detail::suc_occ(cur->seq, impl1);
    cur = detail::graft(cur, a2);

    RuleApp a3;  // instantiate the axiom at u := x
    a3.tag = Rule::LAll;
    a3.principal = detail::ant_occ(cur->seq, axiom);
    a3.witness = Term::var(x);
    cur = detail::graft(cur, a3);

    Formula inner_axiom = substitute(axiom.child(), axiom.qvar(), Term::var(x));
    RuleApp a4;  // and at v := z1
    a4.tag = Rule::LAll;
    a4.principal = detail::ant_occ(cur->seq, inner_axiom);
    a4.witness = Term::var(z1);
    cur = detail::graft(cur, a4);

    Formula axiom_inst = Formula::imp(Q(fx, Term::var(z1)), P(Term::var(x), gxz1));
    RuleApp a5;
    a5.tag = Rule::LImp;
    a5.principal = detail::ant_occ(cur->seq, axiom_inst);
    {
        auto built = apply_rule(cur->seq, a5);
        cur->rule = built->rule;
        cur->kids = std::move(built->kids);
    }
    ProofNode* left = cur->kids[0].get();
    ProofNode* right = cur->kids[1].get();

    RuleApp ax_left;  // close on Q(f(x),z1)
    ax_left.tag = Rule::Ax;
    ax_left.principal = detail::ant_occ(left->seq, Q(fx, Term::var(z1)));
    ax_left.principal_suc = detail::suc_occ(left->seq, Q(fx, Term::var(z1)));
    detail::graft(left, ax_left);

    RuleApp a6;  // (R-ex-all)_2 with witness g(x,z1), proper z2
    a6.tag = Rule::RExAll;
    a6.principal = detail::suc_occ(right->seq, phi);
    a6.witness = gxz1;
    a6.proper = z2;
    cur = detail::graft(right, a6);

    Formula impl2 = Formula::imp(Q(gxz1, Term::var(z2)), P(Term::var(x), gxz1));
    RuleApp a7;
    a7.tag = Rule::RImpC;
    a7.principal = detail::suc_occ(cur->seq, impl2);
    cur = detail::graft(cur, a7);

    RuleApp ax_right;  // close on P(x,g(x,z1))
    ax_right.tag = Rule::Ax;
    ax_right.principal = detail::ant_occ(cur->seq, P(Term::var(x), gxz1));
    ax_right.principal_suc = detail::suc_occ(cur->seq, P(Term::var(x), gxz1));
    detail::graft(cur, ax_right);

    b.proof = ProofTree(std::move(root));
    return b;
}

// ── synthetic proof with two unlimited universal applications ───────────────
// axiom  forall u forall v M(u,v);   phi  exists y forall z M(y,z)

inline ProofBundle unlimited_ru_bundle() {
    ProofBundle b;
    b.name = "unlimited-ru";
    b.sig.add_relation("M", 2);
    Var x = fresh_var("x"), u = fresh_var("u"), v = fresh_var("v");
    Var y = fresh_var("y"), z = fresh_var("z");
    auto M = [](Term a, Term c) { return Formula::atom("M", {a, c}); };
    Formula axiom = Formula::forall(u, Formula::forall(v, M(Term::var(u), Term::var(v))));
    Formula phi = Formula::exists(y, Formula::forall(z, M(Term::var(y), Term::var(z))));
    b.axioms = {axiom};
    b.phi = phi;
    b.x = x;

    Var z1 = fresh_var("z1"), z2 = fresh_var("z2");
    auto root = std::make_unique<ProofNode>();
    root->seq = make_sequent({axiom}, {phi});
    ProofNode* cur = root.get();

    Formula fz0 = Formula::forall(z, M(Term::zero(), Term::var(z)));
    Formula fz1 = Formula::forall(z, M(Term::one(), Term::var(z)));

    RuleApp r1;
    r1.tag = Rule::REx;
    r1.principal = detail::suc_occ(cur->seq, phi);
    r1.witness = Term::zero();
    cur = detail::graft(cur, r1);

    RuleApp r2;  // a second witness before any R-all: both R-all below are unlimited
    r2.tag = Rule::REx;
    r2.principal = detail::suc_occ(cur->seq, phi);
    r2.witness = Term::one();
    cur = detail::graft(cur, r2);

    RuleApp r3;
    r3.tag = Rule::RAll;
    r3.principal = detail::suc_occ(cur->seq, fz0);
    r3.proper = z1;
    cur = detail::graft(cur, r3);

    RuleApp r4;
    r4.tag = Rule::RAll;
    r4.principal = detail::suc_occ(cur->seq, fz1);
    r4.proper = z2;
    cur = detail::graft(cur, r4);

    RuleApp r5;
    r5.tag = Rule::LAll;
    r5.principal = detail::ant_occ(cur->seq, axiom);
    r5.witness = Term::one();
    cur = detail::graft(cur, r5);

    Formula ax1 = Formula::forall(v, M(Term::one(), Term::var(v)));
    RuleApp r6;
    r6.tag = Rule::LAll;
    r6.principal = detail::ant_occ(cur->seq, ax1);
    r6.witness = Term::var(z2);
    cur = detail::graft(cur, r6);

    RuleApp ax;
    ax.tag = Rule::Ax;
    ax.principal = detail::ant_occ(cur->seq, M(Term::one(), Term::var(z2)));
    ax.principal_suc = detail::suc_occ(cur->seq, M(Term::one(), Term::var(z2)));
    detail::graft(cur, ax);

    b.proof = ProofTree(std::move(root));
    return b;
}

// ── searched corpus entries (mixed rule shapes) ─────────────────────────────

struct CorpusSpec {
    std::string name;
    std::vector<std::pair<std::string, int>> functions;
    std::vector<std::pair<std::string, int>> relations;
    std::vector<std::string> axioms;
    std::string phi;
    std::vector<std::string> pool;  // term patterns; `hole` is a hole variable
    int depth = 12;
};

inline std::vector<CorpusSpec> corpus_catalog() {
    std::vector<CorpusSpec> out;
    auto add = [&](CorpusSpec c) { out.push_back(std::move(c)); };

    // drinker and variants: the two-round learning pattern
    add({"drinker", {}, {{"P", 1}}, {}, "(exists y (forall z (imp (P y) (P z))))", {"0", "hole"}, 10});
    add({"drinker-b", {}, {{"B", 1}}, {}, "(exists y (forall z (imp (B y) (B z))))", {"1", "hole"}, 10});
    add({"drinker-f",
         {{"f", 1}},
         {{"P", 1}},
         {},
         "(exists y (forall z (imp (P y) (P (f z)))))",
         {"0", "(f hole)"},
         10});
    add({"drinker-g",
         {{"g", 1}},
         {{"R", 1}},
         {},
         "(exists y (forall z (imp (R y) (R (g z)))))",
         {"1", "(g hole)"},
         10});

    // one-round proofs from a universal axiom
    add({"refl", {}, {{"R", 2}}, {"(forall u (R u u))"}, "(exists y (forall z (R y y)))", {"0"}, 8});
    add({"refl-one", {}, {{"S", 2}}, {"(forall u (S u u))"}, "(exists y (forall z (S y y)))", {"1"}, 8});
    add({"mono",
         {},
         {{"A", 1}, {"B", 1}},
         {"(forall u (imp (A u) (B u)))"},
         "(exists y (forall z (imp (A 0) (B 0))))",
         {"0"},
         10});
    add({"inst-fun",
         {{"f", 1}},
         {{"S", 2}},
         {"(forall u (forall v (S u v)))"},
         "(exists y (forall z (S (f y) z)))",
         {"0", "(f 0)", "hole"},
         10});
    add({"inst-fun2",
         {{"h", 1}},
         {{"T", 2}},
         {"(forall u (forall v (T u v)))"},
         "(exists y (forall z (T (h y) z)))",
         {"1", "(h 1)", "hole"},
         10});

    // two alternation blocks (k = 2)
    add({"pairs",
         {},
         {{"P", 1}},
         {},
         "(exists y1 (forall x1 (exists y2 (forall x2 (imp (P x1) (P y2))))))",
         {"0", "hole"},
         10});
    add({"pairs-q",
         {},
         {{"Q", 1}},
         {},
         "(exists y1 (forall x1 (exists y2 (forall x2 (imp (Q x1) (Q y2))))))",
         {"1", "hole"},
         10});

    // nested implications (contraction copies on quantifier-free formulas)
    add({"nested-imp",
         {},
         {{"A", 1}, {"B", 1}},
         {},
         "(exists y (forall z (imp (imp (A y) (B y)) (imp (A y) (B y)))))",
         {"0"},
         10});
    add({"nested-imp2",
         {},
         {{"C", 1}, {"D", 1}},
         {},
         "(exists y (forall z (imp (imp (C y) (D y)) (imp (C y) (D y)))))",
         {"1"},
         10});

    // proofs that fall into bot through an axiom
    add({"absurd",
         {},
         {{"A", 1}, {"B", 1}},
         {"(forall u (imp (A u) (bot)))"},
         "(exists y (forall z (imp (A y) (B y))))",
         {"0"},
         12});
    add({"absurd2",
         {},
         {{"E", 1}, {"F", 1}},
         {"(forall u (imp (E u) (bot)))"},
         "(exists y (forall z (imp (E y) (F y))))",
         {"1"},
         12});

    // branch on an axiom implication with a quantifier on each side
    add({"branch-ax",
         {},
         {{"A", 1}, {"B", 1}},
         {"(forall u (imp (A u) (B u)))"},
         "(exists y (forall z (imp (A 0) (B y))))",
         {"0"},
         12});
    add({"branch-ax2",
         {},
         {{"G", 1}, {"H", 1}},
         {"(forall u (imp (G u) (H u)))"},
         "(exists y (forall z (imp (G 1) (H y))))",
         {"1"},
         12});

    // chained axioms (two L-all instantiations on different axioms)
    add({"chain",
         {},
         {{"A", 1}, {"B", 1}, {"C", 1}},
         {"(forall u (imp (A u) (B u)))", "(forall u (imp (B u) (C u)))"},
         "(exists y (forall z (imp (A 0) (C 0))))",
         {"0"},
         14});
    add({"chain2",
         {},
         {{"K", 1}, {"L", 1}, {"N", 1}},
         {"(forall u (imp (K u) (L u)))", "(forall u (imp (L u) (N u)))"},
         "(exists y (forall z (imp (K 1) (N 1))))",
         {"1"},
         14});

    // an unused extra axiom alongside a used one
    add({"spare-axiom",
         {},
         {{"R", 2}, {"W", 1}},
         {"(forall u (R u u))", "(forall u (imp (W u) (W u)))"},
         "(exists y (forall z (R y y)))",
         {"0"},
         8});

    // constant-free variant exercising function terms in witnesses
    add({"fun-witness",
         {{"s", 1}},
         {{"P", 1}},
         {"(forall u (P (s u)))"},
         "(exists y (forall z (P (s y))))",
         {"0", "(s hole)"},
         10});
    return out;
}

inline ProofBundle build_corpus_entry(const CorpusSpec& spec) {
    ProofBundle b;
    b.name = spec.name;
    for (const auto& [n, a] : spec.functions) b.sig.add_function(n, a);
    for (const auto& [n, a] : spec.relations) b.sig.add_relation(n, a);
    for (const auto& s : spec.axioms) b.axioms.push_back(parse_formula(s, b.sig));
    b.phi = parse_formula(spec.phi, b.sig);
    std::set<Var> fv = free_vars(b.phi);
    b.x = fv.empty() ? fresh_var("x") : *fv.begin();

    SearchConfig cfg;
    for (const auto& p : spec.pool) cfg.pool.push_back(parse_term(p, b.sig));
    Sequent goal = make_sequent(b.axioms, {b.phi});
    auto t = proof_search(goal, spec.depth, b.sig, cfg);
    if (!t) throw InputError("corpus: search failed for " + spec.name);
    b.proof = std::move(*t);
    return b;
}

inline std::vector<ProofBundle> build_corpus() {
    std::vector<ProofBundle> out;
    out.push_back(fig2_bundle());
    out.push_back(unlimited_ru_bundle());
    for (const CorpusSpec& spec : corpus_catalog()) out.push_back(build_corpus_entry(spec));
    return out;
}

// ── the prime-interval game (worked example on a truncated board) ───────────
// phi(x): exists y <= dbl(x) forall z <= pred(y) (geq(y,x) and (z = 1 or ndiv(z,y)))
// played on the saturating fragment {0..12} with n0 = 3. The scripted
// strategy plays 4 at the root, then 5 at the root.

struct Fig1Bundle {
    Signature sig;
    Formula phi;
    Var x;
    Board board;
    LStrategy strategy;
};

inline Fig1Bundle fig1_bundle() {
    Fig1Bundle b;
    b.sig.add_function("s", 1);
    b.sig.add_function("dbl", 1);
    b.sig.add_function("pred", 1);
    b.sig.add_relation("geq", 2);
    b.sig.add_relation("=", 2);
    b.sig.add_relation("ndiv", 2);

    Var x = fresh_var("x"), y = fresh_var("y"), z = fresh_var("z");
    b.x = x;
    Formula matrix = Formula::conj(
        Formula::atom("geq", {Term::var(y), Term::var(x)}),
        Formula::disj(Formula::atom("=", {Term::var(z), Term::one()}),
                      Formula::atom("ndiv", {Term::var(z), Term::var(y)})));
    b.phi = Formula::exists(
        y,
        Formula::forall(z, matrix, Term::app("pred", {Term::var(y)})),
        Term::app("dbl", {Term::var(x)}));

    const int D = 13;
    b.board.structure = FiniteStructure(b.sig, D);
    b.board.n0 = 3;
    FiniteStructure& st = b.board.structure;
    for (int a = 0; a < D; ++a) {
        st.set_function("s", {a}, std::min(a + 1, D - 1));
        st.set_function("dbl", {a}, std::min(2 * a, D - 1));
        st.set_function("pred", {a}, std::max(a - 1, 0));
        for (int c = 0; c < D; ++c) {
            st.set_relation("geq", {a, c}, a >= c);
            bool divides = c == 0 ? a == 0 : a % c == 0;  // c | a
            st.set_relation("ndiv", {c, a}, !divides);
        }
    }

    auto numeral = [](int n) {
        Term t = Term::zero();
        for (int i = 0; i < n; ++i) t = Term::app("s", {t});
        return t;
    };
    b.strategy = make_root_strategy(x, {{numeral(4), 1}, {numeral(5), 1}});
    return b;
}

// ── the drinker benchmark for the Herbrand route ────────────────────────────
// NNF form exists y forall z (not P(y) or P(z)); one strong or-expansion at
// the root; witnesses 0 and z1.

struct DrinkerHerbrand {
    Signature sig;
    Formula phi_nnf;
    Formula expansion;
    HerbrandExpansion ex;
    std::vector<Term> witnesses;
    Var x;
};

inline DrinkerHerbrand drinker_herbrand() {
    DrinkerHerbrand d;
    d.sig.add_relation("P", 1);
    Var y = fresh_var("y"), z = fresh_var("z");
    d.x = fresh_var("x");
    d.phi_nnf = Formula::exists(
        y, Formula::forall(z, Formula::disj(Formula::neg(Formula::atom("P", {Term::var(y)})),
                                            Formula::atom("P", {Term::var(z)}))));
    d.expansion = strong_or_expand(d.phi_nnf, {});
    d.ex = quantifier_tree_of(d.expansion);
    d.witnesses = {Term::zero(), Term::var(d.ex.uvars[0])};
    if (!check_witnessing_substitution(d.ex, d.witnesses, d.x, {}, d.sig, 2))
        throw InputError("drinker witnesses failed validation");
    return d;
}

} // namespace gamewit

#endif
