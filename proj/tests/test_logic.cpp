#include <catch2/catch_amalgamated.hpp>

#include "gamewit/parse.hpp"
#include "gamewit/transform.hpp"
#include "test_helpers.hpp"

using namespace gamewit;

static Signature test_sig() {
    Signature sig;
    sig.add_function("f", 1);
    sig.add_function("g", 2);
    sig.add_function("t", 1);
    sig.add_relation("P", 1);
    sig.add_relation("Q", 2);
    sig.add_relation("P2", 2);
    return sig;
}

TEST_CASE("parser reads the grammar") {
    Signature sig = test_sig();

    Formula f = parse_formula("(exists (<= y (t x)) (P y))", sig);
    REQUIRE(f.kind() == Kind::Exists);
    REQUIRE(f.bounded());
    REQUIRE(f.bound()->fn() == "t");
    REQUIRE(f.child().kind() == Kind::Atom);
    REQUIRE(f.child().args()[0].is_var());
    REQUIRE(f.child().args()[0].as_var() == f.qvar());

    Formula g = parse_formula("(imp (Q (f x) z) (P2 x (g x z)))", sig);
    REQUIRE(g.kind() == Kind::Imp);
    REQUIRE(g.child(0).rel() == "Q");
    REQUIRE(g.child(1).rel() == "P2");
    // shared free variables resolve to the same ids
    REQUIRE(g.child(0).args()[0].args()[0] == g.child(1).args()[0]);

    REQUIRE_THROWS_AS(parse_formula("(P x y", sig), ParseError);
    REQUIRE_THROWS_AS(parse_formula("(Unknown x)", sig), ParseError);
    REQUIRE_THROWS_AS(parse_formula("(P x y)", sig), ParseError);  // arity
}

TEST_CASE("print/parse round-trip on random formulas") {
    Signature sig;
    sig.add_function("f", 1);
    sig.add_function("g", 2);
    sig.add_relation("P", 1);
    sig.add_relation("Q", 2);
    gwtest::Gen gen(12345);
    for (int i = 0; i < 300; ++i) {
        Formula f = gen.formula(6, 3, true, 2);
        Formula back = parse_formula(print_formula(f), sig);
        INFO(print_formula(f));
        REQUIRE(back == f);
    }
}

TEST_CASE("substitution is capture avoiding") {
    Signature sig = test_sig();
    Var x = fresh_var("x"), y = fresh_var("y"), z = fresh_var("z");

    // (Q(y,z) -> P2(x,y))[y := f(x)]
    Formula f = Formula::imp(Formula::atom("Q", {Term::var(y), Term::var(z)}),
                             Formula::atom("P2", {Term::var(x), Term::var(y)}));
    Formula g = substitute(f, y, Term::app("f", {Term::var(x)}));
    Formula want = Formula::imp(Formula::atom("Q", {Term::app("f", {Term::var(x)}), Term::var(z)}),
                                Formula::atom("P2", {Term::var(x), Term::app("f", {Term::var(x)})}));
    REQUIRE(g == want);

    // y not free: untouched
    Formula p = Formula::atom("P", {Term::var(x)});
    REQUIRE(substitute(p, y, Term::var(z)) == p);

    // capture forces renaming
    Formula q = Formula::forall(z, Formula::atom("Q", {Term::var(z), Term::var(y)}));
    Formula r = substitute(q, y, Term::app("g", {Term::var(z), Term::var(z)}));
    REQUIRE(r.kind() == Kind::Forall);
    REQUIRE(!(r.qvar() == z));
    Var w = fresh_var("w");
    Formula want_r = Formula::forall(
        w, Formula::atom("Q", {Term::var(w), Term::app("g", {Term::var(z), Term::var(z)})}));
    REQUIRE(alpha_equal(r, want_r));
    REQUIRE(occurs_free(r.child(), z));  // the substituted term's z survives free

    // FV contract on random cases
    gwtest::Gen gen(99);
    for (int i = 0; i < 200; ++i) {
        Formula h = gen.formula(5, 2, true, 2);
        Var v = gen.free_pool[0];
        Term t = gen.term({gen.free_pool[1]}, 2);
        Formula s = substitute(h, v, t);
        std::set<Var> fv = free_vars(s);
        std::set<Var> allowed = free_vars(h);
        allowed.erase(v);
        for (const Var& w : term_vars(t)) allowed.insert(w);
        for (const Var& w : fv) REQUIRE(allowed.count(w) == 1);
        if (!occurs_free(h, v)) REQUIRE(s == h);  // idempotence when not free
    }
}

TEST_CASE("desugar_to_imp shapes") {
    Signature sig = test_sig();
    Formula a = parse_formula("(P x)", sig);
    Formula b = parse_formula("(P y)", sig);

    REQUIRE(desugar_to_imp(Formula::neg(a)) == Formula::imp(a, Formula::bot()));
    REQUIRE(desugar_to_imp(Formula::conj(a, b)) ==
            Formula::imp(Formula::imp(a, Formula::imp(b, Formula::bot())), Formula::bot()));
    REQUIRE(desugar_to_imp(Formula::disj(a, b)) == Formula::imp(Formula::imp(a, Formula::bot()), b));
    REQUIRE(desugar_to_imp(Formula::disj(Formula::neg(a), b)) == Formula::imp(a, b));
}

TEST_CASE("imp_translate on the three shapes") {
    Signature sig = test_sig();
    Formula qf = parse_formula("(P x)", sig);
    REQUIRE(imp_translate(qf) == qf);

    Formula ex = parse_formula("(exists (<= y (t x)) (P y))", sig);
    Formula exi = imp_translate(ex);
    REQUIRE(exi.kind() == Kind::Exists);
    REQUIRE(!exi.bounded());
    REQUIRE(exi.child().kind() == Kind::And);
    REQUIRE(exi.child().child(0).rel() == "leq");

    Formula fa = parse_formula("(forall (<= y (t x)) (P y))", sig);
    Formula fai = imp_translate(fa);
    REQUIRE(fai.kind() == Kind::Forall);
    REQUIRE(!fai.bounded());
    REQUIRE(fai.child().kind() == Kind::Or);
    REQUIRE(fai.child().child(0).kind() == Kind::Not);

    // after desugar, the universal guard becomes an implication
    Formula d = desugar_to_imp(fai);
    REQUIRE(d.child().kind() == Kind::Imp);
    REQUIRE(d.child().child(0).rel() == "leq");

    REQUIRE_THROWS_AS(imp_translate(Formula::conj(ex, qf)), InputError);
}

TEST_CASE("nnf and prenex basics") {
    Signature sig = test_sig();
    Formula a = parse_formula("(P x)", sig);
    Formula b = parse_formula("(P y)", sig);
    Formula nn = to_nnf(Formula::neg(Formula::conj(a, b)));
    REQUIRE(nn == Formula::disj(Formula::neg(a), Formula::neg(b)));

    Formula f = parse_formula("(or (exists y (P y)) (P x))", sig);
    Formula pz = to_prenex(to_nnf(f));
    REQUIRE(pz.kind() == Kind::Exists);
    REQUIRE(is_prenex(pz));

    Formula already = parse_formula("(exists y (forall z (Q y z)))", sig);
    REQUIRE(to_prenex(already) == already);
}

TEST_CASE("strong or-expansion") {
    Signature sig = test_sig();
    Formula drinker = parse_formula("(exists y (forall z (or (not (P y)) (P z))))", sig);
    Formula e = strong_or_expand(drinker, {});
    REQUIRE(e.kind() == Kind::Or);
    REQUIRE(alpha_equal(e.child(0), drinker));
    REQUIRE(alpha_equal(e.child(1), drinker));
    REQUIRE(!(e.child(1).qvar() == drinker.qvar()));  // copy renamed apart

    REQUIRE_THROWS_AS(strong_or_expand(drinker, {0, 0}), InputError);  // not existential
    REQUIRE_THROWS_AS(strong_or_expand(drinker, {5}), InputError);     // bad path
}

TEST_CASE("phi_slice") {
    Signature sig = test_sig();
    Formula f = parse_formula("(exists y1 (forall x1 (exists y2 (forall x2 (Q y1 y2)))))", sig);
    REQUIRE(phi_slice(f, 0) == f);

    Formula s1 = phi_slice(f, 1);
    REQUIRE(s1.kind() == Kind::Exists);
    REQUIRE(free_vars(s1).size() == 1);  // the freed y1 (x1 does not occur)

    Formula s2 = phi_slice(f, 2);
    REQUIRE(is_quantifier_free(s2));
    REQUIRE(free_vars(s2).size() == 2);

    // freed variables get fresh ids
    std::set<Var> fv = free_vars(s2);
    for (const Var& v : fv) REQUIRE(!(v == f.qvar()));

    REQUIRE_THROWS_AS(phi_slice(f, 3), InputError);
}

TEST_CASE("herbrandize") {
    Signature sig = test_sig();
    Var x = fresh_var("x");
    Formula f = parse_formula("(exists y (forall z (imp (P y) (P z))))", sig);
    Herbrandization h = herbrandize(f, x, sig);
    REQUIRE(h.new_symbols.size() == 1);
    REQUIRE(h.extended.has_function(h.new_symbols[0]));
    REQUIRE(h.extended.function_arity(h.new_symbols[0]) == 2);
    REQUIRE(h.formula.kind() == Kind::Exists);
    REQUIRE(is_quantifier_free(h.formula.child()));

    Formula qf = parse_formula("(P x)", sig);
    Herbrandization h0 = herbrandize(qf, x, sig);
    REQUIRE(h0.formula == qf);
    REQUIRE(h0.new_symbols.empty());
}

TEST_CASE("prenex shape padding") {
    Signature sig = test_sig();
    Formula f = parse_formula("(forall z (P z))", sig);  // starts with forall
    PrenexShape sh = prenex_shape(f);
    REQUIRE(sh.k == 1);
    REQUIRE(sh.slots.size() == 2);
    REQUIRE(sh.slots[0].existential);
    REQUIRE(sh.slots[0].bound.has_value());  // padded with bound 0

    Formula g = parse_formula("(exists y (P y))", sig);  // ends with exists
    PrenexShape sg = prenex_shape(g);
    REQUIRE(sg.k == 1);
    REQUIRE(!sg.slots[1].existential);
}
