#include <catch2/catch_amalgamated.hpp>

#include "gamewit/enumerate.hpp"
#include "gamewit/parse.hpp"
#include "gamewit/play.hpp"
#include "test_helpers.hpp"

using namespace gamewit;

TEST_CASE("term evaluation") {
    Signature sig;
    sig.add_function("f", 1);
    sig.add_function("add", 2);
    Var x = fresh_var("x");

    FiniteStructure s(sig, 2);
    s.set_function("f", {0}, 1);
    s.set_function("f", {1}, 0);
    Assignment a;
    a.set(x, 0);
    REQUIRE(eval_term(s, Term::app("f", {Term::var(x)}), a) == 1);
    REQUIRE(eval_term(s, Term::zero(), a) == 0);
    REQUIRE(eval_term(s, Term::one(), a) == 1);

    FiniteStructure m3(sig, 3);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) m3.set_function("add", {i, j}, (i + j) % 3);
    Assignment b;
    b.set(x, 2);
    REQUIRE(eval_term(m3, Term::app("add", {Term::var(x), Term::var(x)}), b) == 1);

    Assignment empty;
    REQUIRE_THROWS_AS(eval_term(s, Term::var(x), empty), InputError);
}

TEST_CASE("formula evaluation") {
    Signature sig;
    sig.add_relation("P", 1);
    FiniteStructure s(sig, 2);
    Assignment a;
    REQUIRE(!eval_formula(s, Formula::bot(), a));

    // drinker is classically valid on every |D| <= 3 structure
    Formula drinker = parse_formula("(exists y (forall z (imp (P y) (P z))))", sig);
    for (int d = 1; d <= 3; ++d) {
        StructureEnumerator en(sig, d, {});
        while (auto st = en.next()) REQUIRE(eval_sentence(*st, drinker));
    }
}

TEST_CASE("bounded quantifiers range over the leq table") {
    Signature sig;
    sig.add_relation("P", 1);
    FiniteStructure s(sig, 3);  // standard leq
    s.set_relation("P", {0}, false);
    s.set_relation("P", {1}, true);
    s.set_relation("P", {2}, true);
    Formula f = parse_formula("(forall (<= z 1) (P z))", sig);
    REQUIRE(!eval_sentence(s, f));  // z = 0 fails
    Formula g = parse_formula("(exists (<= z 1) (P z))", sig);
    REQUIRE(eval_sentence(s, g));  // z = 1
}

TEST_CASE("check_universal_axioms") {
    Signature sig;
    sig.add_function("f", 1);
    sig.add_function("g", 2);
    sig.add_relation("P", 2);
    sig.add_relation("Q", 2);
    Formula ax = parse_formula("(forall x (forall z (imp (Q (f x) z) (P x (g x z)))))", sig);

    FiniteStructure s(sig, 2);  // Q constantly false: vacuous
    REQUIRE(check_universal_axioms(s, {}));
    REQUIRE(check_universal_axioms(s, {ax}));

    FiniteStructure bad(sig, 2);
    bad.set_relation("Q", {bad.apply("f", {0}), 0}, true);
    // P(0, g(0,0)) stays false
    REQUIRE(!check_universal_axioms(bad, {ax}));

    Formula nonuniv = parse_formula("(exists x (P x x))", sig);
    REQUIRE_THROWS_AS(check_universal_axioms(s, {nonuniv}), InputError);
}

TEST_CASE("structure enumeration") {
    Signature sig;
    sig.add_relation("P", 1);
    REQUIRE(enumerate_structures(sig, 1, {}).size() == 2);

    Formula all = parse_formula("(forall x (P x))", sig);
    auto models = enumerate_structures(sig, 2, {all});
    REQUIRE(models.size() == 1);
    for (const auto& m : models) REQUIRE(check_universal_axioms(m, {all}));

    // the worked-example signature has exactly 2^14 candidates at domain 2
    Signature fig2;
    fig2.add_function("f", 1);
    fig2.add_function("g", 2);
    fig2.add_relation("P", 2);
    fig2.add_relation("Q", 2);
    StructureEnumerator en(fig2, 2, {});
    REQUIRE(en.candidate_count() == 16384);

    // duplicate-free: count distinct serializations
    std::set<std::string> seen;
    StructureEnumerator en2(sig, 2, {});
    while (auto s = en2.next()) REQUIRE(seen.insert(save_structure(*s)).second);
    REQUIRE(seen.size() == 4);

    Signature big;
    big.add_relation("R", 3);
    REQUIRE_THROWS_AS(enumerate_structures(big, 3, {}, 1000), CapExceeded);
}

TEST_CASE("structure file round-trip") {
    Signature sig;
    sig.add_function("f", 1);
    sig.add_relation("P", 1);
    FiniteStructure s(sig, 2);
    s.set_function("f", {0}, 1);
    s.set_relation("P", {1}, true);
    std::string text = save_structure(s, 1);
    Board b = load_board(text, sig);
    REQUIRE(b.n0 == 1);
    REQUIRE(b.structure.apply("f", {0}) == 1);
    REQUIRE(b.structure.holds("P", {1}));
    REQUIRE(!b.structure.holds("P", {0}));
    REQUIRE(save_structure(b.structure, b.n0) == text);
}

// truth of a prenex sentence = existence of a winning truthifier reply in the
// naive game-tree minimax (exhaustive, |D| <= 3, k <= 2)
namespace {

bool eval_game_minimax(const FiniteStructure& s, const GameSpec& spec, Assignment& env, int round,
                       Element n0) {
    if (round > spec.shape.k) return eval_formula(s, spec.shape.matrix, env);
    Element ecap = -1, d = s.domain_size();
    if (spec.bounded) ecap = eval_term(s, *spec.shape.exists_bound(round), env);
    for (Element m = 0; m < d; ++m) {
        if (spec.bounded && !s.leq(m, ecap)) continue;
        env.set(spec.shape.exists_var(round), m);
        Element fcap = -1;
        if (spec.bounded) fcap = eval_term(s, *spec.shape.forall_bound(round), env);
        bool all = true;
        bool any_reply = false;
        for (Element n = 0; n < d; ++n) {
            if (spec.bounded && !s.leq(n, fcap)) continue;
            any_reply = true;
            env.set(spec.shape.forall_var(round), n);
            if (!eval_game_minimax(s, spec, env, round + 1, n0)) {
                all = false;
                break;
            }
        }
        env.erase(spec.shape.forall_var(round));
        env.erase(spec.shape.exists_var(round));
        if (all && any_reply) return true;
        if (!any_reply) return true;  // vacuous universal
    }
    return false;
}

} // namespace

TEST_CASE("evaluation game determinacy matches eval_formula") {
    gwtest::Gen gen(4242);
    Var x = gen.free_pool[0];
    for (int trial = 0; trial < 60; ++trial) {
        // random alternating prenex formula with k <= 2 over one free variable
        int k = 1 + gen.pick(2);
        std::vector<Var> scope{x};
        std::vector<std::pair<Var, Var>> pairs;
        for (int i = 0; i < k; ++i) {
            Var y = fresh_var("y"), z = fresh_var("z");
            pairs.push_back({y, z});
            scope.push_back(y);
            scope.push_back(z);
        }
        int q = 0;
        Formula matrix = gen.formula(scope, 2, q, false);
        Formula f = matrix;
        for (int i = k - 1; i >= 0; --i)
            f = Formula::exists(pairs[i].first, Formula::forall(pairs[i].second, f));

        GameSpec spec = game_spec(f, x, false);
        for (int d = 1; d <= 3; ++d) {
            FiniteStructure s = gen.structure(d);
            for (Element n0 = 0; n0 < d; ++n0) {
                Assignment env;
                env.set(x, n0);
                bool game = eval_game_minimax(s, spec, env, 1, n0);
                Assignment a;
                a.set(x, n0);
                bool truth = eval_formula(s, f, a);
                REQUIRE(game == truth);
            }
        }
    }
}

TEST_CASE("semantic preservation of the logic transforms") {
    gwtest::Gen gen(777);
    Signature sig = gen.sig;
    int checked = 0;
    for (int trial = 0; trial < 120; ++trial) {
        Formula f = gen.formula(4, 3, true, 1);
        std::set<Var> fvset = free_vars(f);
        std::vector<Var> fv(fvset.begin(), fvset.end());
        std::vector<Formula> variants{desugar_to_imp(f), to_nnf(f), to_prenex(to_nnf(f))};
        if (is_prenex(f)) variants.push_back(imp_translate(f));
        for (int d = 1; d <= 3; ++d) {
            FiniteStructure s = gen.structure(d);
            gwtest::forall_assignments(fv, d, [&](const Assignment& a) {
                bool base = eval_formula(s, f, a);
                for (const Formula& g : variants) REQUIRE(eval_formula(s, g, a) == base);
                ++checked;
                return true;
            });
        }
    }
    REQUIRE(checked > 200);
}
