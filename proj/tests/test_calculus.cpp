#include <catch2/catch_amalgamated.hpp>

#include "gamewit/corpus.hpp"
#include "gamewit/enumerate.hpp"
#include "gamewit/proof_io.hpp"
#include "gamewit/search.hpp"
#include "test_helpers.hpp"

using namespace gamewit;

TEST_CASE("check_rule basics") {
    Signature sig;
    sig.add_relation("P", 1);
    sig.add_relation("Q", 2);
    Var x = fresh_var("x"), y = fresh_var("y"), z = fresh_var("z");
    Formula px = Formula::atom("P", {Term::var(x)});
    Formula qyz = Formula::atom("Q", {Term::var(y), Term::var(z)});

    SECTION("Ax accepts atomic principals") {
        Sequent s = make_sequent({px}, {px});
        RuleApp app;
        app.tag = Rule::Ax;
        app.principal = s.ant[0].id;
        app.principal_suc = s.suc[0].id;
        REQUIRE(!check_rule(s, app, {}));
    }
    SECTION("Ax rejects non-atomic principals") {
        Formula impl = Formula::imp(qyz, px);
        Sequent s = make_sequent({impl}, {impl});
        RuleApp app;
        app.tag = Rule::Ax;
        app.principal = s.ant[0].id;
        app.principal_suc = s.suc[0].id;
        auto v = check_rule(s, app, {});
        REQUIRE(v);
        REQUIRE(v->reason.find("non-atomic") != std::string::npos);
    }
    SECTION("R-all freshness") {
        Formula fa = Formula::forall(z, Formula::atom("Q", {Term::var(z), Term::var(y)}));
        Sequent s = make_sequent({Formula::atom("P", {Term::var(y)})}, {fa});
        RuleApp app;
        app.tag = Rule::RAll;
        app.principal = s.suc[0].id;
        app.proper = y;  // y occurs free in the antecedent
        auto node = [&] {
            auto n = std::make_unique<ProofNode>();
            n->seq = expected_premises(s, app)[0];
            return n;
        }();
        auto v = check_rule(s, app, {&node->seq});
        REQUIRE(v);
        REQUIRE(v->reason.find("freshness") != std::string::npos);
    }
    SECTION("L-bot") {
        Sequent s = make_sequent({Formula::bot()}, {px});
        RuleApp app;
        app.tag = Rule::LBot;
        app.principal = s.ant[0].id;
        REQUIRE(!check_rule(s, app, {}));
    }
}

TEST_CASE("the worked-example tree checks and its mutations do not") {
    ProofBundle b = fig2_bundle();
    REQUIRE(!check_proof(b.proof));
    REQUIRE(count_rule(b.proof, Rule::RExAll) == 2);
    REQUIRE(count_rule(b.proof, Rule::LImp) == 1);
    REQUIRE(count_rule(b.proof, Rule::Ax) == 2);
    REQUIRE_THROWS_AS(count_rule(b.proof, "R-whatever"), InputError);

    SECTION("replacing a witness term breaks the proof") {
        ProofTree t = b.proof.clone();
        ProofNode* n = t.root.get();
        REQUIRE(n->rule.tag == Rule::RExAll);
        n->rule.witness = Term::zero();
        REQUIRE(check_proof(t).has_value());
    }
    SECTION("de-freshening a proper variable breaks the proof") {
        ProofTree t = b.proof.clone();
        t.root->rule.proper = b.x;  // z1 renamed to x
        REQUIRE(check_proof(t).has_value());
        REQUIRE(check_proof(t)->reason.find("freshness") != std::string::npos);
    }
    SECTION("deleting a Kleene copy breaks the proof") {
        ProofTree t = b.proof.clone();
        ProofNode* premise = t.root->kids[0].get();
        long long copy_id = t.root->rule.principal;
        auto& suc = premise->seq.suc;
        suc.erase(std::remove_if(suc.begin(), suc.end(), [&](const Occ& o) { return o.id == copy_id; }),
                  suc.end());
        REQUIRE(check_proof(t).has_value());
    }
}

TEST_CASE("proof soundness at desk scale") {
    // every checked corpus proof denotes a valid sequent on small structures
    for (const ProofBundle& b : build_corpus()) {
        INFO(b.name);
        REQUIRE(!check_proof(b.proof));
        Formula claim = b.phi;
        for (const Formula& ax : b.axioms) claim = Formula::imp(ax, claim);
        std::set<Var> fvset = free_vars(claim);
        std::vector<Var> fv(fvset.begin(), fvset.end());
        for (int d = 1; d <= 2; ++d) {
            StructureEnumerator en(b.sig, d, {});
            while (auto s = en.next()) {
                bool ok = gwtest::forall_assignments(
                    fv, d, [&](const Assignment& a) { return eval_formula(*s, claim, a); });
                REQUIRE(ok);
            }
        }
    }
}

TEST_CASE("proof file round-trip") {
    ProofBundle b = fig2_bundle();
    std::string text = save_proof(b.proof);
    ProofTree back = load_proof(text, b.sig);
    REQUIRE(!check_proof(back));
    REQUIRE(count_rule(back, Rule::RExAll) == 2);
    REQUIRE(save_proof(back) == text);  // canonical ids make saving stable

    SECTION("corrupted files are rejected on load") {
        std::string broken = text;
        auto pos = broken.find(":term (f x?5)");
        REQUIRE(pos != std::string::npos);
        broken.replace(pos, 13, ":term (g x?5 x?5)");  // premise no longer matches
        REQUIRE_THROWS(load_proof(broken, b.sig));
    }
}

TEST_CASE("proof search finds simple proofs") {
    Signature sig;
    sig.add_relation("P", 1);
    Var x = fresh_var("x");
    Formula px = Formula::atom("P", {Term::var(x)});

    SECTION("identity implication") {
        Sequent goal = make_sequent({}, {Formula::imp(px, px)});
        auto t = proof_search(goal, 2, sig);
        REQUIRE(t);
        REQUIRE(!check_proof(*t));
        REQUIRE(t->root->rule.tag == Rule::RImp);
        REQUIRE(t->root->kids[0]->rule.tag == Rule::Ax);
    }
    SECTION("bot is not provable") {
        Sequent goal = make_sequent({}, {Formula::bot()});
        REQUIRE(!proof_search(goal, 6, sig));
    }
    SECTION("the worked example is found with the stated pool") {
        ProofBundle b = fig2_bundle();
        Sequent goal = make_sequent(b.axioms, {b.phi});
        SearchConfig cfg;
        Var hole = fresh_var("hole");
        cfg.pool = {Term::var(b.x), Term::app("f", {Term::var(b.x)}),
                    Term::app("g", {Term::var(b.x), Term::var(hole)})};
        auto t = proof_search(goal, 12, b.sig, cfg);
        REQUIRE(t);
        REQUIRE(!check_proof(*t));
    }
}

TEST_CASE("searched proofs always check") {
    for (const CorpusSpec& spec : corpus_catalog()) {
        INFO(spec.name);
        ProofBundle b = build_corpus_entry(spec);
        REQUIRE(!check_proof(b.proof));
    }
}

TEST_CASE("the synthetic unlimited tree is a valid proof") {
    ProofBundle b = unlimited_ru_bundle();
    REQUIRE(!check_proof(b.proof));
    REQUIRE(count_rule(b.proof, Rule::RAll) == 2);
    REQUIRE(count_rule(b.proof, Rule::REx) == 2);
}
