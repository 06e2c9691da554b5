// Shared test utilities: deterministic random formula/term generators and a
// small structure sampler.

#ifndef GAMEWIT_TEST_HELPERS_HPP
#define GAMEWIT_TEST_HELPERS_HPP

#include <random>

#include "gamewit/enumerate.hpp"
#include "gamewit/fol.hpp"
#include "gamewit/structure.hpp"

namespace gwtest {

using namespace gamewit;

struct Gen {
    std::mt19937_64 rng;
    Signature sig;
    std::vector<Var> free_pool;

    explicit Gen(std::uint64_t seed) : rng(seed) {
        sig.add_function("f", 1);
        sig.add_function("g", 2);
        sig.add_relation("P", 1);
        sig.add_relation("Q", 2);
        for (int i = 0; i < 3; ++i) free_pool.push_back(fresh_var("v" + std::to_string(i)));
    }

    int pick(int n) { return static_cast<int>(rng() % static_cast<std::uint64_t>(n)); }

    Term term(const std::vector<Var>& scope, int depth) {
        int c = pick(depth > 0 ? 4 : 2);
        switch (c) {
            case 0: return scope.empty() ? Term::zero() : Term::var(scope[pick((int)scope.size())]);
            case 1: return pick(2) ? Term::zero() : Term::one();
            case 2: return Term::app("f", {term(scope, depth - 1)});
            default: return Term::app("g", {term(scope, depth - 1), term(scope, depth - 1)});
        }
    }

    Formula atom(const std::vector<Var>& scope, int tdepth) {
        if (pick(2)) return Formula::atom("P", {term(scope, tdepth)});
        return Formula::atom("Q", {term(scope, tdepth), term(scope, tdepth)});
    }

    // random formula with at most `quants` quantifiers, connective depth `depth`
    Formula formula(std::vector<Var>& scope, int depth, int& quants, bool allow_bounded = true) {
        if (depth <= 0 || pick(4) == 0) return pick(8) == 0 ? Formula::bot() : atom(scope, 1);
        int c = pick(quants > 0 ? 6 : 4);
        switch (c) {
            case 0: return Formula::neg(formula(scope, depth - 1, quants, allow_bounded));
            case 1:
                return Formula::conj(formula(scope, depth - 1, quants, allow_bounded),
                                     formula(scope, depth - 1, quants, allow_bounded));
            case 2:
                return Formula::disj(formula(scope, depth - 1, quants, allow_bounded),
                                     formula(scope, depth - 1, quants, allow_bounded));
            case 3:
                return Formula::imp(formula(scope, depth - 1, quants, allow_bounded),
                                    formula(scope, depth - 1, quants, allow_bounded));
            default: {
                --quants;
                Var v = fresh_var("q");
                std::optional<Term> bound;
                if (allow_bounded && pick(2)) bound = term(scope, 1);
                scope.push_back(v);
                Formula body = formula(scope, depth - 1, quants, allow_bounded);
                scope.pop_back();
                return Formula::quant(c == 4 ? Kind::Forall : Kind::Exists, v, std::move(body),
                                      std::move(bound));
            }
        }
    }

    Formula formula(int depth, int max_quants, bool allow_bounded = true, int free_vars = 0) {
        std::vector<Var> scope(free_pool.begin(), free_pool.begin() + free_vars);
        int q = max_quants;
        return formula(scope, depth, q, allow_bounded);
    }

    FiniteStructure structure(int d) {
        FiniteStructure s(sig, d);
        for (const auto& [name, arity] : sig.functions()) {
            if (is_pinned_symbol(name)) continue;
            auto& t = s.function_table(name);
            for (auto& e : t) e = static_cast<Element>(pick(d));
        }
        for (const auto& [name, arity] : sig.relations()) {
            if (is_pinned_symbol(name)) continue;
            auto& t = s.relation_table(name);
            for (auto& e : t) e = static_cast<std::uint8_t>(pick(2));
        }
        return s;
    }
};

// every assignment of the given variables over 0..d-1
inline bool forall_assignments(const std::vector<Var>& vars, int d,
                               const std::function<bool(const Assignment&)>& body) {
    std::size_t total = 1;
    for (std::size_t i = 0; i < vars.size(); ++i) total *= static_cast<std::size_t>(d);
    for (std::size_t it = 0; it < total; ++it) {
        Assignment a;
        std::size_t rest = it;
        for (const Var& v : vars) {
            a.set(v, static_cast<Element>(rest % d));
            rest /= d;
        }
        if (!body(a)) return false;
    }
    return true;
}

} // namespace gwtest

#endif
