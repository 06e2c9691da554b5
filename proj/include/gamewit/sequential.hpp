// Translations into sequential evaluation games: replaying a tree-exploration
// strategy as a list of evaluation strategies with ancillary information, and
// compiling oracle-bearing terms into auxiliary games plus a transcript
// reader.

#ifndef GAMEWIT_SEQUENTIAL_HPP
#define GAMEWIT_SEQUENTIAL_HPP

#include <map>
#include <vector>

#include "gamewit/play.hpp"

namespace gamewit {

// ── tree -> sequential ──────────────────────────────────────────────────────
// Game i replays the root-to-node path of the strategy's i-th play, reading
// every falsifier reply it needs from the transcripts of earlier games
// (against an oblivious falsifier those replies are reproduced exactly);
// rounds past the path depth play 0.

inline std::vector<AncillaryStrategy> tree_to_sequential(const LStrategy& tau, const GameSpec& spec) {
    if (tau.initial_size != 1) throw InputError("tree_to_sequential expects a root strategy");
    int k = spec.shape.k;
    std::size_t len = tau.moves.size();

    std::vector<int> node_depth{0};
    std::vector<int> created_round{-1};
    for (std::size_t i = 0; i < len; ++i) {
        int parent = tau.moves[i].attach;
        if (parent < 1 || parent > static_cast<int>(node_depth.size()))
            throw InputError("strategy attaches to a node that does not exist yet");
        node_depth.push_back(node_depth.at(parent - 1) + 1);
        created_round.push_back(static_cast<int>(i) + 1);
    }

    std::vector<AncillaryStrategy> out;
    for (std::size_t i = 1; i <= len; ++i) {
        AncillaryStrategy g = make_ancillary(tau.input_var, k, 2 * k * static_cast<int>(i - 1));
        g.clamp_out_of_bounds = spec.bounded;

        std::vector<int> chain;  // rounds creating the path nodes, root->new node
        for (int u = static_cast<int>(i) + 1; u != 1; u = tau.moves[created_round.at(u - 1) - 1].attach)
            chain.push_back(created_round.at(u - 1));
        std::reverse(chain.begin(), chain.end());

        // reply of round c (a tree play) appears in game c's transcript at its
        // final round, i.e. flattened position (c-1)*2k + 2*depth_c
        auto reply_ref = [&](int c) -> Term {
            int pos = (c - 1) * 2 * k + 2 * node_depth.at(c);  // 1-based
            return Term::var(g.anc_vars.at(pos - 1));
        };
        auto move_ref = [&](int c) -> Term {
            int pos = (c - 1) * 2 * k + 2 * node_depth.at(c) - 1;
            return Term::var(g.anc_vars.at(pos - 1));
        };

        for (std::size_t u = 0; u < chain.size(); ++u) {
            int c = chain[u];
            Term p = tau.moves[c - 1].p;
            for (int e = 1; e < c; ++e) {
                p = substitute_term(p, tau.moves[e - 1].reply_var, reply_ref(e));
                if (tau.moves[e - 1].move_var) p = substitute_term(p, *tau.moves[e - 1].move_var, move_ref(e));
            }
            for (const Var& v : term_vars(p))
                if (!(v == tau.input_var)) {
                    bool anc = false;
                    for (const Var& a : g.anc_vars) anc = anc || a == v;
                    if (!anc)
                        throw InputError("tree_to_sequential: move term mentions a reply from a later round");
                }
            g.round_terms.at(u) = p;
        }
        out.push_back(std::move(g));
    }
    return out;
}

// ── oracle-term compilation ─────────────────────────────────────────────────
// Decomposes a term over L plus oracle function symbols f_j (arity j+1, first
// argument the designated input variable) into auxiliary evaluation games
// whose plays force the falsifier to reveal each oracle value, plus a reader
// term over the flattened transcripts. Stray free variables are grounded to 0.

struct CompiledOracle {
    std::vector<AncillaryStrategy> games;
    Term reader;
    std::vector<Var> anc_vars;  // covers all games' transcripts (2k per game)
};

namespace detail {

struct OracleCompiler {
    const GameSpec& spec;
    Var x;
    const std::map<std::string, int>& oracle_rounds;  // symbol -> j
    std::vector<AncillaryStrategy> games;
    std::vector<Var> avars;

    Var avar(std::size_t pos) {  // 0-based flattened transcript position
        while (avars.size() <= pos) avars.push_back(fresh_var("a" + std::to_string(avars.size() + 1)));
        return avars[pos];
    }

    Term compile(const Term& q) {
        if (q.is_var()) return q.as_var() == x ? q : Term::zero();
        auto it = oracle_rounds.find(q.fn());
        if (it == oracle_rounds.end()) {
            std::vector<Term> args;
            for (const auto& a : q.args()) args.push_back(compile(a));
            return Term::app(q.fn(), std::move(args));
        }
        int j = it->second;
        if (static_cast<int>(q.args().size()) != j + 1)
            throw InputError("oracle symbol " + q.fn() + " arity mismatch with the Herbrand normal form");
        if (!q.args()[0].is_var() || !(q.args()[0].as_var() == x))
            throw InputError("oracle symbol " + q.fn() + " must take the input variable first");
        std::vector<Term> readers;
        for (int u = 1; u <= j; ++u) readers.push_back(compile(q.args()[u]));

        int k = spec.shape.k;
        int g_index = static_cast<int>(games.size());
        AncillaryStrategy g = make_ancillary(x, k, 2 * k * g_index);
        g.clamp_out_of_bounds = spec.bounded;
        for (std::size_t p = 0; p < g.anc_vars.size(); ++p) g.anc_vars[p] = avar(p);
        for (int u = 1; u <= j && u <= k; ++u) g.round_terms[u - 1] = readers[u - 1];
        games.push_back(std::move(g));
        // the falsifier's round-j reply in the new game reveals the value
        return Term::var(avar(static_cast<std::size_t>(g_index) * 2 * k + 2 * j - 1));
    }
};

} // namespace detail

inline CompiledOracle compile_oracle_terms(const Term& q, const GameSpec& spec, const Var& x,
                                           const std::map<std::string, int>& oracle_rounds) {
    detail::OracleCompiler c{spec, x, oracle_rounds, {}, {}};
    Term reader = c.compile(q);
    CompiledOracle out;
    out.reader = std::move(reader);
    out.games = std::move(c.games);
    std::size_t need = out.games.size() * 2 * spec.shape.k;
    while (c.avars.size() < need) c.avar(c.avars.size());
    out.anc_vars = std::move(c.avars);
    return out;
}

} // namespace gamewit

#endif
