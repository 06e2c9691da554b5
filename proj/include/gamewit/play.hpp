// Playing games on boards: the tree exploration game, evaluation games with
// ancillary information, sequential plays against oblivious falsifiers,
// adversarial verification, and the unbounded-to-bounded strategy conversion.

#ifndef GAMEWIT_PLAY_HPP
#define GAMEWIT_PLAY_HPP

#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "gamewit/strategy.hpp"
#include "gamewit/structure.hpp"
#include "gamewit/transform.hpp"

namespace gamewit {

struct BoundViolation : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A game is specified by the alternating prenex shape, the designated input
// variable, and whether bounds are enforced (bounded mode) or ignored with
// wins decided by the guarded matrix (unbounded mode).
struct GameSpec {
    PrenexShape shape;
    Var x;
    bool bounded = false;
};

inline GameSpec game_spec(const Formula& f, const Var& x, bool bounded) {
    GameSpec g;
    g.shape = prenex_shape(f);
    g.x = x;
    g.bounded = bounded;
    for (const auto& s : g.shape.slots)
        if (bounded && !s.bound)
            throw InputError("bounded game requires bound terms on every quantifier");
    return g;
}

// Derives the spec from a formula: bounded mode iff some quantifier carries a
// bound (and then all must).
inline GameSpec game_spec(const Formula& f, const Var& x) {
    PrenexShape sh = prenex_shape(f);
    bool any = false;
    for (const auto& s : sh.slots) any = any || s.bound.has_value();
    GameSpec g;
    g.shape = std::move(sh);
    g.x = x;
    g.bounded = any;
    return g;
}

// ── partial game trees ──────────────────────────────────────────────────────

struct GameNode {
    int parent = 0;     // 1-based; 0 for the root
    int depth = 0;      // root has depth 0
    Element move = 0;   // edge label (truthifier, falsifier); unset for the root
    Element reply = 0;
};

struct GameTree {
    std::vector<GameNode> nodes;  // nodes[0] is the root; node i is index i+1

    static GameTree root_only() {
        GameTree t;
        t.nodes.push_back(GameNode{});
        return t;
    }
    int size() const { return static_cast<int>(nodes.size()); }
    const GameNode& at(int idx) const { return nodes.at(idx - 1); }  // 1-based

    std::vector<int> path_to(int idx) const {  // node indices from just below the root down to idx
        std::vector<int> p;
        for (int u = idx; u != 1; u = at(u).parent) p.push_back(u);
        std::reverse(p.begin(), p.end());
        return p;
    }
};

namespace detail {

// Binds the shape's slot variables along the path to `idx` (plus x -> n0).
inline Assignment path_env(const GameSpec& spec, const Board& b, const GameTree& t, int idx) {
    Assignment env;
    env.set(spec.x, b.n0);
    std::vector<int> path = t.path_to(idx);
    for (std::size_t u = 0; u < path.size(); ++u) {
        const GameNode& n = t.at(path[u]);
        env.set(spec.shape.exists_var(static_cast<int>(u) + 1), n.move);
        env.set(spec.shape.forall_var(static_cast<int>(u) + 1), n.reply);
    }
    return env;
}

inline bool node_wins(const GameSpec& spec, const Board& b, const GameTree& t, int idx) {
    if (t.at(idx).depth != spec.shape.k) return false;
    Assignment env = path_env(spec, b, t, idx);
    return eval_formula(b.structure, spec.shape.matrix, env);
}

} // namespace detail

// ── tree exploration game ───────────────────────────────────────────────────

struct ExplorationResult {
    GameTree tree;
    bool won = false;
    int rounds_used = 0;
    std::vector<std::string> transcript;  // "round i: node r, truthifier m, falsifier n"
};

inline ExplorationResult play_tree_exploration(const Board& b, const GameSpec& spec, const LStrategy& tau,
                                               const Falsifier& falsifier,
                                               GameTree start = GameTree::root_only(),
                                               Assignment initial_env = {}) {
    if (tau.initial_size != start.size())
        throw InputError("strategy initial tree size does not match the start tree");
    ExplorationResult res;
    res.tree = std::move(start);
    Assignment env = std::move(initial_env);
    env.set(tau.input_var, b.n0);
    env.set(spec.x, b.n0);

    for (int idx = 1; idx <= res.tree.size(); ++idx)
        if (detail::node_wins(spec, b, res.tree, idx)) {
            res.won = true;
            return res;
        }

    for (std::size_t i = 0; i < tau.moves.size(); ++i) {
        const StrategyMove& mv = tau.moves[i];
        if (mv.attach < 1 || mv.attach > res.tree.size())
            throw InputError("strategy attaches to a node that does not exist yet");
        int d = res.tree.at(mv.attach).depth;
        if (d + 1 > spec.shape.k)
            throw InputError("strategy extends a node past the quantifier depth");

        Element m = eval_term(b.structure, mv.p, env);
        Assignment penv = detail::path_env(spec, b, res.tree, mv.attach);
        Element move_cap = -1;
        if (spec.bounded) {
            move_cap = eval_term(b.structure, *spec.shape.exists_bound(d + 1), penv);
            if (!b.structure.leq(m, move_cap))
                throw BoundViolation("truthifier move " + std::to_string(m) + " violates its bound in round " +
                                     std::to_string(i + 1));
        }
        FalsifierContext ctx;
        ctx.board = &b;
        std::vector<int> path = res.tree.path_to(mv.attach);
        for (int u : path) {
            ctx.path_moves.push_back(res.tree.at(u).move);
            ctx.path_replies.push_back(res.tree.at(u).reply);
        }
        ctx.current_move = m;
        ctx.round_depth = d + 1;
        if (spec.bounded) {
            penv.set(spec.shape.exists_var(d + 1), m);
            ctx.bound_cap = eval_term(b.structure, *spec.shape.forall_bound(d + 1), penv);
        }
        Element n = falsifier(ctx);
        if (spec.bounded && !b.structure.leq(n, ctx.bound_cap))
            throw InputError("falsifier reply violates its bound");

        res.tree.nodes.push_back(GameNode{mv.attach, d + 1, m, n});
        env.set(mv.reply_var, n);
        if (mv.move_var) env.set(*mv.move_var, m);
        res.rounds_used = static_cast<int>(i) + 1;
        {
            std::ostringstream line;
            line << "round " << (i + 1) << ": node " << mv.attach << ", truthifier " << m << ", falsifier "
                 << n;
            res.transcript.push_back(line.str());
        }
        if (detail::node_wins(spec, b, res.tree, res.tree.size())) {
            res.won = true;
            return res;
        }
    }
    return res;
}

// ── adversarial verification ────────────────────────────────────────────────
// The truthifier's node choices are fixed in advance, so quantifying over all
// falsifier strategies reduces to quantifying over reply sequences: |D|^len
// branches. Returns a reply sequence that defeats the strategy, or nullopt
// when the strategy wins against every falsifier.

namespace detail {

inline std::optional<std::vector<Element>> losing_line(const Board& b, const GameSpec& spec,
                                                       const LStrategy& tau, GameTree& tree,
                                                       Assignment& env, std::size_t i,
                                                       std::vector<Element>& replies) {
    if (i >= tau.moves.size()) return replies;  // rounds exhausted, no win reached
    const StrategyMove& mv = tau.moves[i];
    if (mv.attach < 1 || mv.attach > tree.size())
        throw InputError("strategy attaches to a node that does not exist yet");
    int d = tree.at(mv.attach).depth;
    if (d + 1 > spec.shape.k) throw InputError("strategy extends a node past the quantifier depth");

    Element m = eval_term(b.structure, mv.p, env);
    Assignment penv = path_env(spec, b, tree, mv.attach);
    Element reply_cap = -1;
    if (spec.bounded) {
        Element move_cap = eval_term(b.structure, *spec.shape.exists_bound(d + 1), penv);
        if (!b.structure.leq(m, move_cap))
            throw BoundViolation("truthifier move " + std::to_string(m) + " violates its bound in round " +
                                 std::to_string(i + 1));
        penv.set(spec.shape.exists_var(d + 1), m);
        reply_cap = eval_term(b.structure, *spec.shape.forall_bound(d + 1), penv);
    }

    for (Element n = 0; n < b.structure.domain_size(); ++n) {
        if (spec.bounded && !b.structure.leq(n, reply_cap)) continue;
        tree.nodes.push_back(GameNode{mv.attach, d + 1, m, n});
        env.set(mv.reply_var, n);
        if (mv.move_var) env.set(*mv.move_var, m);
        replies.push_back(n);
        bool won_now = node_wins(spec, b, tree, tree.size());
        std::optional<std::vector<Element>> bad;
        if (!won_now) bad = losing_line(b, spec, tau, tree, env, i + 1, replies);
        replies.pop_back();
        env.erase(mv.reply_var);
        if (mv.move_var) env.erase(*mv.move_var);
        tree.nodes.pop_back();
        if (bad) return bad;
    }
    // An empty reply range (bounded mode) leaves the falsifier stuck: the
    // universal is vacuous and the truthifier wins this branch.
    return std::nullopt;
}

} // namespace detail

inline std::optional<std::vector<Element>> find_losing_line(const Board& b, const GameSpec& spec,
                                                            const LStrategy& tau,
                                                            unsigned long long cap = 50'000'000ULL) {
    unsigned long long branches = 1;
    for (std::size_t i = 0; i < tau.moves.size(); ++i) {
        branches *= static_cast<unsigned long long>(b.structure.domain_size());
        if (branches > cap) throw CapExceeded("minimax_check exceeds the branch cap");
    }
    GameTree tree = GameTree::root_only();
    if (tau.initial_size != 1) throw InputError("find_losing_line expects a root strategy");
    Assignment env;
    env.set(tau.input_var, b.n0);
    env.set(spec.x, b.n0);
    // an initial winning node (k = 0) means there is nothing to refute
    if (detail::node_wins(spec, b, tree, 1)) return std::nullopt;
    std::vector<Element> replies;
    return detail::losing_line(b, spec, tau, tree, env, 0, replies);
}

// True iff the induced strategy wins against every falsifier reply sequence.
inline bool minimax_check(const Board& b, const GameSpec& spec, const LStrategy& tau,
                          unsigned long long cap = 50'000'000ULL) {
    return !find_losing_line(b, spec, tau, cap).has_value();
}

// A falsifier that plays a defeating line when one exists (recomputed after
// each round), and 0 otherwise.
inline Falsifier make_minimax_falsifier(const GameSpec& spec, const LStrategy& tau) {
    auto replies = std::make_shared<std::optional<std::vector<Element>>>();
    auto round = std::make_shared<std::size_t>(0);
    return [=](const FalsifierContext& c) -> Element {
        if (*round == 0) *replies = find_losing_line(*c.board, spec, tau);
        Element r = 0;
        if (*replies && *round < (*replies)->size()) r = (**replies)[*round];
        ++*round;
        if (c.bound_cap >= 0 && !c.board->structure.leq(r, c.bound_cap)) r = 0;
        return r;
    };
}

// ── evaluation games with ancillary information ─────────────────────────────

struct EvaluationResult {
    std::vector<Element> transcript;  // m1, n1, ..., mk, nk
    bool won = false;
    bool aborted = false;             // truthifier bound violation (distinct from a loss)
};

inline EvaluationResult play_evaluation(const Board& b, const GameSpec& spec,
                                        const AncillaryStrategy& tau, const std::vector<Element>& ancillary,
                                        const Falsifier& falsifier) {
    if (ancillary.size() != tau.anc_vars.size())
        throw InputError("ancillary information arity mismatch");
    EvaluationResult res;
    Assignment env;
    env.set(tau.input_var, b.n0);
    env.set(spec.x, b.n0);
    for (std::size_t j = 0; j < ancillary.size(); ++j) env.set(tau.anc_vars[j], ancillary[j]);

    Assignment penv;  // shape-variable bindings for bounds and the matrix
    penv.set(spec.x, b.n0);

    int k = spec.shape.k;
    std::vector<Element> moves, replies;
    for (int i = 1; i <= k; ++i) {
        Element m = eval_term(b.structure, tau.round_terms[i - 1], env);
        if (spec.bounded) {
            Element cap = eval_term(b.structure, *spec.shape.exists_bound(i), penv);
            if (!b.structure.leq(m, cap)) {
                if (tau.clamp_out_of_bounds) {
                    m = 0;
                    if (!b.structure.leq(m, cap)) {
                        res.aborted = true;
                        return res;
                    }
                } else {
                    res.aborted = true;
                    return res;
                }
            }
        }
        penv.set(spec.shape.exists_var(i), m);
        FalsifierContext ctx;
        ctx.board = &b;
        ctx.path_moves = moves;
        ctx.path_replies = replies;
        ctx.current_move = m;
        ctx.round_depth = i;
        if (spec.bounded) ctx.bound_cap = eval_term(b.structure, *spec.shape.forall_bound(i), penv);
        Element n = falsifier(ctx);
        penv.set(spec.shape.forall_var(i), n);
        env.set(tau.move_vars[i - 1], m);
        env.set(tau.reply_vars[i - 1], n);
        moves.push_back(m);
        replies.push_back(n);
        res.transcript.push_back(m);
        res.transcript.push_back(n);
    }
    res.won = eval_formula(b.structure, spec.shape.matrix, penv);
    return res;
}

// ── sequential plays against an oblivious falsifier ─────────────────────────

struct SequentialResult {
    std::optional<int> first_win;            // 1-based index of the first winning game
    std::vector<std::vector<Element>> transcripts;
};

inline SequentialResult play_sequential(const Board& b, const GameSpec& spec,
                                        const std::vector<AncillaryStrategy>& taus,
                                        const Falsifier& oblivious) {
    SequentialResult res;
    std::vector<Element> anc;
    for (std::size_t g = 0; g < taus.size(); ++g) {
        std::vector<Element> slice(anc.begin(),
                                   anc.begin() + std::min(anc.size(), taus[g].anc_vars.size()));
        if (slice.size() != taus[g].anc_vars.size())
            throw InputError("sequential play: strategy " + std::to_string(g + 1) +
                             " expects more ancillary information than available");
        EvaluationResult r = play_evaluation(b, spec, taus[g], slice, oblivious);
        res.transcripts.push_back(r.transcript);
        for (Element e : r.transcript) anc.push_back(e);
        if (r.won) {
            res.first_win = static_cast<int>(g) + 1;
            return res;
        }
    }
    return res;
}

// ── unbounded-to-bounded conversion ─────────────────────────────────────────
// Builds guarded move terms over the if-then-else vocabulary: the converted
// strategy simulates the unbounded one against a reconstructed transcript and
// plays 0 whenever the simulated move would violate its bound. Assumes 0 is a
// valid move wherever a bound applies (as on the standard ordering).

inline LStrategy unbounded_to_bounded(const LStrategy& tau, const GameSpec& bounded_spec,
                                      const Signature& sig) {
    if (!sig.has_ite())
        throw InputError("unbounded_to_bounded requires the ite/eq01/leq01 vocabulary in the signature");
    if (tau.initial_size != 1) throw InputError("unbounded_to_bounded expects a root strategy");

    LStrategy out;
    out.initial_size = 1;
    out.input_var = tau.input_var;
    std::size_t len = tau.moves.size();
    for (std::size_t i = 0; i < len; ++i) {
        StrategyMove m;
        m.attach = tau.moves[i].attach;
        m.reply_var = fresh_var("z" + std::to_string(i + 1));
        m.move_var = fresh_var("m" + std::to_string(i + 1));
        out.moves.push_back(std::move(m));
    }

    // node depths of the fixed tree shape
    std::vector<int> node_depth{0};  // node 1 = root
    std::vector<int> created_round{-1};
    for (std::size_t i = 0; i < len; ++i) {
        int parent = tau.moves[i].attach;
        node_depth.push_back(node_depth.at(parent - 1) + 1);
        created_round.push_back(static_cast<int>(i));
    }

    // simulated moves and replies as terms over the converted strategy's vars
    std::vector<Term> sim_move(len), sim_reply(len);
    for (std::size_t j = 0; j < len; ++j) {
        Term p = tau.moves[j].p;
        for (std::size_t c = 0; c < j; ++c) {
            p = substitute_term(p, tau.moves[c].reply_var, sim_reply[c]);
            if (tau.moves[c].move_var) p = substitute_term(p, *tau.moves[c].move_var, sim_move[c]);
        }
        sim_move[j] = p;
        sim_reply[j] = Term::app("ite", {Term::app("eq01", {Term::var(*out.moves[j].move_var), sim_move[j]}),
                                         Term::var(out.moves[j].reply_var), Term::zero()});
    }

    for (std::size_t i = 0; i < len; ++i) {
        int new_node = static_cast<int>(i) + 2;
        int depth = node_depth.at(new_node - 1);
        const Term* bt = bounded_spec.shape.exists_bound(depth);
        if (!bt) throw InputError("unbounded_to_bounded: bounded shape lacks a bound term");
        // instantiate the bound over the actual path labels
        Term bound = *bt;
        bound = substitute_term(bound, bounded_spec.x, Term::var(out.input_var));
        std::vector<int> chain;  // nodes on the path, excluding the root
        for (int u = tau.moves[i].attach; u != 1; u = tau.moves[created_round.at(u - 1)].attach)
            chain.push_back(u);
        std::reverse(chain.begin(), chain.end());
        for (std::size_t u = 0; u < chain.size(); ++u) {
            int r = created_round.at(chain[u] - 1);
            bound = substitute_term(bound, bounded_spec.shape.exists_var(static_cast<int>(u) + 1),
                                    Term::var(*out.moves[r].move_var));
            bound = substitute_term(bound, bounded_spec.shape.forall_var(static_cast<int>(u) + 1),
                                    Term::var(out.moves[r].reply_var));
        }
        out.moves[i].p = Term::app(
            "ite", {Term::app("leq01", {sim_move[i], bound}), sim_move[i], Term::zero()});
    }
    return out;
}

} // namespace gamewit

#endif
