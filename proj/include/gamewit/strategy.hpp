// Truthifier strategies and falsifier models.
//
// An LStrategy move carries the node to extend, the move term, and the
// variable the falsifier's reply binds (so later move terms can read it).
// Ancillary strategies for the sequential evaluation game carry one term per
// round plus the variable lists their terms are written over.

#ifndef GAMEWIT_STRATEGY_HPP
#define GAMEWIT_STRATEGY_HPP

#include <functional>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "gamewit/parse.hpp"
#include "gamewit/structure.hpp"

namespace gamewit {

// ── L-strategies for the tree exploration game ──────────────────────────────

struct StrategyMove {
    Term p;                        // move term over input_var, earlier reply vars, earlier move vars
    int attach = 1;                // 1-based node index to extend (node i+d is created in round i)
    Var reply_var;                 // bound to the falsifier's reply this round
    std::optional<Var> move_var;   // bound to the truthifier's own move, when terms read it
};

struct LStrategy {
    int initial_size = 1;
    Var input_var;                 // bound to n0
    std::vector<StrategyMove> moves;

    std::size_t length() const { return moves.size(); }
};

inline LStrategy make_root_strategy(const Var& input, std::vector<std::pair<Term, int>> moves) {
    LStrategy s;
    s.initial_size = 1;
    s.input_var = input;
    for (auto& [p, r] : moves) s.moves.push_back(StrategyMove{p, r, fresh_var("z"), std::nullopt});
    return s;
}

// ── strategy files ──────────────────────────────────────────────────────────
//   (strategy (d 1) (moves (p TERM) (r INT) (p TERM) (r INT) ...))
// Terms use x for the board element and z1..zL / m1..mL for the falsifier's
// replies and the truthifier's own earlier moves, round by round.

inline std::string save_strategy(const LStrategy& s) {
    // canonical variable naming: x, zi, mi
    std::map<long long, Term> ren;
    ren[s.input_var.id] = Term::var(Var{"x", 1});
    for (std::size_t i = 0; i < s.moves.size(); ++i) {
        ren[s.moves[i].reply_var.id] = Term::var(Var{"z" + std::to_string(i + 1), 100 + (long long)i});
        if (s.moves[i].move_var)
            ren[s.moves[i].move_var->id] = Term::var(Var{"m" + std::to_string(i + 1), 200 + (long long)i});
    }
    std::function<Term(const Term&)> rw = [&](const Term& t) -> Term {
        if (t.is_var()) {
            auto it = ren.find(t.as_var().id);
            return it == ren.end() ? t : it->second;
        }
        std::vector<Term> args;
        for (const auto& a : t.args()) args.push_back(rw(a));
        return Term::app(t.fn(), std::move(args));
    };
    std::ostringstream os;
    os << "(strategy (d " << s.initial_size << ") (moves";
    for (const auto& m : s.moves) os << " (p " << print_term(rw(m.p)) << ") (r " << m.attach << ")";
    os << "))\n";
    return os.str();
}

inline LStrategy load_strategy(const std::string& text, const Signature& sig) {
    Sexpr e = parse_sexpr(text);
    if (e.is_atom || e.head() != "strategy") throw ParseError("expected a (strategy ...) form", e.pos);
    LStrategy s;
    s.input_var = fresh_var("x");
    std::map<std::string, Var> named;
    named["x"] = s.input_var;
    std::vector<std::pair<Term, int>> pr;
    for (std::size_t i = 1; i < e.size(); ++i) {
        const Sexpr& c = e.at(i);
        if (c.is_atom) throw ParseError("expected (d N) or (moves ...)", c.pos);
        if (c.head() == "d") {
            s.initial_size = std::stoi(c.at(1).atom);
        } else if (c.head() == "moves") {
            std::optional<Term> pending;
            for (std::size_t j = 1; j < c.size(); ++j) {
                const Sexpr& item = c.at(j);
                if (item.is_atom || item.size() != 2) throw ParseError("expected (p T) / (r N)", item.pos);
                if (item.head() == "p") {
                    detail::ParseScope sc{&sig, {}, {}};
                    // pre-seed shared names so x/z/m tokens resolve consistently
                    for (auto& [nm, v] : named) sc.frees[nm] = v;
                    Term t = detail::term_of(item.at(1), sc);
                    for (auto& [nm, v] : sc.frees) named.emplace(nm, v);
                    pending = t;
                } else if (item.head() == "r") {
                    if (!pending) throw ParseError("(r N) without a preceding (p T)", item.pos);
                    pr.emplace_back(*pending, std::stoi(item.at(1).atom));
                    pending.reset();
                } else {
                    throw ParseError("unknown move item " + item.head(), item.pos);
                }
            }
            if (pending) throw ParseError("(p T) without a following (r N)", c.pos);
        } else {
            throw ParseError("unknown strategy clause " + c.head(), c.pos);
        }
    }
    for (std::size_t i = 0; i < pr.size(); ++i) {
        StrategyMove m;
        m.p = pr[i].first;
        m.attach = pr[i].second;
        auto zi = named.find("z" + std::to_string(i + 1));
        m.reply_var = zi != named.end() ? zi->second : fresh_var("z" + std::to_string(i + 1));
        auto mi = named.find("m" + std::to_string(i + 1));
        if (mi != named.end()) m.move_var = mi->second;
        s.moves.push_back(std::move(m));
    }
    return s;
}

// ── evaluation-game strategies with ancillary information ───────────────────

struct AncillaryStrategy {
    Var input_var;                 // x, bound to n0
    std::vector<Term> round_terms; // one per round, k total
    std::vector<Var> move_vars;    // m1..mk: own earlier moves
    std::vector<Var> reply_vars;   // n1..nk: falsifier replies this game
    std::vector<Var> anc_vars;     // a1..aA: flattened earlier transcripts
    bool clamp_out_of_bounds = false;
};

inline AncillaryStrategy make_ancillary(const Var& input, int k, int anc_arity) {
    AncillaryStrategy s;
    s.input_var = input;
    for (int i = 1; i <= k; ++i) {
        s.move_vars.push_back(fresh_var("m" + std::to_string(i)));
        s.reply_vars.push_back(fresh_var("n" + std::to_string(i)));
    }
    for (int j = 1; j <= anc_arity; ++j) s.anc_vars.push_back(fresh_var("a" + std::to_string(j)));
    s.round_terms.assign(k, Term::zero());
    return s;
}

// ── falsifiers ──────────────────────────────────────────────────────────────
// The falsifier sees the board, the current root-to-node truthifier/falsifier
// move path, and the truthifier's current move, and returns an element.

struct FalsifierContext {
    const Board* board;
    std::vector<Element> path_moves;    // truthifier moves on the path, excluding the current one
    std::vector<Element> path_replies;  // falsifier replies on the path
    Element current_move;
    int round_depth;                    // 1-based depth of the move being answered
    Element bound_cap = -1;             // -1: unbounded; otherwise replies must satisfy leq(n, cap)
};

using Falsifier = std::function<Element(const FalsifierContext&)>;

// Oblivious falsifier given by explicit reply tables: reply at depth j is a
// function of (truthifier path moves m1..m_{j-1}, current move).
struct ObliviousTables {
    int domain = 2;
    std::vector<std::vector<Element>> tables;  // tables[j-1] has domain^j entries

    Element reply(const std::vector<Element>& moves_so_far, Element current) const {
        std::size_t j = moves_so_far.size();  // 0-based depth
        std::size_t idx = 0;
        for (Element m : moves_so_far) idx = idx * domain + static_cast<std::size_t>(m);
        idx = idx * domain + static_cast<std::size_t>(current);
        return tables.at(j).at(idx);
    }
};

inline Falsifier make_oblivious_falsifier(ObliviousTables tabs) {
    return [tabs = std::move(tabs)](const FalsifierContext& c) -> Element {
        Element r = tabs.reply(c.path_moves, c.current_move);
        if (c.bound_cap >= 0 && !c.board->structure.leq(r, c.bound_cap)) return 0;  // clamp
        return r;
    };
}

inline Falsifier make_script_falsifier(std::vector<Element> replies) {
    auto idx = std::make_shared<std::size_t>(0);
    return [replies = std::move(replies), idx](const FalsifierContext& c) -> Element {
        Element r = (*idx < replies.size()) ? replies[(*idx)++] : 0;
        if (c.bound_cap >= 0 && !c.board->structure.leq(r, c.bound_cap)) return 0;
        return r;
    };
}

// Enumerates every oblivious falsifier for k rounds over a domain of size d.
// Count: prod_{j=1..k} d^(d^j); callers keep d and k tiny.
inline std::vector<ObliviousTables> enumerate_oblivious_falsifiers(int d, int k) {
    std::vector<std::size_t> sizes;
    unsigned long long total = 1;
    for (int j = 1; j <= k; ++j) {
        std::size_t cells = 1;
        for (int c = 0; c < j; ++c) cells *= static_cast<std::size_t>(d);
        sizes.push_back(cells);
        for (std::size_t c = 0; c < cells; ++c) {
            total *= static_cast<unsigned long long>(d);
            if (total > 5'000'000ULL) throw CapExceeded("oblivious falsifier enumeration too large");
        }
    }
    std::vector<ObliviousTables> out;
    for (unsigned long long code = 0; code < total; ++code) {
        ObliviousTables t;
        t.domain = d;
        unsigned long long rest = code;
        for (int j = 0; j < k; ++j) {
            std::vector<Element> table(sizes[j]);
            for (auto& e : table) {
                e = static_cast<Element>(rest % d);
                rest /= d;
            }
            t.tables.push_back(std::move(table));
        }
        out.push_back(std::move(t));
    }
    return out;
}

} // namespace gamewit

#endif
