// Finite first-order structures, boards, and Tarskian evaluation.
//
// A structure interprets every symbol of a signature by a total table over
// the domain 0..d-1. The builtins 0, 1, leq, = (and the if-then-else
// vocabulary ite/eq01/leq01, when declared) default to their standard tables
// but can be overridden entry by entry.

#ifndef GAMEWIT_STRUCTURE_HPP
#define GAMEWIT_STRUCTURE_HPP

#include <cstdint>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "gamewit/fol.hpp"
#include "gamewit/transform.hpp"

namespace gamewit {

using Element = int;

struct Assignment {
    std::map<long long, Element> vals;  // variable id -> element

    Element get(const Var& v) const {
        auto it = vals.find(v.id);
        if (it == vals.end()) throw InputError("unassigned variable " + v.name + "?" + std::to_string(v.id));
        return it->second;
    }
    void set(const Var& v, Element e) { vals[v.id] = e; }
    void erase(const Var& v) { vals.erase(v.id); }
};

class FiniteStructure {
public:
    FiniteStructure() = default;
    FiniteStructure(Signature sig, int domain_size) : sig_(std::move(sig)), d_(domain_size) {
        if (d_ < 1) throw InputError("domain size must be at least 1");
        for (const auto& [name, arity] : sig_.functions())
            fun_tables_[name] = default_function_table(name, arity);
        for (const auto& [name, arity] : sig_.relations())
            rel_tables_[name] = default_relation_table(name, arity);
    }

    const Signature& signature() const { return sig_; }
    int domain_size() const { return d_; }

    std::vector<Element>& function_table(const std::string& name) { return fun_tables_.at(name); }
    std::vector<std::uint8_t>& relation_table(const std::string& name) { return rel_tables_.at(name); }
    const std::vector<Element>& function_table(const std::string& name) const { return fun_tables_.at(name); }
    const std::vector<std::uint8_t>& relation_table(const std::string& name) const {
        return rel_tables_.at(name);
    }

    std::size_t index_of(const std::vector<Element>& args) const {
        std::size_t idx = 0;
        for (Element a : args) {
            if (a < 0 || a >= d_) throw InputError("element out of domain");
            idx = idx * static_cast<std::size_t>(d_) + static_cast<std::size_t>(a);
        }
        return idx;
    }

    Element apply(const std::string& fn, const std::vector<Element>& args) const {
        return fun_tables_.at(fn)[index_of(args)];
    }
    bool holds(const std::string& rel, const std::vector<Element>& args) const {
        return rel_tables_.at(rel)[index_of(args)] != 0;
    }
    bool leq(Element a, Element b) const { return holds("leq", {a, b}); }

    void set_function(const std::string& fn, const std::vector<Element>& args, Element value) {
        if (value < 0 || value >= d_) throw InputError("function value out of domain");
        fun_tables_.at(fn)[index_of(args)] = value;
    }
    void set_relation(const std::string& rel, const std::vector<Element>& args, bool value) {
        rel_tables_.at(rel)[index_of(args)] = value ? 1 : 0;
    }

    static std::size_t table_size(int d, int arity) {
        std::size_t n = 1;
        for (int i = 0; i < arity; ++i) n *= static_cast<std::size_t>(d);
        return n;
    }

private:
    std::vector<Element> default_function_table(const std::string& name, int arity) const {
        std::size_t n = table_size(d_, arity);
        std::vector<Element> t(n, 0);
        if (name == "1" && arity == 0) t[0] = d_ > 1 ? 1 : 0;
        if (name == "ite" && arity == 3) {
            for (Element c = 0; c < d_; ++c)
                for (Element a = 0; a < d_; ++a)
                    for (Element b = 0; b < d_; ++b)
                        t[(static_cast<std::size_t>(c) * d_ + a) * d_ + b] = c == 1 ? a : b;
        }
        // eq01 / leq01 defaults are derived from = / leq below once those exist;
        // they are rebuilt by sync_ite_tables().
        return t;
    }
    std::vector<std::uint8_t> default_relation_table(const std::string& name, int arity) const {
        std::size_t n = table_size(d_, arity);
        std::vector<std::uint8_t> t(n, 0);
        if ((name == "leq" || name == "=") && arity == 2) {
            for (Element a = 0; a < d_; ++a)
                for (Element b = 0; b < d_; ++b)
                    t[static_cast<std::size_t>(a) * d_ + b] =
                        name == "leq" ? (a <= b ? 1 : 0) : (a == b ? 1 : 0);
        }
        return t;
    }

public:
    // Recomputes eq01/leq01 from the current = /leq tables (call after edits).
    void sync_ite_tables() {
        if (fun_tables_.count("eq01")) {
            auto& t = fun_tables_["eq01"];
            for (Element a = 0; a < d_; ++a)
                for (Element b = 0; b < d_; ++b)
                    t[static_cast<std::size_t>(a) * d_ + b] = a == b ? (d_ > 1 ? 1 : 0) : 0;
        }
        if (fun_tables_.count("leq01")) {
            auto& t = fun_tables_["leq01"];
            for (Element a = 0; a < d_; ++a)
                for (Element b = 0; b < d_; ++b)
                    t[static_cast<std::size_t>(a) * d_ + b] = leq(a, b) ? (d_ > 1 ? 1 : 0) : 0;
        }
    }

private:
    Signature sig_;
    int d_ = 0;
    std::map<std::string, std::vector<Element>> fun_tables_;
    std::map<std::string, std::vector<std::uint8_t>> rel_tables_;
};

struct Board {
    FiniteStructure structure;
    Element n0 = 0;
};

// ── evaluation ──────────────────────────────────────────────────────────────

inline Element eval_term(const FiniteStructure& s, const Term& t, const Assignment& a) {
    if (t.is_var()) return a.get(t.as_var());
    std::vector<Element> args;
    args.reserve(t.args().size());
    for (const auto& u : t.args()) args.push_back(eval_term(s, u, a));
    return s.apply(t.fn(), args);
}

inline bool eval_formula(const FiniteStructure& s, const Formula& f, Assignment& a) {
    switch (f.kind()) {
        case Kind::Atom: {
            std::vector<Element> args;
            args.reserve(f.args().size());
            for (const auto& t : f.args()) args.push_back(eval_term(s, t, a));
            return s.holds(f.rel(), args);
        }
        case Kind::Bot: return false;
        case Kind::Not: return !eval_formula(s, f.child(), a);
        case Kind::Imp: return !eval_formula(s, f.child(0), a) || eval_formula(s, f.child(1), a);
        case Kind::And: return eval_formula(s, f.child(0), a) && eval_formula(s, f.child(1), a);
        case Kind::Or: return eval_formula(s, f.child(0), a) || eval_formula(s, f.child(1), a);
        case Kind::Forall:
        case Kind::Exists: {
            bool ex = f.kind() == Kind::Exists;
            Element cap = -1;
            if (f.bound()) cap = eval_term(s, *f.bound(), a);
            bool result = !ex;
            for (Element e = 0; e < s.domain_size(); ++e) {
                if (f.bound() && !s.leq(e, cap)) continue;
                a.set(f.qvar(), e);
                bool v = eval_formula(s, f.child(), a);
                if (ex && v) { result = true; break; }
                if (!ex && !v) { result = false; break; }
            }
            a.erase(f.qvar());
            return result;
        }
    }
    return false;
}

inline bool eval_formula(const FiniteStructure& s, const Formula& f, const Assignment& a) {
    Assignment copy = a;
    return eval_formula(s, f, copy);
}

inline bool eval_sentence(const FiniteStructure& s, const Formula& f) {
    Assignment a;
    return eval_formula(s, f, a);
}

// ── universal axioms ────────────────────────────────────────────────────────

// True iff every axiom (forall-prefixed, quantifier-free matrix) holds under
// all assignments to its free and universally quantified variables.
inline bool check_universal_axioms(const FiniteStructure& s, const std::vector<Formula>& axioms) {
    for (const Formula& ax : axioms) {
        if (!is_universal_formula(ax)) throw InputError("axiom is not universal: " + print_formula(ax));
        std::vector<Var> vars;
        const Formula* g = &ax;
        while (g->kind() == Kind::Forall) {
            vars.push_back(g->qvar());
            g = &g->child();
        }
        for (const Var& v : free_vars(ax)) vars.push_back(v);
        std::size_t total = FiniteStructure::table_size(s.domain_size(), static_cast<int>(vars.size()));
        for (std::size_t it = 0; it < total; ++it) {
            Assignment a;
            std::size_t rest = it;
            for (const Var& v : vars) {
                a.set(v, static_cast<Element>(rest % s.domain_size()));
                rest /= s.domain_size();
            }
            if (!eval_formula(s, *g, a)) return false;
        }
    }
    return true;
}

// ── structure file format ───────────────────────────────────────────────────
//   domain 3
//   n0 1
//   f 0 1 -> 2
//   P 0 1 -> true

inline std::string save_structure(const FiniteStructure& s, std::optional<Element> n0 = std::nullopt) {
    std::ostringstream os;
    os << "domain " << s.domain_size() << "\n";
    if (n0) os << "n0 " << *n0 << "\n";
    for (const auto& [name, arity] : s.signature().functions()) {
        std::size_t n = FiniteStructure::table_size(s.domain_size(), arity);
        for (std::size_t idx = 0; idx < n; ++idx) {
            os << name;
            std::size_t rest = idx;
            std::vector<Element> args(arity);
            for (int i = arity - 1; i >= 0; --i) {
                args[i] = static_cast<Element>(rest % s.domain_size());
                rest /= s.domain_size();
            }
            for (Element e : args) os << ' ' << e;
            os << " -> " << s.function_table(name)[idx] << "\n";
        }
    }
    for (const auto& [name, arity] : s.signature().relations()) {
        std::size_t n = FiniteStructure::table_size(s.domain_size(), arity);
        for (std::size_t idx = 0; idx < n; ++idx) {
            os << name;
            std::size_t rest = idx;
            std::vector<Element> args(arity);
            for (int i = arity - 1; i >= 0; --i) {
                args[i] = static_cast<Element>(rest % s.domain_size());
                rest /= s.domain_size();
            }
            for (Element e : args) os << ' ' << e;
            os << " -> " << (s.relation_table(name)[idx] ? "true" : "false") << "\n";
        }
    }
    return os.str();
}

// Loads a structure; symbols not in `sig` are added with the arity seen in the
// file. Returns the structure and the board element (0 when no n0 line).
inline Board load_board(const std::string& text, Signature sig) {
    std::istringstream is(text);
    std::string line;
    int d = -1;
    Element n0 = 0;
    struct Entry {
        std::string sym;
        std::vector<Element> args;
        std::string value;
    };
    std::vector<Entry> entries;
    while (std::getline(is, line)) {
        auto h = line.find('#');
        if (h != std::string::npos) line = line.substr(0, h);
        std::istringstream ls(line);
        std::string tok;
        if (!(ls >> tok)) continue;
        if (tok == "domain") {
            if (!(ls >> d) || d < 1) throw InputError("bad domain line: " + line);
            continue;
        }
        if (tok == "n0") {
            if (!(ls >> n0)) throw InputError("bad n0 line: " + line);
            continue;
        }
        Entry e;
        e.sym = tok;
        std::string w;
        std::vector<std::string> words;
        while (ls >> w) words.push_back(w);
        if (words.size() < 2 || words[words.size() - 2] != "->")
            throw InputError("bad table line: " + line);
        for (std::size_t i = 0; i + 2 < words.size(); ++i) e.args.push_back(std::stoi(words[i]));
        e.value = words.back();
        entries.push_back(std::move(e));
    }
    if (d < 0) throw InputError("structure file has no domain line");
    for (const auto& e : entries) {
        bool rel = e.value == "true" || e.value == "false";
        if (rel) {
            if (!sig.has_relation(e.sym)) sig.add_relation(e.sym, static_cast<int>(e.args.size()));
        } else {
            if (!sig.has_function(e.sym)) sig.add_function(e.sym, static_cast<int>(e.args.size()));
        }
    }
    Board b;
    b.structure = FiniteStructure(sig, d);
    b.n0 = n0;
    if (n0 < 0 || n0 >= d) throw InputError("n0 out of domain");
    for (const auto& e : entries) {
        if (e.value == "true" || e.value == "false")
            b.structure.set_relation(e.sym, e.args, e.value == "true");
        else
            b.structure.set_function(e.sym, e.args, std::stoi(e.value));
    }
    b.structure.sync_ite_tables();
    return b;
}

} // namespace gamewit

#endif
