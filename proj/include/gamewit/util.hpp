// Shared plumbing: s-expression reader, fresh-id counter, parallel_for.

#ifndef GAMEWIT_UTIL_HPP
#define GAMEWIT_UTIL_HPP

#include <atomic>
#include <cstddef>
#include <functional>
#include <memory>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace gamewit {

// ── errors ──────────────────────────────────────────────────────────────────

struct ParseError : std::runtime_error {
    std::size_t pos;
    ParseError(std::string msg, std::size_t at)
        : std::runtime_error(msg + " (at offset " + std::to_string(at) + ")"), pos(at) {}
};

struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct CapExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// ── fresh variable ids ──────────────────────────────────────────────────────
// Globally unique, monotone, thread-safe. "Fresh" always means strictly
// greater than every id seen so far.

inline std::atomic<long long>& fresh_counter() {
    static std::atomic<long long> c{1};
    return c;
}

inline long long next_fresh_id() { return fresh_counter().fetch_add(1); }

// Ensure future fresh ids exceed `seen` (used by parsers reading explicit ids).
inline void bump_fresh_id(long long seen) {
    auto& c = fresh_counter();
    long long cur = c.load();
    while (cur <= seen && !c.compare_exchange_weak(cur, seen + 1)) {}
}

// ── s-expressions ───────────────────────────────────────────────────────────

struct Sexpr {
    bool is_atom = false;
    std::string atom;                 // valid when is_atom
    std::vector<Sexpr> items;         // valid when !is_atom
    std::size_t pos = 0;              // source offset, for error messages

    const Sexpr& at(std::size_t i) const {
        if (is_atom || i >= items.size())
            throw ParseError("expected a list with at least " + std::to_string(i + 1) + " items", pos);
        return items[i];
    }
    std::size_t size() const { return is_atom ? 0 : items.size(); }
    const std::string& head() const {
        if (is_atom) return atom;
        if (items.empty() || !items[0].is_atom) throw ParseError("expected a head atom", pos);
        return items[0].atom;
    }
};

namespace detail {

inline void skip_ws(const std::string& s, std::size_t& i) {
    while (i < s.size()) {
        if (std::isspace(static_cast<unsigned char>(s[i]))) { ++i; continue; }
        if (s[i] == ';') {                       // line comment
            while (i < s.size() && s[i] != '\n') ++i;
            continue;
        }
        break;
    }
}

inline Sexpr read_sexpr(const std::string& s, std::size_t& i) {
    skip_ws(s, i);
    if (i >= s.size()) throw ParseError("unexpected end of input", i);
    Sexpr e;
    e.pos = i;
    if (s[i] == '(') {
        ++i;
        while (true) {
            skip_ws(s, i);
            if (i >= s.size()) throw ParseError("unbalanced '('", e.pos);
            if (s[i] == ')') { ++i; break; }
            e.items.push_back(read_sexpr(s, i));
        }
        return e;
    }
    if (s[i] == ')') throw ParseError("unexpected ')'", i);
    e.is_atom = true;
    while (i < s.size() && !std::isspace(static_cast<unsigned char>(s[i])) && s[i] != '(' && s[i] != ')' &&
           s[i] != ';')
        e.atom.push_back(s[i++]);
    return e;
}

} // namespace detail

inline Sexpr parse_sexpr(const std::string& text) {
    std::size_t i = 0;
    Sexpr e = detail::read_sexpr(text, i);
    detail::skip_ws(text, i);
    if (i != text.size()) throw ParseError("trailing input after expression", i);
    return e;
}

inline std::vector<Sexpr> parse_sexprs(const std::string& text) {
    std::vector<Sexpr> out;
    std::size_t i = 0;
    while (true) {
        detail::skip_ws(text, i);
        if (i >= text.size()) break;
        out.push_back(detail::read_sexpr(text, i));
    }
    return out;
}

// ── parallel_for ────────────────────────────────────────────────────────────
// Static block partition over [0, n); results joined deterministically by the
// caller (workers write disjoint slots).

inline void parallel_for(std::size_t n, unsigned jobs, const std::function<void(std::size_t)>& body) {
    if (n == 0) return;
    if (jobs == 0) jobs = std::thread::hardware_concurrency();
    if (jobs <= 1 || n == 1) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    jobs = static_cast<unsigned>(std::min<std::size_t>(jobs, n));
    std::vector<std::thread> ws;
    ws.reserve(jobs);
    std::atomic<std::size_t> next{0};
    std::exception_ptr err;
    std::atomic<bool> failed{false};
    for (unsigned w = 0; w < jobs; ++w) {
        ws.emplace_back([&] {
            std::size_t i;
            while ((i = next.fetch_add(1)) < n) {
                if (failed.load()) return;
                try {
                    body(i);
                } catch (...) {
                    if (!failed.exchange(true)) err = std::current_exception();
                    return;
                }
            }
        });
    }
    for (auto& t : ws) t.join();
    if (failed.load() && err) std::rethrow_exception(err);
}

} // namespace gamewit

#endif
