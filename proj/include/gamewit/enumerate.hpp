// Exhaustive enumeration of finite structures over a signature.
//
// Builtin symbols (0, 1, leq, =, ite, eq01, leq01) are pinned to their
// standard tables; every other symbol's table varies in lexicographic order.
// Yields exactly the structures satisfying the given universal axioms.

#ifndef GAMEWIT_ENUMERATE_HPP
#define GAMEWIT_ENUMERATE_HPP

#include <optional>
#include <string>
#include <vector>

#include "gamewit/structure.hpp"

namespace gamewit {

inline bool is_pinned_symbol(const std::string& name) {
    return name == "0" || name == "1" || name == "leq" || name == "=" || name == "ite" ||
           name == "eq01" || name == "leq01";
}

class StructureEnumerator {
public:
    StructureEnumerator(Signature sig, int d, std::vector<Formula> axioms,
                        unsigned long long cap = 10'000'000ULL)
        : proto_(sig, d), axioms_(std::move(axioms)), d_(d) {
        unsigned long long candidates = 1;
        for (const auto& [name, arity] : sig.functions()) {
            if (is_pinned_symbol(name)) continue;
            std::size_t cells = FiniteStructure::table_size(d, arity);
            fun_syms_.push_back({name, cells});
            for (std::size_t c = 0; c < cells; ++c) {
                candidates *= static_cast<unsigned long long>(d);
                if (candidates > cap) throw CapExceeded("structure enumeration exceeds cap");
            }
        }
        for (const auto& [name, arity] : sig.relations()) {
            if (is_pinned_symbol(name)) continue;
            std::size_t cells = FiniteStructure::table_size(d, arity);
            rel_syms_.push_back({name, cells});
            for (std::size_t c = 0; c < cells; ++c) {
                candidates *= 2;
                if (candidates > cap) throw CapExceeded("structure enumeration exceeds cap");
            }
        }
        candidate_count_ = candidates;
    }

    unsigned long long candidate_count() const { return candidate_count_; }

    // Next structure satisfying the axioms, or nullopt when exhausted.
    std::optional<FiniteStructure> next() {
        while (cursor_ < candidate_count_) {
            FiniteStructure s = proto_;
            unsigned long long rest = cursor_++;
            for (const auto& [name, cells] : fun_syms_) {
                auto& t = s.function_table(name);
                for (std::size_t c = cells; c-- > 0;) {
                    t[c] = static_cast<Element>(rest % d_);
                    rest /= d_;
                }
            }
            for (const auto& [name, cells] : rel_syms_) {
                auto& t = s.relation_table(name);
                for (std::size_t c = cells; c-- > 0;) {
                    t[c] = static_cast<std::uint8_t>(rest % 2);
                    rest /= 2;
                }
            }
            if (check_universal_axioms(s, axioms_)) return s;
        }
        return std::nullopt;
    }

private:
    FiniteStructure proto_;
    std::vector<Formula> axioms_;
    int d_;
    std::vector<std::pair<std::string, std::size_t>> fun_syms_;
    std::vector<std::pair<std::string, std::size_t>> rel_syms_;
    unsigned long long candidate_count_ = 0;
    unsigned long long cursor_ = 0;
};

inline std::vector<FiniteStructure> enumerate_structures(const Signature& sig, int d,
                                                         const std::vector<Formula>& axioms,
                                                         unsigned long long cap = 10'000'000ULL) {
    StructureEnumerator en(sig, d, axioms, cap);
    std::vector<FiniteStructure> out;
    while (auto s = en.next()) out.push_back(std::move(*s));
    return out;
}

} // namespace gamewit

#endif
