#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "sy/context.hpp"
#include "sy/rational.hpp"

namespace sy {

// Generator symbol, packed so that unsigned comparison is exactly the PBW
// order: tensor leg major, then central symbols first, then level r, then
// row i, then column j. The parity bit sits below everything and never
// affects the order (it is a function of (i,j)).
//
//   bit 30    leg (0 = first tensor factor, 1 = second)
//   bit 29    family (0 = central c^(r), 1 = yangian t_{ij}^(r))
//   28..19    level r (1..1023)
//   18..11    i (1..255)
//   10..3     j
//   bit 0     parity of the symbol
using Sym = std::uint32_t;

inline Sym t_sym(int i, int j, int r, const SuperContext& ctx, int leg = 0) {
    ctx.check_index(i);
    ctx.check_index(j);
    if (r < 1 || r > 1023) throw std::out_of_range("level r out of range");
    std::uint32_t par = static_cast<std::uint32_t>((ctx.parity(i) + ctx.parity(j)) & 1);
    return (static_cast<std::uint32_t>(leg) << 30) | (1u << 29) |
           (static_cast<std::uint32_t>(r) << 19) | (static_cast<std::uint32_t>(i) << 11) |
           (static_cast<std::uint32_t>(j) << 3) | par;
}

inline Sym c_sym(int r, int leg = 0) {
    if (r < 1 || r > 1023) throw std::out_of_range("level r out of range");
    return (static_cast<std::uint32_t>(leg) << 30) | (static_cast<std::uint32_t>(r) << 19);
}

inline int sym_leg(Sym s) { return static_cast<int>((s >> 30) & 1); }
inline bool sym_is_central(Sym s) { return ((s >> 29) & 1) == 0; }
inline int sym_r(Sym s) { return static_cast<int>((s >> 19) & 0x3ff); }
inline int sym_i(Sym s) { return static_cast<int>((s >> 11) & 0xff); }
inline int sym_j(Sym s) { return static_cast<int>((s >> 3) & 0xff); }
inline int sym_parity(Sym s) { return static_cast<int>(s & 1); }

inline std::string sym_string(Sym s) {
    std::string base = sym_is_central(s) ? "c" : "t";
    if (sym_leg(s) == 1) base += "2";
    if (sym_is_central(s)) return base + "[" + std::to_string(sym_r(s)) + "]";
    return base + "[" + std::to_string(sym_i(s)) + "," + std::to_string(sym_j(s)) + "," +
           std::to_string(sym_r(s)) + "]";
}

using Word = std::vector<Sym>;

inline int word_parity(const Word& w) {
    int p = 0;
    for (Sym s : w) p ^= sym_parity(s);
    return p;
}

// Total filtration degree: sum of levels (central symbols included).
inline int word_degree(const Word& w) {
    int d = 0;
    for (Sym s : w) d += sym_r(s);
    return d;
}

// Element of the free Z2-graded algebra on generator symbols over exact
// rationals. Words are stored verbatim; PBW normal form is a separate
// operation (see rewrite.hpp), not a storage invariant.
class NCPoly {
public:
    std::map<Word, Rat> terms;

    NCPoly() = default;
    explicit NCPoly(Rat c) {
        if (!sy::is_zero(c)) terms.emplace(Word{}, std::move(c));
    }
    explicit NCPoly(Sym s, Rat c = Rat(1)) {
        if (!sy::is_zero(c)) terms.emplace(Word{s}, std::move(c));
    }
    explicit NCPoly(Word w, Rat c = Rat(1)) {
        if (!sy::is_zero(c)) terms.emplace(std::move(w), std::move(c));
    }

    static NCPoly zero() { return NCPoly(); }
    static NCPoly one() { return NCPoly(Rat(1)); }

    bool is_structural_zero() const { return terms.empty(); }

    void add_term(const Word& w, const Rat& c) {
        if (sy::is_zero(c)) return;
        auto [it, fresh] = terms.emplace(w, c);
        if (!fresh) {
            it->second += c;
            if (sy::is_zero(it->second)) terms.erase(it);
        }
    }

    NCPoly& operator+=(const NCPoly& o) {
        for (const auto& [w, c] : o.terms) add_term(w, c);
        return *this;
    }
    NCPoly& operator-=(const NCPoly& o) {
        for (const auto& [w, c] : o.terms) add_term(w, -c);
        return *this;
    }
    friend NCPoly operator+(NCPoly a, const NCPoly& b) { return a += b; }
    friend NCPoly operator-(NCPoly a, const NCPoly& b) { return a -= b; }

    NCPoly operator-() const {
        NCPoly r;
        for (const auto& [w, c] : terms) r.terms.emplace(w, -c);
        return r;
    }

    // Free product: concatenates words. Koszul signs belong to the tensor
    // and rewrite layers, not here.
    friend NCPoly operator*(const NCPoly& a, const NCPoly& b) {
        NCPoly r;
        for (const auto& [wa, ca] : a.terms)
            for (const auto& [wb, cb] : b.terms) {
                Word w = wa;
                w.insert(w.end(), wb.begin(), wb.end());
                r.add_term(w, ca * cb);
            }
        return r;
    }
    NCPoly& operator*=(const NCPoly& o) { return *this = *this * o; }

    friend NCPoly operator*(const Rat& c, const NCPoly& a) {
        NCPoly r;
        if (sy::is_zero(c)) return r;
        for (const auto& [w, cc] : a.terms) r.terms.emplace(w, c * cc);
        return r;
    }
    friend NCPoly operator*(const NCPoly& a, const Rat& c) { return c * a; }

    bool operator==(const NCPoly& o) const { return terms == o.terms; }
    bool operator!=(const NCPoly& o) const { return !(*this == o); }

    // Parity of a homogeneous element; throws on a detectably mixed one.
    int parity() const {
        if (terms.empty()) return 0;
        int p = word_parity(terms.begin()->first);
        for (const auto& [w, c] : terms)
            if (word_parity(w) != p) throw std::logic_error("NCPoly: inhomogeneous parity");
        return p;
    }

    bool is_homogeneous() const {
        if (terms.empty()) return true;
        int p = word_parity(terms.begin()->first);
        for (const auto& [w, c] : terms)
            if (word_parity(w) != p) return false;
        return true;
    }

    int max_degree() const {
        int d = 0;
        for (const auto& [w, c] : terms) d = std::max(d, word_degree(w));
        return d;
    }

    // Counit: every generator symbol to zero.
    Rat counit() const {
        auto it = terms.find(Word{});
        return it == terms.end() ? Rat(0) : it->second;
    }

    std::string str() const {
        if (terms.empty()) return "0";
        std::string out;
        bool first = true;
        for (const auto& [w, c] : terms) {
            if (!first) out += " + ";
            first = false;
            out += rat_pretty(c);
            for (Sym s : w) out += "*" + sym_string(s);
        }
        return out;
    }
};

}  // namespace sy
