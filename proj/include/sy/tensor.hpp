#pragma once

// Exact Z2-graded tensor calculus on End(V)^{onm} (x) A for a pluggable
// coefficient ring A. Sparse storage keyed by (row multi-index, column
// multi-index); Koszul signs are computed eagerly at insertion so equality
// is structural. The sign rule is the one induced by
//   (x1 (x) ... (x) xn)(y1 (x) ... (x) yn) = (-1)^{sum_{i<j}|y_i||x_j|} x1y1 (x) ... (x) xnyn
// with the coefficient ring as the last tensor factor.

#include <cstdint>
#include <functional>
#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

#include "sy/context.hpp"
#include "sy/ncpoly.hpp"
#include "sy/perm.hpp"
#include "sy/rational.hpp"

namespace sy {

template <class A>
struct RingTraits;

template <>
struct RingTraits<Rat> {
    static Rat from_rat(const Rat& c) { return c; }
    static bool is_zero(const Rat& c) { return sy::is_zero(c); }
    static int parity(const Rat&) { return 0; }
};

template <>
struct RingTraits<NCPoly> {
    static NCPoly from_rat(const Rat& c) { return NCPoly(c); }
    static bool is_zero(const NCPoly& p) { return p.is_structural_zero(); }
    static int parity(const NCPoly& p) { return p.parity(); }
};

// Multi-index over tensor slots, packed 8 bits per slot (values 1..255).
using MIdx = std::uint64_t;

inline int midx_get(MIdx m, int slot) { return static_cast<int>((m >> (8 * (slot - 1))) & 0xff); }

inline MIdx midx_set(MIdx m, int slot, int v) {
    int sh = 8 * (slot - 1);
    return (m & ~(MIdx(0xff) << sh)) | (MIdx(v) << sh);
}

inline MIdx midx_make(const std::vector<int>& idx) {
    MIdx m = 0;
    for (std::size_t s = 0; s < idx.size(); ++s) m = midx_set(m, static_cast<int>(s) + 1, idx[s]);
    return m;
}

inline std::vector<int> midx_unpack(MIdx m, int arity) {
    std::vector<int> v(arity);
    for (int s = 1; s <= arity; ++s) v[s - 1] = midx_get(m, s);
    return v;
}

inline MIdx midx_erase_slot(MIdx m, int slot, int arity) {
    MIdx out = 0;
    int t = 1;
    for (int s = 1; s <= arity; ++s) {
        if (s == slot) continue;
        out = midx_set(out, t++, midx_get(m, s));
    }
    return out;
}

// Iterates all multi-indices in I^arity, lexicographically.
inline void for_all_midx(const SuperContext& ctx, int arity,
                         const std::function<void(MIdx)>& fn) {
    std::vector<int> idx(arity, 1);
    while (true) {
        fn(midx_make(idx));
        int s = arity - 1;
        while (s >= 0 && idx[s] == ctx.size()) idx[s--] = 1;
        if (s < 0) break;
        ++idx[s];
    }
}

template <class A>
struct SuperTensor {
    int m = 1;  // arity
    std::map<std::pair<MIdx, MIdx>, A> e;

    void add(MIdx r, MIdx c, A v) {
        if (RingTraits<A>::is_zero(v)) return;
        auto key = std::make_pair(r, c);
        auto it = e.find(key);
        if (it == e.end()) {
            e.emplace(key, std::move(v));
        } else {
            it->second = it->second + v;
            if (RingTraits<A>::is_zero(it->second)) e.erase(it);
        }
    }

    bool operator==(const SuperTensor& o) const { return m == o.m && e == o.e; }
    bool operator!=(const SuperTensor& o) const { return !(*this == o); }
    bool is_zero() const { return e.empty(); }
};

template <class A>
using SuperVector = std::map<MIdx, A>;

template <class A>
SuperTensor<A> identity_tensor(const SuperContext& ctx, int m) {
    SuperTensor<A> t;
    t.m = m;
    for_all_midx(ctx, m, [&](MIdx k) { t.e.emplace(std::make_pair(k, k), RingTraits<A>::from_rat(Rat(1))); });
    return t;
}

template <class A>
SuperTensor<A> scalar_tensor(const SuperContext& ctx, int m, const A& a) {
    SuperTensor<A> t;
    t.m = m;
    if (RingTraits<A>::is_zero(a)) return t;
    for_all_midx(ctx, m, [&](MIdx k) { t.e.emplace(std::make_pair(k, k), a); });
    return t;
}

// E_{ij} at the given slot, identity elsewhere.
template <class A>
SuperTensor<A> unit_tensor(const SuperContext& ctx, int m, int i, int j, int slot) {
    ctx.check_index(i);
    ctx.check_index(j);
    if (slot < 1 || slot > m) throw std::out_of_range("unit_tensor: slot");
    SuperTensor<A> t;
    t.m = m;
    for_all_midx(ctx, m - 1, [&](MIdx rest) {
        // weave `rest` around the distinguished slot
        MIdx r = 0, c = 0;
        int src = 1;
        for (int s = 1; s <= m; ++s) {
            if (s == slot) {
                r = midx_set(r, s, i);
                c = midx_set(c, s, j);
            } else {
                int v = midx_get(rest, src++);
                r = midx_set(r, s, v);
                c = midx_set(c, s, v);
            }
        }
        t.e.emplace(std::make_pair(r, c), RingTraits<A>::from_rat(Rat(1)));
    });
    return t;
}

template <class A>
SuperTensor<A> operator+(const SuperTensor<A>& a, const SuperTensor<A>& b) {
    if (a.m != b.m) throw std::invalid_argument("tensor arity mismatch");
    SuperTensor<A> r = a;
    for (const auto& [k, v] : b.e) r.add(k.first, k.second, v);
    return r;
}

template <class A>
SuperTensor<A> operator-(const SuperTensor<A>& a, const SuperTensor<A>& b) {
    if (a.m != b.m) throw std::invalid_argument("tensor arity mismatch");
    SuperTensor<A> r = a;
    for (const auto& [k, v] : b.e) r.add(k.first, k.second, A() - v);
    return r;
}

template <class A>
SuperTensor<A> scale(const SuperTensor<A>& a, const A& c) {
    SuperTensor<A> r;
    r.m = a.m;
    for (const auto& [k, v] : a.e) r.add(k.first, k.second, c * v);
    return r;
}

namespace detail {

// Per-slot parity bits of a tensor entry: bit s-1 = |r_s| + |c_s| mod 2.
inline std::uint32_t entry_parities(const SuperContext& ctx, MIdx r, MIdx c, int m) {
    std::uint32_t bits = 0;
    for (int s = 1; s <= m; ++s) {
        int p = (ctx.parity(midx_get(r, s)) + ctx.parity(midx_get(c, s))) & 1;
        bits |= static_cast<std::uint32_t>(p) << (s - 1);
    }
    return bits;
}

// Koszul exponent sum_{a<b<=m} q_a p_b  (mod 2) for slot-parity bitmasks.
inline int cross_sign_exponent(std::uint32_t q, std::uint32_t p, int m) {
    int e = 0;
    for (int a = 1; a < m; ++a)
        if ((q >> (a - 1)) & 1) e ^= __builtin_parity(p >> a);
    return e & 1;
}

}  // namespace detail

template <class A>
SuperTensor<A> mul(const SuperContext& ctx, const SuperTensor<A>& x, const SuperTensor<A>& y) {
    if (x.m != y.m) throw std::invalid_argument("tensor arity mismatch");
    const int m = x.m;
    // group y entries by row multi-index
    std::map<MIdx, std::vector<std::pair<MIdx, const A*>>> yrows;
    for (const auto& [k, v] : y.e) yrows[k.first].emplace_back(k.second, &v);

    SuperTensor<A> out;
    out.m = m;
    for (const auto& [k, a] : x.e) {
        auto it = yrows.find(k.second);
        if (it == yrows.end()) continue;
        std::uint32_t p = detail::entry_parities(ctx, k.first, k.second, m);
        int pa = RingTraits<A>::parity(a);
        for (const auto& [d, bptr] : it->second) {
            std::uint32_t q = detail::entry_parities(ctx, k.second, d, m);
            int ex = detail::cross_sign_exponent(q, p, m) ^ (pa & __builtin_parity(q));
            A val = a * (*bptr);
            if (ex) val = A() - val;
            out.add(k.first, d, std::move(val));
        }
    }
    return out;
}

// Action on V^{onm} (x) A, vectors stored as e_k (x) coefficient.
template <class A>
SuperVector<A> apply_to_vector(const SuperContext& ctx, const SuperTensor<A>& x,
                               const SuperVector<A>& v) {
    const int m = x.m;
    SuperVector<A> out;
    for (const auto& [k, a] : x.e) {
        auto it = v.find(k.second);
        if (it == v.end()) continue;
        // sign: each slot factor E_{r_s c_s} crosses e_{k_1}..e_{k_{s-1}},
        // the coefficient crosses the whole basis vector
        std::uint32_t p = detail::entry_parities(ctx, k.first, k.second, m);
        int ex = 0, pref = 0, tot = 0;
        for (int s = 1; s <= m; ++s) tot ^= ctx.parity(midx_get(k.second, s));
        for (int s = 1; s <= m; ++s) {
            if ((p >> (s - 1)) & 1) ex ^= pref;
            pref ^= ctx.parity(midx_get(k.second, s));
        }
        ex ^= RingTraits<A>::parity(a) & tot;
        A val = a * it->second;
        if (ex) val = A() - val;
        if (RingTraits<A>::is_zero(val)) continue;
        auto [jt, fresh] = out.emplace(k.first, val);
        if (!fresh) {
            jt->second = jt->second + val;
            if (RingTraits<A>::is_zero(jt->second)) out.erase(jt);
        }
    }
    return out;
}

// P_{ab} = sum_{ij} (-1)^{|j|} E_{ij}(a) E_{ji}(b).
template <class A>
SuperTensor<A> super_permutation(const SuperContext& ctx, int m, int a, int b) {
    if (!(1 <= a && a < b && b <= m)) throw std::invalid_argument("super_permutation: slots");
    SuperTensor<A> t;
    t.m = m;
    for_all_midx(ctx, m - 2, [&](MIdx rest) {
        for (int i = 1; i <= ctx.size(); ++i)
            for (int j = 1; j <= ctx.size(); ++j) {
                MIdx r = 0, c = 0;
                int src = 1;
                for (int s = 1; s <= m; ++s) {
                    int rv, cv;
                    if (s == a) {
                        rv = i;
                        cv = j;
                    } else if (s == b) {
                        rv = j;
                        cv = i;
                    } else {
                        rv = cv = midx_get(rest, src++);
                    }
                    r = midx_set(r, s, rv);
                    c = midx_set(c, s, cv);
                }
                Rat coef = ctx.parity(j) ? Rat(-1) : Rat(1);
                t.add(r, c, RingTraits<A>::from_rat(coef));
            }
    });
    return t;
}

// R_{ab}(arg) = 1 - arg^{-1} P_{ab} at an exact rational argument.
template <class A>
SuperTensor<A> r_matrix(const SuperContext& ctx, int m, int a, int b, const Rat& arg) {
    if (sy::is_zero(arg)) throw std::invalid_argument("r_matrix: zero argument");
    SuperTensor<A> p = super_permutation<A>(ctx, m, a, b);
    return identity_tensor<A>(ctx, m) - scale(p, RingTraits<A>::from_rat(Rat(1) / arg));
}

// Graded transposition on one slot: E_{ij} -> (-1)^{|i||j|+|i|} E_{ji},
// equivalently (X^t)_{ij} = (-1)^{|i||j|+|j|} X_{ji} entrywise.
template <class A>
SuperTensor<A> partial_transpose_t(const SuperContext& ctx, const SuperTensor<A>& x, int slot) {
    SuperTensor<A> out;
    out.m = x.m;
    for (const auto& [k, a] : x.e) {
        int i = midx_get(k.first, slot), j = midx_get(k.second, slot);
        int ex = (ctx.parity(i) & ctx.parity(j)) ^ ctx.parity(i);
        A val = ex ? A() - a : a;
        out.add(midx_set(k.first, slot, j), midx_set(k.second, slot, i), std::move(val));
    }
    return out;
}

// iota on one slot (G0 convention): E_{ij} -> (-1)^{|j'||i'|+|j'|} theta_{j'} theta_{i'} E_{j'i'}.
// Entrywise this realizes x^iota_{ij} = (-1)^{|i||j|+|i|} theta_i theta_j x_{j'i'}.
template <class A>
SuperTensor<A> partial_transpose_iota(const SuperContext& ctx, const SuperTensor<A>& x, int slot) {
    SuperTensor<A> out;
    out.m = x.m;
    for (const auto& [k, a] : x.e) {
        int i = midx_get(k.first, slot), j = midx_get(k.second, slot);
        int ni = ctx.prime(j), nj = ctx.prime(i);
        int ex = (ctx.parity(ni) & ctx.parity(nj)) ^ ctx.parity(ni);
        int th = ctx.theta(ni) * ctx.theta(nj);
        A val = (ex ? A() - a : a);
        if (th < 0) val = A() - val;
        out.add(midx_set(k.first, slot, ni), midx_set(k.second, slot, nj), std::move(val));
    }
    return out;
}

// Partial supertrace on one slot: E_{ij} -> (-1)^{|i|} delta_{ij}; arity drops by one.
template <class A>
SuperTensor<A> partial_supertrace(const SuperContext& ctx, const SuperTensor<A>& x, int slot) {
    if (x.m < 1) throw std::invalid_argument("partial_supertrace: arity");
    SuperTensor<A> out;
    out.m = x.m - 1;
    for (const auto& [k, a] : x.e) {
        int i = midx_get(k.first, slot), j = midx_get(k.second, slot);
        if (i != j) continue;
        A val = ctx.parity(i) ? A() - a : a;
        out.add(midx_erase_slot(k.first, slot, x.m), midx_erase_slot(k.second, slot, x.m),
                std::move(val));
    }
    return out;
}

template <class A>
A full_supertrace(const SuperContext& ctx, const SuperTensor<A>& x) {
    SuperTensor<A> t = x;
    while (t.m > 0) t = partial_supertrace(ctx, t, t.m);
    A r{};
    for (const auto& [k, a] : t.e) r = r + a;  // single (0,0) cell
    return r;
}

// pi_m(sigma) on the given slots: product of P's along a reduced word.
template <class A>
SuperTensor<A> permutation_action(const SuperContext& ctx, int m, const std::vector<int>& slots,
                                  const Permutation& sigma) {
    SuperTensor<A> t = identity_tensor<A>(ctx, m);
    for (int i : reduced_word(sigma)) {
        int a = slots[i - 1], b = slots[i];
        t = mul(ctx, t, super_permutation<A>(ctx, m, std::min(a, b), std::max(a, b)));
    }
    return t;
}

// G^{(k)} / H^{(k)} acting on the given slots of an m-slot space.
template <class A>
SuperTensor<A> antisymmetrizer(const SuperContext& ctx, int m, const std::vector<int>& slots) {
    SuperTensor<A> t;
    t.m = m;
    enumerate(static_cast<int>(slots.size()), [&](const Permutation& s) {
        SuperTensor<A> term = permutation_action<A>(ctx, m, slots, s);
        if (sign(s) < 0) term = scale(term, RingTraits<A>::from_rat(Rat(-1)));
        t = t + term;
    });
    return t;
}

template <class A>
SuperTensor<A> symmetrizer(const SuperContext& ctx, int m, const std::vector<int>& slots) {
    SuperTensor<A> t;
    t.m = m;
    enumerate(static_cast<int>(slots.size()), [&](const Permutation& s) {
        t = t + permutation_action<A>(ctx, m, slots, s);
    });
    return t;
}

// Fusion product R(u_1,...,u_k) = R_{k-1,k} (R_{k-2,k} R_{k-2,k-1}) ... (R_{1,k} ... R_{1,2})
// on the given slots, arguments u_i - u_j.
template <class A>
SuperTensor<A> fused_r(const SuperContext& ctx, int m, const std::vector<int>& slots,
                       const std::vector<Rat>& u) {
    const int k = static_cast<int>(slots.size());
    SuperTensor<A> t = identity_tensor<A>(ctx, m);
    for (int i = k - 1; i >= 1; --i)
        for (int j = k; j > i; --j)
            t = mul(ctx, t, r_matrix<A>(ctx, m, std::min(slots[i - 1], slots[j - 1]),
                                        std::max(slots[i - 1], slots[j - 1]), u[i - 1] - u[j - 1]));
    return t;
}

// Projection of one slot onto the even (|i|=0) or odd subspace.
template <class A>
SuperTensor<A> slot_projector(const SuperContext& ctx, int m, int slot, int wanted_parity) {
    SuperTensor<A> t;
    t.m = m;
    for_all_midx(ctx, m, [&](MIdx k) {
        if (ctx.parity(midx_get(k, slot)) == wanted_parity)
            t.e.emplace(std::make_pair(k, k), RingTraits<A>::from_rat(Rat(1)));
    });
    return t;
}

// The block projector: even projectors on slots 1..p, odd on slots p+1..p+q.
template <class A>
SuperTensor<A> block_projector(const SuperContext& ctx, int m, int p, int q) {
    SuperTensor<A> t;
    t.m = m;
    for_all_midx(ctx, m, [&](MIdx k) {
        for (int s = 1; s <= p + q; ++s) {
            int want = s <= p ? 0 : 1;
            if (ctx.parity(midx_get(k, s)) != want) return;
        }
        t.e.emplace(std::make_pair(k, k), RingTraits<A>::from_rat(Rat(1)));
    });
    return t;
}

template <class A>
SuperVector<A> basis_vector(const std::vector<int>& idx) {
    SuperVector<A> v;
    v.emplace(midx_make(idx), RingTraits<A>::from_rat(Rat(1)));
    return v;
}

template <class A>
SuperTensor<A> convert_tensor(const SuperTensor<Rat>& x, const std::function<A(const Rat&)>& f) {
    SuperTensor<A> out;
    out.m = x.m;
    for (const auto& [k, a] : x.e) out.add(k.first, k.second, f(a));
    return out;
}

}  // namespace sy
