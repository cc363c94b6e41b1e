#pragma once

// Two-variable Laurent objects in (u^{-1}, v^{-1}) with NCPoly coefficients,
// used as the carrier for denominator-cleared two-variable relations. Exactness
// windows are rectangles [loU..wmU] x [loV..wmV]; single-variable series embed
// with an infinite window in the other direction, and cleared R-factors are
// Laurent polynomials with infinite windows. Window arithmetic is propagated,
// never hardcoded.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sy/rewrite.hpp"
#include "sy/series.hpp"

namespace sy {

struct BiLaurent {
    std::map<std::pair<int, int>, NCPoly> c;  // (a,b) -> coeff of u^{-a} v^{-b}
    int loU = 0, loV = 0;
    int wmU = WM_INF, wmV = WM_INF;

    static BiLaurent from_rat(const Rat& v) {
        BiLaurent b;
        if (!sy::is_zero(v)) b.c.emplace(std::make_pair(0, 0), NCPoly(v));
        return b;
    }
    // monomial coeff * u^{-a} v^{-b}
    static BiLaurent term(int a, int bb, NCPoly p) {
        BiLaurent b;
        b.loU = std::min(0, a);
        b.loV = std::min(0, bb);
        if (!p.is_structural_zero()) b.c.emplace(std::make_pair(a, bb), std::move(p));
        return b;
    }
    static BiLaurent from_series(const TruncSeries& s, bool u_side) {
        BiLaurent b;
        if (u_side) {
            b.loU = s.lo;
            b.wmU = s.wm;
        } else {
            b.loV = s.lo;
            b.wmV = s.wm;
        }
        for (const auto& [k, p] : s.c) b.c.emplace(u_side ? std::make_pair(k, 0) : std::make_pair(0, k), p);
        return b;
    }

    bool structurally_zero() const { return c.empty(); }

    void add_term(int a, int bb, const NCPoly& p) {
        if (p.is_structural_zero() || a > wmU || bb > wmV) return;
        loU = std::min(loU, a);
        loV = std::min(loV, bb);
        auto [it, fresh] = c.emplace(std::make_pair(a, bb), p);
        if (!fresh) {
            it->second += p;
            if (it->second.is_structural_zero()) c.erase(it);
        }
    }

    friend BiLaurent operator+(const BiLaurent& x, const BiLaurent& y) {
        BiLaurent r;
        r.loU = std::min(x.loU, y.loU);
        r.loV = std::min(x.loV, y.loV);
        r.wmU = std::min(x.wmU, y.wmU);
        r.wmV = std::min(x.wmV, y.wmV);
        for (const auto& [k, p] : x.c)
            if (k.first <= r.wmU && k.second <= r.wmV) r.add_term(k.first, k.second, p);
        for (const auto& [k, p] : y.c)
            if (k.first <= r.wmU && k.second <= r.wmV) r.add_term(k.first, k.second, p);
        return r;
    }
    BiLaurent negated() const {
        BiLaurent r = *this;
        for (auto& [k, p] : r.c) p = -p;
        return r;
    }
    friend BiLaurent operator-(const BiLaurent& x, const BiLaurent& y) { return x + y.negated(); }

    friend BiLaurent operator*(const BiLaurent& x, const BiLaurent& y) {
        BiLaurent r;
        r.loU = x.loU + y.loU;
        r.loV = x.loV + y.loV;
        r.wmU = std::min(wm_add(x.wmU, y.loU), wm_add(y.wmU, x.loU));
        r.wmV = std::min(wm_add(x.wmV, y.loV), wm_add(y.wmV, x.loV));
        for (const auto& [ka, pa] : x.c)
            for (const auto& [kb, pb] : y.c) {
                int a = ka.first + kb.first, bb = ka.second + kb.second;
                if (a > r.wmU || bb > r.wmV) continue;
                r.add_term(a, bb, pa * pb);
            }
        return r;
    }

    int parity() const {
        for (const auto& [k, p] : c)
            if (!p.is_structural_zero()) return p.parity();
        return 0;
    }
};

template <>
struct RingTraits<BiLaurent> {
    static BiLaurent from_rat(const Rat& c) { return BiLaurent::from_rat(c); }
    // window-limited zeros carry information, see RingTraits<TruncSeries>
    static bool is_zero(const BiLaurent& b) {
        return b.structurally_zero() && b.wmU >= WM_INF && b.wmV >= WM_INF;
    }
    static int parity(const BiLaurent& b) { return b.parity(); }
};

using BiTensor = SuperTensor<BiLaurent>;

// Embeds a series matrix at one slot of a two-slot algebra, in the u or v
// variable.
inline BiTensor bi_slot_tensor(const SeriesMatrix& x, int slot, bool u_side) {
    const SuperContext& cx = x.ctx;
    BiTensor t;
    t.m = 2;
    for (int i = 1; i <= cx.size(); ++i)
        for (int j = 1; j <= cx.size(); ++j) {
            const TruncSeries& s = x.at(i, j);
            if (s.structurally_zero() && s.wm >= WM_INF) continue;
            SuperTensor<BiLaurent> u = unit_tensor<BiLaurent>(cx, 2, i, j, slot);
            t = t + scale(u, BiLaurent::from_series(s, u_side));
        }
    return t;
}

// bivariate Laurent-polynomial scalars: u - v and u + v
inline BiLaurent poly_u_minus_v() {
    BiLaurent b = BiLaurent::term(-1, 0, NCPoly(Rat(1)));
    b.add_term(0, -1, NCPoly(Rat(-1)));
    return b;
}
inline BiLaurent poly_u_plus_v() {
    BiLaurent b = BiLaurent::term(-1, 0, NCPoly(Rat(1)));
    b.add_term(0, -1, NCPoly(Rat(1)));
    return b;
}

enum class RKind { Plain, TransposeSlot1, TransposeSlot2, IotaSlot1, IotaSlot2 };

// Cleared R-factor: (u-v) R(u-v) = (u-v).1 - P, and
// (u+v) R^{x}(-u-v) = (u+v).1 + P^{x} for a partial transpose x of P.
inline BiTensor cleared_r_factor(const SuperContext& ctx, RKind kind, bool difference_arg) {
    SuperTensor<Rat> p = super_permutation<Rat>(ctx, 2, 1, 2);
    switch (kind) {
        case RKind::Plain: break;
        case RKind::TransposeSlot1: p = partial_transpose_t(ctx, p, 1); break;
        case RKind::TransposeSlot2: p = partial_transpose_t(ctx, p, 2); break;
        case RKind::IotaSlot1: p = partial_transpose_iota(ctx, p, 1); break;
        case RKind::IotaSlot2: p = partial_transpose_iota(ctx, p, 2); break;
    }
    BiLaurent clear = difference_arg ? poly_u_minus_v() : poly_u_plus_v();
    BiTensor t = scalar_tensor<BiLaurent>(ctx, 2, clear);
    Rat psign = difference_arg ? Rat(-1) : Rat(1);
    for (const auto& [k, v] : p.e) {
        BiLaurent b = BiLaurent::from_rat(psign * v);
        t.add(k.first, k.second, b);
    }
    return t;
}

inline BiTensor bi_product(const SuperContext& ctx, const std::vector<BiTensor>& factors) {
    BiTensor acc = factors.front();
    for (std::size_t i = 1; i < factors.size(); ++i) acc = mul(ctx, acc, factors[i]);
    return acc;
}

struct BiZeroReport {
    bool ok = true;
    int wmU = 0, wmV = 0;
    std::optional<std::string> mismatch;  // first nonzero cell, rendered exactly
};

// Checks that a cleared relation is zero on its certified window, normalizing
// coefficients only here.
inline BiZeroReport bi_zero_check(const SuperContext& ctx, const BiTensor& x,
                                  const RewriteRules& rules) {
    BiZeroReport rep;
    rep.wmU = WM_INF;
    rep.wmV = WM_INF;
    for (const auto& [k, b] : x.e) {
        rep.wmU = std::min(rep.wmU, b.wmU);
        rep.wmV = std::min(rep.wmV, b.wmV);
    }
    for (const auto& [k, b] : x.e) {
        for (const auto& [ab, p] : b.c) {
            if (ab.first > rep.wmU || ab.second > rep.wmV) continue;
            NCPoly nf = normal_form(p, rules);
            if (!nf.is_structural_zero()) {
                rep.ok = false;
                if (!rep.mismatch) {
                    auto r = midx_unpack(k.first, 2);
                    auto c = midx_unpack(k.second, 2);
                    rep.mismatch = "cell E(" + std::to_string(r[0]) + "," + std::to_string(c[0]) +
                                   ")x(" + std::to_string(r[1]) + "," + std::to_string(c[1]) +
                                   ") u^" + std::to_string(-ab.first) + " v^" +
                                   std::to_string(-ab.second) + ": " + nf.str();
                }
            }
        }
    }
    return rep;
}

}  // namespace sy
