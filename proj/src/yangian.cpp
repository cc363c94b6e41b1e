#include "sy/yangian.hpp"

#include <random>
#include <sstream>

#include "sy/perm.hpp"

namespace sy {

SeriesMatrix generic_t_matrix(const SuperContext& ctx, int D, int leg) {
    SeriesMatrix t = SeriesMatrix::identity(ctx, D);
    for (int i = 1; i <= ctx.size(); ++i)
        for (int j = 1; j <= ctx.size(); ++j)
            for (int r = 1; r <= D; ++r) t.at(i, j).add_term(r, NCPoly(t_sym(i, j, r, ctx, leg)));
    return t;
}

YangianInstance yangian_build(int M, int N, int D) {
    if (M + N < 2 || M + N > 5) throw std::invalid_argument("yangian_build: need 2 <= M+N <= 5");
    if (D < 1 || D > 6) throw std::invalid_argument("yangian_build: need 1 <= D <= 6");
    YangianInstance y;
    y.ctx = SuperContext(M, N);
    y.D = D;
    y.rules = std::make_shared<RewriteRules>(y.ctx);
    y.T = generic_t_matrix(y.ctx, D);
    // normal forms keep the inverse entries compact for everything downstream
    y.Tinv = mat_inverse(y.T).map_entries([&](const TruncSeries& s) {
        return s.mapped([&](const NCPoly& p) { return normal_form(p, *y.rules); });
    });
    y.Tstar = transpose_t(y.Tinv);
    return y;
}

bool series_is_zero(const TruncSeries& s, const RewriteRules& rules) {
    for (const auto& [k, p] : s.c) {
        if (k > s.wm) continue;
        if (!normal_form(p, rules).is_structural_zero()) return false;
    }
    return true;
}

bool series_equal(const TruncSeries& a, const TruncSeries& b, const RewriteRules& rules) {
    return series_is_zero(a - b, rules);
}

std::optional<std::string> series_first_mismatch(const TruncSeries& a, const TruncSeries& b,
                                                 const RewriteRules& rules) {
    TruncSeries d = a - b;
    for (const auto& [k, p] : d.c) {
        if (k > d.wm) continue;
        NCPoly nf = normal_form(p, rules);
        if (!nf.is_structural_zero()) return "u^" + std::to_string(-k) + ": " + nf.str();
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// morphisms
// ---------------------------------------------------------------------------

namespace {

void for_each_generator(const SuperContext& ctx, int maxr,
                        const std::function<void(int, int, int)>& fn) {
    for (int r = 1; r <= maxr; ++r)
        for (int i = 1; i <= ctx.size(); ++i)
            for (int j = 1; j <= ctx.size(); ++j) fn(i, j, r);
}

}  // namespace

Morphism morphism_mu_f(const YangianInstance& y, const TruncSeries& f) {
    if (!(f.at(0) == NCPoly(Rat(1))))
        throw std::invalid_argument("mu_f: series must have leading term 1");
    Morphism m{MorphismKind::MuF, MorphKind::Homomorphism, {}};
    const SuperContext& cx = y.ctx;
    for_each_generator(cx, y.D, [&](int i, int j, int r) {
        NCPoly img;
        for (int k = 0; k < r; ++k) {
            Rat fk = f.at(k).counit();
            if (sy::is_zero(fk)) continue;
            img += fk * NCPoly(t_sym(i, j, r - k, cx));
        }
        if (i == j) img += NCPoly(f.at(r).counit());
        m.images.emplace(t_sym(i, j, r, cx), std::move(img));
    });
    return m;
}

Morphism morphism_shift(const YangianInstance& y, const Rat& lambda) {
    Morphism m{MorphismKind::ShiftLambda, MorphKind::Homomorphism, {}};
    const SuperContext& cx = y.ctx;
    for_each_generator(cx, y.D, [&](int i, int j, int r) {
        // coefficient of u^{-r} in t_{ij}(u - lambda)
        NCPoly img;
        for (int s = 1; s <= r; ++s) {
            Rat lam(1);
            for (int t = 0; t < r - s; ++t) lam *= lambda;
            img += (binom(r - 1, r - s) * lam) * NCPoly(t_sym(i, j, s, cx));
        }
        m.images.emplace(t_sym(i, j, r, cx), std::move(img));
    });
    return m;
}

Morphism morphism_conj(const YangianInstance& y, const std::vector<Rat>& b) {
    const SuperContext& cx = y.ctx;
    const int n = cx.size();
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j)
            if (cx.parity(i) != cx.parity(j) && !sy::is_zero(b[(i - 1) * n + (j - 1)]))
                throw std::invalid_argument("conj: matrix must preserve the block split");
    std::vector<Rat> binv = rat_matrix_inverse(b, n);
    Morphism m{MorphismKind::ConjB, MorphKind::Homomorphism, {}};
    for_each_generator(cx, y.D, [&](int i, int j, int r) {
        NCPoly img;
        for (int k = 1; k <= n; ++k)
            for (int l = 1; l <= n; ++l) {
                Rat c = b[(i - 1) * n + (k - 1)] * binv[(l - 1) * n + (j - 1)];
                if (!sy::is_zero(c)) img += c * NCPoly(t_sym(k, l, r, cx));
            }
        m.images.emplace(t_sym(i, j, r, cx), std::move(img));
    });
    return m;
}

Morphism morphism_theta(const YangianInstance& y) {
    Morphism m{MorphismKind::Theta, MorphKind::AntiHomomorphism, {}};
    const SuperContext& cx = y.ctx;
    for_each_generator(cx, y.D, [&](int i, int j, int r) {
        NCPoly img = (r % 2 ? Rat(-1) : Rat(1)) * NCPoly(t_sym(i, j, r, cx));
        m.images.emplace(t_sym(i, j, r, cx), std::move(img));
    });
    return m;
}

Morphism morphism_tau(const YangianInstance& y) {
    Morphism m{MorphismKind::Tau, MorphKind::AntiHomomorphism, {}};
    const SuperContext& cx = y.ctx;
    for_each_generator(cx, y.D, [&](int i, int j, int r) {
        int ex = (cx.parity(i) & cx.parity(j)) ^ cx.parity(j);
        NCPoly img = (ex ? Rat(-1) : Rat(1)) * NCPoly(t_sym(j, i, r, cx));
        m.images.emplace(t_sym(i, j, r, cx), std::move(img));
    });
    return m;
}

Morphism morphism_antipode(const YangianInstance& y) {
    Morphism m{MorphismKind::Antipode, MorphKind::AntiHomomorphism, {}};
    const SuperContext& cx = y.ctx;
    for_each_generator(cx, y.D, [&](int i, int j, int r) {
        m.images.emplace(t_sym(i, j, r, cx), y.Tinv.at(i, j).at(r));
    });
    return m;
}

Morphism morphism_rho(const YangianInstance& y) {
    Morphism m{MorphismKind::Rho, MorphKind::Homomorphism, {}};
    const SuperContext& cx = y.ctx;
    for_each_generator(cx, y.D, [&](int i, int j, int r) {
        int ex = ((cx.parity(i) & cx.parity(j)) ^ cx.parity(j)) ^ (r & 1);
        NCPoly img = (ex ? Rat(-1) : Rat(1)) * NCPoly(t_sym(j, i, r, cx));
        m.images.emplace(t_sym(i, j, r, cx), std::move(img));
    });
    return m;
}

Morphism morphism_psi(const YangianInstance& y) {
    Morphism m{MorphismKind::Psi, MorphKind::Homomorphism, {}};
    const SuperContext& cx = y.ctx;
    for_each_generator(cx, y.D, [&](int i, int j, int r) {
        m.images.emplace(t_sym(i, j, r, cx), y.Tstar.at(i, j).at(r));
    });
    return m;
}

NCPoly apply_morphism_poly(const NCPoly& p, const Morphism& m, const RewriteRules& rules) {
    return apply_morphism(p, m.images, m.kind, rules);
}

TruncSeries apply_morphism_series(const TruncSeries& s, const Morphism& m,
                                  const RewriteRules& rules) {
    return s.mapped([&](const NCPoly& p) { return apply_morphism_poly(p, m, rules); });
}

CheckOutcome morphism_preserves_relations(const YangianInstance& y, const Morphism& m,
                                          int max_level_sum) {
    const SuperContext& cx = y.ctx;
    const RewriteRules& rules = *y.rules;
    // bracket corrections of a level pair (r,s) carry symbols up to level
    // r+s-1, and images only exist up to the instance's level budget
    max_level_sum = std::min(max_level_sum, y.D + 1);
    for (int r = 1; r <= max_level_sum - 1; ++r)
        for (int s = 1; r + s <= max_level_sum; ++s) {
            if (r > y.D || s > y.D) continue;  // images exist within the level budget
            for (int i = 1; i <= cx.size(); ++i)
                for (int j = 1; j <= cx.size(); ++j)
                    for (int k = 1; k <= cx.size(); ++k)
                        for (int l = 1; l <= cx.size(); ++l) {
                            Sym x = t_sym(i, j, r, cx), z = t_sym(k, l, s, cx);
                            int sg = sym_parity(x) & sym_parity(z);
                            NCPoly rel = NCPoly(Word{x, z}) -
                                         (sg ? Rat(-1) : Rat(1)) * NCPoly(Word{z, x}) -
                                         rules.pair_bracket(x, z);
                            NCPoly img = apply_morphism_poly(rel, m, rules);
                            if (!img.is_structural_zero()) {
                                std::ostringstream os;
                                os << "relation image nonzero for [" << sym_string(x) << ","
                                   << sym_string(z) << "}: " << img.str();
                                return {false, os.str()};
                            }
                        }
        }
    return {true, ""};
}

// ---------------------------------------------------------------------------
// center
// ---------------------------------------------------------------------------

ZSeriesResult z_series(const YangianInstance& y) {
    const SuperContext& cx = y.ctx;
    const RewriteRules& rules = *y.rules;
    const Rat shift(cx.M - cx.N);
    ZSeriesResult out;
    out.diagonal_consistent = true;
    out.offdiagonal_zero = true;
    out.second_route_ok = true;

    SeriesMatrix t_shifted = y.T.shifted(shift);
    auto contraction = [&](int i, int j) {
        TruncSeries s;
        s.wm = y.D;
        for (int k = 1; k <= cx.size(); ++k) s = s + y.Tinv.at(k, j) * t_shifted.at(i, k);
        return s;
    };
    auto contraction2 = [&](int i, int j) {
        TruncSeries s;
        s.wm = y.D;
        for (int k = 1; k <= cx.size(); ++k) s = s + t_shifted.at(k, j) * y.Tinv.at(i, k);
        return s;
    };

    out.z = contraction(1, 1);
    for (int i = 1; i <= cx.size(); ++i)
        for (int j = 1; j <= cx.size(); ++j) {
            TruncSeries c1 = contraction(i, j), c2 = contraction2(i, j);
            TruncSeries want = (i == j) ? out.z : TruncSeries();
            if (i != j) want.wm = y.D;
            if (!series_equal(c1, want, rules)) {
                (i == j ? out.diagonal_consistent : out.offdiagonal_zero) = false;
                out.detail += "first route (" + std::to_string(i) + "," + std::to_string(j) + ") ";
            }
            if (!series_equal(c2, want, rules)) {
                out.second_route_ok = false;
                out.detail += "second route (" + std::to_string(i) + "," + std::to_string(j) + ") ";
            }
        }
    return out;
}

CheckOutcome centrality_check(const YangianInstance& y, const TruncSeries& x, int max_level) {
    const SuperContext& cx = y.ctx;
    const RewriteRules& rules = *y.rules;
    for (const auto& [k, p] : x.c) {
        if (k > x.wm) continue;
        NCPoly pn = normal_form(p, rules);
        if (pn.is_structural_zero()) continue;
        for (int r = 1; r <= max_level; ++r)
            for (int i = 1; i <= cx.size(); ++i)
                for (int j = 1; j <= cx.size(); ++j) {
                    NCPoly g(t_sym(i, j, r, cx));
                    NCPoly c = super_commutator(pn, g, rules);
                    if (!c.is_structural_zero()) {
                        std::ostringstream os;
                        os << "[coeff u^-" << k << ", t[" << i << "," << j << "," << r
                           << "]] = " << c.str();
                        return {false, os.str()};
                    }
                }
    }
    return {true, ""};
}

// ---------------------------------------------------------------------------
// Berezinians
// ---------------------------------------------------------------------------

Rat w_ladder(const SuperContext& ctx, int i) {
    return i <= ctx.M ? Rat(ctx.M - ctx.N - i) : Rat(-ctx.M - ctx.N - 1 + i);
}

TruncSeries berezinian_explicit(const YangianInstance& y) {
    const SuperContext& cx = y.ctx;
    const int M = cx.M, N = cx.N;
    TruncSeries first = TruncSeries::one(y.D);
    if (M > 0) {
        TruncSeries acc;
        acc.wm = y.D;
        enumerate(M, [&](const Permutation& s) {
            TruncSeries prod = TruncSeries::one(y.D);
            for (int col = 1; col <= M; ++col)
                prod = prod * y.T.at(s(col), col).shifted(Rat(M - N - col));
            acc = acc + (sign(s) < 0 ? prod.negated() : prod);
        });
        first = acc;
    }
    TruncSeries second = TruncSeries::one(y.D);
    if (N > 0) {
        TruncSeries acc;
        acc.wm = y.D;
        enumerate(N, [&](const Permutation& s) {
            TruncSeries prod = TruncSeries::one(y.D);
            for (int row = 1; row <= N; ++row)
                prod = prod * y.Tinv.at(M + row, M + s(row)).shifted(Rat(-N + row - 1));
            acc = acc + (sign(s) < 0 ? prod.negated() : prod);
        });
        second = acc;
    }
    return first * second;
}

namespace {

// A^{(M|N)} applied to e_1 x ... x e_{M+N}, exact rational components
SuperVector<Rat> fusion_pattern(const SuperContext& cx) {
    const int m = cx.size();
    std::vector<int> eslots(cx.M), oslots(cx.N), base(m);
    std::iota(eslots.begin(), eslots.end(), 1);
    std::iota(oslots.begin(), oslots.end(), cx.M + 1);
    std::iota(base.begin(), base.end(), 1);
    SuperTensor<Rat> a = identity_tensor<Rat>(cx, m);
    if (cx.M >= 2) a = mul(cx, a, antisymmetrizer<Rat>(cx, m, eslots));
    if (cx.N >= 2) a = mul(cx, a, symmetrizer<Rat>(cx, m, oslots));
    return apply_to_vector(cx, a, basis_vector<Rat>(base));
}

SuperVector<TruncSeries> project_block(const SuperContext& cx, SuperVector<TruncSeries> v) {
    SuperVector<TruncSeries> out;
    for (auto& [k, s] : v) {
        bool keep = true;
        for (int slot = 1; slot <= cx.size(); ++slot) {
            int want = slot <= cx.M ? 0 : 1;
            if (cx.parity(midx_get(k, slot)) != want) {
                keep = false;
                break;
            }
        }
        if (keep) out.emplace(k, std::move(s));
    }
    return out;
}

}  // namespace

FusionResult fusion_extract_impl(const YangianInstance& y,
                                 const std::vector<SuperTensor<TruncSeries>>& factors) {
    const SuperContext& cx = y.ctx;
    const RewriteRules& rules = *y.rules;
    const int m = cx.size();
    std::vector<int> base(m);
    std::iota(base.begin(), base.end(), 1);

    SuperVector<TruncSeries> v = basis_vector<TruncSeries>(base);
    for (auto it = factors.rbegin(); it != factors.rend(); ++it)
        v = apply_to_vector(cx, *it, v);
    std::vector<int> eslots(cx.M), oslots(cx.N);
    std::iota(eslots.begin(), eslots.end(), 1);
    std::iota(oslots.begin(), oslots.end(), cx.M + 1);
    if (cx.N >= 2) v = apply_to_vector(cx, symmetrizer<TruncSeries>(cx, m, oslots), v);
    if (cx.M >= 2) v = apply_to_vector(cx, antisymmetrizer<TruncSeries>(cx, m, eslots), v);
    v = project_block(cx, std::move(v));

    FusionResult out;
    auto it = v.find(midx_make(base));
    out.series = it == v.end() ? TruncSeries() : it->second;
    if (it == v.end()) out.series.wm = y.D;

    SuperVector<Rat> pattern = fusion_pattern(cx);
    out.proportional = true;
    for (const auto& [k, coeff] : pattern) {
        TruncSeries want = coeff * out.series;
        auto jt = v.find(k);
        TruncSeries got = jt == v.end() ? TruncSeries() : jt->second;
        if (it == v.end()) got.wm = want.wm;
        if (!series_equal(got, want, rules)) {
            out.proportional = false;
            out.detail = "fusion image not proportional on a pattern component";
            break;
        }
    }
    if (out.proportional) {
        for (const auto& [k, s] : v)
            if (!pattern.count(k) && !series_is_zero(s, rules)) {
                out.proportional = false;
                out.detail = "fusion image has support off the pattern";
                break;
            }
    }
    return out;
}

FusionResult berezinian_fusion(const YangianInstance& y) {
    const SuperContext& cx = y.ctx;
    std::vector<SuperTensor<TruncSeries>> factors;
    for (int i = 1; i <= cx.size(); ++i) {
        const SeriesMatrix& base = (i <= cx.M) ? y.T : y.Tstar;
        factors.push_back(slot_tensor(base.shifted(w_ladder(cx, i)), cx.size(), i));
    }
    return fusion_extract_impl(y, factors);
}

// Str_{1..M+N} of the projected, (anti)symmetrized generator ladder. The
// supertrace of the rank-one projected symmetrizer itself is
// Str(ProjA) = (-1)^N M! N!, so the extracted series is normalized by that
// exactly computed constant rather than a hardcoded one.
TruncSeries berezinian_supertrace(const YangianInstance& y, bool trailing_projector) {
    const SuperContext& cx = y.ctx;
    const int m = cx.size();
    std::vector<int> eslots(cx.M), oslots(cx.N);
    std::iota(eslots.begin(), eslots.end(), 1);
    std::iota(oslots.begin(), oslots.end(), cx.M + 1);

    SuperTensor<Rat> pa = block_projector<Rat>(cx, m, cx.M, cx.N);
    if (cx.M >= 2) pa = mul(cx, pa, antisymmetrizer<Rat>(cx, m, eslots));
    if (cx.N >= 2) pa = mul(cx, pa, symmetrizer<Rat>(cx, m, oslots));
    Rat norm = full_supertrace(cx, pa);

    SuperTensor<TruncSeries> x = convert_tensor<TruncSeries>(
        pa, [](const Rat& c) { return TruncSeries::constant(c); });
    x.m = m;
    for (int i = 1; i <= m; ++i) {
        const SeriesMatrix& base = (i <= cx.M) ? y.T : y.Tstar;
        x = mul(cx, x, slot_tensor(base.shifted(w_ladder(cx, i)), m, i));
    }
    if (trailing_projector) x = mul(cx, x, block_projector<TruncSeries>(cx, m, cx.M, cx.N));
    TruncSeries s = full_supertrace(cx, x);
    s.wm = std::min(s.wm, y.D);
    return (Rat(1) / norm) * s;
}

CheckOutcome liouville_check(const YangianInstance& y) {
    const RewriteRules& rules = *y.rules;
    ZSeriesResult z = z_series(y);
    TruncSeries b = berezinian_explicit(y);
    TruncSeries lhs = z.z * b;
    TruncSeries rhs = b.shifted(Rat(1));
    auto mm = series_first_mismatch(lhs, rhs, rules);
    if (mm) return {false, *mm};
    return {true, ""};
}

TruncSeries p_series(const YangianInstance& y) {
    Morphism rho = morphism_rho(y);
    return apply_morphism_series(berezinian_explicit(y), rho, *y.rules);
}

CheckOutcome rho_z_check(const YangianInstance& y) {
    const RewriteRules& rules = *y.rules;
    ZSeriesResult z = z_series(y);
    Morphism rho = morphism_rho(y);
    TruncSeries rz = apply_morphism_series(z.z, rho, rules);
    TruncSeries zflip = z.z.at_minus_u_plus(Rat(y.ctx.N - y.ctx.M));
    TruncSeries prod = rz * zflip;
    auto mm = series_first_mismatch(prod, TruncSeries::one(prod.wm), rules);
    if (mm) return {false, *mm};
    return {true, ""};
}

CheckOutcome p_fusion_check(const YangianInstance& y) {
    const SuperContext& cx = y.ctx;
    const RewriteRules& rules = *y.rules;
    SeriesMatrix t_t = transpose_t(y.T);
    std::vector<SuperTensor<TruncSeries>> factors;
    for (int i = 1; i <= cx.size(); ++i) {
        const SeriesMatrix& base = (i <= cx.M) ? t_t : y.Tinv;
        factors.push_back(slot_tensor(base.at_minus_u_plus(-w_ladder(cx, i)), cx.size(), i));
    }
    FusionResult f = fusion_extract_impl(y, factors);
    if (!f.proportional) return {false, f.detail};
    TruncSeries p = p_series(y);
    auto mm = series_first_mismatch(f.series, p, rules);
    if (mm) return {false, "fusion/coefficientwise mismatch " + *mm};
    return {true, ""};
}

CheckOutcome p_vs_flipped_b_differ(const YangianInstance& y, const Rat& flip_shift) {
    const RewriteRules& rules = *y.rules;
    TruncSeries p = p_series(y);
    TruncSeries bflip = berezinian_explicit(y).at_minus_u_plus(flip_shift);
    auto mm = series_first_mismatch(p, bflip, rules);
    if (!mm) return {false, "series unexpectedly agree on the window"};
    return {true, *mm};
}

// ---------------------------------------------------------------------------
// comultiplication
// ---------------------------------------------------------------------------

std::map<Sym, NCPoly> comult_images(const YangianInstance& y) {
    // normal forms of products of level-<=D words contain symbols up to
    // level 2D-1, so images are provided up to 2D
    const SuperContext& cx = y.ctx;
    const int budget = 2 * y.D;
    SeriesMatrix t0 = generic_t_matrix(cx, budget, 0);
    SeriesMatrix t1 = generic_t_matrix(cx, budget, 1);
    SeriesMatrix delta = mat_mul(t0, t1);
    std::map<Sym, NCPoly> images;
    for (int i = 1; i <= cx.size(); ++i)
        for (int j = 1; j <= cx.size(); ++j)
            for (int r = 1; r <= budget; ++r)
                images.emplace(t_sym(i, j, r, cx), delta.at(i, j).at(r));
    return images;
}

CheckOutcome comult_multiplicative_check(const YangianInstance& y, int cases,
                                         std::uint64_t seed) {
    const SuperContext& cx = y.ctx;
    const RewriteRules& rules = *y.rules;
    std::map<Sym, NCPoly> images = comult_images(y);
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> idx(1, cx.size()), lev(1, y.D), len(1, 2);
    for (int t = 0; t < cases; ++t) {
        Word wx, wy;
        for (int a = len(rng); a > 0; --a) wx.push_back(t_sym(idx(rng), idx(rng), lev(rng), cx));
        for (int a = len(rng); a > 0; --a) wy.push_back(t_sym(idx(rng), idx(rng), lev(rng), cx));
        NCPoly x(wx), yy(wy);
        NCPoly lhs =
            apply_morphism(normal_form(x * yy, rules), images, MorphKind::Homomorphism, rules);
        NCPoly rhs = normal_form(apply_morphism(x, images, MorphKind::Homomorphism, rules) *
                                     apply_morphism(yy, images, MorphKind::Homomorphism, rules),
                                 rules);
        if (!(lhs == rhs))
            return {false, "coproduct not multiplicative on case " + std::to_string(t)};
    }
    return {true, ""};
}

}  // namespace sy
