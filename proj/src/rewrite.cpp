#include "sy/rewrite.hpp"

#include <deque>

namespace sy {

namespace {

// T^(a) at one of two slots as a tensor with NCPoly coefficients; level 0 is
// the identity.
SuperTensor<NCPoly> t_level(const SuperContext& ctx, int slot, int level, int leg) {
    if (level == 0) return identity_tensor<NCPoly>(ctx, 2);
    SuperTensor<NCPoly> t;
    t.m = 2;
    for (int i = 1; i <= ctx.size(); ++i)
        for (int j = 1; j <= ctx.size(); ++j) {
            SuperTensor<NCPoly> u = unit_tensor<NCPoly>(ctx, 2, i, j, slot);
            t = t + scale(u, NCPoly(t_sym(i, j, level, ctx, leg)));
        }
    return t;
}

}  // namespace

const SuperTensor<NCPoly>& RewriteRules::d_table(int leg, int r, int s) const {
    auto key = std::make_tuple(leg, r, s);
    auto it = dtab_cache_.find(key);
    if (it != dtab_cache_.end()) return it->second;

    SuperTensor<NCPoly> d;
    d.m = 2;
    SuperTensor<NCPoly> p = super_permutation<NCPoly>(ctx, 2, 1, 2);
    for (int a = 0; a <= r - 1; ++a) {
        int b = r + s - 1 - a;
        SuperTensor<NCPoly> ta = t_level(ctx, 1, a, leg);
        SuperTensor<NCPoly> tb = t_level(ctx, 2, b, leg);
        SuperTensor<NCPoly> A = mul(ctx, ta, tb);
        SuperTensor<NCPoly> B = mul(ctx, tb, ta);
        d = d + mul(ctx, p, A) - mul(ctx, B, p);
    }
    return dtab_cache_.emplace(key, std::move(d)).first->second;
}

NCPoly RewriteRules::derive_bracket_route(Sym x, Sym y, bool telescope_second) const {
    // telescoping in the second variable gives
    //   D(r,s) = -sum_{b=0}^{s-1} ( P.A(r+s-1-b, b) - B(r+s-1-b, b).P )
    const int leg = sym_leg(x);
    const int r = sym_r(x), s = sym_r(y);
    SuperTensor<NCPoly> d;
    d.m = 2;
    SuperTensor<NCPoly> p = super_permutation<NCPoly>(ctx, 2, 1, 2);
    if (!telescope_second) {
        for (int a = 0; a <= r - 1; ++a) {
            int b = r + s - 1 - a;
            SuperTensor<NCPoly> A = mul(ctx, t_level(ctx, 1, a, leg), t_level(ctx, 2, b, leg));
            SuperTensor<NCPoly> B = mul(ctx, t_level(ctx, 2, b, leg), t_level(ctx, 1, a, leg));
            d = d + mul(ctx, p, A) - mul(ctx, B, p);
        }
    } else {
        for (int b = 0; b <= s - 1; ++b) {
            int a = r + s - 1 - b;
            SuperTensor<NCPoly> A = mul(ctx, t_level(ctx, 1, a, leg), t_level(ctx, 2, b, leg));
            SuperTensor<NCPoly> B = mul(ctx, t_level(ctx, 2, b, leg), t_level(ctx, 1, a, leg));
            d = d - (mul(ctx, p, A) - mul(ctx, B, p));
        }
    }
    MIdx row = midx_make({sym_i(x), sym_i(y)});
    MIdx col = midx_make({sym_j(x), sym_j(y)});
    auto it = d.e.find(std::make_pair(row, col));
    NCPoly entry = it == d.e.end() ? NCPoly() : it->second;
    int sg = sym_parity(x) & sym_parity(y);
    return sg ? -entry : entry;
}

const NCPoly& RewriteRules::pair_bracket(Sym x, Sym y) const {
    std::lock_guard<std::mutex> lock(mu_);
    auto key = std::make_pair(x, y);
    auto it = bracket_cache_.find(key);
    if (it != bracket_cache_.end()) return it->second;

    NCPoly result;
    if (!sym_is_central(x) && !sym_is_central(y) && sym_leg(x) == sym_leg(y)) {
        int r = sym_r(x), s = sym_r(y);
        if (r + s > max_level_sum)
            throw std::logic_error("rewrite: level-sum cutoff exceeded (" + std::to_string(r + s) +
                                   " > " + std::to_string(max_level_sum) + ")");
        const SuperTensor<NCPoly>& d = d_table(sym_leg(x), r, s);
        MIdx row = midx_make({sym_i(x), sym_i(y)});
        MIdx col = midx_make({sym_j(x), sym_j(y)});
        auto et = d.e.find(std::make_pair(row, col));
        if (et != d.e.end()) {
            int sg = sym_parity(x) & sym_parity(y);
            result = sg ? -et->second : et->second;
        }
    }
    return bracket_cache_.emplace(key, std::move(result)).first->second;
}

namespace {

// first position p with word[p] > word[p+1], or word[p] == word[p+1] odd
int find_violation(const Word& w, Strategy strat) {
    const int n = static_cast<int>(w.size());
    if (strat == Strategy::Leftmost) {
        for (int p = 0; p + 1 < n; ++p) {
            if (w[p] > w[p + 1]) return p;
            if (w[p] == w[p + 1] && sym_parity(w[p])) return p;
        }
    } else {
        for (int p = n - 2; p >= 0; --p) {
            if (w[p] > w[p + 1]) return p;
            if (w[p] == w[p + 1] && sym_parity(w[p])) return p;
        }
    }
    return -1;
}

Word splice(const Word& w, int p, const Word& mid) {
    Word out;
    out.reserve(w.size() - 2 + mid.size());
    out.insert(out.end(), w.begin(), w.begin() + p);
    out.insert(out.end(), mid.begin(), mid.end());
    out.insert(out.end(), w.begin() + p + 2, w.end());
    return out;
}

}  // namespace

NCPoly normal_form(const NCPoly& p, const RewriteRules& rules, Strategy strategy,
                   long* steps_out) {
    NCPoly result;
    std::deque<std::pair<Word, Rat>> work;
    for (const auto& [w, c] : p.terms) work.emplace_back(w, c);
    long steps = 0;
    while (!work.empty()) {
        auto [w, c] = std::move(work.front());
        work.pop_front();
        int pos = find_violation(w, strategy);
        if (pos < 0) {
            result.add_term(w, c);
            continue;
        }
        if (++steps > rules.step_budget) throw std::logic_error("rewrite: step budget exceeded");
        Sym a = w[pos], b = w[pos + 1];
        if (a == b) {
            // odd square: x.x = (1/2)[x,x}
            const NCPoly& br = rules.pair_bracket(a, a);
            for (const auto& [mw, mc] : br.terms) work.emplace_back(splice(w, pos, mw), c * mc / 2);
            continue;
        }
        // a.b with a > b: a.b = (-1)^{|a||b|} b.a + [a,b}
        Word sw = w;
        std::swap(sw[pos], sw[pos + 1]);
        Rat sc = (sym_parity(a) & sym_parity(b)) ? -c : c;
        work.emplace_back(std::move(sw), sc);
        const NCPoly& br = rules.pair_bracket(a, b);
        for (const auto& [mw, mc] : br.terms) work.emplace_back(splice(w, pos, mw), c * mc);
    }
    if (steps_out) *steps_out = steps;
    return result;
}

NCPoly super_commutator(const NCPoly& x, const NCPoly& y, const RewriteRules& rules) {
    if (!x.is_homogeneous() || !y.is_homogeneous())
        throw std::invalid_argument("super_commutator: inhomogeneous input");
    int sg = x.parity() & y.parity();
    NCPoly yx = y * x;
    NCPoly r = x * y - (sg ? -yx : yx);
    return normal_form(r, rules);
}

NCPoly apply_morphism(const NCPoly& p, const std::map<Sym, NCPoly>& images, MorphKind kind,
                      const RewriteRules& rules) {
    NCPoly out;
    for (const auto& [w, c] : p.terms) {
        NCPoly prod = NCPoly::one();
        if (kind == MorphKind::Homomorphism) {
            for (Sym s : w) {
                auto it = images.find(s);
                if (it == images.end())
                    throw std::invalid_argument("apply_morphism: missing image for " + sym_string(s));
                prod = prod * it->second;
            }
        } else {
            // phi(x_1...x_L) = (-1)^{sum_{a<b}|x_a||x_b|} phi(x_L)...phi(x_1)
            int ex = 0, seen_odd = 0;
            for (Sym s : w) {
                if (sym_parity(s)) {
                    ex ^= seen_odd & 1;
                    ++seen_odd;
                }
            }
            for (auto it = w.rbegin(); it != w.rend(); ++it) {
                auto im = images.find(*it);
                if (im == images.end())
                    throw std::invalid_argument("apply_morphism: missing image for " +
                                                sym_string(*it));
                prod = prod * im->second;
            }
            if (ex) prod = -prod;
        }
        out += c * prod;
    }
    return normal_form(out, rules);
}

}  // namespace sy
