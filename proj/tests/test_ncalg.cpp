#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "sy/rewrite.hpp"

using namespace sy;

namespace {

// classical level-1 super bracket, written out independently of the
// machine-derived rules:
// [t_ij^(1), t_kl^(1)} = (-1)^{|i||k|+|i||l|+|k||l|} (d_kj t_il^(1) - d_il t_kj^(1))
NCPoly level1_bracket(const SuperContext& ctx, int i, int j, int k, int l) {
    int ex = (ctx.parity(i) & ctx.parity(k)) ^ (ctx.parity(i) & ctx.parity(l)) ^
             (ctx.parity(k) & ctx.parity(l));
    Rat s = ex ? Rat(-1) : Rat(1);
    NCPoly r;
    if (k == j) r += s * NCPoly(t_sym(i, l, 1, ctx));
    if (i == l) r -= s * NCPoly(t_sym(k, j, 1, ctx));
    return r;
}

Word rand_word(const SuperContext& ctx, std::mt19937_64& rng, int maxlen, int maxlev) {
    std::uniform_int_distribution<int> len(1, maxlen), lev(1, maxlev), idx(1, ctx.size());
    Word w;
    int L = len(rng);
    for (int t = 0; t < L; ++t) w.push_back(t_sym(idx(rng), idx(rng), lev(rng), ctx));
    return w;
}

}  // namespace

TEST_CASE("derived level-1 brackets match the classical formula") {
    for (auto [M, N] : {std::pair{1, 1}, {2, 1}, {1, 2}, {2, 2}}) {
        SuperContext ctx(M, N);
        RewriteRules rules(ctx);
        for (int i = 1; i <= ctx.size(); ++i)
            for (int j = 1; j <= ctx.size(); ++j)
                for (int k = 1; k <= ctx.size(); ++k)
                    for (int l = 1; l <= ctx.size(); ++l) {
                        Sym x = t_sym(i, j, 1, ctx), y = t_sym(k, l, 1, ctx);
                        NCPoly derived = normal_form(rules.pair_bracket(x, y), rules);
                        NCPoly classical = normal_form(level1_bracket(ctx, i, j, k, l), rules);
                        CHECK(derived == classical);
                    }
    }
}

TEST_CASE("specific instances from the classical formula") {
    SuperContext ctx(1, 1);
    RewriteRules rules(ctx);
    // [t_11^(1), t_22^(1)] = 0
    CHECK(rules.pair_bracket(t_sym(1, 1, 1, ctx), t_sym(2, 2, 1, ctx)).is_structural_zero());
    // [t_12^(1), t_21^(1)} = t_11^(1) - t_22^(1)  (both odd, so this is the
    // anticommutator content); signs: (-1)^{0+0+0}(d t_11 - d t_22) with the
    // Koszul prefactor (-1)^{|1||2|+|1||2|+|2||2|}... evaluate via the oracle
    NCPoly b = normal_form(rules.pair_bracket(t_sym(1, 2, 1, ctx), t_sym(2, 1, 1, ctx)), rules);
    NCPoly expect = normal_form(level1_bracket(ctx, 1, 2, 2, 1), rules);
    CHECK(b == expect);
    CHECK(!b.is_structural_zero());
}

TEST_CASE("the two telescoping derivations agree") {
    for (auto [M, N] : {std::pair{1, 1}, {1, 2}}) {
        SuperContext ctx(M, N);
        RewriteRules rules(ctx);
        for (int r = 1; r <= 3; ++r)
            for (int s = 1; s <= 3; ++s)
                for (int i = 1; i <= ctx.size(); ++i)
                    for (int j = 1; j <= ctx.size(); ++j) {
                        Sym x = t_sym(i, j, r, ctx);
                        Sym y = t_sym(j, i, s, ctx);
                        NCPoly a = rules.derive_bracket_route(x, y, false);
                        NCPoly bb = rules.derive_bracket_route(x, y, true);
                        CHECK(normal_form(a - bb, rules).is_structural_zero());
                    }
    }
}

TEST_CASE("normal form basics") {
    SuperContext ctx(1, 1);
    RewriteRules rules(ctx);
    CHECK(normal_form(NCPoly::one(), rules) == NCPoly::one());
    CHECK(normal_form(NCPoly(), rules).is_structural_zero());

    // t_22^(1) t_11^(1) -> t_11^(1) t_22^(1): the degree-1 bracket vanishes
    // for this index pattern
    Sym a = t_sym(1, 1, 1, ctx), b = t_sym(2, 2, 1, ctx);
    NCPoly p(Word{b, a});
    CHECK(normal_form(p, rules) == NCPoly(Word{a, b}));

    // already-ordered word is a fixed point
    NCPoly q(Word{a, b});
    CHECK(normal_form(q, rules) == q);
}

TEST_CASE("odd square elimination") {
    SuperContext ctx(1, 1);
    RewriteRules rules(ctx);
    Sym x = t_sym(1, 2, 1, ctx);
    REQUIRE(sym_parity(x) == 1);
    // x.x = (1/2)[x,x}: the oracle value from the derived rule set
    NCPoly sq = normal_form(NCPoly(Word{x, x}), rules);
    NCPoly half_br = normal_form(Rat(1, 2) * rules.pair_bracket(x, x), rules);
    CHECK(sq == half_br);
    // for gl(1|1) level 1 the self-bracket vanishes
    CHECK(sq.is_structural_zero());

    // a nonvanishing odd square: level (1,2) mixed product via t_12^(1) t_12^(2)
    NCPoly m = normal_form(NCPoly(Word{t_sym(1, 2, 2, ctx), t_sym(1, 2, 1, ctx)}), rules);
    // normal form has no word with a repeated odd symbol and is level-sorted
    for (const auto& [w, c] : m.terms) {
        for (std::size_t t = 0; t + 1 < w.size(); ++t) {
            CHECK(w[t] <= w[t + 1]);
            if (w[t] == w[t + 1]) CHECK(sym_parity(w[t]) == 0);
        }
    }
}

TEST_CASE("super commutator") {
    SuperContext ctx(1, 1);
    RewriteRules rules(ctx);
    NCPoly x(t_sym(1, 1, 1, ctx));  // even
    CHECK(super_commutator(x, x, rules).is_structural_zero());
    CHECK(super_commutator(NCPoly::one(), NCPoly(t_sym(1, 2, 1, ctx)), rules)
              .is_structural_zero());
    // negative control: [t_11^(1), t_12^(1)] != 0
    CHECK(!super_commutator(x, NCPoly(t_sym(1, 2, 1, ctx)), rules).is_structural_zero());
}

TEST_CASE("central symbols commute freely and sort first") {
    SuperContext ctx(1, 1);
    RewriteRules rules(ctx);
    Sym c1 = c_sym(1), t11 = t_sym(1, 1, 1, ctx), t12 = t_sym(1, 2, 2, ctx);
    NCPoly p(Word{t12, c1, t11});
    NCPoly nf = normal_form(p, rules);
    // central symbol must lead every word
    for (const auto& [w, c] : nf.terms) {
        REQUIRE(!w.empty());
        CHECK(sym_is_central(w.front()));
    }
    CHECK(super_commutator(NCPoly(c1), NCPoly(t12), rules).is_structural_zero());
}

TEST_CASE("termination within step budget and confluence spot-check") {
    std::mt19937_64 rng(424242);
    for (auto [M, N] : {std::pair{1, 1}, {2, 1}, {1, 2}, {2, 2}}) {
        SuperContext ctx(M, N);
        RewriteRules rules(ctx);
        int cases = (M == 2 && N == 2) ? 50 : 50;
        for (int t = 0; t < cases; ++t) {
            NCPoly p(rand_word(ctx, rng, 4, 3));
            long steps1 = 0, steps2 = 0;
            NCPoly nf1 = normal_form(p, rules, Strategy::Leftmost, &steps1);
            NCPoly nf2 = normal_form(p, rules, Strategy::Rightmost, &steps2);
            CHECK(nf1 == nf2);
            CHECK(steps1 < 200000);
            CHECK(steps2 < 200000);
            // fixed point
            CHECK(normal_form(nf1, rules) == nf1);
        }
    }
}

TEST_CASE("normal form preserves parity of homogeneous inputs") {
    std::mt19937_64 rng(7);
    SuperContext ctx(2, 1);
    RewriteRules rules(ctx);
    for (int t = 0; t < 40; ++t) {
        NCPoly p(rand_word(ctx, rng, 3, 3));
        int par = p.parity();
        NCPoly nf = normal_form(p, rules);
        if (!nf.is_structural_zero()) CHECK(nf.parity() == par);
    }
}

TEST_CASE("apply_morphism") {
    SuperContext ctx(1, 1);
    RewriteRules rules(ctx);
    // identity images leave normal forms unchanged
    std::map<Sym, NCPoly> id_images;
    for (int i = 1; i <= 2; ++i)
        for (int j = 1; j <= 2; ++j)
            for (int r = 1; r <= 3; ++r) {
                Sym s = t_sym(i, j, r, ctx);
                id_images.emplace(s, NCPoly(s));
            }
    Sym a = t_sym(1, 2, 1, ctx), b = t_sym(2, 1, 2, ctx);
    NCPoly p = NCPoly(Word{a, b}) + Rat(2) * NCPoly(Word{b});
    CHECK(apply_morphism(p, id_images, MorphKind::Homomorphism, rules) == normal_form(p, rules));

    // anti-homomorphism with identity images reverses words with the Koszul
    // sign: phi(ab) = (-1)^{|a||b|} ba, both odd here
    NCPoly r = apply_morphism(NCPoly(Word{a, b}), id_images, MorphKind::AntiHomomorphism, rules);
    NCPoly want = normal_form(Rat(-1) * NCPoly(Word{b, a}), rules);
    CHECK(r == want);

    // missing image is an error
    std::map<Sym, NCPoly> empty;
    CHECK_THROWS(apply_morphism(NCPoly(Word{a}), empty, MorphKind::Homomorphism, rules));
}

TEST_CASE("cutoff guard") {
    SuperContext ctx(1, 1);
    RewriteRules rules(ctx, /*cutoff=*/4);
    Sym hi = t_sym(2, 1, 3, ctx), lo = t_sym(1, 1, 2, ctx);
    CHECK_THROWS(normal_form(NCPoly(Word{hi, lo}), rules));  // level sum 5 > 4
}
