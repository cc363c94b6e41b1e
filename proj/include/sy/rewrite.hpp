#pragma once

// Terminating rewrite system that brings free-algebra elements to PBW normal
// form. The pairwise commutation data is machine-derived from the coefficient
// expansion of the (u-v)-cleared RTT relation in the two-slot graded tensor
// algebra, never hand-transcribed: with
//   A(a,b) = T1^(a) T2^(b),  B(a,b) = T2^(b) T1^(a)   (graded products)
// the relation telescopes to
//   D(r,s) = sum_{a=0}^{r-1} ( P.A(a, r+s-1-a) - B(a, r+s-1-a).P ),
// whose ((i,k),(j,l)) entry equals (-1)^{|x||y|} x y - y x for
// x = t_{ij}^{(r)}, y = t_{kl}^{(s)}. Every correction term has filtration
// degree r+s-1, which is what makes the rewrite terminate.

#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <vector>

#include "sy/context.hpp"
#include "sy/ncpoly.hpp"
#include "sy/tensor.hpp"

namespace sy {

enum class Strategy { Leftmost, Rightmost };
enum class MorphKind { Homomorphism, AntiHomomorphism };

class RewriteRules {
public:
    SuperContext ctx;
    int max_level_sum;   // filtration cutoff for pair rules
    long step_budget;    // guards the termination property

    explicit RewriteRules(const SuperContext& cx, int cutoff = 24, long budget = 50'000'000)
        : ctx(cx), max_level_sum(cutoff), step_budget(budget) {}

    // super-bracket [x,y} = xy - (-1)^{|x||y|} yx for generator symbols, in
    // normal form. Central symbols bracket to zero, as do cross-leg pairs.
    const NCPoly& pair_bracket(Sym x, Sym y) const;

    // two rule-derivation routes (telescoping in u vs in v); they must agree
    NCPoly derive_bracket_route(Sym x, Sym y, bool telescope_second) const;

private:
    mutable std::mutex mu_;
    mutable std::map<std::pair<Sym, Sym>, NCPoly> bracket_cache_;
    // component tables of D(r,s), keyed by (leg, r, s)
    mutable std::map<std::tuple<int, int, int>, SuperTensor<NCPoly>> dtab_cache_;

    const SuperTensor<NCPoly>& d_table(int leg, int r, int s) const;
};

NCPoly normal_form(const NCPoly& p, const RewriteRules& rules,
                   Strategy strategy = Strategy::Leftmost, long* steps_out = nullptr);

inline bool is_zero_normal(const NCPoly& p, const RewriteRules& rules) {
    return normal_form(p, rules).is_structural_zero();
}

// xy - (-1)^{|x||y|} yx for homogeneous polynomials, normalized.
NCPoly super_commutator(const NCPoly& x, const NCPoly& y, const RewriteRules& rules);

// Multiplicative (or reverse-multiplicative with Koszul signs) extension of a
// generator-image assignment, normalized. Images must cover every symbol that
// occurs and preserve parity.
NCPoly apply_morphism(const NCPoly& p, const std::map<Sym, NCPoly>& images, MorphKind kind,
                      const RewriteRules& rules);

}  // namespace sy
