#pragma once

// The Y(gl_{M|N}) layer: generic generator matrix, the named automorphisms and
// anti-automorphisms, the central series z(u), the quantum Berezinian in three
// realizations, the Liouville identity and the comultiplication.

#include <memory>
#include <optional>
#include <string>

#include "sy/rewrite.hpp"
#include "sy/series.hpp"

namespace sy {

struct YangianInstance {
    SuperContext ctx;
    int D = 1;
    std::shared_ptr<RewriteRules> rules;
    SeriesMatrix T;      // generic generator matrix, constant term 1
    SeriesMatrix Tinv;   // T(u)^{-1}
    SeriesMatrix Tstar;  // (T(u)^{-1})^t
};

// Desk-scale bounds: M+N in [2,5], D in [1,6].
YangianInstance yangian_build(int M, int N, int D);

// generic T with a chosen tensor leg (used by the comultiplication)
SeriesMatrix generic_t_matrix(const SuperContext& ctx, int D, int leg = 0);

bool series_is_zero(const TruncSeries& s, const RewriteRules& rules);
bool series_equal(const TruncSeries& a, const TruncSeries& b, const RewriteRules& rules);
// first window coefficient where the series differ, rendered exactly
std::optional<std::string> series_first_mismatch(const TruncSeries& a, const TruncSeries& b,
                                                 const RewriteRules& rules);

struct CheckOutcome {
    bool ok = true;
    std::string detail;
};

// ---------------------------------------------------------------------------
// morphisms
// ---------------------------------------------------------------------------

enum class MorphismKind { MuF, ShiftLambda, ConjB, Theta, Tau, Antipode, Rho, Psi };

struct Morphism {
    MorphismKind which;
    MorphKind kind;  // homomorphism / anti-homomorphism
    std::map<Sym, NCPoly> images;
};

// f: scalar series with leading term 1
Morphism morphism_mu_f(const YangianInstance& y, const TruncSeries& f);
Morphism morphism_shift(const YangianInstance& y, const Rat& lambda);
// B: rational block matrix (parity preserving), row-major, invertible
Morphism morphism_conj(const YangianInstance& y, const std::vector<Rat>& b);
Morphism morphism_theta(const YangianInstance& y);
Morphism morphism_tau(const YangianInstance& y);
Morphism morphism_antipode(const YangianInstance& y);
Morphism morphism_rho(const YangianInstance& y);
Morphism morphism_psi(const YangianInstance& y);

NCPoly apply_morphism_poly(const NCPoly& p, const Morphism& m, const RewriteRules& rules);
TruncSeries apply_morphism_series(const TruncSeries& s, const Morphism& m,
                                  const RewriteRules& rules);

// checks phi(relation) = 0 for every derived pair relation with level sum
// <= max_level_sum
CheckOutcome morphism_preserves_relations(const YangianInstance& y, const Morphism& m,
                                          int max_level_sum);

// ---------------------------------------------------------------------------
// center
// ---------------------------------------------------------------------------

struct ZSeriesResult {
    TruncSeries z;
    bool diagonal_consistent = false;  // contraction independent of i
    bool offdiagonal_zero = false;
    bool second_route_ok = false;  // t(u+M-N) tilde-t(u) route gives the same z
    std::string detail;
};

// z(u) from sum_k ttilde_{kj}(u) t_{ik}(u+M-N) = delta_{ij} z(u), checked
// against the reversed contraction as well.
ZSeriesResult z_series(const YangianInstance& y);

// super-commutators of every exact coefficient of x with every generator
// t_{ij}^{(r)}, r <= max_level
CheckOutcome centrality_check(const YangianInstance& y, const TruncSeries& x, int max_level);

// ---------------------------------------------------------------------------
// Berezinians
// ---------------------------------------------------------------------------

// fusion ladder arguments: w_i = u + M - N - i (even block), u - M - N - 1 + i (odd block)
Rat w_ladder(const SuperContext& ctx, int i);

TruncSeries berezinian_explicit(const YangianInstance& y);

struct FusionResult {
    TruncSeries series;
    bool proportional = false;  // image proportional to the projected vector
    std::string detail;
};

// applies the slot factors (right to left) between the block projector and
// A^{(M|N)}, reads the coefficient of e_1 x ... x e_{M+N}, and verifies that
// the image is proportional to the projected pattern vector
FusionResult fusion_extract_impl(const YangianInstance& y,
                                 const std::vector<SuperTensor<TruncSeries>>& factors);

FusionResult berezinian_fusion(const YangianInstance& y);
// supertrace realization, with or without the trailing projector
TruncSeries berezinian_supertrace(const YangianInstance& y, bool trailing_projector);

// z(u) B(u) = B(u+1)
CheckOutcome liouville_check(const YangianInstance& y);

// P(u) = rho(B(u)) coefficientwise
TruncSeries p_series(const YangianInstance& y);
// rho(z(u)) . z(-u-M+N) = 1
CheckOutcome rho_z_check(const YangianInstance& y);
// fusion realization of P(u) via T^iota(-w) / Ttilde(-w) factors
CheckOutcome p_fusion_check(const YangianInstance& y);
// P_{M|N}(u) - B_{M|N}(-u+N+1) has a nonzero exact coefficient when M != N, M != 0
CheckOutcome p_vs_flipped_b_differ(const YangianInstance& y, const Rat& flip_shift);

// ---------------------------------------------------------------------------
// comultiplication
// ---------------------------------------------------------------------------

// Delta(t^{(r)}_{ij}) mapped into the two-leg algebra (legs 0 and 1)
std::map<Sym, NCPoly> comult_images(const YangianInstance& y);
CheckOutcome comult_multiplicative_check(const YangianInstance& y, int cases,
                                         std::uint64_t seed);

}  // namespace sy
