#pragma once

// Truncated Laurent series in u^{-1} with NCPoly coefficients and an exactness
// watermark, plus graded matrices of such series. Every operation computes the
// exact window of its output from its inputs' windows; equality checks consult
// only the window. Positive powers of u (k < 0) appear only from denominator
// clearing and are bounded below by `lo`.

#include <cstdint>
#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "sy/context.hpp"
#include "sy/ncpoly.hpp"
#include "sy/rational.hpp"
#include "sy/tensor.hpp"

namespace sy {

constexpr int WM_INF = 1 << 20;

inline int wm_add(int a, int b) {
    long s = static_cast<long>(a) + b;
    return s >= WM_INF ? WM_INF : static_cast<int>(s);
}

inline Rat binom(long n, long k) {
    if (k < 0) return Rat(0);
    Rat r(1);
    for (long t = 0; t < k; ++t) r *= rat(n - t, t + 1);
    return r;
}

struct TruncSeries {
    std::map<int, NCPoly> c;  // k -> coefficient of u^{-k}
    int lo = 0;               // no potential support below u^{-lo}
    int wm = WM_INF;          // coefficients exact for lo <= k <= wm

    TruncSeries() = default;

    static TruncSeries constant(Rat v, int wm = WM_INF) {
        TruncSeries s;
        s.wm = wm;
        if (!sy::is_zero(v)) s.c.emplace(0, NCPoly(std::move(v)));
        return s;
    }
    static TruncSeries constant_poly(NCPoly p, int wm = WM_INF) {
        TruncSeries s;
        s.wm = wm;
        if (!p.is_structural_zero()) s.c.emplace(0, std::move(p));
        return s;
    }
    static TruncSeries one(int wm = WM_INF) { return constant(Rat(1), wm); }
    // single term coeff * u^{-k}
    static TruncSeries term(int k, NCPoly p, int wm = WM_INF) {
        TruncSeries s;
        s.lo = std::min(0, k);
        s.wm = wm;
        if (!p.is_structural_zero() && k <= wm) s.c.emplace(k, std::move(p));
        return s;
    }

    const NCPoly& at(int k) const {
        static const NCPoly z;
        auto it = c.find(k);
        return it == c.end() ? z : it->second;
    }

    void add_term(int k, const NCPoly& p) {
        if (p.is_structural_zero() || k > wm) return;
        if (k < lo) lo = k;
        auto [it, fresh] = c.emplace(k, p);
        if (!fresh) {
            it->second += p;
            if (it->second.is_structural_zero()) c.erase(it);
        }
    }

    bool structurally_zero() const { return c.empty(); }

    TruncSeries truncated(int new_wm) const {
        TruncSeries s;
        s.lo = lo;
        s.wm = std::min(wm, new_wm);
        for (const auto& [k, p] : c)
            if (k <= s.wm) s.c.emplace(k, p);
        return s;
    }

    friend TruncSeries operator+(const TruncSeries& a, const TruncSeries& b) {
        TruncSeries s;
        s.lo = std::min(a.lo, b.lo);
        s.wm = std::min(a.wm, b.wm);
        for (const auto& [k, p] : a.c)
            if (k <= s.wm) s.add_term(k, p);
        for (const auto& [k, p] : b.c)
            if (k <= s.wm) s.add_term(k, p);
        return s;
    }
    friend TruncSeries operator-(const TruncSeries& a, const TruncSeries& b) {
        return a + b.negated();
    }
    TruncSeries negated() const {
        TruncSeries s = *this;
        for (auto& [k, p] : s.c) p = -p;
        return s;
    }

    friend TruncSeries operator*(const TruncSeries& a, const TruncSeries& b) {
        TruncSeries s;
        s.lo = a.lo + b.lo;
        s.wm = std::min(wm_add(a.wm, b.lo), wm_add(b.wm, a.lo));
        for (const auto& [ka, pa] : a.c)
            for (const auto& [kb, pb] : b.c) {
                int k = ka + kb;
                if (k > s.wm) continue;
                s.add_term(k, pa * pb);
            }
        return s;
    }

    friend TruncSeries operator*(const Rat& v, const TruncSeries& a) {
        TruncSeries s;
        s.lo = a.lo;
        s.wm = a.wm;
        if (sy::is_zero(v)) return s;
        for (const auto& [k, p] : a.c) s.c.emplace(k, v * p);
        return s;
    }

    bool operator==(const TruncSeries& o) const { return c == o.c && lo == o.lo && wm == o.wm; }

    // u -> u + shift, by binomial expansion; windows unchanged.
    TruncSeries shifted(const Rat& shift) const {
        if (sy::is_zero(shift)) return *this;
        if (wm == WM_INF)
            for (const auto& [k, p] : c)
                if (k >= 1) throw std::logic_error("series shift: needs a finite watermark");
        TruncSeries s;
        s.lo = lo;
        s.wm = wm;
        for (const auto& [k, p] : c) {
            if (k == 0) {
                s.add_term(0, p);
            } else if (k > 0) {
                for (int j = 0; k + j <= wm; ++j) {
                    Rat coef = binom(k + j - 1, j);
                    if (j % 2) coef = -coef;
                    Rat cj(1);
                    for (int t = 0; t < j; ++t) cj *= shift;
                    s.add_term(k + j, (coef * cj) * p);
                }
            } else {
                int mdeg = -k;
                for (int j = 0; j <= mdeg; ++j) {
                    Rat cj(1);
                    for (int t = 0; t < j; ++t) cj *= shift;
                    s.add_term(-(mdeg - j), (binom(mdeg, j) * cj) * p);
                }
            }
        }
        return s;
    }

    // u -> -u
    TruncSeries flipped() const {
        TruncSeries s;
        s.lo = lo;
        s.wm = wm;
        for (const auto& [k, p] : c) s.c.emplace(k, (k % 2) ? -p : p);
        return s;
    }

    // s(-u + a) = shifted-then-flipped
    TruncSeries at_minus_u_plus(const Rat& a) const { return flipped().shifted(-a); }

    // Multiplicative inverse; needs lo >= 0 and an invertible rational
    // constant term.
    TruncSeries inverted() const {
        if (lo < 0) throw std::logic_error("series invert: positive powers present");
        NCPoly c0 = at(0);
        Rat v0 = c0.counit();
        NCPoly rest = c0 - NCPoly(v0);
        if (sy::is_zero(v0) || !rest.is_structural_zero())
            throw std::logic_error("series invert: constant term not an invertible scalar");
        TruncSeries g;  // v0^{-1} * (s - c0), lowest order >= 1
        g.lo = 1;
        g.wm = wm;
        for (const auto& [k, p] : c)
            if (k >= 1) g.c.emplace(k, (Rat(1) / v0) * p);
        if (wm == WM_INF && !g.structurally_zero())
            throw std::logic_error("series invert: needs a finite watermark");
        TruncSeries acc = one(wm), pw = one(wm);
        for (int j = 1; j <= wm; ++j) {
            pw = pw * g.negated();
            pw.wm = wm;  // g-powers stay inside the same window
            if (pw.structurally_zero()) break;
            acc = acc + pw;
        }
        return (Rat(1) / v0) * acc;
    }

    // every generator to zero
    TruncSeries counit() const {
        TruncSeries s;
        s.lo = lo;
        s.wm = wm;
        for (const auto& [k, p] : c) {
            Rat v = p.counit();
            if (!sy::is_zero(v)) s.c.emplace(k, NCPoly(v));
        }
        return s;
    }

    TruncSeries mapped(const std::function<NCPoly(const NCPoly&)>& f) const {
        TruncSeries s;
        s.lo = lo;
        s.wm = wm;
        for (const auto& [k, p] : c) {
            NCPoly q = f(p);
            if (!q.is_structural_zero()) s.c.emplace(k, std::move(q));
        }
        return s;
    }

    int parity() const {
        for (const auto& [k, p] : c)
            if (!p.is_structural_zero()) return p.parity();
        return 0;
    }

    std::string str() const {
        if (c.empty()) return "0";
        std::string out;
        bool first = true;
        for (const auto& [k, p] : c) {
            if (!first) out += " + ";
            first = false;
            out += "u^" + std::to_string(-k) + "*(" + p.str() + ")";
        }
        return out;
    }
};

template <>
struct RingTraits<TruncSeries> {
    static TruncSeries from_rat(const Rat& c) { return TruncSeries::constant(c); }
    // a structurally empty series with a finite watermark still carries
    // window information and must keep participating in sums
    static bool is_zero(const TruncSeries& s) { return s.structurally_zero() && s.wm >= WM_INF; }
    static int parity(const TruncSeries& s) { return s.parity(); }
};

// u -> infinity expansion of num(u)/den(u), exact to order D. Polynomials are
// given by ascending coefficient lists in u; deg num <= deg den and the
// leading denominator coefficient must not vanish.
inline TruncSeries expand_rational(const std::vector<Rat>& num, const std::vector<Rat>& den,
                                   int D) {
    int dn = static_cast<int>(num.size()) - 1, dd = static_cast<int>(den.size()) - 1;
    while (dn >= 0 && sy::is_zero(num[dn])) --dn;
    while (dd >= 0 && sy::is_zero(den[dd])) --dd;
    if (dd < 0) throw std::invalid_argument("expand_rational: zero denominator");
    if (dn > dd) throw std::invalid_argument("expand_rational: improper rational function");
    TruncSeries np, dp;
    np.wm = D;
    dp.wm = D;
    for (int i = 0; i <= dn; ++i)
        if (!sy::is_zero(num[i])) np.c.emplace(dd - i, NCPoly(num[i]));
    for (int i = 0; i <= dd; ++i)
        if (!sy::is_zero(den[i])) dp.c.emplace(dd - i, NCPoly(den[i]));
    return (np * dp.inverted()).truncated(D);
}

// convenience: (a*u + b) as a coefficient list
inline std::vector<Rat> linear_poly(const Rat& a, const Rat& b) { return {b, a}; }

// ---------------------------------------------------------------------------
// Graded matrices of series. Entries follow the parity pattern
// |x_{ij}| = |label_i| + |label_j|; the product sign is the one induced by
// (E_{ij} (x) x)(E_{kl} (x) y) = (-1)^{|x|(|k|+|l|)} E_{ij}E_{kl} (x) xy.
// Rectangular shapes with index labels support quasi-determinant minors.
// ---------------------------------------------------------------------------

struct SeriesMatrix {
    SuperContext ctx;
    std::vector<int> row_labels, col_labels;
    std::vector<TruncSeries> ent;  // row-major

    SeriesMatrix() = default;
    SeriesMatrix(const SuperContext& cx, std::vector<int> rl, std::vector<int> cl)
        : ctx(cx), row_labels(std::move(rl)), col_labels(std::move(cl)),
          ent(row_labels.size() * col_labels.size()) {}

    static std::vector<int> full_labels(const SuperContext& cx) {
        std::vector<int> l(cx.size());
        for (int i = 0; i < cx.size(); ++i) l[i] = i + 1;
        return l;
    }

    static SeriesMatrix square(const SuperContext& cx) {
        return SeriesMatrix(cx, full_labels(cx), full_labels(cx));
    }

    static SeriesMatrix identity(const SuperContext& cx, int wm = WM_INF) {
        SeriesMatrix m = square(cx);
        for (int i = 1; i <= cx.size(); ++i)
            for (int j = 1; j <= cx.size(); ++j)
                m.at(i, j) = (i == j) ? TruncSeries::one(wm) : TruncSeries::constant(Rat(0), wm);
        return m;
    }

    int rows() const { return static_cast<int>(row_labels.size()); }
    int cols() const { return static_cast<int>(col_labels.size()); }
    bool is_full_square() const {
        return row_labels == full_labels(ctx) && col_labels == full_labels(ctx);
    }

    TruncSeries& at(int i, int j) { return ent[(i - 1) * cols() + (j - 1)]; }
    const TruncSeries& at(int i, int j) const { return ent[(i - 1) * cols() + (j - 1)]; }

    int row_parity(int i) const { return ctx.parity(row_labels[i - 1]); }
    int col_parity(int j) const { return ctx.parity(col_labels[j - 1]); }

    int min_wm() const {
        int w = WM_INF;
        for (const auto& s : ent) w = std::min(w, s.wm);
        return w;
    }

    SeriesMatrix map_entries(const std::function<TruncSeries(const TruncSeries&)>& f) const {
        SeriesMatrix m = *this;
        for (auto& s : m.ent) s = f(s);
        return m;
    }

    SeriesMatrix shifted(const Rat& a) const {
        return map_entries([&](const TruncSeries& s) { return s.shifted(a); });
    }
    SeriesMatrix flipped() const {
        return map_entries([](const TruncSeries& s) { return s.flipped(); });
    }
    SeriesMatrix at_minus_u_plus(const Rat& a) const {
        return map_entries([&](const TruncSeries& s) { return s.at_minus_u_plus(a); });
    }
    SeriesMatrix truncated(int wm) const {
        return map_entries([&](const TruncSeries& s) { return s.truncated(wm); });
    }
    SeriesMatrix scaled(const TruncSeries& f) const {
        return map_entries([&](const TruncSeries& s) { return f * s; });
    }

    friend SeriesMatrix operator+(const SeriesMatrix& a, const SeriesMatrix& b) {
        SeriesMatrix m = a;
        for (std::size_t t = 0; t < m.ent.size(); ++t) m.ent[t] = m.ent[t] + b.ent[t];
        return m;
    }
    friend SeriesMatrix operator-(const SeriesMatrix& a, const SeriesMatrix& b) {
        SeriesMatrix m = a;
        for (std::size_t t = 0; t < m.ent.size(); ++t) m.ent[t] = m.ent[t] - b.ent[t];
        return m;
    }

    SeriesMatrix submatrix(const std::vector<int>& rpos, const std::vector<int>& cpos) const {
        std::vector<int> rl, cl;
        for (int r : rpos) rl.push_back(row_labels[r - 1]);
        for (int c : cpos) cl.push_back(col_labels[c - 1]);
        SeriesMatrix m(ctx, rl, cl);
        for (std::size_t a = 0; a < rpos.size(); ++a)
            for (std::size_t b = 0; b < cpos.size(); ++b)
                m.at(static_cast<int>(a) + 1, static_cast<int>(b) + 1) = at(rpos[a], cpos[b]);
        return m;
    }
};

inline SeriesMatrix mat_mul(const SeriesMatrix& x, const SeriesMatrix& y) {
    if (x.col_labels != y.row_labels) throw std::invalid_argument("mat_mul: label mismatch");
    SeriesMatrix m(x.ctx, x.row_labels, y.col_labels);
    for (int i = 1; i <= x.rows(); ++i)
        for (int j = 1; j <= x.cols(); ++j) {
            const TruncSeries& a = x.at(i, j);
            if (a.structurally_zero() && a.wm >= WM_INF) continue;  // exact zero
            int pa = a.parity();
            for (int l = 1; l <= y.cols(); ++l) {
                const TruncSeries& b = y.at(j, l);
                if (b.structurally_zero() && b.wm >= WM_INF) continue;
                int sg = pa & (x.col_parity(j) ^ y.col_parity(l));
                TruncSeries prod = a * b;  // empty products still narrow windows
                m.at(i, l) = m.at(i, l) + (sg ? prod.negated() : prod);
            }
        }
    return m;
}

// Exact inverse of the rational constant-term matrix, Gauss-Jordan.
inline std::vector<Rat> rat_matrix_inverse(std::vector<Rat> a, int n) {
    std::vector<Rat> inv(n * n, Rat(0));
    for (int i = 0; i < n; ++i) inv[i * n + i] = 1;
    for (int col = 0; col < n; ++col) {
        int piv = -1;
        for (int r = col; r < n; ++r)
            if (!sy::is_zero(a[r * n + col])) {
                piv = r;
                break;
            }
        if (piv < 0) throw std::logic_error("singular constant term");
        if (piv != col)
            for (int c = 0; c < n; ++c) {
                std::swap(a[piv * n + c], a[col * n + c]);
                std::swap(inv[piv * n + c], inv[col * n + c]);
            }
        Rat d = a[col * n + col];
        for (int c = 0; c < n; ++c) {
            a[col * n + c] /= d;
            inv[col * n + c] /= d;
        }
        for (int r = 0; r < n; ++r) {
            if (r == col) continue;
            Rat f = a[r * n + col];
            if (sy::is_zero(f)) continue;
            for (int c = 0; c < n; ++c) {
                a[r * n + c] -= f * a[col * n + c];
                inv[r * n + c] -= f * inv[col * n + c];
            }
        }
    }
    return inv;
}

// Two-sided inverse up to the propagated watermark, Neumann iteration around
// the invertible rational constant term.
inline SeriesMatrix mat_inverse(const SeriesMatrix& x) {
    if (x.rows() != x.cols()) throw std::invalid_argument("mat_inverse: not square");
    const int n = x.rows();
    const int wm = x.min_wm();
    std::vector<Rat> c0(n * n, Rat(0));
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j) {
            NCPoly p = x.at(i, j).at(0);
            Rat v = p.counit();
            if (!(p - NCPoly(v)).is_structural_zero())
                throw std::logic_error("mat_inverse: constant term not scalar");
            c0[(i - 1) * n + (j - 1)] = v;
        }
    std::vector<Rat> c0inv = rat_matrix_inverse(c0, n);

    // X = X0 + N; X^{-1} = (sum_j (-X0^{-1} N)^j) X0^{-1}
    SeriesMatrix x0inv(x.ctx, x.col_labels, x.row_labels);
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j)
            x0inv.at(i, j) = TruncSeries::constant(c0inv[(i - 1) * n + (j - 1)], wm);

    SeriesMatrix nser = x;
    bool n_zero = true;
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j) {
            if (nser.at(i, j).lo < 0)
                throw std::logic_error("mat_inverse: positive powers present");
            nser.at(i, j).c.erase(0);
            nser.at(i, j).lo = std::max(nser.at(i, j).lo, 1);
            nser.at(i, j).wm = wm;
            if (!nser.at(i, j).structurally_zero()) n_zero = false;
        }
    if (wm == WM_INF) {
        if (!n_zero) throw std::logic_error("mat_inverse: needs a finite watermark");
        return x0inv;  // numeric matrix, inverse exact everywhere
    }

    SeriesMatrix g = mat_mul(x0inv, nser);  // lowest order >= 1
    for (auto& s : g.ent) s = s.negated();
    SeriesMatrix acc(x.ctx, x.col_labels, x.col_labels);
    for (int i = 1; i <= n; ++i) acc.at(i, i) = TruncSeries::one(wm);
    SeriesMatrix pw = acc;
    for (int j = 1; j <= wm; ++j) {
        pw = mat_mul(pw, g);
        bool all_zero = true;
        for (auto& s : pw.ent) {
            s.wm = wm;
            if (!s.structurally_zero()) all_zero = false;
        }
        if (all_zero) break;
        acc = acc + pw;
    }
    SeriesMatrix r = mat_mul(acc, x0inv);
    for (auto& s : r.ent) s.wm = wm;
    return r;
}

// Entrywise graded transposition: (X^t)_{ij} = (-1)^{|i||j|+|j|} X_{ji}.
inline SeriesMatrix transpose_t(const SeriesMatrix& x) {
    SeriesMatrix m(x.ctx, x.col_labels, x.row_labels);
    for (int i = 1; i <= m.rows(); ++i)
        for (int j = 1; j <= m.cols(); ++j) {
            int pi = m.row_parity(i), pj = m.col_parity(j);
            const TruncSeries& s = x.at(j, i);
            m.at(i, j) = ((pi & pj) ^ pj) ? s.negated() : s;
        }
    return m;
}

// (X^iota)_{ij} = (-1)^{|i||j|+|i|} theta_i theta_j X_{j'i'}; full square only.
inline SeriesMatrix transpose_iota(const SeriesMatrix& x) {
    if (!x.is_full_square()) throw std::invalid_argument("transpose_iota: full matrix only");
    SeriesMatrix m = SeriesMatrix::square(x.ctx);
    const SuperContext& cx = x.ctx;
    for (int i = 1; i <= cx.size(); ++i)
        for (int j = 1; j <= cx.size(); ++j) {
            int sg = (cx.parity(i) & cx.parity(j)) ^ cx.parity(i);
            int th = cx.theta(i) * cx.theta(j);
            const TruncSeries& s = x.at(cx.prime(j), cx.prime(i));
            TruncSeries v = sg ? s.negated() : s;
            m.at(i, j) = th < 0 ? v.negated() : v;
        }
    return m;
}

inline SeriesMatrix scalar_matrix(const SuperContext& cx, const std::vector<Rat>& vals,
                                  int wm = WM_INF) {
    SeriesMatrix m = SeriesMatrix::square(cx);
    int n = cx.size();
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j)
            m.at(i, j) = TruncSeries::constant(vals[(i - 1) * n + (j - 1)], wm);
    return m;
}

// J = diag((-1)^{|i|})
inline SeriesMatrix j_matrix(const SuperContext& cx, int wm = WM_INF) {
    std::vector<Rat> v(cx.size() * cx.size(), Rat(0));
    for (int i = 1; i <= cx.size(); ++i) v[(i - 1) * cx.size() + (i - 1)] = cx.parity(i) ? -1 : 1;
    return scalar_matrix(cx, v, wm);
}

// G0 = sum_i (-1)^{|i|} theta_i E_{i,i'}
inline SeriesMatrix g0_matrix(const SuperContext& cx, int wm = WM_INF) {
    std::vector<Rat> v(cx.size() * cx.size(), Rat(0));
    for (int i = 1; i <= cx.size(); ++i) {
        Rat val((cx.parity(i) ? -1 : 1) * cx.theta(i));
        v[(i - 1) * cx.size() + (cx.prime(i) - 1)] = val;
    }
    return scalar_matrix(cx, v, wm);
}

// (i,j)-th quasi-determinant of X (positions, 1-based):
// x_{ij} - r_i^j (X^{ij})^{-1} c_j^i with graded rectangular products.
inline TruncSeries quasi_determinant(const SeriesMatrix& x, int i, int j) {
    if (x.rows() != x.cols()) throw std::invalid_argument("quasi_determinant: not square");
    const int n = x.rows();
    if (n == 1) return x.at(1, 1);
    std::vector<int> rr, cc;
    for (int a = 1; a <= n; ++a)
        if (a != i) rr.push_back(a);
    for (int b = 1; b <= n; ++b)
        if (b != j) cc.push_back(b);
    SeriesMatrix minor = x.submatrix(rr, cc);
    SeriesMatrix minv = mat_inverse(minor);
    SeriesMatrix row = x.submatrix({i}, cc), col = x.submatrix(rr, {j});
    SeriesMatrix prod = mat_mul(mat_mul(row, minv), col);
    return x.at(i, j) - prod.at(1, 1);
}

struct GaussDecomposition {
    SeriesMatrix f;   // lower unitriangular
    SeriesMatrix d;   // diagonal
    SeriesMatrix e;   // upper unitriangular
};

// T = F . D . E under the graded product; pivots are the quasi-determinants
// of the leading principal submatrices.
inline GaussDecomposition gauss_decompose(const SeriesMatrix& t) {
    if (t.rows() != t.cols()) throw std::invalid_argument("gauss_decompose: not square");
    const int n = t.rows();
    const int wm = t.min_wm();
    SeriesMatrix s = t;  // working residual
    GaussDecomposition g{SeriesMatrix(t.ctx, t.row_labels, t.col_labels),
                         SeriesMatrix(t.ctx, t.row_labels, t.col_labels),
                         SeriesMatrix(t.ctx, t.row_labels, t.col_labels)};
    for (int i = 1; i <= n; ++i) {
        g.f.at(i, i) = TruncSeries::one(wm);
        g.e.at(i, i) = TruncSeries::one(wm);
    }
    for (int k = 1; k <= n; ++k) {
        TruncSeries dk = s.at(k, k);
        TruncSeries dkinv = dk.inverted();
        g.d.at(k, k) = dk;
        for (int j = k + 1; j <= n; ++j) {
            g.e.at(k, j) = dkinv * s.at(k, j);
            g.f.at(j, k) = s.at(j, k) * dkinv;
        }
        for (int i2 = k + 1; i2 <= n; ++i2)
            for (int j2 = k + 1; j2 <= n; ++j2) {
                int sg = (s.row_parity(i2) ^ s.row_parity(k)) & (s.row_parity(k) ^ s.col_parity(j2));
                TruncSeries upd = g.f.at(i2, k) * dk * g.e.at(k, j2);
                s.at(i2, j2) = s.at(i2, j2) - (sg ? upd.negated() : upd);
            }
    }
    return g;
}

// Reconstruction under the graded product (for verification).
inline SeriesMatrix gauss_multiply(const GaussDecomposition& g) {
    return mat_mul(mat_mul(g.f, g.d), g.e);
}

// Embeds a full square series matrix as sum E_{ij}(slot) (x) x_{ij} in an
// m-slot tensor algebra.
inline SuperTensor<TruncSeries> slot_tensor(const SeriesMatrix& x, int m, int slot) {
    const SuperContext& cx = x.ctx;
    SuperTensor<TruncSeries> t;
    t.m = m;
    for (int i = 1; i <= cx.size(); ++i)
        for (int j = 1; j <= cx.size(); ++j) {
            const TruncSeries& s = x.at(i, j);
            if (s.structurally_zero() && s.wm >= WM_INF) continue;
            SuperTensor<TruncSeries> u = unit_tensor<TruncSeries>(cx, m, i, j, slot);
            t = t + scale(u, s);
        }
    return t;
}

}  // namespace sy
