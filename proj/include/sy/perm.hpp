#pragma once

#include <algorithm>
#include <functional>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace sy {

// Permutation in one-line notation: image[k] is the image of k+1, values 1..m.
struct Permutation {
    std::vector<int> image;

    Permutation() = default;
    explicit Permutation(std::vector<int> img) : image(std::move(img)) { validate(); }

    static Permutation identity(int m) {
        std::vector<int> v(m);
        std::iota(v.begin(), v.end(), 1);
        return Permutation(std::move(v));
    }

    int size() const { return static_cast<int>(image.size()); }
    int operator()(int k) const { return image.at(k - 1); }

    bool operator==(const Permutation& o) const { return image == o.image; }
    bool operator<(const Permutation& o) const { return image < o.image; }

    void validate() const {
        int m = size();
        std::vector<char> seen(m + 1, 0);
        for (int v : image) {
            if (v < 1 || v > m || seen[v]) throw std::invalid_argument("not a permutation");
            seen[v] = 1;
        }
    }
};

// (sigma . tau)(k) = sigma(tau(k)).
inline Permutation compose(const Permutation& s, const Permutation& t) {
    if (s.size() != t.size()) throw std::invalid_argument("size mismatch");
    std::vector<int> v(s.size());
    for (int k = 1; k <= t.size(); ++k) v[k - 1] = s(t(k));
    return Permutation(std::move(v));
}

// All m! permutations in lexicographic order. Deterministic so reports are
// reproducible. Desk-scale guard m <= 8.
inline void enumerate(int m, const std::function<void(const Permutation&)>& fn) {
    if (m < 1 || m > 8) throw std::out_of_range("enumerate: need 1 <= m <= 8");
    std::vector<int> v(m);
    std::iota(v.begin(), v.end(), 1);
    do {
        fn(Permutation(v));
    } while (std::next_permutation(v.begin(), v.end()));
}

inline std::vector<Permutation> all_permutations(int m) {
    std::vector<Permutation> out;
    enumerate(m, [&](const Permutation& p) { out.push_back(p); });
    return out;
}

inline int inversions(const Permutation& s) {
    int m = s.size(), inv = 0;
    for (int a = 1; a <= m; ++a)
        for (int b = a + 1; b <= m; ++b)
            if (s(a) > s(b)) ++inv;
    return inv;
}

inline int sign(const Permutation& s) { return inversions(s) % 2 == 0 ? 1 : -1; }

// Reduced word in adjacent transpositions s_i = (i,i+1), as the list of i's.
// Bubble sort; length equals the inversion count, so the word is reduced.
inline std::vector<int> reduced_word(const Permutation& s) {
    std::vector<int> w = s.image, word;
    int m = s.size();
    bool moved = true;
    while (moved) {
        moved = false;
        for (int i = 0; i + 1 < m; ++i) {
            if (w[i] > w[i + 1]) {
                std::swap(w[i], w[i + 1]);
                word.push_back(i + 1);
                moved = true;
            }
        }
    }
    std::reverse(word.begin(), word.end());
    return word;
}

// The graded sign: product of eps_i = (-1)^{|i||i+1|} over a reduced word.
// Only well-defined (word-independent) on homogeneous parity vectors, which
// is where every use lives; mixed vectors are rejected rather than guessed.
// All-odd gives sgn, all-even gives +1.
inline int epsilon(const Permutation& s, const std::vector<int>& parities) {
    if (static_cast<int>(parities.size()) != s.size())
        throw std::invalid_argument("epsilon: parity vector length mismatch");
    for (int p : parities) {
        if (p != 0 && p != 1) throw std::invalid_argument("epsilon: parity not a bit");
        if (p != parities.front()) throw std::invalid_argument("epsilon: mixed parities rejected");
    }
    int e = 1;
    for (int i : reduced_word(s)) {
        (void)i;  // homogeneous: eps_i is position-independent
        if (parities.front() == 1) e = -e;
    }
    return e;
}

// The projection Omega_p used to index the second factor of the explicit
// twisted-Berezinian formula. Pairs (sigma(i), sigma(p+1-i)) are consumed
// outside-in; each pair maps through the table below on the index set of the
// still-unconsumed elements (c_1 < ... < c_q denotes that set in order):
//   (c_a,c_b) -> (c_b,c_a)          a,b < q
//   (c_a,c_q) -> (c_{q-1},c_a)      a < q-1
//   (c_q,c_b) -> (c_b,c_{q-1})      b < q-1
//   (c_{q-1},c_q), (c_q,c_{q-1}) -> (c_{q-1},c_{q-2})
// The images fill output slots (i, p-i); the largest element always lands in
// slot p. For even p the innermost pair collapses to the smaller remaining
// element (the p=2 rule); for odd p the middle input element is consumed by
// no slot.
inline Permutation omega(const Permutation& sigma) {
    const int p = sigma.size();
    if (p < 2) throw std::invalid_argument("omega: need p >= 2");
    std::vector<int> out(p, 0);
    out[p - 1] = p;

    std::vector<int> avail(p);
    std::iota(avail.begin(), avail.end(), 1);

    auto rank_of = [&](int v) {
        auto it = std::lower_bound(avail.begin(), avail.end(), v);
        return static_cast<int>(it - avail.begin()) + 1;  // 1-based rank
    };
    auto erase_val = [&](int v) {
        avail.erase(std::lower_bound(avail.begin(), avail.end(), v));
    };

    for (int i = 1; 2 * i <= p; ++i) {
        int x = sigma(i), y = sigma(p + 1 - i);
        if (2 * i == p) {
            // innermost pair of an even p: both orders map to the smaller element
            out[i - 1] = avail.front();
            break;
        }
        const int q = static_cast<int>(avail.size());
        int a = rank_of(x), b = rank_of(y);
        int first, second;
        if (a < q && b < q) {
            first = y;
            second = x;
        } else if (b == q && a < q - 1) {
            first = avail[q - 2];
            second = x;
        } else if (a == q && b < q - 1) {
            first = y;
            second = avail[q - 2];
        } else {
            // {a,b} = {q-1,q} in either order
            first = avail[q - 2];
            second = avail[q - 3];
        }
        out[i - 1] = first;
        out[p - 1 - i] = second;
        erase_val(x);
        erase_val(y);
    }
    return Permutation(std::move(out));
}

}  // namespace sy
