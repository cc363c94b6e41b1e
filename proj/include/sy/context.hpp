#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace sy {

// Index data for gl(M|N): the index set I = {1..M+N} with parity |i|,
// the signs theta_i and the involution i' used by the orthosymplectic
// twist. theta and ' follow the block conventions
//   theta_i = +1 for i <= M+n, -1 above (N = 2n),
//   i' = M+1-i on the even block, 2M+N+1-i on the odd block.
// N must be even whenever theta/prime are consulted; the plain Yangian
// layer only needs parity, so odd N is allowed there.
struct SuperContext {
    int M = 0;
    int N = 0;

    SuperContext() = default;
    SuperContext(int m, int n) : M(m), N(n) {
        if (m < 0 || n < 0 || m + n < 1)
            throw std::invalid_argument("SuperContext: bad shape (" + std::to_string(m) + "|" +
                                        std::to_string(n) + ")");
    }

    int size() const { return M + N; }

    // |i| in {0,1}, 1-based index.
    int parity(int i) const { return i > M ? 1 : 0; }

    int theta(int i) const {
        check_even_N();
        return i <= M + N / 2 ? 1 : -1;
    }

    int prime(int i) const {
        check_even_N();
        return i <= M ? M + 1 - i : 2 * M + N + 1 - i;
    }

    bool operator==(const SuperContext& o) const { return M == o.M && N == o.N; }
    bool operator!=(const SuperContext& o) const { return !(*this == o); }

    void check_index(int i) const {
        if (i < 1 || i > size()) throw std::out_of_range("index " + std::to_string(i));
    }

private:
    void check_even_N() const {
        if (N % 2 != 0) throw std::logic_error("theta/prime need even N");
    }
};

}  // namespace sy
