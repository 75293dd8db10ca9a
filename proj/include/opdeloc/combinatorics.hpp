#pragma once

#include <bit>
#include <cstdint>
#include <vector>

namespace opdeloc {

using Mask = std::uint64_t;

inline constexpr int kMaxModes = 63;

// Binomial coefficients C(n, k) for 0 <= n, k <= kMaxModes + 1.
std::uint64_t binomial(int n, int k);

// Colexicographic rank among masks of the same popcount:
//   rank(S) = sum_j C(p_j, j+1) for the ascending set bits p_0 < p_1 < ...
// so rank({0..s-1}) = 0 and ranks enumerate 0..C(L,s)-1.
std::uint64_t colex_rank(Mask m);
Mask colex_unrank(std::uint64_t index, int num_modes, int size);

// Next mask with the same popcount in increasing numeric (= colex) order.
inline Mask next_combination(Mask m) {
    const Mask low = m & (~m + 1);
    const Mask ripple = m + low;
    return ripple | (((m ^ ripple) >> 2) / low);
}

inline Mask low_bits(int n) { return n >= 64 ? ~Mask{0} : (Mask{1} << n) - 1; }

// Table-driven colex rank: one lookup per byte of the mask.
class RankTable {
public:
    explicit RankTable(int num_modes);

    std::uint64_t rank(Mask m) const {
        std::uint64_t r = 0;
        int below = 0;
        for (int c = 0; c < chunks_; ++c) {
            const unsigned byte = static_cast<unsigned>((m >> (8 * c)) & 0xFFu);
            r += table_[(static_cast<std::size_t>(c) * 256 + byte) * stride_ + below];
            below += std::popcount(byte);
        }
        return r;
    }

private:
    int chunks_ = 0;
    int stride_ = 0;
    std::vector<std::uint64_t> table_;
};

}  // namespace opdeloc
