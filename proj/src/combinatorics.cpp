#include "opdeloc/combinatorics.hpp"

#include <array>
#include <stdexcept>

namespace opdeloc {

namespace {

constexpr int kTableSize = kMaxModes + 2;

const std::array<std::array<std::uint64_t, kTableSize>, kTableSize>& pascal() {
    static const auto table = [] {
        std::array<std::array<std::uint64_t, kTableSize>, kTableSize> c{};
        for (int n = 0; n < kTableSize; ++n) {
            c[n][0] = 1;
            for (int k = 1; k <= n; ++k) c[n][k] = c[n - 1][k - 1] + (k < n ? c[n - 1][k] : 0);
        }
        return c;
    }();
    return table;
}

}  // namespace

std::uint64_t binomial(int n, int k) {
    if (n < 0 || k < 0 || k > n) return 0;
    if (n >= kTableSize) throw std::out_of_range("binomial argument too large");
    return pascal()[n][k];
}

std::uint64_t colex_rank(Mask m) {
    std::uint64_t r = 0;
    int j = 0;
    while (m) {
        const int p = std::countr_zero(m);
        r += binomial(p, ++j);
        m &= m - 1;
    }
    return r;
}

Mask colex_unrank(std::uint64_t index, int num_modes, int size) {
    if (size < 0 || size > num_modes || num_modes > kMaxModes)
        throw std::invalid_argument("colex_unrank: bad sector");
    if (index >= binomial(num_modes, size)) throw std::out_of_range("colex_unrank: index out of range");
    Mask m = 0;
    int p = num_modes - 1;
    for (int j = size; j >= 1; --j) {
        while (binomial(p, j) > index) --p;
        index -= binomial(p, j);
        m |= Mask{1} << p;
        --p;
    }
    return m;
}

RankTable::RankTable(int num_modes) {
    if (num_modes < 1 || num_modes > kMaxModes) throw std::invalid_argument("RankTable: bad mode count");
    chunks_ = (num_modes + 7) / 8;
    stride_ = 8 * chunks_ + 1;
    table_.assign(static_cast<std::size_t>(chunks_) * 256 * stride_, 0);
    for (int c = 0; c < chunks_; ++c) {
        for (unsigned byte = 0; byte < 256; ++byte) {
            for (int below = 0; below <= 8 * c; ++below) {
                std::uint64_t r = 0;
                int j = below;
                for (int bit = 0; bit < 8; ++bit) {
                    if (byte & (1u << bit)) {
                        const int p = 8 * c + bit;
                        if (p >= kTableSize) continue;
                        r += binomial(p, ++j);
                    }
                }
                table_[(static_cast<std::size_t>(c) * 256 + byte) * stride_ + below] = r;
            }
        }
    }
}

}  // namespace opdeloc
