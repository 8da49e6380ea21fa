#include "cubapprox/sieve_kernel.hpp"

#if defined(__x86_64__) || defined(__i386__)

#include <immintrin.h>

#include <array>

namespace cubapprox::kernels {

namespace {

// Byte expansion of an 8-bit mask: bit k -> byte k in {0, 1}.
constexpr std::array<std::uint64_t, 256> make_expand() {
    std::array<std::uint64_t, 256> lut{};
    for (unsigned m = 0; m < 256; ++m) {
        std::uint64_t v = 0;
        for (unsigned k = 0; k < 8; ++k)
            if (m & (1u << k)) v |= std::uint64_t{1} << (8 * k);
        lut[m] = v;
    }
    return lut;
}

constexpr auto kExpand = make_expand();

}  // namespace

__attribute__((target("avx2"))) void sieve_row_avx2(std::span<const ResidueTable> tables, std::size_t length,
                                                    std::uint8_t* out) {
    constexpr std::size_t kMaxTables = 16;
    const std::size_t nt = tables.size() < kMaxTables ? tables.size() : kMaxTables;
    __m256i residue[kMaxTables];
    __m256i step[kMaxTables];
    __m256i modulus[kMaxTables];
    for (std::size_t k = 0; k < nt; ++k) {
        const ResidueTable& t = tables[k];
        alignas(32) std::int32_t init[8];
        for (int lane = 0; lane < 8; ++lane) init[lane] = (t.start + lane) % t.modulus;
        residue[k] = _mm256_load_si256(reinterpret_cast<const __m256i*>(init));
        step[k] = _mm256_set1_epi32(8 % t.modulus);
        modulus[k] = _mm256_set1_epi32(t.modulus);
    }
    const __m256i one = _mm256_set1_epi32(1);
    std::size_t i = 0;
    for (; i + 8 <= length; i += 8) {
        __m256i acc = one;
        for (std::size_t k = 0; k < nt; ++k) {
            __m256i v = _mm256_i32gather_epi32(tables[k].table, residue[k], 4);
            acc = _mm256_and_si256(acc, v);
            // residue = (residue + step) mod m, with both terms below m
            __m256i r = _mm256_add_epi32(residue[k], step[k]);
            __m256i ge = _mm256_cmpgt_epi32(r, _mm256_sub_epi32(modulus[k], one));
            residue[k] = _mm256_sub_epi32(r, _mm256_and_si256(ge, modulus[k]));
        }
        int mask = _mm256_movemask_ps(_mm256_castsi256_ps(_mm256_cmpeq_epi32(acc, one)));
        std::uint64_t bytes = kExpand[static_cast<unsigned>(mask)];
        __builtin_memcpy(out + i, &bytes, 8);
    }
    if (i < length) {
        ResidueTable tail[kMaxTables];
        for (std::size_t k = 0; k < nt; ++k) {
            tail[k] = tables[k];
            tail[k].start = static_cast<std::int32_t>((tables[k].start + i) % static_cast<std::size_t>(tables[k].modulus));
        }
        sieve_row_scalar(std::span<const ResidueTable>(tail, nt), length - i, out + i);
    }
    if (tables.size() > nt) {
        // uncommon: more moduli than vector registers reserved; finish in scalar
        std::uint8_t* extra = out;
        for (std::size_t k = nt; k < tables.size(); ++k) {
            const ResidueTable& t = tables[k];
            std::int32_t r = t.start;
            for (std::size_t j = 0; j < length; ++j) {
                extra[j] &= static_cast<std::uint8_t>(t.table[r]);
                if (++r == t.modulus) r = 0;
            }
        }
    }
}

}  // namespace cubapprox::kernels

#endif
