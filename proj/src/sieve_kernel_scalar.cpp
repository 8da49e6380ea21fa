#include "cubapprox/sieve_kernel.hpp"

#include <cstring>

namespace cubapprox::kernels {

void sieve_row_scalar(std::span<const ResidueTable> tables, std::size_t length, std::uint8_t* out) {
    std::memset(out, 1, length);
    for (const ResidueTable& t : tables) {
        std::int32_t r = t.start;
        for (std::size_t i = 0; i < length; ++i) {
            out[i] &= static_cast<std::uint8_t>(t.table[r]);
            if (++r == t.modulus) r = 0;
        }
    }
}

}  // namespace cubapprox::kernels
