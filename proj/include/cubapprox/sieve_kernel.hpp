#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>

namespace cubapprox::kernels {

/// Residue-indexed survival table for one modulus along an enumeration row:
/// position i of the row has residue (start + i) mod modulus.
struct ResidueTable {
    const std::int32_t* table = nullptr;  ///< modulus entries, each 0 or 1
    std::int32_t modulus = 1;
    std::int32_t start = 0;  ///< in [0, modulus)
};

/// out[i] = AND over tables of table[(start + i) mod modulus], as 0/1 bytes.
using SieveRowFn = void (*)(std::span<const ResidueTable> tables, std::size_t length, std::uint8_t* out);

void sieve_row_scalar(std::span<const ResidueTable> tables, std::size_t length, std::uint8_t* out);
#if defined(__x86_64__) || defined(__i386__)
void sieve_row_avx2(std::span<const ResidueTable> tables, std::size_t length, std::uint8_t* out);
#endif

enum class Isa { Scalar, Avx2 };

std::string_view to_string(Isa isa);
/// "scalar" or "avx2"; nullopt otherwise.
std::optional<Isa> parse_isa(std::string_view text);
bool isa_supported(Isa isa);

/// Best supported ISA, unless CUBAPPROX_KERNEL=scalar|avx2 requests one.
Isa detect_isa();
SieveRowFn sieve_row_for(Isa isa);

}  // namespace cubapprox::kernels
