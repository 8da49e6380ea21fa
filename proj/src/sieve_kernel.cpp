#include "cubapprox/sieve_kernel.hpp"

#include <cstdlib>

namespace cubapprox::kernels {

std::string_view to_string(Isa isa) { return isa == Isa::Avx2 ? "avx2" : "scalar"; }

std::optional<Isa> parse_isa(std::string_view text) {
    if (text == "scalar") return Isa::Scalar;
    if (text == "avx2") return Isa::Avx2;
    return std::nullopt;
}

bool isa_supported(Isa isa) {
    switch (isa) {
    case Isa::Scalar:
        return true;
    case Isa::Avx2:
#if defined(__x86_64__) || defined(__i386__)
        return __builtin_cpu_supports("avx2");
#else
        return false;
#endif
    }
    return false;
}

Isa detect_isa() {
    if (const char* env = std::getenv("CUBAPPROX_KERNEL")) {
        if (auto requested = parse_isa(env); requested && isa_supported(*requested)) return *requested;
    }
    return isa_supported(Isa::Avx2) ? Isa::Avx2 : Isa::Scalar;
}

SieveRowFn sieve_row_for(Isa isa) {
#if defined(__x86_64__) || defined(__i386__)
    if (isa == Isa::Avx2 && isa_supported(Isa::Avx2)) return &sieve_row_avx2;
#endif
    (void)isa;
    return &sieve_row_scalar;
}

}  // namespace cubapprox::kernels
