#include "gk/simd/cauchy.hpp"

#include <cstdlib>
#include <cstring>

namespace gk::simd {

bool isa_available(Isa isa) {
    if (isa == Isa::Scalar) return true;
#if defined(__x86_64__) || defined(__i386__)
    __builtin_cpu_init();
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

Isa active_isa() {
    static const Isa isa = [] {
        const char* env = std::getenv("GK_SIMD");
        if (env && std::strcmp(env, "scalar") == 0) return Isa::Scalar;
        return isa_available(Isa::Avx2) ? Isa::Avx2 : Isa::Scalar;
    }();
    return isa;
}

const char* isa_name(Isa isa) { return isa == Isa::Avx2 ? "avx2" : "scalar"; }

FillFn fill_for(Isa isa) { return isa == Isa::Avx2 ? &avx2::cauchy_fill : &scalar::cauchy_fill; }

BilinearFn bilinear_for(Isa isa) {
    return isa == Isa::Avx2 ? &avx2::cauchy_bilinear : &scalar::cauchy_bilinear;
}

void cauchy_fill(const RowFactors& r, const ColFactors& c, std::complex<double>* out, std::size_t ld) {
    static const FillFn fn = fill_for(active_isa());
    fn(r, c, out, ld);
}

std::complex<double> cauchy_bilinear(const RowFactors& r, const double* ar, const double* ai,
                                     const ColFactors& c, const double* br, const double* bi) {
    static const BilinearFn fn = bilinear_for(active_isa());
    return fn(r, ar, ai, c, br, bi);
}

}  // namespace gk::simd
