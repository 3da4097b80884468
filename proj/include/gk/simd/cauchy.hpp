#pragma once

// Cauchy-type kernels 1 / (P_i Q_j + R_i + S_j) over complex split arrays.
// These are the inner loops of every double contour integral in the library.

#include <complex>
#include <cstddef>

namespace gk::simd {

enum class Isa { Scalar, Avx2 };

struct RowFactors {  // indexed by i
    const double* p_re;
    const double* p_im;
    const double* r_re;
    const double* r_im;
    std::size_t n;
};

struct ColFactors {  // indexed by j
    const double* q_re;
    const double* q_im;
    const double* s_re;
    const double* s_im;
    std::size_t n;
};

// out[i + j * ld] = 1 / (P_i Q_j + R_i + S_j), column-major complex.
using FillFn = void (*)(const RowFactors&, const ColFactors&, std::complex<double>* out, std::size_t ld);
// sum_{i,j} a_i b_j / (P_i Q_j + R_i + S_j)
using BilinearFn = std::complex<double> (*)(const RowFactors&, const double* a_re, const double* a_im,
                                            const ColFactors&, const double* b_re, const double* b_im);

namespace scalar {
void cauchy_fill(const RowFactors&, const ColFactors&, std::complex<double>*, std::size_t);
std::complex<double> cauchy_bilinear(const RowFactors&, const double*, const double*, const ColFactors&,
                                     const double*, const double*);
}  // namespace scalar

namespace avx2 {
void cauchy_fill(const RowFactors&, const ColFactors&, std::complex<double>*, std::size_t);
std::complex<double> cauchy_bilinear(const RowFactors&, const double*, const double*, const ColFactors&,
                                     const double*, const double*);
}  // namespace avx2

// Selected once per process: AVX2+FMA when the CPU has them, unless the
// environment variable GK_SIMD=scalar forces the reference path.
Isa active_isa();
const char* isa_name(Isa isa);
bool isa_available(Isa isa);

void cauchy_fill(const RowFactors&, const ColFactors&, std::complex<double>*, std::size_t);
std::complex<double> cauchy_bilinear(const RowFactors&, const double*, const double*, const ColFactors&,
                                     const double*, const double*);

FillFn fill_for(Isa isa);
BilinearFn bilinear_for(Isa isa);

}  // namespace gk::simd
