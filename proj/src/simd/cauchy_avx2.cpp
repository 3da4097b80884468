#include "gk/simd/cauchy.hpp"

#include <immintrin.h>

namespace gk::simd::avx2 {

namespace {

struct Den {
    __m256d re, im;
};

inline Den inverse_denominator(const RowFactors& r, std::size_t i, __m256d qr, __m256d qi, __m256d sr,
                               __m256d si) {
    const __m256d pr = _mm256_loadu_pd(r.p_re + i), pi = _mm256_loadu_pd(r.p_im + i);
    const __m256d dr = _mm256_add_pd(_mm256_fmsub_pd(pr, qr, _mm256_mul_pd(pi, qi)),
                                     _mm256_add_pd(_mm256_loadu_pd(r.r_re + i), sr));
    const __m256d di = _mm256_add_pd(_mm256_fmadd_pd(pr, qi, _mm256_mul_pd(pi, qr)),
                                     _mm256_add_pd(_mm256_loadu_pd(r.r_im + i), si));
    const __m256d inv = _mm256_div_pd(_mm256_set1_pd(1.0), _mm256_fmadd_pd(dr, dr, _mm256_mul_pd(di, di)));
    return {_mm256_mul_pd(dr, inv), _mm256_sub_pd(_mm256_setzero_pd(), _mm256_mul_pd(di, inv))};
}

inline double hsum(__m256d v) {
    __m128d lo = _mm256_castpd256_pd128(v), hi = _mm256_extractf128_pd(v, 1);
    lo = _mm_add_pd(lo, hi);
    return _mm_cvtsd_f64(_mm_add_sd(lo, _mm_unpackhi_pd(lo, lo)));
}

}  // namespace

void cauchy_fill(const RowFactors& r, const ColFactors& c, std::complex<double>* out, std::size_t ld) {
    const std::size_t n4 = r.n & ~std::size_t(3);
    for (std::size_t j = 0; j < c.n; ++j) {
        const __m256d qr = _mm256_set1_pd(c.q_re[j]), qi = _mm256_set1_pd(c.q_im[j]);
        const __m256d sr = _mm256_set1_pd(c.s_re[j]), si = _mm256_set1_pd(c.s_im[j]);
        double* col = reinterpret_cast<double*>(out + j * ld);
        std::size_t i = 0;
        for (; i < n4; i += 4) {
            const Den d = inverse_denominator(r, i, qr, qi, sr, si);
            // interleave (re0..re3), (im0..im3) into re0 im0 re1 im1 | re2 im2 re3 im3
            const __m256d lo = _mm256_unpacklo_pd(d.re, d.im);  // re0 im0 re2 im2
            const __m256d hi = _mm256_unpackhi_pd(d.re, d.im);  // re1 im1 re3 im3
            _mm256_storeu_pd(col + 2 * i, _mm256_permute2f128_pd(lo, hi, 0x20));
            _mm256_storeu_pd(col + 2 * i + 4, _mm256_permute2f128_pd(lo, hi, 0x31));
        }
        for (; i < r.n; ++i) {
            const double dr = r.p_re[i] * c.q_re[j] - r.p_im[i] * c.q_im[j] + r.r_re[i] + c.s_re[j];
            const double di = r.p_re[i] * c.q_im[j] + r.p_im[i] * c.q_re[j] + r.r_im[i] + c.s_im[j];
            const double inv = 1.0 / (dr * dr + di * di);
            col[2 * i] = dr * inv;
            col[2 * i + 1] = -di * inv;
        }
    }
}

std::complex<double> cauchy_bilinear(const RowFactors& r, const double* a_re, const double* a_im,
                                     const ColFactors& c, const double* b_re, const double* b_im) {
    const std::size_t n4 = r.n & ~std::size_t(3);
    double tr = 0.0, ti = 0.0;
    for (std::size_t j = 0; j < c.n; ++j) {
        const __m256d qr = _mm256_set1_pd(c.q_re[j]), qi = _mm256_set1_pd(c.q_im[j]);
        const __m256d sr = _mm256_set1_pd(c.s_re[j]), si = _mm256_set1_pd(c.s_im[j]);
        __m256d ur = _mm256_setzero_pd(), ui = _mm256_setzero_pd();
        std::size_t i = 0;
        for (; i < n4; i += 4) {
            const Den d = inverse_denominator(r, i, qr, qi, sr, si);
            const __m256d ar = _mm256_loadu_pd(a_re + i), ai = _mm256_loadu_pd(a_im + i);
            ur = _mm256_add_pd(ur, _mm256_fmsub_pd(ar, d.re, _mm256_mul_pd(ai, d.im)));
            ui = _mm256_add_pd(ui, _mm256_fmadd_pd(ar, d.im, _mm256_mul_pd(ai, d.re)));
        }
        double sr_ = hsum(ur), si_ = hsum(ui);
        for (; i < r.n; ++i) {
            const double dr = r.p_re[i] * c.q_re[j] - r.p_im[i] * c.q_im[j] + r.r_re[i] + c.s_re[j];
            const double di = r.p_re[i] * c.q_im[j] + r.p_im[i] * c.q_re[j] + r.r_im[i] + c.s_im[j];
            const double inv = 1.0 / (dr * dr + di * di);
            const double cr = dr * inv, ci = -di * inv;
            sr_ += a_re[i] * cr - a_im[i] * ci;
            si_ += a_re[i] * ci + a_im[i] * cr;
        }
        tr += sr_ * b_re[j] - si_ * b_im[j];
        ti += sr_ * b_im[j] + si_ * b_re[j];
    }
    return {tr, ti};
}

}  // namespace gk::simd::avx2
