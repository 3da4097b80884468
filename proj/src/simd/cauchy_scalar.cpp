#include "gk/simd/cauchy.hpp"

namespace gk::simd::scalar {

void cauchy_fill(const RowFactors& r, const ColFactors& c, std::complex<double>* out, std::size_t ld) {
    for (std::size_t j = 0; j < c.n; ++j) {
        const double qr = c.q_re[j], qi = c.q_im[j], sr = c.s_re[j], si = c.s_im[j];
        std::complex<double>* col = out + j * ld;
        for (std::size_t i = 0; i < r.n; ++i) {
            const double dr = r.p_re[i] * qr - r.p_im[i] * qi + r.r_re[i] + sr;
            const double di = r.p_re[i] * qi + r.p_im[i] * qr + r.r_im[i] + si;
            const double inv = 1.0 / (dr * dr + di * di);
            col[i] = {dr * inv, -di * inv};
        }
    }
}

std::complex<double> cauchy_bilinear(const RowFactors& r, const double* a_re, const double* a_im,
                                     const ColFactors& c, const double* b_re, const double* b_im) {
    double tr = 0.0, ti = 0.0;
    for (std::size_t j = 0; j < c.n; ++j) {
        const double qr = c.q_re[j], qi = c.q_im[j], sr = c.s_re[j], si = c.s_im[j];
        double ur = 0.0, ui = 0.0;
        for (std::size_t i = 0; i < r.n; ++i) {
            const double dr = r.p_re[i] * qr - r.p_im[i] * qi + r.r_re[i] + sr;
            const double di = r.p_re[i] * qi + r.p_im[i] * qr + r.r_im[i] + si;
            const double inv = 1.0 / (dr * dr + di * di);
            const double cr = dr * inv, ci = -di * inv;
            ur += a_re[i] * cr - a_im[i] * ci;
            ui += a_re[i] * ci + a_im[i] * cr;
        }
        tr += ur * b_re[j] - ui * b_im[j];
        ti += ur * b_im[j] + ui * b_re[j];
    }
    return {tr, ti};
}

}  // namespace gk::simd::scalar
