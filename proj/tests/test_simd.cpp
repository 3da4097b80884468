#include "gk/simd/cauchy.hpp"

#include <doctest.h>

#include <random>
#include <vector>

using namespace gk;
using simd::Isa;

namespace {

struct Data {
    std::vector<double> p_re, p_im, r_re, r_im, q_re, q_im, s_re, s_im, a_re, a_im, b_re, b_im;
    simd::RowFactors rows() const { return {p_re.data(), p_im.data(), r_re.data(), r_im.data(), p_re.size()}; }
    simd::ColFactors cols() const { return {q_re.data(), q_im.data(), s_re.data(), s_im.data(), q_re.size()}; }
};

Data make_data(std::size_t m, std::size_t n, unsigned seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    Data d;
    auto fill = [&](std::vector<double>& v, std::size_t k) {
        v.resize(k);
        for (double& x : v) x = u(rng);
    };
    for (auto* v : {&d.p_re, &d.p_im, &d.r_re, &d.r_im, &d.a_re, &d.a_im}) fill(*v, m);
    for (auto* v : {&d.q_re, &d.q_im, &d.s_re, &d.s_im, &d.b_re, &d.b_im}) fill(*v, n);
    // keep denominators away from zero
    for (double& x : d.r_re) x += 10.0;
    return d;
}

}  // namespace

TEST_CASE("scalar Cauchy fill matches the definition") {
    const Data d = make_data(5, 7, 1);
    std::vector<std::complex<double>> out(5 * 7);
    simd::scalar::cauchy_fill(d.rows(), d.cols(), out.data(), 5);
    for (std::size_t i = 0; i < 5; ++i)
        for (std::size_t j = 0; j < 7; ++j) {
            const std::complex<double> den = std::complex<double>(d.p_re[i], d.p_im[i]) *
                                                 std::complex<double>(d.q_re[j], d.q_im[j]) +
                                             std::complex<double>(d.r_re[i], d.r_im[i]) +
                                             std::complex<double>(d.s_re[j], d.s_im[j]);
            CHECK(std::abs(out[i + 5 * j] - 1.0 / den) < 1e-15);
        }
}

TEST_CASE("AVX2 kernels match the scalar reference") {
    if (!simd::isa_available(Isa::Avx2)) {
        MESSAGE("AVX2 not available on this CPU; equivalence not checked");
        return;
    }
    // odd sizes exercise the remainder lanes
    for (auto [m, n] : {std::pair<std::size_t, std::size_t>{1, 1}, {3, 5}, {17, 9}, {64, 131}}) {
        const Data d = make_data(m, n, static_cast<unsigned>(m * 1000 + n));
        std::vector<std::complex<double>> a(m * n), b(m * n);
        simd::scalar::cauchy_fill(d.rows(), d.cols(), a.data(), m);
        simd::avx2::cauchy_fill(d.rows(), d.cols(), b.data(), m);
        double worst = 0.0;
        for (std::size_t k = 0; k < a.size(); ++k) worst = std::max(worst, std::abs(a[k] - b[k]) / std::abs(a[k]));
        CHECK(worst < 1e-14);

        const auto s1 = simd::scalar::cauchy_bilinear(d.rows(), d.a_re.data(), d.a_im.data(), d.cols(),
                                                      d.b_re.data(), d.b_im.data());
        const auto s2 = simd::avx2::cauchy_bilinear(d.rows(), d.a_re.data(), d.a_im.data(), d.cols(),
                                                    d.b_re.data(), d.b_im.data());
        CHECK(std::abs(s1 - s2) <= 1e-13 * (1.0 + std::abs(s1)));
    }
}

TEST_CASE("dispatch") {
    CHECK(simd::isa_available(Isa::Scalar));
    CHECK(simd::fill_for(Isa::Scalar) == &simd::scalar::cauchy_fill);
    const Isa isa = simd::active_isa();
    CHECK(simd::isa_available(isa));
    CHECK(std::string(simd::isa_name(Isa::Scalar)) == "scalar");
}
