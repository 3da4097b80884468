#include "gk/errors.hpp"
#include "gk/zmeasure.hpp"

#include <doctest.h>

#include <cmath>

using namespace gk;

namespace {

const Params half = Params::make(0.5, 0.5);
const Params princ = Params::make({0.3, 0.5}, {0.3, -0.5});

// Weight from box products and hook lengths, written out directly.
double weight_by_boxes(const Partition& l, const XiParams& p) {
    const Partition c = l.conjugate();
    double w = std::pow(1.0 - p.xi, p.base.zzp()) * std::pow(p.xi, l.size());
    for (int i = 0; i < l.length(); ++i)
        for (int j = 0; j < l.row(i); ++j) {
            const double content = j - i;
            const double hook = (l.row(i) - j - 1) + (c.row(j) - i - 1) + 1;
            w *= ((p.base.z + content) * (p.base.zp + content)).real() / (hook * hook);
        }
    return w;
}

}  // namespace

TEST_CASE("parameter admissibility") {
    CHECK(half.series == Series::Complementary);
    CHECK(princ.series == Series::Principal);
    CHECK_THROWS_AS(Params::make(1.0, 1.0), PreconditionError);
    CHECK_THROWS_AS(Params::make(0.5, 1.5), PreconditionError);
    CHECK_THROWS_AS(Params::make({0.3, 0.5}, {0.3, 0.5}), PreconditionError);
    CHECK_THROWS_AS(XiParams::make(half, 1.0), PreconditionError);
    CHECK_THROWS_AS(XiParams::make(half, 0.0), PreconditionError);
    CHECK(Params::make(-0.3, -0.7).series == Series::Complementary);
}

TEST_CASE("weights of small partitions") {
    const XiParams p = XiParams::make(half, 0.3);
    CHECK(weight_partition(Partition(), p) == doctest::Approx(std::pow(0.7, 0.25)).epsilon(1e-15));
    CHECK(weight_partition(Partition({1}), p) == doctest::Approx(std::pow(0.7, 0.25) * 0.3 * 0.25).epsilon(1e-15));
    const double w2 = std::pow(0.7, 0.25) * 0.09 * std::pow(0.5 * 1.5, 2) * 0.25;
    CHECK(weight_partition(Partition({2}), p) == doctest::Approx(w2).epsilon(1e-14));
    CHECK(weight_config(FiniteConfig::parse("-1/2,3/2"), p) == doctest::Approx(w2).epsilon(1e-14));
    CHECK(weight_config(FiniteConfig(), p) == doctest::Approx(std::pow(0.7, 0.25)).epsilon(1e-15));
    CHECK_THROWS_AS(weight_config(FiniteConfig::parse("1/2"), p), PreconditionError);
}

TEST_CASE("weights agree with the box formula in both series") {
    for (const Params& b : {half, princ, Params::make(-0.3, -0.7), Params::make(2.2, 2.9)}) {
        const XiParams p = XiParams::make(b, 0.45);
        for (int n = 0; n <= 9; ++n)
            for (const Partition& l : partitions_of(n)) {
                const double w = weight_by_boxes(l, p);
                CHECK(weight_partition(l, p) == doctest::Approx(w).epsilon(1e-12));
                CHECK(weight_config(to_balanced_config(l), p) == doctest::Approx(w).epsilon(1e-12));
            }
    }
}

TEST_CASE("level masses are the negative binomial law") {
    const XiParams p = XiParams::make(princ, 0.6);
    for (int n = 0; n <= 10; ++n) {
        double s = 0.0;
        for (const Partition& l : partitions_of(n)) s += weight_partition(l, p);
        CHECK(s == doctest::Approx(level_mass(n, p)).epsilon(1e-12));
    }
    double total = 0.0;
    for (int n = 0; n <= 30; ++n) total += level_mass(n, p);
    CHECK(total + tail_mass_beyond(30, p) == doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("enumeration") {
    const XiParams p = XiParams::make(half, 0.2);
    const Enumeration e0 = enumerate_weights(p, 0);
    REQUIRE(e0.items.size() == 1);
    CHECK(e0.tail_mass == doctest::Approx(1.0 - std::pow(0.8, 0.25)).epsilon(1e-14));
    const Enumeration e = enumerate_weights(p, 20);
    CHECK(e.tail_mass < 1e-6);
    CHECK(e.tail_mass > 0.0);
    double s = 0.0;
    for (const auto& w : e.items) s += w.weight;
    CHECK(s + e.tail_mass == doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("correlation oracle") {
    const XiParams p = XiParams::make(princ, 0.2);
    const Enumeration e = enumerate_weights(p, 16);
    const OracleValue empty = correlation_oracle({}, e, Side::K);
    CHECK(empty.value == doctest::Approx(1.0 - e.tail_mass).epsilon(1e-14));
    const HalfInt a = HalfInt::parse("1/2"), b = HalfInt::parse("-1/2"), c = HalfInt::parse("3/2");
    // the two sides agree on positive points and are complementary on negative ones
    CHECK(correlation_oracle({a}, e, Side::K).value == doctest::Approx(correlation_oracle({a}, e, Side::Underline).value));
    CHECK(correlation_oracle({b}, e, Side::K).value + correlation_oracle({b}, e, Side::Underline).value ==
          doctest::Approx(1.0).epsilon(1e-6));
    // balance: the expected numbers of positive and negative points agree
    double pos = 0.0, neg = 0.0;
    for (int k = 0; k < 12; ++k) {
        pos += correlation_oracle({HalfInt::above(k)}, e, Side::K).value;
        neg += correlation_oracle({-HalfInt::above(k)}, e, Side::K).value;
    }
    CHECK(pos == doctest::Approx(neg).epsilon(1e-10));
    // inclusion-exclusion of a pair
    const double pab = correlation_oracle({a, c}, e, Side::K).value;
    CHECK(pab <= correlation_oracle({a}, e, Side::K).value);
    CHECK(correlation_oracle({a}, e, Side::K).tail == doctest::Approx(e.tail_mass));
}
