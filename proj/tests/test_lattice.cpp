#include "gk/errors.hpp"
#include "gk/lattice.hpp"

#include <doctest.h>

#include <cmath>
#include <set>

using namespace gk;

namespace {

FiniteConfig cfg(const char* s) { return FiniteConfig::parse(s); }

// dim(lambda) / |lambda|! from the hook-length formula
double hook_ratio(const Partition& l) {
    const Partition c = l.conjugate();
    double r = 1.0;
    for (int i = 0; i < l.length(); ++i)
        for (int j = 0; j < l.row(i); ++j) r /= (l.row(i) - j - 1) + (c.row(j) - i - 1) + 1;
    return r;
}

}  // namespace

TEST_CASE("half-integers parse and print as n/2") {
    CHECK(HalfInt::parse("1/2") == HalfInt::above(0));
    CHECK(HalfInt::parse("-3/2") == -HalfInt::above(1));
    CHECK(HalfInt::parse("7/2").str() == "7/2");
    CHECK_THROWS_AS(HalfInt::parse("2"), PreconditionError);
    CHECK_THROWS_AS(HalfInt::parse("4/2"), PreconditionError);
    CHECK(HalfInt::above(3).floor_abs() == 3);
    CHECK((-HalfInt::above(3)).floor_abs() == 3);
}

TEST_CASE("partition validation and conjugate") {
    CHECK_THROWS_AS(Partition({1, 2}), PreconditionError);
    CHECK_THROWS_AS(Partition({2, 0}), PreconditionError);
    const Partition l({4, 2, 1});
    CHECK(l.size() == 7);
    CHECK(l.conjugate() == Partition({3, 2, 1, 1}));
    CHECK(l.rank() == 2);
    CHECK(Partition::parse("").size() == 0);
}

TEST_CASE("maya diagram of small partitions") {
    CHECK(to_maya(Partition()).difference().empty());
    CHECK(to_maya(Partition({1})).difference() == cfg("-1/2,1/2"));
    CHECK(to_maya(Partition({2, 1})).difference() == cfg("-3/2,3/2"));
    // membership against the defining sequence lambda_i - i + 1/2
    const Partition l({5, 3, 3, 1});
    const MayaDiagram m = to_maya(l);
    std::set<HalfInt> pts;
    for (int i = 1; i <= 40; ++i) pts.insert(HalfInt::from_twice(2 * (l.row(i - 1) - i) + 1));
    for (int t = -61; t <= 61; t += 2) {
        const HalfInt x = HalfInt::from_twice(t);
        if (t > -2 * 30) CHECK(m.contains(x) == (pts.count(x) == 1));
    }
    CHECK(from_maya(m) == l);
}

TEST_CASE("balanced configurations") {
    CHECK(to_balanced_config(Partition()).empty());
    CHECK(to_balanced_config(Partition({1})) == cfg("-1/2,1/2"));
    CHECK(to_balanced_config(Partition({2, 1})) == cfg("-3/2,3/2"));
    CHECK(to_balanced_config(Partition({2})) == cfg("-1/2,3/2"));
    for (int n = 0; n <= 8; ++n)
        for (const Partition& l : partitions_of(n)) {
            const FiniteConfig x = to_balanced_config(l);
            CHECK(x.is_balanced());
            CHECK(from_balanced_config(x) == l);
            CHECK(particle_hole_involution(to_maya(l)) == x);
            CHECK(particle_hole_involution(x) == to_maya(l));
        }
    CHECK_THROWS_AS(from_balanced_config(cfg("1/2")), PreconditionError);
}

TEST_CASE("partition counts") {
    const int p[] = {1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42};
    for (int n = 0; n <= 10; ++n) CHECK(partitions_of(n).size() == static_cast<std::size_t>(p[n]));
    // 2^(2N) subsets, balanced ones counted by the central binomial coefficient
    CHECK(balanced_configs_in_window(4).size() == 70);
}

TEST_CASE("elementary transpositions on diagrams") {
    const auto s = [](const char* w) { return FinitaryPermutation::parse(w); };
    CHECK(apply_sigma(s("[0]"), Partition()) == Partition({1}));
    CHECK(apply_sigma(s("[1]"), Partition({1})) == Partition({2}));
    CHECK(apply_sigma(s("[-1]"), Partition({1})) == Partition({1, 1}));
    CHECK(apply_sigma(s("[5]"), Partition({1})) == Partition({1}));
    CHECK(apply_sigma(s("[0]"), Partition({1})) == Partition());
    CHECK(apply_sigma(s("[3,3]"), Partition({3, 1})) == Partition({3, 1}));
    CHECK(s("[1,0,-2]").apply(HalfInt::parse("-3/2")) == HalfInt::parse("-5/2"));
    CHECK(s("[1,0]").inverse().word == std::vector<int>{0, 1});
    CHECK(s("[1,0,-2]").support_radius() == 2);
}

TEST_CASE("modified action commutes with the involution") {
    for (const FiniteConfig& x : balanced_configs_in_window(3))
        for (int n = -3; n <= 3; ++n) {
            const FinitaryPermutation s{{n}};
            const FiniteConfig y = apply_sigma_modified(s, x);
            CHECK(y.is_balanced());
            CHECK(y == particle_hole_involution(apply_sigma(s, particle_hole_involution(x))));
            CHECK(y == apply_generator_modified(n, x));
        }
    CHECK_THROWS_AS(apply_sigma_modified(FinitaryPermutation{{0}}, cfg("1/2")), PreconditionError);
}

TEST_CASE("dimension ratio matches hook lengths") {
    using boost::multiprecision::cpp_rational;
    CHECK(dim_ratio(Partition()) == cpp_rational(1));
    CHECK(dim_ratio(Partition({1})) == cpp_rational(1));
    CHECK(dim_ratio(Partition({2, 1})) == cpp_rational(1, 3));
    for (int n = 1; n <= 9; ++n)
        for (const Partition& l : partitions_of(n))
            CHECK(static_cast<double>(dim_ratio(l)) == doctest::Approx(hook_ratio(l)).epsilon(1e-14));
}
