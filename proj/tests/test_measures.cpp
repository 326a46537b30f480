#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "discrep/measures.hpp"
#include "discrep/rng.hpp"
#include "test_support.hpp"

using namespace discrep;
using testsupport::random_pm1;
using testsupport::random_ternary;

namespace {

// Independent oracle: enumerate every coloring directly, no Gray code.
double brute_disc(const DenseMatrix& a, NormKind norm) {
    const int n = a.cols();
    double best = 0.0;
    bool first = true;
    for (long mask = 0; mask < (1L << n); ++mask) {
        double value = 0.0, sum_sq = 0.0;
        for (int i = 0; i < a.rows(); ++i) {
            double dot = 0.0;
            for (int j = 0; j < n; ++j) dot += a(i, j) * ((mask >> j) & 1 ? -1.0 : 1.0);
            value = std::max(value, std::fabs(dot));
            sum_sq += dot * dot;
        }
        const double d = norm == NormKind::L2 ? std::sqrt(sum_sq / a.rows()) : value;
        if (first || d < best) best = d;
        first = false;
    }
    return best;
}

}  // namespace

TEST_CASE("disc_inf examples") {
    REQUIRE(disc_inf(DenseMatrix::identity(2), std::vector<double>{1, -1}) == doctest::Approx(1.0));
    REQUIRE(disc_inf(DenseMatrix(2, 2, {1, 1, 1, -1}), std::vector<double>{1, 1}) == doctest::Approx(2.0));
    REQUIRE(disc_inf(DenseMatrix(1, 2, {1, 1}), std::vector<double>{1, -1}) == doctest::Approx(0.0));
}

TEST_CASE("disc_l2 examples") {
    REQUIRE(disc_l2(DenseMatrix::identity(2), std::vector<double>{1, -1}) == doctest::Approx(1.0));
    REQUIRE(disc_l2(DenseMatrix(2, 2, {1, 1, 1, -1}), std::vector<double>{1, 1}) ==
            doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
    REQUIRE(disc_l2(DenseMatrix(1, 2, {1, 1}), std::vector<double>{1, -1}) == doctest::Approx(0.0));
}

TEST_CASE("dimension mismatches are rejected") {
    REQUIRE_THROWS_AS((void)disc_inf(DenseMatrix::identity(2), std::vector<double>{1.0}),
                      DimensionMismatch);
    REQUIRE_THROWS_AS((void)disc_l2(DenseMatrix::identity(2), std::vector<double>{1, 1, 1}),
                      DimensionMismatch);
}

TEST_CASE("disc_exact examples") {
    const auto r1 = disc_exact(DenseMatrix::identity(2), NormKind::LInfinity);
    REQUIRE(r1.value == doctest::Approx(1.0));

    const auto r2 = disc_exact(DenseMatrix(2, 2, {1, 1, 1, -1}), NormKind::LInfinity);
    REQUIRE(r2.value == doctest::Approx(2.0));

    const auto r3 = disc_exact(DenseMatrix(1, 2, {1, 1}), NormKind::LInfinity);
    REQUIRE(r3.value == doctest::Approx(0.0));
    REQUIRE(r3.witness.values[0] == 1.0);
    REQUIRE(r3.witness.values[1] == -1.0);
}

TEST_CASE("disc_exact matches the brute-force oracle") {
    Rng rng(21);
    for (int trial = 0; trial < 30; ++trial) {
        const int m = 1 + static_cast<int>(rng.next_u64() % 6);
        const int n = 1 + static_cast<int>(rng.next_u64() % 8);
        const DenseMatrix a = random_ternary(m, n, rng);
        for (auto norm : {NormKind::LInfinity, NormKind::L2}) {
            const auto got = disc_exact(a, norm);
            REQUIRE(got.value == doctest::Approx(brute_disc(a, norm)).epsilon(1e-12));
            // witness realizes the value
            const double check = norm == NormKind::L2 ? disc_l2(a, got.witness.values)
                                                      : disc_inf(a, got.witness.values);
            REQUIRE(check == doctest::Approx(got.value).epsilon(1e-12));
            REQUIRE(got.witness.values[0] == 1.0);
        }
    }
}

TEST_CASE("disc_exact parallel equals serial, witness included") {
    Rng rng(22);
    for (int trial = 0; trial < 6; ++trial) {
        const DenseMatrix a = random_ternary(5, 13, rng);
        for (auto norm : {NormKind::LInfinity, NormKind::L2}) {
            const auto p = disc_exact(a, norm);
            const auto s = disc_exact_serial(a, norm);
            REQUIRE(p.value == s.value);
            REQUIRE(p.witness.values == s.witness.values);
        }
    }
}

TEST_CASE("disc_exact rejects n over the cap") {
    const DenseMatrix a(1, 3, {1, 1, 1});
    REQUIRE_THROWS_AS((void)disc_exact(a, NormKind::LInfinity, 2), TooLarge);
}

TEST_CASE("disc_exact is a lower bound for specific colorings") {
    Rng rng(23);
    const DenseMatrix a = random_pm1(6, 10, rng);
    const auto best = disc_exact(a, NormKind::L2);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<double> x(10);
        for (auto& v : x) v = rng.next_sign();
        REQUIRE(best.value <= disc_l2(a, x) + 1e-12);
    }
}

TEST_CASE("sign symmetry") {
    Rng rng(24);
    const DenseMatrix a = random_ternary(5, 7, rng);
    std::vector<double> x(7), neg(7);
    for (int i = 0; i < 7; ++i) {
        x[i] = rng.next_sign();
        neg[i] = -x[i];
    }
    REQUIRE(disc_inf(a, x) == doctest::Approx(disc_inf(a, neg)).epsilon(1e-15));
    REQUIRE(disc_l2(a, x) == doctest::Approx(disc_l2(a, neg)).epsilon(1e-15));
}

TEST_CASE("herdisc_exact examples") {
    REQUIRE(herdisc_exact(DenseMatrix::identity(5), NormKind::LInfinity) == doctest::Approx(1.0));
    REQUIRE(herdisc_exact(DenseMatrix(1, 2, {1, 1}), NormKind::LInfinity) == doctest::Approx(1.0));
    REQUIRE(herdisc_exact(DenseMatrix(3, 3, {1, 1, 1, 1, 1, 1, 1, 1, 1}), NormKind::LInfinity) ==
            doctest::Approx(1.0));
}

TEST_CASE("herdisc_exact matches a brute-force subset oracle") {
    Rng rng(25);
    for (int trial = 0; trial < 10; ++trial) {
        const int m = 1 + static_cast<int>(rng.next_u64() % 5);
        const int n = 1 + static_cast<int>(rng.next_u64() % 6);
        const DenseMatrix a = random_ternary(m, n, rng);
        for (auto norm : {NormKind::LInfinity, NormKind::L2}) {
            double want = 0.0;
            for (long s = 1; s < (1L << n); ++s) {
                std::vector<int> cols;
                for (int j = 0; j < n; ++j)
                    if ((s >> j) & 1) cols.push_back(j);
                want = std::max(want, brute_disc(a.columns(cols), norm));
            }
            REQUIRE(herdisc_exact(a, norm) == doctest::Approx(want).epsilon(1e-12));
        }
    }
}

TEST_CASE("herdisc parallel equals serial") {
    Rng rng(26);
    const DenseMatrix a = random_ternary(4, 9, rng);
    for (auto norm : {NormKind::LInfinity, NormKind::L2})
        REQUIRE(herdisc_exact(a, norm) == herdisc_exact_serial(a, norm));
}

TEST_CASE("herdisc_exact rejects n over the cap") {
    const DenseMatrix a(1, 15, std::vector<double>(15, 1.0));
    REQUIRE_THROWS_AS((void)herdisc_exact(a, NormKind::LInfinity), TooLarge);
}

TEST_CASE("l2 discrepancy never exceeds l-infinity discrepancy") {
    Rng rng(27);
    for (int trial = 0; trial < 40; ++trial) {
        const int m = 1 + static_cast<int>(rng.next_u64() % 8);
        const int n = 1 + static_cast<int>(rng.next_u64() % 8);
        const DenseMatrix a = testsupport::random_uniform_entries(m, n, rng);
        std::vector<double> x(n);
        for (auto& v : x) v = rng.next_sign();
        REQUIRE(disc_l2(a, x) <= disc_inf(a, x) + 1e-12);
    }
}

TEST_CASE("hereditary l2 never exceeds hereditary l-infinity") {
    Rng rng(28);
    for (int trial = 0; trial < 10; ++trial) {
        const DenseMatrix a = random_ternary(4, 5, rng);
        REQUIRE(herdisc_exact(a, NormKind::L2) <= herdisc_exact(a, NormKind::LInfinity) + 1e-12);
    }
}

TEST_CASE("herdisc is invariant under column permutation") {
    Rng rng(29);
    const DenseMatrix a = random_ternary(4, 6, rng);
    const std::vector<int> perm{3, 0, 5, 1, 4, 2};
    const DenseMatrix b = a.columns(perm);
    for (auto norm : {NormKind::LInfinity, NormKind::L2})
        REQUIRE(herdisc_exact(a, norm) == doctest::Approx(herdisc_exact(b, norm)).epsilon(1e-12));
}

TEST_CASE("ColorVector validates entries") {
    REQUIRE_THROWS_AS(ColorVector(std::vector<double>{1.0, 0.5}), Error);
    REQUIRE_NOTHROW(ColorVector(std::vector<double>{1.0, -1.0}));
}
