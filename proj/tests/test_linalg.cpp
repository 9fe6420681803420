#include <doctest.h>

#include <cmath>
#include <random>

#include "bfc/linalg.hpp"

using namespace bfc;

TEST_CASE("Jacobi eigen-decomposition") {
    Matrix a(3, 3);
    a(0, 0) = 2;
    a(0, 1) = a(1, 0) = 1;
    a(1, 1) = 2;
    a(2, 2) = -1;
    auto e = jacobi_eigen(a);
    CHECK(e.values[0] == doctest::Approx(-1.0));
    CHECK(e.values[1] == doctest::Approx(1.0));
    CHECK(e.values[2] == doctest::Approx(3.0));
    // A v = lambda v for each column.
    for (std::size_t k = 0; k < 3; ++k)
        for (std::size_t r = 0; r < 3; ++r) {
            double s = 0.0;
            for (std::size_t c = 0; c < 3; ++c) s += a(r, c) * e.vectors(c, k);
            CHECK(s == doctest::Approx(e.values[k] * e.vectors(r, k)));
        }
    CHECK(min_eigenvalue(a) == doctest::Approx(-1.0));
    CHECK(symmetric_spectral_norm(a) == doctest::Approx(3.0));
}

TEST_CASE("singular values, including rank-deficient input") {
    Matrix ones(5, 3, 1.0);
    auto sv = singular_values(ones);
    REQUIRE(sv.size() == 3);
    CHECK(sv[0] == doctest::Approx(std::sqrt(15.0)));
    CHECK(std::abs(sv[1]) < 1e-12);

    std::mt19937_64 rng(3);
    std::normal_distribution<double> g;
    for (int t = 0; t < 20; ++t) {
        Matrix m(6, 4);
        for (std::size_t r = 0; r < 6; ++r)
            for (std::size_t c = 0; c < 4; ++c) m(r, c) = g(rng);
        auto s = singular_values(m);
        auto gram = jacobi_eigen(multiply(m.transposed(), m));
        CHECK(s[0] == doctest::Approx(std::sqrt(gram.values.back())).epsilon(1e-10));
        CHECK(singular_values(m.transposed())[0] == doctest::Approx(s[0]).epsilon(1e-10));
    }
}
