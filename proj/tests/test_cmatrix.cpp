#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hpp"
#include "vss/cmatrix.hpp"
#include "vss/errors.hpp"

#include <cmath>
#include <random>

using namespace vss;

namespace {

CMatrix random_cmatrix(int n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    CMatrix a(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) a(i, j) = Complex(u(rng), u(rng));
    return a;
}

Matrix random_symmetric(int n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    Matrix a(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) a(i, j) = u(rng);
    return 0.5 * (a + a.transpose());
}

} // namespace

TEST_CASE("lu_invert on identity and nilpotent perturbations") {
    CMatrix id = CMatrix::Identity(4, 4);
    CHECK((lu_invert(id) - id).cwiseAbs().maxCoeff() <= 1e-14);

    // (I - N)^{-1} = I + N + N^2 for strictly triangular N of size 3
    CMatrix n3 = CMatrix::Zero(3, 3);
    n3(1, 0) = Complex(0.3, -0.2);
    n3(2, 0) = Complex(-1.1, 0.4);
    n3(2, 1) = Complex(0.7, 0.9);
    CMatrix a = CMatrix::Identity(3, 3) - n3;
    CMatrix neumann = CMatrix::Identity(3, 3) + n3 + n3 * n3;
    CHECK((lu_invert(a) - neumann).cwiseAbs().maxCoeff() <= 1e-13);
}

TEST_CASE("lu_invert matches the cofactor oracle") {
    CMatrix a = random_cmatrix(3, 11);
    CMatrix ref = oracle::inverse_cofactor(a);
    CHECK((lu_invert(a) - ref).cwiseAbs().maxCoeff() <= 1e-12 * ref.cwiseAbs().maxCoeff());
    CHECK((a * lu_invert(a) - CMatrix::Identity(3, 3)).cwiseAbs().maxCoeff() <= 1e-9);
}

TEST_CASE("lu_invert flags singular pivots") {
    CMatrix a = CMatrix::Zero(2, 2);
    a(0, 0) = Complex(1.0, 0.0);
    CHECK_THROWS_AS(lu_invert(a), SingularMatrixError);
}

TEST_CASE("lu_det on simple matrices") {
    CHECK(std::abs(lu_det(CMatrix::Identity(5, 5)).value() - Complex(1.0, 0.0)) <= 1e-14);
    CMatrix d = CMatrix::Zero(2, 2);
    d(0, 0) = Complex(1.0, 1.0);
    d(1, 1) = Complex(2.0, 0.0);
    CHECK(std::abs(lu_det(d).value() - Complex(2.0, 2.0)) <= 1e-14);
}

TEST_CASE("lu_det matches the Leibniz oracle") {
    for (std::uint64_t seed : {1u, 2u, 3u}) {
        CMatrix a = random_cmatrix(4, seed);
        Complex ref = oracle::det_leibniz(a);
        CHECK(std::abs(lu_det(a).value() - ref) <= 1e-12 * std::abs(ref));
    }
}

TEST_CASE("lu_det multiplicativity on random pairs") {
    for (std::uint64_t seed : {7u, 8u, 9u, 10u}) {
        CMatrix a = random_cmatrix(5, seed);
        CMatrix b = random_cmatrix(5, seed + 100);
        Complex dab = lu_det(a * b).value();
        Complex da = lu_det(a).value();
        Complex db = lu_det(b).value();
        CHECK(std::abs(dab - da * db) <= 1e-8 * std::abs(da * db));
    }
}

TEST_CASE("lu_det log-polar form survives magnitudes that overflow") {
    int n = 500;
    CMatrix a = 2.0 * CMatrix::Identity(n, n);
    LogPolarDet det = lu_det(a);
    CHECK(det.log_abs == doctest::Approx(n * std::log(2.0)).epsilon(1e-12));
    CHECK(det.arg == doctest::Approx(0.0));
    CHECK(!det.is_zero());
    CHECK(lu_det(CMatrix::Zero(3, 3)).is_zero());
}

TEST_CASE("lu_det tracks permutation sign") {
    CMatrix p = CMatrix::Zero(2, 2);
    p(0, 1) = Complex(1.0, 0.0);
    p(1, 0) = Complex(1.0, 0.0);
    CHECK(std::abs(lu_det(p).value() - Complex(-1.0, 0.0)) <= 1e-14);
}

TEST_CASE("sym_eigen on diagonal and rank-one matrices") {
    Matrix d = Matrix::Zero(3, 3);
    d(0, 0) = 3.0;
    d(1, 1) = 1.0;
    d(2, 2) = 2.0;
    SymEigen es = sym_eigen(d);
    CHECK(es.values[0] == doctest::Approx(3.0));
    CHECK(es.values[1] == doctest::Approx(2.0));
    CHECK(es.values[2] == doctest::Approx(1.0));

    Vector v(4);
    v << 0.5, -0.5, 0.5, -0.5;
    Matrix r1 = v * v.transpose();
    SymEigen er = sym_eigen(r1);
    CHECK(er.values[0] == doctest::Approx(1.0).epsilon(1e-12));
    for (int i = 1; i < 4; ++i) CHECK(std::abs(er.values[i]) <= 1e-12);
}

TEST_CASE("sym_eigen matches the characteristic-polynomial oracle") {
    Matrix s = random_symmetric(5, 42);
    SymEigen es = sym_eigen(s);
    std::vector<double> ref = oracle::charpoly_roots(s);
    REQUIRE(ref.size() == 5);
    for (int i = 0; i < 5; ++i) CHECK(es.values[i] == doctest::Approx(ref[i]).epsilon(1e-7));
}

TEST_CASE("sym_eigen invariants: orthonormality and reconstruction") {
    Matrix s = random_symmetric(8, 77);
    SymEigen es = sym_eigen(s);
    Matrix qtq = es.vectors.transpose() * es.vectors;
    CHECK((qtq - Matrix::Identity(8, 8)).cwiseAbs().maxCoeff() <= 1e-10);
    Matrix rec = es.vectors * es.values.asDiagonal() * es.vectors.transpose();
    CHECK((rec - s).cwiseAbs().maxCoeff() <= 1e-8 * s.cwiseAbs().maxCoeff());
}

TEST_CASE("sym_eigen rejects asymmetric input") {
    Matrix a = Matrix::Zero(2, 2);
    a(0, 1) = 1.0;
    CHECK_THROWS_AS(sym_eigen(a), DomainError);
}

TEST_CASE("spd_power on identity and diagonal matrices") {
    Matrix id = Matrix::Identity(3, 3);
    CHECK((spd_power(id, 0.5) - id).cwiseAbs().maxCoeff() <= 1e-13);
    CHECK((spd_power(id, -0.5) - id).cwiseAbs().maxCoeff() <= 1e-13);

    Matrix d = Matrix::Zero(2, 2);
    d(0, 0) = 4.0;
    d(1, 1) = 9.0;
    Matrix root = spd_power(d, 0.5);
    CHECK(root(0, 0) == doctest::Approx(2.0));
    CHECK(root(1, 1) == doctest::Approx(3.0));
}

TEST_CASE("spd_power self-consistency on a random SPD matrix") {
    Matrix a = random_symmetric(4, 5);
    Matrix spd = a * a.transpose() + 0.5 * Matrix::Identity(4, 4);
    Matrix half = spd_power(spd, 0.5);
    CHECK((half * half - spd).cwiseAbs().maxCoeff() <= 1e-8 * spd.cwiseAbs().maxCoeff());
    Matrix mhalf = spd_power(spd, -0.5);
    CHECK((half * mhalf - Matrix::Identity(4, 4)).cwiseAbs().maxCoeff() <= 1e-9);
}

TEST_CASE("spd_power rejects indefinite matrices") {
    Matrix d = Matrix::Zero(2, 2);
    d(0, 0) = 1.0;
    d(1, 1) = -0.5;
    try {
        spd_power(d, 0.5);
        FAIL("expected DefinitenessError");
    } catch (const DefinitenessError& e) {
        CHECK(e.offending_eigenvalue == doctest::Approx(-0.5));
    }
    CHECK_THROWS_AS(spd_power(Matrix::Identity(2, 2), 0.25), DomainError);
}

TEST_CASE("lu_det equals the eigen product for I - c S") {
    Matrix s = random_symmetric(6, 13);
    Matrix spd = s * s.transpose();
    double c = 0.37;
    CMatrix a = (CMatrix::Identity(6, 6) - c * spd.cast<Complex>());
    SymEigen es = sym_eigen(spd);
    Complex prod(1.0, 0.0);
    for (int i = 0; i < 6; ++i) prod *= Complex(1.0 - c * es.values[i], 0.0);
    CHECK(std::abs(lu_det(a).value() - prod) <= 1e-9 * std::abs(prod));
}
