#include "doctest.h"

#include "qsys/linalg.hpp"

#include <Eigen/Dense>

using namespace qsys;

namespace {

// Independent oracle: recompute products with Eigen.
Eigen::MatrixXcd to_eigen(const CMat& m) {
    Eigen::MatrixXcd e(m.rows, m.cols);
    for (int r = 0; r < m.rows; ++r)
        for (int c = 0; c < m.cols; ++c) e(r, c) = m.at(r, c);
    return e;
}

double diff(const CMat& a, const Eigen::MatrixXcd& b) {
    return (to_eigen(a) - b).cwiseAbs().maxCoeff();
}

}  // namespace

TEST_CASE("adjoint basics") {
    CMat m(2, 2);
    m.at(0, 1) = 1.0;
    CMat a = adjoint(m);
    CHECK(a.at(1, 0) == Cx(1, 0));
    CHECK(a.at(0, 1) == Cx(0, 0));

    CMat z(1, 1);
    z.at(0, 0) = Cx(0, 1);
    CHECK(adjoint(z).at(0, 0) == Cx(0, -1));
}

TEST_CASE("adjoint is involutive and anti-multiplicative") {
    Rng rng(7);
    CMat m = random_complex(3, 2, rng);
    CHECK(max_abs_diff(adjoint(adjoint(m)), m) == 0.0);

    CMat h = m * adjoint(m);
    CHECK(max_abs_diff(adjoint(h), h) < 1e-14);

    CMat a = random_complex(3, 4, rng);
    CMat b = random_complex(4, 2, rng);
    CHECK(max_abs_diff(adjoint(a * b), adjoint(b) * adjoint(a)) < 1e-13);
    // oracle: Eigen recomputation
    CHECK(diff(a * b, to_eigen(a) * to_eigen(b)) < 1e-13);
}

TEST_CASE("kron identities") {
    CMat i2 = CMat::identity(2), i3 = CMat::identity(3);
    CHECK(max_abs_diff(kron(i2, i3), CMat::identity(6)) == 0.0);

    Rng rng(11);
    CMat m = random_complex(2, 3, rng);
    CMat two(1, 1);
    two.at(0, 0) = 2.0;
    CHECK(max_abs_diff(kron(two, m), Cx(2, 0) * m) == 0.0);

    CMat a = random_complex(2, 2, rng), b = random_complex(2, 2, rng);
    CMat c = random_complex(2, 2, rng), d = random_complex(2, 2, rng);
    CHECK(max_abs_diff(kron(a, b) * kron(c, d), kron(a * c, b * d)) < 1e-13);

    // associativity is index reshuffling; only float product order differs
    CHECK(max_abs_diff(kron(kron(a, b), c), kron(a, kron(b, c))) < 1e-14);
}

TEST_CASE("residual checks") {
    Tolerance tol;
    CMat i4 = CMat::identity(4);
    CHECK(unitary_residual(i4) == 0.0);
    CHECK(coisometry_residual(i4) == 0.0);
    CHECK(projection_residual(i4) == 0.0);

    CMat v(1, 2);
    v.at(0, 0) = v.at(0, 1) = 1.0 / std::sqrt(2.0);
    CHECK(coisometry_residual(v) < 1e-15);
    CHECK_THROWS_AS(unitary_residual(v), LinalgError);

    // Householder reflector from a random vector is unitary.
    Rng rng(3);
    CMat w = random_complex(4, 1, rng);
    double n2 = 0.0;
    for (const Cx& z : w.data) n2 += std::norm(z);
    CMat h = CMat::identity(4) - (Cx(2.0 / n2, 0) * (w * adjoint(w)));
    CHECK(unitary_residual(h) < 1e-12);
    CHECK(is_unitary(h, tol));
}

TEST_CASE("split_projection coordinate cases") {
    Tolerance tol;
    CMat d(2, 2);
    d.at(0, 0) = 1.0;
    CMat u = split_projection(d, tol);
    REQUIRE(u.rows == 1);
    CHECK(u.at(0, 0) == Cx(1, 0));
    CHECK(u.at(0, 1) == Cx(0, 0));

    CMat i3 = CMat::identity(3);
    CHECK(max_abs_diff(split_projection(i3, tol), i3) == 0.0);

    CMat zero(3, 3);
    CMat uz = split_projection(zero, tol);
    CHECK(uz.rows == 0);
    CHECK(uz.cols == 3);
}

TEST_CASE("split_projection rank-one oracle") {
    // p = 1/2 [[1,1],[1,1]] has eigenvector (1,1)/sqrt(2); phase convention
    // makes the row real positive.
    Tolerance tol;
    CMat p(2, 2);
    p.at(0, 0) = p.at(0, 1) = p.at(1, 0) = p.at(1, 1) = 0.5;
    CMat u = split_projection(p, tol);
    REQUIRE(u.rows == 1);
    const double r = 1.0 / std::sqrt(2.0);
    CHECK(std::abs(u.at(0, 0) - Cx(r, 0)) < 1e-12);
    CHECK(std::abs(u.at(0, 1) - Cx(r, 0)) < 1e-12);
}

TEST_CASE("split_projection randomized suite dims 1..16") {
    Tolerance tol;
    Rng rng(2024);
    for (int dim = 1; dim <= 16; ++dim) {
        for (int rep = 0; rep < 3; ++rep) {
            // Random projection: rank-k orthogonal projector from a Haar-ish frame.
            int rank = 1 + static_cast<int>(rng.uniform() * dim);
            if (rank > dim) rank = dim;
            CMat g = random_complex(dim, rank, rng);
            // Orthonormalize columns by QR via Gram-Schmidt.
            for (int c = 0; c < rank; ++c) {
                for (int prev = 0; prev < c; ++prev) {
                    Cx inner(0, 0);
                    for (int r = 0; r < dim; ++r) inner += std::conj(g.at(r, prev)) * g.at(r, c);
                    for (int r = 0; r < dim; ++r) g.at(r, c) -= inner * g.at(r, prev);
                }
                double nrm = 0.0;
                for (int r = 0; r < dim; ++r) nrm += std::norm(g.at(r, c));
                nrm = std::sqrt(nrm);
                for (int r = 0; r < dim; ++r) g.at(r, c) = g.at(r, c) / nrm;
            }
            CMat p = g * adjoint(g);
            CMat u = split_projection(p, tol);
            REQUIRE(u.rows == rank);
            CHECK(max_abs_diff(adjoint(u) * u, p) < 1e-10);
            CHECK(coisometry_residual(u) < 1e-10);
        }
    }
}

TEST_CASE("split_projection determinism and rejection") {
    Tolerance tol;
    Rng rng(5);
    CMat g = random_complex(4, 2, rng);
    CMat gram = adjoint(g) * g;
    // Non-projection input must throw.
    CHECK_THROWS_AS(split_projection(gram, tol), NotAProjection);

    CMat p(3, 3);
    p.at(0, 0) = 1.0;
    p.at(1, 1) = 0.5;  // eigenvalue far from {0,1}
    p.at(2, 2) = 0.0;
    CHECK_THROWS_AS(split_projection(p, tol), NotAProjection);

    // Same bits in, same bits out.
    CMat q(2, 2);
    q.at(0, 0) = q.at(0, 1) = q.at(1, 0) = q.at(1, 1) = 0.5;
    CMat u1 = split_projection(q, tol);
    CMat u2 = split_projection(q, tol);
    CHECK(u1.data == u2.data);
}

TEST_CASE("random_hermitian determinism and exact hermiticity") {
    CMat h1 = random_hermitian(1, 0);
    CHECK(h1.rows == 1);
    CHECK(h1.at(0, 0).imag() == 0.0);

    CMat a = random_hermitian(5, 42);
    CMat b = random_hermitian(5, 42);
    CHECK(a.data == b.data);

    CHECK(max_abs_diff(a, adjoint(a)) == 0.0);
}
