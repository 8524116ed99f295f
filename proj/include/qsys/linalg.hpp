#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace qsys {

using Cx = std::complex<double>;

struct LinalgError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NotAProjection : LinalgError {
    double hermitian_residual;
    double idempotent_residual;
    NotAProjection(double herm, double idem)
        : LinalgError("not a projection within tolerance (|p*-p| = " + std::to_string(herm) +
                      ", |p^2-p| = " + std::to_string(idem) + ")"),
          hermitian_residual(herm), idempotent_residual(idem) {}
};

// Absolute/relative tolerance pair. abs must be positive; rel is applied
// against the max entry magnitude of the operands where meaningful.
struct Tolerance {
    double abs = 1e-9;
    double rel = 0.0;
    Tolerance() = default;
    Tolerance(double a, double r) : abs(a), rel(r) {
        if (!(abs > 0.0) || rel < 0.0) throw LinalgError("Tolerance: abs must be > 0 and rel >= 0");
    }
    double bound(double scale = 1.0) const { return abs + rel * scale; }
};

// Dense complex matrix, row-major. Entries must stay finite.
struct CMat {
    int rows = 0;
    int cols = 0;
    std::vector<Cx> data;

    CMat() = default;
    CMat(int r, int c) : rows(r), cols(c), data(static_cast<size_t>(r) * c, Cx(0, 0)) {
        if (r < 0 || c < 0) throw LinalgError("CMat: negative dimension");
    }

    Cx& at(int r, int c) { return data[static_cast<size_t>(r) * cols + c]; }
    const Cx& at(int r, int c) const { return data[static_cast<size_t>(r) * cols + c]; }

    bool operator==(const CMat& o) const = default;

    bool empty_shape() const { return rows == 0 || cols == 0; }

    static CMat identity(int n) {
        CMat m(n, n);
        for (int i = 0; i < n; ++i) m.at(i, i) = 1.0;
        return m;
    }
    static CMat zero(int r, int c) { return CMat(r, c); }

    void check_finite() const;
};

bool same_shape(const CMat& a, const CMat& b);

CMat operator+(const CMat& a, const CMat& b);
CMat operator-(const CMat& a, const CMat& b);
CMat operator*(const CMat& a, const CMat& b);   // matrix product
CMat operator*(Cx s, const CMat& a);

// Conjugate transpose.
CMat adjoint(const CMat& m);

// Kronecker product, a-index major, b-index minor:
// (a (x) b)[ia*rb+ib, ja*cb+jb] = a[ia,ja] * b[ib,jb].
CMat kron(const CMat& a, const CMat& b);

// max |entry|; 0 for empty shapes.
double max_abs(const CMat& m);
// max |a-b| entrywise.
double max_abs_diff(const CMat& a, const CMat& b);

// Residuals of the defining identities, as max-abs entry norms.
// is_unitary requires a square input and reports max(|m*m - I|, |m m* - I|).
// is_coisometry reports |m m* - I| only.
// is_projection reports max(|m* - m|, |m^2 - m|).
double unitary_residual(const CMat& m);
double coisometry_residual(const CMat& m);
double projection_residual(const CMat& m);

bool is_unitary(const CMat& m, const Tolerance& tol);
bool is_coisometry(const CMat& m, const Tolerance& tol);
bool is_projection(const CMat& m, const Tolerance& tol);

// Orthogonally splits a projection p: returns a coisometry u with rank(p)
// rows such that u* u ~ p and u u* = I. Deterministic: the range basis is
// extracted from the columns of the rounded spectral projection by pivoted
// Gram-Schmidt (largest remaining norm first, lowest index on ties), and each
// row of u is scaled so its first entry of magnitude > 1e-8 is real positive.
// Eigenvalues must sit within tol of {0,1}; otherwise NotAProjection.
CMat split_projection(const CMat& p, const Tolerance& tol);

// Deterministic seeded PRNG stream (xoshiro-free: SplitMix64 + Box-Muller),
// identical byte output across runs for a fixed seed.
struct Rng {
    uint64_t state;
    explicit Rng(uint64_t seed) : state(seed) {}
    uint64_t next_u64();
    double uniform();        // [0,1)
    double gaussian();       // standard normal, Box-Muller (one value per call pair cached)
    Cx cgaussian();          // (g1 + i g2)/sqrt(2)

  private:
    bool have_spare_ = false;
    double spare_ = 0.0;
};

// Hermitian matrix with independent Gaussian entries, H = (A + A*)/2.
CMat random_hermitian(int dim, uint64_t seed);
CMat random_hermitian(int dim, Rng& rng);

// Random matrix with independent standard complex Gaussian entries.
CMat random_complex(int rows, int cols, Rng& rng);

// Eigendecomposition of a Hermitian matrix (values ascending). Used by the
// spectral routines; wraps a fixed dense solver so results are reproducible.
void hermitian_eig(const CMat& h, std::vector<double>& values, CMat& vectors);

// Orthonormal basis of the kernel of a (possibly rectangular) matrix,
// canonicalized the same way as split_projection's range basis. Singular
// values <= rank_tol count as zero.
std::vector<std::vector<Cx>> kernel_basis(const CMat& m, double rank_tol);

// Canonical orthonormal basis of the range of a (numerically) orthogonal
// projection matrix, as columns. Pivoted Gram-Schmidt over the projection's
// columns; deterministic.
CMat range_basis(const CMat& p, int rank);

}  // namespace qsys
