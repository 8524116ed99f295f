#include "qsys/linalg.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>

namespace qsys {

namespace {

using EMat = Eigen::Matrix<Cx, Eigen::Dynamic, Eigen::Dynamic>;

EMat to_eigen(const CMat& m) {
    EMat e(m.rows, m.cols);
    for (int r = 0; r < m.rows; ++r)
        for (int c = 0; c < m.cols; ++c) e(r, c) = m.at(r, c);
    return e;
}

CMat from_eigen(const EMat& e) {
    CMat m(static_cast<int>(e.rows()), static_cast<int>(e.cols()));
    for (int r = 0; r < m.rows; ++r)
        for (int c = 0; c < m.cols; ++c) m.at(r, c) = e(r, c);
    return m;
}

// Phase-normalize a row vector in place: first entry with |x| > eta becomes
// real positive.
void fix_row_phase(CMat& u, int row, double eta = 1e-8) {
    for (int c = 0; c < u.cols; ++c) {
        Cx x = u.at(row, c);
        if (std::abs(x) > eta) {
            Cx phase = std::conj(x) / std::abs(x);
            for (int cc = 0; cc < u.cols; ++cc) u.at(row, cc) *= phase;
            return;
        }
    }
}

}  // namespace

void CMat::check_finite() const {
    for (const Cx& z : data)
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
            throw LinalgError("CMat: non-finite entry");
}

bool same_shape(const CMat& a, const CMat& b) { return a.rows == b.rows && a.cols == b.cols; }

CMat operator+(const CMat& a, const CMat& b) {
    if (!same_shape(a, b)) throw LinalgError("CMat+: shape mismatch");
    CMat r = a;
    for (size_t i = 0; i < r.data.size(); ++i) r.data[i] += b.data[i];
    return r;
}

CMat operator-(const CMat& a, const CMat& b) {
    if (!same_shape(a, b)) throw LinalgError("CMat-: shape mismatch");
    CMat r = a;
    for (size_t i = 0; i < r.data.size(); ++i) r.data[i] -= b.data[i];
    return r;
}

CMat operator*(const CMat& a, const CMat& b) {
    if (a.cols != b.rows) throw LinalgError("CMat*: inner dimension mismatch");
    CMat r(a.rows, b.cols);
    for (int i = 0; i < a.rows; ++i)
        for (int k = 0; k < a.cols; ++k) {
            Cx aik = a.at(i, k);
            if (aik == Cx(0, 0)) continue;
            for (int j = 0; j < b.cols; ++j) r.at(i, j) += aik * b.at(k, j);
        }
    return r;
}

CMat operator*(Cx s, const CMat& a) {
    CMat r = a;
    for (Cx& z : r.data) z *= s;
    return r;
}

CMat adjoint(const CMat& m) {
    CMat r(m.cols, m.rows);
    for (int i = 0; i < m.rows; ++i)
        for (int j = 0; j < m.cols; ++j) r.at(j, i) = std::conj(m.at(i, j));
    return r;
}

CMat kron(const CMat& a, const CMat& b) {
    CMat r(a.rows * b.rows, a.cols * b.cols);
    for (int ia = 0; ia < a.rows; ++ia)
        for (int ja = 0; ja < a.cols; ++ja) {
            Cx v = a.at(ia, ja);
            if (v == Cx(0, 0)) continue;
            for (int ib = 0; ib < b.rows; ++ib)
                for (int jb = 0; jb < b.cols; ++jb)
                    r.at(ia * b.rows + ib, ja * b.cols + jb) = v * b.at(ib, jb);
        }
    return r;
}

double max_abs(const CMat& m) {
    double v = 0.0;
    for (const Cx& z : m.data) v = std::max(v, std::abs(z));
    return v;
}

double max_abs_diff(const CMat& a, const CMat& b) {
    if (!same_shape(a, b)) throw LinalgError("max_abs_diff: shape mismatch");
    double v = 0.0;
    for (size_t i = 0; i < a.data.size(); ++i) v = std::max(v, std::abs(a.data[i] - b.data[i]));
    return v;
}

double unitary_residual(const CMat& m) {
    if (m.rows != m.cols) throw LinalgError("unitary_residual: matrix not square");
    CMat mm = adjoint(m) * m;
    CMat nn = m * adjoint(m);
    CMat id = CMat::identity(m.rows);
    return std::max(max_abs_diff(mm, id), max_abs_diff(nn, id));
}

double coisometry_residual(const CMat& m) {
    return max_abs_diff(m * adjoint(m), CMat::identity(m.rows));
}

double projection_residual(const CMat& m) {
    if (m.rows != m.cols) throw LinalgError("projection_residual: matrix not square");
    double herm = max_abs_diff(m, adjoint(m));
    double idem = max_abs_diff(m * m, m);
    return std::max(herm, idem);
}

bool is_unitary(const CMat& m, const Tolerance& tol) {
    return unitary_residual(m) <= tol.bound(max_abs(m));
}
bool is_coisometry(const CMat& m, const Tolerance& tol) {
    return coisometry_residual(m) <= tol.bound(max_abs(m));
}
bool is_projection(const CMat& m, const Tolerance& tol) {
    return projection_residual(m) <= tol.bound(max_abs(m));
}

void hermitian_eig(const CMat& h, std::vector<double>& values, CMat& vectors) {
    if (h.rows != h.cols) throw LinalgError("hermitian_eig: matrix not square");
    Eigen::SelfAdjointEigenSolver<EMat> solver(to_eigen(h));
    if (solver.info() != Eigen::Success) throw LinalgError("hermitian_eig: solver failed");
    values.assign(solver.eigenvalues().data(), solver.eigenvalues().data() + h.rows);
    vectors = from_eigen(solver.eigenvectors());
}

CMat range_basis(const CMat& p, int rank) {
    // Pivoted modified Gram-Schmidt over the columns of p. Deterministic:
    // pivot on the largest remaining norm, ties resolved by lowest index.
    int n = p.rows;
    std::vector<std::vector<Cx>> cols(n, std::vector<Cx>(n));
    for (int c = 0; c < n; ++c)
        for (int r = 0; r < n; ++r) cols[c][r] = p.at(r, c);

    CMat basis(n, rank);
    std::vector<bool> used(n, false);
    for (int k = 0; k < rank; ++k) {
        int pivot = -1;
        double best = -1.0;
        for (int c = 0; c < n; ++c) {
            if (used[c]) continue;
            double nrm = 0.0;
            for (const Cx& z : cols[c]) nrm += std::norm(z);
            if (nrm > best + 1e-15) {
                best = nrm;
                pivot = c;
            }
        }
        if (pivot < 0 || best <= 1e-20) throw LinalgError("range_basis: rank deficiency");
        used[pivot] = true;
        double nrm = std::sqrt(best);
        for (int r = 0; r < n; ++r) basis.at(r, k) = cols[pivot][r] / nrm;
        for (int c = 0; c < n; ++c) {
            if (used[c]) continue;
            Cx inner(0, 0);
            for (int r = 0; r < n; ++r) inner += std::conj(basis.at(r, k)) * cols[c][r];
            for (int r = 0; r < n; ++r) cols[c][r] -= inner * basis.at(r, k);
        }
    }
    return basis;
}

CMat split_projection(const CMat& p, const Tolerance& tol) {
    if (p.rows != p.cols) throw LinalgError("split_projection: matrix not square");
    p.check_finite();
    double herm = p.empty_shape() ? 0.0 : max_abs_diff(p, adjoint(p));
    double idem = p.empty_shape() ? 0.0 : max_abs_diff(p * p, p);
    double bound = tol.bound(std::max(1.0, max_abs(p)));
    if (herm > bound || idem > bound) throw NotAProjection(herm, idem);

    int n = p.rows;
    if (n == 0) return CMat(0, 0);

    // Fast path: exactly diagonal 0/1 matrix splits to coordinate rows.
    bool diag01 = true;
    for (int r = 0; r < n && diag01; ++r)
        for (int c = 0; c < n && diag01; ++c) {
            Cx z = p.at(r, c);
            if (r == c ? (z != Cx(0, 0) && z != Cx(1, 0)) : (z != Cx(0, 0))) diag01 = false;
        }
    if (diag01) {
        int rank = 0;
        for (int r = 0; r < n; ++r)
            if (p.at(r, r) == Cx(1, 0)) ++rank;
        CMat u(rank, n);
        int k = 0;
        for (int r = 0; r < n; ++r)
            if (p.at(r, r) == Cx(1, 0)) u.at(k++, r) = 1.0;
        return u;
    }

    std::vector<double> values;
    CMat vectors;
    hermitian_eig(p, values, vectors);

    int rank = 0;
    for (double v : values) {
        double dist = std::min(std::abs(v), std::abs(v - 1.0));
        if (dist > bound) throw NotAProjection(herm, std::max(idem, dist));
        if (v >= 0.5) ++rank;
    }
    if (rank == 0) return CMat(0, n);

    // Rounded spectral projection onto the eigenvalue-1 cluster, then a
    // canonical basis of its range.
    CMat p1(n, n);
    for (int k = 0; k < n; ++k) {
        if (values[k] < 0.5) continue;
        for (int r = 0; r < n; ++r)
            for (int c = 0; c < n; ++c) p1.at(r, c) += vectors.at(r, k) * std::conj(vectors.at(c, k));
    }
    CMat basis = range_basis(p1, rank);

    CMat u = adjoint(basis);  // rank x n
    for (int r = 0; r < rank; ++r) fix_row_phase(u, r);
    return u;
}

uint64_t Rng::next_u64() {
    // SplitMix64; fixed constants, fully portable.
    state += 0x9E3779B97f4A7C15ull;
    uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

double Rng::uniform() {
    return static_cast<double>(next_u64() >> 11) * (1.0 / 9007199254740992.0);
}

double Rng::gaussian() {
    if (have_spare_) {
        have_spare_ = false;
        return spare_;
    }
    double u1 = 0.0;
    do {
        u1 = uniform();
    } while (u1 <= 1e-300);
    double u2 = uniform();
    double r = std::sqrt(-2.0 * std::log(u1));
    double a = 2.0 * M_PI * u2;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
}

Cx Rng::cgaussian() {
    double re = gaussian();
    double im = gaussian();
    return Cx(re, im) * M_SQRT1_2;
}

CMat random_complex(int rows, int cols, Rng& rng) {
    CMat m(rows, cols);
    for (Cx& z : m.data) z = rng.cgaussian();
    return m;
}

CMat random_hermitian(int dim, Rng& rng) {
    if (dim < 1) throw LinalgError("random_hermitian: dim must be >= 1");
    CMat a = random_complex(dim, dim, rng);
    CMat h(dim, dim);
    for (int r = 0; r < dim; ++r)
        for (int c = 0; c < dim; ++c) h.at(r, c) = 0.5 * (a.at(r, c) + std::conj(a.at(c, r)));
    return h;
}

CMat random_hermitian(int dim, uint64_t seed) {
    Rng rng(seed);
    return random_hermitian(dim, rng);
}

std::vector<std::vector<Cx>> kernel_basis(const CMat& m, double rank_tol) {
    if (m.cols == 0) return {};
    if (m.rows == 0) {
        // Everything is in the kernel; canonical basis = coordinate vectors.
        std::vector<std::vector<Cx>> basis;
        for (int c = 0; c < m.cols; ++c) {
            std::vector<Cx> v(m.cols, Cx(0, 0));
            v[c] = 1.0;
            basis.push_back(std::move(v));
        }
        return basis;
    }
    Eigen::JacobiSVD<EMat> svd(to_eigen(m), Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    int rank = 0;
    for (int i = 0; i < sv.size(); ++i)
        if (sv(i) > rank_tol) ++rank;
    int dim = m.cols - rank;
    if (dim == 0) return {};

    // Kernel projector, then the same canonical range extraction as
    // split_projection so the basis does not depend on SVD gauge freedom.
    EMat v = svd.matrixV();
    EMat proj = EMat::Zero(m.cols, m.cols);
    for (int k = rank; k < m.cols; ++k) proj += v.col(k) * v.col(k).adjoint();
    CMat basis = range_basis(from_eigen(proj), dim);
    CMat rowview = adjoint(basis);
    for (int r = 0; r < dim; ++r) fix_row_phase(rowview, r);

    std::vector<std::vector<Cx>> out;
    for (int r = 0; r < dim; ++r) {
        std::vector<Cx> vec(m.cols);
        for (int c = 0; c < m.cols; ++c) vec[c] = std::conj(rowview.at(r, c));
        out.push_back(std::move(vec));
    }
    return out;
}

}  // namespace qsys
