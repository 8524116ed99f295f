#pragma once

#include "qsys/linalg.hpp"
#include "qsys/report.hpp"

#include <array>
#include <map>
#include <string>
#include <vector>

namespace qsys {

struct StructuralError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct ObjectMismatch : StructuralError {
    using StructuralError::StructuralError;
};
struct DomainMismatch : StructuralError {
    using StructuralError::StructuralError;
};

// Finitely presented unitary 2-category: a finite object set, one simple
// 1-cell per isomorphism class, fusion multiplicities N[i][j][k], and the
// unitary change-of-basis tensors F[i,j,k;l] between the two fusion-tree
// bases of Hom(l, i (x) j (x) k).
//
// Index contract for F[i,j,k;l]:
//   columns: left tree   (n, gamma, delta), n the intermediate of i(x)j,
//            gamma in N[i][j][n], delta in N[n][k][l], lexicographic;
//   rows:    right tree  (m, alpha, beta), m the intermediate of j(x)k,
//            alpha in N[j][k][m], beta in N[i][m][l], lexicographic.
// So F is the matrix of the associator on the fusion multiplicity space,
// mapping left-tree coordinates to right-tree coordinates.
struct Presentation {
    struct Simple {
        std::string id;
        int src = 0;
        int tgt = 0;
    };

    std::string name;
    std::vector<std::string> objects;
    std::vector<Simple> simples;
    std::vector<int> unit;                          // object -> simple index of 1_a
    std::vector<std::vector<std::vector<int>>> fusion;  // N[i][j][k]
    std::map<std::array<int, 4>, CMat> assoc;       // (i,j,k,l) -> F matrix
    std::vector<Cx> lunit;                          // per simple, unitor phase (default 1)
    std::vector<Cx> runit;

    int num_objects() const { return static_cast<int>(objects.size()); }
    int num_simples() const { return static_cast<int>(simples.size()); }
    int object_index(const std::string& id) const;
    int simple_index(const std::string& id) const;
    bool composable(int i, int j) const { return simples[i].tgt == simples[j].src; }
    int mult(int i, int j, int k) const { return fusion[i][j][k]; }

    // Dimensions of the two fusion-tree bases for (i,j,k;l); equal when the
    // fusion table is associative.
    int left_tree_dim(int i, int j, int k, int l) const;
    int right_tree_dim(int i, int j, int k, int l) const;

    // F entry accessor; throws StructuralError when a required entry is
    // missing or has the wrong shape.
    const CMat& f_matrix(int i, int j, int k, int l) const;

    // Structural sanity: index ranges, unit fusion deltas, F entry shapes.
    void check_structure() const;
};

// Formal direct sum of simples with fixed source and target objects.
struct OneCell {
    int src = 0;
    int tgt = 0;
    std::vector<int> mult;  // indexed by simple

    int total() const;
    bool operator==(const OneCell& o) const = default;
};

// Block 2-cell between formal sums: blocks[s] is cod.mult[s] x dom.mult[s].
struct TwoCell {
    OneCell dom;
    OneCell cod;
    std::vector<CMat> blocks;

    bool operator==(const TwoCell& o) const = default;
};

OneCell simple_cell(const Presentation& p, int s);
OneCell unit_cell(const Presentation& p, int a);
OneCell zero_cell(const Presentation& p, int a, int b);

TwoCell id2(const OneCell& x);
TwoCell zero2(const OneCell& dom, const OneCell& cod);
TwoCell dagger(const TwoCell& f);
TwoCell dsum(const TwoCell& f, const TwoCell& g);
TwoCell operator*(Cx s, const TwoCell& f);
TwoCell operator+(const TwoCell& f, const TwoCell& g);
TwoCell operator-(const TwoCell& f, const TwoCell& g);

// Vertical composition g * f (right-to-left; f first).
TwoCell vcompose(const TwoCell& g, const TwoCell& f);
TwoCell vcompose(std::initializer_list<TwoCell> top_to_bottom);

double max_abs(const TwoCell& f);
double diff_norm(const TwoCell& f, const TwoCell& g);
bool is_zero_shape(const TwoCell& f);

// Canonical decomposition basis of (X (x) Y) at a target simple k: ordered
// tuples (i, a, j, b, mu) with a < X.mult[i], b < Y.mult[j], mu < N[i][j][k],
// lexicographic in that order. This ordering is part of the format contract;
// tensor_2cells and associator are defined relative to it.
struct PairBasis {
    struct Elem {
        int i, a, j, b, mu;
    };
    std::vector<Elem> elems;
    int index(int i, int a, int j, int b, int mu) const;  // -1 when absent
};

PairBasis pair_basis(const Presentation& p, const OneCell& x, const OneCell& y, int k);

// mult_{X(x)Y}[k] = sum_{i,j} X[i] Y[j] N[i][j][k].
OneCell tensor_1cells(const Presentation& p, const OneCell& x, const OneCell& y);

// Horizontal composite relative to the canonical decomposition ordering.
TwoCell tensor_2cells(const Presentation& p, const TwoCell& f, const TwoCell& g);

// Unitary associator (X (x) Y) (x) Z => X (x) (Y (x) Z) assembled from F.
TwoCell associator(const Presentation& p, const OneCell& x, const OneCell& y, const OneCell& z);

// Unitor 2-cells 1_a (x) X => X and X (x) 1_b => X.
TwoCell unitor_l(const Presentation& p, const OneCell& x);
TwoCell unitor_r(const Presentation& p, const OneCell& x);

// Orthogonal splitting of an idempotent p in End(X): returns (Z, u) with
// u: X => Z, u* u ~ p, u u* = id_Z. Blockwise split_projection.
std::pair<OneCell, TwoCell> split_idempotent(const Presentation& p, const TwoCell& proj,
                                             const Tolerance& tol);

// Full axiom validation: unit fusion deltas, F unitarity, triangle, pentagon.
Report validate(const Presentation& p, const Tolerance& tol);

// Left-nested tensor of a factor list.
OneCell fold_cells(const Presentation& p, const std::vector<OneCell>& cells);

// Coherence 2-cell Fold(C_1..C_n) => Fold(C_1..C_{k}, B, C_{k+m+1}..C_n)
// with B = Fold(C_{k+1}..C_{k+m}), built from associators (0-based k).
TwoCell fold_group(const Presentation& p, const std::vector<OneCell>& cells, int k, int m);

// Builds layered composites over an explicit factor list, inserting the
// coherence isomorphisms needed to apply a 2-cell to a contiguous slice.
// `acc` accumulates Fold(initial) => Fold(current cells).
struct Chain {
    const Presentation* p;
    std::vector<OneCell> cells;
    TwoCell acc;

    Chain(const Presentation& pres, std::vector<OneCell> initial);
    // f: Fold(cells[k..k+arity)) => Fold(out); replaces the slice by `out`.
    void apply(int k, int arity, const TwoCell& f, const std::vector<OneCell>& out);
};

}  // namespace qsys
