#pragma once

#include "qsys/presentation.hpp"
#include "qsys/report.hpp"

namespace qsys {

// Algebra object (Q, m, i) in a presentation: Q: b -> b, m: Q(x)Q => Q,
// i: 1_b => Q, subject to associativity, unitality, Frobenius and
// separability (m m* = id), each checked numerically.
struct QSystem {
    const Presentation* pres = nullptr;
    int base = 0;
    OneCell cell;
    TwoCell m;
    TwoCell i;

    bool operator==(const QSystem& o) const {
        return base == o.base && cell == o.cell && m == o.m && i == o.i;
    }
};

// (X, lam, rho) with X: a -> b, lam: P(x)X => X, rho: X(x)Q => X.
struct Bimodule {
    const Presentation* pres = nullptr;
    QSystem left;
    QSystem right;
    OneCell cell;
    TwoCell lam;
    TwoCell rho;

    bool operator==(const Bimodule& o) const {
        return left == o.left && right == o.right && cell == o.cell && lam == o.lam && rho == o.rho;
    }
};

struct RelTensor {
    Bimodule result;  // over (left of M, right of N)
    TwoCell u;        // coisometry X(x)Y => X(x)_Q Y with u*u = p, u u* = id
};

QSystem trivial_qsystem(const Presentation& p, int a);

Report check_qsystem(const QSystem& q, const Tolerance& tol);
Report check_bimodule(const Bimodule& m, const Tolerance& tol);
Report check_intertwiner(const TwoCell& f, const Bimodule& m, const Bimodule& n,
                         const Tolerance& tol);

// Q as a Q-Q bimodule via (m, m); the identity 1-cell at Q.
Bimodule q_as_bimodule(const QSystem& q);

// An ambient 1-cell as a bimodule over the trivial Q-systems, actions the
// ambient unitors.
Bimodule trivial_bimodule(const Presentation& p, const OneCell& x);

// Separability projector p = (id_X (x) lam_Y) * assoc * (rho_X* (x) id_Y)
// on X (x) Y; a projection commuting with the outer actions.
TwoCell sep_projector(const Bimodule& m, const Bimodule& n);

// Splits the separability projector and transports the outer actions:
//   lam = u * (lam_X (x) id_Y) * assoc^-1 * (id_P (x) u*)
//   rho = u * (id_X (x) rho_Y) * assoc * (u* (x) id_R)
RelTensor rel_tensor(const Bimodule& m, const Bimodule& n, const Tolerance& tol);

// Unitary unitors P (x)_P X => X and X (x)_Q Q => X,
// lambda^P_X = lam_X * u*, rho^Q_X = rho_X * u*.
TwoCell unitor_left(const Bimodule& m, const Tolerance& tol);
TwoCell unitor_right(const Bimodule& m, const Tolerance& tol);

// Unitary associator (X (x)_Q Y) (x)_R Z => X (x)_Q (Y (x)_R Z), the ambient
// associator conjugated by the splitting coisometries.
TwoCell qsys_associator(const Bimodule& l, const Bimodule& m, const Bimodule& n,
                        const Tolerance& tol);

// Orthonormal basis (Hilbert-Schmidt) of the space of bimodule intertwiners
// M => N, solved as a finite linear system; deterministic.
std::vector<TwoCell> intertwiner_space(const Bimodule& m, const Bimodule& n);

// Dagger condensation 1_b ~> Q induced by a Q-system: X = Q as a 1_b-Q
// bimodule, Xb = Q as a Q-1_b bimodule, eps = m (through the relative tensor
// over 1_b), delta = eps*.
struct Condensation {
    Bimodule x;
    Bimodule x_bullet;
    Bimodule x_bullet_x;  // Xb (x)_{1_b} X, a Q-Q bimodule
    TwoCell eps;          // Xb (x) X => Q
    TwoCell delta;        // = eps*
};

Condensation condensation_from_qsystem(const QSystem& q, const Tolerance& tol);
Report check_condensation(const Condensation& c, const Tolerance& tol);

}  // namespace qsys
