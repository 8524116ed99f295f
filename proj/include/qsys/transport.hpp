#pragma once

#include "qsys/calculus.hpp"
#include "qsys/completion.hpp"
#include "qsys/functor.hpp"

#include <memory>

namespace qsys {

// Bimodule calculus over a base presentation: the Q-system completion as a
// dagger 2-category. Q-systems and bimodules are interned by value, and
// relative tensor products (with their splitting coisometries) are cached,
// so every construction sees one shared gauge.
struct QsysCal {
    using Obj = int;
    using One = int;
    struct Two {
        One dom = -1;
        One cod = -1;
        TwoCell cell;
    };

    const Presentation* base;
    Tolerance tol;

    explicit QsysCal(const Presentation& p, const Tolerance& t = Tolerance())
        : base(&p), tol(t) {}

    Obj intern_obj(const QSystem& q);
    One intern_one(const Bimodule& b);
    const QSystem& qsystem(Obj h) const { return objs_[h]; }
    const Bimodule& bim(One h) const { return ones_[h]; }

    Obj src1(One x) { return intern_obj(bim(x).left); }
    Obj tgt1(One x) { return intern_obj(bim(x).right); }
    One unit1(Obj a) { return intern_one(q_as_bimodule(qsystem(a))); }
    One tensor1(One x, One y);
    const TwoCell& coisometry(One x, One y);  // u: X (x) Y => X (x)_Q Y

    Two make2(One dom, One cod, TwoCell cell) const;
    Two id2c(One x) const { return {x, x, id2(bim(x).cell)}; }
    Two tensor2c(const Two& f, const Two& g);
    Two vcompc(const Two& g, const Two& f) const;
    Two dagc(const Two& f) const { return {f.cod, f.dom, dagger(f.cell)}; }
    Two assocc(One x, One y, One z);
    Two lunit2(One x);
    Two runit2(One x);
    One dom1(const Two& f) const { return f.dom; }
    One cod1(const Two& f) const { return f.cod; }
    double dist(const Two& f, const Two& g) const { return diff_norm(f.cell, g.cell); }

  private:
    std::vector<QSystem> objs_;
    std::vector<Bimodule> ones_;
    std::map<std::pair<int, int>, std::pair<int, TwoCell>> tensor_cache_;
};

// Transport of a presentation-level dagger 2-functor through completion.
// Objects map to the transported Q-systems, 1-cells to the transported
// bimodules, 2-cells go through unchanged, and the tensor coheretor is the
// splitting-coisometry conjugate of the underlying F2. The unit coheretor is
// the identity.
GFunctor<QsysCal, QsysCal> qsys_functor(QsysCal& a, QsysCal& b, const DagFunctor& f);

QSystem map_qsystem(const DagFunctor& f, const QSystem& q);
Bimodule map_bimodule(const DagFunctor& f, const Bimodule& b);

// Transport of a transformation: the object component at a Q-system is
// obtained by orthogonally splitting the crossing projection on
// F(Q) (x) phi_b (x) G(Q); the 1-cell component is the layered crossing
// composite conjugated by all the splitting coisometries.
struct QsysTransformation {
    QsysCal* A = nullptr;
    QsysCal* B = nullptr;
    Transformation data;

    struct Component {
        TwoCell proj;      // on (F(Q) (x) phi_b) (x) G(Q)
        TwoCell w;         // splitting coisometry onto the carrier
        Bimodule carrier;  // QSys(phi)_Q as an F(Q)-G(Q) bimodule
        int handle = -1;
    };

    const Component& component(int q_handle);
    QsysCal::Two crossing(int m_handle);  // QSys(phi)_X

  private:
    std::map<int, Component> comps_;
};

std::shared_ptr<QsysTransformation> qsys_transformation(QsysCal& a, QsysCal& b,
                                                        const Transformation& t);
GTrans<QsysCal, QsysCal> as_gtrans(std::shared_ptr<QsysTransformation> t);

// Transport of a modification: component at Q is w_psi * (id (x) n_b (x) id) * w_phi*.
GMod<QsysCal, QsysCal> qsys_modification(QsysCal& a, QsysCal& b, const Modification& n,
                                         std::shared_ptr<QsysTransformation> phi,
                                         std::shared_ptr<QsysTransformation> psi);

// Tensorator QSys(phi) (x) QSys(psi) => QSys(phi (x) psi), the invertible
// modification mediating transport and 1-composition of transformations.
GMod<QsysCal, QsysCal> qsys_tensorator(QsysCal& a, QsysCal& b,
                                       std::shared_ptr<QsysTransformation> phi,
                                       std::shared_ptr<QsysTransformation> psi,
                                       std::shared_ptr<QsysTransformation> phipsi);

// 1-composite of transformation data (componentwise carriers, layered
// crossings); feeds the tensorator's codomain.
Transformation compose_transformations(const Transformation& phi, const Transformation& psi);

// Canonical inclusion of a presentation into its bimodule calculus: objects
// to trivial Q-systems, cells to themselves.
GFunctor<PresCalc, QsysCal> iota(PresCalc& a, QsysCal& b);

// Invertible transformation iota_B . F => QSys(F) . iota_A filling the
// transport square; components are unit 1-cells with the F1-twisted action.
GTrans<PresCalc, QsysCal> psi_f(PresCalc& a, QsysCal& b, const DagFunctor& f);

// Data-level comparison of QSys(G) . QSys(F) with QSys(G . F) over the given
// Q-systems and generator bimodules: object images, 1-cell images, 2-cell
// images, F2 and F1 must agree entrywise.
Report verify_strict_1_functoriality(QsysCal& a, QsysCal& b, QsysCal& c, const DagFunctor& g,
                                     const DagFunctor& f, const std::vector<QSystem>& objs,
                                     const std::vector<Bimodule>& gens, const Tolerance& tol);

// Presentation-level inclusion functor into a completed presentation built
// over the trivial Q-systems; exact on fusion data by construction.
DagFunctor iota_presented(const Presentation& p, const CompletionContext& ctx);

}  // namespace qsys
