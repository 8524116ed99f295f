#pragma once

#include "qsys/calculus.hpp"

#include <map>

namespace qsys {

// Dagger 2-functor between presentations, specified on objects and simples
// and extended additively: the image of a formal sum is the ordered sum of
// the images, and the action on 2-cells is block reindexing. Coheretors are
// stored per composable simple pair / per object and assembled on demand for
// arbitrary cells.
struct DagFunctor {
    const Presentation* src = nullptr;
    const Presentation* tgt = nullptr;
    std::vector<int> obj_map;                      // per src object
    std::vector<OneCell> cell_map;                 // per src simple
    std::map<std::pair<int, int>, TwoCell> f2;     // per composable simple pair
    std::vector<TwoCell> f1;                       // per src object

    OneCell map_cell(const OneCell& x) const;
    TwoCell map_two(const TwoCell& f) const;
    // F2 on arbitrary cells: F(X) (x) F(Y) => F(X (x) Y).
    TwoCell f2_general(const OneCell& x, const OneCell& y) const;

    bool operator==(const DagFunctor& o) const {
        return obj_map == o.obj_map && cell_map == o.cell_map && f2 == o.f2 && f1 == o.f1;
    }
};

DagFunctor identity_functor(const Presentation& p);

// (G . F)2_{X,Y} = G(F2_{X,Y}) * G2_{F(X),F(Y)};  (G . F)1_a = G(F1_a) * G1_{F(a)}.
DagFunctor compose_functors(const DagFunctor& g, const DagFunctor& f);

// Transformation between presentation-level functors. Component 2-cells are
// stored on simples; the extension to sums is block reindexing, which is
// exactly what naturality forces.
struct Transformation {
    DagFunctor F;
    DagFunctor G;
    std::vector<OneCell> comp0;       // per src object: phi_a in tgt(F(a) -> G(a))
    std::map<int, TwoCell> comp1;     // per src simple: F(X) (x) phi_b => phi_a (x) G(X)

    TwoCell comp1_general(const OneCell& x) const;
};

Transformation identity_transformation(const DagFunctor& f);

struct Modification {
    Transformation phi;
    Transformation psi;
    std::vector<TwoCell> comp;  // per src object: phi_a => psi_a
};

// Adapters into the generic calculus machinery.
GFunctor<PresCalc, PresCalc> as_gfunctor(PresCalc& a, PresCalc& b, const DagFunctor& f);
GTrans<PresCalc, PresCalc> as_gtrans(PresCalc& a, PresCalc& b, const Transformation& t);
GMod<PresCalc, PresCalc> as_gmod(PresCalc& a, PresCalc& b, const Modification& m);

// Convenience wrappers running the generic checkers over all simples/objects.
Report check_functor(const DagFunctor& f, const Tolerance& tol);
Report check_transformation(const Transformation& t, const Tolerance& tol, uint64_t sample_seed = 0);
Report check_modification(const Modification& m, const Tolerance& tol);

}  // namespace qsys
