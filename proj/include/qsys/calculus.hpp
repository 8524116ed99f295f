#pragma once

#include "qsys/presentation.hpp"
#include "qsys/report.hpp"

#include <functional>

namespace qsys {

// The coherence checkers below are generic over a "calculus": any dagger
// 2-category interface exposing objects, 1-cells, 2-cells and the structure
// 2-cells. Two instances exist: PresCalc (a skeletal presentation) and
// QsysCal (bimodule calculus over a base presentation, see transport.hpp).

struct PresCalc {
    using Obj = int;
    using One = OneCell;
    using Two = TwoCell;

    const Presentation* p;
    explicit PresCalc(const Presentation& pres) : p(&pres) {}

    Obj src1(const One& x) const { return x.src; }
    Obj tgt1(const One& x) const { return x.tgt; }
    One unit1(Obj a) const { return unit_cell(*p, a); }
    One tensor1(const One& x, const One& y) const { return tensor_1cells(*p, x, y); }
    Two id2c(const One& x) const { return id2(x); }
    Two tensor2c(const Two& f, const Two& g) const { return tensor_2cells(*p, f, g); }
    Two vcompc(const Two& g, const Two& f) const { return vcompose(g, f); }
    Two dagc(const Two& f) const { return dagger(f); }
    Two assocc(const One& x, const One& y, const One& z) const { return associator(*p, x, y, z); }
    Two lunit2(const One& x) const { return unitor_l(*p, x); }
    Two runit2(const One& x) const { return unitor_r(*p, x); }
    One dom1(const Two& f) const { return f.dom; }
    One cod1(const Two& f) const { return f.cod; }
    double dist(const Two& f, const Two& g) const { return diff_norm(f, g); }
};

template <class CA, class CB>
struct GFunctor {
    CA* src = nullptr;
    CB* tgt = nullptr;
    std::function<typename CB::Obj(typename CA::Obj)> obj;
    std::function<typename CB::One(const typename CA::One&)> one;
    std::function<typename CB::Two(const typename CA::Two&)> two;
    // F2(X,Y): F(X) (x) F(Y) => F(X (x) Y)
    std::function<typename CB::Two(const typename CA::One&, const typename CA::One&)> f2;
    // F1(a): 1_{F(a)} => F(1_a)
    std::function<typename CB::Two(typename CA::Obj)> f1;
};

template <class CA, class CB>
struct GTrans {
    GFunctor<CA, CB> F;
    GFunctor<CA, CB> G;
    std::function<typename CB::One(typename CA::Obj)> comp0;
    // comp1(X): F(X) (x) phi_b => phi_a (x) G(X)
    std::function<typename CB::Two(const typename CA::One&)> comp1;
};

template <class CA, class CB>
struct GMod {
    GTrans<CA, CB> phi;
    GTrans<CA, CB> psi;
    std::function<typename CB::Two(typename CA::Obj)> comp;  // phi_a => psi_a
};

template <class C>
double unitarity_residual2(C& cal, const typename C::Two& f) {
    auto d = cal.dom1(f);
    auto c = cal.cod1(f);
    return std::max(cal.dist(cal.vcompc(cal.dagc(f), f), cal.id2c(d)),
                    cal.dist(cal.vcompc(f, cal.dagc(f)), cal.id2c(c)));
}

// Hexagon and triangle equations plus coheretor unitarity, quantified over
// the supplied generating 1-cells and objects.
template <class CA, class CB>
Report check_functor(CA& A, CB& B, const GFunctor<CA, CB>& F,
                     const std::vector<typename CA::One>& gens,
                     const std::vector<typename CA::Obj>& objs, const Tolerance& tol,
                     const std::vector<std::string>& gen_names = {}) {
    Report rep;
    auto name = [&](size_t i) {
        return i < gen_names.size() ? gen_names[i] : std::to_string(i);
    };
    for (size_t ia = 0; ia < objs.size(); ++ia)
        rep.add("f1-unitarity/" + std::to_string(ia), "unitarity",
                unitarity_residual2(B, F.f1(objs[ia])), tol.bound());

    for (size_t ix = 0; ix < gens.size(); ++ix) {
        const auto& x = gens[ix];
        auto fx = F.one(x);

        // triangles
        auto b = A.tgt1(x);
        auto lhs_r = B.vcompc(F.two(A.runit2(x)),
                              B.vcompc(F.f2(x, A.unit1(b)),
                                       B.tensor2c(B.id2c(fx), F.f1(b))));
        rep.add("triangle-r/" + name(ix), "triangle", B.dist(lhs_r, B.runit2(fx)), tol.bound());
        auto a = A.src1(x);
        auto lhs_l = B.vcompc(F.two(A.lunit2(x)),
                              B.vcompc(F.f2(A.unit1(a), x),
                                       B.tensor2c(F.f1(a), B.id2c(fx))));
        rep.add("triangle-l/" + name(ix), "triangle", B.dist(lhs_l, B.lunit2(fx)), tol.bound());

        for (size_t iy = 0; iy < gens.size(); ++iy) {
            const auto& y = gens[iy];
            if (!(A.tgt1(x) == A.src1(y))) continue;
            rep.add("f2-unitarity/" + name(ix) + "." + name(iy), "unitarity",
                    unitarity_residual2(B, F.f2(x, y)), tol.bound());

            for (size_t iz = 0; iz < gens.size(); ++iz) {
                const auto& z = gens[iz];
                if (!(A.tgt1(y) == A.src1(z))) continue;
                auto fy = F.one(y);
                auto fz = F.one(z);
                auto lhs = B.vcompc(
                    F.two(A.assocc(x, y, z)),
                    B.vcompc(F.f2(A.tensor1(x, y), z), B.tensor2c(F.f2(x, y), B.id2c(fz))));
                auto rhs = B.vcompc(
                    F.f2(x, A.tensor1(y, z)),
                    B.vcompc(B.tensor2c(B.id2c(fx), F.f2(y, z)), B.assocc(fx, fy, fz)));
                rep.add("hexagon/" + name(ix) + "." + name(iy) + "." + name(iz), "hexagon",
                        B.dist(lhs, rhs), tol.bound());
            }
        }
    }
    return rep;
}

template <class CA, class CB>
struct NaturalitySample {
    typename CA::One dom;
    typename CA::One cod;
    typename CA::Two cell;
};

template <class CA, class CB>
Report check_transformation(CA& A, CB& B, const GTrans<CA, CB>& t,
                            const std::vector<typename CA::One>& gens,
                            const std::vector<typename CA::Obj>& objs, const Tolerance& tol,
                            const std::vector<NaturalitySample<CA, CB>>& samples = {},
                            const std::vector<std::string>& gen_names = {}) {
    Report rep;
    auto name = [&](size_t i) {
        return i < gen_names.size() ? gen_names[i] : std::to_string(i);
    };
    const auto& F = t.F;
    const auto& G = t.G;

    for (size_t ix = 0; ix < gens.size(); ++ix) {
        const auto& x = gens[ix];
        rep.add("component-unitarity/" + name(ix), "unitarity",
                unitarity_residual2(B, t.comp1(x)), tol.bound());

        for (size_t iy = 0; iy < gens.size(); ++iy) {
            const auto& y = gens[iy];
            if (!(A.tgt1(x) == A.src1(y))) continue;
            auto fx = F.one(x);
            auto fy = F.one(y);
            auto gy = G.one(y);
            auto pa = t.comp0(A.src1(x));
            auto pb = t.comp0(A.tgt1(x));
            auto pc = t.comp0(A.tgt1(y));
            auto lhs = B.vcompc(t.comp1(A.tensor1(x, y)),
                                B.tensor2c(F.f2(x, y), B.id2c(pc)));
            auto rhs = B.vcompc(
                B.tensor2c(B.id2c(pa), G.f2(x, y)),
                B.vcompc(
                    B.assocc(pa, G.one(x), gy),
                    B.vcompc(B.tensor2c(t.comp1(x), B.id2c(gy)),
                             B.vcompc(B.dagc(B.assocc(fx, pb, gy)),
                                      B.vcompc(B.tensor2c(B.id2c(fx), t.comp1(y)),
                                               B.assocc(fx, fy, pc))))));
            rep.add("f2-coherence/" + name(ix) + "." + name(iy), "transformation-coherence",
                    B.dist(lhs, rhs), tol.bound());
        }
    }

    for (size_t ia = 0; ia < objs.size(); ++ia) {
        auto b = objs[ia];
        auto pb = t.comp0(b);
        auto lhs = B.vcompc(t.comp1(A.unit1(b)), B.tensor2c(F.f1(b), B.id2c(pb)));
        auto rhs = B.vcompc(B.tensor2c(B.id2c(pb), G.f1(b)),
                            B.vcompc(B.dagc(B.runit2(pb)), B.lunit2(pb)));
        rep.add("unit-coherence/" + std::to_string(ia), "transformation-coherence",
                B.dist(lhs, rhs), tol.bound());
    }

    for (size_t k = 0; k < samples.size(); ++k) {
        const auto& s = samples[k];
        auto pa = t.comp0(A.src1(s.dom));
        auto pb = t.comp0(A.tgt1(s.dom));
        auto lhs = B.vcompc(B.tensor2c(B.id2c(pa), G.two(s.cell)), t.comp1(s.dom));
        auto rhs = B.vcompc(t.comp1(s.cod), B.tensor2c(F.two(s.cell), B.id2c(pb)));
        rep.add("naturality/" + std::to_string(k), "naturality", B.dist(lhs, rhs), tol.bound());
    }
    return rep;
}

template <class CA, class CB>
Report check_modification(CA& A, CB& B, const GMod<CA, CB>& n,
                          const std::vector<typename CA::One>& gens, const Tolerance& tol,
                          const std::vector<std::string>& gen_names = {}) {
    Report rep;
    auto name = [&](size_t i) {
        return i < gen_names.size() ? gen_names[i] : std::to_string(i);
    };
    for (size_t ix = 0; ix < gens.size(); ++ix) {
        const auto& x = gens[ix];
        auto a = A.src1(x);
        auto b = A.tgt1(x);
        auto lhs = B.vcompc(B.tensor2c(n.comp(a), B.id2c(n.phi.G.one(x))), n.phi.comp1(x));
        auto rhs = B.vcompc(n.psi.comp1(x), B.tensor2c(B.id2c(n.phi.F.one(x)), n.comp(b)));
        rep.add("sliding/" + name(ix), "modification-coherence", B.dist(lhs, rhs), tol.bound());
    }
    return rep;
}

// --- generic compositions -------------------------------------------------

template <class CA, class CB, class CC>
GFunctor<CA, CC> compose_gfunctors(CC& C, const GFunctor<CB, CC>& G, const GFunctor<CA, CB>& F) {
    GFunctor<CA, CC> r;
    r.src = F.src;
    r.tgt = G.tgt;
    r.obj = [G, F](typename CA::Obj a) { return G.obj(F.obj(a)); };
    r.one = [G, F](const typename CA::One& x) { return G.one(F.one(x)); };
    r.two = [G, F](const typename CA::Two& f) { return G.two(F.two(f)); };
    r.f2 = [&C, G, F](const typename CA::One& x, const typename CA::One& y) {
        return C.vcompc(G.two(F.f2(x, y)), G.f2(F.one(x), F.one(y)));
    };
    r.f1 = [&C, G, F](typename CA::Obj a) {
        return C.vcompc(G.two(F.f1(a)), G.f1(F.obj(a)));
    };
    return r;
}

template <class CA, class CB>
GTrans<CA, CB> identity_gtrans(CB& B, const GFunctor<CA, CB>& F) {
    GTrans<CA, CB> t;
    t.F = F;
    t.G = F;
    t.comp0 = [&B, F](typename CA::Obj a) { return B.unit1(F.obj(a)); };
    t.comp1 = [&B, F](const typename CA::One& x) {
        auto fx = F.one(x);
        return B.vcompc(B.dagc(B.lunit2(fx)), B.runit2(fx));
    };
    return t;
}

// 1-composite phi (x) psi of transformations F => G => H.
template <class CA, class CB>
GTrans<CA, CB> gtrans_tensor(CB& B, const GTrans<CA, CB>& phi, const GTrans<CA, CB>& psi) {
    GTrans<CA, CB> r;
    r.F = phi.F;
    r.G = psi.G;
    r.comp0 = [&B, phi, psi](typename CA::Obj a) {
        return B.tensor1(phi.comp0(a), psi.comp0(a));
    };
    r.comp1 = [&B, phi, psi](const typename CA::One& x) {
        auto* A = phi.F.src;
        auto a = A->src1(x);
        auto b = A->tgt1(x);
        auto fx = phi.F.one(x);
        auto gx = phi.G.one(x);
        auto hx = psi.G.one(x);
        auto pa = phi.comp0(a), pb = phi.comp0(b);
        auto sa = psi.comp0(a), sb = psi.comp0(b);
        return B.vcompc(
            B.dagc(B.assocc(pa, sa, hx)),
            B.vcompc(B.tensor2c(B.id2c(pa), psi.comp1(x)),
                     B.vcompc(B.assocc(pa, gx, sb),
                              B.vcompc(B.tensor2c(phi.comp1(x), B.id2c(sb)),
                                       B.dagc(B.assocc(fx, pb, sb))))));
    };
    return r;
}

// G . phi (post-whiskering by a functor).
template <class CA, class CB, class CC>
GTrans<CA, CC> whisker_left(CC& C, const GFunctor<CB, CC>& G, const GTrans<CA, CB>& phi) {
    GTrans<CA, CC> r;
    r.F = compose_gfunctors(C, G, phi.F);
    r.G = compose_gfunctors(C, G, phi.G);
    r.comp0 = [G, phi](typename CA::Obj a) { return G.one(phi.comp0(a)); };
    r.comp1 = [&C, G, phi](const typename CA::One& x) {
        auto* A = phi.F.src;
        auto a = A->src1(x);
        auto b = A->tgt1(x);
        return C.vcompc(C.dagc(G.f2(phi.comp0(a), phi.G.one(x))),
                        C.vcompc(G.two(phi.comp1(x)), G.f2(phi.F.one(x), phi.comp0(b))));
    };
    return r;
}

// gamma . F (pre-whiskering by a functor).
template <class CA, class CB, class CC>
GTrans<CA, CC> whisker_right(CC& C, const GTrans<CB, CC>& gamma, const GFunctor<CA, CB>& F) {
    GTrans<CA, CC> r;
    r.F = compose_gfunctors(C, gamma.F, F);
    r.G = compose_gfunctors(C, gamma.G, F);
    r.comp0 = [gamma, F](typename CA::Obj a) { return gamma.comp0(F.obj(a)); };
    r.comp1 = [gamma, F](const typename CA::One& x) { return gamma.comp1(F.one(x)); };
    return r;
}

// Cubical 1-composite gamma . phi := (G . phi) (x) (gamma . F').
template <class CA, class CB, class CC>
GTrans<CA, CC> hcompose_trans(CC& C, const GTrans<CB, CC>& gamma, const GTrans<CA, CB>& phi) {
    return gtrans_tensor(C, whisker_left(C, gamma.F, phi), whisker_right(C, gamma, phi.G));
}

// Interchanger (G . phi) (x) (gamma . F') => (gamma . F) (x) (G' . phi),
// with components gamma_{phi_a}.
template <class CA, class CB, class CC>
GMod<CA, CC> interchanger(CC& C, const GTrans<CA, CB>& phi, const GTrans<CB, CC>& gamma) {
    GMod<CA, CC> m;
    m.phi = gtrans_tensor(C, whisker_left(C, gamma.F, phi), whisker_right(C, gamma, phi.G));
    m.psi = gtrans_tensor(C, whisker_right(C, gamma, phi.F), whisker_left(C, gamma.G, phi));
    m.comp = [gamma, phi](typename CA::Obj a) { return gamma.comp1(phi.comp0(a)); };
    return m;
}

template <class CA, class CB>
GMod<CA, CB> vcompose_mods(CB& B, const GMod<CA, CB>& n2, const GMod<CA, CB>& n1) {
    GMod<CA, CB> r;
    r.phi = n1.phi;
    r.psi = n2.psi;
    r.comp = [&B, n2, n1](typename CA::Obj a) { return B.vcompc(n2.comp(a), n1.comp(a)); };
    return r;
}

template <class CA, class CB>
GMod<CA, CB> hcompose_mods(CB& B, const GMod<CA, CB>& n, const GMod<CA, CB>& t) {
    GMod<CA, CB> r;
    r.phi = gtrans_tensor(B, n.phi, t.phi);
    r.psi = gtrans_tensor(B, n.psi, t.psi);
    r.comp = [&B, n, t](typename CA::Obj a) { return B.tensor2c(n.comp(a), t.comp(a)); };
    return r;
}

template <class CA, class CB>
GMod<CA, CB> dagger_mod(CB& B, const GMod<CA, CB>& n) {
    GMod<CA, CB> r;
    r.phi = n.psi;
    r.psi = n.phi;
    r.comp = [&B, n](typename CA::Obj a) { return B.dagc(n.comp(a)); };
    return r;
}

}  // namespace qsys
