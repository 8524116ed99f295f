#include "doctest.h"

#include "qsys/examples.hpp"
#include "qsys/transport.hpp"

using namespace qsys;

namespace {

Tolerance tol;

DagFunctor sign_autoequivalence(const Presentation& z2) {
    DagFunctor f = identity_functor(z2);
    f.f2[{1, 1}] = Cx(-1, 0) * f.f2[{1, 1}];
    return f;
}

Transformation character_transformation(const DagFunctor& id_f) {
    Transformation t = identity_transformation(id_f);
    t.comp1[1] = Cx(-1, 0) * t.comp1[1];
    return t;
}

Transformation id_to_sign(const Presentation& z2, const DagFunctor& id_f, const DagFunctor& sgn,
                          Cx g_component) {
    Transformation t;
    t.F = id_f;
    t.G = sgn;
    t.comp0 = {unit_cell(z2, 0)};
    for (int s = 0; s < z2.num_simples(); ++s) {
        OneCell x = simple_cell(z2, s);
        t.comp1[s] = vcompose(dagger(unitor_l(z2, x)), unitor_r(z2, x));
    }
    t.comp1[1] = g_component * t.comp1[1];
    return t;
}

struct Z2Setup {
    Presentation p = examples::vec_zn(2);
    QSystem t, q;
    CompletionContext ctx;
    Z2Setup() {
        t = trivial_qsystem(p, 0);
        q = examples::z2_group_algebra(p);
        ctx = complete(p, {t, q}, {"I", "Q"}, tol, 0);
    }
};

std::vector<QsysCal::One> intern_gens(QsysCal& cal, const CompletionContext& ctx) {
    std::vector<QsysCal::One> gens;
    for (const Bimodule& s : ctx.simples) gens.push_back(cal.intern_one(s));
    return gens;
}

std::vector<QsysCal::Obj> intern_objs(QsysCal& cal, const CompletionContext& ctx) {
    std::vector<QsysCal::Obj> objs;
    for (const QSystem& q : ctx.objects) objs.push_back(cal.intern_obj(q));
    return objs;
}

std::vector<NaturalitySample<QsysCal, QsysCal>> qsys_samples(QsysCal& cal,
                                                             const std::vector<QsysCal::One>& gens,
                                                             uint64_t seed) {
    std::vector<NaturalitySample<QsysCal, QsysCal>> samples;
    Rng rng(seed);
    for (QsysCal::One g1 : gens)
        for (QsysCal::One g2 : gens) {
            if (!(cal.tgt1(g1) == cal.src1(g2))) continue;
            QsysCal::One m = cal.tensor1(g1, g2);
            auto basis = intertwiner_space(cal.bim(m), cal.bim(m));
            if (basis.empty()) continue;
            TwoCell f = zero2(cal.bim(m).cell, cal.bim(m).cell);
            for (const TwoCell& e : basis) f = f + (rng.cgaussian() * e);
            samples.push_back({m, m, {m, m, f}});
            if (samples.size() >= 4) return samples;
        }
    return samples;
}

}  // namespace

TEST_CASE("qsys calculus: pentagon and triangle over the completed Vec_{Z/2}") {
    Z2Setup s;
    QsysCal cal(s.p, tol);
    auto gens = intern_gens(cal, s.ctx);

    Tolerance pent(1e-8, 0.0);
    int quadruples = 0;
    for (auto i : gens)
        for (auto j : gens) {
            if (!(cal.tgt1(i) == cal.src1(j))) continue;
            for (auto k : gens) {
                if (!(cal.tgt1(j) == cal.src1(k))) continue;
                for (auto m : gens) {
                    if (!(cal.tgt1(k) == cal.src1(m))) continue;
                    auto lhs = cal.vcompc(
                        cal.tensor2c(cal.id2c(i), cal.assocc(j, k, m)),
                        cal.vcompc(cal.assocc(i, cal.tensor1(j, k), m),
                                   cal.tensor2c(cal.assocc(i, j, k), cal.id2c(m))));
                    auto rhs = cal.vcompc(cal.assocc(i, j, cal.tensor1(k, m)),
                                          cal.assocc(cal.tensor1(i, j), k, m));
                    INFO("pentagon at ", i, " ", j, " ", k, " ", m);
                    CHECK(cal.dist(lhs, rhs) <= pent.bound());
                    ++quadruples;
                }
            }
        }
    CHECK(quadruples > 50);

    for (auto x : gens)
        for (auto y : gens) {
            if (!(cal.tgt1(x) == cal.src1(y))) continue;
            auto u = cal.unit1(cal.tgt1(x));
            auto lhs = cal.vcompc(cal.tensor2c(cal.id2c(x), cal.lunit2(y)), cal.assocc(x, u, y));
            auto rhs = cal.tensor2c(cal.runit2(x), cal.id2c(y));
            INFO("triangle at ", x, " ", y);
            CHECK(cal.dist(lhs, rhs) <= pent.bound());
        }
}

TEST_CASE("transported functors pass the functor checker") {
    Z2Setup s;
    DagFunctor id_f = identity_functor(s.p);
    DagFunctor sgn = sign_autoequivalence(s.p);

    for (const DagFunctor* f : {&id_f, &sgn}) {
        QsysCal A(s.p, tol), B(s.p, tol);
        auto gens = intern_gens(A, s.ctx);
        auto objs = intern_objs(A, s.ctx);
        auto lift = qsys_functor(A, B, *f);
        Report rep = check_functor(A, B, lift, gens, objs, Tolerance(1e-9, 0.0));
        for (const Check& c : rep.checks) {
            INFO(c.id, " residual ", c.residual);
            CHECK(c.pass);
        }
    }

    // Inclusion Vec -> Vec_{Z/2} over the trivial completion lists.
    Presentation v = examples::vec();
    DagFunctor incl;
    incl.src = &v;
    incl.tgt = &s.p;
    incl.obj_map = {0};
    incl.cell_map = {simple_cell(s.p, 0)};
    incl.f2[{0, 0}] = id2(simple_cell(s.p, 0));
    incl.f1 = {id2(unit_cell(s.p, 0))};

    CompletionContext vctx = complete(v, {trivial_qsystem(v, 0)}, {"I"}, tol, 0);
    QsysCal A(v, tol), B(s.p, tol);
    auto gens = intern_gens(A, vctx);
    auto objs = intern_objs(A, vctx);
    CHECK(check_functor(A, B, qsys_functor(A, B, incl), gens, objs, Tolerance(1e-9, 0.0)).pass());
}

TEST_CASE("transported transformations: projections, components, coherences") {
    Z2Setup s;
    DagFunctor id_f = identity_functor(s.p);
    DagFunctor sgn = sign_autoequivalence(s.p);
    Transformation chi = character_transformation(id_f);
    Transformation up = id_to_sign(s.p, id_f, sgn, Cx(0, 1));

    for (const Transformation* tr : {&chi, &up}) {
        QsysCal A(s.p, tol), B(s.p, tol);
        auto gens = intern_gens(A, s.ctx);
        auto objs = intern_objs(A, s.ctx);
        auto qt = qsys_transformation(A, B, *tr);

        // The crossing projection is an orthogonal projection before
        // splitting, and the component carriers are honest bimodules.
        for (auto qh : objs) {
            const auto& comp = qt->component(qh);
            for (const CMat& blk : comp.proj.blocks)
                if (blk.rows) CHECK(projection_residual(blk) < 1e-12);
            CHECK(check_bimodule(comp.carrier, tol).pass());
        }

        Report rep = check_transformation(A, B, as_gtrans(qt), gens, objs, Tolerance(1e-9, 0.0),
                                          qsys_samples(A, gens, 17));
        for (const Check& c : rep.checks) {
            INFO(c.id, " residual ", c.residual);
            CHECK(c.pass);
        }
    }
}

TEST_CASE("transported modifications and dagger preservation") {
    Z2Setup s;
    DagFunctor id_f = identity_functor(s.p);
    DagFunctor sgn = sign_autoequivalence(s.p);
    Transformation up = id_to_sign(s.p, id_f, sgn, Cx(0, 1));

    Modification n;
    n.phi = up;
    n.psi = up;
    n.comp = {Cx(0.6, 0.8) * id2(up.comp0[0])};

    QsysCal A(s.p, tol), B(s.p, tol);
    auto gens = intern_gens(A, s.ctx);
    auto objs = intern_objs(A, s.ctx);
    auto qup = qsys_transformation(A, B, up);
    auto qn = qsys_modification(A, B, n, qup, qup);

    Report rep = check_modification(A, B, qn, gens, Tolerance(1e-9, 0.0));
    for (const Check& c : rep.checks) {
        INFO(c.id, " residual ", c.residual);
        CHECK(c.pass);
    }

    // QSys(n-dagger) = QSys(n)-dagger componentwise, exactly.
    Modification nd;
    nd.phi = up;
    nd.psi = up;
    nd.comp = {dagger(n.comp[0])};
    auto qnd = qsys_modification(A, B, nd, qup, qup);
    for (auto qh : objs) {
        auto lhs = qnd.comp(qh);
        auto rhs = B.dagc(qn.comp(qh));
        CHECK(diff_norm(lhs.cell, rhs.cell) == 0.0);
    }
}

TEST_CASE("tensorator is unitary and a modification") {
    Z2Setup s;
    DagFunctor id_f = identity_functor(s.p);
    DagFunctor sgn = sign_autoequivalence(s.p);
    Transformation chi = character_transformation(id_f);
    Transformation up = id_to_sign(s.p, id_f, sgn, Cx(0, 1));
    Transformation both = compose_transformations(chi, up);
    CHECK(check_transformation(both, tol).pass());

    QsysCal A(s.p, tol), B(s.p, tol);
    auto gens = intern_gens(A, s.ctx);
    auto objs = intern_objs(A, s.ctx);
    auto qchi = qsys_transformation(A, B, chi);
    auto qup = qsys_transformation(A, B, up);
    auto qboth = qsys_transformation(A, B, both);

    auto tens = qsys_tensorator(A, B, qchi, qup, qboth);
    for (auto qh : objs) CHECK(unitarity_residual2(B, tens.comp(qh)) < 1e-9);

    Report rep = check_modification(A, B, tens, gens, Tolerance(1e-9, 0.0));
    for (const Check& c : rep.checks) {
        INFO(c.id, " residual ", c.residual);
        CHECK(c.pass);
    }
}

TEST_CASE("iota: strict inclusion at both levels") {
    Z2Setup s;

    // Presented: into the completion over the trivial list.
    CompletionContext tctx = complete(s.p, {s.t}, {"I"}, tol, 0);
    DagFunctor inc = iota_presented(s.p, tctx);
    Report rep = check_functor(inc, Tolerance(1e-9, 0.0));
    for (const Check& c : rep.checks) {
        INFO(c.id, " residual ", c.residual);
        CHECK(c.pass);
    }

    // Local equivalence: intertwiner dimensions over trivial Q-systems equal
    // ambient hom dimensions.
    for (int i = 0; i < s.p.num_simples(); ++i)
        for (int j = 0; j < s.p.num_simples(); ++j) {
            Bimodule bi = trivial_bimodule(s.p, simple_cell(s.p, i));
            Bimodule bj = trivial_bimodule(s.p, simple_cell(s.p, j));
            CHECK(static_cast<int>(intertwiner_space(bi, bj).size()) == (i == j ? 1 : 0));
        }

    // Calculus-level iota passes the functor checker.
    PresCalc A(s.p);
    QsysCal B(s.p, tol);
    std::vector<OneCell> gens;
    std::vector<int> objs = {0};
    for (int i = 0; i < s.p.num_simples(); ++i) gens.push_back(simple_cell(s.p, i));
    CHECK(check_functor(A, B, iota(A, B), gens, objs, Tolerance(1e-9, 0.0)).pass());

    // Dominance witness: every listed Q-system receives a dagger condensation
    // from the image of iota.
    for (const QSystem& q : s.ctx.objects) {
        Condensation c = condensation_from_qsystem(q, tol);
        Report crep = check_condensation(c, Tolerance(1e-12, 0.0));
        CHECK(crep.pass());
        CHECK(diff_norm(c.delta, dagger(c.eps)) == 0.0);
    }
}

TEST_CASE("psi^F fills the transport square for every bundled functor") {
    Z2Setup s;
    Presentation v = examples::vec();
    DagFunctor id_f = identity_functor(s.p);
    DagFunctor sgn = sign_autoequivalence(s.p);
    DagFunctor incl;
    incl.src = &v;
    incl.tgt = &s.p;
    incl.obj_map = {0};
    incl.cell_map = {simple_cell(s.p, 0)};
    incl.f2[{0, 0}] = id2(simple_cell(s.p, 0));
    incl.f1 = {id2(unit_cell(s.p, 0))};

    for (const DagFunctor* f : {&id_f, &sgn, &incl}) {
        PresCalc A(*f->src);
        QsysCal B(*f->tgt, tol);
        auto t = psi_f(A, B, *f);

        std::vector<OneCell> gens;
        std::vector<int> objs;
        for (int i = 0; i < f->src->num_simples(); ++i) gens.push_back(simple_cell(*f->src, i));
        for (int a = 0; a < f->src->num_objects(); ++a) objs.push_back(a);

        // psi_b is a bimodule and each component is unitary.
        for (int a : objs) {
            CHECK(check_bimodule(B.bim(t.comp0(a)), tol).pass());
        }
        Report rep = check_transformation(A, B, t, gens, objs, Tolerance(1e-9, 0.0));
        for (const Check& c : rep.checks) {
            INFO(c.id, " residual ", c.residual);
            CHECK(c.pass);
        }
    }
}

TEST_CASE("strict 1-functoriality of transport at data level") {
    Z2Setup s;
    DagFunctor id_f = identity_functor(s.p);
    DagFunctor sgn = sign_autoequivalence(s.p);

    QsysCal A(s.p, tol), B(s.p, tol), C(s.p, tol);

    // identity pair: exact equality
    Report rid = verify_strict_1_functoriality(A, B, C, id_f, sgn, s.ctx.objects, s.ctx.simples,
                                               Tolerance(1e-12, 0.0));
    CHECK(rid.pass());

    // the bundled composable pair (sign, sign) with G . F = id
    QsysCal A2(s.p, tol), B2(s.p, tol), C2(s.p, tol);
    Report rep = verify_strict_1_functoriality(A2, B2, C2, sgn, sgn, s.ctx.objects, s.ctx.simples,
                                               Tolerance(1e-12, 0.0));
    for (const Check& c : rep.checks) {
        INFO(c.id, " residual ", c.residual);
        CHECK(c.pass);
    }
}
