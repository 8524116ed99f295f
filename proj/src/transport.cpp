#include "qsys/transport.hpp"

namespace qsys {

QsysCal::Obj QsysCal::intern_obj(const QSystem& q) {
    for (size_t i = 0; i < objs_.size(); ++i)
        if (objs_[i] == q) return static_cast<Obj>(i);
    objs_.push_back(q);
    return static_cast<Obj>(objs_.size() - 1);
}

QsysCal::One QsysCal::intern_one(const Bimodule& b) {
    for (size_t i = 0; i < ones_.size(); ++i)
        if (ones_[i] == b) return static_cast<One>(i);
    ones_.push_back(b);
    return static_cast<One>(ones_.size() - 1);
}

QsysCal::One QsysCal::tensor1(One x, One y) {
    auto it = tensor_cache_.find({x, y});
    if (it != tensor_cache_.end()) return it->second.first;
    RelTensor rt = rel_tensor(bim(x), bim(y), tol);
    One h = intern_one(rt.result);
    tensor_cache_[{x, y}] = {h, rt.u};
    return h;
}

const TwoCell& QsysCal::coisometry(One x, One y) {
    tensor1(x, y);
    return tensor_cache_.at({x, y}).second;
}

QsysCal::Two QsysCal::make2(One dom, One cod, TwoCell cell) const {
    if (cell.dom != bim(dom).cell || cell.cod != bim(cod).cell)
        throw DomainMismatch("QsysCal::make2: carrier mismatch");
    return {dom, cod, std::move(cell)};
}

QsysCal::Two QsysCal::tensor2c(const Two& f, const Two& g) {
    One d = tensor1(f.dom, g.dom);
    One c = tensor1(f.cod, g.cod);
    TwoCell cell = vcompose({coisometry(f.cod, g.cod), tensor_2cells(*base, f.cell, g.cell),
                             dagger(coisometry(f.dom, g.dom))});
    return {d, c, std::move(cell)};
}

QsysCal::Two QsysCal::vcompc(const Two& g, const Two& f) const {
    if (f.cell.cod != g.cell.dom) throw DomainMismatch("QsysCal::vcompc: carrier mismatch");
    return {f.dom, g.cod, vcompose(g.cell, f.cell)};
}

QsysCal::Two QsysCal::assocc(One x, One y, One z) {
    One xy = tensor1(x, y);
    One yz = tensor1(y, z);
    One d = tensor1(xy, z);
    One c = tensor1(x, yz);
    return {d, c, qsys_associator(bim(x), bim(y), bim(z), tol)};
}

QsysCal::Two QsysCal::lunit2(One x) {
    One u = unit1(src1(x));
    One d = tensor1(u, x);
    return {d, x, unitor_left(bim(x), tol)};
}

QsysCal::Two QsysCal::runit2(One x) {
    One u = unit1(tgt1(x));
    One d = tensor1(x, u);
    return {d, x, unitor_right(bim(x), tol)};
}

QSystem map_qsystem(const DagFunctor& f, const QSystem& q) {
    QSystem r;
    r.pres = f.tgt;
    r.base = f.obj_map[q.base];
    r.cell = f.map_cell(q.cell);
    r.m = vcompose(f.map_two(q.m), f.f2_general(q.cell, q.cell));
    r.i = vcompose(f.map_two(q.i), f.f1[q.base]);
    return r;
}

Bimodule map_bimodule(const DagFunctor& f, const Bimodule& b) {
    Bimodule r;
    r.pres = f.tgt;
    r.left = map_qsystem(f, b.left);
    r.right = map_qsystem(f, b.right);
    r.cell = f.map_cell(b.cell);
    r.lam = vcompose(f.map_two(b.lam), f.f2_general(b.left.cell, b.cell));
    r.rho = vcompose(f.map_two(b.rho), f.f2_general(b.cell, b.right.cell));
    return r;
}

GFunctor<QsysCal, QsysCal> qsys_functor(QsysCal& a, QsysCal& b, const DagFunctor& f) {
    GFunctor<QsysCal, QsysCal> g;
    g.src = &a;
    g.tgt = &b;
    const DagFunctor* fp = &f;
    g.obj = [&a, &b, fp](int qh) { return b.intern_obj(map_qsystem(*fp, a.qsystem(qh))); };
    g.one = [&a, &b, fp](int mh) { return b.intern_one(map_bimodule(*fp, a.bim(mh))); };
    g.two = [&a, &b, fp](const QsysCal::Two& t) -> QsysCal::Two {
        int d = b.intern_one(map_bimodule(*fp, a.bim(t.dom)));
        int c = b.intern_one(map_bimodule(*fp, a.bim(t.cod)));
        return {d, c, fp->map_two(t.cell)};
    };
    g.f2 = [&a, &b, fp](int xh, int yh) -> QsysCal::Two {
        const Bimodule& X = a.bim(xh);
        const Bimodule& Y = a.bim(yh);
        int fx = b.intern_one(map_bimodule(*fp, X));
        int fy = b.intern_one(map_bimodule(*fp, Y));
        int xy = a.tensor1(xh, yh);
        int fxy = b.intern_one(map_bimodule(*fp, a.bim(xy)));
        int d = b.tensor1(fx, fy);
        TwoCell cell = vcompose({fp->map_two(a.coisometry(xh, yh)),
                                 fp->f2_general(X.cell, Y.cell), dagger(b.coisometry(fx, fy))});
        return {d, fxy, std::move(cell)};
    };
    g.f1 = [&a, &b, fp](int qh) -> QsysCal::Two {
        QSystem fq = map_qsystem(*fp, a.qsystem(qh));
        int u = b.unit1(b.intern_obj(fq));
        int fu = b.intern_one(map_bimodule(*fp, q_as_bimodule(a.qsystem(qh))));
        return {u, fu, id2(fq.cell)};
    };
    return g;
}

const QsysTransformation::Component& QsysTransformation::component(int q_handle) {
    auto it = comps_.find(q_handle);
    if (it != comps_.end()) return it->second;

    const Presentation& bp = *B->base;
    const QSystem& q = A->qsystem(q_handle);
    QSystem fq = map_qsystem(data.F, q);
    QSystem gq = map_qsystem(data.G, q);
    OneCell phib = data.comp0[q.base];
    TwoCell phi_q = data.comp1_general(q.cell);

    Component comp;
    {
        Chain c(bp, {fq.cell, phib, gq.cell});
        c.apply(0, 1, dagger(fq.m), {fq.cell, fq.cell});
        c.apply(1, 2, phi_q, {phib, gq.cell});
        c.apply(2, 2, gq.m, {gq.cell});
        comp.proj = c.acc;
    }
    auto [zcell, w] = split_idempotent(bp, comp.proj, B->tol);
    comp.w = w;

    comp.carrier.pres = &bp;
    comp.carrier.left = fq;
    comp.carrier.right = gq;
    comp.carrier.cell = zcell;
    {
        std::vector<OneCell> four = {fq.cell, fq.cell, phib, gq.cell};
        Chain c(bp, four);
        c.apply(0, 2, fq.m, {fq.cell});
        comp.carrier.lam = vcompose(
            {w, c.acc, dagger(fold_group(bp, four, 1, 3)),
             tensor_2cells(bp, id2(fq.cell), dagger(w))});
    }
    {
        Chain c(bp, {fq.cell, phib, gq.cell, gq.cell});
        c.apply(2, 2, gq.m, {gq.cell});
        comp.carrier.rho = vcompose({w, c.acc, tensor_2cells(bp, dagger(w), id2(gq.cell))});
    }
    comp.handle = B->intern_one(comp.carrier);
    return comps_.emplace(q_handle, std::move(comp)).first->second;
}

QsysCal::Two QsysTransformation::crossing(int m_handle) {
    const Presentation& bp = *B->base;
    const Bimodule& m = A->bim(m_handle);
    int ph = A->intern_obj(m.left);
    int qh = A->intern_obj(m.right);
    const Component& cp = component(ph);
    const Component& cq = component(qh);

    Bimodule fm = map_bimodule(data.F, m);
    Bimodule gm = map_bimodule(data.G, m);
    const QSystem& fp = fm.left;
    const QSystem& fq = fm.right;
    const QSystem& gp = gm.left;
    const QSystem& gq = gm.right;
    OneCell phia = data.comp0[m.left.base];
    OneCell phib = data.comp0[m.right.base];

    std::vector<OneCell> start = {fm.cell, fq.cell, phib, gq.cell};
    Chain c(bp, start);
    c.apply(1, 1, dagger(fq.m), {fq.cell, fq.cell});
    c.apply(2, 2, data.comp1_general(m.right.cell), {phib, gq.cell});
    c.apply(3, 2, gq.m, {gq.cell});
    c.apply(0, 2, fm.rho, {fm.cell});
    c.apply(0, 1, dagger(fm.lam), {fp.cell, fm.cell});
    c.apply(1, 2, data.comp1_general(m.cell), {phia, gm.cell});
    c.apply(2, 2, gm.rho, {gm.cell});
    c.apply(2, 1, dagger(gm.lam), {gp.cell, gm.cell});
    c.apply(0, 1, dagger(fp.m), {fp.cell, fp.cell});
    c.apply(1, 2, data.comp1_general(m.left.cell), {phia, gp.cell});
    c.apply(2, 2, gp.m, {gp.cell});

    int fmh = B->intern_one(fm);
    int gmh = B->intern_one(gm);
    int dom = B->tensor1(fmh, cq.handle);
    int cod = B->tensor1(cp.handle, gmh);

    TwoCell prep = vcompose({dagger(fold_group(bp, start, 1, 3)),
                             tensor_2cells(bp, id2(fm.cell), dagger(cq.w)),
                             dagger(B->coisometry(fmh, cq.handle))});
    TwoCell post = vcompose(B->coisometry(cp.handle, gmh),
                            tensor_2cells(bp, cp.w, id2(gm.cell)));
    return {dom, cod, vcompose({post, c.acc, prep})};
}

std::shared_ptr<QsysTransformation> qsys_transformation(QsysCal& a, QsysCal& b,
                                                        const Transformation& t) {
    auto qt = std::make_shared<QsysTransformation>();
    qt->A = &a;
    qt->B = &b;
    qt->data = t;
    return qt;
}

GTrans<QsysCal, QsysCal> as_gtrans(std::shared_ptr<QsysTransformation> t) {
    GTrans<QsysCal, QsysCal> g;
    g.F = qsys_functor(*t->A, *t->B, t->data.F);
    g.G = qsys_functor(*t->A, *t->B, t->data.G);
    g.comp0 = [t](int qh) { return t->component(qh).handle; };
    g.comp1 = [t](int mh) { return t->crossing(mh); };
    return g;
}

GMod<QsysCal, QsysCal> qsys_modification(QsysCal& a, QsysCal& b, const Modification& n,
                                         std::shared_ptr<QsysTransformation> phi,
                                         std::shared_ptr<QsysTransformation> psi) {
    GMod<QsysCal, QsysCal> m;
    m.phi = as_gtrans(phi);
    m.psi = as_gtrans(psi);
    const Presentation& bp = *b.base;
    m.comp = [&a, &b, &bp, n, phi, psi](int qh) -> QsysCal::Two {
        const QSystem& q = a.qsystem(qh);
        const auto& cphi = phi->component(qh);
        const auto& cpsi = psi->component(qh);
        QSystem fq = map_qsystem(phi->data.F, q);
        QSystem gq = map_qsystem(phi->data.G, q);
        Chain c(bp, {fq.cell, phi->data.comp0[q.base], gq.cell});
        c.apply(1, 1, n.comp[q.base], {psi->data.comp0[q.base]});
        TwoCell cell = vcompose({cpsi.w, c.acc, dagger(cphi.w)});
        return {cphi.handle, cpsi.handle, std::move(cell)};
    };
    return m;
}

Transformation compose_transformations(const Transformation& phi, const Transformation& psi) {
    const Presentation& tp = *phi.F.tgt;
    Transformation r;
    r.F = phi.F;
    r.G = psi.G;
    for (size_t a = 0; a < phi.comp0.size(); ++a)
        r.comp0.push_back(tensor_1cells(tp, phi.comp0[a], psi.comp0[a]));
    for (int s = 0; s < phi.F.src->num_simples(); ++s) {
        OneCell x = simple_cell(*phi.F.src, s);
        int ao = x.src, bo = x.tgt;
        OneCell fx = phi.F.map_cell(x), gx = phi.G.map_cell(x), hx = psi.G.map_cell(x);
        const OneCell &pa = phi.comp0[ao], &pb = phi.comp0[bo];
        const OneCell &sa = psi.comp0[ao], &sb = psi.comp0[bo];
        r.comp1[s] = vcompose(
            {dagger(associator(tp, pa, sa, hx)),
             tensor_2cells(tp, id2(pa), psi.comp1_general(x)),
             associator(tp, pa, gx, sb),
             tensor_2cells(tp, phi.comp1_general(x), id2(sb)),
             dagger(associator(tp, fx, pb, sb))});
    }
    return r;
}

GMod<QsysCal, QsysCal> qsys_tensorator(QsysCal& a, QsysCal& b,
                                       std::shared_ptr<QsysTransformation> phi,
                                       std::shared_ptr<QsysTransformation> psi,
                                       std::shared_ptr<QsysTransformation> phipsi) {
    GMod<QsysCal, QsysCal> m;
    m.phi = gtrans_tensor(b, as_gtrans(phi), as_gtrans(psi));
    m.psi = as_gtrans(phipsi);
    const Presentation& bp = *b.base;
    m.comp = [&a, &b, &bp, phi, psi, phipsi](int qh) -> QsysCal::Two {
        const QSystem& q = a.qsystem(qh);
        const auto& cphi = phi->component(qh);
        const auto& cpsi = psi->component(qh);
        const auto& cboth = phipsi->component(qh);
        QSystem fq = map_qsystem(phi->data.F, q);
        QSystem gq = map_qsystem(phi->data.G, q);
        QSystem hq = map_qsystem(psi->data.G, q);
        const OneCell& phib = phi->data.comp0[q.base];
        const OneCell& psib = psi->data.comp0[q.base];

        std::vector<OneCell> six = {fq.cell, phib, gq.cell, gq.cell, psib, hq.cell};
        Chain c(bp, six);
        c.apply(2, 1, dagger(gq.m), {gq.cell, gq.cell});
        c.apply(3, 2, gq.m, {gq.cell});
        c.apply(1, 2, dagger(phi->data.comp1_general(q.cell)), {fq.cell, phib});
        c.apply(0, 2, fq.m, {fq.cell});
        c.apply(2, 2, psi->data.comp1_general(q.cell), {psib, hq.cell});
        c.apply(3, 2, hq.m, {hq.cell});

        // domain: QSys(phi)_Q (x)_{G(Q)} QSys(psi)_Q unpacked to the six strands
        int dom = b.tensor1(cphi.handle, cpsi.handle);
        OneCell wphi_cell = cphi.proj.dom;  // (FQ (x) phib) (x) GQ
        std::vector<OneCell> mid = {wphi_cell, gq.cell, psib, hq.cell};
        TwoCell zeta = fold_group(bp, mid, 1, 3);
        TwoCell prep = vcompose({dagger(zeta),
                                 tensor_2cells(bp, dagger(cphi.w), dagger(cpsi.w)),
                                 dagger(b.coisometry(cphi.handle, cpsi.handle))});

        std::vector<OneCell> outc = {fq.cell, phib, psib, hq.cell};
        TwoCell post = vcompose(cboth.w, fold_group(bp, outc, 1, 2));
        return {dom, cboth.handle, vcompose({post, c.acc, prep})};
    };
    return m;
}

GFunctor<PresCalc, QsysCal> iota(PresCalc& a, QsysCal& b) {
    GFunctor<PresCalc, QsysCal> g;
    g.src = &a;
    g.tgt = &b;
    const Presentation* p = a.p;
    g.obj = [&b, p](int o) { return b.intern_obj(trivial_qsystem(*p, o)); };
    g.one = [&b, p](const OneCell& x) { return b.intern_one(trivial_bimodule(*p, x)); };
    g.two = [&b, p](const TwoCell& f) -> QsysCal::Two {
        int d = b.intern_one(trivial_bimodule(*p, f.dom));
        int c = b.intern_one(trivial_bimodule(*p, f.cod));
        return {d, c, f};
    };
    g.f2 = [&b, p](const OneCell& x, const OneCell& y) -> QsysCal::Two {
        int ix = b.intern_one(trivial_bimodule(*p, x));
        int iy = b.intern_one(trivial_bimodule(*p, y));
        int d = b.tensor1(ix, iy);
        int c = b.intern_one(trivial_bimodule(*p, tensor_1cells(*p, x, y)));
        return {d, c, dagger(b.coisometry(ix, iy))};
    };
    g.f1 = [&b, p](int o) -> QsysCal::Two {
        int u = b.unit1(b.intern_obj(trivial_qsystem(*p, o)));
        int c = b.intern_one(trivial_bimodule(*p, unit_cell(*p, o)));
        return {u, c, id2(unit_cell(*p, o))};
    };
    return g;
}

GTrans<PresCalc, QsysCal> psi_f(PresCalc& a, QsysCal& b, const DagFunctor& f) {
    GTrans<PresCalc, QsysCal> t;
    const Presentation& bp = *b.base;
    auto mid = std::make_shared<PresCalc>(*f.tgt);
    auto acal = std::make_shared<QsysCal>(*f.src, b.tol);
    auto gf = as_gfunctor(a, *mid, f);
    t.F = compose_gfunctors(b, iota(*mid, b), gf);
    t.F.src = &a;
    t.F.tgt = &b;
    t.G = compose_gfunctors(b, qsys_functor(*acal, b, f), iota(a, *acal));
    t.G.src = &a;
    t.G.tgt = &b;
    const DagFunctor* fp = &f;
    auto comp_bim = [&bp, fp](int o) {
        QSystem ftriv = map_qsystem(*fp, trivial_qsystem(*fp->src, o));
        Bimodule psi;
        psi.pres = &bp;
        psi.left = trivial_qsystem(bp, fp->obj_map[o]);
        psi.right = ftriv;
        psi.cell = unit_cell(bp, fp->obj_map[o]);
        psi.lam = unitor_l(bp, psi.cell);
        psi.rho = vcompose(dagger(fp->f1[o]), unitor_l(bp, ftriv.cell));
        return psi;
    };
    // mid/acal are captured to pin the calculi referenced by t.F/t.G.
    t.comp0 = [&b, comp_bim, mid, acal](int o) { return b.intern_one(comp_bim(o)); };
    auto fone = t.F.one;
    auto gone = t.G.one;
    t.comp1 = [&b, &bp, fp, comp_bim, fone, gone](const OneCell& x) -> QsysCal::Two {
        OneCell fx = fp->map_cell(x);
        int fxt = fone(x);  // iota_B(F(X))
        int gxt = gone(x);  // QSys(F)(iota_A(X))
        int pa = b.intern_one(comp_bim(x.src));
        int pb = b.intern_one(comp_bim(x.tgt));
        int dom = b.tensor1(fxt, pb);
        int cod = b.tensor1(pa, gxt);
        TwoCell cell = vcompose({b.coisometry(pa, gxt), dagger(unitor_l(bp, fx)),
                                 unitor_r(bp, fx), dagger(b.coisometry(fxt, pb))});
        return {dom, cod, std::move(cell)};
    };
    return t;
}

Report verify_strict_1_functoriality(QsysCal& a, QsysCal& b, QsysCal& c, const DagFunctor& g,
                                     const DagFunctor& f, const std::vector<QSystem>& objs,
                                     const std::vector<Bimodule>& gens, const Tolerance& tol) {
    Report rep;
    DagFunctor gf = compose_functors(g, f);
    auto lift_f = qsys_functor(a, b, f);
    auto lift_g = qsys_functor(b, c, g);
    auto lhs = compose_gfunctors(c, lift_g, lift_f);
    auto rhs = qsys_functor(a, c, gf);

    for (size_t k = 0; k < objs.size(); ++k) {
        int qh = a.intern_obj(objs[k]);
        const QSystem& q1 = c.qsystem(lhs.obj(qh));
        const QSystem& q2 = c.qsystem(rhs.obj(qh));
        double d = q1.cell == q2.cell
                       ? std::max(diff_norm(q1.m, q2.m), diff_norm(q1.i, q2.i))
                       : 1.0;
        rep.add("object/" + std::to_string(k), "strict-composition", d, tol.bound());
    }
    std::vector<int> gen_handles;
    for (const Bimodule& s : gens) gen_handles.push_back(a.intern_one(s));
    for (size_t k = 0; k < gen_handles.size(); ++k) {
        const Bimodule& m1 = c.bim(lhs.one(gen_handles[k]));
        const Bimodule& m2 = c.bim(rhs.one(gen_handles[k]));
        double d = (m1.cell == m2.cell && m1.left.cell == m2.left.cell &&
                    m1.right.cell == m2.right.cell)
                       ? std::max({diff_norm(m1.lam, m2.lam), diff_norm(m1.rho, m2.rho),
                                   diff_norm(m1.left.m, m2.left.m),
                                   diff_norm(m1.right.m, m2.right.m)})
                       : 1.0;
        rep.add("cell/" + std::to_string(k), "strict-composition", d, tol.bound());

        // action on 2-cells: identity and a random intertwiner
        QsysCal::Two idt = a.id2c(gen_handles[k]);
        rep.add("two-id/" + std::to_string(k), "strict-composition",
                c.dist(lhs.two(idt), rhs.two(idt)), tol.bound());
    }
    for (size_t k1 = 0; k1 < gen_handles.size(); ++k1)
        for (size_t k2 = 0; k2 < gen_handles.size(); ++k2) {
            if (!(a.tgt1(gen_handles[k1]) == a.src1(gen_handles[k2]))) continue;
            auto t1 = lhs.f2(gen_handles[k1], gen_handles[k2]);
            auto t2 = rhs.f2(gen_handles[k1], gen_handles[k2]);
            rep.add("f2/" + std::to_string(k1) + "." + std::to_string(k2), "strict-composition",
                    c.dist(t1, t2), tol.bound());
        }
    for (size_t k = 0; k < objs.size(); ++k) {
        int qh = a.intern_obj(objs[k]);
        rep.add("f1/" + std::to_string(k), "strict-composition",
                c.dist(lhs.f1(qh), rhs.f1(qh)), tol.bound());
    }
    return rep;
}

DagFunctor iota_presented(const Presentation& p, const CompletionContext& ctx) {
    const Presentation& cp = ctx.completed;
    DagFunctor f;
    f.src = &p;
    f.tgt = &cp;

    f.obj_map.assign(p.num_objects(), -1);
    for (int a = 0; a < p.num_objects(); ++a) {
        QSystem t = trivial_qsystem(p, a);
        for (size_t k = 0; k < ctx.objects.size(); ++k)
            if (ctx.objects[k] == t) f.obj_map[a] = static_cast<int>(k);
        if (f.obj_map[a] < 0)
            throw StructuralError("iota: completion does not include the trivial Q-system of '" +
                                  p.objects[a] + "'");
    }
    std::vector<int> simple_to_completed(p.num_simples(), -1);
    for (int s = 0; s < p.num_simples(); ++s) {
        Bimodule t = trivial_bimodule(p, simple_cell(p, s));
        int u = ctx.simple_of_bimodule(t);
        if (u < 0) throw StructuralError("iota: completed class missing for simple " + p.simples[s].id);
        simple_to_completed[s] = u;
        f.cell_map.push_back(simple_cell(cp, u));
    }

    // F2 on simples: match the completed fusion channels against the ambient
    // channel embeddings through the recorded isometries.
    for (int i = 0; i < p.num_simples(); ++i)
        for (int j = 0; j < p.num_simples(); ++j) {
            if (!p.composable(i, j)) continue;
            int ci = simple_to_completed[i], cj = simple_to_completed[j];
            const auto& pd = ctx.pairs.at({ci, cj});
            OneCell ij = tensor_1cells(p, simple_cell(p, i), simple_cell(p, j));
            OneCell dom = tensor_1cells(cp, f.cell_map[i], f.cell_map[j]);
            OneCell cod = f.map_cell(ij);
            TwoCell f2 = zero2(dom, cod);
            for (int u = 0; u < cp.num_simples(); ++u) {
                int channels = cp.fusion[ci][cj][u];
                if (channels == 0) continue;
                // rows of the block: copies (k, nu) of u inside iota(i (x) j)
                int row = 0;
                for (int k = 0; k < p.num_simples(); ++k) {
                    if (simple_to_completed[k] != u) continue;
                    for (int nu = 0; nu < p.fusion[i][j][k]; ++nu, ++row) {
                        // embedding of channel copy (k, nu) into the ambient cell
                        TwoCell emb = zero2(simple_cell(p, k), ij);
                        emb.blocks[k].at(pair_basis(p, simple_cell(p, i), simple_cell(p, j), k)
                                             .index(i, 0, j, 0, nu),
                                         0) = 1.0;
                        for (int mu = 0; mu < channels; ++mu) {
                            TwoCell comp = vcompose(
                                {dagger(emb), dagger(pd.rel.u), pd.bases[u][mu]});
                            f2.blocks[u].at(row, mu) = schur_scalar(comp);
                        }
                    }
                }
            }
            f.f2[{i, j}] = std::move(f2);
        }
    for (int a = 0; a < p.num_objects(); ++a)
        f.f1.push_back(id2(unit_cell(cp, f.obj_map[a])));
    return f;
}

}  // namespace qsys
