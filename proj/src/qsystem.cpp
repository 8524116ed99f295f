#include "qsys/qsystem.hpp"

namespace qsys {

namespace {

void require(bool ok, const char* msg) {
    if (!ok) throw DomainMismatch(msg);
}

void check_qsystem_shapes(const QSystem& q) {
    const Presentation& p = *q.pres;
    require(q.cell.src == q.base && q.cell.tgt == q.base, "Q-system: Q must be an endo 1-cell");
    OneCell qq = tensor_1cells(p, q.cell, q.cell);
    require(q.m.dom == qq && q.m.cod == q.cell, "Q-system: m must map Q(x)Q => Q");
    require(q.i.dom == unit_cell(p, q.base) && q.i.cod == q.cell,
            "Q-system: i must map 1_b => Q");
}

void check_bimodule_shapes(const Bimodule& m) {
    const Presentation& p = *m.pres;
    require(m.left.base == m.cell.src && m.right.base == m.cell.tgt,
            "bimodule: endpoint objects disagree with Q-system bases");
    require(m.lam.dom == tensor_1cells(p, m.left.cell, m.cell) && m.lam.cod == m.cell,
            "bimodule: lam must map P(x)X => X");
    require(m.rho.dom == tensor_1cells(p, m.cell, m.right.cell) && m.rho.cod == m.cell,
            "bimodule: rho must map X(x)Q => X");
}

}  // namespace

QSystem trivial_qsystem(const Presentation& p, int a) {
    if (a < 0 || a >= p.num_objects()) throw StructuralError("trivial_qsystem: unknown object");
    QSystem q;
    q.pres = &p;
    q.base = a;
    q.cell = unit_cell(p, a);
    q.m = unitor_l(p, q.cell);
    q.i = id2(q.cell);
    return q;
}

Report check_qsystem(const QSystem& q, const Tolerance& tol) {
    const Presentation& p = *q.pres;
    check_qsystem_shapes(q);
    Report rep;
    const TwoCell& m = q.m;
    const TwoCell& i = q.i;
    TwoCell idq = id2(q.cell);
    TwoCell alpha = associator(p, q.cell, q.cell, q.cell);

    // (Q1)  m * (m (x) id) = m * (id (x) m) * assoc
    TwoCell lhs1 = vcompose(m, tensor_2cells(p, m, idq));
    TwoCell rhs1 = vcompose({m, tensor_2cells(p, idq, m), alpha});
    rep.add("Q1", "associativity", diff_norm(lhs1, rhs1), tol.bound());

    // (Q2)  m * (i (x) id) = lambda,  m * (id (x) i) = rho
    double q2 = std::max(
        diff_norm(vcompose(m, tensor_2cells(p, i, idq)), unitor_l(p, q.cell)),
        diff_norm(vcompose(m, tensor_2cells(p, idq, i)), unitor_r(p, q.cell)));
    rep.add("Q2", "unitality", q2, tol.bound());

    // (Q3)  (m (x) id) * assoc^-1 * (id (x) m*) = m* m = (id (x) m) * assoc * (m* (x) id)
    TwoCell mid = vcompose(dagger(m), m);
    TwoCell left3 = vcompose({tensor_2cells(p, m, idq), dagger(alpha), tensor_2cells(p, idq, dagger(m))});
    TwoCell right3 = vcompose({tensor_2cells(p, idq, m), alpha, tensor_2cells(p, dagger(m), idq)});
    rep.add("Q3", "frobenius", std::max(diff_norm(left3, mid), diff_norm(right3, mid)), tol.bound());

    // (Q4)  m m* = id
    rep.add("Q4", "separability", diff_norm(vcompose(m, dagger(m)), idq), tol.bound());
    return rep;
}

Report check_bimodule(const Bimodule& bm, const Tolerance& tol) {
    const Presentation& p = *bm.pres;
    check_bimodule_shapes(bm);
    Report rep;
    const TwoCell& lam = bm.lam;
    const TwoCell& rho = bm.rho;
    const TwoCell mp = bm.left.m;
    const TwoCell mq = bm.right.m;
    TwoCell idx = id2(bm.cell);
    TwoCell idp = id2(bm.left.cell);
    TwoCell idq = id2(bm.right.cell);
    TwoCell a_ppx = associator(p, bm.left.cell, bm.left.cell, bm.cell);
    TwoCell a_pxq = associator(p, bm.left.cell, bm.cell, bm.right.cell);
    TwoCell a_xqq = associator(p, bm.cell, bm.right.cell, bm.right.cell);

    // (B1)  left/right associativity and commuting actions
    double b1 = diff_norm(vcompose({lam, tensor_2cells(p, idp, lam), a_ppx}),
                          vcompose(lam, tensor_2cells(p, mp, idx)));
    b1 = std::max(b1, diff_norm(vcompose(rho, tensor_2cells(p, rho, idq)),
                                vcompose({rho, tensor_2cells(p, idx, mq), a_xqq})));
    b1 = std::max(b1, diff_norm(vcompose({lam, tensor_2cells(p, idp, rho), a_pxq}),
                                vcompose(rho, tensor_2cells(p, lam, idq))));
    rep.add("B1", "associativity", b1, tol.bound());

    // (B2)  unit actions reduce to ambient unitors
    double b2 = std::max(
        diff_norm(vcompose(lam, tensor_2cells(p, bm.left.i, idx)), unitor_l(p, bm.cell)),
        diff_norm(vcompose(rho, tensor_2cells(p, idx, bm.right.i)), unitor_r(p, bm.cell)));
    rep.add("B2", "unitality", b2, tol.bound());

    // (B3)  Frobenius for both actions
    TwoCell mid_l = vcompose(dagger(lam), lam);
    double b3 = diff_norm(
        vcompose({tensor_2cells(p, mp, idx), dagger(a_ppx), tensor_2cells(p, idp, dagger(lam))}),
        mid_l);
    b3 = std::max(b3, diff_norm(vcompose({tensor_2cells(p, idp, lam), a_ppx,
                                          tensor_2cells(p, dagger(mp), idx)}),
                                mid_l));
    TwoCell mid_r = vcompose(dagger(rho), rho);
    b3 = std::max(b3, diff_norm(vcompose({tensor_2cells(p, idx, mq), a_xqq,
                                          tensor_2cells(p, dagger(rho), idq)}),
                                mid_r));
    b3 = std::max(b3, diff_norm(vcompose({tensor_2cells(p, rho, idq), dagger(a_xqq),
                                          tensor_2cells(p, idx, dagger(mq))}),
                                mid_r));
    rep.add("B3", "frobenius", b3, tol.bound());

    // (B4)  lam lam* = id = rho rho*
    double b4 = std::max(diff_norm(vcompose(lam, dagger(lam)), idx),
                         diff_norm(vcompose(rho, dagger(rho)), idx));
    rep.add("B4", "separability", b4, tol.bound());
    return rep;
}

Report check_intertwiner(const TwoCell& f, const Bimodule& m, const Bimodule& n,
                         const Tolerance& tol) {
    const Presentation& p = *m.pres;
    require(m.left == n.left && m.right == n.right, "intertwiner: Q-systems disagree");
    require(f.dom == m.cell && f.cod == n.cell, "intertwiner: dom/cod mismatch");
    Report rep;
    rep.add("left-equivariance", "equivariance",
            diff_norm(vcompose(f, m.lam), vcompose(n.lam, tensor_2cells(p, id2(m.left.cell), f))),
            tol.bound());
    rep.add("right-equivariance", "equivariance",
            diff_norm(vcompose(f, m.rho), vcompose(n.rho, tensor_2cells(p, f, id2(m.right.cell)))),
            tol.bound());
    return rep;
}

Bimodule q_as_bimodule(const QSystem& q) {
    Bimodule b;
    b.pres = q.pres;
    b.left = q;
    b.right = q;
    b.cell = q.cell;
    b.lam = q.m;
    b.rho = q.m;
    return b;
}

Bimodule trivial_bimodule(const Presentation& p, const OneCell& x) {
    Bimodule b;
    b.pres = &p;
    b.left = trivial_qsystem(p, x.src);
    b.right = trivial_qsystem(p, x.tgt);
    b.cell = x;
    b.lam = unitor_l(p, x);
    b.rho = unitor_r(p, x);
    return b;
}

TwoCell sep_projector(const Bimodule& m, const Bimodule& n) {
    require(m.right == n.left, "sep_projector: middle Q-systems disagree");
    const Presentation& p = *m.pres;
    TwoCell step1 = tensor_2cells(p, dagger(m.rho), id2(n.cell));      // X(x)Y => (X(x)Q)(x)Y
    TwoCell step2 = associator(p, m.cell, m.right.cell, n.cell);       // => X(x)(Q(x)Y)
    TwoCell step3 = tensor_2cells(p, id2(m.cell), n.lam);              // => X(x)Y
    return vcompose({step3, step2, step1});
}

RelTensor rel_tensor(const Bimodule& m, const Bimodule& n, const Tolerance& tol) {
    const Presentation& p = *m.pres;
    TwoCell proj = sep_projector(m, n);
    auto [z, u] = split_idempotent(p, proj, tol);

    RelTensor rt;
    rt.u = u;
    rt.result.pres = m.pres;
    rt.result.left = m.left;
    rt.result.right = n.right;
    rt.result.cell = z;

    TwoCell udag = dagger(u);
    rt.result.lam = vcompose({u, tensor_2cells(p, m.lam, id2(n.cell)),
                              dagger(associator(p, m.left.cell, m.cell, n.cell)),
                              tensor_2cells(p, id2(m.left.cell), udag)});
    rt.result.rho = vcompose({u, tensor_2cells(p, id2(m.cell), n.rho),
                              associator(p, m.cell, n.cell, n.right.cell),
                              tensor_2cells(p, udag, id2(n.right.cell))});
    return rt;
}

TwoCell unitor_left(const Bimodule& m, const Tolerance& tol) {
    RelTensor rt = rel_tensor(q_as_bimodule(m.left), m, tol);
    return vcompose(m.lam, dagger(rt.u));
}

TwoCell unitor_right(const Bimodule& m, const Tolerance& tol) {
    RelTensor rt = rel_tensor(m, q_as_bimodule(m.right), tol);
    return vcompose(m.rho, dagger(rt.u));
}

TwoCell qsys_associator(const Bimodule& l, const Bimodule& m, const Bimodule& n,
                        const Tolerance& tol) {
    require(l.right == m.left && m.right == n.left, "qsys_associator: bimodules not composable");
    const Presentation& p = *l.pres;
    RelTensor lm = rel_tensor(l, m, tol);
    RelTensor mn = rel_tensor(m, n, tol);
    RelTensor lm_n = rel_tensor(lm.result, n, tol);
    RelTensor l_mn = rel_tensor(l, mn.result, tol);
    return vcompose({l_mn.u, tensor_2cells(p, id2(l.cell), mn.u), associator(p, l.cell, m.cell, n.cell),
                     tensor_2cells(p, dagger(lm.u), id2(n.cell)), dagger(lm_n.u)});
}

std::vector<TwoCell> intertwiner_space(const Bimodule& m, const Bimodule& n) {
    require(m.left == n.left && m.right == n.right, "intertwiner_space: Q-systems disagree");
    const Presentation& p = *m.pres;
    const OneCell& x = m.cell;
    const OneCell& y = n.cell;
    int ns = p.num_simples();

    // Flatten unknown f (blockwise, row-major) into a coordinate vector.
    std::vector<int> offset(ns + 1, 0);
    for (int s = 0; s < ns; ++s) offset[s + 1] = offset[s] + y.mult[s] * x.mult[s];
    int dim = offset[ns];
    if (dim == 0) return {};

    auto unflatten = [&](const std::vector<Cx>& v) {
        TwoCell f = zero2(x, y);
        for (int s = 0; s < ns; ++s)
            for (int r = 0; r < y.mult[s]; ++r)
                for (int c = 0; c < x.mult[s]; ++c)
                    f.blocks[s].at(r, c) = v[offset[s] + r * x.mult[s] + c];
        return f;
    };

    TwoCell idp = id2(m.left.cell);
    TwoCell idq = id2(m.right.cell);
    auto defect = [&](const TwoCell& f) {
        TwoCell dl = vcompose(f, m.lam) - vcompose(n.lam, tensor_2cells(p, idp, f));
        TwoCell dr = vcompose(f, m.rho) - vcompose(n.rho, tensor_2cells(p, f, idq));
        std::vector<Cx> out;
        for (const CMat& b : dl.blocks) out.insert(out.end(), b.data.begin(), b.data.end());
        for (const CMat& b : dr.blocks) out.insert(out.end(), b.data.begin(), b.data.end());
        return out;
    };

    std::vector<Cx> probe(dim, Cx(0, 0));
    std::vector<Cx> first = defect(unflatten(probe));
    int rows = static_cast<int>(first.size());
    CMat system(rows, dim);
    for (int k = 0; k < dim; ++k) {
        probe.assign(dim, Cx(0, 0));
        probe[k] = 1.0;
        std::vector<Cx> col = defect(unflatten(probe));
        for (int r = 0; r < rows; ++r) system.at(r, k) = col[r];
    }

    std::vector<TwoCell> basis;
    for (const auto& v : kernel_basis(system, 1e-7)) basis.push_back(unflatten(v));
    return basis;
}

Condensation condensation_from_qsystem(const QSystem& q, const Tolerance& tol) {
    const Presentation& p = *q.pres;
    QSystem triv = trivial_qsystem(p, q.base);

    Condensation c;
    c.x.pres = q.pres;
    c.x.left = triv;
    c.x.right = q;
    c.x.cell = q.cell;
    c.x.lam = unitor_l(p, q.cell);
    c.x.rho = q.m;

    c.x_bullet.pres = q.pres;
    c.x_bullet.left = q;
    c.x_bullet.right = triv;
    c.x_bullet.cell = q.cell;
    c.x_bullet.lam = q.m;
    c.x_bullet.rho = unitor_r(p, q.cell);

    RelTensor rt = rel_tensor(c.x_bullet, c.x, tol);
    c.x_bullet_x = rt.result;
    c.eps = vcompose(q.m, dagger(rt.u));
    c.delta = dagger(c.eps);
    return c;
}

Report check_condensation(const Condensation& c, const Tolerance& tol) {
    Report rep;
    Bimodule unit_bim = q_as_bimodule(c.x.right);
    rep.add("eps-delta", "condensation-identity",
            diff_norm(vcompose(c.eps, c.delta), id2(unit_bim.cell)), tol.bound());
    rep.add("delta-is-eps-dagger", "dagger-condensation", diff_norm(c.delta, dagger(c.eps)), 0.0);
    rep.merge(check_intertwiner(c.eps, c.x_bullet_x, unit_bim, tol), "eps-");
    return rep;
}

}  // namespace qsys
