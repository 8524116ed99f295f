#include "qsys/functor.hpp"

namespace qsys {

namespace {

// Basis of the image of a formal sum at target simple t: tuples (s, a, c)
// with a < x.mult[s], c < cell_map[s].mult[t], lexicographic.
struct SumBasis {
    struct Elem {
        int s, a, c;
    };
    std::vector<Elem> elems;
    int index(int s, int a, int c) const {
        for (size_t n = 0; n < elems.size(); ++n)
            if (elems[n].s == s && elems[n].a == a && elems[n].c == c) return static_cast<int>(n);
        return -1;
    }
};

SumBasis sum_basis(const DagFunctor& f, const OneCell& x, int t) {
    SumBasis sb;
    for (int s = 0; s < static_cast<int>(x.mult.size()); ++s)
        for (int a = 0; a < x.mult[s]; ++a)
            for (int c = 0; c < f.cell_map[s].mult[t]; ++c) sb.elems.push_back({s, a, c});
    return sb;
}

}  // namespace

OneCell DagFunctor::map_cell(const OneCell& x) const {
    OneCell r;
    r.src = obj_map[x.src];
    r.tgt = obj_map[x.tgt];
    r.mult.assign(tgt->num_simples(), 0);
    for (int s = 0; s < src->num_simples(); ++s)
        for (int t = 0; t < tgt->num_simples(); ++t) r.mult[t] += x.mult[s] * cell_map[s].mult[t];
    return r;
}

TwoCell DagFunctor::map_two(const TwoCell& f) const {
    TwoCell r;
    r.dom = map_cell(f.dom);
    r.cod = map_cell(f.cod);
    for (int t = 0; t < tgt->num_simples(); ++t) {
        SumBasis db = sum_basis(*this, f.dom, t);
        SumBasis cb = sum_basis(*this, f.cod, t);
        CMat blk(static_cast<int>(cb.elems.size()), static_cast<int>(db.elems.size()));
        for (size_t col = 0; col < db.elems.size(); ++col) {
            const auto& d = db.elems[col];
            for (size_t row = 0; row < cb.elems.size(); ++row) {
                const auto& c = cb.elems[row];
                if (c.s != d.s || c.c != d.c) continue;
                blk.at(static_cast<int>(row), static_cast<int>(col)) = f.blocks[d.s].at(c.a, d.a);
            }
        }
        r.blocks.push_back(std::move(blk));
    }
    return r;
}

TwoCell DagFunctor::f2_general(const OneCell& x, const OneCell& y) const {
    const Presentation& sp = *src;
    const Presentation& tp = *tgt;
    OneCell fx = map_cell(x), fy = map_cell(y);
    OneCell xy = tensor_1cells(sp, x, y);

    TwoCell r;
    r.dom = tensor_1cells(tp, fx, fy);
    r.cod = map_cell(xy);

    // Copy decoders for xy: copy p of simple k in x (x) y is pair_basis(x,y,k).elems[p].
    std::vector<PairBasis> xy_bases(sp.num_simples());
    for (int k = 0; k < sp.num_simples(); ++k) xy_bases[k] = pair_basis(sp, x, y, k);

    for (int t = 0; t < tp.num_simples(); ++t) {
        PairBasis dom_b = pair_basis(tp, fx, fy, t);
        SumBasis cod_b = sum_basis(*this, xy, t);
        CMat blk(static_cast<int>(cod_b.elems.size()), static_cast<int>(dom_b.elems.size()));

        // Decoders for the domain copies: copy p of t1 in F(x) is (i, a, cx).
        std::vector<SumBasis> fx_bases(tp.num_simples()), fy_bases(tp.num_simples());
        for (int tt = 0; tt < tp.num_simples(); ++tt) {
            fx_bases[tt] = sum_basis(*this, x, tt);
            fy_bases[tt] = sum_basis(*this, y, tt);
        }

        for (size_t col = 0; col < dom_b.elems.size(); ++col) {
            const PairBasis::Elem& d = dom_b.elems[col];
            const SumBasis::Elem& dx = fx_bases[d.i].elems[d.a];
            const SumBasis::Elem& dy = fy_bases[d.j].elems[d.b];
            int i = dx.s, a = dx.a, j = dy.s, b = dy.a;
            auto it = f2.find({i, j});
            if (it == f2.end()) throw StructuralError("functor: missing F2 entry");
            const TwoCell& fij = it->second;
            // column index inside f2_{i,j} at t
            OneCell fi = cell_map[i], fj = cell_map[j];
            int inner_col = pair_basis(tp, fi, fj, t).index(d.i, dx.c, d.j, dy.c, d.mu);
            // rows of f2_{i,j} at t follow sum_basis(i (x) j, t) = (k, nu, c)
            OneCell ij = tensor_1cells(sp, simple_cell(sp, i), simple_cell(sp, j));
            SumBasis inner_rows = sum_basis(*this, ij, t);
            for (size_t row = 0; row < cod_b.elems.size(); ++row) {
                const SumBasis::Elem& c = cod_b.elems[row];
                // c.s = k, c.a = copy of k in x (x) y, c.c = target copy
                const PairBasis::Elem& pe = xy_bases[c.s].elems[c.a];
                if (pe.i != i || pe.a != a || pe.j != j || pe.b != b) continue;
                int inner_row = inner_rows.index(c.s, pe.mu, c.c);
                blk.at(static_cast<int>(row), static_cast<int>(col)) =
                    fij.blocks[t].at(inner_row, inner_col);
            }
        }
        r.blocks.push_back(std::move(blk));
    }
    return r;
}

DagFunctor identity_functor(const Presentation& p) {
    DagFunctor f;
    f.src = &p;
    f.tgt = &p;
    for (int a = 0; a < p.num_objects(); ++a) f.obj_map.push_back(a);
    for (int s = 0; s < p.num_simples(); ++s) f.cell_map.push_back(simple_cell(p, s));
    for (int i = 0; i < p.num_simples(); ++i)
        for (int j = 0; j < p.num_simples(); ++j) {
            if (!p.composable(i, j)) continue;
            OneCell ij = tensor_1cells(p, simple_cell(p, i), simple_cell(p, j));
            f.f2[{i, j}] = id2(ij);
        }
    for (int a = 0; a < p.num_objects(); ++a) f.f1.push_back(id2(unit_cell(p, a)));
    return f;
}

DagFunctor compose_functors(const DagFunctor& g, const DagFunctor& f) {
    if (f.tgt != g.src) throw StructuralError("compose_functors: target/source presentations differ");
    DagFunctor r;
    r.src = f.src;
    r.tgt = g.tgt;
    for (int a = 0; a < f.src->num_objects(); ++a) r.obj_map.push_back(g.obj_map[f.obj_map[a]]);
    for (int s = 0; s < f.src->num_simples(); ++s) r.cell_map.push_back(g.map_cell(f.cell_map[s]));
    for (const auto& [key, fij] : f.f2)
        r.f2[key] = vcompose(g.map_two(fij), g.f2_general(f.cell_map[key.first], f.cell_map[key.second]));
    for (int a = 0; a < f.src->num_objects(); ++a)
        r.f1.push_back(vcompose(g.map_two(f.f1[a]), g.f1[f.obj_map[a]]));
    return r;
}

TwoCell Transformation::comp1_general(const OneCell& x) const {
    const Presentation& tp = *F.tgt;
    const OneCell& pa = comp0[x.src];
    const OneCell& pb = comp0[x.tgt];
    OneCell fx = F.map_cell(x), gx = G.map_cell(x);

    TwoCell r;
    r.dom = tensor_1cells(tp, fx, pb);
    r.cod = tensor_1cells(tp, pa, gx);
    for (int t = 0; t < tp.num_simples(); ++t) {
        PairBasis dom_b = pair_basis(tp, fx, pb, t);
        PairBasis cod_b = pair_basis(tp, pa, gx, t);
        CMat blk(static_cast<int>(cod_b.elems.size()), static_cast<int>(dom_b.elems.size()));

        std::vector<SumBasis> fx_dec(tp.num_simples()), gx_dec(tp.num_simples());
        for (int tt = 0; tt < tp.num_simples(); ++tt) {
            fx_dec[tt] = sum_basis(F, x, tt);
            gx_dec[tt] = sum_basis(G, x, tt);
        }

        for (size_t col = 0; col < dom_b.elems.size(); ++col) {
            const PairBasis::Elem& d = dom_b.elems[col];
            const SumBasis::Elem& dx = fx_dec[d.i].elems[d.a];  // (s, a, cF)
            auto it = comp1.find(dx.s);
            if (it == comp1.end()) throw StructuralError("transformation: missing component");
            const TwoCell& phis = it->second;
            int inner_col =
                pair_basis(tp, F.cell_map[dx.s], pb, t).index(d.i, dx.c, d.j, d.b, d.mu);
            PairBasis inner_rows = pair_basis(tp, pa, G.cell_map[dx.s], t);
            for (size_t row = 0; row < cod_b.elems.size(); ++row) {
                const PairBasis::Elem& c = cod_b.elems[row];
                const SumBasis::Elem& cy = gx_dec[c.j].elems[c.b];  // (s', a', cG)
                if (cy.s != dx.s || cy.a != dx.a) continue;
                int inner_row = inner_rows.index(c.i, c.a, c.j, cy.c, c.mu);
                blk.at(static_cast<int>(row), static_cast<int>(col)) =
                    phis.blocks[t].at(inner_row, inner_col);
            }
        }
        r.blocks.push_back(std::move(blk));
    }
    return r;
}

Transformation identity_transformation(const DagFunctor& f) {
    const Presentation& tp = *f.tgt;
    Transformation t;
    t.F = f;
    t.G = f;
    for (int a = 0; a < f.src->num_objects(); ++a) t.comp0.push_back(unit_cell(tp, f.obj_map[a]));
    for (int s = 0; s < f.src->num_simples(); ++s) {
        const OneCell& fx = f.cell_map[s];
        t.comp1[s] = vcompose(dagger(unitor_l(tp, fx)), unitor_r(tp, fx));
    }
    return t;
}

GFunctor<PresCalc, PresCalc> as_gfunctor(PresCalc& a, PresCalc& b, const DagFunctor& f) {
    GFunctor<PresCalc, PresCalc> g;
    g.src = &a;
    g.tgt = &b;
    g.obj = [&f](int o) { return f.obj_map[o]; };
    g.one = [&f](const OneCell& x) { return f.map_cell(x); };
    g.two = [&f](const TwoCell& c) { return f.map_two(c); };
    g.f2 = [&f](const OneCell& x, const OneCell& y) { return f.f2_general(x, y); };
    g.f1 = [&f](int o) { return f.f1[o]; };
    return g;
}

GTrans<PresCalc, PresCalc> as_gtrans(PresCalc& a, PresCalc& b, const Transformation& t) {
    GTrans<PresCalc, PresCalc> g;
    g.F = as_gfunctor(a, b, t.F);
    g.G = as_gfunctor(a, b, t.G);
    g.comp0 = [&t](int o) { return t.comp0[o]; };
    g.comp1 = [&t](const OneCell& x) { return t.comp1_general(x); };
    return g;
}

GMod<PresCalc, PresCalc> as_gmod(PresCalc& a, PresCalc& b, const Modification& m) {
    GMod<PresCalc, PresCalc> g;
    g.phi = as_gtrans(a, b, m.phi);
    g.psi = as_gtrans(a, b, m.psi);
    g.comp = [&m](int o) { return m.comp[o]; };
    return g;
}

namespace {

std::vector<OneCell> simple_gens(const Presentation& p) {
    std::vector<OneCell> gens;
    for (int s = 0; s < p.num_simples(); ++s) gens.push_back(simple_cell(p, s));
    return gens;
}

std::vector<std::string> simple_names(const Presentation& p) {
    std::vector<std::string> names;
    for (const auto& s : p.simples) names.push_back(s.id);
    return names;
}

std::vector<int> all_objects(const Presentation& p) {
    std::vector<int> objs;
    for (int a = 0; a < p.num_objects(); ++a) objs.push_back(a);
    return objs;
}

}  // namespace

Report check_functor(const DagFunctor& f, const Tolerance& tol) {
    PresCalc a(*f.src), b(*f.tgt);
    return check_functor(a, b, as_gfunctor(a, b, f), simple_gens(*f.src), all_objects(*f.src), tol,
                         simple_names(*f.src));
}

Report check_transformation(const Transformation& t, const Tolerance& tol, uint64_t sample_seed) {
    PresCalc a(*t.F.src), b(*t.F.tgt);
    const Presentation& sp = *t.F.src;

    // Naturality samples: random 2-cells between random small sums.
    std::vector<NaturalitySample<PresCalc, PresCalc>> samples;
    Rng rng(sample_seed);
    for (int rep = 0; rep < 4; ++rep) {
        int aobj = static_cast<int>(rng.uniform() * sp.num_objects());
        int bobj = static_cast<int>(rng.uniform() * sp.num_objects());
        OneCell dom = zero_cell(sp, aobj, bobj), cod = zero_cell(sp, aobj, bobj);
        for (int s = 0; s < sp.num_simples(); ++s) {
            if (sp.simples[s].src != aobj || sp.simples[s].tgt != bobj) continue;
            dom.mult[s] = static_cast<int>(rng.uniform() * 3);
            cod.mult[s] = static_cast<int>(rng.uniform() * 3);
        }
        if (dom.total() == 0 || cod.total() == 0) continue;
        TwoCell f = zero2(dom, cod);
        for (CMat& blk : f.blocks)
            for (Cx& z : blk.data) z = rng.cgaussian();
        samples.push_back({dom, cod, f});
    }
    return check_transformation(a, b, as_gtrans(a, b, t), simple_gens(sp), all_objects(sp), tol,
                                samples, simple_names(sp));
}

Report check_modification(const Modification& m, const Tolerance& tol) {
    PresCalc a(*m.phi.F.src), b(*m.phi.F.tgt);
    return check_modification(a, b, as_gmod(a, b, m), simple_gens(*m.phi.F.src), tol,
                              simple_names(*m.phi.F.src));
}

}  // namespace qsys
