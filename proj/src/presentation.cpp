#include "qsys/presentation.hpp"

#include <algorithm>
#include <numeric>

namespace qsys {

int Presentation::object_index(const std::string& id) const {
    for (int i = 0; i < num_objects(); ++i)
        if (objects[i] == id) return i;
    throw StructuralError("unknown object '" + id + "'");
}

int Presentation::simple_index(const std::string& id) const {
    for (int i = 0; i < num_simples(); ++i)
        if (simples[i].id == id) return i;
    throw StructuralError("unknown simple '" + id + "'");
}

int Presentation::left_tree_dim(int i, int j, int k, int l) const {
    int d = 0;
    for (int n = 0; n < num_simples(); ++n) d += fusion[i][j][n] * fusion[n][k][l];
    return d;
}

int Presentation::right_tree_dim(int i, int j, int k, int l) const {
    int d = 0;
    for (int m = 0; m < num_simples(); ++m) d += fusion[j][k][m] * fusion[i][m][l];
    return d;
}

const CMat& Presentation::f_matrix(int i, int j, int k, int l) const {
    auto it = assoc.find({i, j, k, l});
    if (it == assoc.end())
        throw StructuralError("missing F entry for (" + simples[i].id + "," + simples[j].id + "," +
                              simples[k].id + ";" + simples[l].id + ")");
    return it->second;
}

void Presentation::check_structure() const {
    if (objects.empty()) throw StructuralError("presentation has no objects");
    if (simples.empty()) throw StructuralError("presentation has no simples");
    int ns = num_simples();
    if (static_cast<int>(unit.size()) != num_objects())
        throw StructuralError("unit map must cover every object");
    for (int a = 0; a < num_objects(); ++a) {
        int e = unit[a];
        if (e < 0 || e >= ns || simples[e].src != a || simples[e].tgt != a)
            throw StructuralError("unit of object '" + objects[a] + "' is not an endo-simple");
    }
    if (static_cast<int>(fusion.size()) != ns)
        throw StructuralError("fusion table has wrong shape");
    for (int i = 0; i < ns; ++i) {
        if (static_cast<int>(fusion[i].size()) != ns) throw StructuralError("fusion table has wrong shape");
        for (int j = 0; j < ns; ++j) {
            if (static_cast<int>(fusion[i][j].size()) != ns)
                throw StructuralError("fusion table has wrong shape");
            for (int k = 0; k < ns; ++k) {
                int n = fusion[i][j][k];
                if (n < 0) throw StructuralError("negative fusion multiplicity");
                if (n > 0) {
                    if (!composable(i, j))
                        throw StructuralError("fusion entry for non-composable pair (" +
                                              simples[i].id + "," + simples[j].id + ")");
                    if (simples[k].src != simples[i].src || simples[k].tgt != simples[j].tgt)
                        throw StructuralError("fusion target has wrong endpoints");
                }
            }
        }
    }
    if (static_cast<int>(lunit.size()) != ns || static_cast<int>(runit.size()) != ns)
        throw StructuralError("unitor data must cover every simple");
    // Fusion associativity at the multiplicity level, and F entry shapes.
    for (int i = 0; i < ns; ++i)
        for (int j = 0; j < ns; ++j) {
            if (!composable(i, j)) continue;
            for (int k = 0; k < ns; ++k) {
                if (!composable(j, k)) continue;
                for (int l = 0; l < ns; ++l) {
                    int ld = left_tree_dim(i, j, k, l);
                    int rd = right_tree_dim(i, j, k, l);
                    if (ld != rd)
                        throw StructuralError("fusion table is not associative at (" + simples[i].id +
                                              "," + simples[j].id + "," + simples[k].id + ";" +
                                              simples[l].id + ")");
                    if (ld == 0) continue;
                    const CMat& f = f_matrix(i, j, k, l);
                    if (f.rows != rd || f.cols != ld)
                        throw StructuralError("F entry has wrong shape at (" + simples[i].id + "," +
                                              simples[j].id + "," + simples[k].id + ";" +
                                              simples[l].id + ")");
                }
            }
        }
}

int OneCell::total() const { return std::accumulate(mult.begin(), mult.end(), 0); }

OneCell simple_cell(const Presentation& p, int s) {
    OneCell x;
    x.src = p.simples[s].src;
    x.tgt = p.simples[s].tgt;
    x.mult.assign(p.num_simples(), 0);
    x.mult[s] = 1;
    return x;
}

OneCell unit_cell(const Presentation& p, int a) { return simple_cell(p, p.unit[a]); }

OneCell zero_cell(const Presentation& p, int a, int b) {
    OneCell x;
    x.src = a;
    x.tgt = b;
    x.mult.assign(p.num_simples(), 0);
    return x;
}

TwoCell id2(const OneCell& x) {
    TwoCell f;
    f.dom = x;
    f.cod = x;
    f.blocks.reserve(x.mult.size());
    for (int m : x.mult) f.blocks.push_back(CMat::identity(m));
    return f;
}

TwoCell zero2(const OneCell& dom, const OneCell& cod) {
    if (dom.src != cod.src || dom.tgt != cod.tgt)
        throw DomainMismatch("zero2: dom/cod endpoints disagree");
    TwoCell f;
    f.dom = dom;
    f.cod = cod;
    for (size_t s = 0; s < dom.mult.size(); ++s) f.blocks.push_back(CMat(cod.mult[s], dom.mult[s]));
    return f;
}

TwoCell dagger(const TwoCell& f) {
    TwoCell r;
    r.dom = f.cod;
    r.cod = f.dom;
    for (const CMat& b : f.blocks) r.blocks.push_back(adjoint(b));
    return r;
}

TwoCell dsum(const TwoCell& f, const TwoCell& g) {
    if (f.dom.src != g.dom.src || f.dom.tgt != g.dom.tgt)
        throw DomainMismatch("dsum: endpoints disagree");
    TwoCell r;
    r.dom.src = f.dom.src;
    r.dom.tgt = f.dom.tgt;
    r.cod = r.dom;
    size_t ns = f.blocks.size();
    for (size_t s = 0; s < ns; ++s) {
        int dr = f.cod.mult[s] + g.cod.mult[s];
        int dc = f.dom.mult[s] + g.dom.mult[s];
        CMat b(dr, dc);
        for (int i = 0; i < f.cod.mult[s]; ++i)
            for (int j = 0; j < f.dom.mult[s]; ++j) b.at(i, j) = f.blocks[s].at(i, j);
        for (int i = 0; i < g.cod.mult[s]; ++i)
            for (int j = 0; j < g.dom.mult[s]; ++j)
                b.at(f.cod.mult[s] + i, f.dom.mult[s] + j) = g.blocks[s].at(i, j);
        r.dom.mult.push_back(dc);
        r.cod.mult.push_back(dr);
        r.blocks.push_back(std::move(b));
    }
    return r;
}

TwoCell operator*(Cx s, const TwoCell& f) {
    TwoCell r = f;
    for (CMat& b : r.blocks) b = s * b;
    return r;
}

TwoCell operator+(const TwoCell& f, const TwoCell& g) {
    if (f.dom != g.dom || f.cod != g.cod) throw DomainMismatch("TwoCell+: shape mismatch");
    TwoCell r = f;
    for (size_t s = 0; s < r.blocks.size(); ++s) r.blocks[s] = r.blocks[s] + g.blocks[s];
    return r;
}

TwoCell operator-(const TwoCell& f, const TwoCell& g) { return f + (Cx(-1, 0) * g); }

TwoCell vcompose(const TwoCell& g, const TwoCell& f) {
    if (f.cod != g.dom) throw DomainMismatch("vcompose: cod(f) != dom(g)");
    TwoCell r;
    r.dom = f.dom;
    r.cod = g.cod;
    for (size_t s = 0; s < f.blocks.size(); ++s) r.blocks.push_back(g.blocks[s] * f.blocks[s]);
    return r;
}

TwoCell vcompose(std::initializer_list<TwoCell> top_to_bottom) {
    auto it = top_to_bottom.end();
    if (it == top_to_bottom.begin()) throw DomainMismatch("vcompose: empty chain");
    --it;
    TwoCell acc = *it;
    while (it != top_to_bottom.begin()) {
        --it;
        acc = vcompose(*it, acc);
    }
    return acc;
}

double max_abs(const TwoCell& f) {
    double v = 0.0;
    for (const CMat& b : f.blocks) v = std::max(v, max_abs(b));
    return v;
}

double diff_norm(const TwoCell& f, const TwoCell& g) {
    if (f.dom != g.dom || f.cod != g.cod) throw DomainMismatch("diff_norm: shape mismatch");
    double v = 0.0;
    for (size_t s = 0; s < f.blocks.size(); ++s) v = std::max(v, max_abs_diff(f.blocks[s], g.blocks[s]));
    return v;
}

bool is_zero_shape(const TwoCell& f) { return f.dom.total() == 0 || f.cod.total() == 0; }

int PairBasis::index(int i, int a, int j, int b, int mu) const {
    for (size_t n = 0; n < elems.size(); ++n) {
        const Elem& e = elems[n];
        if (e.i == i && e.a == a && e.j == j && e.b == b && e.mu == mu) return static_cast<int>(n);
    }
    return -1;
}

PairBasis pair_basis(const Presentation& p, const OneCell& x, const OneCell& y, int k) {
    PairBasis basis;
    int ns = p.num_simples();
    for (int i = 0; i < ns; ++i) {
        if (x.mult[i] == 0) continue;
        for (int a = 0; a < x.mult[i]; ++a)
            for (int j = 0; j < ns; ++j) {
                if (y.mult[j] == 0 || !p.composable(i, j)) continue;
                for (int b = 0; b < y.mult[j]; ++b)
                    for (int mu = 0; mu < p.fusion[i][j][k]; ++mu)
                        basis.elems.push_back({i, a, j, b, mu});
            }
    }
    return basis;
}

OneCell tensor_1cells(const Presentation& p, const OneCell& x, const OneCell& y) {
    if (x.tgt != y.src) throw ObjectMismatch("tensor_1cells: tgt(X) != src(Y)");
    OneCell r;
    r.src = x.src;
    r.tgt = y.tgt;
    int ns = p.num_simples();
    r.mult.assign(ns, 0);
    for (int k = 0; k < ns; ++k) {
        int m = 0;
        for (int i = 0; i < ns; ++i)
            for (int j = 0; j < ns; ++j)
                if (x.mult[i] && y.mult[j]) m += x.mult[i] * y.mult[j] * p.fusion[i][j][k];
        r.mult[k] = m;
    }
    return r;
}

TwoCell tensor_2cells(const Presentation& p, const TwoCell& f, const TwoCell& g) {
    if (f.dom.tgt != g.dom.src || f.cod.tgt != g.cod.src)
        throw ObjectMismatch("tensor_2cells: middle object mismatch");
    TwoCell r;
    r.dom = tensor_1cells(p, f.dom, g.dom);
    r.cod = tensor_1cells(p, f.cod, g.cod);
    int ns = p.num_simples();
    for (int k = 0; k < ns; ++k) {
        PairBasis dom_b = pair_basis(p, f.dom, g.dom, k);
        PairBasis cod_b = pair_basis(p, f.cod, g.cod, k);
        CMat block(static_cast<int>(cod_b.elems.size()), static_cast<int>(dom_b.elems.size()));
        for (size_t col = 0; col < dom_b.elems.size(); ++col) {
            const PairBasis::Elem& d = dom_b.elems[col];
            for (size_t row = 0; row < cod_b.elems.size(); ++row) {
                const PairBasis::Elem& c = cod_b.elems[row];
                if (c.i != d.i || c.j != d.j || c.mu != d.mu) continue;
                block.at(static_cast<int>(row), static_cast<int>(col)) =
                    f.blocks[d.i].at(c.a, d.a) * g.blocks[d.j].at(c.b, d.b);
            }
        }
        r.blocks.push_back(std::move(block));
    }
    return r;
}

namespace {

// Index of (n, gamma, delta) in the left-tree ordering of F[i,j,k;l].
int f_col_index(const Presentation& p, int i, int j, int k, int l, int n, int gamma, int delta) {
    int idx = 0;
    for (int nn = 0; nn < n; ++nn) idx += p.fusion[i][j][nn] * p.fusion[nn][k][l];
    return idx + gamma * p.fusion[n][k][l] + delta;
}

// Index of (m, alpha, beta) in the right-tree ordering of F[i,j,k;l].
int f_row_index(const Presentation& p, int i, int j, int k, int l, int m, int alpha, int beta) {
    int idx = 0;
    for (int mm = 0; mm < m; ++mm) idx += p.fusion[j][k][mm] * p.fusion[i][mm][l];
    return idx + alpha * p.fusion[i][m][l] + beta;
}

}  // namespace

TwoCell associator(const Presentation& p, const OneCell& x, const OneCell& y, const OneCell& z) {
    if (x.tgt != y.src || y.tgt != z.src) throw ObjectMismatch("associator: cells not composable");
    OneCell xy = tensor_1cells(p, x, y);
    OneCell yz = tensor_1cells(p, y, z);
    TwoCell r;
    r.dom = tensor_1cells(p, xy, z);
    r.cod = tensor_1cells(p, x, yz);
    int ns = p.num_simples();
    for (int l = 0; l < ns; ++l) {
        PairBasis dom_b = pair_basis(p, xy, z, l);   // ((k, pair-elem), (z-simple, c), nu)
        PairBasis cod_b = pair_basis(p, x, yz, l);   // ((i, a), (m, pair-elem), xi)
        // Copy index decoders for the nested factors.
        std::vector<PairBasis> xy_bases(ns), yz_bases(ns);
        for (int s = 0; s < ns; ++s) {
            xy_bases[s] = pair_basis(p, x, y, s);
            yz_bases[s] = pair_basis(p, y, z, s);
        }
        CMat block(static_cast<int>(cod_b.elems.size()), static_cast<int>(dom_b.elems.size()));
        for (size_t col = 0; col < dom_b.elems.size(); ++col) {
            const PairBasis::Elem& d = dom_b.elems[col];
            int k = d.i;                 // intermediate simple of X (x) Y
            const PairBasis::Elem& de = xy_bases[k].elems[d.a];
            int i = de.i, a = de.a, j = de.j, b = de.b, mu = de.mu;
            int zs = d.j, c = d.b, nu = d.mu;
            const CMat& f = p.f_matrix(i, j, zs, l);
            int fcol = f_col_index(p, i, j, zs, l, k, mu, nu);
            for (size_t row = 0; row < cod_b.elems.size(); ++row) {
                const PairBasis::Elem& ce = cod_b.elems[row];
                if (ce.i != i || ce.a != a) continue;
                int m = ce.j;
                const PairBasis::Elem& ye = yz_bases[m].elems[ce.b];
                if (ye.i != j || ye.a != b || ye.j != zs || ye.b != c) continue;
                int kappa = ye.mu, xi = ce.mu;
                int frow = f_row_index(p, i, j, zs, l, m, kappa, xi);
                block.at(static_cast<int>(row), static_cast<int>(col)) = f.at(frow, fcol);
            }
        }
        r.blocks.push_back(std::move(block));
    }
    return r;
}

TwoCell unitor_l(const Presentation& p, const OneCell& x) {
    OneCell e = unit_cell(p, x.src);
    TwoCell r;
    r.dom = tensor_1cells(p, e, x);
    r.cod = x;
    int ns = p.num_simples();
    for (int s = 0; s < ns; ++s) {
        PairBasis dom_b = pair_basis(p, e, x, s);
        CMat block(x.mult[s], static_cast<int>(dom_b.elems.size()));
        for (size_t col = 0; col < dom_b.elems.size(); ++col) {
            const PairBasis::Elem& d = dom_b.elems[col];
            // Unit fusion forces j == s and mu == 0.
            block.at(d.b, static_cast<int>(col)) = p.lunit[s];
        }
        r.blocks.push_back(std::move(block));
    }
    return r;
}

TwoCell unitor_r(const Presentation& p, const OneCell& x) {
    OneCell e = unit_cell(p, x.tgt);
    TwoCell r;
    r.dom = tensor_1cells(p, x, e);
    r.cod = x;
    int ns = p.num_simples();
    for (int s = 0; s < ns; ++s) {
        PairBasis dom_b = pair_basis(p, x, e, s);
        CMat block(x.mult[s], static_cast<int>(dom_b.elems.size()));
        for (size_t col = 0; col < dom_b.elems.size(); ++col) {
            const PairBasis::Elem& d = dom_b.elems[col];
            block.at(d.a, static_cast<int>(col)) = p.runit[s];
        }
        r.blocks.push_back(std::move(block));
    }
    return r;
}

std::pair<OneCell, TwoCell> split_idempotent(const Presentation& p, const TwoCell& proj,
                                             const Tolerance& tol) {
    if (proj.dom != proj.cod) throw DomainMismatch("split_idempotent: not an endomorphism");
    OneCell z = zero_cell(p, proj.dom.src, proj.dom.tgt);
    TwoCell u;
    u.dom = proj.dom;
    for (size_t s = 0; s < proj.blocks.size(); ++s) {
        CMat us = split_projection(proj.blocks[s], tol);
        z.mult[s] = us.rows;
        u.blocks.push_back(std::move(us));
    }
    u.cod = z;
    return {z, u};
}

OneCell fold_cells(const Presentation& p, const std::vector<OneCell>& cells) {
    if (cells.empty()) throw DomainMismatch("fold_cells: empty factor list");
    OneCell acc = cells[0];
    for (size_t i = 1; i < cells.size(); ++i) acc = tensor_1cells(p, acc, cells[i]);
    return acc;
}

TwoCell fold_group(const Presentation& p, const std::vector<OneCell>& cells, int k, int m) {
    int n = static_cast<int>(cells.size());
    if (k < 0 || m < 1 || k + m > n) throw DomainMismatch("fold_group: bad slice");
    if (m == 1 || k + m < n) {
        if (k + m < n) {
            // Group inside the prefix, then absorb the untouched tail; a left
            // fold takes the tail back on without further coherence.
            std::vector<OneCell> head(cells.begin(), cells.begin() + k + m);
            TwoCell acc = fold_group(p, head, k, m);
            for (int j = k + m; j < n; ++j) acc = tensor_2cells(p, acc, id2(cells[j]));
            return acc;
        }
        return id2(fold_cells(p, cells));
    }
    if (k == 0) return id2(fold_cells(p, cells));  // left folds group prefixes for free

    std::vector<OneCell> prefix_cells(cells.begin(), cells.begin() + k);
    OneCell prefix = fold_cells(p, prefix_cells);
    OneCell block = cells[k];
    TwoCell acc = id2(tensor_1cells(p, prefix, block));
    for (int j = k + 1; j < n; ++j) {
        acc = vcompose(associator(p, prefix, block, cells[j]), tensor_2cells(p, acc, id2(cells[j])));
        block = tensor_1cells(p, block, cells[j]);
    }
    return acc;
}

Chain::Chain(const Presentation& pres, std::vector<OneCell> initial)
    : p(&pres), cells(std::move(initial)), acc(id2(fold_cells(pres, cells))) {}

void Chain::apply(int k, int arity, const TwoCell& f, const std::vector<OneCell>& out) {
    int n = static_cast<int>(cells.size());
    if (k < 0 || arity < 1 || k + arity > n || out.empty())
        throw DomainMismatch("Chain::apply: bad slice");
    std::vector<OneCell> slice(cells.begin() + k, cells.begin() + k + arity);
    if (f.dom != fold_cells(*p, slice) || f.cod != fold_cells(*p, out))
        throw DomainMismatch("Chain::apply: 2-cell endpoints do not match the slice");

    TwoCell grp = fold_group(*p, cells, k, arity);

    std::vector<OneCell> next(cells.begin(), cells.begin() + k);
    next.insert(next.end(), out.begin(), out.end());
    next.insert(next.end(), cells.begin() + k + arity, cells.end());
    TwoCell ungrp = dagger(fold_group(*p, next, k, static_cast<int>(out.size())));

    TwoCell lifted = k == 0 ? f
                            : tensor_2cells(*p, id2(fold_cells(*p, std::vector<OneCell>(
                                                                      cells.begin(), cells.begin() + k))),
                                            f);
    for (int j = k + arity; j < n; ++j) lifted = tensor_2cells(*p, lifted, id2(cells[j]));

    acc = vcompose(ungrp, vcompose(lifted, vcompose(grp, acc)));
    cells = std::move(next);
}

Report validate(const Presentation& p, const Tolerance& tol) {
    p.check_structure();
    Report rep;
    int ns = p.num_simples();
    auto sid = [&](int s) { return p.simples[s].id; };

    // Unit fusion deltas (integer check; residual counts the violations).
    int unit_bad = 0;
    for (int j = 0; j < ns; ++j)
        for (int k = 0; k < ns; ++k) {
            int e_l = p.unit[p.simples[j].src];
            if (p.fusion[e_l][j][k] != (j == k ? 1 : 0)) ++unit_bad;
            int e_r = p.unit[p.simples[j].tgt];
            if (p.fusion[j][e_r][k] != (j == k ? 1 : 0)) ++unit_bad;
        }
    rep.add("unit-fusion", "unit-fusion-delta", static_cast<double>(unit_bad), 0.5);

    // Unitor phases must be unitary.
    double unitor_res = 0.0;
    for (int s = 0; s < ns; ++s) {
        unitor_res = std::max(unitor_res, std::abs(std::abs(p.lunit[s]) - 1.0));
        unitor_res = std::max(unitor_res, std::abs(std::abs(p.runit[s]) - 1.0));
    }
    rep.add("unitor-unitarity", "unitarity", unitor_res, tol.bound());

    // F unitarity.
    for (const auto& [key, f] : p.assoc) {
        if (f.rows == 0) continue;
        rep.add("f-unitarity/" + sid(key[0]) + "." + sid(key[1]) + "." + sid(key[2]) + ";" +
                    sid(key[3]),
                "unitarity", unitary_residual(f), tol.bound());
    }

    // Triangle: (id_i (x) lambda_j) * assoc(i, 1, j) = rho_i (x) id_j.
    for (int i = 0; i < ns; ++i)
        for (int j = 0; j < ns; ++j) {
            if (!p.composable(i, j)) continue;
            OneCell ci = simple_cell(p, i), cj = simple_cell(p, j);
            OneCell e = unit_cell(p, p.simples[i].tgt);
            TwoCell lhs = vcompose(tensor_2cells(p, id2(ci), unitor_l(p, cj)),
                                   associator(p, ci, e, cj));
            TwoCell rhs = tensor_2cells(p, unitor_r(p, ci), id2(cj));
            rep.add("triangle/" + sid(i) + "." + sid(j), "triangle", diff_norm(lhs, rhs),
                    tol.bound());
        }

    // Pentagon over all composable quadruples of simples.
    for (int i = 0; i < ns; ++i)
        for (int j = 0; j < ns; ++j) {
            if (!p.composable(i, j)) continue;
            for (int k = 0; k < ns; ++k) {
                if (!p.composable(j, k)) continue;
                for (int m = 0; m < ns; ++m) {
                    if (!p.composable(k, m)) continue;
                    OneCell ci = simple_cell(p, i), cj = simple_cell(p, j), ck = simple_cell(p, k),
                            cm = simple_cell(p, m);
                    OneCell cjk = tensor_1cells(p, cj, ck);
                    TwoCell lhs = vcompose(
                        {tensor_2cells(p, id2(ci), associator(p, cj, ck, cm)),
                         associator(p, ci, cjk, cm),
                         tensor_2cells(p, associator(p, ci, cj, ck), id2(cm))});
                    TwoCell rhs = vcompose(associator(p, ci, cj, tensor_1cells(p, ck, cm)),
                                           associator(p, tensor_1cells(p, ci, cj), ck, cm));
                    rep.add("pentagon/" + sid(i) + "." + sid(j) + "." + sid(k) + "." + sid(m),
                            "pentagon", diff_norm(lhs, rhs), tol.bound());
                }
            }
        }
    return rep;
}

}  // namespace qsys
