#include "qsys/completion.hpp"

#include <algorithm>
#include <cmath>

namespace qsys {

Bimodule free_bimodule(const QSystem& p, const QSystem& q, const OneCell& z) {
    const Presentation& pres = *p.pres;
    if (z.src != p.base || z.tgt != q.base)
        throw ObjectMismatch("free_bimodule: cell endpoints do not match the Q-system bases");
    OneCell pz = tensor_1cells(pres, p.cell, z);
    Bimodule b;
    b.pres = &pres;
    b.left = p;
    b.right = q;
    b.cell = tensor_1cells(pres, pz, q.cell);
    TwoCell a_outer = associator(pres, p.cell, pz, q.cell);
    TwoCell a_inner = associator(pres, p.cell, p.cell, z);
    b.lam = vcompose({tensor_2cells(pres, tensor_2cells(pres, p.m, id2(z)), id2(q.cell)),
                      tensor_2cells(pres, dagger(a_inner), id2(q.cell)), dagger(a_outer)});
    TwoCell a_right = associator(pres, pz, q.cell, q.cell);
    b.rho = vcompose(tensor_2cells(pres, id2(pz), q.m), a_right);
    return b;
}

namespace {

// Sub-bimodule cut out by an equivariant projection.
Bimodule split_sub_bimodule(const Bimodule& w, const TwoCell& proj, const Tolerance& tol) {
    const Presentation& pres = *w.pres;
    auto [zcell, u] = split_idempotent(pres, proj, tol);
    Bimodule b;
    b.pres = w.pres;
    b.left = w.left;
    b.right = w.right;
    b.cell = zcell;
    b.lam = vcompose({u, w.lam, tensor_2cells(pres, id2(w.left.cell), dagger(u))});
    b.rho = vcompose({u, w.rho, tensor_2cells(pres, dagger(u), id2(w.right.cell))});
    return b;
}

int hom_dim(const Bimodule& a, const Bimodule& b) {
    return static_cast<int>(intertwiner_space(a, b).size());
}

}  // namespace

std::vector<TwoCell> isometry_basis(const Bimodule& u, const Bimodule& m) {
    std::vector<TwoCell> raw = intertwiner_space(u, m);
    int d = static_cast<int>(raw.size());
    if (d == 0) return raw;
    int udim = u.cell.total();

    // Gram matrix of Schur scalars: w_i* w_j = G[i][j] id_U.
    CMat g(d, d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            TwoCell e = vcompose(dagger(raw[i]), raw[j]);
            Cx tr(0, 0);
            for (const CMat& blk : e.blocks)
                for (int r = 0; r < blk.rows && r < blk.cols; ++r) tr += blk.at(r, r);
            g.at(i, j) = tr / static_cast<double>(udim);
        }
    // G^{-1/2} via the spectral decomposition.
    std::vector<double> values;
    CMat vecs;
    hermitian_eig(g, values, vecs);
    CMat ginv(d, d);
    for (int k = 0; k < d; ++k) {
        if (values[k] <= 1e-12) throw LinalgError("isometry_basis: degenerate Gram matrix");
        double s = 1.0 / std::sqrt(values[k]);
        for (int r = 0; r < d; ++r)
            for (int c = 0; c < d; ++c)
                ginv.at(r, c) += s * vecs.at(r, k) * std::conj(vecs.at(c, k));
    }
    std::vector<TwoCell> out;
    for (int k = 0; k < d; ++k) {
        TwoCell w = zero2(raw[0].dom, raw[0].cod);
        for (int j = 0; j < d; ++j) w = w + (ginv.at(j, k) * raw[j]);
        out.push_back(std::move(w));
    }
    return out;
}

Cx schur_scalar(const TwoCell& f) {
    if (f.dom != f.cod) throw DomainMismatch("schur_scalar: not an endomorphism");
    int dim = f.dom.total();
    if (dim == 0) return Cx(0, 0);
    Cx tr(0, 0);
    for (const CMat& blk : f.blocks)
        for (int r = 0; r < blk.rows; ++r) tr += blk.at(r, r);
    return tr / static_cast<double>(dim);
}

std::vector<Bimodule> simple_bimodules(const QSystem& p, const QSystem& q, const Tolerance& tol,
                                       uint64_t seed) {
    const Presentation& pres = *p.pres;
    std::vector<Bimodule> reps;

    for (int z = 0; z < pres.num_simples(); ++z) {
        if (pres.simples[z].src != p.base || pres.simples[z].tgt != q.base) continue;
        Bimodule w = free_bimodule(p, q, simple_cell(pres, z));
        if (w.cell.total() == 0) continue;
        std::vector<TwoCell> endo = intertwiner_space(w, w);
        int d = static_cast<int>(endo.size());
        if (d == 0) continue;

        std::vector<Bimodule> found;
        bool ok = false;
        for (uint64_t attempt = 0; attempt < 8 && !ok; ++attempt) {
            found.clear();
            Rng rng(seed + 1000003ull * static_cast<uint64_t>(z) + attempt);
            TwoCell h = zero2(w.cell, w.cell);
            for (int k = 0; k < d; ++k) h = h + (rng.cgaussian() * endo[k]);
            h = Cx(0.5, 0) * (h + dagger(h));

            // Joint spectrum across the blocks; cluster identical eigenvalues.
            struct BlockEig {
                std::vector<double> values;
                CMat vectors;
            };
            std::vector<BlockEig> eigs(pres.num_simples());
            std::vector<double> all;
            for (int s = 0; s < pres.num_simples(); ++s) {
                if (w.cell.mult[s] == 0) continue;
                hermitian_eig(h.blocks[s], eigs[s].values, eigs[s].vectors);
                all.insert(all.end(), eigs[s].values.begin(), eigs[s].values.end());
            }
            std::sort(all.begin(), all.end());
            std::vector<double> centers;
            bool degenerate = false;
            for (double v : all) {
                if (!centers.empty() && std::abs(v - centers.back()) <= 1e-9) continue;
                if (!centers.empty() && std::abs(v - centers.back()) < 1e-6) {
                    degenerate = true;  // distinct but too close to separate safely
                    break;
                }
                centers.push_back(v);
            }
            if (degenerate) continue;

            ok = true;
            for (double c : centers) {
                TwoCell proj = zero2(w.cell, w.cell);
                for (int s = 0; s < pres.num_simples(); ++s) {
                    int n = w.cell.mult[s];
                    for (int k = 0; k < n; ++k) {
                        if (std::abs(eigs[s].values[k] - c) > 1e-9) continue;
                        for (int r = 0; r < n; ++r)
                            for (int cc = 0; cc < n; ++cc)
                                proj.blocks[s].at(r, cc) +=
                                    eigs[s].vectors.at(r, k) * std::conj(eigs[s].vectors.at(cc, k));
                    }
                }
                found.push_back(split_sub_bimodule(w, proj, tol));
            }
        }
        if (!ok)
            throw DegenerateSpectrum("simple_bimodules: persistent eigenvalue collision at simple " +
                                     pres.simples[z].id);

        for (Bimodule& cand : found) {
            if (cand.cell.total() == 0) continue;
            bool known = false;
            for (const Bimodule& rep : reps)
                if (hom_dim(rep, cand) > 0) {
                    known = true;
                    break;
                }
            if (!known) reps.push_back(std::move(cand));
        }
    }

    // Canonical representatives: the identity bimodule class uses Q itself.
    if (p == q) {
        Bimodule unit = q_as_bimodule(p);
        if (hom_dim(unit, unit) != 1)
            throw StructuralError("completion requires connected Q-systems (End of the identity "
                                  "bimodule must be one-dimensional)");
        for (Bimodule& rep : reps)
            if (hom_dim(rep, unit) > 0) rep = unit;
    }
    // Bimodules over trivial Q-systems: prefer ambient simples as carriers.
    {
        QSystem ta = trivial_qsystem(pres, p.base);
        QSystem tb = trivial_qsystem(pres, q.base);
        if (p == ta && q == tb) {
            for (Bimodule& rep : reps)
                for (int s = 0; s < pres.num_simples(); ++s) {
                    if (pres.simples[s].src != p.base || pres.simples[s].tgt != q.base) continue;
                    Bimodule amb = trivial_bimodule(pres, simple_cell(pres, s));
                    if (hom_dim(rep, amb) > 0) {
                        rep = amb;
                        break;
                    }
                }
        }
    }
    return reps;
}

int CompletionContext::simple_of_bimodule(const Bimodule& b) const {
    for (size_t s = 0; s < simples.size(); ++s)
        if (simples[s] == b) return static_cast<int>(s);
    return -1;
}

int CompletionContext::class_of_bimodule(const Bimodule& b) const {
    for (size_t s = 0; s < simples.size(); ++s) {
        if (!(simples[s].left == b.left) || !(simples[s].right == b.right)) continue;
        if (hom_dim(simples[s], b) > 0) return static_cast<int>(s);
    }
    return -1;
}

CompletionContext complete(const Presentation& base, const std::vector<QSystem>& qsystems,
                           const std::vector<std::string>& names, const Tolerance& tol,
                           uint64_t seed) {
    if (qsystems.empty()) throw StructuralError("complete: empty Q-system list");
    for (const QSystem& q : qsystems)
        if (q.pres != &base) throw StructuralError("complete: Q-system over a different presentation");
    if (names.size() != qsystems.size())
        throw StructuralError("complete: names must match the Q-system list");

    CompletionContext ctx;
    ctx.base = &base;
    ctx.tol = tol;
    ctx.objects = qsystems;
    Presentation& out = ctx.completed;
    out.name = base.name + ".qsys";
    out.objects = names;

    int nobj = static_cast<int>(qsystems.size());
    std::vector<std::vector<int>> simple_ids(nobj, std::vector<int>(nobj));
    for (int a = 0; a < nobj; ++a)
        for (int b = 0; b < nobj; ++b) {
            uint64_t pair_seed = seed + 7919ull * static_cast<uint64_t>(a * nobj + b);
            std::vector<Bimodule> sims = simple_bimodules(qsystems[a], qsystems[b], tol, pair_seed);
            for (size_t k = 0; k < sims.size(); ++k) {
                out.simples.push_back(
                    {names[a] + "." + names[b] + "." + std::to_string(k), a, b});
                ctx.simples.push_back(sims[k]);
            }
        }
    int ns = static_cast<int>(ctx.simples.size());

    // Units: the class of Q as a bimodule over itself (canonicalized above to
    // be Q itself, so data equality finds it).
    out.unit.assign(nobj, -1);
    for (int a = 0; a < nobj; ++a) {
        int u = ctx.simple_of_bimodule(q_as_bimodule(qsystems[a]));
        if (u < 0)
            throw StructuralError("complete: identity bimodule class missing for object " + names[a]);
        out.unit[a] = u;
    }

    // Fusion multiplicities and the chosen fusion isometries.
    out.fusion.assign(ns, std::vector<std::vector<int>>(ns, std::vector<int>(ns, 0)));
    for (int s = 0; s < ns; ++s)
        for (int t = 0; t < ns; ++t) {
            if (out.simples[s].tgt != out.simples[t].src) continue;
            CompletionContext::PairData pd;
            pd.rel = rel_tensor(ctx.simples[s], ctx.simples[t], tol);
            pd.bases.resize(ns);
            for (int u = 0; u < ns; ++u) {
                if (out.simples[u].src != out.simples[s].src ||
                    out.simples[u].tgt != out.simples[t].tgt)
                    continue;
                pd.bases[u] = isometry_basis(ctx.simples[u], pd.rel.result);
                out.fusion[s][t][u] = static_cast<int>(pd.bases[u].size());
            }
            ctx.pairs[{s, t}] = std::move(pd);
        }

    // Unitor phases: scalar of (relative unitor) * (chosen fusion isometry).
    out.lunit.assign(ns, Cx(1, 0));
    out.runit.assign(ns, Cx(1, 0));
    for (int s = 0; s < ns; ++s) {
        int ua = out.unit[out.simples[s].src];
        int ub = out.unit[out.simples[s].tgt];
        {
            const auto& pd = ctx.pairs.at({ua, s});
            if (pd.bases[s].size() != 1)
                throw StructuralError("complete: unit fusion is not a delta at " + out.simples[s].id);
            TwoCell lam = vcompose(ctx.simples[s].lam, dagger(pd.rel.u));
            out.lunit[s] = schur_scalar(vcompose(lam, pd.bases[s][0]));
        }
        {
            const auto& pd = ctx.pairs.at({s, ub});
            if (pd.bases[s].size() != 1)
                throw StructuralError("complete: unit fusion is not a delta at " + out.simples[s].id);
            TwoCell rho = vcompose(ctx.simples[s].rho, dagger(pd.rel.u));
            out.runit[s] = schur_scalar(vcompose(rho, pd.bases[s][0]));
        }
    }

    // F tensors: the relative-tensor associator expressed in the chosen
    // fusion bases. Columns run over the left tree (K, mu, nu), rows over the
    // right tree (M, kappa, xi).
    const Presentation& bp = base;
    for (int s = 0; s < ns; ++s)
        for (int t = 0; t < ns; ++t) {
            if (out.simples[s].tgt != out.simples[t].src) continue;
            for (int v = 0; v < ns; ++v) {
                if (out.simples[t].tgt != out.simples[v].src) continue;
                const auto& st = ctx.pairs.at({s, t});
                const auto& tv = ctx.pairs.at({t, v});
                RelTensor st_v = rel_tensor(st.rel.result, ctx.simples[v], tol);
                RelTensor s_tv = rel_tensor(ctx.simples[s], tv.rel.result, tol);
                TwoCell alpha = qsys_associator(ctx.simples[s], ctx.simples[t], ctx.simples[v], tol);

                for (int u = 0; u < ns; ++u) {
                    int ld = 0;
                    for (int k = 0; k < ns; ++k) ld += out.fusion[s][t][k] * out.fusion[k][v][u];
                    if (ld == 0) continue;

                    // Left-tree vectors: (w_mu (x)_rel id_V) * w_nu.
                    std::vector<TwoCell> left_vecs;
                    for (int k = 0; k < ns; ++k) {
                        if (out.fusion[s][t][k] == 0) continue;
                        const auto& kv = ctx.pairs.at({k, v});
                        for (int mu = 0; mu < out.fusion[s][t][k]; ++mu) {
                            TwoCell wide = vcompose(
                                {st_v.u,
                                 tensor_2cells(bp, st.bases[k][mu], id2(ctx.simples[v].cell)),
                                 dagger(kv.rel.u)});
                            for (int nu = 0; nu < out.fusion[k][v][u]; ++nu)
                                left_vecs.push_back(vcompose(wide, kv.bases[u][nu]));
                        }
                    }
                    // Right-tree vectors: (id_S (x)_rel w_kappa) * w_xi.
                    std::vector<TwoCell> right_vecs;
                    for (int m = 0; m < ns; ++m) {
                        if (out.fusion[t][v][m] == 0) continue;
                        const auto& sm = ctx.pairs.at({s, m});
                        for (int kappa = 0; kappa < out.fusion[t][v][m]; ++kappa) {
                            TwoCell wide = vcompose(
                                {s_tv.u,
                                 tensor_2cells(bp, id2(ctx.simples[s].cell), tv.bases[m][kappa]),
                                 dagger(sm.rel.u)});
                            for (int xi = 0; xi < out.fusion[s][m][u]; ++xi)
                                right_vecs.push_back(vcompose(wide, sm.bases[u][xi]));
                        }
                    }
                    CMat f(static_cast<int>(right_vecs.size()), static_cast<int>(left_vecs.size()));
                    for (size_t col = 0; col < left_vecs.size(); ++col) {
                        TwoCell moved = vcompose(alpha, left_vecs[col]);
                        for (size_t row = 0; row < right_vecs.size(); ++row)
                            f.at(static_cast<int>(row), static_cast<int>(col)) =
                                schur_scalar(vcompose(dagger(right_vecs[row]), moved));
                    }
                    out.assoc[{s, t, v, u}] = std::move(f);
                }
            }
        }

    out.check_structure();
    return ctx;
}

}  // namespace qsys
