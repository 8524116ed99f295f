#include "doctest.h"

#include "qsys/completion.hpp"
#include "qsys/examples.hpp"

#include <map>

using namespace qsys;

namespace {
Tolerance tol;
}

TEST_CASE("free bimodules satisfy the action axioms") {
    Presentation p = examples::vec_zn(2);
    QSystem q = examples::z2_group_algebra(p);
    QSystem t = trivial_qsystem(p, 0);
    for (const QSystem& a : {t, q})
        for (const QSystem& b : {t, q})
            for (int z = 0; z < p.num_simples(); ++z) {
                Bimodule w = free_bimodule(a, b, simple_cell(p, z));
                CHECK(check_bimodule(w, tol).pass());
            }
}

TEST_CASE("simple bimodule census over Vec") {
    Presentation p = examples::vec();
    QSystem t = trivial_qsystem(p, 0);
    auto sims = simple_bimodules(t, t, tol, 0);
    CHECK(sims.size() == 1);
}

TEST_CASE("simple bimodule census for the Z/2 group algebra") {
    Presentation p = examples::vec_zn(2);
    QSystem q = examples::z2_group_algebra(p);
    QSystem t = trivial_qsystem(p, 0);

    CHECK(simple_bimodules(t, t, tol, 0).size() == 2);
    CHECK(simple_bimodules(t, q, tol, 0).size() == 1);
    CHECK(simple_bimodules(q, t, tol, 0).size() == 1);
    auto qq = simple_bimodules(q, q, tol, 0);
    CHECK(qq.size() == 2);
    for (const Bimodule& s : qq) {
        CHECK(check_bimodule(s, tol).pass());
        CHECK(intertwiner_space(s, s).size() == 1);
    }
}

TEST_CASE("isometry bases are isometric and orthogonal") {
    Presentation p = examples::vec_zn(2);
    QSystem q = examples::z2_group_algebra(p);
    Bimodule w = free_bimodule(q, q, simple_cell(p, 0));
    auto sims = simple_bimodules(q, q, tol, 0);
    for (const Bimodule& s : sims) {
        auto ws = isometry_basis(s, w);
        for (size_t i = 0; i < ws.size(); ++i)
            for (size_t j = 0; j < ws.size(); ++j) {
                TwoCell prod = vcompose(dagger(ws[i]), ws[j]);
                if (i == j)
                    CHECK(diff_norm(prod, id2(s.cell)) < 1e-9);
                else
                    CHECK(max_abs(prod) < 1e-9);
            }
    }
}

TEST_CASE("completion of the trivial list reproduces the fusion ring") {
    for (Presentation p : {examples::vec_zn(2), examples::vec_zn(3), examples::ising()}) {
        std::vector<QSystem> qs = {trivial_qsystem(p, 0)};
        CompletionContext ctx = complete(p, qs, {"T"}, tol, 0);
        const Presentation& c = ctx.completed;
        REQUIRE(c.num_simples() == p.num_simples());

        // Canonical representatives are the ambient simples: match through
        // the carriers and compare the fusion tables exactly.
        std::vector<int> to_ambient(c.num_simples());
        for (int s = 0; s < c.num_simples(); ++s) {
            const OneCell& cell = ctx.simples[s].cell;
            int amb = -1;
            for (int t = 0; t < p.num_simples(); ++t)
                if (cell == simple_cell(p, t)) amb = t;
            REQUIRE(amb >= 0);
            to_ambient[s] = amb;
        }
        for (int i = 0; i < c.num_simples(); ++i)
            for (int j = 0; j < c.num_simples(); ++j)
                for (int k = 0; k < c.num_simples(); ++k)
                    CHECK(c.fusion[i][j][k] ==
                          p.fusion[to_ambient[i]][to_ambient[j]][to_ambient[k]]);

        Report rep = validate(c, Tolerance(1e-8, 0.0));
        INFO("completed ", p.name, " max residual ", rep.max_residual());
        CHECK(rep.pass());
    }
}

TEST_CASE("completed Vec_{Z/2} with the group algebra: census and validation") {
    Presentation p = examples::vec_zn(2);
    QSystem t = trivial_qsystem(p, 0);
    QSystem q = examples::z2_group_algebra(p);
    CompletionContext ctx = complete(p, {t, q}, {"I", "Q"}, tol, 0);
    const Presentation& c = ctx.completed;

    // hom simple-counts 2 (I-I), 1 (I-Q), 1 (Q-I), 2 (Q-Q)
    std::map<std::pair<int, int>, int> counts;
    for (const auto& s : c.simples) ++counts[{s.src, s.tgt}];
    CHECK(counts[{0, 0}] == 2);
    CHECK(counts[{0, 1}] == 1);
    CHECK(counts[{1, 0}] == 1);
    CHECK(counts[{1, 1}] == 2);

    Report rep = validate(c, Tolerance(1e-8, 0.0));
    for (const Check& chk : rep.checks) {
        INFO(chk.id, " residual ", chk.residual);
        CHECK(chk.pass);
    }

    // Determinism: same seed gives identical output data.
    CompletionContext ctx2 = complete(p, {t, q}, {"I", "Q"}, tol, 0);
    CHECK(ctx2.completed.fusion == c.fusion);
    for (const auto& [key, f] : c.assoc) CHECK(ctx2.completed.assoc.at(key).data == f.data);
    CHECK(ctx2.completed.lunit == c.lunit);
    CHECK(ctx2.completed.runit == c.runit);
}
