#include "qsys/examples.hpp"

#include <cmath>

namespace qsys::examples {

namespace {

// Fill every required F entry that has not been set yet with the identity.
void fill_identity_assoc(Presentation& p) {
    int ns = p.num_simples();
    for (int i = 0; i < ns; ++i)
        for (int j = 0; j < ns; ++j) {
            if (!p.composable(i, j)) continue;
            for (int k = 0; k < ns; ++k) {
                if (!p.composable(j, k)) continue;
                for (int l = 0; l < ns; ++l) {
                    int d = p.left_tree_dim(i, j, k, l);
                    if (d == 0) continue;
                    std::array<int, 4> key{i, j, k, l};
                    if (!p.assoc.count(key)) p.assoc[key] = CMat::identity(d);
                }
            }
        }
}

void default_unitors(Presentation& p) {
    p.lunit.assign(p.num_simples(), Cx(1, 0));
    p.runit.assign(p.num_simples(), Cx(1, 0));
}

}  // namespace

Presentation vec() {
    Presentation p;
    p.name = "vec";
    p.objects = {"*"};
    p.simples = {{"1", 0, 0}};
    p.unit = {0};
    p.fusion.assign(1, std::vector<std::vector<int>>(1, std::vector<int>(1, 1)));
    default_unitors(p);
    fill_identity_assoc(p);
    p.check_structure();
    return p;
}

Presentation vec_zn(int n) {
    Presentation p;
    p.name = "vec_z" + std::to_string(n);
    p.objects = {"*"};
    for (int k = 0; k < n; ++k) {
        std::string id = k == 0 ? "1" : (k == 1 ? "g" : "g" + std::to_string(k));
        p.simples.push_back({id, 0, 0});
    }
    p.unit = {0};
    p.fusion.assign(n, std::vector<std::vector<int>>(n, std::vector<int>(n, 0)));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) p.fusion[i][j][(i + j) % n] = 1;
    default_unitors(p);
    fill_identity_assoc(p);
    p.check_structure();
    return p;
}

Presentation fibonacci() {
    Presentation p;
    p.name = "fibonacci";
    p.objects = {"*"};
    p.simples = {{"1", 0, 0}, {"tau", 0, 0}};
    p.unit = {0};
    p.fusion.assign(2, std::vector<std::vector<int>>(2, std::vector<int>(2, 0)));
    p.fusion[0][0][0] = 1;
    p.fusion[0][1][1] = 1;
    p.fusion[1][0][1] = 1;
    p.fusion[1][1][0] = 1;
    p.fusion[1][1][1] = 1;
    default_unitors(p);

    const double phi = (1.0 + std::sqrt(5.0)) / 2.0;
    CMat f(2, 2);  // intermediates ordered (1, tau) on both trees
    f.at(0, 0) = 1.0 / phi;
    f.at(0, 1) = 1.0 / std::sqrt(phi);
    f.at(1, 0) = 1.0 / std::sqrt(phi);
    f.at(1, 1) = -1.0 / phi;
    p.assoc[{1, 1, 1, 1}] = f;
    fill_identity_assoc(p);
    p.check_structure();
    return p;
}

Presentation ising() {
    Presentation p;
    p.name = "ising";
    p.objects = {"*"};
    p.simples = {{"1", 0, 0}, {"psi", 0, 0}, {"sigma", 0, 0}};
    p.unit = {0};
    const int e = 0, f = 1, s = 2;
    p.fusion.assign(3, std::vector<std::vector<int>>(3, std::vector<int>(3, 0)));
    auto set = [&](int i, int j, int k) { p.fusion[i][j][k] = 1; };
    set(e, e, e); set(e, f, f); set(e, s, s);
    set(f, e, f); set(f, f, e); set(f, s, s);
    set(s, e, s); set(s, f, s); set(s, s, e); set(s, s, f);
    default_unitors(p);

    // Tambara-Yamagami data for Z/2 with chi(psi,psi) = -1, tau = 1/sqrt(2).
    auto scalar = [](double v) {
        CMat m(1, 1);
        m.at(0, 0) = v;
        return m;
    };
    // (a, sigma, b; sigma) = chi(a, b)
    p.assoc[{f, s, f, s}] = scalar(-1.0);
    // (sigma, a, sigma; b) = chi(a, b)
    p.assoc[{s, f, s, f}] = scalar(-1.0);
    // (sigma, sigma, sigma; sigma) = tau * chi(a,b), intermediates ordered (1, psi)
    CMat fs(2, 2);
    const double t = 1.0 / std::sqrt(2.0);
    fs.at(0, 0) = t;
    fs.at(0, 1) = t;
    fs.at(1, 0) = t;
    fs.at(1, 1) = -t;
    p.assoc[{s, s, s, s}] = fs;
    fill_identity_assoc(p);
    p.check_structure();
    return p;
}

QSystem z2_group_algebra(const Presentation& p) {
    QSystem q;
    q.pres = &p;
    q.base = 0;
    q.cell = zero_cell(p, 0, 0);
    q.cell.mult[0] = 1;
    q.cell.mult[1] = 1;

    OneCell qq = tensor_1cells(p, q.cell, q.cell);
    const double r = 1.0 / std::sqrt(2.0);
    q.m = zero2(qq, q.cell);
    // Block at simple 1: basis ((1,1), (g,g)); block at g: basis ((1,g), (g,1)).
    q.m.blocks[0].at(0, 0) = r;
    q.m.blocks[0].at(0, 1) = r;
    q.m.blocks[1].at(0, 0) = r;
    q.m.blocks[1].at(0, 1) = r;

    q.i = zero2(unit_cell(p, 0), q.cell);
    q.i.blocks[0].at(0, 0) = std::sqrt(2.0);
    return q;
}

QSystem trivial(const Presentation& p, int a) { return trivial_qsystem(p, a); }

}  // namespace qsys::examples
