#pragma once

#include "qsys/qsystem.hpp"

#include <cstdint>
#include <map>

namespace qsys {

struct DegenerateSpectrum : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Free P-Q bimodule (P (x) Z) (x) Q on an ambient 1-cell Z, with the
// multiplication actions. Every simple P-Q bimodule is a summand of one of
// these, which is what makes the census below exhaustive.
Bimodule free_bimodule(const QSystem& p, const QSystem& q, const OneCell& z);

// One representative per isomorphism class of simple P-Q bimodules,
// deterministic for a fixed seed: for each ambient simple Z, the endomorphism
// algebra of the free bimodule is split by the spectral projections of a
// seeded random Hermitian element; representatives are deduped by
// Hom-dimension. Throws DegenerateSpectrum only if the bounded retry
// schedule (seed, seed+1, ...) keeps producing eigenvalue collisions.
std::vector<Bimodule> simple_bimodules(const QSystem& p, const QSystem& q, const Tolerance& tol,
                                       uint64_t seed);

// Gram-normalized deterministic isometry basis of Hom(u, m): each w
// satisfies w* w = id_u, and distinct basis elements are orthogonal.
std::vector<TwoCell> isometry_basis(const Bimodule& u, const Bimodule& m);

// Scalar c with f = c * id for an endomorphism f of a simple bimodule.
Cx schur_scalar(const TwoCell& f);

// The completed presentation together with everything needed to interpret
// it back inside the base presentation: carrier bimodules for the simples,
// relative-tensor data and the chosen fusion isometries for every composable
// simple pair.
struct CompletionContext {
    const Presentation* base = nullptr;
    Tolerance tol;
    Presentation completed;
    std::vector<QSystem> objects;    // per completed object
    std::vector<Bimodule> simples;   // per completed simple

    struct PairData {
        RelTensor rel;
        // per completed target simple: isometries U => S (x)_rel T
        std::vector<std::vector<TwoCell>> bases;
    };
    std::map<std::pair<int, int>, PairData> pairs;

    int simple_of_bimodule(const Bimodule& b) const;  // -1 when no data match
    int class_of_bimodule(const Bimodule& b) const;   // by Hom-dimension; -1 when none
};

// Q-system completion restricted to an explicit finite list of Q-systems.
// Objects of the output are the given Q-systems (named), simples are the
// deduped simple bimodules, fusion counts come from intertwiner-space
// dimensions and the F tensors express the relative-tensor associator in the
// chosen fusion bases. Deterministic for a fixed seed.
CompletionContext complete(const Presentation& base, const std::vector<QSystem>& qsystems,
                           const std::vector<std::string>& names, const Tolerance& tol,
                           uint64_t seed);

}  // namespace qsys
