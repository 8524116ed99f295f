#pragma once

#include "qsys/presentation.hpp"
#include "qsys/qsystem.hpp"

namespace qsys::examples {

// Built-in presentations used by the verification suites and tests.
Presentation vec();
Presentation vec_zn(int n);         // pointed Z/n with trivial associator
Presentation fibonacci();
Presentation ising();

// The Z/2 group algebra Q-system 1 (+) g in vec_zn(2), with multiplication
// components 2^{-1/2} and unit component 2^{1/2}.
QSystem z2_group_algebra(const Presentation& p);

// Trivial Q-system on object a (shared with qsystem.hpp's trivial_qsystem;
// re-exported here for suite assembly convenience).
QSystem trivial(const Presentation& p, int a);

}  // namespace qsys::examples
