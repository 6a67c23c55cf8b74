#pragma once

#include "tcm/closed_form.hpp"
#include "tcm/fock_field.hpp"

namespace tcm {

struct InversionPoint {
  double gt = 0.0;
  double W = 0.0;
};

/// P(both excited) - P(both ground); the ab/ba branches count toward neither.
InversionPoint two_atom_inversion(const AmplitudeSet& set);

/// Resonant single-atom Jaynes-Cummings inversion sum_n |c_n|^2 cos(2 gt sqrt(n + 1)),
/// atom initially excited.
InversionPoint single_atom_jcm_inversion(const FieldDistribution& field, double gt);

}  // namespace tcm
