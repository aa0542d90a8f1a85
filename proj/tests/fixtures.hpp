#pragma once

#include "hent/eigensolver.hpp"
#include "hent/integrals.hpp"

namespace fixtures {

inline const hent::DilationFamily& family(int omega, bool interaction = true) {
  static const hent::DilationFamily w6(hent::assemble_unit_scale(6), 2.0, {true}, {1e-24});
  static const hent::DilationFamily w6_free(hent::assemble_unit_scale(6), 2.0, {false}, {1e-24});
  static const hent::DilationFamily w3(hent::assemble_unit_scale(3), 2.0, {true}, {1e-24});
  if (omega == 3) return w3;
  return interaction ? w6 : w6_free;
}

/// Normalized omega = 6 helium ground state at alpha = beta = 1.8.
inline hent::HylleraasWavefunction ground_state() { return family(6).state(1.8, 0); }

}  // namespace fixtures
