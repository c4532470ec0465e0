#pragma once

namespace edspin {

// Physical constants of the unit system. Defaults are hbar = m = c = 1 and unit charge.
struct Units {
  double hbar = 1.0;
  double mass = 1.0;
  double c = 1.0;
  double charge = 1.0;
};

}  // namespace edspin
