// Physical constants (SI, CODATA 2018) and common ion species data.
#pragma once

namespace ionrot {

struct PhysConstants {
  double coulomb_constant;   // K = 1/(4 pi eps0), V*m/C
  double elementary_charge;  // C
  double atomic_mass_unit;   // kg
  double reduced_planck;     // J*s
};

inline constexpr PhysConstants kConstants{
    8.9875517873681764e9,
    1.602176634e-19,
    1.66053906660e-27,
    1.054571817e-34,
};

// 40Ca+ : neutral atomic mass 39.962590863 u minus one electron (5.48579909e-4 u).
inline constexpr double kCa40IonMassU = 39.962590863 - 5.48579909e-4;

inline constexpr double ca40_ion_mass(const PhysConstants& c = kConstants) {
  return kCa40IonMassU * c.atomic_mass_unit;
}

}  // namespace ionrot
