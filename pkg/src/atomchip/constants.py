"""Physical constants (SI) used throughout the toolkit.

Values are CODATA 2018; mu0 is kept in its exact pre-2019 form because the
segment-field kernel hard-codes the equivalent 1e-7 prefactor.
"""

MU0 = 4e-7 * 3.141592653589793  # vacuum permeability [T*m/A]
PLANCK_H = 6.62607015e-34  # [J*s]
HBAR = 1.054571817e-34  # [J*s]
BOHR_MAGNETON = 9.2740100783e-24  # [J/T]
GRAVITY_G = 9.80665  # [m/s^2]

# unit identities used at module boundaries
GAUSS = 1e-4  # 1 G in tesla
# 1 T/m^2 == 1 G/cm^2 exactly (1e4 G per T, 1e4 cm^2 per m^2), so curvature
# values convert between the two unit systems with factor 1.
