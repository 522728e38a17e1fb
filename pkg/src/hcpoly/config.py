"""Numerical tolerances, collected in one place.

All are absolute bands unless noted; the root-finding tolerances scale with
``1 + max coefficient norm`` of the polynomial at hand.
"""

# Similarity of elements: absolute band on the real-part difference and on the
# imaginary-norm difference.
SIM_TOL = 1e-9

# Residual allowed for constructed identities (similarity witnesses, n-th
# roots): |lhs - rhs| <= RES_TOL * (1 + |input|).
RES_TOL = 1e-10

# c counts as a root of f when |f(c)| <= ROOT_TOL * (1 + max coeff norm).
ROOT_TOL = 1e-8

# Radius used to merge nearby complex roots into one multiplicity class.
CLUSTER_RADIUS = 1e-6

# Characteristic-quadratic division remainder below this (times the
# coefficient scale) classifies a root class as spherical.
SPHERICAL_TOL = 1e-6

# Relative coefficient-truncation threshold for the approximate real-poly GCD.
GCD_TRUNC = 1e-8

# |det J| <= DET_ZERO_BAND * (product of row norms) reports sign zero.
DET_ZERO_BAND = 1e-9
