"""Independent geometric oracles used only by the test-suite."""

from itertools import combinations

import numpy as np
from scipy.optimize import linprog

from smithcalc.oracles import alternation_decompose, box_oracle, box_radius, weyl_group_matrices  # noqa: F401


def _feasible(a_eq, b_eq, n):
    res = linprog(np.zeros(n), A_eq=a_eq, b_eq=b_eq, bounds=[(0, None)] * n, method="highs")
    return res.status == 0


def fiber_chi_c(tau, images, y):
    """chi_c of relint(tau) ∩ u^{-1}(y) for the affine map sending vertex v to images[v].

    The closed fiber over y meets each closed face F of tau in a convex set, so
    chi(P ∩ F) is 1 or 0.  Moebius inversion on the face lattice then gives
    the compactly supported Euler characteristic of the open part.
    """
    total = 0
    for k in range(1, len(tau) + 1):
        for face in combinations(tau, k):
            pts = np.array([images[v] for v in face], dtype=float).T
            a_eq = np.vstack([pts, np.ones((1, len(face)))])
            b_eq = np.concatenate([np.asarray(y, dtype=float), [1.0]])
            if _feasible(a_eq, b_eq, len(face)):
                total += (-1) ** (len(tau) - len(face))
    return total
