"""Exact constructible-function calculus with mod-p Smith operators.

Subpackages: ``simplicial`` (complexes, Euler calculus, Smith restriction),
``hecke`` (convolution algebras), ``conic`` (fans and the Fourier-Sato
transform), ``roots`` (root data, Kac nodes, Satake lattice model),
``charp`` (characteristic-2 quadratic forms) and ``tate`` (complexes of
F_p[Z/p]-modules).
"""

__version__ = "0.1.0"
