#!/usr/bin/env python3
"""Genus bookkeeping for prime-power-level modular curves.

Prints the closed-form genus tables for X1(ell^2) and X0(ell^2), then
recomputes a few of them a second way, from the coset action of the
corresponding Borel / torsion-shape subgroups, so the two independent
routes check each other.
"""

from ellimage import (CartanSpec, MatrixGroup, PrimePowerModulus,
                      build_cartan, genus_X0, genus_X1, genus_XG)
from ellimage.gl2 import unit_group_generators

print("genus of X1(l^2) and X0(l^2) for small primes")
print("l     X1(l^2)  X0(l^2)")
for ell in (3, 5, 7, 11, 13):
    print("%-5d %-8d %-8d" % (ell, genus_X1(ell * ell), genus_X0(ell * ell)))

print()
print("cross-check against the coset-space computation:")
for N, ell, e in ((9, 3, 2), (25, 5, 2), (49, 7, 2)):
    mod = PrimePowerModulus(ell, e)
    borel = build_cartan(CartanSpec("borel", mod))
    prof = genus_XG(borel)
    print("X0(%d): formula %d, cosets %d  (mu=%d nu2=%d nu3=%d cusps=%d)"
          % (N, genus_X0(N), prof.genus, prof.mu, prof.nu2, prof.nu3, prof.nu_inf))
    gens = [(1, 1, 0, 1), (N - 1, 0, 0, N - 1)]
    gens += [(1, 0, 0, u) for u in unit_group_generators(mod)]
    prof1 = genus_XG(MatrixGroup(mod, gens))
    print("X1(%d): formula %d, cosets %d" % (N, genus_X1(N), prof1.genus))
