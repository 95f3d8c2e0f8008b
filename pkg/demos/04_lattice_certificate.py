#!/usr/bin/env python3
"""The subgroup-lattice story for the exceptional mod-49 image 49.196.9.1.

Three computations pin down the possible refinements of this image:

  1. up to conjugacy it has exactly one proper determinant-surjective
     subgroup of index <= 49 keeping the full mod-7 reduction, at index 49;
  2. that subgroup lands inside the normalizer of a split Cartan mod 49 at
     index 7 (so its curve has a known quotient with understood points);
  3. no proper determinant-surjective subgroup of GL2(Z/343) reduces
     exactly onto 49.196.9.1, so the group equals its own full one-step
     preimage ("rigidity"), certifying it as a full 7-adic image level.

Contrast with the nonsplit-Cartan normalizer mod 7, which is NOT rigid: its
mod-49 preimage contains proper refinements, and the search returns one.
"""

from ellimage import (CartanSpec, PrimePowerModulus, build_cartan,
                      is_conjugate, preimage_rigidity,
                      proper_detsurjective_subgroups, split_cartan_membership,
                      verify_counterexample)
from ellimage.cli import _bundled_records, _special_records

records = {r.rszb_label: r for r in _bundled_records()}
G = records["49.196.9.1"].group()

classes = proper_detsurjective_subgroups(G, 49)
print("det-surjective classes of index <= 49 (mod-7 reduction fixed):")
for cls in classes:
    print("  index %d, class size %d, generators %s"
          % (cls.index_in_parent, cls.class_size, cls.representative.gens))

rep = classes[0].representative
printed = _special_records()[0].group()
ok, _ = is_conjugate(rep, printed)
print("conjugate to the published index-49 basis:", ok)

member, index, witness = split_cartan_membership(rep)
print("inside the split-Cartan normalizer mod 49:", member, "at index", index)

rig = preimage_rigidity(G)
print("rigid mod 343:", rig.rigid, "(stable kernel subspaces examined: %d)"
      % rig.checked_subspaces)

print()
m7 = PrimePowerModulus(7, 1)
cns = build_cartan(CartanSpec("nonsplit-normalizer", m7))
rig = preimage_rigidity(cns)
print("nonsplit-Cartan normalizer mod 7 rigid:", rig.rigid)
print("returned refinement has order", rig.counterexample.order(),
      "and verifies:", verify_counterexample(cns, rig.counterexample))
cns49 = build_cartan(CartanSpec("nonsplit-normalizer", PrimePowerModulus(7, 2)))
print("the mod-49 nonsplit-Cartan normalizer is another witness:",
      verify_counterexample(cns, cns49))
