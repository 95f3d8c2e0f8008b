#!/usr/bin/env python3
"""Labels, data files, and the shipped classification tables.

Subgroup labels have the shape level.index.genus.n; none of the three
numeric fields is trusted: validate_record recomputes them from the
generators.  The grammar round-trips, and injected faults are caught.
"""

from ellimage import (GAMMA0_ISOLATED_J, GAMMA1_ISOLATED_J, ImageRecord,
                      parse_label, read_generators_text, serialize_records,
                      validate_record)
from ellimage.cli import _bundled_records

print("parse_label('49.196.9.1') ->", parse_label("49.196.9.1"))

records = _bundled_records()
print("bundled records:", len(records))
for rec in records[:3] + records[-2:]:
    print(" ", validate_record(rec).to_line())

text = serialize_records(records[:2])
print("round-trip ok:", serialize_records(read_generators_text(text)) == text)

# an injected fault: claim the wrong genus and watch validation object
good = records[-1]
bad = ImageRecord(good.rszb_label.rsplit(".", 2)[0] + ".999.9", good.modulus,
                  good.generators)
print("fault injected:", validate_record(bad).to_line())

print()
print("rational j-invariants isolated in the prime-power towers:")
print("  X1 family: %d (%d CM + %d non-CM)"
      % (len(GAMMA1_ISOLATED_J), sum(r.cm for r in GAMMA1_ISOLATED_J),
         sum(not r.cm for r in GAMMA1_ISOLATED_J)))
print("  X0 family: %d (%d CM + %d non-CM)"
      % (len(GAMMA0_ISOLATED_J), sum(r.cm for r in GAMMA0_ISOLATED_J),
         sum(not r.cm for r in GAMMA0_ISOLATED_J)))
for r in GAMMA0_ISOLATED_J:
    if not r.cm:
        print("    ell=%-3s j=%-28s %s" % (r.ell, r.j_invariant, r.citation))
