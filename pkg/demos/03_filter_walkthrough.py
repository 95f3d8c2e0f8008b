#!/usr/bin/env python3
"""The three-step candidate filter, end to end.

For each image the filter (1) pushes every orbit degree down to the lowest
level where it is multiplicative through the natural map, (2) removes pairs
whose degree exceeds the genus (Riemann-Roch pencil), (3) removes pairs
whose reduced image has a genus-zero curve.  What survives is the finite
set of (level, degree) pairs any isolated point would have to reduce to.
"""

from ellimage import analyze
from ellimage.cli import _bundled_records

records = {r.rszb_label: r for r in _bundled_records()}

for label in ("17.72.1.2", "37.114.4.1", "49.196.9.1"):
    group = records[label].group()
    for family in ("gamma1", "gamma0"):
        report = analyze(group, family, label=label)
        print(report.to_text())

print("batch summary over the whole bundled catalog:")
for family in ("gamma1", "gamma0"):
    survivors = []
    for rec in records.values():
        final = analyze(rec.group(), family, label=rec.rszb_label).final
        if final:
            survivors.append((rec.rszb_label,
                              [(p.level, p.degree) for p in final]))
    print(" ", family, "->", survivors or "all empty")
