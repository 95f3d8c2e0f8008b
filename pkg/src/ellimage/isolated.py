"""The three-step candidate filter for isolated points.

Given an open subgroup presented mod ell^n (an ell-adic Galois image), the
pipeline produces the finite set of (level, degree) pairs that any isolated
point on X1(ell^k) / X0(ell^k) attached to the image would have to reduce
to:

  1. for every k up to the level exponent and every orbit at level ell^k,
     push the point down to the smallest ell^a where its degree is
     multiplicative through the natural map (degree = orbit size);
  2. discard pairs with degree above the genus of X1(ell^a) / X0(ell^a)
     (Riemann-Roch gives a pencil);
  3. discard pairs whose reduced image corresponds to a genus-0 curve.

Eliminated pairs are kept, tagged with their reason, so every report is
re-checkable.  Literature facts about the surviving pairs are attached from
a static citation table and are never computed.
"""

import warnings
from dataclasses import dataclass, replace

from .gl2 import DEFAULT_CAP
from .modcurves import genus_X0, genus_X1, genus_XG, map_degree_tower
from .orbits import orbit_degree_tower, orbits

FAMILIES = ("gamma1", "gamma0")

ELIM_RIEMANN_ROCH = "riemann_roch"
ELIM_GENUS_ZERO = "genus_zero_image"


@dataclass(frozen=True)
class CandidatePair:
    level_exp: int                   # pair level is ell**level_exp
    degree: int
    ell: int
    provenance: tuple = ()           # ((source level exponent, orbit representative), ...)
    elimination: str | None = None

    @property
    def level(self):
        return self.ell ** self.level_exp

    def key(self):
        return (self.level_exp, self.degree)


@dataclass(frozen=True)
class Annotation:
    level: int
    degree: int
    text: str


@dataclass(frozen=True)
class FilterReport:
    label: str
    family: str
    ell: int
    pairs: tuple                     # all CandidatePairs, eliminated ones included
    det_surjective: bool
    annotations: tuple = ()

    @property
    def final(self):
        return tuple(p for p in self.pairs if p.elimination is None)

    def to_lines(self, comments=True):
        out = []
        if comments and not self.det_surjective:
            out.append("# warning: determinant not surjective; "
                       "degree interpretation is invalid")
        if comments:
            for a in self.annotations:
                out.append("# cite %d:%d %s" % (a.level, a.degree, a.text))
        for p in self.pairs:
            status = "kept" if p.elimination is None else "eliminated"
            reason = p.elimination or "none"
            out.append("%s\t%s\t%d\t%d\t%s\t%s"
                       % (self.label, self.family, p.level, p.degree, status, reason))
        final = ",".join("%d:%d" % (p.level, p.degree) for p in self.final)
        out.append("RESULT\t%s\t%s\t%s" % (self.label, self.family, final or "empty"))
        return out

    def to_text(self, comments=True):
        return "\n".join(self.to_lines(comments)) + "\n"


# Literature dispositions for pairs the filter cannot remove.  Citations
# only; nothing here is derived by this package.
ANNOTATIONS = {
    ("gamma1", 17, 4):
        "every degree-4 point on X1(17) is P^1-parameterized "
        "(Derickx-Kamienny-Mazur-van Hoeij modular symbol bounds)",
    ("gamma1", 37, 6):
        "a degree-6 sporadic point on X1(37) exists (van Hoeij); it is "
        "isolated because 6 is below half the Q-gonality 18 of X1(37) "
        "(Frey's criterion; gonality from Derickx-van Hoeij)",
    ("gamma1", 37, 18):
        "the degree-18 point on X1(37) above the degree-6 point is isolated "
        "(degree-d classification literature for X1, 2025)",
    ("gamma0", 11, 1):
        "non-CM rational points on X0(11): j = -11*131^3 and -11^2; "
        "X0(11)(Q) is finite (genus 1, rank 0), so both points are isolated",
    ("gamma0", 17, 1):
        "non-CM rational points on X0(17): j = -17^2*101^3/2 and "
        "-17*373^3/2^17; X0(17)(Q) is finite, so both points are isolated",
    ("gamma0", 37, 1):
        "non-CM rational points on X0(37): j = -7*11^3 and "
        "-7*137^3*2083^3; X0(37)(Q) is finite (genus 2), so both are isolated",
}


def _genus_at(family, N):
    return genus_X1(N) if family == "gamma1" else genus_X0(N)


def candidate_pairs(group, family, cap=DEFAULT_CAP):
    """Step 1: the deduplicated pre-filter pairs for the image.

    Levels k beyond the level exponent of the group contribute nothing new
    (their orbits are kernel-saturated and multiplicative down to the level),
    so the loop stops there; the level-stability tests exercise this.
    """
    if family not in FAMILIES:
        raise ValueError("family must be gamma1 or gamma0")
    ell = group.mod.ell
    _, det_surj = group.det_image(cap)
    if not det_surj:
        warnings.warn("determinant image is not surjective; the degree "
                      "interpretation of orbit sizes is invalid", stacklevel=2)
    m_exp = group.level(cap).exponent
    found = {}
    for k in range(1, max(m_exp, 1) + 1):
        for rec in orbits(group, k, family):
            tower = dict(orbit_degree_tower(group, rec))
            deg_k = rec.size
            assert tower[k] == deg_k
            for a in range(0, k + 1):
                if deg_k == tower[a] * map_degree_tower(family, ell, a, k):
                    pair_key = (a, tower[a])
                    prov = (k, rec.representative)
                    if pair_key in found:
                        found[pair_key] = found[pair_key] + (prov,)
                    else:
                        found[pair_key] = (prov,)
                    break
    pairs = [CandidatePair(a, d, ell, provenance=found[(a, d)])
             for (a, d) in sorted(found)]
    return pairs


def filter_riemann_roch(pairs, family):
    """Step 2: tag pairs whose degree exceeds the genus of X_family(ell^a)."""
    out = []
    for p in pairs:
        if p.elimination is None and p.degree > _genus_at(family, p.level):
            p = replace(p, elimination=ELIM_RIEMANN_ROCH)
        out.append(p)
    return out


def filter_genus_zero(pairs, group, family, cap=DEFAULT_CAP):
    """Step 3: tag pairs whose reduced image has a genus-0 modular curve."""
    out = []
    genus_cache = {}
    for p in pairs:
        if p.elimination is None:
            a = p.level_exp
            if a not in genus_cache:
                genus_cache[a] = genus_XG(group.reduce_to(a), cap).genus
            if genus_cache[a] == 0:
                p = replace(p, elimination=ELIM_GENUS_ZERO)
        out.append(p)
    return out


def analyze(group, family, label=None, cap=DEFAULT_CAP):
    """Run the full pipeline and assemble the report."""
    label = label or group.label or "unlabeled"
    _, det_surj = group.det_image(cap)
    pairs = candidate_pairs(group, family, cap)
    pairs = filter_riemann_roch(pairs, family)
    pairs = filter_genus_zero(pairs, group, family, cap)
    notes = []
    for p in pairs:
        if p.elimination is None:
            text = ANNOTATIONS.get((family, p.level, p.degree))
            if text:
                notes.append(Annotation(p.level, p.degree, text))
    return FilterReport(label, family, group.mod.ell, tuple(pairs),
                        det_surj, tuple(notes))
