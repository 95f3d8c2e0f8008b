"""Orbits of a matrix group on torsion vectors and on cyclic submodules.

The group acts on column vectors from the left.  Degrees of closed points
come out as orbit sizes: on X1(ell^k) the carrier is the set of +-classes of
vectors of exact order ell^k (the Weber quotient identifies v and -v), on
X0(ell^k) it is the set of cyclic submodules of order ell^k.  The carrier at
level ell^k for a group mod ell^n, k <= n, is acted on through reduction.

For the orbit sizes to carry their field-degree meaning the input group must
be an actual Galois image (the full image, not an arbitrary subgroup), and
the j-invariant must be outside {0, 1728}; the functions themselves are pure
group theory and do not check this.
"""

from dataclasses import dataclass

from .modarith import PrimePowerModulus, mreduce, mvec


@dataclass(frozen=True, order=True)
class TorsionVector:
    "A point of exact order ell^k in (Z/ell^k)^2."
    x: int
    y: int
    level: PrimePowerModulus

    def __post_init__(self):
        ell = self.level.ell
        if self.level.exponent < 1:
            raise ValueError("exact order requires exponent >= 1")
        if self.x % ell == 0 and self.y % ell == 0:
            raise ValueError("(%d, %d) has order below %d" % (self.x, self.y, self.level.modulus))


@dataclass(frozen=True, order=True)
class CyclicSubmodule:
    "A cyclic submodule of order ell^k, stored by its canonical generator."
    x: int
    y: int
    level: PrimePowerModulus

    def __post_init__(self):
        m = self.level.modulus
        canon = _line_canon((self.x, self.y), m, _units(self.level))
        if canon != (self.x, self.y):
            raise ValueError("(%d, %d) is not the canonical generator %r"
                             % (self.x, self.y, canon))


@dataclass(frozen=True)
class OrbitRecord:
    family: str                      # "gamma1" | "gamma0"
    level: PrimePowerModulus
    representative: tuple            # canonical vector (gamma1) or line generator (gamma0)
    size: int

    def typed_representative(self):
        cls = TorsionVector if self.family == "gamma1" else CyclicSubmodule
        return cls(self.representative[0], self.representative[1], self.level)


def _pm_canon(v, m):
    "Canonical representative of {v, -v}."
    w = ((-v[0]) % m, (-v[1]) % m)
    return v if v <= w else w


_UNIT_CACHE = {}


def _units(level):
    m = level.modulus
    if m not in _UNIT_CACHE:
        ell = level.ell
        _UNIT_CACHE[m] = tuple(u for u in range(1, m) if u % ell) if m > 1 else (0,)
    return _UNIT_CACHE[m]


def _line_canon(v, m, units):
    "Lexicographically least generator among the unit multiples of v."
    best = None
    for u in units:
        w = (u * v[0] % m, u * v[1] % m)
        if best is None or w < best:
            best = w
    return best


def _exact_vectors(level):
    "All vectors of exact order ell^k, sorted."
    ell, m = level.ell, level.modulus
    return [(x, y) for x in range(m) for y in range(m)
            if x % ell or y % ell]


def _reduced_gens(group, level):
    if level.exponent > group.mod.exponent:
        raise ValueError("level %s exceeds the group modulus %s" % (level, group.mod))
    if level.ell != group.mod.ell:
        raise ValueError("level prime %d does not match group prime %d"
                         % (level.ell, group.mod.ell))
    m = level.modulus
    gens = []
    for g in group.gens:
        r = mreduce(g, m)
        if r != (1 % m, 0, 0, 1 % m) and r not in gens:
            gens.append(r)
    return gens


def gamma1_orbits(group, k):
    """Orbits of <group mod ell^k, -I> on +-classes of exact order ell^k
    vectors; each orbit size is the degree of the induced point on X1(ell^k)."""
    level = PrimePowerModulus(group.mod.ell, k)
    gens = _reduced_gens(group, level)
    m = level.modulus
    carrier = sorted({_pm_canon(v, m) for v in _exact_vectors(level)})
    seen = set()
    out = []
    for v0 in carrier:
        if v0 in seen:
            continue
        orbit = {v0}
        queue = [v0]
        while queue:
            v = queue.pop()
            for g in gens:
                w = _pm_canon(mvec(g, v, m), m)
                if w not in orbit:
                    orbit.add(w)
                    queue.append(w)
        seen |= orbit
        out.append(OrbitRecord("gamma1", level, v0, len(orbit)))
    return out


def gamma0_orbits(group, k):
    """Orbits of group mod ell^k on cyclic submodules of order ell^k; each
    orbit size is the degree of the induced point on X0(ell^k)."""
    level = PrimePowerModulus(group.mod.ell, k)
    gens = _reduced_gens(group, level)
    m = level.modulus
    units = _units(level)
    carrier = sorted({_line_canon(v, m, units) for v in _exact_vectors(level)})
    seen = set()
    out = []
    for v0 in carrier:
        if v0 in seen:
            continue
        orbit = {v0}
        queue = [v0]
        while queue:
            v = queue.pop()
            for g in gens:
                w = _line_canon(mvec(g, v, m), m, units)
                if w not in orbit:
                    orbit.add(w)
                    queue.append(w)
        seen |= orbit
        out.append(OrbitRecord("gamma0", level, v0, len(orbit)))
    return out


def orbits(group, k, family):
    if family == "gamma1":
        return gamma1_orbits(group, k)
    if family == "gamma0":
        return gamma0_orbits(group, k)
    raise ValueError("family must be gamma1 or gamma0, got %r" % (family,))


def _single_orbit_size(group, v, k, family):
    level = PrimePowerModulus(group.mod.ell, k)
    gens = _reduced_gens(group, level)
    m = level.modulus
    if family == "gamma1":
        canon = lambda w: _pm_canon(w, m)
    else:
        units = _units(level)
        canon = lambda w: _line_canon(w, m, units)
    v0 = canon((v[0] % m, v[1] % m))
    orbit = {v0}
    queue = [v0]
    while queue:
        w = queue.pop()
        for g in gens:
            u = canon(mvec(g, w, m))
            if u not in orbit:
                orbit.add(u)
                queue.append(u)
    return len(orbit)


def orbit_degree_tower(group, rec):
    """Degrees of the reduced point at each level ell^a for a = k down to 0.

    A vector of exact order ell^k reduces to one of exact order ell^a for
    every a >= 1, so each entry is again an orbit size; the level-0 entry is
    1 (the point on the j-line is rational).
    """
    k = rec.level.exponent
    out = []
    for a in range(k, 0, -1):
        size = _single_orbit_size(group, rec.representative, a, rec.family)
        out.append((a, size))
    out.append((0, 1))
    return out
