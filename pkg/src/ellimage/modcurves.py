"""Genus and map-degree invariants of the modular curves X1(N), X0(N), X_G.

Closed formulas handle X1(N) and X0(N).  For an arbitrary subgroup the genus
is computed from the action on the right cosets of (+-G cap SL2) in
SL2(Z/N): mu is the coset count, nu2/nu3 count cosets fixed by the standard
order-4/order-3 elements s = [0 -1; 1 0] and t = [0 -1; 1 -1], and nu_inf
counts orbits of u = [1 1; 0 1].  -I is always adjoined first (X_G depends
only on +-G).  Cosets here are right cosets Hx with the right multiplication
action; the Borel-vs-X0 and Gamma1-shape-vs-X1 oracle tests pin this
convention against the closed formulas.
"""

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .gl2 import DEFAULT_CAP, mulclose
from .modarith import mdet, mmul, mreduce


def _prime_factors(n):
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def _euler_phi(n):
    r = n
    for p in _prime_factors(n):
        r -= r // p
    return r


def _legendre(a, p):
    "Legendre symbol for odd prime p."
    a %= p
    if a == 0:
        return 0
    return 1 if pow(a, (p - 1) // 2, p) == 1 else -1


def genus_X0(N):
    "Genus of X0(N) by the classical index/elliptic-point/cusp counts."
    if N < 1:
        raise ValueError("N must be >= 1")
    if N == 1:
        return 0
    primes = _prime_factors(N)
    mu = N
    for p in primes:
        mu += mu // p
    if N % 4 == 0:
        nu2 = 0
    else:
        nu2 = 1
        for p in primes:
            if p == 2:
                continue
            nu2 *= 1 + _legendre(-1, p)
    if N % 9 == 0:
        nu3 = 0
    else:
        nu3 = 1
        for p in primes:
            if p == 3:
                continue
            if p == 2:
                nu3 = 0
                break
            nu3 *= 1 + _legendre(-3, p)
    nu_inf = sum(_euler_phi(gcd(d, N // d)) for d in range(1, N + 1) if N % d == 0)
    g = 1 + Fraction(mu, 12) - Fraction(nu2, 4) - Fraction(nu3, 3) - Fraction(nu_inf, 2)
    assert g.denominator == 1 and g >= 0, (N, g)
    return int(g)


def genus_X1(N):
    "Genus of X1(N); zero for N <= 4 where the generic formulas degenerate."
    if N < 1:
        raise ValueError("N must be >= 1")
    if N <= 4:
        return 0
    mu = Fraction(N * N, 2)
    for p in _prime_factors(N):
        mu *= Fraction(p * p - 1, p * p)
    nu_inf = Fraction(sum(_euler_phi(d) * _euler_phi(N // d)
                          for d in range(1, N + 1) if N % d == 0), 2)
    g = 1 + mu / 12 - nu_inf / 2
    assert g.denominator == 1 and g >= 0, (N, g)
    return int(g)


@dataclass(frozen=True)
class MapDegreeSpec:
    """Natural map X_family(a*b) -> X_family(a); c_f is 1/2 exactly when
    family is Gamma1, a <= 2 and a*b > 2."""

    family: str
    a: int
    b: int

    def __post_init__(self):
        if self.family not in ("gamma1", "gamma0"):
            raise ValueError("family must be gamma1 or gamma0")
        if self.a < 1 or self.b < 1:
            raise ValueError("a, b must be >= 1")

    @property
    def c_f(self):
        if self.family == "gamma1" and self.a <= 2 and self.a * self.b > 2:
            return Fraction(1, 2)
        return Fraction(1)


def map_degree(spec):
    "Degree of the natural map described by a MapDegreeSpec; asserted integral."
    a, b = spec.a, spec.b
    if spec.family == "gamma1":
        deg = spec.c_f * b * b
        for p in _prime_factors(b):
            if a % p:
                deg *= Fraction(p * p - 1, p * p)
    else:
        deg = Fraction(b)
        for p in _prime_factors(b):
            if a % p:
                deg *= Fraction(p + 1, p)
    assert deg.denominator == 1 and deg >= 1, (spec, deg)
    return int(deg)


def map_degree_tower(family, ell, a_exp, k_exp):
    "Degree of X_family(ell^k) -> X_family(ell^a) for exponents a <= k."
    if a_exp > k_exp:
        raise ValueError("need a <= k")
    return map_degree(MapDegreeSpec(family, ell ** a_exp, ell ** (k_exp - a_exp)))


@dataclass(frozen=True)
class GenusProfile:
    mu: int
    nu2: int
    nu3: int
    nu_inf: int
    genus: int


_X1_PROFILE_LEVEL1 = GenusProfile(1, 1, 1, 1, 0)

_SL2_CACHE = {}


def sl2_elements(modulus):
    "Sorted tuple of SL2(Z/m); cached per modulus, built once."
    m = int(modulus)
    if m not in _SL2_CACHE:
        els = mulclose([(1, 1, 0, 1), (1, 0, 1, 1)], m, cap=DEFAULT_CAP)
        facs = _prime_factors(m)
        expected = m ** 3
        for p in facs:
            expected = expected // (p * p) * (p * p - 1)
        assert len(els) == expected
        _SL2_CACHE[m] = tuple(sorted(els))
    return _SL2_CACHE[m]


def genus_XG(group, cap=DEFAULT_CAP):
    """GenusProfile of the modular curve attached to a subgroup of GL2(Z/N).

    mu = [SL2(Z/N) : +-G cap SL2]; the level-1 marker yields the j-line.
    """
    mod = group.mod
    if mod.exponent == 0:
        return _X1_PROFILE_LEVEL1
    m = mod.modulus
    pm = group.adjoin_minus_identity()
    H = sorted(x for x in pm.elements(cap) if mdet(x, m) == 1)
    S = sl2_elements(m)
    if len(S) % len(H):
        raise ArithmeticError("|H| = %d does not divide |SL2| = %d" % (len(H), len(S)))
    coset_of = {}
    reps = []
    for x in S:
        if x in coset_of:
            continue
        idx = len(reps)
        reps.append(x)
        for h in H:
            coset_of[mmul(h, x, m)] = idx
    mu = len(reps)
    s = mreduce((0, -1, 1, 0), m)
    t = mreduce((0, -1, 1, -1), m)
    u = (1, 1 % m, 0, 1)
    nu2 = sum(1 for i, r in enumerate(reps) if coset_of[mmul(r, s, m)] == i)
    nu3 = sum(1 for i, r in enumerate(reps) if coset_of[mmul(r, t, m)] == i)
    perm = [coset_of[mmul(r, u, m)] for r in reps]
    seen = [False] * mu
    nu_inf = 0
    for i in range(mu):
        if not seen[i]:
            nu_inf += 1
            j = i
            while not seen[j]:
                seen[j] = True
                j = perm[j]
    g = 1 + Fraction(mu, 12) - Fraction(nu2, 4) - Fraction(nu3, 3) - Fraction(nu_inf, 2)
    assert g.denominator == 1 and g >= 0, (group, mu, nu2, nu3, nu_inf, g)
    return GenusProfile(mu, nu2, nu3, nu_inf, int(g))
