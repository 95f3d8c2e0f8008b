"""Exact arithmetic for scalars and 2x2 matrices over Z/m, m a prime power.

Matrices are stored as canonical representatives in [0, m); every operation
re-canonicalizes, so equality and hashing are structural.  Hot loops work on
plain 4-tuples (m11, m12, m21, m22) through the module-level helpers; the
ResidueMatrix dataclass is the hashable public wrapper.
"""

from dataclasses import dataclass

from .errors import ModulusMismatchError, NotInvertibleError

# Squares of entries must stay inside native 64-bit integers.  Every
# computation in scope has m <= 343, so this is a generous ceiling.
MAX_MODULUS = 3_037_000_499


def is_prime(n):
    """Deterministic Miller-Rabin, valid for n < 3.2e9 with bases 2,3,5,7."""
    if n < 2:
        return False
    for p in (2, 3, 5, 7):
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@dataclass(frozen=True, order=True)
class PrimePowerModulus:
    """m = ell**exponent.  Exponent 0 is the degenerate level-1 marker."""

    ell: int
    exponent: int

    def __post_init__(self):
        if not is_prime(self.ell):
            raise ValueError("ell = %r is not prime" % (self.ell,))
        if self.exponent < 0:
            raise ValueError("exponent must be >= 0")
        if self.ell ** self.exponent > MAX_MODULUS:
            raise ValueError("modulus %d**%d too large" % (self.ell, self.exponent))

    @property
    def modulus(self):
        return self.ell ** self.exponent

    def to_exponent(self, exponent):
        return PrimePowerModulus(self.ell, exponent)

    def divides(self, other):
        return self.ell == other.ell and self.exponent <= other.exponent

    def unit_count(self):
        "Order of (Z/m)^x; 1 at level 1."
        if self.exponent == 0:
            return 1
        return self.ell ** (self.exponent - 1) * (self.ell - 1)

    def __str__(self):
        return str(self.modulus)


# ---------------------------------------------------------------------------
# tuple-level matrix helpers (hot paths)

IDENTITY = (1, 0, 0, 1)


def mmul(a, b, m):
    return (
        (a[0] * b[0] + a[1] * b[2]) % m,
        (a[0] * b[1] + a[1] * b[3]) % m,
        (a[2] * b[0] + a[3] * b[2]) % m,
        (a[2] * b[1] + a[3] * b[3]) % m,
    )


def mdet(a, m):
    return (a[0] * a[3] - a[1] * a[2]) % m


def mtrace(a, m):
    return (a[0] + a[3]) % m


def is_unit(x, ell):
    return x % ell != 0


def scalar_inv(x, m, ell):
    if x % ell == 0:
        raise NotInvertibleError("%d is not a unit mod %d" % (x, m))
    return pow(x, -1, m)


def minv(a, m, ell):
    d = mdet(a, m)
    di = scalar_inv(d, m, ell)
    return ((a[3] * di) % m, (-a[1] * di) % m, (-a[2] * di) % m, (a[0] * di) % m)


def mpow(a, e, m):
    if e < 0:
        raise ValueError("use minv for negative powers")
    r = (1 % m, 0, 0, 1 % m)
    while e:
        if e & 1:
            r = mmul(r, a, m)
        a = mmul(a, a, m)
        e >>= 1
    return r


def mneg(a, m):
    return ((-a[0]) % m, (-a[1]) % m, (-a[2]) % m, (-a[3]) % m)


def mvec(a, v, m):
    "Matrix acting on a column vector from the left."
    return ((a[0] * v[0] + a[1] * v[1]) % m, (a[2] * v[0] + a[3] * v[1]) % m)


def _factorize(n):
    out = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def morder(a, mod):
    """Least k >= 1 with a**k = I.  Requires a invertible."""
    m = mod.modulus
    n = mod.exponent
    if n == 0:
        return 1
    if mdet(a, m) % mod.ell == 0:
        raise NotInvertibleError("matrix %r has non-unit determinant" % (a,))
    # The order divides |GL2(Z/m)|; peel primes off that exponent.
    e = mod.ell ** (4 * n - 3) * (mod.ell - 1) * (mod.ell ** 2 - 1)
    if mpow(a, e, m) != IDENTITY:
        raise ArithmeticError("order computation failed for %r mod %d" % (a, m))
    order = e
    for p in _factorize(e):
        while order % p == 0 and mpow(a, order // p, m) == IDENTITY:
            order //= p
    return order


def mreduce(a, m_target):
    return (a[0] % m_target, a[1] % m_target, a[2] % m_target, a[3] % m_target)


# ---------------------------------------------------------------------------
# public wrapper

@dataclass(frozen=True, order=True)
class ResidueMatrix:
    m11: int
    m12: int
    m21: int
    m22: int
    mod: PrimePowerModulus

    def __post_init__(self):
        m = self.mod.modulus
        for x in (self.m11, self.m12, self.m21, self.m22):
            if not 0 <= x < m:
                raise ValueError("entry %d not reduced into [0, %d)" % (x, m))

    @classmethod
    def make(cls, entries, mod):
        m = mod.modulus
        a, b, c, d = entries
        return cls(a % m, b % m, c % m, d % m, mod)

    @classmethod
    def identity(cls, mod):
        m = mod.modulus
        return cls(1 % m, 0, 0, 1 % m, mod)

    @classmethod
    def minus_identity(cls, mod):
        m = mod.modulus
        return cls((-1) % m, 0, 0, (-1) % m, mod)

    @property
    def entries(self):
        return (self.m11, self.m12, self.m21, self.m22)

    def is_invertible(self):
        return is_unit(mdet(self.entries, self.mod.modulus), self.mod.ell)

    def det(self):
        return mdet(self.entries, self.mod.modulus)

    def trace(self):
        return mtrace(self.entries, self.mod.modulus)

    def inv(self):
        if not self.is_invertible():
            raise NotInvertibleError("determinant %d is not a unit mod %d"
                                     % (self.det(), self.mod.ell))
        return ResidueMatrix.make(minv(self.entries, self.mod.modulus, self.mod.ell), self.mod)

    def order(self):
        return morder(self.entries, self.mod)

    def __mul__(self, other):
        if self.mod != other.mod:
            raise ModulusMismatchError("%s vs %s" % (self.mod, other.mod))
        return ResidueMatrix.make(mmul(self.entries, other.entries, self.mod.modulus), self.mod)

    def __neg__(self):
        return ResidueMatrix.make(mneg(self.entries, self.mod.modulus), self.mod)

    def reduce_to(self, target):
        if not target.divides(self.mod):
            raise ModulusMismatchError("%s does not divide %s" % (target, self.mod))
        return ResidueMatrix.make(mreduce(self.entries, target.modulus), target)

    def __str__(self):
        return "[%d %d; %d %d] mod %d" % (*self.entries, self.mod.modulus)


# Named operation surface.

def mat_mul(a, b):
    return a * b


def mat_det(a):
    return a.det()


def mat_inv(a):
    return a.inv()


def mat_order(a):
    return a.order()


def reduce_matrix(a, target):
    return a.reduce_to(target)
