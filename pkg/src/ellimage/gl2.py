"""Subgroups of GL2(Z/ell^n) given by generators.

Provides BFS enumeration, order/index/level via kernel-layer dimensions,
determinant image, -I handling, reduction and full preimage, conjugacy
search, and the named Cartan/Borel constructions.

Orders and levels are computed layer by layer: for H <= GL2(Z/ell^n) the
kernel filtration K_e = ker(GL2(ell^n) -> GL2(ell^e)) has elementary
abelian quotients K_e/K_{e+1} ~ M2(F_ell), and the image L_e of
H cap K_e in that quotient is the F_ell-span of the Schreier generators of
ker(H(ell^{e+1}) -> H(ell^e)).  Then |H| = |H(ell)| * prod ell^(dim L_e),
and the level is the smallest ell^d with L_e full for all e >= d.  This
avoids enumerating H at its own modulus, which matters for full preimages.
"""

from dataclasses import dataclass
from math import gcd

from .errors import (EnumerationCapError, ModulusMismatchError,
                     NotInvertibleError, SearchBudgetError)
from .modarith import (PrimePowerModulus, ResidueMatrix,
                       mdet, minv, mmul, mneg, morder, mpow, mreduce, mtrace)

DEFAULT_CAP = 10 ** 7


def ambient_order(mod, family="GL2"):
    """|GL2(Z/ell^n)| or |SL2(Z/ell^n)| for n >= 1."""
    ell, n = mod.ell, mod.exponent
    if n < 1:
        raise ValueError("ambient order undefined at level 1")
    if family == "GL2":
        return ell ** (4 * n - 3) * (ell - 1) * (ell ** 2 - 1)
    if family == "SL2":
        return ell ** (3 * n - 2) * (ell ** 2 - 1)
    raise ValueError("family must be GL2 or SL2, got %r" % (family,))


def mulclose(gens, m, cap=DEFAULT_CAP):
    """BFS closure of 4-tuple generators under multiplication mod m."""
    els = {(1 % m, 0, 0, 1 % m)}
    els.update(gens)
    bdy = sorted(els)
    while bdy:
        new = []
        for b in bdy:
            for g in gens:
                c = mmul(b, g, m)
                if c not in els:
                    els.add(c)
                    new.append(c)
                    if len(els) > cap:
                        raise EnumerationCapError(
                            "closure exceeded cap %d (mod %d)" % (cap, m))
        bdy = new
    return els


def unit_group_generators(mod):
    """Generators of (Z/ell^n)^x as a list of integers."""
    ell, n = mod.ell, mod.exponent
    m = mod.modulus
    if n == 0 or m <= 2:
        return []
    if ell == 2:
        if n == 2:
            return [3]
        return [m - 1, 5]
    # smallest primitive root mod ell, corrected to stay primitive mod ell^n
    r = 2
    while True:
        seen, x = set(), 1
        for _ in range(ell - 1):
            x = x * r % ell
            seen.add(x)
        if len(seen) == ell - 1:
            break
        r += 1
    if n >= 2 and pow(r, ell - 1, ell * ell) == 1:
        r += ell
    return [r % m]


def full_gl2(mod, label=None):
    """GL2(Z/ell^n) as an explicit MatrixGroup."""
    m = mod.modulus
    gens = [(1, 1, 0, 1), (1, 0, 1, 1)]
    gens += [(u, 0, 0, 1) for u in unit_group_generators(mod)]
    return MatrixGroup(mod, [g for g in gens], label=label)


class MatrixGroup:
    """A subgroup of GL2(Z/ell^n) given by modulus and generators.

    Immutable after construction; the element enumeration is computed once
    and cached (read-only thereafter, safe to share).
    """

    __slots__ = ("mod", "gens", "label", "_elements", "_order", "_layers", "_level")

    def __init__(self, mod, gens, label=None):
        self.mod = mod
        m = mod.modulus
        seen, canon = set(), []
        for g in gens:
            if isinstance(g, ResidueMatrix):
                if g.mod != mod:
                    raise ModulusMismatchError("generator %s not mod %s" % (g, mod))
                g = g.entries
            g = mreduce(g, m)
            if mod.exponent >= 1 and mdet(g, m) % mod.ell == 0:
                raise NotInvertibleError("generator %r not invertible mod %d" % (g, m))
            if g not in seen and g != (1 % m, 0, 0, 1 % m):
                seen.add(g)
                canon.append(g)
        self.gens = tuple(canon)
        self.label = label
        self._elements = None
        self._order = None
        self._layers = None
        self._level = None

    # -- basic views --------------------------------------------------

    @property
    def ell(self):
        return self.mod.ell

    def generator_matrices(self):
        return tuple(ResidueMatrix.make(g, self.mod) for g in self.gens)

    def identity_tuple(self):
        m = self.mod.modulus
        return (1 % m, 0, 0, 1 % m)

    def elements(self, cap=DEFAULT_CAP):
        "Sorted tuple of all elements (cached)."
        if self._elements is None:
            els = mulclose(self.gens, self.mod.modulus, cap)
            self._elements = tuple(sorted(els))
        return self._elements

    def element_set(self, cap=DEFAULT_CAP):
        return set(self.elements(cap))

    def __contains__(self, g):
        if isinstance(g, ResidueMatrix):
            g = g.entries
        return g in self.element_set()

    def __eq__(self, other):
        return (isinstance(other, MatrixGroup) and self.mod == other.mod
                and self.elements() == other.elements())

    def __hash__(self):
        return hash((self.mod, self.elements()))

    def __repr__(self):
        tag = self.label or "%d gens" % len(self.gens)
        return "MatrixGroup(mod %d, %s)" % (self.mod.modulus, tag)

    # -- layered order / level ----------------------------------------

    def _kernel_layers(self, cap=DEFAULT_CAP):
        """dims[e] = dim of the e-th kernel layer of the group, e = 1..n-1."""
        if self._layers is not None:
            return self._layers
        ell, n = self.ell, self.mod.exponent
        dims = {}
        for e in range(1, n):
            dims[e] = _layer_dim(self.gens, ell, e, cap)
        self._layers = dims
        return dims

    def order(self, cap=DEFAULT_CAP):
        if self._order is None:
            n = self.mod.exponent
            if n == 0:
                self._order = 1
            elif self._elements is not None:
                self._order = len(self._elements)
            else:
                ell = self.ell
                base = len(mulclose([mreduce(g, ell) for g in self.gens], ell, cap))
                dims = self._kernel_layers(cap)
                self._order = base * ell ** sum(dims.values())
        return self._order

    def index_in_ambient(self, cap=DEFAULT_CAP):
        total = ambient_order(self.mod)
        order = self.order(cap)
        if total % order:
            raise ArithmeticError("order %d does not divide ambient %d" % (order, total))
        return total // order

    def level(self, cap=DEFAULT_CAP):
        """Smallest ell^d such that the group is the full preimage of its
        reduction mod ell^d; the exponent-0 marker when the group is full."""
        if self._level is not None:
            return self._level
        ell, n = self.ell, self.mod.exponent
        if n == 0:
            self._level = self.mod
            return self._level
        dims = self._kernel_layers(cap)
        d = n
        for e in range(n - 1, 0, -1):
            if dims[e] == 4:
                d = e
            else:
                break
        if d == 1:
            base = len(mulclose([mreduce(g, ell) for g in self.gens], ell, cap))
            if base == ambient_order(PrimePowerModulus(ell, 1)):
                d = 0
        self._level = PrimePowerModulus(ell, d)
        return self._level

    # -- determinant, -I ----------------------------------------------

    def det_image(self, cap=DEFAULT_CAP):
        """(sorted tuple of unit residues generated by generator dets,
        surjectivity flag).  Equals the det set of the full enumeration."""
        m = self.mod.modulus
        if self.mod.exponent == 0:
            return (0,), True
        dets = [mdet(g, m) for g in self.gens]
        closure = {1}
        bdy = [1]
        while bdy:
            new = []
            for x in bdy:
                for d in dets:
                    y = x * d % m
                    if y not in closure:
                        closure.add(y)
                        new.append(y)
            bdy = new
        return tuple(sorted(closure)), len(closure) == self.mod.unit_count()

    def contains_minus_identity(self, cap=DEFAULT_CAP):
        m = self.mod.modulus
        return mneg(self.identity_tuple(), m) in self.element_set(cap)

    def adjoin_minus_identity(self, label=None):
        "Group generated by the generators together with -I; idempotent."
        m = self.mod.modulus
        return MatrixGroup(self.mod, list(self.gens) + [mneg(self.identity_tuple(), m)],
                           label=label if label is not None else self.label)

    # -- reduction / preimage / conjugation ----------------------------

    def reduce_to(self, target, cap=DEFAULT_CAP):
        "Generator-wise reduction to a divisor modulus; label dropped."
        if isinstance(target, int):
            target = PrimePowerModulus(self.ell, target)
        if not target.divides(self.mod):
            raise ModulusMismatchError("%s does not divide %s" % (target, self.mod))
        if target.exponent == 0:
            return MatrixGroup(target, [])
        mt = target.modulus
        return MatrixGroup(target, [mreduce(g, mt) for g in self.gens])

    def full_preimage(self, target, label=None):
        """Full preimage in GL2(Z/ell^t): lifted generators plus the kernel
        generators I + ell^s * E_ij."""
        if isinstance(target, int):
            target = PrimePowerModulus(self.ell, target)
        if not self.mod.divides(target):
            raise ModulusMismatchError("%s does not divide %s" % (self.mod, target))
        if target == self.mod:
            return MatrixGroup(target, list(self.gens), label=label)
        if self.mod.exponent == 0:
            return full_gl2(target, label=label)
        s = self.mod.modulus
        gens = [g for g in self.gens]
        gens += [(1 + s, 0, 0, 1), (1, s, 0, 1), (1, 0, s, 1), (1, 0, 0, 1 + s)]
        return MatrixGroup(target, gens, label=label)

    def conjugated_by(self, c, cap=DEFAULT_CAP):
        m = self.mod.modulus
        if isinstance(c, ResidueMatrix):
            c = c.entries
        ci = minv(c, m, self.ell)
        return MatrixGroup(self.mod, [mmul(mmul(c, g, m), ci, m) for g in self.gens])

    def small_generating_set(self, cap=DEFAULT_CAP):
        """Greedy small generating set chosen from the element enumeration;
        deterministic (highest order first, then lexicographic)."""
        els = self.elements(cap)
        m = self.mod.modulus
        ident = self.identity_tuple()
        if len(els) == 1:
            return ()
        ranked = sorted(els, key=lambda g: (-morder(g, self.mod), g))
        gens = []
        closure = {ident}
        for g in ranked:
            if g in closure:
                continue
            gens.append(g)
            closure = mulclose(gens, m, cap)
            if len(closure) == len(els):
                break
        if len(gens) >= len(self.gens) and self.gens:
            return self.gens
        return tuple(gens)


def _layer_dim(gens, ell, e, cap):
    """dim over F_ell of the image of (H cap K_e) in K_e/K_{e+1}.

    Schreier generators of ker(H(ell^{e+1}) -> H(ell^e)) are collected while
    BFS-ing the reduction mod ell^e with lifts mod ell^{e+1}; the kernel is
    elementary abelian, so the subgroup they generate is their span.  Once
    the span is full the BFS can stop early (it cannot grow further).
    """
    low = ell ** e
    high = low * ell
    gens_high = [mreduce(g, high) for g in gens]
    gens_low = [mreduce(g, low) for g in gens_high]
    ident_low = (1 % low, 0, 0, 1 % low)
    lift = {ident_low: (1, 0, 0, 1)}
    queue = [ident_low]
    basis = []

    def absorb(vec):
        v = list(vec)
        for b in basis:
            p = next(i for i in range(4) if b[i])
            if v[p]:
                f = v[p] * pow(b[p], -1, ell) % ell
                v = [(v[i] - f * b[i]) % ell for i in range(4)]
        if any(v):
            basis.append(tuple(v))
            return True
        return False

    while queue and len(basis) < 4:
        nxt = []
        for x in queue:
            tx = lift[x]
            for gh, gl in zip(gens_high, gens_low):
                y = mmul(x, gl, low)
                ty = mmul(tx, gh, high)
                if y not in lift:
                    lift[y] = ty
                    nxt.append(y)
                    if len(lift) > cap:
                        raise EnumerationCapError("layer BFS exceeded cap %d" % cap)
                else:
                    s = mmul(ty, minv(lift[y], high, ell), high)
                    vec = tuple(((s[i] - (1, 0, 0, 1)[i]) % high) // low % ell
                                for i in range(4))
                    if any(vec):
                        absorb(vec)
                        if len(basis) == 4:
                            break
            if len(basis) == 4:
                break
        queue = nxt
    return len(basis)


# ---------------------------------------------------------------------------
# named constructions

CARTAN_KINDS = ("split", "split-normalizer", "nonsplit", "nonsplit-normalizer",
                "borel", "section4-semidirect")


@dataclass(frozen=True)
class CartanSpec:
    kind: str
    modulus: PrimePowerModulus
    epsilon: int | None = None

    def __post_init__(self):
        if self.kind not in CARTAN_KINDS:
            raise ValueError("unknown kind %r" % (self.kind,))
        if self.modulus.exponent < 1:
            raise ValueError("modulus must have exponent >= 1")
        if self.kind == "section4-semidirect" and self.modulus.exponent != 2:
            raise ValueError("section4-semidirect requires exponent 2")
        if self.kind.startswith("nonsplit") or self.kind == "section4-semidirect":
            eps = self.resolved_epsilon()
            ell = self.modulus.ell
            if ell == 2:
                raise ValueError("nonsplit kinds need an odd prime")
            if pow(eps, (ell - 1) // 2, ell) != ell - 1:
                raise ValueError("epsilon %d is a quadratic residue mod %d" % (eps, ell))

    def resolved_epsilon(self):
        if self.epsilon is not None:
            return self.epsilon
        ell = self.modulus.ell
        for e in range(2, ell):
            if pow(e, (ell - 1) // 2, ell) == ell - 1:
                return e
        raise ValueError("no quadratic non-residue mod %d" % ell)


def _nonsplit_base_pair(ell, eps):
    "Smallest (a, b) whose Cartan matrix generates the mod-ell nonsplit torus."
    mod1 = PrimePowerModulus(ell, 1)
    full = ell * ell - 1
    for a in range(ell):
        for b in range(1, ell):
            g = (a, eps * b % ell, b, a)
            if mdet(g, ell) % ell and morder(g, mod1) == full:
                return a, b
    raise ArithmeticError("no generator found for nonsplit Cartan mod %d" % ell)


def _crt_exponent(coprime_order, ell):
    "Exponent e with e = 1 mod coprime_order and e = 0 mod ell."
    e = ell * pow(ell, -1, coprime_order)
    return e


def build_cartan(spec, cap=DEFAULT_CAP):
    """Construct the group described by a CartanSpec.

    nonsplit            {[a eps*b; b a]}, (a,b) != (0,0) mod ell
    nonsplit-normalizer adjoins [1 0; 0 -1]
    split               invertible diagonal matrices
    split-normalizer    adjoins the antidiagonal involution [0 1; 1 0]
    borel               invertible upper triangular matrices
    section4-semidirect lift of the nonsplit Cartan normalizer mod ell
                        extended by the kernel shapes I + ell*[a eps*b; -b c],
                        inside GL2(Z/ell^2); order asserted = 2(ell^2-1)ell^3
    """
    mod = spec.modulus
    ell, n = mod.ell, mod.exponent
    m = mod.modulus
    kind = spec.kind
    ugens = unit_group_generators(mod)

    if kind in ("split", "split-normalizer", "borel"):
        gens = [(u, 0, 0, 1) for u in ugens] + [(1, 0, 0, u) for u in ugens]
        if kind == "split-normalizer":
            gens.append((0, 1, 1, 0))
        if kind == "borel":
            gens.append((1, 1, 0, 1))
        return MatrixGroup(mod, gens, label="%s(%d)" % (kind, m))

    eps = spec.resolved_epsilon()
    a0, b0 = _nonsplit_base_pair(ell, eps)

    if kind in ("nonsplit", "nonsplit-normalizer"):
        gens = [(a0, eps * b0 % m, b0, a0)]
        if n >= 2:
            gens.append(((1 + ell) % m, 0, 0, (1 + ell) % m))
            gens.append((1, eps * ell % m, ell, 1))
        if kind == "nonsplit-normalizer":
            gens.append((1, 0, 0, m - 1))
        return MatrixGroup(mod, gens, label="%s(%d)" % (kind, m))

    # section4-semidirect, n == 2
    g0 = (a0, eps * b0 % m, b0, a0)
    teich = mpow(g0, _crt_exponent(ell * ell - 1, ell), m)
    assert morder(teich, mod) == ell * ell - 1
    sigma = (1, 0, 0, m - 1)
    shapes = [(1, 0, 0, 0), (0, eps, -1 % ell, 0), (0, 0, 0, 1)]
    kgens = [((1 + ell * s[0]) % m, ell * s[1] % m, ell * s[2] % m, (1 + ell * s[3]) % m)
             for s in shapes]
    group = MatrixGroup(mod, [teich, sigma] + kgens,
                        label="section4-semidirect(%d)" % m)
    expected = 2 * (ell * ell - 1) * ell ** 3
    got = len(group.elements(cap))
    if got != expected:
        raise ArithmeticError("semidirect construction has order %d, expected %d"
                              % (got, expected))
    return group


# ---------------------------------------------------------------------------
# conjugacy

def _snf_transform(rows):
    """Smith form of an integer matrix given as a list of row tuples.

    Returns (diag, T) with S*A*T diagonal for unimodular S (discarded) and T;
    only T is needed to parameterize nullspaces.
    """
    A = [list(r) for r in rows]
    nrows = len(A)
    ncols = 4
    T = [[1 if i == j else 0 for j in range(ncols)] for i in range(ncols)]
    diag = []

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]

    def swap_cols(i, j):
        for r in A:
            r[i], r[j] = r[j], r[i]
        T[i], T[j] = T[j], T[i]

    def addmul_row(dst, src, f):
        for k in range(ncols):
            A[dst][k] += f * A[src][k]

    def addmul_col(dst, src, f):
        for r in A:
            r[dst] += f * r[src]
        for k in range(ncols):
            T[dst][k] += f * T[src][k]

    r = 0
    while r < min(nrows, ncols):
        # locate a nonzero pivot of least absolute value
        best = None
        for i in range(r, nrows):
            for j in range(r, ncols):
                if A[i][j] and (best is None or abs(A[i][j]) < abs(A[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        swap_rows(r, best[0])
        swap_cols(r, best[1])
        while True:
            done = True
            for i in range(r + 1, nrows):
                if A[i][r]:
                    addmul_row(i, r, -(A[i][r] // A[r][r]))
                    if A[i][r]:
                        swap_rows(r, i)
                        done = False
            for j in range(r + 1, ncols):
                if A[r][j]:
                    addmul_col(j, r, -(A[r][j] // A[r][r]))
                    if A[r][j]:
                        swap_cols(r, j)
                        done = False
            if done:
                break
        diag.append(abs(A[r][r]))
        r += 1
    # T is stored transposed (row k = column k of the accumulated transform),
    # so row k is the basis direction for solution coordinate k.
    cols = [tuple(T[k]) for k in range(ncols)]
    return diag, cols


def _conj_equation_rows(g, h, m):
    """Rows of the linear system c*g - h*c = 0 in the entries of c."""
    g11, g12, g21, g22 = g
    h11, h12, h21, h22 = h
    # unknowns (c11, c12, c21, c22); one row per matrix entry of c*g - h*c
    return [
        (g11 - h11, g21, -h12, 0),
        (g12, g22 - h11, 0, -h12),
        (-h21, 0, g11 - h22, g21),
        (0, -h21, g12, g22 - h22),
    ]


def _nullspace_span(rows, m):
    "Spanning vectors of {x : A x = 0 mod m} for a stacked row list."
    if not rows:
        return [(1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1)]
    diag, cols = _snf_transform(rows)
    span = []
    for k in range(4):
        if k < len(diag) and diag[k]:
            scale = m // gcd(diag[k], m)
        else:
            scale = 1
        if scale % m == 0 and m > 1:
            continue
        vec = tuple((cols[k][i] * scale) % m for i in range(4))
        if any(vec):
            span.append(vec)
    return span


def _unit_solution(span, m, ell):
    """An invertible matrix in the span (as a 4-tuple mod m), or None.

    Invertibility only depends on the reduction mod ell, so the mod-ell span
    is searched and any witness is lifted back through the combination.
    """
    reduced = []
    for v in span:
        reduced.append(tuple(x % ell for x in v))
    # echelonize, remembering combinations of original span vectors
    basis = []
    for idx, v in enumerate(reduced):
        combo = [0] * len(span)
        combo[idx] = 1
        v = list(v)
        for b, bc in basis:
            p = next(i for i in range(4) if b[i])
            if v[p]:
                f = v[p] * pow(b[p], -1, ell) % ell
                v = [(v[i] - f * b[i]) % ell for i in range(4)]
                combo = [(combo[i] - f * bc[i]) % ell for i in range(len(span))]
        if any(v):
            basis.append((tuple(v), combo))
    k = len(basis)
    if k == 0:
        return None
    # walk all F_ell combinations of the basis
    coeffs = [0] * k
    total = ell ** k
    for step in range(1, total):
        i = 0
        while True:
            coeffs[i] = (coeffs[i] + 1) % ell
            if coeffs[i]:
                break
            i += 1
        cand = [0, 0, 0, 0]
        for c, (b, _) in zip(coeffs, basis):
            if c:
                for i in range(4):
                    cand[i] = (cand[i] + c * b[i]) % ell
        if (cand[0] * cand[3] - cand[1] * cand[2]) % ell:
            combo = [0] * len(span)
            for c, (_, bc) in zip(coeffs, basis):
                if c:
                    for i in range(len(span)):
                        combo[i] = (combo[i] + c * bc[i]) % ell
            out = [0, 0, 0, 0]
            for f, v in zip(combo, span):
                if f:
                    for i in range(4):
                        out[i] = (out[i] + f * v[i]) % m
            return tuple(out)
    return None


def _invariant_key(g, mod):
    m = mod.modulus
    return (morder(g, mod), mdet(g, m), mtrace(g, m))


def _conjugating_matrix(source_gens, target_elements, mod, budget):
    """Backtracking search for c with c*g_i*c^-1 = (an element of the target)
    for every source generator; returns the witness 4-tuple or None.

    Candidate images are bucketed by (order, det, trace); partial assignments
    are pruned by solvability of the linear system c*g = h*c over Z/m with an
    invertible c.
    """
    m, ell = mod.modulus, mod.ell
    buckets = {}
    for h in target_elements:
        buckets.setdefault(_invariant_key(h, mod), []).append(h)
    gens = sorted(source_gens, key=lambda g: (-morder(g, mod), g))
    nodes = 0

    def recurse(i, rows):
        nonlocal nodes
        if i == len(gens):
            span = _nullspace_span(rows, m)
            return _unit_solution(span, m, ell)
        g = gens[i]
        if g[1] == 0 and g[2] == 0 and g[0] == g[3]:
            # scalars are conjugation-invariant
            if g not in target_elements:
                return None
            return recurse(i + 1, rows)
        for h in buckets.get(_invariant_key(g, mod), ()):
            nodes += 1
            if nodes > budget:
                raise SearchBudgetError("conjugacy search exceeded %d nodes" % budget)
            rows2 = rows + _conj_equation_rows(g, h, m)
            span = _nullspace_span(rows2, m)
            if len(span) >= 3 or _unit_solution(span, m, ell) is not None:
                got = recurse(i + 1, rows2)
                if got is not None:
                    return got
        return None

    return recurse(0, [])


def is_conjugate(g, h, cap=DEFAULT_CAP, budget=500_000):
    """Whether some c in GL2 conjugates g onto h; returns (bool, witness).

    Prunes with order, determinant image, and the element order/trace
    multisets before the generator-image backtracking.
    """
    if g.mod != h.mod:
        raise ModulusMismatchError("groups live over different moduli")
    mod = g.mod
    if g.order(cap) != h.order(cap):
        return False, None
    if g.det_image(cap) != h.det_image(cap):
        return False, None
    ge, he = g.elements(cap), h.elements(cap)
    m = mod.modulus
    gkeys = sorted(_invariant_key(x, mod) for x in ge)
    hkeys = sorted(_invariant_key(x, mod) for x in he)
    if gkeys != hkeys:
        return False, None
    gens = g.small_generating_set(cap)
    c = _conjugating_matrix(gens, set(he), mod, budget)
    if c is None:
        return False, None
    ci = minv(c, m, mod.ell)
    conj = {mmul(mmul(c, x, m), ci, m) for x in ge}
    assert conj == set(he)
    return True, ResidueMatrix.make(c, mod)


def conjugate_into(h, big, cap=DEFAULT_CAP, budget=500_000):
    """Whether some GL2-conjugate of h is a subgroup of big; returns
    (bool, witness, index of the image in big)."""
    if h.mod != big.mod:
        raise ModulusMismatchError("groups live over different moduli")
    mod = h.mod
    ho, bo = h.order(cap), big.order(cap)
    if bo % ho:
        return False, None, None
    he, be = h.elements(cap), big.elements(cap)
    hkeys = {}
    for x in he:
        k = _invariant_key(x, mod)
        hkeys[k] = hkeys.get(k, 0) + 1
    bkeys = {}
    for x in be:
        k = _invariant_key(x, mod)
        bkeys[k] = bkeys.get(k, 0) + 1
    for k, cnt in hkeys.items():
        if bkeys.get(k, 0) < cnt:
            return False, None, None
    gens = h.small_generating_set(cap)
    c = _conjugating_matrix(gens, set(be), mod, budget)
    if c is None:
        return False, None, None
    m = mod.modulus
    ci = minv(c, m, mod.ell)
    bset = set(be)
    # c conjugates every generator into big, so the whole conjugate lands there.
    for x in he:
        assert mmul(mmul(c, x, m), ci, m) in bset
    return True, ResidueMatrix.make(c, mod), bo // ho
