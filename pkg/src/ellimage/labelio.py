"""Label parsing, generator data files, validation, and the shipped tables.

Generator file grammar (one record per line, `#` starts a comment):

    label|modulus|m11,m12,m21,m22;m11,m12,m21,m22;...

Labels have the shape N.i.g.n (level, index, genus, disambiguator); N must
equal the modulus and be a prime power.  Lines are order-insensitive and
duplicate labels are rejected.  Matrix entries must be reduced
representatives in [0, modulus) and every generator must be invertible; an
empty generator field denotes the trivial group.

Filter reports serialize as tab-separated lines

    label<TAB>family<TAB>level<TAB>degree<TAB>status<TAB>reason
    RESULT<TAB>label<TAB>family<TAB>level:degree,...|empty

and parse back with parse_report_lines (comments pass through).
"""

from dataclasses import dataclass
from fractions import Fraction

from .errors import DataFileError, LabelError
from .gl2 import DEFAULT_CAP, MatrixGroup
from .modarith import PrimePowerModulus, ResidueMatrix
from .modcurves import genus_XG


def _prime_power_base(n):
    "Returns (p, e) with n = p**e, or None."
    if n < 2:
        return None
    p = 2
    while p * p <= n:
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            return (p, e) if n == 1 else None
        p += 1
    return (n, 1)


def parse_label(text):
    "N.i.g.n -> (N, i, g, n); N must be a prime power."
    parts = text.strip().split(".")
    if len(parts) != 4:
        raise LabelError("label %r does not have four dot-separated fields" % (text,))
    try:
        n, i, g, tiebreak = (int(p) for p in parts)
    except ValueError:
        raise LabelError("label %r has non-integer fields" % (text,)) from None
    if n < 1 or i < 1 or g < 0 or tiebreak < 1:
        raise LabelError("label %r has out-of-range fields" % (text,))
    if _prime_power_base(n) is None:
        raise LabelError("label level %d is not a prime power" % (n,))
    return n, i, g, tiebreak


@dataclass(frozen=True)
class ImageRecord:
    rszb_label: str
    modulus: PrimePowerModulus
    generators: tuple          # of ResidueMatrix
    sutherland_label: str | None = None

    def group(self):
        return MatrixGroup(self.modulus, list(self.generators), label=self.rszb_label)

    def to_line(self):
        gens = ";".join(",".join(str(e) for e in g.entries) for g in self.generators)
        return "%s|%d|%s" % (self.rszb_label, self.modulus.modulus, gens)


def _parse_record_line(line, lineno):
    fields = line.split("|")
    if len(fields) != 3:
        raise DataFileError("expected 3 |-separated fields, got %d" % len(fields), lineno)
    label, modtext, genstext = (f.strip() for f in fields)
    try:
        n, _, _, _ = parse_label(label)
    except LabelError as exc:
        raise DataFileError(str(exc), lineno) from None
    try:
        modulus = int(modtext)
    except ValueError:
        raise DataFileError("modulus %r is not an integer" % (modtext,), lineno) from None
    if modulus != n:
        raise DataFileError("label level %d does not match modulus %d" % (n, modulus), lineno)
    base = _prime_power_base(modulus)
    mod = PrimePowerModulus(base[0], base[1])
    gens = []
    for chunk in genstext.split(";"):
        chunk = chunk.strip()
        if not chunk:
            continue
        entries = chunk.split(",")
        if len(entries) != 4:
            raise DataFileError("matrix %r does not have 4 entries" % (chunk,), lineno)
        try:
            vals = tuple(int(e) for e in entries)
        except ValueError:
            raise DataFileError("non-integer entry in %r" % (chunk,), lineno) from None
        for v in vals:
            if not 0 <= v < modulus:
                raise DataFileError("entry %d out of range [0, %d)" % (v, modulus), lineno)
        mat = ResidueMatrix.make(vals, mod)
        if not mat.is_invertible():
            raise DataFileError("generator %r is not invertible" % (chunk,), lineno)
        gens.append(mat)
    return ImageRecord(label, mod, tuple(gens))


def read_generators_text(text):
    records = []
    seen = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        rec = _parse_record_line(line, lineno)
        if rec.rszb_label in seen:
            raise DataFileError("duplicate label %s" % rec.rszb_label, lineno)
        seen.add(rec.rszb_label)
        records.append(rec)
    return records


def read_generators_file(path):
    with open(path, "r", encoding="ascii") as fh:
        return read_generators_text(fh.read())


def serialize_records(records):
    return "\n".join(r.to_line() for r in records) + "\n"


@dataclass(frozen=True)
class ValidationReport:
    label: str
    level_ok: bool
    index_ok: bool
    genus_ok: bool
    computed: tuple     # (level, index, genus)

    @property
    def ok(self):
        return self.level_ok and self.index_ok and self.genus_ok

    def to_line(self):
        status = "ok" if self.ok else "MISMATCH"
        return "%s\t%s\tlevel=%d%s\tindex=%d%s\tgenus=%d%s" % (
            self.label, status,
            self.computed[0], "" if self.level_ok else "!",
            self.computed[1], "" if self.index_ok else "!",
            self.computed[2], "" if self.genus_ok else "!")


def validate_record(rec, cap=DEFAULT_CAP):
    "Recompute level, index and genus and compare with the label fields."
    n, i, g, _ = parse_label(rec.rszb_label)
    grp = rec.group()
    level = grp.level(cap).modulus
    index = grp.index_in_ambient(cap)
    genus = genus_XG(grp, cap).genus
    return ValidationReport(rec.rszb_label, level == n, index == i, genus == g,
                            (level, index, genus))


# ---------------------------------------------------------------------------
# filter report round-trip

def parse_report_lines(text):
    """Parse serialized filter reports back into dicts keyed by
    (label, family): {'pairs': [(level, degree, status, reason)],
    'final': [(level, degree)]}."""
    out = {}
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        fields = line.split("\t")
        if fields[0] == "RESULT":
            if len(fields) != 4:
                raise DataFileError("malformed RESULT line %r" % (line,))
            _, label, family, pairs = fields
            final = []
            if pairs != "empty":
                for chunk in pairs.split(","):
                    lv, deg = chunk.split(":")
                    final.append((int(lv), int(deg)))
            out.setdefault((label, family), {"pairs": [], "final": None})
            out[(label, family)]["final"] = final
        else:
            if len(fields) != 6:
                raise DataFileError("malformed report line %r" % (line,))
            label, family, level, degree, status, reason = fields
            out.setdefault((label, family), {"pairs": [], "final": None})
            out[(label, family)]["pairs"].append(
                (int(level), int(degree), status, reason))
    return out


# ---------------------------------------------------------------------------
# the rational isolated j-invariants (shipped tables)

@dataclass(frozen=True)
class KnownJRecord:
    j_invariant: Fraction
    cm: bool
    family: str
    ell: int | None            # None for CM rows: the statement is ell-free
    citation: str


_CM_J = (
    Fraction(0), Fraction(1728), Fraction(-3375), Fraction(8000),
    Fraction(-32768), Fraction(54000), Fraction(287496), Fraction(-884736),
    Fraction(-12288000), Fraction(16581375), Fraction(-884736000),
    Fraction(-147197952000), Fraction(-262537412640768000),
)

_CM_CITE = "CM point; singular moduli are isolated in every prime-power tower"


def _cm_rows(family):
    return tuple(KnownJRecord(j, True, family, None, _CM_CITE) for j in _CM_J)


GAMMA1_ISOLATED_J = _cm_rows("gamma1") + (
    KnownJRecord(Fraction(-7 * 11 ** 3), False, "gamma1", 37,
                 "degree-6 sporadic point on X1(37), van Hoeij"),
    KnownJRecord(Fraction(-7 * 137 ** 3 * 2083 ** 3), False, "gamma1", 37,
                 "degree-18 isolated point on X1(37)"),
)

GAMMA0_ISOLATED_J = _cm_rows("gamma0") + (
    KnownJRecord(Fraction(-11 * 131 ** 3), False, "gamma0", 11,
                 "rational point on X0(11)"),
    KnownJRecord(Fraction(-11 ** 2), False, "gamma0", 11,
                 "rational point on X0(11)"),
    KnownJRecord(Fraction(-(17 ** 2) * 101 ** 3, 2), False, "gamma0", 17,
                 "rational point on X0(17)"),
    KnownJRecord(Fraction(-17 * 373 ** 3, 2 ** 17), False, "gamma0", 17,
                 "rational point on X0(17)"),
    KnownJRecord(Fraction(-7 * 11 ** 3), False, "gamma0", 37,
                 "rational point on X0(37)"),
    KnownJRecord(Fraction(-7 * 137 ** 3 * 2083 ** 3), False, "gamma0", 37,
                 "rational point on X0(37)"),
)

assert len(GAMMA1_ISOLATED_J) == 15
assert len(GAMMA0_ISOLATED_J) == 19
