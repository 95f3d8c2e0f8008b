from fractions import Fraction

import pytest

from ellimage.errors import DataFileError, LabelError
from ellimage.labelio import (GAMMA0_ISOLATED_J, GAMMA1_ISOLATED_J,
                              ImageRecord, parse_label, read_generators_text,
                              serialize_records, validate_record)
from ellimage.modarith import PrimePowerModulus, ResidueMatrix


def test_parse_label_examples():
    assert parse_label("49.196.9.1") == (49, 196, 9, 1)
    assert parse_label("17.72.1.2") == (17, 72, 1, 2)
    with pytest.raises(LabelError):
        parse_label("49.196.9")
    with pytest.raises(LabelError):
        parse_label("6.5.0.1")   # 6 is not a prime power
    with pytest.raises(LabelError):
        parse_label("49.x.9.1")


def test_read_generators_grammar():
    text = "# comment\n49.196.9.1|49|1,0,37,48;20,4,18,21\n"
    recs = read_generators_text(text)
    assert len(recs) == 1
    assert recs[0].rszb_label == "49.196.9.1"
    assert len(recs[0].generators) == 2
    assert recs[0].generators[0].entries == (1, 0, 37, 48)


def test_empty_file():
    assert read_generators_text("") == []
    assert read_generators_text("# only comments\n\n") == []


def test_range_error_carries_line_number():
    with pytest.raises(DataFileError) as err:
        read_generators_text("# pad\n49.196.9.1|49|49,0,0,1\n")
    assert "line 2" in str(err.value)


def test_grammar_errors():
    with pytest.raises(DataFileError):
        read_generators_text("49.196.9.1|49\n")
    with pytest.raises(DataFileError):
        read_generators_text("49.196.9.1|48|1,0,0,1\n")     # modulus mismatch
    with pytest.raises(DataFileError):
        read_generators_text("49.196.9.1|49|1,0,0\n")       # arity
    with pytest.raises(DataFileError):
        read_generators_text("49.196.9.1|49|7,0,0,7\n")     # not invertible
    with pytest.raises(DataFileError):
        read_generators_text("49.196.9.1|49|1,0,0,1\n49.196.9.1|49|1,0,0,1\n")


def test_round_trip(records):
    text = serialize_records(records)
    again = read_generators_text(text)
    assert [r.rszb_label for r in again] == [r.rszb_label for r in records]
    assert serialize_records(again) == text


def test_every_shipped_record_validates(records, special_records):
    for rec in records + special_records:
        rep = validate_record(rec)
        assert rep.ok, rep.to_line()


def test_validation_catches_injected_faults(record_map):
    good = record_map["17.72.1.2"]
    wrong_genus = ImageRecord("17.72.2.2", good.modulus, good.generators)
    rep = validate_record(wrong_genus)
    assert not rep.genus_ok and rep.level_ok and rep.index_ok
    wrong_index = ImageRecord("17.73.1.2", good.modulus, good.generators)
    rep = validate_record(wrong_index)
    assert not rep.index_ok
    # a level-7 group labeled as level 49
    m49 = PrimePowerModulus(7, 2)
    gens = tuple(ResidueMatrix.make((1, 1, 0, 1), m49) for _ in range(1))
    pre = record_map["7.8.0.1"].group().full_preimage(m49)
    rec = ImageRecord("49.%d.%d.1" % (pre.index_in_ambient(), 0), m49,
                      tuple(ResidueMatrix.make(t, m49) for t in pre.gens))
    rep = validate_record(rec)
    assert not rep.level_ok


def test_known_j_tables():
    assert len(GAMMA1_ISOLATED_J) == 15
    assert len(GAMMA0_ISOLATED_J) == 19
    assert sum(1 for r in GAMMA1_ISOLATED_J if r.cm) == 13
    assert sum(1 for r in GAMMA0_ISOLATED_J if r.cm) == 13
    g1 = {r.j_invariant for r in GAMMA1_ISOLATED_J}
    g0 = {r.j_invariant for r in GAMMA0_ISOLATED_J}
    assert g1 <= g0
    assert Fraction(-7 * 11 ** 3) in g1
    assert Fraction(-17 * 373 ** 3, 2 ** 17) in g0
    for r in GAMMA0_ISOLATED_J:
        if not r.cm:
            assert r.ell in (11, 17, 37)
            assert r.j_invariant.denominator in (1, 2, 2 ** 17)


def test_sutherland_labels_opaque(records):
    # the parser never infers structure from auxiliary tags
    for rec in records:
        assert rec.sutherland_label is None
