from fractions import Fraction as F

import pytest

from delone.classify import classify
from delone.criteria import certify_auto, is_locally_antipodal
from delone.generators import (CrystalSpec, ShiftSequence, ShiftedRowSpec,
                               gen_coset_union, gen_crystal, gen_lattice,
                               gen_shifted_rows)
from delone.geometry import Isometry, Lattice
from delone.scalars import Radical, quadext
from delone.sets import delone_params

Z2 = Lattice(((F(1), F(0)), (F(0), F(1))))
ROT90 = Isometry(((F(0), F(-1)), (F(1), F(0))), (F(0), F(0)))


def test_gen_lattice():
    h = gen_lattice(Z2)
    assert h.mode == "periodic" and len(h.motif) == 1
    tri = gen_lattice(((F(1), F(0)), (F(1, 2), quadext(0, F(1, 2), 3))))
    assert delone_params(tri).R == Radical.sqrt(F(1, 3))
    rect = gen_lattice(((F(1, 5), F(0)), (F(0), F(1))))
    assert delone_params(rect).R == Radical.sqrt(F(26, 100))
    with pytest.raises(ValueError):
        gen_lattice(((F(1), F(0)), (F(2), F(0))))


def test_gen_lattice_extent_window():
    win = gen_lattice(Z2, extent=F(7))
    assert win.mode == "window"
    assert len(win.points) == 15 * 15


def test_gen_coset_union_validations():
    h = gen_coset_union(Z2, [(F(0), F(0)), (F(1), F(0)), (F(0), F(1))])
    assert len(h.motif) == 3
    assert is_locally_antipodal(h).all_antipodal
    with pytest.raises(ValueError):
        gen_coset_union(Z2, [(F(0), F(0)), (F(1), F(0)), (F(0), F(1)), (F(1), F(1))])
    with pytest.raises(ValueError):
        gen_coset_union(Z2, [(F(0), F(0)), (F(2), F(0))])  # equal mod 2*Lambda
    with pytest.raises(ValueError):
        gen_coset_union(Z2, [(F(1, 2), F(0))])  # not a lattice vector


def test_gen_coset_union_always_antipodal():
    for vecs in ([(F(0), F(0))],
                 [(F(0), F(0)), (F(1), F(1))],
                 [(F(0), F(0)), (F(1), F(0)), (F(1), F(1))]):
        h = gen_coset_union(Z2, vecs)
        assert is_locally_antipodal(h).all_antipodal


def test_gen_crystal_orbit():
    spec = CrystalSpec(lattice=Z2, generators=(ROT90,), motif=((F(3, 10), F(1, 10)),))
    h = gen_crystal(spec)
    assert len(h.motif) == 4
    trivial = CrystalSpec(lattice=Z2, generators=(), motif=((F(0), F(0)),))
    assert len(gen_crystal(trivial).motif) == 1


def test_gen_crystal_satisfies_criterion():
    spec = CrystalSpec(lattice=Z2, generators=(ROT90,), motif=((F(3, 10), F(1, 10)),))
    h = gen_crystal(spec)
    rep = certify_auto(h, "crystal")
    assert rep.verdict == "satisfied"
    assert rep.m <= len(h.motif)


def test_gen_crystal_rejects_non_crystallographic():
    s2 = quadext(0, F(1, 2), 2)
    rot45 = Isometry(((s2, -s2), (s2, s2)), (F(0), F(0)))
    with pytest.raises(ValueError):
        gen_crystal(CrystalSpec(lattice=Z2, generators=(rot45,),
                                motif=((F(0), F(0)),)))


def test_shift_sequence_validation():
    with pytest.raises(ValueError):
        ShiftSequence.parse("")
    with pytest.raises(ValueError):
        ShiftSequence.parse("RLX")
    assert str(ShiftSequence.parse("rllr")) == "RLLR"


def test_shifted_row_spec_validation():
    with pytest.raises(ValueError):
        ShiftedRowSpec(c=F(1, 5), sequence=ShiftSequence.parse("R"))  # c >= a/2
    with pytest.raises(ValueError):
        ShiftedRowSpec(a=F(2), b=F(1), sequence=ShiftSequence.parse("R"))  # a >= b


def test_shifted_rows_params(rows_aperiodic):
    params = delone_params(rows_aperiodic)
    assert params.r == Radical.of(F(1, 10))  # a/2
    assert params.R == Radical.sqrt(F(26, 100))  # sqrt(a^2+b^2)/2, as pre-shift
    pre = gen_lattice(((F(1, 5), F(0)), (F(0), F(1))))
    assert params.R == delone_params(pre).R


def test_all_sequences_share_b_clusters(rows_rrr, rows_rlrl, rows_aperiodic):
    for handle in (rows_rrr, rows_rlrl, rows_aperiodic):
        assert classify(handle, 1).n == 1


def test_shifted_rows_window_is_complete():
    h = gen_shifted_rows(ShiftedRowSpec(sequence=ShiftSequence.parse("RL"),
                                        extent=F(2)))
    lo, hi = h.bounds
    assert lo == (F(-2), F(0)) and hi == (F(2), F(5))
    # row 2 and 3 (couple 1) are shifted by +c = 1/20
    ys = {p[1] for p in h.points}
    assert ys == {F(k) for k in range(6)}
    row2 = sorted(p[0] for p in h.points if p[1] == 2)
    assert F(1, 20) in row2
    assert all((x - F(1, 20)) % F(1, 5) == 0 for x in row2)
