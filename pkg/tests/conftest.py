from fractions import Fraction as F

import pytest

from delone import (ShiftSequence, ShiftedRowSpec, build_periodic,
                    gen_shifted_rows, honeycomb, square_lattice,
                    three_coset_fixture, triangular_lattice)


@pytest.fixture(scope="session")
def z2():
    return square_lattice()


@pytest.fixture(scope="session")
def tri():
    return triangular_lattice()


@pytest.fixture(scope="session")
def hc():
    return honeycomb()


@pytest.fixture(scope="session")
def fix3():
    return three_coset_fixture()


@pytest.fixture(scope="session")
def rect_02_10():
    return build_periodic(((F(1, 5), F(0)), (F(0), F(1))), [(F(0), F(0))])


@pytest.fixture(scope="session")
def rows_rrr():
    return gen_shifted_rows(ShiftedRowSpec(sequence=ShiftSequence.parse("RRRRRR")))


@pytest.fixture(scope="session")
def rows_rlrl():
    return gen_shifted_rows(ShiftedRowSpec(sequence=ShiftSequence.parse("RLRLRL")))


@pytest.fixture(scope="session")
def rows_aperiodic():
    return gen_shifted_rows(ShiftedRowSpec(sequence=ShiftSequence.parse("RLLRLR")))
