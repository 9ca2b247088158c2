from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from stringlink.generate import CONSTRAINTS, band, clasp, gen_string_link, local_knot, reflect
from stringlink.lab import check_vanishing
from stringlink.milnor import linking_number
from stringlink.tangle import TangleDiagram, stack


@pytest.mark.parametrize("constraint", CONSTRAINTS)
def test_deterministic(constraint):
    a = gen_string_link(4, 20, 17, constraint)
    b = gen_string_link(4, 20, 17, constraint)
    assert a == b
    assert gen_string_link(4, 20, 18, constraint) != a


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 5), st.integers(0, 16), st.integers(0, 10**6), st.sampled_from(CONSTRAINTS))
def test_string_link_within_budget(n, length, seed, constraint):
    d = gen_string_link(n, length, seed, constraint)
    assert d.is_string_link
    assert d.crossing_count <= length + n * (n - 1) // 2


@settings(max_examples=40, deadline=None)
@given(st.integers(2, 4), st.integers(0, 10**6), st.sampled_from(["zero-linking", "commutator-built"]))
def test_unlinked_constraints(n, seed, constraint):
    assert check_vanishing(gen_string_link(n, 24, seed, constraint), 2)


@pytest.mark.parametrize("make", [band, clasp])
def test_band_generators(make):
    for i, j in [(1, 2), (1, 3), (2, 4), (1, 4)]:
        d = TangleDiagram(4, tuple(make(i, j)))
        assert d.is_string_link
        assert linking_number(d, i, j) == 1
        assert d.writhe() == 2
        assert all(linking_number(d, i, k) == 0 for k in range(i + 1, j))
        inv = TangleDiagram(4, tuple(make(i, j, -1)))
        assert linking_number(inv, i, j) == -1


def test_reflect_inverts():
    w = band(1, 3) + clasp(2, 4)
    d = TangleDiagram(4, tuple(w))
    inv = TangleDiagram(4, tuple(reflect(w)))
    prod = stack(d, inv)
    assert prod.is_string_link
    assert all(linking_number(prod, i, j) == 0 for i in range(1, 5) for j in range(i + 1, 5))


def test_local_knot_is_string():
    import random

    rng = random.Random(4)
    for _ in range(20):
        d = TangleDiagram(2, tuple(local_knot(rng.randint(1, 2), rng)))
        assert d.is_string_link
        assert linking_number(d, 1, 2) == 0


def test_bad_constraint():
    with pytest.raises(ValueError):
        gen_string_link(3, 10, 0, "borromean")
