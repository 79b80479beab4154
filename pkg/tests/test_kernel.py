"""Parity between the compiled kernel and its pure-Python twin."""

import pytest
from hypothesis import given, strategies as st

from avgsat import _kernel
from avgsat._kernel import _pure
from avgsat.formula import ConnectiveTable

core = pytest.importorskip("avgsat._kernel._core")

STD = ConnectiveTable.standard()
AB = ConnectiveTable.all_binary()


def test_active_kernel_is_compiled():
    import os
    if os.environ.get("AVGSAT_PURE_KERNEL"):
        assert _kernel.ACTIVE == "pure"
    else:
        assert _kernel.ACTIVE == "cython"


def test_var_mask_definition():
    for n in range(1, 7):
        for i in range(n):
            mask = _pure.var_mask(i, n)
            for m in range(1 << n):
                assert ((mask >> m) & 1) == ((m >> i) & 1)


@pytest.mark.parametrize("table", [STD, AB], ids=["standard", "all-binary"])
@pytest.mark.parametrize("length", range(1, 8))
def test_enumerate_parity(table, length):
    for kwargs in ({}, {"alpha": 2}, {"compact": True}, {"want_masks": False},
                   {"exact_conns": 1}, {"exact_conns": 2, "alpha": 2, "compact": True}):
        a = core.enumerate_length(2, table.arities, table.truth_bits, length, **kwargs)
        b = _pure.enumerate_length(2, table.arities, table.truth_bits, length, **kwargs)
        assert a == b


@pytest.mark.parametrize("N", range(0, 3))
@pytest.mark.parametrize("canonical", [True, False])
def test_census_parity(N, canonical):
    args = (N + 1, AB.arities, AB.truth_bits, 2 * N + 1, N)
    assert core.census_length(*args, canonical=canonical) == \
        _pure.census_length(*args, canonical=canonical)


def test_census_parity_mixed_arities():
    t = ConnectiveTable.all_up_to(2)
    for length in range(1, 7):
        for ec in range(0, 3):
            assert core.census_length(2, t.arities, t.truth_bits, length, ec) == \
                _pure.census_length(2, t.arities, t.truth_bits, length, ec)


def test_enumerate_matches_count_dp():
    for length in range(1, 9):
        got = core.enumerate_length(2, STD.arities, STD.truth_bits, length,
                                    want_masks=False)
        assert len(got) == _pure.count_length(2, STD.arities, length)


def _random_codes(draw, n_vars):
    """Random valid RPN over the standard table, built bottom-up."""
    var = st.integers(min_value=0, max_value=n_vars - 1)
    tree = st.recursive(
        var,
        lambda sub: st.one_of(
            st.tuples(st.just(-1), sub),
            st.tuples(st.sampled_from([-2, -3]), sub, sub)),
        max_leaves=10)
    codes = []

    def walk(node):
        if isinstance(node, int):
            codes.append(node)
        else:
            for child in node[1:]:
                walk(child)
            codes.append(node[0])

    walk(draw(tree))
    return tuple(codes)


@st.composite
def rpn_codes(draw):
    return _random_codes(draw, draw(st.integers(min_value=1, max_value=4)))


@given(rpn_codes())
def test_eval_parity(codes):
    n = max((c for c in codes if c >= 0), default=0) + 1
    assert core.eval_mask(codes, n, STD.arities, STD.truth_bits) == \
        _pure.eval_mask(codes, n, STD.arities, STD.truth_bits)
    assert core.eval_mask_compact(codes, STD.arities, STD.truth_bits) == \
        _pure.eval_mask_compact(codes, STD.arities, STD.truth_bits)


@given(rpn_codes())
def test_eval_wide_assignment_parity(codes):
    # n = 7 exceeds the 64-bit fast path, exercising the fallback
    assert core.eval_mask(codes, 7, STD.arities, STD.truth_bits) == \
        _pure.eval_mask(codes, 7, STD.arities, STD.truth_bits)


def test_wide_enumeration_falls_back():
    got = core.enumerate_length(7, STD.arities, STD.truth_bits, 3)
    assert got == _pure.enumerate_length(7, STD.arities, STD.truth_bits, 3)
