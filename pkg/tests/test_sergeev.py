import random
from itertools import permutations

import pytest

from qweb.scalars import Scalar
from qweb.sergeev import (
    SergeevElt,
    a_lambda,
    b_lambda,
    canonical_columns,
    clasp,
    e_lambda,
    format_elt,
    gen_c,
    gen_s,
    parse_elt,
    pi,
    staircase,
    tau,
)
from qweb.tableaux import strict_partitions


def test_defining_relations_exhaustive_k6():
    """Every generator-pair relation, all admissible indices, k <= 6."""
    for k in range(2, 7):
        one = SergeevElt.one(k)
        c = [None] + [gen_c(i, k) for i in range(1, k + 1)]
        s = [None] + [gen_s(i, k) for i in range(1, k)]
        for i in range(1, k + 1):
            assert c[i] * c[i] == one
            for j in range(1, k + 1):
                if i != j:
                    assert c[i] * c[j] == -(c[j] * c[i])
        for i in range(1, k):
            assert s[i] * s[i] == one
            assert s[i] * c[i] == c[i + 1] * s[i]
            assert s[i] * c[i + 1] == c[i] * s[i]
            for j in range(1, k):
                if abs(i - j) > 1:
                    assert s[i] * s[j] == s[j] * s[i]
            for j in range(1, k + 1):
                if j not in (i, i + 1):
                    assert s[i] * c[j] == c[j] * s[i]
        for i in range(1, k - 1):
            assert s[i] * s[i + 1] * s[i] == s[i + 1] * s[i] * s[i + 1]


def test_mixed_relation_general_sigma():
    # sigma c_i = c_{sigma(i)} sigma for non-adjacent permutations too
    k = 4
    for images in permutations(range(1, k + 1)):
        sigma = SergeevElt.basis(k, perm=images)
        for i in range(1, k + 1):
            assert sigma * gen_c(i, k) == gen_c(images[i - 1], k) * sigma


def test_normal_form_dimension():
    for k in range(1, 7):
        seen = set()
        for bits in range(1 << k):
            for p in permutations(range(1, k + 1)):
                seen.add((bits, p))
        import math

        assert len(seen) == 2 ** k * math.factorial(k)


def test_tau_and_pi():
    assert pi(1, 3).is_zero()
    t = tau(1, 2, 3)
    assert t.parity() == 1
    assert any(v.c for _, v in t.terms)  # the 1/sqrt2 coefficient
    p2 = pi(2, 2)
    assert p2 * p2 == -SergeevElt.one(2)
    with pytest.raises(IndexError):
        tau(2, 2, 3)


def test_canonical_columns():
    assert canonical_columns((4, 3, 1)) == (1, 2, 3, 4, 2, 3, 4, 3)
    assert canonical_columns((1,)) == (1,)
    assert canonical_columns((2, 1)) == (1, 2, 2)


def test_b_lambda_single_row_is_symmetric_group():
    k = 3
    b = b_lambda((3,))
    assert len(b.terms) == 6
    assert all(bits == 0 for (bits, _), _ in b.terms)


def test_quasi_idempotency_all_strict_partitions():
    for k in range(1, 6):
        for lam in strict_partitions(k):
            e = e_lambda(lam)
            kappa = (e * e).proportionality(e)
            assert kappa is not None and bool(kappa), (lam, kappa)
            assert e.parity() == 0


def test_e_lambda_rejects_non_strict():
    with pytest.raises(ValueError):
        a_lambda((2, 2))
    with pytest.raises(ValueError):
        e_lambda((1, 2))


def test_clasp_idempotent_and_small_values():
    assert clasp(1) == SergeevElt.one(1)
    expected = SergeevElt.one(2).scale(Scalar.of(1) / Scalar.of(2)) + gen_s(1, 2).scale(
        Scalar.of(1) / Scalar.of(2)
    )
    assert clasp(2) == expected
    for k in range(1, 7):
        cl = clasp(k)
        assert cl * cl == cl


def test_staircase():
    assert staircase(1) == (2, 1)
    assert staircase(2) == (3, 2, 1)
    with pytest.raises(ValueError):
        staircase(0)


def test_parity_bookkeeping():
    assert pi(3, 3).parity() == 1
    assert e_lambda((2, 1)).parity() == 0
    x = gen_c(1, 2) + SergeevElt.one(2)
    assert x.parity() is None


def test_format_parse_roundtrip():
    rng = random.Random(5)
    for _ in range(40):
        k = rng.randint(1, 4)
        terms = {}
        for _ in range(rng.randint(0, 4)):
            bits = rng.randrange(1 << k)
            p = list(range(1, k + 1))
            rng.shuffle(p)
            terms[(bits, tuple(p))] = Scalar.of(rng.randint(-5, 5))
        x = SergeevElt.from_dict(k, terms)
        assert parse_elt(format_elt(x), k) == x


def test_mul_strand_mismatch():
    with pytest.raises(ValueError):
        gen_c(1, 2) * gen_c(1, 3)
