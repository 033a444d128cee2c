import random

import pytest

from qweb import webs as W
from qweb.webs import (
    ObjectWord,
    WebParseError,
    WebTypeError,
    dot_parity,
    downs,
    format_expr,
    parse_dsl,
    typecheck,
    ups,
)


def test_typecheck_generators():
    assert typecheck(W.Merge(2, 3)) == (ups(2, 3), ups(5))
    assert typecheck(W.Compose(W.Merge(1, 2), W.Split(1, 2))) == (ups(3), ups(3))
    assert typecheck(W.CupL(2)) == (W.UNIT_WORD, ObjectWord((("u", 2), ("d", 2))))
    assert typecheck(W.CapL(2)) == (ObjectWord((("d", 2), ("u", 2))), W.UNIT_WORD)
    assert typecheck(W.XL(2, 3)) == (
        ObjectWord((("d", 3), ("u", 2))),
        ObjectWord((("u", 2), ("d", 3))),
    )
    assert typecheck(W.RCross(2, 3)) == (
        ObjectWord((("u", 2), ("d", 3))),
        ObjectWord((("d", 3), ("u", 2))),
    )


def test_typecheck_rejects_bad_composition():
    bad = W.Compose(W.Dot(3), W.Tensor(W.Id(ups(1)), W.Id(ups(1))))
    with pytest.raises(WebTypeError) as err:
        typecheck(bad)
    assert "Compose" in str(err.value) or err.value.path == ()


def test_zero_thickness_normalized_away():
    assert W.merge(2, 0) == W.Id(ups(2))
    assert W.split(0, 3) == W.Id(ups(3))
    assert ups(1, 0, 2) == ups(1, 2)
    assert W.rung_left(1, 2, 0) == W.Id(ups(1, 2))


def test_negative_means_zero():
    assert W.contains_negative(W.rung_left(1, 1, 2))
    assert not W.contains_negative(W.rung_left(1, 1, 1))


def test_parse_examples():
    e = parse_dsl("merge(1,1) ; split(1,1)")
    assert e == W.Compose(W.Merge(1, 1), W.Split(1, 1))
    e = parse_dsl("dot(1) * id(^1)")
    assert e == W.Tensor(W.Dot(1), W.Id(ups(1)))
    e = parse_dsl("xl(2,3)")
    assert e == W.XL(2, 3)
    e = parse_dsl("id(v2)")
    assert e == W.Id(downs(2))


def test_parse_error_position():
    with pytest.raises(WebParseError) as err:
        parse_dsl("merge(1,1) ; bogus(2)")
    assert err.value.pos == 13
    with pytest.raises(WebParseError):
        parse_dsl("merge(1,")
    with pytest.raises(WebParseError):
        parse_dsl("perm(1,1)")


def test_dot_parity():
    assert dot_parity(W.Dot(2)) == 1
    assert dot_parity(W.Compose(W.Dot(1), W.Dot(1))) == 0
    assert dot_parity(W.Tensor(W.Dot(1), W.Id(ups(1)))) == 1
    assert dot_parity(W.DDot(2)) == 1
    assert dot_parity(W.XUp(2, 2)) == 0


GENS = [
    "id(^2)", "id(v1)", "dot(3)", "merge(1,2)", "split(2,2)", "cupL(1)", "capL(2)",
    "xr(1,1)", "xup(2,1)", "xl(1,2)", "cupR(2)", "capR(1)", "ddot(2)",
    "dmerge(1,1)", "dsplit(2,1)", "clasp(3)", "perm(3,1,2)",
    "rungL(2,2,1)", "rungR(3,1,1)", "explode(2,2)", "implode(3)",
]


def _random_expr(rng, depth=0):
    if depth > 3 or rng.random() < 0.4:
        return rng.choice(GENS)
    if rng.random() < 0.5:
        return f"({_random_expr(rng, depth + 1)}) ; ({_random_expr(rng, depth + 1)})"
    return f"({_random_expr(rng, depth + 1)}) * ({_random_expr(rng, depth + 1)})"


def test_roundtrip_corpus_100():
    """parse -> format -> parse is a fixpoint on a 100-expression corpus."""
    rng = random.Random(2024)
    corpus = GENS + [_random_expr(rng) for _ in range(100 - len(GENS))]
    assert len(corpus) == 100
    for text in corpus:
        e1 = parse_dsl(text)
        f1 = format_expr(e1)
        e2 = parse_dsl(f1)
        assert e2 == e1, text
        assert format_expr(e2) == f1, text


def test_typecheck_fuzz_rejects_ill_typed():
    """Random compositions either typecheck or raise a positioned error."""
    rng = random.Random(99)
    raised = 0
    total = 0
    for _ in range(300):
        text = _random_expr(rng)
        expr = parse_dsl(text)
        total += 1
        try:
            typecheck(expr)
        except WebTypeError as err:
            raised += 1
            assert isinstance(err.path, tuple)
    assert 0 < raised < total  # the fuzz hits both outcomes


def test_mirror_involution():
    exprs = [
        W.rung_left(2, 3, 1),
        W.Compose(W.Merge(1, 2), W.Split(1, 2)),
        W.Tensor(W.Dot(2), W.Id(ups(1))),
    ]
    for e in exprs:
        assert W.mirror(W.mirror(e)) == e


def test_pi_generator_shapes():
    expr = W.pi_generator(2, "hbar", 1, 0, (2, 1))
    dom, cod = typecheck(expr)
    assert dom == ups(2, 1) and cod == ups(2, 1)
    expr = W.pi_generator(2, "e", 1, 1, (2, 1))
    dom, cod = typecheck(expr)
    assert dom == ups(2, 1) and cod == ups(3)  # the 0-strand is normalized away
    zero = W.pi_generator(2, "e", 1, 2, (2, 1))
    assert isinstance(zero, W.Zero)
