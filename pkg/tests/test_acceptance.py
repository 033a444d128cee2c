"""Acceptance gate: one test per criterion, exact equality throughout.

Each criterion prints a single `ACCEPTANCE <k>: PASS ...` line (run with
`pytest tests/test_acceptance.py -s` to watch them appear); a failing
assertion turns the line into the pytest failure itself.  The web-calculus
corpus and the ladder-relation sweep are shared module fixtures because the
equivariance criterion piggybacks on their matrices.
"""

import random
import time
from itertools import permutations
from math import factorial

import pytest

import qweb.linalg as L
from qweb import webs as W
from qweb.catalog import FAIL, PASS, Ranges, run_catalog
from qweb.evaluate import (
    hom_dim,
    psi_action,
    psi_flatten,
    psi_kills,
)
from qweb.scalars import Scalar
from qweb.sergeev import SergeevElt, clasp, e_lambda, gen_c, gen_s, staircase
from qweb.tableaux import (
    lr_coefficient,
    p_product_coefficients,
    staircase_tableau,
    strict_partitions,
    verify_staircase_construction,
)


def _announce(num, text, started):
    print(f"\nACCEPTANCE {num}: PASS — {text} ({time.time()-started:.1f}s)")


@pytest.fixture(scope="module")
def web_corpus():
    """Criteria 4-5 ranges: R1-R8 at k,l,h <= 3, j <= 2, n in {1,2,3}."""
    holder = []
    started = time.time()
    ranges = Ranges(equivariance=True, clasp_kmax=4)
    results = run_catalog(
        only="R1,R2,R3,R4,R5,R6,R7,R8", ranges=ranges, collector_out=holder
    )
    return results, holder[0], time.time() - started


@pytest.fixture(scope="module")
def ladder_corpus():
    """Criterion 6 ranges: (Q1)-(Q7) ladder images, m in {2,3}, entries <= 3, n <= 2."""
    holder = []
    started = time.time()
    ranges = Ranges(equivariance=True)
    results = run_catalog(only="R9", ranges=ranges, collector_out=holder)
    return results, holder[0], time.time() - started


def test_criterion_1_sergeev_relations():
    started = time.time()
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
    _announce(1, "defining relations, all generator pairs, k <= 6, symbolic", started)


def _random_elt(k, rng):
    terms = {}
    for _ in range(rng.randint(1, 3)):
        bits = rng.randrange(1 << k)
        p = list(range(1, k + 1))
        rng.shuffle(p)
        terms[(bits, tuple(p))] = Scalar.of(rng.randint(-3, 3))
    return SergeevElt.from_dict(k, terms)


def _ser_basis(k):
    out = []
    for bits in range(1 << k):
        for p in permutations(range(1, k + 1)):
            out.append(SergeevElt(k, (((bits, p), Scalar.of(1)),)))
    return out


def test_criterion_2_psi_homomorphism_and_kernel():
    started = time.time()
    rng = random.Random(20260808)
    for _ in range(200):
        k = rng.randint(1, 3)
        n = rng.randint(1, 2)
        x, y = _random_elt(k, rng), _random_elt(k, rng)
        assert psi_action(x * y, n) == L.mat_compose(psi_action(x, n), psi_action(y, n))
    for (n, k) in ((1, 1), (1, 2), (1, 3), (2, 2), (2, 3)):
        rank = L.row_reduce([psi_flatten(x, n) for x in _ser_basis(k)])
        injective = rank == (1 << k) * factorial(k)
        assert injective == (k < (n + 1) * (n + 2) // 2), (n, k, rank)
    for k in range(1, 6):
        for lam in strict_partitions(k):
            e = e_lambda(lam)
            for n in (1, 2, 3):
                assert psi_kills(e, n) == (len(lam) > n), (lam, n)
    _announce(2, "psi multiplicative (200 pairs); injectivity iff k < (n+1)(n+2)/2; "
                 "e_lambda kernel iff l(lambda) > n", started)


def test_criterion_3_quasi_idempotency():
    started = time.time()
    kappas = {}
    for k in range(1, 6):
        for lam in strict_partitions(k):
            e = e_lambda(lam)
            kappa = (e * e).proportionality(e)
            assert kappa is not None and bool(kappa), lam
            kappas[lam] = str(kappa)
    _announce(3, f"e_lambda quasi-idempotent for all SP(k), k <= 5; kappa recorded: {kappas}",
              started)


def test_criterion_4_clasps(web_corpus):
    started = time.time()
    for k in range(1, 7):
        cl = clasp(k)
        assert cl * cl == cl, k
        # closed formula: the symmetrizer has every permutation with weight 1/k!
        coeff = Scalar.of(1) / Scalar.of(factorial(k))
        assert len(cl.terms) == factorial(k)
        assert all(bits == 0 and v == coeff for (bits, _), v in cl.terms)
    results, _, _ = web_corpus
    recursion = [cr for cr in results if cr.name.startswith("R6/clasp-recursion")]
    ks = {cr.params["k"] for cr in recursion}
    ns = {cr.params["n"] for cr in recursion}
    assert {2, 3, 4} <= ks and {1, 2, 3} <= ns
    assert all(cr.status == PASS for cr in recursion)
    closed = [cr for cr in results if cr.name == "R6/clasp-closed-formula"]
    assert closed and all(cr.status == PASS for cr in closed)
    _announce(4, "Cl_k idempotent + closed formula (k <= 6 symbolic); "
                 "both recursions under the functor (k <= 4, n <= 3)", started)


def test_criterion_5_web_relation_corpus(web_corpus):
    results, col, elapsed = web_corpus
    web_only = [cr for cr in results if not cr.name.endswith("/equivariance")]
    failures = [cr for cr in web_only if cr.status == FAIL]
    assert not failures, failures[:5]
    unverified = [cr for cr in web_only if cr.status == "unverified-by-label"]
    labels = {cr.label for cr in unverified}
    assert labels == {
        "(associativity)", "(digon-removal)", "(dot-collision)", "(dots-past-merges)",
        "(dumbbell-relation)", "(square-switch)", "(square-switch-dots)",
        "(double-rungs-1)", "(double-rungs-2)",
    }
    assert all("reconstruction agrees" in cr.witness for cr in unverified)
    print(f"\nACCEPTANCE 5: PASS — R1-R8 corpus: {len(web_only)} checks, 0 failing, "
          f"{len(unverified)} unverified-by-label entries across {len(labels)} source "
          f"labels (displays live in an external include file) ({elapsed:.1f}s)")


def test_criterion_6_ladder_relations(ladder_corpus):
    results, col, elapsed = ladder_corpus
    ladder_only = [cr for cr in results if not cr.name.endswith("/equivariance")]
    failures = [cr for cr in ladder_only if cr.status == FAIL]
    assert not failures, failures[:5]
    covered = {cr.label for cr in ladder_only}
    assert covered == {"(Q1)", "(Q3)", "(Q4)", "(Q6)", "(Q7)"}
    print(f"\nACCEPTANCE 6: PASS — ladder images of the Q-relations: "
          f"{len(ladder_only)} checks, 0 failing; (Q5) distant commutations are "
          f"forced by the super-interchange law; no (Q2)-tagged display exists "
          f"in the source ({elapsed:.1f}s)")


def test_criterion_7_equivariance(web_corpus, ladder_corpus):
    started = time.time()
    wres, wcol, _ = web_corpus
    lres, lcol, _ = ladder_corpus
    eq = [cr for cr in wres + lres if cr.name.endswith("/equivariance")]
    assert eq, "equivariance piggyback produced no checks"
    bad = [cr for cr in eq if cr.status != PASS]
    assert not bad, bad[:5]
    checked = wcol.equivariance_checked + lcol.equivariance_checked
    skipped = wcol.equivariance_skipped + lcol.equivariance_skipped
    print(f"\nACCEPTANCE 7: PASS — {checked} matrices supercommute with the full "
          f"q(n) generator set; {skipped} matrices above the {Ranges().equivariance_cap}-"
          f"dimensional cap were not swept (pure-Python bound, see decisions ledger) "
          f"({time.time()-started:.1f}s)")


def test_criterion_8_main_theorem_surrogates():
    started = time.time()
    for n in (1, 2):
        lam = staircase(n)
        e = e_lambda(lam)
        assert psi_kills(e, n), f"Psi_{n}(e_lambda({n})) != 0"
    for (n, k) in ((1, 2), (1, 3), (2, 2)):
        dims = hom_dim(n, W.ups(*[1] * k), W.ups(*[1] * k))
        rank = L.row_reduce([psi_flatten(x, n) for x in _ser_basis(k)])
        assert dims[0] + dims[1] == rank, (n, k, dims, rank)
    _announce(8, "Psi_n(e_lambda(n)) = 0 at (n,k) = (1,3), (2,6); equivariant "
                 "hom dimension equals the psi-image rank at (1,2), (1,3), (2,2)", started)


def test_criterion_9_appendix():
    started = time.time()
    for n in (1, 2):
        report = verify_staircase_construction(n, 10)
        assert report and all(row["ok"] for row in report), n
    tab = staircase_tableau((8, 5, 4, 2), 2)
    word = "".join(str(-a) + "'" if a < 0 else str(a) for a in tab.word())
    assert word == "121'2'31'2'21'1111"
    checked = 0
    for a in range(0, 9):
        for lam in strict_partitions(a):
            for b in range(0, 9 - a):
                for nu in strict_partitions(b):
                    oracle = p_product_coefficients(lam, nu, 4)
                    for mu in strict_partitions(a + b):
                        if len(mu) > 4:
                            continue
                        assert lr_coefficient(lam, nu, mu) == oracle.get(mu, 0), (lam, nu, mu)
                        checked += 1
    _announce(9, f"staircase tableaux valid for n in {{1,2}}, |mu| <= 10; worked example "
                 f"word reproduced; Stembridge rule vs Schur-P oracle on {checked} "
                 f"coefficients", started)


def test_criterion_10_parser():
    started = time.time()
    from qweb.webs import WebParseError, WebTypeError, format_expr, parse_dsl, typecheck

    gens = [
        "id(^2)", "id(v1)", "dot(3)", "merge(1,2)", "split(2,2)", "cupL(1)", "capL(2)",
        "xr(1,1)", "xup(2,1)", "xl(1,2)", "cupR(2)", "capR(1)", "ddot(2)",
        "dmerge(1,1)", "dsplit(2,1)", "clasp(3)", "perm(3,1,2)",
        "rungL(2,2,1)", "rungR(3,1,1)", "explode(2,2)", "implode(3)",
    ]
    rng = random.Random(2024)

    def rand_expr(depth=0):
        if depth > 3 or rng.random() < 0.4:
            return rng.choice(gens)
        op = " ; " if rng.random() < 0.5 else " * "
        return f"({rand_expr(depth+1)}){op}({rand_expr(depth+1)})"

    corpus = gens + [rand_expr() for _ in range(100 - len(gens))]
    assert len(corpus) == 100
    for text in corpus:
        e1 = parse_dsl(text)
        f1 = format_expr(e1)
        assert parse_dsl(f1) == e1 and format_expr(parse_dsl(f1)) == f1
    ill_typed = [
        "dot(3) ; merge(1,1)",
        "capL(2) ; cupL(1)",
        "merge(2,2) ; split(1,1)",
        "(dot(1) * dot(1)) ; dot(2)",
        "xl(1,1) ; xl(1,1)",
    ]
    for text in ill_typed:
        with pytest.raises(WebTypeError):
            typecheck(parse_dsl(text))
    for text, pos in [("merge(1,", 8), ("bogus(1)", 0), ("merge(1,1) @ dot(1)", 11)]:
        with pytest.raises(WebParseError) as err:
            parse_dsl(text)
        assert err.value.pos == pos, text
    _announce(10, "100-expression corpus round-trips; ill-typed entries rejected; "
                  "parse errors carry positions", started)
