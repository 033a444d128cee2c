"""Symbolic arithmetic in the Sergeev algebra on k strands.

Elements are sparse combinations of normal-form words c_A * sigma with the
Clifford word (strictly increasing indices, c_i^2 = 1) to the left of the
permutation.  Clifford masks are stored as bitmasks (bit i-1 <-> c_i).
Permutations relabel Clifford letters with no sign (sigma c_i = c_{sigma(i)}
sigma); composition convention: (sigma * tau)(i) = sigma(tau(i)), tau first.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import permutations

from .scalars import ISQRT2, ONE, Scalar, format_scalar, parse_scalar


def perm_id(k: int) -> tuple:
    return tuple(range(1, k + 1))


def perm_mul(s: tuple, t: tuple) -> tuple:
    """(s*t)(i) = s(t(i))."""
    return tuple(s[t[i] - 1] for i in range(len(s)))


def perm_inv(s: tuple) -> tuple:
    out = [0] * len(s)
    for i, x in enumerate(s):
        out[x - 1] = i + 1
    return tuple(out)


def transposition(i: int, j: int, k: int) -> tuple:
    img = list(range(1, k + 1))
    img[i - 1], img[j - 1] = j, i
    return tuple(img)


def reduced_word(s: tuple) -> list:
    """A reduced word in adjacent transpositions for s (bubble sort)."""
    img = list(s)
    word = []
    changed = True
    while changed:
        changed = False
        for i in range(len(img) - 1):
            if img[i] > img[i + 1]:
                img[i], img[i + 1] = img[i + 1], img[i]
                word.append(i + 1)
                changed = True
    return word[::-1]


def mask_to_bits(mask) -> int:
    bits = 0
    for a in mask:
        bits |= 1 << (a - 1)
    return bits


def bits_to_mask(bits: int) -> tuple:
    out = []
    a = 1
    while bits:
        if bits & 1:
            out.append(a)
        bits >>= 1
        a += 1
    return tuple(out)


@lru_cache(maxsize=None)
def _cliff_sign(a_bits: int, b_bits: int) -> int:
    """Parity of #{(a, b) in A x B : a > b}; c_A c_B = (-1)^it c_{A xor B}."""
    sign = 0
    b = b_bits
    pos = 0
    while b:
        if b & 1:
            sign += bin(a_bits >> (pos + 1)).count("1")
        b >>= 1
        pos += 1
    return sign & 1


_RELABEL_CACHE: dict = {}


def _relabel(sigma: tuple, b_bits: int):
    """sigma c_B sigma^{-1} as (sign, bits): letters mapped, then resorted."""
    key = (sigma, b_bits)
    got = _RELABEL_CACHE.get(key)
    if got is not None:
        return got
    seq = [sigma[a - 1] for a in bits_to_mask(b_bits)]
    sign = 0
    for i in range(len(seq)):
        for j in range(i + 1, len(seq)):
            if seq[i] > seq[j]:
                sign += 1
    out = ((-1) ** (sign & 1), mask_to_bits(seq))
    _RELABEL_CACHE[key] = out
    return out


_PERM_MUL_CACHE: dict = {}


def _perm_mul_cached(s: tuple, t: tuple) -> tuple:
    key = (s, t)
    got = _PERM_MUL_CACHE.get(key)
    if got is None:
        got = perm_mul(s, t)
        _PERM_MUL_CACHE[key] = got
    return got


@dataclass(frozen=True)
class SergeevElt:
    """Sparse combination of (mask bits, perm) basis words on k strands."""

    k: int
    terms: tuple  # sorted tuple of ((bits, perm), Scalar)

    @staticmethod
    def from_dict(k: int, d: dict) -> "SergeevElt":
        return SergeevElt(k, tuple(sorted((key, v) for key, v in d.items() if v)))

    def term_dict(self) -> dict:
        return dict(self.terms)

    @staticmethod
    def zero(k: int) -> "SergeevElt":
        return SergeevElt(k, ())

    @staticmethod
    def one(k: int) -> "SergeevElt":
        return SergeevElt(k, (((0, perm_id(k)), ONE),))

    @staticmethod
    def basis(k: int, mask=(), perm=None) -> "SergeevElt":
        perm = perm_id(k) if perm is None else tuple(perm)
        return SergeevElt(k, (((mask_to_bits(mask), perm), ONE),))

    @staticmethod
    def scalar(k: int, x) -> "SergeevElt":
        x = Scalar.of(x)
        if not x:
            return SergeevElt.zero(k)
        return SergeevElt(k, (((0, perm_id(k)), x),))

    def is_zero(self) -> bool:
        return not self.terms

    def _check(self, other: "SergeevElt"):
        if self.k != other.k:
            raise ValueError(f"strand count mismatch: {self.k} != {other.k}")

    def __add__(self, other: "SergeevElt") -> "SergeevElt":
        self._check(other)
        d = self.term_dict()
        for key, v in other.terms:
            s = d.get(key)
            s = v if s is None else s + v
            if s:
                d[key] = s
            else:
                del d[key]
        return SergeevElt.from_dict(self.k, d)

    def __neg__(self) -> "SergeevElt":
        return SergeevElt(self.k, tuple((key, -v) for key, v in self.terms))

    def __sub__(self, other: "SergeevElt") -> "SergeevElt":
        return self + (-other)

    def scale(self, x) -> "SergeevElt":
        x = Scalar.of(x)
        if not x:
            return SergeevElt.zero(self.k)
        return SergeevElt(self.k, tuple((key, x * v) for key, v in self.terms))

    def _rational_int_terms(self):
        """(denominator, [(key, int)]) when all coefficients are rational, else None."""
        from math import lcm

        den = 1
        for _, v in self.terms:
            if v.b or v.c or v.d:
                return None
            den = lcm(den, v.a.denominator)
        return den, [(key, int(v.a * den)) for key, v in self.terms]

    def __mul__(self, other: "SergeevElt") -> "SergeevElt":
        self._check(other)
        left = self._rational_int_terms()
        right = other._rational_int_terms() if left is not None else None
        if left is not None and right is not None:
            return self._mul_int(left, right, other.k)
        out: dict = {}
        relabel = _relabel
        cliff = _cliff_sign
        pmul = _perm_mul_cached
        for (a_bits, sig), va in self.terms:
            for (b_bits, tau), vb in other.terms:
                rsign, c_bits = relabel(sig, b_bits)
                val = va * vb
                if rsign < 0:
                    val = -val
                if cliff(a_bits, c_bits):
                    val = -val
                key = (a_bits ^ c_bits, pmul(sig, tau))
                s = out.get(key)
                s = val if s is None else s + val
                if s:
                    out[key] = s
                else:
                    del out[key]
        return SergeevElt.from_dict(self.k, out)

    def _mul_int(self, left, right, k: int) -> "SergeevElt":
        den1, lterms = left
        den2, rterms = right
        out: dict = {}
        relabel = _relabel
        cliff = _cliff_sign
        pmul = _perm_mul_cached
        get = out.get
        for (a_bits, sig), va in lterms:
            for (b_bits, tau), vb in rterms:
                rsign, c_bits = relabel(sig, b_bits)
                val = va * vb
                if rsign < 0:
                    val = -val
                if cliff(a_bits, c_bits):
                    val = -val
                key = (a_bits ^ c_bits, pmul(sig, tau))
                s = get(key)
                out[key] = val if s is None else s + val
        den = den1 * den2
        d = {
            key: Scalar(Fraction(v, den)) for key, v in out.items() if v
        }
        return SergeevElt.from_dict(self.k, d)

    def parity(self):
        """0/1 if homogeneous (zero counts even), None if mixed."""
        par = None
        for (bits, _), _ in self.terms:
            p = bin(bits).count("1") & 1
            if par is None:
                par = p
            elif par != p:
                return None
        return 0 if par is None else par

    def proportionality(self, other: "SergeevElt"):
        """Scalar x with self = x*other, or None if not proportional."""
        self._check(other)
        if other.is_zero():
            return Scalar.of(0) if self.is_zero() else None
        d_self = self.term_dict()
        key = other.terms[0][0]
        if key not in d_self:
            return None
        ratio = d_self[key] / other.terms[0][1]
        return ratio if self == other.scale(ratio) else None


def gen_c(i: int, k: int) -> SergeevElt:
    if not 1 <= i <= k:
        raise IndexError(f"c_{i} out of range for k={k}")
    return SergeevElt.basis(k, mask=(i,))


def gen_s(i: int, k: int) -> SergeevElt:
    if not 1 <= i <= k - 1:
        raise IndexError(f"s_{i} out of range for k={k}")
    return SergeevElt.basis(k, perm=transposition(i, i + 1, k))


def tau(i: int, j: int, k: int) -> SergeevElt:
    """(1/sqrt2)(c_i - c_j) s_ij, the odd transposition-like element."""
    if not 1 <= i < j <= k:
        raise IndexError(f"tau_{i},{j} out of range for k={k}")
    t = transposition(i, j, k)
    return SergeevElt.from_dict(
        k, {(1 << (i - 1), t): ISQRT2, (1 << (j - 1), t): -ISQRT2}
    )


def pi(j: int, k: int) -> SergeevElt:
    """Odd Jucys-Murphy element pi_j = tau_{1,j} + ... + tau_{j-1,j}; pi_1 = 0."""
    if not 1 <= j <= k:
        raise IndexError(f"pi_{j} out of range for k={k}")
    out = SergeevElt.zero(k)
    for i in range(1, j):
        out = out + tau(i, j, k)
    return out


@lru_cache(maxsize=None)
def _pi_squared(j: int, k: int) -> SergeevElt:
    p = pi(j, k)
    return p * p


def is_strict_partition(parts) -> bool:
    parts = list(parts)
    return all(isinstance(p, int) and p > 0 for p in parts) and all(
        parts[i] > parts[i + 1] for i in range(len(parts) - 1)
    )


def canonical_columns(lam) -> tuple:
    """Shifted column of each square of the canonical filling, numbered row by row."""
    cols = []
    for r, length in enumerate(lam):
        cols.extend(range(r + 1, r + 1 + length))
    return tuple(cols)


def row_blocks(lam) -> list:
    """Index blocks of the rows of the canonical filling."""
    blocks = []
    start = 1
    for length in lam:
        blocks.append(list(range(start, start + length)))
        start += length
    return blocks


def addable_contents(shape) -> list:
    """Contents (col - row) of the addable cells of a strict shape."""
    shape = [s for s in shape if s]
    corners = []
    for j in range(len(shape)):
        if j == 0 or shape[j - 1] > shape[j] + 1:
            corners.append(shape[j])
    if not shape or shape[-1] > 1:
        corners.append(0)
    return corners


def _check_strict(lam, k):
    lam = tuple(lam)
    if not is_strict_partition(lam):
        raise ValueError(f"{lam} is not a strict partition")
    k = sum(lam) if k is None else k
    if sum(lam) != k:
        raise ValueError("partition size does not match strand count")
    return lam, k


def a_lambda(lam, k=None) -> SergeevElt:
    """Content-separating product along the canonical row-reading chain.

    One factor per wrong addable corner at each step; the factor annihilates
    the eigenspace pi_i^2 = -c(c+1)/2 of the rejected content c, so the
    product forces the canonical chain of shapes.  In this presentation
    (c_i^2 = 1) the eigenvalues of pi_i^2 are -c(c+1)/2 for the content
    c = col - row of the square occupied by i in a standard shifted tableau.
    """
    lam, k = _check_strict(lam, k)
    prefix = [0] * len(lam)
    out = SergeevElt.one(k)
    sq = 0
    for r, length in enumerate(lam):
        for c in range(length):
            sq += 1
            for ct in addable_contents(prefix):
                if ct == c:
                    continue
                eig = Scalar.of(Fraction(-ct * (ct + 1), 2))
                out = out * (SergeevElt.scalar(k, eig) - _pi_squared(sq, k))
            prefix[r] += 1
    return out


def b_lambda(lam, k=None) -> SergeevElt:
    """Sum over the row stabilizer of the canonical filling (Young subgroup)."""
    lam, k = _check_strict(lam, k)
    out: dict = {}
    for choice in _young_subgroup(row_blocks(lam), k):
        out[(0, choice)] = ONE
    return SergeevElt.from_dict(k, out)


def _young_subgroup(blocks, k):
    current = [perm_id(k)]
    for block in blocks:
        block_perms = []
        for images in permutations(block):
            img = list(range(1, k + 1))
            for pos, val in zip(block, images):
                img[pos - 1] = val
            block_perms.append(tuple(img))
        current = [perm_mul(p, q) for p in current for q in block_perms]
    return current


@lru_cache(maxsize=None)
def e_lambda(lam, k=None) -> SergeevElt:
    """Sergeev quasi-idempotent a_lambda * b_lambda."""
    return a_lambda(lam, k) * b_lambda(lam, k)


def clasp(k: int) -> SergeevElt:
    """Full symmetrizer (1/k!) sum of all permutations."""
    if k < 1:
        raise ValueError("clasp needs k >= 1")
    coeff = Scalar.of(Fraction(1, _factorial(k)))
    return SergeevElt.from_dict(k, {(0, p): coeff for p in permutations(range(1, k + 1))})


def _factorial(k: int) -> int:
    out = 1
    for i in range(2, k + 1):
        out *= i
    return out


def staircase(n: int) -> tuple:
    """lambda(n) = (n+1, n, ..., 2, 1)."""
    if n < 1:
        raise ValueError("staircase defined for n >= 1")
    return tuple(range(n + 1, 0, -1))


# -- the textual element format used by the CLI -------------------------------

_TERM_RE = re.compile(
    r"^\s*(?P<coeff>.*?)\s*(?:\*\s*)?(?:c\[(?P<mask>[\d,\s]*)\])?\s*(?:\*\s*)?(?:p\[(?P<perm>[\d,\s]*)\])?\s*$"
)


def format_elt(x: SergeevElt) -> str:
    if x.is_zero():
        return "0"
    parts = []
    for (bits, perm), v in x.terms:
        factors = [f"({format_scalar(v)})"]
        if bits:
            factors.append("c[" + ",".join(map(str, bits_to_mask(bits))) + "]")
        if perm != perm_id(x.k):
            factors.append("p[" + ",".join(map(str, perm)) + "]")
        parts.append(" * ".join(factors))
    return " + ".join(parts)


def parse_elt(text: str, k: int) -> SergeevElt:
    out = SergeevElt.zero(k)
    for raw in re.split(r"\+(?![^(]*\))", text):
        raw = raw.strip()
        if not raw or raw == "0":
            continue
        m = _TERM_RE.match(raw)
        if not m:
            raise ValueError(f"malformed Sergeev term {raw!r}")
        coeff_text = m.group("coeff").strip().strip("*").strip()
        if coeff_text.startswith("(") and coeff_text.endswith(")"):
            coeff_text = coeff_text[1:-1]
        coeff = parse_scalar(coeff_text) if coeff_text else ONE
        mask = (
            tuple(int(s) for s in m.group("mask").split(",") if s.strip())
            if m.group("mask") is not None
            else ()
        )
        perm = (
            tuple(int(s) for s in m.group("perm").split(",") if s.strip())
            if m.group("perm") is not None
            else perm_id(k)
        )
        if len(perm) != k:
            raise ValueError(f"permutation {perm} has wrong length for k={k}")
        out = out + SergeevElt.basis(k, mask, perm).scale(coeff)
    return out
