"""Typed web-diagram expressions, their textual DSL, and derived constructors.

Webs are expression trees (never planar graphs): generators combined by
Compose and Tensor.  `Compose(top, bottom)` is top∘bottom, bottom applied
first; the DSL text `A ; B` parses to Compose(A, B).  A diagram's parity is
its dot count mod 2.  Zero-thickness strands are normalized away; a negative
edge label anywhere makes the whole web the zero morphism.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache

from .sergeev import reduced_word

UP, DOWN = "u", "d"

_INTERNED_IDS: set = set()


def interned(fn):
    """Memoize a builder and register its outputs for evaluator-side caching.

    Expression trees returned by interned builders are shared objects, so the
    evaluator may key per-label result caches on their identity; ad-hoc trees
    assembled inline stay uncached and cost nothing to retain.
    """
    cached = lru_cache(maxsize=None)(fn)

    def wrapper(*args):
        out = cached(*args)
        _INTERNED_IDS.add(id(out))
        return out

    wrapper.__name__ = fn.__name__
    wrapper.__doc__ = fn.__doc__
    return wrapper


def is_interned(expr) -> bool:
    return id(expr) in _INTERNED_IDS


@dataclass(frozen=True)
class ObjectWord:
    strands: tuple  # of (orientation, thickness)

    def __post_init__(self):
        object.__setattr__(
            self, "strands", tuple((o, t) for o, t in self.strands if t != 0)
        )

    def __add__(self, other: "ObjectWord") -> "ObjectWord":
        return ObjectWord(self.strands + other.strands)

    def all_up(self) -> bool:
        return all(o == UP for o, _ in self.strands)

    def has_negative(self) -> bool:
        return any(t < 0 for _, t in self.strands)

    def __str__(self) -> str:
        if not self.strands:
            return "1"
        return " ".join(
            ("^" if o == UP else "v") + str(t) for o, t in self.strands
        )


def ups(*ks) -> ObjectWord:
    return ObjectWord(tuple((UP, k) for k in ks))


def downs(*ks) -> ObjectWord:
    return ObjectWord(tuple((DOWN, k) for k in ks))


UNIT_WORD = ObjectWord(())


class WebTypeError(TypeError):
    """Type mismatch; carries the path to the offending sub-expression."""

    def __init__(self, msg: str, path: tuple = ()):
        super().__init__(f"{msg} (at {'/'.join(path) or 'root'})")
        self.path = path


# --- core nodes ---------------------------------------------------------------

@dataclass(frozen=True)
class Id:
    word: ObjectWord


@dataclass(frozen=True)
class Dot:
    k: int


@dataclass(frozen=True)
class Merge:
    k: int
    l: int


@dataclass(frozen=True)
class Split:
    k: int
    l: int


@dataclass(frozen=True)
class CupL:
    k: int


@dataclass(frozen=True)
class CapL:
    k: int


@dataclass(frozen=True)
class RCross:
    """Rightward crossing generator; evaluated as the inverse of XL(k, l)."""

    k: int
    l: int


@dataclass(frozen=True)
class Compose:
    top: object
    bottom: object


@dataclass(frozen=True)
class Tensor:
    left: object
    right: object


@dataclass(frozen=True)
class Zero:
    domain: ObjectWord
    codomain: ObjectWord


# --- derived nodes (expanded at evaluation) ------------------------------------

@dataclass(frozen=True)
class XUp:
    """Upward crossing of thick strands; (1/k!l!) explode-permute-implode."""

    k: int
    l: int


@dataclass(frozen=True)
class XL:
    """Leftward crossing, the cup/cap composite of the paper; type vl ^k -> ^k vl."""

    k: int
    l: int


@dataclass(frozen=True)
class CupR:
    k: int


@dataclass(frozen=True)
class CapR:
    k: int


@dataclass(frozen=True)
class DDot:
    k: int


@dataclass(frozen=True)
class DMerge:
    k: int
    l: int


@dataclass(frozen=True)
class DSplit:
    k: int
    l: int


@dataclass(frozen=True)
class DCross:
    k: int
    l: int


@dataclass(frozen=True)
class Clasp:
    k: int


@dataclass(frozen=True)
class Perm:
    images: tuple


@dataclass(frozen=True)
class RungL:
    k: int
    l: int
    j: int


@dataclass(frozen=True)
class RungR:
    k: int
    l: int
    j: int


@dataclass(frozen=True)
class Explode:
    thicknesses: tuple


@dataclass(frozen=True)
class Implode:
    thicknesses: tuple


# --- smart constructors ---------------------------------------------------------

def identity(word: ObjectWord):
    return Id(word)


def merge(k: int, l: int):
    if k == 0 or l == 0:
        return Id(ups(k + l))
    return Merge(k, l)


def split(k: int, l: int):
    if k == 0 or l == 0:
        return Id(ups(k + l))
    return Split(k, l)


def seq(*parts):
    """Compose diagrams in application order: seq(f, g) = g∘f (f at the bottom)."""
    expr = parts[0]
    for nxt in parts[1:]:
        expr = Compose(nxt, expr)
    return expr


def tens(*parts):
    expr = parts[0]
    for nxt in parts[1:]:
        expr = Tensor(expr, nxt)
    return expr


@interned
def rung_left(k: int, l: int, j: int):
    """j-rung from the right strand to the left: ^k ^l -> ^{k+j} ^{l-j}."""
    if j == 0:
        return Id(ups(k, l))
    return RungL(k, l, j)


@interned
def rung_right(k: int, l: int, j: int):
    if j == 0:
        return Id(ups(k, l))
    return RungR(k, l, j)


@interned
def dotted_rung_left(k: int, l: int, j: int):
    """RungL with a dot on the j-labeled rung edge."""
    return Compose(
        Tensor(merge(k, j), Id(ups(l - j))),
        Compose(
            tens(Id(ups(k)), Dot(j), Id(ups(l - j))) if l - j != 0 else Tensor(Id(ups(k)), Dot(j)),
            Tensor(Id(ups(k)), split(j, l - j)),
        ),
    )


@interned
def dotted_rung_right(k: int, l: int, j: int):
    return Compose(
        Tensor(Id(ups(k - j)), merge(j, l)),
        Compose(
            tens(Id(ups(k - j)), Dot(j), Id(ups(l))) if k - j != 0 else Tensor(Dot(j), Id(ups(l))),
            Tensor(split(k - j, j), Id(ups(l))),
        ),
    )


@interned
def merge_all(k: int):
    """Left-comb merge of k 1-strands into one k-strand."""
    if k == 1:
        return Id(ups(1))
    return Compose(Merge(1, k - 1), Tensor(Id(ups(1)), merge_all(k - 1)))


@interned
def split_all(k: int):
    if k == 1:
        return Id(ups(1))
    return Compose(Tensor(Id(ups(1)), split_all(k - 1)), Split(1, k - 1))


@interned
def crossing_at(j: int, k: int):
    """The 1-1 crossing of strands j, j+1 inside ^1^k."""
    parts = []
    if j > 1:
        parts.append(Id(ups(*[1] * (j - 1))))
    parts.append(XUp(1, 1))
    if j + 1 < k:
        parts.append(Id(ups(*[1] * (k - j - 1))))
    return tens(*parts)


def perm_web_expr(images: tuple, word=None):
    """Wiring of adjacent 1-1 crossings realizing the place permutation."""
    images = tuple(images)
    if word is None:
        word = tuple(reduced_word(images))
    return _perm_web_cached(images, tuple(word))


@interned
def _perm_web_cached(images: tuple, word: tuple):
    k = len(images)
    expr = Id(ups(*[1] * k))
    for j in word:
        expr = Compose(expr, crossing_at(j, k))
    return expr


@interned
def explode_expr(thicknesses: tuple):
    return tens(*[split_all(a) for a in thicknesses])


@interned
def implode_expr(thicknesses: tuple):
    return tens(*[merge_all(a) for a in thicknesses])


def block_transposition(k: int, l: int) -> tuple:
    """Place permutation moving the first k 1-strands past the last l."""
    return tuple([i + l for i in range(1, k + 1)] + list(range(1, l + 1)))


@interned
def xup_expansion(k: int, l: int):
    """Definition of the thick crossing: explode, block-permute, implode (scaled)."""
    sigma = block_transposition(k, l)
    return Compose(
        Compose(implode_expr((l, k)), perm_web_expr(sigma)),
        explode_expr((k, l)),
    )


@interned
def xl_expansion(k: int, l: int):
    """Leftward crossing composite: cup on the right, thick crossing, cap on the left."""
    return seq(
        tens(Id(downs(l)), Id(ups(k)), CupL(l)),
        tens(Id(downs(l)), XUp(k, l), Id(downs(l))),
        tens(CapL(l), Id(ups(k)), Id(downs(l))),
    )


@interned
def cupr_expr(k: int):
    return Compose(RCross(k, k), CupL(k))


@interned
def capr_expr(k: int):
    return Compose(CapL(k), RCross(k, k))


@interned
def ddot_expr(k: int):
    """Downward dot: zigzag conjugate of the upward dot."""
    return seq(
        Tensor(Id(downs(k)), CupL(k)),
        tens(Id(downs(k)), Dot(k), Id(downs(k))),
        Tensor(CapL(k), Id(downs(k))),
    )


@interned
def dmerge_expr(k: int, l: int):
    """Downward merge v(k+l) -> vk vl via the rainbow of cups and caps."""
    kl = k + l
    return seq(
        tens(Id(downs(kl)), CupL(l)),
        tens(Id(downs(kl)), Id(ups(l)), CupL(k), Id(downs(l))),
        tens(Id(downs(kl)), Merge(l, k), Id(downs(k)), Id(downs(l))),
        tens(CapL(kl), Id(downs(k)), Id(downs(l))),
    )


@interned
def dsplit_expr(k: int, l: int):
    """Downward split vk vl -> v(k+l)."""
    kl = k + l
    return seq(
        tens(Id(downs(k)), Id(downs(l)), CupL(kl)),
        tens(Id(downs(k)), Id(downs(l)), Split(l, k), Id(downs(kl))),
        tens(Id(downs(k)), CapL(l), Id(ups(k)), Id(downs(kl))),
        tens(CapL(k), Id(downs(kl))),
    )


@interned
def dcross_expr(k: int, l: int):
    """Downward crossing vk vl -> vl vk conjugated from the upward one."""
    return seq(
        tens(Id(downs(k)), Id(downs(l)), CupL(k)),
        tens(Id(downs(k)), Id(downs(l)), Id(ups(k)), CupL(l), Id(downs(k))),
        tens(Id(downs(k)), Id(downs(l)), XUp(k, l), Id(downs(l)), Id(downs(k))),
        tens(Id(downs(k)), CapL(l), Id(ups(k)), Id(downs(l)), Id(downs(k))),
        tens(CapL(k), Id(downs(l)), Id(downs(k))),
    )


@interned
def clasp_expansion(k: int):
    return Compose(split_all(k), merge_all(k))


_PI_GENS = ("e", "f", "ebar", "fbar", "hbar")


@interned
def pi_generator(m: int, gen: str, i: int, j: int, lam: tuple):
    """Ladder image of a divided-power generator on the weight word ^lam.

    gen in {e, f, ebar, fbar} uses strands i, i+1 with rung thickness j;
    hbar puts a dot on strand i (j ignored).
    """
    lam = tuple(lam)
    if len(lam) != m:
        raise ValueError("weight length != m")
    if gen not in _PI_GENS:
        raise ValueError(f"unknown generator {gen!r}")
    if gen == "hbar":
        if not 1 <= i <= m:
            raise IndexError("hbar strand out of range")
        if lam[i - 1] == 0:
            return Zero(ups(*lam), ups(*lam))
        parts = []
        if i > 1:
            parts.append(Id(ups(*lam[: i - 1])))
        parts.append(Dot(lam[i - 1]))
        if i < m:
            parts.append(Id(ups(*lam[i:])))
        return tens(*parts)
    if not 1 <= i <= m - 1:
        raise IndexError("rung position out of range")
    a, b = lam[i - 1], lam[i]
    if gen == "e":
        core, new = rung_left(a, b, j), (a + j, b - j)
    elif gen == "f":
        core, new = rung_right(a, b, j), (a - j, b + j)
    elif gen == "ebar":
        core, new = dotted_rung_left(a, b, j), (a + j, b - j)
    else:
        core, new = dotted_rung_right(a, b, j), (a - j, b + j)
    if min(new) < 0:
        return Zero(ups(*lam), ObjectWord(tuple((UP, t) for t in lam[: i - 1] + new + lam[i + 1 :])))
    parts = []
    if i > 1:
        parts.append(Id(ups(*lam[: i - 1])))
    parts.append(core)
    if i + 1 < m:
        parts.append(Id(ups(*lam[i + 1 :])))
    return tens(*parts)


# --- typecheck -------------------------------------------------------------------

def typecheck(expr, path: tuple = ()):
    """Infer (domain, codomain); raise WebTypeError with the offending path."""
    if isinstance(expr, Id):
        return expr.word, expr.word
    if isinstance(expr, Dot):
        w = ups(expr.k)
        return w, w
    if isinstance(expr, Merge):
        return ups(expr.k, expr.l), ups(expr.k + expr.l)
    if isinstance(expr, Split):
        return ups(expr.k + expr.l), ups(expr.k, expr.l)
    if isinstance(expr, CupL):
        return UNIT_WORD, ObjectWord(((UP, expr.k), (DOWN, expr.k)))
    if isinstance(expr, CapL):
        return ObjectWord(((DOWN, expr.k), (UP, expr.k))), UNIT_WORD
    if isinstance(expr, RCross):
        return (
            ObjectWord(((UP, expr.k), (DOWN, expr.l))),
            ObjectWord(((DOWN, expr.l), (UP, expr.k))),
        )
    if isinstance(expr, XL):
        return (
            ObjectWord(((DOWN, expr.l), (UP, expr.k))),
            ObjectWord(((UP, expr.k), (DOWN, expr.l))),
        )
    if isinstance(expr, XUp):
        return ups(expr.k, expr.l), ups(expr.l, expr.k)
    if isinstance(expr, CupR):
        return UNIT_WORD, ObjectWord(((DOWN, expr.k), (UP, expr.k)))
    if isinstance(expr, CapR):
        return ObjectWord(((UP, expr.k), (DOWN, expr.k))), UNIT_WORD
    if isinstance(expr, DDot):
        w = downs(expr.k)
        return w, w
    if isinstance(expr, DMerge):
        return downs(expr.k + expr.l), downs(expr.k, expr.l)
    if isinstance(expr, DSplit):
        return downs(expr.k, expr.l), downs(expr.k + expr.l)
    if isinstance(expr, DCross):
        return downs(expr.k, expr.l), downs(expr.l, expr.k)
    if isinstance(expr, Clasp):
        w = ups(*[1] * expr.k)
        return w, w
    if isinstance(expr, Perm):
        w = ups(*[1] * len(expr.images))
        return w, w
    if isinstance(expr, RungL):
        return ups(expr.k, expr.l), ups(expr.k + expr.j, expr.l - expr.j)
    if isinstance(expr, RungR):
        return ups(expr.k, expr.l), ups(expr.k - expr.j, expr.l + expr.j)
    if isinstance(expr, Explode):
        return ups(*expr.thicknesses), ups(*[1] * sum(expr.thicknesses))
    if isinstance(expr, Implode):
        return ups(*[1] * sum(expr.thicknesses)), ups(*expr.thicknesses)
    if isinstance(expr, Zero):
        return expr.domain, expr.codomain
    if isinstance(expr, Compose):
        td, tc = typecheck(expr.top, path + ("Compose.top",))
        bd, bc = typecheck(expr.bottom, path + ("Compose.bottom",))
        if bc != td:
            raise WebTypeError(
                f"compose mismatch: bottom codomain {bc} != top domain {td}", path
            )
        return bd, tc
    if isinstance(expr, Tensor):
        ld, lc = typecheck(expr.left, path + ("Tensor.left",))
        rd, rc = typecheck(expr.right, path + ("Tensor.right",))
        return ld + rd, lc + rc
    raise WebTypeError(f"unknown node {type(expr).__name__}", path)


def dot_parity(expr) -> int:
    """Diagram parity: number of dots mod 2."""
    if isinstance(expr, (Dot, DDot)):
        return 1
    if isinstance(expr, Compose):
        return (dot_parity(expr.top) + dot_parity(expr.bottom)) % 2
    if isinstance(expr, Tensor):
        return (dot_parity(expr.left) + dot_parity(expr.right)) % 2
    return 0


def contains_negative(expr) -> bool:
    """True when some edge label is negative (zero morphism convention)."""
    if isinstance(expr, Id):
        return any(t < 0 for _, t in expr.word.strands)
    if isinstance(expr, (Dot, DDot, CupL, CapL, CupR, CapR, Clasp)):
        return expr.k < 0
    if isinstance(expr, (Merge, Split, DMerge, DSplit, XUp, XL, RCross, DCross)):
        return expr.k < 0 or expr.l < 0
    if isinstance(expr, (RungL, RungR)):
        d, c = typecheck(expr)
        return expr.j < 0 or d.has_negative() or c.has_negative()
    if isinstance(expr, (Explode, Implode)):
        return any(t < 0 for t in expr.thicknesses)
    if isinstance(expr, Compose):
        return contains_negative(expr.top) or contains_negative(expr.bottom)
    if isinstance(expr, Tensor):
        return contains_negative(expr.left) or contains_negative(expr.right)
    return False


def mirror(expr):
    """Reflect a web across a vertical axis (tensor factors reversed)."""
    if isinstance(expr, Id):
        return Id(ObjectWord(tuple(reversed(expr.word.strands))))
    if isinstance(expr, Merge):
        return Merge(expr.l, expr.k)
    if isinstance(expr, Split):
        return Split(expr.l, expr.k)
    if isinstance(expr, RungL):
        return RungR(expr.l, expr.k, expr.j)
    if isinstance(expr, RungR):
        return RungL(expr.l, expr.k, expr.j)
    if isinstance(expr, XUp):
        return XUp(expr.l, expr.k)
    if isinstance(expr, Compose):
        return Compose(mirror(expr.top), mirror(expr.bottom))
    if isinstance(expr, Tensor):
        return Tensor(mirror(expr.right), mirror(expr.left))
    if isinstance(expr, (Dot, Clasp, Zero)):
        return expr
    raise ValueError(f"mirror not defined for {type(expr).__name__}")


# --- DSL parser and formatter ------------------------------------------------------

class WebParseError(ValueError):
    def __init__(self, text: str, pos: int, reason: str):
        super().__init__(f"{reason} at position {pos}: {text[pos:pos+20]!r}")
        self.pos = pos


_TOKEN_RE = re.compile(r"\s*(?:(?P<punct>[();,*^]|v(?=-?\d))|(?P<name>[a-zA-Z]+)|(?P<int>-?\d+))")


def _tokenize(text: str):
    tokens = []
    pos = 0
    while pos < len(text):
        if text[pos].isspace():
            pos += 1
            continue
        m = _TOKEN_RE.match(text, pos)
        if not m or m.end() == pos:
            raise WebParseError(text, pos, "unexpected character")
        kind = m.lastgroup
        tokens.append((kind, m.group(kind), m.start(kind)))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self, kind=None, value=None):
        tok = self.tokens[self.i]
        if kind is not None and tok[0] != kind or value is not None and tok[1] != value:
            raise WebParseError(self.text, tok[2], f"expected {value or kind}")
        self.i += 1
        return tok

    def parse(self):
        expr = self.expr()
        tok = self.peek()
        if tok[0] != "end":
            raise WebParseError(self.text, tok[2], "trailing input")
        return expr

    def expr(self):
        parts = [self.term()]
        while self.peek()[1] == ";":
            self.take(value=";")
            parts.append(self.term())
        expr = parts[-1]
        for nxt in reversed(parts[:-1]):
            expr = Compose(nxt, expr)
        return expr

    def term(self):
        parts = [self.factor()]
        while self.peek()[1] == "*":
            self.take(value="*")
            parts.append(self.factor())
        return tens(*parts)

    def factor(self):
        tok = self.peek()
        if tok[1] == "(":
            self.take(value="(")
            inner = self.expr()
            self.take(value=")")
            return inner
        if tok[0] != "name":
            raise WebParseError(self.text, tok[2], "expected generator name")
        return self.generator()

    def ints(self, n=None):
        self.take(value="(")
        vals = []
        while True:
            tok = self.take("int")
            vals.append(int(tok[1]))
            if self.peek()[1] == ",":
                self.take(value=",")
            else:
                break
        self.take(value=")")
        if n is not None and len(vals) != n:
            raise WebParseError(self.text, self.peek()[2], f"expected {n} arguments")
        return vals

    def generator(self):
        name_tok = self.take("name")
        name = name_tok[1]
        if name == "id":
            self.take(value="(")
            orient_tok = self.take("punct")
            if orient_tok[1] not in ("^", "v"):
                raise WebParseError(self.text, orient_tok[2], "expected ^ or v")
            k = int(self.take("int")[1])
            self.take(value=")")
            return Id(ups(k) if orient_tok[1] == "^" else downs(k))
        simple = {
            "dot": (1, lambda a: Dot(*a)),
            "merge": (2, lambda a: Merge(*a)),
            "split": (2, lambda a: Split(*a)),
            "cupL": (1, lambda a: CupL(*a)),
            "capL": (1, lambda a: CapL(*a)),
            "xr": (2, lambda a: RCross(*a)),
            "xup": (2, lambda a: XUp(*a)),
            "xl": (2, lambda a: XL(*a)),
            "cupR": (1, lambda a: CupR(*a)),
            "capR": (1, lambda a: CapR(*a)),
            "ddot": (1, lambda a: DDot(*a)),
            "dmerge": (2, lambda a: DMerge(*a)),
            "dsplit": (2, lambda a: DSplit(*a)),
            "clasp": (1, lambda a: Clasp(*a)),
            "rungL": (3, lambda a: RungL(*a)),
            "rungR": (3, lambda a: RungR(*a)),
        }
        if name in simple:
            n, build = simple[name]
            return build(self.ints(n))
        if name == "perm":
            images = tuple(self.ints())
            if sorted(images) != list(range(1, len(images) + 1)):
                raise WebParseError(self.text, name_tok[2], "not a permutation")
            return Perm(images)
        if name == "explode":
            return Explode(tuple(self.ints()))
        if name == "implode":
            return Implode(tuple(self.ints()))
        raise WebParseError(self.text, name_tok[2], f"unknown generator {name!r}")


def parse_dsl(text: str):
    return _Parser(text).parse()


def format_expr(expr, parent="expr") -> str:
    if isinstance(expr, Compose):
        chain = []
        node = expr
        while isinstance(node, Compose):
            chain.append(node.top)
            node = node.bottom
        chain.append(node)
        body = " ; ".join(format_expr(c, "term") for c in chain)
        return f"({body})" if parent != "expr" else body
    if isinstance(expr, Tensor):
        chain = []
        node = expr
        while isinstance(node, Tensor):
            chain.append(node.right)
            node = node.left
        chain.append(node)
        body = " * ".join(format_expr(c, "factor") for c in reversed(chain))
        return f"({body})" if parent == "factor" else body
    if isinstance(expr, Id):
        if len(expr.word.strands) == 0:
            return "id(^0)"
        parts = [
            f"id({'^' if o == UP else 'v'}{t})" for o, t in expr.word.strands
        ]
        body = " * ".join(parts)
        if len(parts) > 1 and parent == "factor":
            return f"({body})"
        return body
    if isinstance(expr, Dot):
        return f"dot({expr.k})"
    if isinstance(expr, Merge):
        return f"merge({expr.k},{expr.l})"
    if isinstance(expr, Split):
        return f"split({expr.k},{expr.l})"
    if isinstance(expr, CupL):
        return f"cupL({expr.k})"
    if isinstance(expr, CapL):
        return f"capL({expr.k})"
    if isinstance(expr, RCross):
        return f"xr({expr.k},{expr.l})"
    if isinstance(expr, XUp):
        return f"xup({expr.k},{expr.l})"
    if isinstance(expr, XL):
        return f"xl({expr.k},{expr.l})"
    if isinstance(expr, CupR):
        return f"cupR({expr.k})"
    if isinstance(expr, CapR):
        return f"capR({expr.k})"
    if isinstance(expr, DDot):
        return f"ddot({expr.k})"
    if isinstance(expr, DMerge):
        return f"dmerge({expr.k},{expr.l})"
    if isinstance(expr, DSplit):
        return f"dsplit({expr.k},{expr.l})"
    if isinstance(expr, Clasp):
        return f"clasp({expr.k})"
    if isinstance(expr, Perm):
        return "perm(" + ",".join(map(str, expr.images)) + ")"
    if isinstance(expr, RungL):
        return f"rungL({expr.k},{expr.l},{expr.j})"
    if isinstance(expr, RungR):
        return f"rungR({expr.k},{expr.l},{expr.j})"
    if isinstance(expr, Explode):
        return "explode(" + ",".join(map(str, expr.thicknesses)) + ")"
    if isinstance(expr, Implode):
        return "implode(" + ",".join(map(str, expr.thicknesses)) + ")"
    raise ValueError(f"cannot format {type(expr).__name__}")


def ast_to_json(expr):
    """Serialized, typechecked AST for `--emit json`."""
    dom, cod = typecheck(expr)
    return {
        "expr": format_expr(expr),
        "domain": str(dom),
        "codomain": str(cod),
        "parity": dot_parity(expr),
    }
