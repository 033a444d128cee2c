"""Graded (super) linear algebra over Q(i, sqrt(2)).

Sparse exact matrices between graded bases.  Composition is sign-free; every
Koszul sign is produced in the tensor product, per homogeneous component of
the right factor.  Matrices are immutable by convention and all operations
are pure, so values can be shared freely between threads.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .scalars import ONE, Scalar, format_scalar, parse_scalar

EVEN, ODD = 0, 1


@dataclass(frozen=True)
class GradedBasis:
    """An ordered basis of a superspace: opaque tuple labels with parities."""

    labels: tuple
    parities: tuple

    def __post_init__(self):
        if len(self.labels) != len(self.parities):
            raise ValueError("labels/parities length mismatch")
        if len(set(self.labels)) != len(self.labels):
            raise ValueError("duplicate basis labels")

    def __len__(self) -> int:
        return len(self.labels)

    def index(self) -> dict:
        idx = self.__dict__.get("_index")
        if idx is None:
            idx = {lab: i for i, lab in enumerate(self.labels)}
            object.__setattr__(self, "_index", idx)
        return idx

    def parity_counts(self) -> tuple:
        even = sum(1 for p in self.parities if p == EVEN)
        return even, len(self.parities) - even


def tensor_basis(b1: GradedBasis, b2: GradedBasis) -> GradedBasis:
    """Product basis in row-major order (left factor slowest); labels concatenate."""
    labels = []
    parities = []
    for l1, p1 in zip(b1.labels, b1.parities):
        for l2, p2 in zip(b2.labels, b2.parities):
            labels.append(l1 + l2)
            parities.append((p1 + p2) % 2)
    return GradedBasis(tuple(labels), tuple(parities))


UNIT_BASIS = GradedBasis(((),), (EVEN,))


class BasisMismatch(ValueError):
    pass


@dataclass
class SuperMatrix:
    """Sparse exact matrix with parity bookkeeping; entries: (row, col) -> Scalar."""

    domain: GradedBasis
    codomain: GradedBasis
    entries: dict = field(default_factory=dict)

    def __post_init__(self):
        # zero entries never stored
        self.entries = {rc: v for rc, v in self.entries.items() if v}

    def __eq__(self, other) -> bool:
        if not isinstance(other, SuperMatrix):
            return NotImplemented
        return (
            self.domain == other.domain
            and self.codomain == other.codomain
            and self.entries == other.entries
        )

    def is_zero(self) -> bool:
        return not self.entries

    def columns(self) -> dict:
        """Column-major view: col -> list of (row, value)."""
        cols: dict = {}
        for (r, c), v in self.entries.items():
            cols.setdefault(c, []).append((r, v))
        return cols

    def rows(self) -> dict:
        rows: dict = {}
        for (r, c), v in self.entries.items():
            rows.setdefault(r, []).append((c, v))
        return rows

    def entry_parity(self, r: int, c: int) -> int:
        return (self.codomain.parities[r] + self.domain.parities[c]) % 2

    def parity_split(self) -> tuple:
        """Even and odd homogeneous components (they partition the entries)."""
        ev, od = {}, {}
        for (r, c), v in self.entries.items():
            (ev if self.entry_parity(r, c) == EVEN else od)[(r, c)] = v
        return (
            SuperMatrix(self.domain, self.codomain, ev),
            SuperMatrix(self.domain, self.codomain, od),
        )

    def homogeneous_parity(self):
        """The common parity of all entries, or None if mixed (zero counts as even)."""
        par = None
        for (r, c) in self.entries:
            p = self.entry_parity(r, c)
            if par is None:
                par = p
            elif par != p:
                return None
        return EVEN if par is None else par


def mat_identity(basis: GradedBasis) -> SuperMatrix:
    return SuperMatrix(basis, basis, {(i, i): ONE for i in range(len(basis))})


def mat_zero(domain: GradedBasis, codomain: GradedBasis) -> SuperMatrix:
    return SuperMatrix(domain, codomain, {})


def mat_add(f: SuperMatrix, g: SuperMatrix) -> SuperMatrix:
    if f.domain != g.domain or f.codomain != g.codomain:
        raise BasisMismatch("addition of matrices over different bases")
    out = dict(f.entries)
    for rc, v in g.entries.items():
        s = out.get(rc)
        s = v if s is None else s + v
        if s:
            out[rc] = s
        else:
            out.pop(rc, None)
    return SuperMatrix(f.domain, f.codomain, out)


def mat_scale(x, f: SuperMatrix) -> SuperMatrix:
    x = Scalar.of(x)
    if not x:
        return mat_zero(f.domain, f.codomain)
    return SuperMatrix(f.domain, f.codomain, {rc: x * v for rc, v in f.entries.items()})


def mat_sub(f: SuperMatrix, g: SuperMatrix) -> SuperMatrix:
    return mat_add(f, mat_scale(-1, g))


def mat_compose(g: SuperMatrix, f: SuperMatrix) -> SuperMatrix:
    """Ordinary product g∘f (f applied first).  No signs live here."""
    if g.domain != f.codomain:
        raise BasisMismatch("compose: domain(g) != codomain(f)")
    g_cols = g.columns()
    out: dict = {}
    for (m, c), v in f.entries.items():
        for r, w in g_cols.get(m, ()):
            rc = (r, c)
            s = out.get(rc)
            s = v * w if s is None else s + v * w
            if s:
                out[rc] = s
            else:
                del out[rc]
    return SuperMatrix(f.domain, g.codomain, out)


def mat_tensor(f: SuperMatrix, g: SuperMatrix) -> SuperMatrix:
    """Tensor with the Koszul sign (-1)^{p(g-component) p(c1)} per entry."""
    dom = tensor_basis(f.domain, g.domain)
    cod = tensor_basis(f.codomain, g.codomain)
    nd2, nc2 = len(g.domain), len(g.codomain)
    out = {}
    for (r1, c1), v1 in f.entries.items():
        pc1 = f.domain.parities[c1]
        for (r2, c2), v2 in g.entries.items():
            val = v1 * v2
            if pc1 and g.entry_parity(r2, c2):
                val = -val
            out[(r1 * nc2 + r2, c1 * nd2 + c2)] = val
    return SuperMatrix(dom, cod, out)


def supertrace(f: SuperMatrix) -> Scalar:
    if f.domain != f.codomain:
        raise BasisMismatch("supertrace of a non-square matrix")
    tr = Scalar.of(0)
    for (r, c), v in f.entries.items():
        if r == c:
            tr = tr + (-v if f.codomain.parities[r] else v)
    return tr


def _sparse_rows(f: SuperMatrix) -> list:
    n = len(f.domain)
    rows = [dict() for _ in range(len(f.codomain))]
    for (r, c), v in f.entries.items():
        rows[r][c] = v
    return rows


def mat_inverse(f: SuperMatrix) -> SuperMatrix:
    """Exact two-sided inverse by sparse Gauss-Jordan elimination."""
    n = len(f.domain)
    if len(f.codomain) != n:
        raise BasisMismatch("inverse of a non-square matrix")
    rows = _sparse_rows(f)
    aug = [{i: ONE} for i in range(n)]
    perm = list(range(n))
    for col in range(n):
        piv = None
        for r in range(col, n):
            if rows[perm[r]].get(col):
                piv = r
                break
        if piv is None:
            raise ZeroDivisionError("singular matrix")
        perm[col], perm[piv] = perm[piv], perm[col]
        p = perm[col]
        inv_piv = rows[p][col].inv()
        rows[p] = {c: inv_piv * v for c, v in rows[p].items()}
        aug[p] = {c: inv_piv * v for c, v in aug[p].items()}
        for r in range(n):
            q = perm[r]
            if q == p:
                continue
            factor = rows[q].get(col)
            if not factor:
                continue
            for c, v in rows[p].items():
                s = rows[q].get(c, None)
                s = -factor * v if s is None else s - factor * v
                if s:
                    rows[q][c] = s
                else:
                    rows[q].pop(c, None)
            for c, v in aug[p].items():
                s = aug[q].get(c, None)
                s = -factor * v if s is None else s - factor * v
                if s:
                    aug[q][c] = s
                else:
                    aug[q].pop(c, None)
    out = {}
    for col in range(n):
        for c, v in aug[perm[col]].items():
            out[(col, c)] = v
    return SuperMatrix(f.codomain, f.domain, out)


def row_reduce(vectors: list) -> int:
    """Rank of a list of sparse vectors (dict key -> Scalar); destructive on copies."""
    pivots: dict = {}
    rank = 0
    for vec in vectors:
        v = dict(vec)
        while v:
            lead = min(v)
            if lead in pivots:
                coeff = v[lead]
                for c, w in pivots[lead].items():
                    s = v.get(c, None)
                    s = -coeff * w if s is None else s - coeff * w
                    if s:
                        v[c] = s
                    else:
                        v.pop(c, None)
            else:
                inv = v[lead].inv()
                pivots[lead] = {c: inv * w for c, w in v.items()}
                rank += 1
                break
    return rank


def mat_rank(f: SuperMatrix) -> int:
    return row_reduce([dict(pairs) for pairs in f.rows().values()])


def solve_null(constraints: list, nvars: int) -> tuple:
    """Exact null space of a sparse homogeneous system.

    `constraints` is a list of dict{var: Scalar}; returns (dimension, basis)
    where basis vectors are dict{var: Scalar}.
    """
    pivots: dict = {}
    for row in constraints:
        v = dict(row)
        while v:
            lead = min(v)
            if lead in pivots:
                coeff = v[lead]
                for c, w in pivots[lead].items():
                    s = v.get(c, None)
                    s = -coeff * w if s is None else s - coeff * w
                    if s:
                        v[c] = s
                    else:
                        v.pop(c, None)
            else:
                inv = v[lead].inv()
                pivots[lead] = {c: inv * w for c, w in v.items()}
                break
    # back-substitute to reduced echelon form
    for lead in sorted(pivots, reverse=True):
        row = pivots[lead]
        for other_lead, other in pivots.items():
            if other_lead == lead:
                continue
            coeff = other.get(lead)
            if not coeff:
                continue
            for c, w in row.items():
                if c == lead:
                    continue
                s = other.get(c, None)
                s = -coeff * w if s is None else s - coeff * w
                if s:
                    other[c] = s
                else:
                    other.pop(c, None)
            other.pop(lead, None)
    free = [v for v in range(nvars) if v not in pivots]
    basis = []
    for fv in free:
        vec = {fv: ONE}
        for lead, row in pivots.items():
            coeff = row.get(fv)
            if coeff:
                vec[lead] = -coeff
        basis.append(vec)
    return len(free), basis


def matrix_to_json(f: SuperMatrix, label_text=str) -> dict:
    """JSON form: bases as [label, parity] pairs, entries sorted by (row, col)."""
    return {
        "domain": [[label_text(l), p] for l, p in zip(f.domain.labels, f.domain.parities)],
        "codomain": [[label_text(l), p] for l, p in zip(f.codomain.labels, f.codomain.parities)],
        "entries": [
            [r, c, format_scalar(v)] for (r, c), v in sorted(f.entries.items())
        ],
    }


def matrix_from_json(data: dict, label_parse=None) -> SuperMatrix:
    conv = label_parse if label_parse is not None else (lambda s: s)
    dom = GradedBasis(tuple(conv(l) for l, _ in data["domain"]), tuple(p for _, p in data["domain"]))
    cod = GradedBasis(tuple(conv(l) for l, _ in data["codomain"]), tuple(p for _, p in data["codomain"]))
    entries = {(r, c): parse_scalar(s) for r, c, s in data["entries"]}
    return SuperMatrix(dom, cod, entries)
