"""Strict partitions, shifted tableaux, the shifted LR rule, and Schur P-polynomials.

Letters live in the ordered marked alphabet 1' < 1 < 2' < 2 < ...; a marked
letter a' is stored as -a, an unmarked a as +a.  Shifted frames put row r in
columns r .. r + lambda_r - 1.  Words read rows left to right, bottom row
first, working up.
"""

from __future__ import annotations

from .sergeev import is_strict_partition, staircase


def letter_value(a: int) -> int:
    return abs(a)


def is_marked(a: int) -> bool:
    return a < 0


def letter_key(a: int) -> tuple:
    return (abs(a), 0 if a < 0 else 1)


def letter_text(a: int) -> str:
    return f"{abs(a)}'" if a < 0 else str(a)


def parse_letter(text: str) -> int:
    text = text.strip()
    if text.endswith("'"):
        return -int(text[:-1])
    return int(text)


def strict_partitions(k: int) -> list:
    """All strict partitions of k, lexicographically sorted."""
    if k < 0:
        raise ValueError("negative size")
    out = []

    def rec(remaining, max_part, prefix):
        if remaining == 0:
            out.append(tuple(prefix))
            return
        for p in range(min(remaining, max_part), 0, -1):
            rec(remaining - p, p - 1, prefix + [p])

    rec(k, k, [])
    return sorted(out)


def partition_size(lam) -> int:
    return sum(lam)


def contains(inner, outer) -> bool:
    inner, outer = tuple(inner), tuple(outer)
    if len(inner) > len(outer):
        return False
    return all(inner[i] <= outer[i] for i in range(len(inner)))


def shifted_cells(lam) -> list:
    """Cells (row, col), 1-based, of the shifted frame."""
    return [(r, c) for r, length in enumerate(lam, start=1) for c in range(r, r + length)]


def skew_cells(outer, inner) -> list:
    inner = tuple(inner) + (0,) * (len(outer) - len(inner))
    out = []
    for r, length in enumerate(outer, start=1):
        lo = r + inner[r - 1]
        out.append([(r, c) for c in range(lo, r + length)])
    return [cell for row in out for cell in row]


def canonical_filling(lam) -> tuple:
    """Row-by-row numbering of the shifted frame and its column map."""
    rows = []
    cols = []
    next_num = 1
    for r, length in enumerate(lam, start=1):
        row = list(range(next_num, next_num + length))
        rows.append(row)
        cols.extend(range(r, r + length))
        next_num += length
    return rows, tuple(cols)


class ShiftedTableau:
    """A filling of a (skew) shifted frame by marked-alphabet letters."""

    def __init__(self, outer, inner, entries: dict):
        self.outer = tuple(outer)
        self.inner = tuple(inner)
        self.entries = dict(entries)
        cells = skew_cells(self.outer, self.inner)
        if set(entries) != set(cells):
            raise ValueError("entries do not match the skew shifted frame")

    def rows(self) -> list:
        inner = self.inner + (0,) * (len(self.outer) - len(self.inner))
        out = []
        for r, length in enumerate(self.outer, start=1):
            out.append([self.entries[(r, c)] for c in range(r + inner[r - 1], r + length)])
        return out

    def word(self) -> tuple:
        w = []
        for row in reversed(self.rows()):
            w.extend(row)
        return tuple(w)

    def content(self) -> tuple:
        counts: dict = {}
        for a in self.entries.values():
            counts[abs(a)] = counts.get(abs(a), 0) + 1
        if not counts:
            return ()
        return tuple(counts.get(i, 0) for i in range(1, max(counts) + 1))

    def is_valid(self) -> bool:
        """The four conditions on rows and columns of a shifted tableau."""
        by_row: dict = {}
        by_col: dict = {}
        for (r, c), a in self.entries.items():
            by_row.setdefault(r, []).append((c, a))
            by_col.setdefault(c, []).append((r, a))
        for cells in by_row.values():
            cells.sort()
            seq = [a for _, a in cells]
            if any(letter_key(seq[i]) > letter_key(seq[i + 1]) for i in range(len(seq) - 1)):
                return False
            marked = [a for a in seq if a < 0]
            if len(marked) != len(set(marked)):
                return False
        for cells in by_col.values():
            cells.sort()
            seq = [a for _, a in cells]
            if any(letter_key(seq[i]) > letter_key(seq[i + 1]) for i in range(len(seq) - 1)):
                return False
            unmarked = [a for a in seq if a > 0]
            if len(unmarked) != len(set(unmarked)):
                return False
        return True

    def text(self) -> str:
        return " / ".join(",".join(letter_text(a) for a in row) for row in self.rows())

    @staticmethod
    def from_text(text: str, outer, inner=()) -> "ShiftedTableau":
        rows = [
            [parse_letter(p) for p in row.split(",") if p.strip()]
            for row in text.split("/")
        ]
        inner_full = tuple(inner) + (0,) * (len(outer) - len(inner))
        entries = {}
        for r, row in enumerate(rows, start=1):
            lo = r + inner_full[r - 1]
            for off, a in enumerate(row):
                entries[(r, lo + off)] = a
        return ShiftedTableau(outer, inner, entries)


def word_statistics(word: tuple) -> dict:
    """m_i(j) tables, i over unmarked letters, j = 0..2n."""
    n = len(word)
    maxval = max((abs(a) for a in word), default=0)
    stats = {}
    for i in range(1, maxval + 2):
        m = [0] * (2 * n + 1)
        for j in range(1, n + 1):
            m[j] = m[j - 1] + (1 if word[n - j] == i else 0)
        for j in range(1, n + 1):
            m[n + j] = m[n + j - 1] + (1 if word[j - 1] == -i else 0)
        stats[i] = m
    stats[0] = [0] * (2 * n + 1)
    return stats


def lattice_property(word) -> bool:
    """Stembridge's lattice condition on a word in the marked alphabet.

    Comparisons run over i >= 2; including i = 1 against the empty count
    m_0 would reject genuine LR fillings (see the project decision notes).
    """
    word = tuple(word)
    n = len(word)
    if n == 0:
        return True
    stats = word_statistics(word)
    maxval = max(abs(a) for a in word)
    for i in range(2, maxval + 2):
        mi = stats[i]
        mi1 = stats[i - 1]
        for j in range(0, 2 * n):
            if mi[j] != mi1[j]:
                continue
            if j < n:
                if word[n - j - 1] in (i, -i):
                    return False
            else:
                if word[j - n] in (i - 1, -i):
                    return False
    return True


def leftmost_unmarked(word, nu_len: int) -> bool:
    """Condition (b): the leftmost occurrence of each value 1..nu_len is unmarked."""
    first: dict = {}
    for a in word:
        if abs(a) not in first:
            first[abs(a)] = a
    return all(first.get(i, 0) > 0 for i in range(1, nu_len + 1))


def _enumerate_fillings(outer, inner, nu):
    """Backtracking over row-reading-order fillings with feasibility pruning."""
    cells = skew_cells(outer, inner)
    if not cells:
        if partition_size(nu) == 0:
            yield {}
        return
    nu = tuple(nu)
    remaining = list(nu)
    maxval = len(nu)
    entries: dict = {}
    cell_list = sorted(cells)
    cols: dict = {}
    for (r, c) in cell_list:
        cols.setdefault(c, []).append(r)

    def ok(r, c, a):
        left = entries.get((r, c - 1))
        if left is not None and letter_key(left) > letter_key(a):
            return False
        up = entries.get((r - 1, c))
        if up is not None and letter_key(up) > letter_key(a):
            return False
        if a < 0:
            for c2 in range(r, c):
                if entries.get((r, c2)) == a:
                    return False
        else:
            for r2 in cols.get(c, ()):
                if r2 != r and entries.get((r2, c)) == a:
                    return False
        return True

    def rec(idx):
        if idx == len(cell_list):
            yield dict(entries)
            return
        r, c = cell_list[idx]
        for val in range(1, maxval + 1):
            if remaining[val - 1] == 0:
                continue
            for a in (-val, val):
                if ok(r, c, a):
                    entries[(r, c)] = a
                    remaining[val - 1] -= 1
                    yield from rec(idx + 1)
                    remaining[val - 1] += 1
                    del entries[(r, c)]

    yield from rec(0)


def lr_coefficient(lam, nu, mu) -> int:
    """Shifted LR coefficient: LR tableaux of shape mu/lam and content nu."""
    lam, nu, mu = tuple(lam), tuple(nu), tuple(mu)
    for p in (lam, nu, mu):
        if p and not is_strict_partition(p):
            raise ValueError(f"{p} is not a strict partition")
    if not contains(lam, mu) or partition_size(lam) + partition_size(nu) != partition_size(mu):
        return 0
    count_found = 0
    for entries in _enumerate_fillings(mu, lam, nu):
        tab = ShiftedTableau(mu, lam, entries)
        if not tab.is_valid():
            continue
        w = tab.word()
        if lattice_property(w) and leftmost_unmarked(w, len(nu)):
            count_found += 1
    return count_found


def staircase_tableau(mu, n: int) -> ShiftedTableau:
    """The hook-filled LR tableau of shape mu/lambda(n) from the appendix proof."""
    mu = tuple(mu)
    if n < 1:
        raise ValueError("staircase tableau defined for n >= 1 only")
    if not is_strict_partition(mu) or len(mu) <= n:
        raise ValueError("need a strict partition with more than n parts")
    lam = staircase(n)
    if not contains(lam, mu):
        raise ValueError("staircase not contained in the partition")
    cells = skew_cells(mu, lam)
    hooks: dict = {}
    for (r, c) in cells:
        hooks.setdefault(min(r, c - n - 1), []).append((r, c))
    entries = {}
    for i, hook in hooks.items():
        corner = (i, n + 1 + i)
        arm = sorted(cell for cell in hook if cell[0] == i)
        leg = sorted(cell for cell in hook if cell[0] > i)
        if not leg:
            for cell in arm:
                entries[cell] = i
        else:
            for cell in arm:
                entries[cell] = -i if cell == corner else i
            for cell in leg[:-1]:
                entries[cell] = -i
            entries[leg[-1]] = i
    return ShiftedTableau(mu, lam, entries)


def verify_staircase_construction(n: int, bound: int) -> list:
    """Check every staircase tableau with |mu| <= bound; returns report rows."""
    report = []
    for size in range(partition_size(staircase(n)), bound + 1):
        for mu in strict_partitions(size):
            if len(mu) <= n:
                continue
            tab = staircase_tableau(mu, n)
            w = tab.word()
            nu = tab.content()
            ok = (
                tab.is_valid()
                and lattice_property(w)
                and leftmost_unmarked(w, len(nu))
                and (nu == () or is_strict_partition(nu))
                and partition_size(nu) == partition_size(mu) - partition_size(staircase(n))
            )
            report.append({"mu": mu, "content": nu, "ok": ok})
    return report


# --- Schur P polynomials --------------------------------------------------------

def schur_p(lam, m: int) -> dict:
    """P_lambda(x_1..x_m) as {exponent tuple: int}; zero if l(lambda) > m."""
    lam = tuple(lam)
    if lam and not is_strict_partition(lam):
        raise ValueError(f"{lam} is not a strict partition")
    if m < 1:
        raise ValueError("need at least one variable")
    if len(lam) > m:
        return {}
    if not lam:
        return {(0,) * m: 1}
    cells = sorted(shifted_cells(lam))
    poly: dict = {}
    entries: dict = {}

    def ok(r, c, a):
        if r == c and a < 0:
            return False  # main-diagonal entries are unmarked
        left = entries.get((r, c - 1))
        if left is not None and letter_key(left) > letter_key(a):
            return False
        up = entries.get((r - 1, c))
        if up is not None and letter_key(up) > letter_key(a):
            return False
        if a < 0:
            for c2 in range(r, c):
                if entries.get((r, c2)) == a:
                    return False
        else:
            for r2 in range(1, r):
                if entries.get((r2, c)) == a:
                    return False
        return True

    def rec(idx):
        if idx == len(cells):
            expo = [0] * m
            for a in entries.values():
                expo[abs(a) - 1] += 1
            key = tuple(expo)
            poly[key] = poly.get(key, 0) + 1
            return
        r, c = cells[idx]
        for val in range(1, m + 1):
            for a in (-val, val):
                if ok(r, c, a):
                    entries[(r, c)] = a
                    rec(idx + 1)
                    del entries[(r, c)]

    rec(0)
    return poly


def poly_mul(p: dict, q: dict) -> dict:
    out: dict = {}
    for e1, c1 in p.items():
        for e2, c2 in q.items():
            key = tuple(a + b for a, b in zip(e1, e2))
            s = out.get(key, 0) + c1 * c2
            if s:
                out[key] = s
            else:
                del out[key]
    return out


def expand_in_p_basis(poly: dict, m: int) -> dict:
    """Greedy peel against lex-leading monomials x^mu of the P_mu."""
    work = dict(poly)
    out: dict = {}
    while work:
        lead = max(work)
        mu = tuple(e for e in lead if e)
        if list(lead[: len(mu)]) != list(mu) or (mu and not is_strict_partition(mu)):
            raise ArithmeticError(f"leading exponent {lead} is not a padded strict partition")
        coeff = work[lead]
        out[mu] = coeff
        for key, c in schur_p(mu, m).items():
            s = work.get(key, 0) - coeff * c
            if s:
                work[key] = s
            else:
                work.pop(key, None)
    return {mu: c for mu, c in out.items() if c}


def p_product_coefficients(lam, nu, m: int) -> dict:
    """Structure constants of P_lam * P_nu read off the polynomial side."""
    return expand_in_p_basis(poly_mul(schur_p(lam, m), schur_p(nu, m)), m)
