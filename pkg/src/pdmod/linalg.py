"""Exact linear algebra over Q or Q(params, chi).

Entries are any field elements supporting ``+ - * /`` and truthiness
(Fraction or RationalFunction).  Dense matrices are lists of row lists.
:class:`SparseEchelon` keeps a fully reduced row echelon basis of sparse
vectors (dicts) with pivots chosen as the largest support key.
"""

from __future__ import annotations

from fractions import Fraction


# dense ------------------------------------------------------------------------


def zeros(rows, cols, zero=Fraction(0)):
    return [[zero] * cols for _ in range(rows)]


def identity(n, one=Fraction(1), zero=Fraction(0)):
    return [[one if i == j else zero for j in range(n)] for i in range(n)]


def transpose(a):
    return [list(col) for col in zip(*a)] if a else []


def matmul(a, b):
    if not a:
        return []
    bt = transpose(b)
    out = []
    for row in a:
        out_row = []
        for col in bt:
            acc = None
            for x, y in zip(row, col):
                if x and y:
                    acc = x * y if acc is None else acc + x * y
            out_row.append(acc if acc is not None else row[0] * 0)
        out.append(out_row)
    return out


def matvec(a, v):
    out = []
    for row in a:
        acc = v[0] * 0 if v else Fraction(0)
        for x, y in zip(row, v):
            if x and y:
                acc = acc + x * y
        out.append(acc)
    return out


def rref(a, ncols=None):
    """Reduced row echelon form; returns ``(rows, pivot_columns)`` without zero rows."""
    rows = [list(r) for r in a]
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [x * inv if x else x for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [x - f * y if y else x for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows[:r], pivots


def rank(a):
    return len(rref(a)[1])


def nullspace(a, ncols=None):
    """Basis of the right kernel ``{x : a x = 0}``."""
    if ncols is None:
        ncols = len(a[0]) if a else 0
    rows, pivots = rref(a, ncols)
    zero, one = _zero_one(a)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [zero] * ncols
        v[f] = one
        for row, p in zip(rows, pivots):
            if row[f]:
                v[p] = -row[f]
        basis.append(v)
    return basis


def solve(a, b):
    """One solution of ``a x = b`` or None."""
    ncols = len(a[0]) if a else 0
    aug = [list(r) + [bi] for r, bi in zip(a, b)]
    rows, pivots = rref(aug, ncols + 1)
    if ncols in pivots:
        return None
    zero, _ = _zero_one(a)
    x = [zero] * ncols
    for row, p in zip(rows, pivots):
        x[p] = row[ncols]
    return x


def inverse(a):
    n = len(a)
    zero, one = _zero_one(a)
    aug = [list(r) + [one if i == j else zero for j in range(n)] for i, r in enumerate(a)]
    rows, pivots = rref(aug, n)
    if pivots != list(range(n)):
        raise ZeroDivisionError("singular matrix")
    return [r[n:] for r in rows]


def column_basis(vectors):
    """Indices of a maximal independent subset (greedy, in order)."""
    chosen = []
    basis = SparseEchelon(key=lambda c: -c)
    for i, v in enumerate(vectors):
        if basis.add(dict(enumerate(v))):
            chosen.append(i)
    return chosen


def span_rank(vectors):
    return len(column_basis(vectors))


def in_span(vectors, v):
    basis = SparseEchelon(key=lambda c: -c)
    for w in vectors:
        basis.add(dict(enumerate(w)))
    return not basis.reduce(dict(enumerate(v)))


def intersect_spans(u, w, dim):
    """Basis of span(u) ∩ span(w) inside F^dim."""
    if not u or not w:
        return []
    # solve sum a_i u_i = sum b_j w_j
    cols = [list(x) for x in u] + [[-y for y in x] for x in w]
    mat = transpose(cols)
    out = []
    for sol in nullspace(mat, len(cols)):
        vec = None
        for coeff, x in zip(sol[: len(u)], u):
            if coeff:
                term = [coeff * t for t in x]
                vec = term if vec is None else [p + q for p, q in zip(vec, term)]
        if vec is not None:
            out.append(vec)
    keep = column_basis(out)
    return [out[i] for i in keep]


def _zero_one(a):
    for row in a:
        for x in row:
            return x * 0, x * 0 + 1
    return Fraction(0), Fraction(1)


# sparse -----------------------------------------------------------------------


class SparseEchelon:
    """Fully reduced echelon basis of sparse vectors ``{column: value}``.

    The pivot of a vector is its support element with the largest ``key``.
    Every stored row has pivot coefficient 1 and no other row mentions its
    pivot, so a normal form is computed in one sweep.
    """

    def __init__(self, key, rows=()):
        self.key = key
        self.rows = {}
        self.pivot_values = []
        self._occ = {}
        for r in rows:
            self.add(r)

    def __len__(self):
        return len(self.rows)

    def copy(self):
        new = SparseEchelon(self.key)
        new.rows = {p: dict(r) for p, r in self.rows.items()}
        new.pivot_values = list(self.pivot_values)
        new._occ = {c: set(s) for c, s in self._occ.items()}
        return new

    def pivots(self):
        return set(self.rows)

    def reduce(self, vec):
        out = {c: v for c, v in vec.items() if v}
        hits = [c for c in out if c in self.rows]
        for p in hits:
            f = out.get(p)
            if not f:
                continue
            for c, v in self.rows[p].items():
                nv = out.get(c, 0) - f * v if c in out else -f * v
                if nv:
                    out[c] = nv
                else:
                    out.pop(c, None)
        return out

    def add(self, vec):
        """Insert ``vec``; returns the new normalized row, or None if dependent."""
        r = self.reduce(vec)
        if not r:
            return None
        p = max(r, key=self.key)
        lead = r[p]
        self.pivot_values.append(lead)
        if lead != 1:
            inv = 1 / lead
            r = {c: v * inv for c, v in r.items()}
        for q in list(self._occ.get(p, ())):
            row = self.rows[q]
            f = row[p]
            for c, v in r.items():
                nv = row.get(c, 0) - f * v if c in row else -f * v
                if nv:
                    if c not in row:
                        self._occ.setdefault(c, set()).add(q)
                    row[c] = nv
                else:
                    if c in row:
                        del row[c]
                        self._occ[c].discard(q)
        self.rows[p] = r
        for c in r:
            if c != p:
                self._occ.setdefault(c, set()).add(p)
        return r

    def sorted_rows(self, reverse=True):
        return [self.rows[p] for p in sorted(self.rows, key=self.key, reverse=reverse)]
