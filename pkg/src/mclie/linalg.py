"""Exact rational linear algebra: graded vector spaces, sparse elements,
degree-shifting linear maps, chain complexes and their homology, and
primitive idempotents of split finite commutative algebras.

All arithmetic is fractions.Fraction; there is no floating point anywhere.
Row reduction is deterministic (leftmost pivot, topmost nonzero row), so
every derived report is reproducible bit for bit.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Iterable, Mapping, Optional, Sequence

QQ = Fraction

ZERO = QQ(0)
ONE = QQ(1)


def rational(x) -> Fraction:
    """Coerce ints, strings like '-3/7' and Fractions to Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return QQ(x)
    if isinstance(x, str):
        return QQ(x)
    raise TypeError("not an exact rational: %r" % (x,))


class NonSplitAlgebra(Exception):
    """The algebra is not isomorphic to a finite product of copies of Q."""


class DegreeMismatch(Exception):
    """An element was not homogeneous of the required degree."""


# ---------------------------------------------------------------------------
# dense row-reduction toolkit; matrices are lists of row lists of Fractions
# ---------------------------------------------------------------------------

def zeros(nrows: int, ncols: int) -> list[list[Fraction]]:
    return [[ZERO] * ncols for _ in range(nrows)]


def identity_matrix(n: int) -> list[list[Fraction]]:
    m = zeros(n, n)
    for i in range(n):
        m[i][i] = ONE
    return m


def mat_mul(a: Sequence[Sequence[Fraction]], b: Sequence[Sequence[Fraction]]):
    if not a or not b:
        return []
    n, k, m = len(a), len(b), len(b[0])
    out = zeros(n, m)
    for i in range(n):
        ai = a[i]
        oi = out[i]
        for j in range(k):
            c = ai[j]
            if c:
                bj = b[j]
                for l in range(m):
                    if bj[l]:
                        oi[l] += c * bj[l]
    return out


def mat_vec(a: Sequence[Sequence[Fraction]], v: Sequence[Fraction]) -> list[Fraction]:
    out = []
    for row in a:
        s = ZERO
        for c, x in zip(row, v):
            if c and x:
                s += c * x
        out.append(s)
    return out


def rref(rows: Iterable[Sequence[Fraction]], ncols: int):
    """Reduced row echelon form.

    Returns (reduced nonzero rows, pivot column indices).  Pivoting is
    deterministic: scan columns left to right, take the topmost row with a
    nonzero entry.
    """
    m = [list(r) for r in rows]
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pr = None
        for i in range(r, len(m)):
            if m[i][c]:
                pr = i
                break
        if pr is None:
            continue
        m[r], m[pr] = m[pr], m[r]
        pc = m[r][c]
        if pc != ONE:
            m[r] = [x / pc for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                mi, mr = m[i], m[r]
                for j in range(c, ncols):
                    if mr[j]:
                        mi[j] -= f * mr[j]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank(rows: Iterable[Sequence[Fraction]], ncols: int) -> int:
    return len(rref(rows, ncols)[1])


def kernel_basis(rows: Iterable[Sequence[Fraction]], ncols: int) -> list[list[Fraction]]:
    """Basis of the right kernel, one vector per free column, in column order."""
    red, pivots = rref(rows, ncols)
    pivot_set = set(pivots)
    free = [c for c in range(ncols) if c not in pivot_set]
    basis = []
    for fc in free:
        v = [ZERO] * ncols
        v[fc] = ONE
        for r, pc in enumerate(pivots):
            v[pc] = -red[r][fc]
        basis.append(v)
    return basis


def solve_matrix(rows: Sequence[Sequence[Fraction]], ncols: int,
                 rhs: Sequence[Fraction]) -> Optional[list[Fraction]]:
    """One solution of A x = rhs with all free variables set to zero,
    or None when rhs is not in the column space."""
    aug = [list(r) + [rhs[i]] for i, r in enumerate(rows)]
    red, pivots = rref(aug, ncols + 1)
    if ncols in pivots:
        return None
    x = [ZERO] * ncols
    for r, pc in enumerate(pivots):
        x[pc] = red[r][ncols]
    return x


def reduce_against(red_rows: Sequence[Sequence[Fraction]], pivots: Sequence[int],
                   vec: Sequence[Fraction]) -> list[Fraction]:
    """Reduce vec modulo the span of RREF rows (pivot coordinates eliminated)."""
    v = list(vec)
    for r, pc in enumerate(pivots):
        if v[pc]:
            f = v[pc]
            row = red_rows[r]
            for j in range(pc, len(v)):
                if row[j]:
                    v[j] -= f * row[j]
    return v


def extend_basis(inner: Sequence[Sequence[Fraction]], outer: Sequence[Sequence[Fraction]],
                 ncols: int) -> list[int]:
    """Indices of outer vectors extending span(inner) to span(inner+outer).

    Deterministic: vectors of outer are taken in order.
    """
    rows = [list(v) for v in inner]
    red, pivots = rref(rows, ncols)
    chosen = []
    for i, v in enumerate(outer):
        w = reduce_against(red, pivots, v)
        if any(w):
            chosen.append(i)
            red.append(w)
            red, pivots = rref(red, ncols)
    return chosen


class RowSpace:
    """Incrementally maintained subspace in reduced row echelon form."""

    def __init__(self, ncols: int):
        self.ncols = ncols
        self.rows: list[list[Fraction]] = []
        self.pivots: list[int] = []

    def reduce(self, vec: Sequence[Fraction]) -> list[Fraction]:
        v = list(vec)
        for row, pc in zip(self.rows, self.pivots):
            if v[pc]:
                f = v[pc]
                for j in range(pc, self.ncols):
                    if row[j]:
                        v[j] -= f * row[j]
        return v

    def contains(self, vec: Sequence[Fraction]) -> bool:
        return not any(self.reduce(vec))

    def add(self, vec: Sequence[Fraction]) -> bool:
        """Insert vec; True if it enlarged the span."""
        v = self.reduce(vec)
        pc = None
        for j in range(self.ncols):
            if v[j]:
                pc = j
                break
        if pc is None:
            return False
        f = v[pc]
        if f != ONE:
            v = [x / f for x in v]
        for row in self.rows:
            if row[pc]:
                g = row[pc]
                for j in range(pc, self.ncols):
                    if v[j]:
                        row[j] -= g * v[j]
        at = 0
        while at < len(self.pivots) and self.pivots[at] < pc:
            at += 1
        self.rows.insert(at, v)
        self.pivots.insert(at, pc)
        return True

    def dim(self) -> int:
        return len(self.rows)


# ---------------------------------------------------------------------------
# graded vector spaces and elements
# ---------------------------------------------------------------------------

class GradedVectorSpace:
    """Finite Z-graded rational vector space with ordered, named bases.

    basis: {degree: [label, ...]}; labels are strings, unique per degree.
    """

    def __init__(self, basis: Mapping[int, Sequence[str]]):
        self.basis: dict[int, tuple[str, ...]] = {}
        self._index: dict[int, dict[str, int]] = {}
        for n, labels in basis.items():
            labels = tuple(labels)
            if not labels:
                continue
            if len(set(labels)) != len(labels):
                raise ValueError("duplicate basis labels in degree %d" % n)
            self.basis[int(n)] = labels
            self._index[int(n)] = {lab: i for i, lab in enumerate(labels)}

    def degrees(self) -> list[int]:
        return sorted(self.basis)

    def dim(self, n: int) -> int:
        return len(self.basis.get(n, ()))

    def total_dim(self) -> int:
        return sum(len(v) for v in self.basis.values())

    def labels(self, n: int) -> tuple[str, ...]:
        return self.basis.get(n, ())

    def index(self, n: int, label: str) -> int:
        return self._index[n][label]

    def has(self, n: int, label: str) -> bool:
        return label in self._index.get(n, {})

    def __eq__(self, other):
        return isinstance(other, GradedVectorSpace) and self.basis == other.basis

    def __repr__(self):
        parts = ", ".join("%d:%d" % (n, self.dim(n)) for n in self.degrees())
        return "GradedVectorSpace(%s)" % parts

    def basis_element(self, n: int, label: str) -> "GradedElement":
        if not self.has(n, label):
            raise KeyError((n, label))
        return GradedElement({(n, label): ONE})

    def basis_elements(self, n: int) -> list["GradedElement"]:
        return [self.basis_element(n, lab) for lab in self.labels(n)]

    def to_vector(self, elt: "GradedElement", n: int) -> list[Fraction]:
        v = [ZERO] * self.dim(n)
        for (d, lab), c in elt.coeffs.items():
            if d != n:
                raise DegreeMismatch("element not concentrated in degree %d" % n)
            v[self.index(n, lab)] = c
        return v

    def from_vector(self, v: Sequence[Fraction], n: int) -> "GradedElement":
        labels = self.labels(n)
        return GradedElement({(n, labels[i]): c for i, c in enumerate(v) if c})


class GradedElement:
    """Sparse element of a graded space: {(degree, label): coefficient}.

    Zero coefficients are never stored.  Instances are treated as immutable.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Optional[Mapping[tuple[int, str], Fraction]] = None):
        self.coeffs: dict[tuple[int, str], Fraction] = {}
        if coeffs:
            for k, c in coeffs.items():
                if c:
                    self.coeffs[k] = rational(c)

    def is_zero(self) -> bool:
        return not self.coeffs

    def degrees(self) -> set[int]:
        return {d for (d, _) in self.coeffs}

    def degree(self) -> Optional[int]:
        """The degree if homogeneous (None for 0), else DegreeMismatch."""
        ds = self.degrees()
        if not ds:
            return None
        if len(ds) > 1:
            raise DegreeMismatch("element not homogeneous: degrees %s" % sorted(ds))
        return ds.pop()

    def coeff(self, n: int, label: str) -> Fraction:
        return self.coeffs.get((n, label), ZERO)

    def homogeneous_part(self, n: int) -> "GradedElement":
        return GradedElement({k: c for k, c in self.coeffs.items() if k[0] == n})

    def __add__(self, other: "GradedElement") -> "GradedElement":
        out = dict(self.coeffs)
        for k, c in other.coeffs.items():
            s = out.get(k, ZERO) + c
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        res = GradedElement()
        res.coeffs = out
        return res

    def __sub__(self, other: "GradedElement") -> "GradedElement":
        return self + (-other)

    def __neg__(self) -> "GradedElement":
        return self.scale(-ONE)

    def scale(self, c) -> "GradedElement":
        c = rational(c)
        if not c:
            return GradedElement()
        res = GradedElement()
        res.coeffs = {k: c * v for k, v in self.coeffs.items()}
        return res

    def __rmul__(self, c):
        return self.scale(c)

    def __eq__(self, other):
        return isinstance(other, GradedElement) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(frozenset(self.coeffs.items()))

    def items_sorted(self):
        return sorted(self.coeffs.items(), key=lambda kv: (kv[0][0], kv[0][1]))

    def __repr__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for (n, lab), c in self.items_sorted():
            if c == ONE:
                parts.append("+ %s" % lab)
            elif c == -ONE:
                parts.append("- %s" % lab)
            elif c > 0:
                parts.append("+ %s %s" % (c, lab))
            else:
                parts.append("- %s %s" % (-c, lab))
        s = " ".join(parts)
        return s[2:] if s.startswith("+ ") else s


def linear_combination(pairs: Iterable[tuple[Fraction, GradedElement]]) -> GradedElement:
    out = GradedElement()
    for c, e in pairs:
        if c:
            out = out + e.scale(c)
    return out


class GradedLinearMap:
    """Degree-homogeneous linear map between graded spaces.

    Blocks are dense matrices per source degree n, mapping into degree
    n + shift; absent blocks are zero.
    """

    def __init__(self, source: GradedVectorSpace, target: GradedVectorSpace,
                 shift: int, blocks: Optional[Mapping[int, Sequence[Sequence[Fraction]]]] = None):
        self.source = source
        self.target = target
        self.shift = shift
        self.blocks: dict[int, list[list[Fraction]]] = {}
        if blocks:
            for n, b in blocks.items():
                b = [list(map(rational, row)) for row in b]
                if b and any(any(row) for row in b):
                    exp_rows = target.dim(n + shift)
                    exp_cols = source.dim(n)
                    if len(b) != exp_rows or any(len(r) != exp_cols for r in b):
                        raise ValueError("block %d has wrong shape" % n)
                    self.blocks[n] = b

    @classmethod
    def from_function(cls, source: GradedVectorSpace, target: GradedVectorSpace,
                      shift: int, fn: Callable[[int, str], GradedElement]):
        blocks = {}
        for n in source.degrees():
            rows = target.dim(n + shift)
            cols = source.dim(n)
            block = zeros(rows, cols)
            for j, lab in enumerate(source.labels(n)):
                img = fn(n, lab)
                if img.is_zero():
                    continue
                for (d, tl), c in img.coeffs.items():
                    if d != n + shift:
                        raise DegreeMismatch(
                            "image of (%d,%s) not in degree %d" % (n, lab, n + shift))
                    block[target.index(d, tl)][j] = c
            blocks[n] = block
        return cls(source, target, shift, blocks)

    def block(self, n: int) -> list[list[Fraction]]:
        b = self.blocks.get(n)
        if b is None:
            return zeros(self.target.dim(n + self.shift), self.source.dim(n))
        return b

    def apply(self, elt: GradedElement) -> GradedElement:
        out = GradedElement()
        for (n, lab), c in elt.coeffs.items():
            b = self.blocks.get(n)
            if b is None:
                continue
            j = self.source.index(n, lab)
            tlabels = self.target.labels(n + self.shift)
            contrib = GradedElement({(n + self.shift, tlabels[i]): b[i][j] * c
                                     for i in range(len(tlabels)) if b[i][j]})
            out = out + contrib
        return out

    def compose(self, other: "GradedLinearMap") -> "GradedLinearMap":
        """self after other."""
        if other.target is not self.source and other.target != self.source:
            raise ValueError("composition spaces do not match")
        blocks = {}
        for n in other.source.degrees():
            b1 = other.blocks.get(n)
            if b1 is None:
                continue
            b2 = self.blocks.get(n + other.shift)
            if b2 is None:
                continue
            blocks[n] = mat_mul(b2, b1)
        return GradedLinearMap(other.source, self.target, self.shift + other.shift, blocks)

    def is_zero(self) -> bool:
        return all(not any(any(row) for row in b) for b in self.blocks.values())

    def solve(self, target_elt: GradedElement) -> Optional[GradedElement]:
        """Some preimage under the map, or None.  Deterministic: reduced row
        echelon with free variables pinned to zero (pivot-minimal)."""
        out = GradedElement()
        by_degree: dict[int, GradedElement] = {}
        for (d, lab), c in target_elt.coeffs.items():
            by_degree.setdefault(d, GradedElement())
            by_degree[d] = by_degree[d] + GradedElement({(d, lab): c})
        for d, part in by_degree.items():
            n = d - self.shift
            cols = self.source.dim(n)
            rhs = self.target.to_vector(part, d)
            x = solve_matrix(self.block(n), cols, rhs)
            if x is None:
                return None
            out = out + self.source.from_vector(x, n)
        return out


# ---------------------------------------------------------------------------
# chain complexes and homology
# ---------------------------------------------------------------------------

class ChainComplex:
    """Graded space with a differential of homological shift -1; d*d = 0 is
    checked on construction.  Cohomological objects are stored with degrees
    negated, so one sign discipline covers both conventions."""

    def __init__(self, space: GradedVectorSpace, differential: GradedLinearMap):
        if differential.shift != -1:
            raise ValueError("differential must have shift -1")
        self.space = space
        self.d = differential
        dd = differential.compose(differential)
        if not dd.is_zero():
            raise ValueError("d squared is nonzero")

    def homology(self) -> "HomologyReport":
        return homology(self)


class HomologyReport:
    """Per-degree homology data: dimension, representative cycles whose
    classes form a basis, and a basis of the boundary space."""

    def __init__(self, dims: dict[int, int],
                 representatives: dict[int, list[GradedElement]],
                 boundaries: dict[int, list[GradedElement]],
                 cycle_dims: dict[int, int]):
        self.dims = dims
        self.representatives = representatives
        self.boundaries = boundaries
        self.cycle_dims = cycle_dims

    def dim(self, n: int) -> int:
        return self.dims.get(n, 0)

    def degrees(self) -> list[int]:
        return sorted(self.dims)

    def as_dict(self):
        return {str(n): self.dims[n] for n in self.degrees()}

    def __repr__(self):
        return "HomologyReport(%s)" % {n: self.dims[n] for n in self.degrees()}


def homology(c: ChainComplex) -> HomologyReport:
    """Homology of a chain complex, degreewise.

    dim H_n = dim ker(d_n) - dim im(d_{n+1}); representatives extend the
    boundary space to the cycle space deterministically.
    """
    space, d = c.space, c.d
    dims: dict[int, int] = {}
    reps: dict[int, list[GradedElement]] = {}
    bnds: dict[int, list[GradedElement]] = {}
    cycle_dims: dict[int, int] = {}
    degrees = set(space.degrees())
    for n in sorted(degrees):
        cols = space.dim(n)
        if cols == 0:
            continue
        ker = kernel_basis(d.block(n), cols)
        cycle_dims[n] = len(ker)
        img_vecs = []
        up = space.dim(n + 1)
        if up:
            b = d.block(n + 1)
            for j in range(up):
                col = [b[i][j] for i in range(cols)]
                if any(col):
                    img_vecs.append(col)
        img_red, img_piv = rref(img_vecs, cols)
        boundary_basis = [list(r) for r in img_red]
        rk_img = len(img_piv)
        dims[n] = len(ker) - rk_img
        chosen = extend_basis(boundary_basis, ker, cols)
        reps[n] = [space.from_vector(ker[i], n) for i in chosen]
        bnds[n] = [space.from_vector(v, n) for v in boundary_basis]
        # rank-nullity per block, asserted on every run
        assert rank(d.block(n), cols) + len(ker) == cols
    dims = {n: v for n, v in dims.items()}
    return HomologyReport(dims, reps, bnds, cycle_dims)


# ---------------------------------------------------------------------------
# finite commutative algebras and idempotent splitting
# ---------------------------------------------------------------------------

class FiniteCommutativeAlgebra:
    """Finite-dimensional commutative associative unital algebra over Q.

    table[(i, j)] is the coefficient vector of e_i * e_j; unit is a
    coefficient vector.  Commutativity, associativity and unitality are
    checked on construction.
    """

    def __init__(self, labels: Sequence[str], table: Mapping[tuple[int, int], Sequence[Fraction]],
                 unit: Sequence[Fraction]):
        self.labels = list(labels)
        n = len(self.labels)
        self.n = n
        self.table = {}
        for i in range(n):
            for j in range(n):
                v = table.get((i, j))
                if v is None:
                    v = table.get((j, i))
                if v is None:
                    v = [ZERO] * n
                self.table[(i, j)] = [rational(x) for x in v]
        self.unit = [rational(x) for x in unit]
        self._check()

    def _check(self):
        n = self.n
        for i in range(n):
            for j in range(i, n):
                if self.table[(i, j)] != self.table[(j, i)]:
                    raise ValueError("multiplication table not commutative")
        for i in range(n):
            ei = [ONE if k == i else ZERO for k in range(n)]
            if self.multiply(self.unit, ei) != ei:
                raise ValueError("unit fails on basis element %d" % i)
        for i in range(n):
            for j in range(n):
                for k in range(n):
                    ei = [ONE if t == i else ZERO for t in range(n)]
                    ej = [ONE if t == j else ZERO for t in range(n)]
                    ek = [ONE if t == k else ZERO for t in range(n)]
                    left = self.multiply(self.multiply(ei, ej), ek)
                    right = self.multiply(ei, self.multiply(ej, ek))
                    if left != right:
                        raise ValueError("multiplication not associative")

    def multiply(self, u: Sequence[Fraction], v: Sequence[Fraction]) -> list[Fraction]:
        n = self.n
        out = [ZERO] * n
        for i in range(n):
            if not u[i]:
                continue
            for j in range(n):
                if not v[j]:
                    continue
                c = u[i] * v[j]
                tij = self.table[(i, j)]
                for k in range(n):
                    if tij[k]:
                        out[k] += c * tij[k]
        return out

    def mult_operator(self, u: Sequence[Fraction]) -> list[list[Fraction]]:
        """Matrix of multiplication by u in the given basis."""
        n = self.n
        cols = []
        for j in range(n):
            ej = [ONE if t == j else ZERO for t in range(n)]
            cols.append(self.multiply(u, ej))
        return [[cols[j][i] for j in range(n)] for i in range(n)]


def _char_poly(m: list[list[Fraction]]) -> list[Fraction]:
    """Characteristic polynomial coefficients [1, c1, ..., cn] of m
    (Faddeev-LeVerrier)."""
    n = len(m)
    coeffs = [ONE]
    mk = [row[:] for row in m]
    for k in range(1, n + 1):
        ck = -sum(mk[i][i] for i in range(n)) / k
        coeffs.append(ck)
        if k == n:
            break
        for i in range(n):
            mk[i][i] += ck
        mk = mat_mul(m, mk)
    return coeffs


def _divisors(n: int) -> list[int]:
    n = abs(n)
    out = set()
    d = 1
    while d * d <= n:
        if n % d == 0:
            out.add(d)
            out.add(n // d)
        d += 1
    return sorted(out)


def _rational_roots(coeffs: list[Fraction]) -> list[Fraction]:
    """All rational roots (with the leading coefficient 1 convention kept
    general); exact, by the rational root theorem after clearing
    denominators."""
    while len(coeffs) > 1 and not coeffs[0]:
        coeffs = coeffs[1:]
    roots = set()
    # strip zero roots
    work = list(coeffs)
    while work and not work[-1]:
        roots.add(ZERO)
        work = work[:-1]
    if len(work) <= 1:
        return sorted(roots)
    from math import lcm
    den = 1
    for c in work:
        den = lcm(den, c.denominator)
    ints = [int(c * den) for c in work]
    lead, const = ints[0], ints[-1]
    for p in _divisors(const):
        for q in _divisors(lead):
            for cand in (QQ(p, q), QQ(-p, q)):
                if cand in roots:
                    continue
                val = ZERO
                for c in ints:
                    val = val * cand + c
                if val == 0:
                    roots.add(cand)
    return sorted(roots)


def idempotents(a: FiniteCommutativeAlgebra) -> list[list[Fraction]]:
    """Orthogonal primitive idempotents of a split algebra, by simultaneous
    rational eigenspace splitting of the multiplication operators.

    Raises NonSplitAlgebra when some multiplication operator has an
    irrational or non-semisimple spectrum, i.e. the algebra is not a finite
    product of copies of Q.
    """
    n = a.n
    # subspaces as lists of coordinate vectors
    subspaces: list[list[list[Fraction]]] = [identity_matrix(n)]
    for g in range(n):
        eg = [ONE if t == g else ZERO for t in range(n)]
        mg = a.mult_operator(eg)
        new_subspaces = []
        for v_basis in subspaces:
            k = len(v_basis)
            if k == 1:
                new_subspaces.append(v_basis)
                continue
            # restrict mg to the subspace: solve mg*v_i = sum_j r_ji v_j
            cols_matrix = [[v_basis[j][i] for j in range(k)] for i in range(n)]
            restr = []
            for vb in v_basis:
                img = mat_vec(mg, vb)
                coords = solve_matrix(cols_matrix, k, img)
                if coords is None:
                    raise NonSplitAlgebra("subspace not invariant")
                restr.append(coords)
            # columns of the restricted operator
            rmat = [[restr[j][i] for j in range(k)] for i in range(k)]
            cp = _char_poly(rmat)
            roots = _rational_roots(cp)
            pieces = []
            total = 0
            for lam in roots:
                shifted = [[rmat[i][j] - (lam if i == j else ZERO) for j in range(k)]
                           for i in range(k)]
                ker = kernel_basis(shifted, k)
                if not ker:
                    continue
                total += len(ker)
                piece = []
                for kv in ker:
                    vec = [ZERO] * n
                    for j, c in enumerate(kv):
                        if c:
                            for t in range(n):
                                vec[t] += c * v_basis[j][t]
                    piece.append(vec)
                pieces.append(piece)
            if total != k:
                raise NonSplitAlgebra(
                    "multiplication operator has irrational or non-semisimple spectrum")
            new_subspaces.extend(pieces)
        subspaces = new_subspaces
    if any(len(v) != 1 for v in subspaces):
        raise NonSplitAlgebra("common eigenspaces are not one-dimensional")
    idems = []
    for (vec,) in subspaces:
        sq = a.multiply(vec, vec)
        # v*v = mu*v on a common eigenline; mu = 0 would mean a nilpotent line
        mu = None
        for i in range(n):
            if vec[i]:
                mu = sq[i] / vec[i]
                break
        if not mu:
            raise NonSplitAlgebra("nilpotent eigenline")
        if [mu * x for x in vec] != sq:
            raise NonSplitAlgebra("eigenline not multiplicatively closed")
        idems.append([x / mu for x in vec])
    # exact verification of the defining identities
    for i, e in enumerate(idems):
        if a.multiply(e, e) != e:
            raise NonSplitAlgebra("candidate idempotent fails e*e = e")
        for j in range(i + 1, len(idems)):
            if any(a.multiply(e, idems[j])):
                raise NonSplitAlgebra("candidate idempotents not orthogonal")
    s = [ZERO] * n
    for e in idems:
        for t in range(n):
            s[t] += e[t]
    if s != a.unit:
        raise NonSplitAlgebra("idempotents do not sum to the unit")
    idems.sort()
    return idems
