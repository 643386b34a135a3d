"""Free graded Lie algebras on finite generator sets, truncated at bracket
weight, with a canonical super-Lyndon basis.

Basis elements are standard bracketings of Lyndon words on the generator
alphabet (ordered by declaration), together with squares [u,u] of basis
brackets u of odd total degree.  Bracket expansion goes through the tensor
algebra: the expansion of a basis bracket is triangular with smallest word
its Lyndon word (coefficient 1, or 2 for squares), so a greedy elimination
rewrites any Lie element back into the basis.  Everything above the weight
bound is truncated away, realizing the quotient by the corresponding term
of the lower central series.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Mapping, Optional, Sequence

from .linalg import (
    ONE,
    ZERO,
    DegreeMismatch,
    GradedElement,
    GradedVectorSpace,
    RowSpace,
)

Tree = object  # int leaf or (Tree, Tree) pair
Word = tuple  # tuple of generator indices


class TruncationTooLarge(Exception):
    """The requested truncated basis exceeds the configured size cap."""


class NotLieElement(Exception):
    """A tensor-algebra element failed to rewrite into the Lyndon basis."""


class InvalidDifferential(Exception):
    """Generator differentials are incompatible with the weight truncation
    or fail d*d = 0."""


class InvalidPresentation(Exception):
    """Relations or differentials of a presentation are inconsistent."""


def lyndon_words(k: int, maxlen: int):
    """All Lyndon words on {0..k-1} of length <= maxlen, lexicographic
    (Duval's algorithm)."""
    if k == 0 or maxlen == 0:
        return
    w = [-1]
    while w:
        w[-1] += 1
        yield tuple(w)
        m = len(w)
        while len(w) < maxlen:
            w.append(w[len(w) - m])
        while w and w[-1] == k - 1:
            w.pop()


def foliage(tree) -> Word:
    if isinstance(tree, int):
        return (tree,)
    return foliage(tree[0]) + foliage(tree[1])


class FreeLieTruncation:
    """Free graded Lie algebra on named generators, modulo brackets of
    weight above m.

    generators: sequence of (name, degree) or (name, degree, weight);
    weights default to 1 and give the grading by which the algebra is
    truncated (bracket weight when all weights are 1).
    """

    def __init__(self, generators: Sequence[tuple], m: int, size_cap: int = 20000):
        if m < 1:
            raise ValueError("weight bound must be >= 1")
        self.m = m
        self.gen_names: list[str] = []
        self.gen_degrees: list[int] = []
        self.gen_weights: list[int] = []
        for g in generators:
            if len(g) == 2:
                name, degree = g
                weight = 1
            else:
                name, degree, weight = g
            if name in self.gen_names:
                raise ValueError("duplicate generator %r" % name)
            if weight < 1:
                raise ValueError("generator weights must be >= 1")
            self.gen_names.append(str(name))
            self.gen_degrees.append(int(degree))
            self.gen_weights.append(int(weight))
        self.gen_index = {n: i for i, n in enumerate(self.gen_names)}

        self._build_basis(size_cap)
        self._expand_cache: dict = {}
        self._bracket_cache: dict[tuple[str, str], GradedElement] = {}

    # -- basis ------------------------------------------------------------

    def word_weight(self, w: Word) -> int:
        return sum(self.gen_weights[i] for i in w)

    def word_degree(self, w: Word) -> int:
        return sum(self.gen_degrees[i] for i in w)

    def tree_weight(self, tree) -> int:
        return self.word_weight(foliage(tree))

    def tree_degree(self, tree) -> int:
        return self.word_degree(foliage(tree))

    def _standard_tree(self, w: Word):
        """Standard (right) bracketing of a Lyndon word."""
        if len(w) == 1:
            return w[0]
        # longest proper Lyndon suffix
        for start in range(1, len(w)):
            if w[start:] in self._lyndon_set:
                return (self._standard_tree(w[:start]), self._standard_tree(w[start:]))
        raise AssertionError("no Lyndon suffix found for %r" % (w,))

    def _build_basis(self, size_cap: int):
        k = len(self.gen_names)
        words = []
        for w in lyndon_words(k, self.m):
            if self.word_weight(w) <= self.m:
                words.append(w)
                if len(words) > size_cap:
                    raise TruncationTooLarge(
                        "basis exceeds the size cap %d" % size_cap)
        self._lyndon_set = set(words)
        self.tree_of_word: dict[Word, object] = {}
        trees = []
        for w in sorted(words):
            t = self._standard_tree(w)
            self.tree_of_word[w] = t
            trees.append(t)
        # odd squares [u,u]
        self._square_words = {}
        for w in sorted(words):
            t = self.tree_of_word[w]
            if self.tree_degree(t) % 2 == 1 and 2 * self.word_weight(w) <= self.m:
                trees.append((t, t))
                self._square_words[w + w] = (t, t)
        if len(trees) > size_cap:
            raise TruncationTooLarge(
                "basis would have %d elements (cap %d)" % (len(trees), size_cap))
        self.cells: dict[tuple[int, int], list] = {}
        for t in trees:
            key = (self.tree_weight(t), self.tree_degree(t))
            self.cells.setdefault(key, []).append(t)
        for key in self.cells:
            self.cells[key].sort(key=foliage)
        self.label_of_tree: dict = {}
        self.tree_of_label: dict[str, object] = {}
        basis: dict[int, list[str]] = {}
        self.weight_of_label: dict[str, int] = {}
        for (w, d) in sorted(self.cells):
            for t in self.cells[(w, d)]:
                lab = self.format_tree(t)
                self.label_of_tree[t] = lab
                self.tree_of_label[lab] = t
                basis.setdefault(d, []).append(lab)
                self.weight_of_label[lab] = w
        self.space = GradedVectorSpace(basis)

    def format_tree(self, tree) -> str:
        if isinstance(tree, int):
            return self.gen_names[tree]
        return "[%s,%s]" % (self.format_tree(tree[0]), self.format_tree(tree[1]))

    def generator(self, name: str) -> GradedElement:
        i = self.gen_index[name]
        return GradedElement({(self.gen_degrees[i], self.gen_names[i]): ONE})

    def element_of_tree(self, tree) -> GradedElement:
        return GradedElement({(self.tree_degree(tree), self.label_of_tree[tree]): ONE})

    def dims(self) -> dict[tuple[int, int], int]:
        """Per-(weight, degree) basis dimensions."""
        return {key: len(v) for key, v in sorted(self.cells.items())}

    # -- tensor algebra expansion and rewriting ---------------------------

    def tensor_expand(self, tree) -> dict[Word, Fraction]:
        """Expansion in the tensor algebra, [a,b] = ab - (-1)^{|a||b|} ba."""
        cached = self._expand_cache.get(tree)
        if cached is not None:
            return cached
        if isinstance(tree, int):
            out = {(tree,): ONE}
        else:
            t1, t2 = tree
            a = self.tensor_expand(t1)
            b = self.tensor_expand(t2)
            sign = -ONE if (self.tree_degree(t1) * self.tree_degree(t2)) % 2 else ONE
            out = {}
            for w1, c1 in a.items():
                for w2, c2 in b.items():
                    w = w1 + w2
                    out[w] = out.get(w, ZERO) + c1 * c2
                    wr = w2 + w1
                    out[wr] = out.get(wr, ZERO) - sign * c1 * c2
            out = {w: c for w, c in out.items() if c}
        self._expand_cache[tree] = out
        return out

    def rewrite_tensor(self, tensor: Mapping[Word, Fraction]) -> GradedElement:
        """Rewrite a Lie element of the tensor algebra into the basis.

        Greedy triangular elimination on the lexicographically smallest
        word; raises NotLieElement if the input is not in the span.
        """
        work = {w: c for w, c in tensor.items() if c}
        out: dict[tuple[int, str], Fraction] = {}
        while work:
            s = min(work)
            c = work[s]
            if s in self._lyndon_set:
                tree = self.tree_of_word[s]
                coeff = c
            else:
                half = len(s) // 2
                if len(s) % 2 == 0 and s[:half] == s[half:] and s in self._square_words:
                    tree = self._square_words[s]
                    coeff = c / 2
                else:
                    raise NotLieElement("smallest word %r is not super-Lyndon" % (s,))
            lab = self.label_of_tree[tree]
            deg = self.tree_degree(tree)
            out[(deg, lab)] = out.get((deg, lab), ZERO) + coeff
            for w, cc in self.tensor_expand(tree).items():
                v = work.get(w, ZERO) - coeff * cc
                if v:
                    work[w] = v
                else:
                    work.pop(w, None)
        return GradedElement(out)

    def tensor_of_element(self, elt: GradedElement) -> dict[Word, Fraction]:
        out: dict[Word, Fraction] = {}
        for (d, lab), c in elt.coeffs.items():
            for w, cc in self.tensor_expand(self.tree_of_label[lab]).items():
                v = out.get(w, ZERO) + c * cc
                if v:
                    out[w] = v
                else:
                    out.pop(w, None)
        return out

    # -- bracket -----------------------------------------------------------

    def bracket_labels(self, lab1: str, lab2: str) -> GradedElement:
        key = (lab1, lab2)
        cached = self._bracket_cache.get(key)
        if cached is not None:
            return cached
        t1 = self.tree_of_label[lab1]
        t2 = self.tree_of_label[lab2]
        if self.tree_weight(t1) + self.tree_weight(t2) > self.m:
            res = GradedElement()
        else:
            a = self.tensor_expand(t1)
            b = self.tensor_expand(t2)
            sign = -ONE if (self.tree_degree(t1) * self.tree_degree(t2)) % 2 else ONE
            comm: dict[Word, Fraction] = {}
            for w1, c1 in a.items():
                for w2, c2 in b.items():
                    w = w1 + w2
                    comm[w] = comm.get(w, ZERO) + c1 * c2
                    wr = w2 + w1
                    comm[wr] = comm.get(wr, ZERO) - sign * c1 * c2
            res = self.rewrite_tensor(comm)
        self._bracket_cache[key] = res
        # antisymmetry gives the mirrored pair for free
        d1, d2 = self.tree_degree(t1), self.tree_degree(t2)
        msign = -ONE if (d1 * d2) % 2 == 0 else ONE
        self._bracket_cache.setdefault((lab2, lab1), res.scale(msign))
        return res

    def bracket(self, u: GradedElement, v: GradedElement) -> GradedElement:
        out = GradedElement()
        for (d1, l1), c1 in u.coeffs.items():
            for (d2, l2), c2 in v.coeffs.items():
                out = out + self.bracket_labels(l1, l2).scale(c1 * c2)
        return out

    def ad_nilpotency_bound(self) -> int:
        return self.m


class FreeDgla:
    """Free truncated Lie algebra with a differential given on generators
    and extended by the graded Leibniz rule.

    The differential must not decrease weight (so that it descends to the
    weight truncation); d*d = 0 on generators is checked, which by the
    Leibniz rule gives d*d = 0 everywhere within the truncation.
    """

    def __init__(self, lie: FreeLieTruncation, dgens: Mapping[str, GradedElement]):
        self.lie = lie
        self.dgens: dict[str, GradedElement] = {}
        for i, name in enumerate(lie.gen_names):
            val = dgens.get(name, GradedElement())
            deg = lie.gen_degrees[i]
            for (d, lab), _ in val.coeffs.items():
                if d != deg - 1:
                    raise InvalidDifferential("d(%s) must be homogeneous of degree %d"
                                              % (name, deg - 1))
                if lie.weight_of_label[lab] < lie.gen_weights[i]:
                    raise InvalidDifferential(
                        "d(%s) lowers weight; truncation would not be a dg quotient" % name)
            self.dgens[name] = val
        self._d_cache: dict[str, GradedElement] = {}
        for name in lie.gen_names:
            dd = self.d(self.dgens[name])
            if not dd.is_zero():
                raise InvalidDifferential("d(d(%s)) = %r is nonzero" % (name, dd))

    def d_label(self, lab: str) -> GradedElement:
        cached = self._d_cache.get(lab)
        if cached is not None:
            return cached
        tree = self.lie.tree_of_label[lab]
        if isinstance(tree, int):
            res = self.dgens[self.lie.gen_names[tree]]
        else:
            t1, t2 = tree
            l1 = self.lie.label_of_tree[t1]
            l2 = self.lie.label_of_tree[t2]
            e1 = self.lie.element_of_tree(t1)
            e2 = self.lie.element_of_tree(t2)
            sgn = -ONE if self.lie.tree_degree(t1) % 2 else ONE
            res = self.lie.bracket(self.d_label(l1), e2) + \
                self.lie.bracket(e1, self.d_label(l2)).scale(sgn)
        self._d_cache[lab] = res
        return res

    def d(self, elt: GradedElement) -> GradedElement:
        out = GradedElement()
        for (deg, lab), c in elt.coeffs.items():
            out = out + self.d_label(lab).scale(c)
        return out


# ---------------------------------------------------------------------------
# presentations and truncated quotients
# ---------------------------------------------------------------------------

class LiePresentation:
    """Finitely presented dgla: free generators, homogeneous relation
    elements (coordinates in the super-Lyndon basis, valid in any
    sufficiently deep truncation), and generator differentials."""

    def __init__(self, generators: Sequence[tuple],
                 relations: Sequence[GradedElement] = (),
                 dgens: Optional[Mapping[str, GradedElement]] = None):
        self.generators = [tuple(g) if len(g) == 3 else (g[0], g[1], 1)
                           for g in generators]
        self.relations = list(relations)
        self.dgens = dict(dgens or {})
        for r in self.relations:
            r.degree()  # homogeneity check

    def materialize(self, m: int, size_cap: int = 20000) -> "QuotientLie":
        return QuotientLie(self, m, size_cap)


class QuotientLie:
    """Weight-m truncation of a presented dgla: the quotient of the
    truncated free algebra by the saturated ideal of the relations.

    The quotient basis consists of the non-pivot free basis labels under a
    deterministic weight-then-label elimination order, so each basis label
    carries a weight witness and brackets remain weight-filtered.
    """

    def __init__(self, presentation: LiePresentation, m: int, size_cap: int = 20000):
        self.presentation = presentation
        self.m = m
        self.free = FreeLieTruncation(presentation.generators, m, size_cap)
        lie = self.free

        # column order per degree: (weight, label)
        self._columns: dict[int, list[str]] = {}
        self._colindex: dict[int, dict[str, int]] = {}
        for deg in lie.space.degrees():
            labs = sorted(lie.space.labels(deg),
                          key=lambda l: (lie.weight_of_label[l], l))
            self._columns[deg] = labs
            self._colindex[deg] = {l: i for i, l in enumerate(labs)}

        self._ideal: dict[int, RowSpace] = {
            deg: RowSpace(len(cols)) for deg, cols in self._columns.items()}
        self._saturate()

        basis: dict[int, list[str]] = {}
        self.weight_of_label: dict[str, int] = {}
        for deg in sorted(self._columns):
            cols = self._columns[deg]
            pivot_set = set(self._ideal[deg].pivots)
            keep = [lab for i, lab in enumerate(cols) if i not in pivot_set]
            if keep:
                basis[deg] = keep
                for lab in keep:
                    self.weight_of_label[lab] = lie.weight_of_label[lab]
        self.space = GradedVectorSpace(basis)

        dgens = {}
        for name, degree, _w in presentation.generators:
            dgens[name] = presentation.dgens.get(name, GradedElement())
        self.free_dgla = FreeDgla(lie, dgens)
        self._check_differential()
        self._bracket_cache: dict[tuple[str, str], GradedElement] = {}
        self._d_cache: dict[str, GradedElement] = {}

    # free-side vectors ----------------------------------------------------

    def _to_vec(self, elt: GradedElement, deg: int):
        cols = self._columns.get(deg, [])
        v = [ZERO] * len(cols)
        idx = self._colindex.get(deg, {})
        for (d, lab), c in elt.coeffs.items():
            if d != deg:
                raise DegreeMismatch("expected degree %d" % deg)
            v[idx[lab]] = c
        return v

    def _from_vec(self, v, deg: int) -> GradedElement:
        cols = self._columns[deg]
        return GradedElement({(deg, cols[i]): c for i, c in enumerate(v) if c})

    def _saturate(self):
        lie = self.free
        queue: list[GradedElement] = []
        for r in self.presentation.relations:
            mapped = GradedElement({k: c for k, c in r.coeffs.items()})
            deg = mapped.degree()
            if deg is None:
                continue
            v = self._to_vec(mapped, deg)
            if self._ideal[deg].add(v):
                queue.append(mapped)
        # closing under ad of the generators closes under the whole algebra
        gens = [lie.generator(n) for n in lie.gen_names]
        while queue:
            elt = queue.pop()
            for g in gens:
                nxt = lie.bracket(g, elt)
                if nxt.is_zero():
                    continue
                deg = nxt.degree()
                v = self._to_vec(nxt, deg)
                if self._ideal[deg].add(v):
                    queue.append(nxt)

    def project(self, elt: GradedElement) -> GradedElement:
        """Image in the quotient, coordinates on the surviving labels."""
        out = GradedElement()
        for deg in sorted(elt.degrees()):
            part = elt.homogeneous_part(deg)
            v = self._ideal[deg].reduce(self._to_vec(part, deg))
            out = out + self._from_vec(v, deg)
        return out

    def _check_differential(self):
        for deg, rs in self._ideal.items():
            for row in rs.rows:
                elt = self._from_vec(row, deg)
                img = self.free_dgla.d(elt)
                if not self.project(img).is_zero():
                    raise InvalidPresentation(
                        "differential does not preserve the relation ideal")

    # quotient operations ---------------------------------------------------

    def bracket_labels(self, lab1: str, lab2: str) -> GradedElement:
        key = (lab1, lab2)
        cached = self._bracket_cache.get(key)
        if cached is None:
            cached = self.project(self.free.bracket_labels(lab1, lab2))
            self._bracket_cache[key] = cached
        return cached

    def bracket(self, u: GradedElement, v: GradedElement) -> GradedElement:
        out = GradedElement()
        for (d1, l1), c1 in u.coeffs.items():
            for (d2, l2), c2 in v.coeffs.items():
                out = out + self.bracket_labels(l1, l2).scale(c1 * c2)
        return out

    def d_label(self, lab: str) -> GradedElement:
        cached = self._d_cache.get(lab)
        if cached is None:
            cached = self.project(self.free_dgla.d_label(lab))
            self._d_cache[lab] = cached
        return cached

    def d(self, elt: GradedElement) -> GradedElement:
        out = GradedElement()
        for (deg, lab), c in elt.coeffs.items():
            out = out + self.d_label(lab).scale(c)
        return out


# ---------------------------------------------------------------------------
# truncated tensor-algebra exponentials (gauge and BCH checks)
# ---------------------------------------------------------------------------

def tensor_product(a: Mapping[Word, Fraction], b: Mapping[Word, Fraction],
                   lie: FreeLieTruncation, max_weight: int) -> dict[Word, Fraction]:
    out: dict[Word, Fraction] = {}
    for w1, c1 in a.items():
        for w2, c2 in b.items():
            w = w1 + w2
            if lie.word_weight(w) > max_weight:
                continue
            v = out.get(w, ZERO) + c1 * c2
            if v:
                out[w] = v
            else:
                out.pop(w, None)
    return out


def tensor_exp(a: Mapping[Word, Fraction], lie: FreeLieTruncation,
               max_weight: int) -> dict[Word, Fraction]:
    """exp of a weight >= 1 element in the truncated tensor algebra."""
    out: dict[Word, Fraction] = {(): ONE}
    term: dict[Word, Fraction] = {(): ONE}
    k = 0
    while term:
        k += 1
        term = tensor_product(term, a, lie, max_weight)
        term = {w: c / k for w, c in term.items()}
        for w, c in term.items():
            v = out.get(w, ZERO) + c
            if v:
                out[w] = v
            else:
                out.pop(w, None)
        if k > max_weight:
            break
    return out


def tensor_log(a: Mapping[Word, Fraction], lie: FreeLieTruncation,
               max_weight: int) -> dict[Word, Fraction]:
    """log of 1 + nilpotent in the truncated tensor algebra."""
    n = dict(a)
    if n.get((), ZERO) != ONE:
        raise ValueError("log requires constant term 1")
    n.pop(())
    out: dict[Word, Fraction] = {}
    term: dict[Word, Fraction] = {(): ONE}
    k = 0
    while True:
        k += 1
        term = tensor_product(term, n, lie, max_weight)
        if not term or k > max_weight:
            break
        sign = ONE if k % 2 == 1 else -ONE
        for w, c in term.items():
            v = out.get(w, ZERO) + sign * c / k
            if v:
                out[w] = v
            else:
                out.pop(w, None)
    return out


def bch(lie: FreeLieTruncation, a: GradedElement, b: GradedElement) -> GradedElement:
    """Baker-Campbell-Hausdorff product log(exp a * exp b) within the
    truncation, rewritten into the basis."""
    ta = lie.tensor_of_element(a)
    tb = lie.tensor_of_element(b)
    prod = tensor_product(tensor_exp(ta, lie, lie.m), tensor_exp(tb, lie, lie.m),
                          lie, lie.m)
    return lie.rewrite_tensor(tensor_log(prod, lie, lie.m))


# ---------------------------------------------------------------------------
# public constructors
# ---------------------------------------------------------------------------

def build_basis(generators: Sequence[tuple], m: int,
                size_cap: int = 20000) -> FreeLieTruncation:
    """Truncated free graded Lie algebra on the given generators."""
    return FreeLieTruncation(generators, m, size_cap)


def truncated_basis_estimate(generators: Sequence[tuple], m: int,
                             cap: int) -> Optional[int]:
    """Number of Lyndon words of weight <= m over the generators, or None
    once the count exceeds cap; cheap (no trees or expansions built)."""
    weights = [g[2] if len(g) == 3 else 1 for g in generators]
    count = 0
    for w in lyndon_words(len(weights), m):
        if sum(weights[i] for i in w) <= m:
            count += 1
            if count > cap:
                return None
    return count


def free_product_presentation(gens1, rels1, dgens1, gens2, rels2, dgens2) -> LiePresentation:
    """Presentation of the free product: disjoint generators, the union of
    the relations, no cross relations."""
    names1 = {g[0] for g in gens1}
    for g in gens2:
        if g[0] in names1:
            raise ValueError("generator name clash in free product: %r" % (g[0],))
    dg = dict(dgens1)
    dg.update(dgens2)
    return LiePresentation(list(gens1) + list(gens2), list(rels1) + list(rels2), dg)
