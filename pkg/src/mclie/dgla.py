"""Differential graded Lie algebras: construction-time axiom checks, MC
elements, twisting, connected covers, the sphere dgla, adjoining MC
variables, disjoint products, homology and the gauge action.

Degrees are homological; Maurer-Cartan elements live in degree -1 and the
twisted differential is d(y) + [y, xi].  Finite dglas carry an optional
per-basis-element weight witness certifying nilpotence; algebras built from
presentations can be re-materialized at any truncation weight, which is how
completeness claims are checked by stabilization.
"""

from __future__ import annotations

import itertools
from typing import Callable, Mapping, Optional, Sequence

from .linalg import (
    ONE,
    QQ,
    ZERO,
    ChainComplex,
    DegreeMismatch,
    GradedElement,
    GradedLinearMap,
    GradedVectorSpace,
    HomologyReport,
    homology as complex_homology,
    kernel_basis,
    rank as matrix_rank,
    solve_matrix,
)
from .freelie import (
    FreeLieTruncation,
    LiePresentation,
    QuotientLie,
    free_product_presentation,
)

AXIOM_PAIR_CAP = 60
AXIOM_TRIPLE_CAP = 24


class NotMaurerCartan(Exception):
    """The element does not satisfy the Maurer-Cartan equation."""


class NotNilpotent(Exception):
    """ad of the gauge parameter did not vanish within the expected bound."""


class AxiomViolation(Exception):
    """A dgla axiom failed on construction."""


class Dgla:
    """Finite-dimensional dgla given by a basis, a differential and a
    bracket on basis pairs.

    bracket_fn(deg1, label1, deg2, label2) -> GradedElement is evaluated
    lazily with a cache, so large truncated quotients never materialize a
    full structure-constant table.
    """

    def __init__(self, space: GradedVectorSpace, differential: GradedLinearMap,
                 bracket_fn: Callable[[int, str, int, str], GradedElement],
                 weights: Optional[Mapping[str, int]] = None,
                 presentation: Optional["DglaPresentation"] = None,
                 weight_bound: Optional[int] = None,
                 twisted_by: Optional[GradedElement] = None,
                 check: str = "auto"):
        self.space = space
        self.d_map = differential
        self._bracket_fn = bracket_fn
        self._bracket_cache: dict[tuple[str, str], GradedElement] = {}
        self.weights = dict(weights) if weights else None
        self.presentation = presentation
        self.weight_bound = weight_bound
        self.twisted_by = twisted_by
        dd = differential.compose(differential)
        if not dd.is_zero():
            raise AxiomViolation("d squared is nonzero")
        if check == "full" or (check == "auto" and space.total_dim() <= AXIOM_TRIPLE_CAP):
            self.verify_axioms()

    # -- basic operations ---------------------------------------------------

    def basis_items(self) -> list[tuple[int, str]]:
        return [(n, lab) for n in self.space.degrees() for lab in self.space.labels(n)]

    def d(self, elt: GradedElement) -> GradedElement:
        return self.d_map.apply(elt)

    def bracket_labels(self, d1: int, l1: str, d2: int, l2: str) -> GradedElement:
        key = (l1, l2)
        out = self._bracket_cache.get(key)
        if out is None:
            out = self._bracket_fn(d1, l1, d2, l2)
            self._bracket_cache[key] = out
        return out

    def bracket(self, u: GradedElement, v: GradedElement) -> GradedElement:
        out = GradedElement()
        for (d1, l1), c1 in u.coeffs.items():
            for (d2, l2), c2 in v.coeffs.items():
                out = out + self.bracket_labels(d1, l1, d2, l2).scale(c1 * c2)
        return out

    def element(self, label: str) -> GradedElement:
        for n in self.space.degrees():
            if self.space.has(n, label):
                return self.space.basis_element(n, label)
        raise KeyError(label)

    def homology(self) -> HomologyReport:
        return complex_homology(ChainComplex(self.space, self.d_map))

    def total_dim(self) -> int:
        return self.space.total_dim()

    def is_abelian(self) -> bool:
        items = self.basis_items()
        return all(self.bracket_labels(d1, l1, d2, l2).is_zero()
                   for (d1, l1), (d2, l2) in itertools.combinations_with_replacement(items, 2))

    # -- axioms ---------------------------------------------------------------

    def verify_axioms(self, pair_cap: int = AXIOM_PAIR_CAP,
                      triple_cap: int = AXIOM_TRIPLE_CAP):
        """Exhaustive antisymmetry/Leibniz on basis pairs and graded Jacobi
        on basis triples, within the given size caps."""
        items = self.basis_items()
        n = len(items)
        if n <= pair_cap:
            for (d1, l1), (d2, l2) in itertools.product(items, repeat=2):
                b12 = self.bracket_labels(d1, l1, d2, l2)
                b21 = self.bracket_labels(d2, l2, d1, l1)
                sign = -ONE if (d1 * d2) % 2 else ONE
                if not (b12 - b21.scale(-sign)).is_zero():
                    raise AxiomViolation("antisymmetry fails on (%s, %s)" % (l1, l2))
                u = self.space.basis_element(d1, l1)
                v = self.space.basis_element(d2, l2)
                lhs = self.d(b12)
                rhs = self.bracket(self.d(u), v) + \
                    self.bracket(u, self.d(v)).scale(-ONE if d1 % 2 else ONE)
                if not (lhs - rhs).is_zero():
                    raise AxiomViolation("Leibniz fails on (%s, %s)" % (l1, l2))
        if n <= triple_cap:
            for (d1, l1), (d2, l2), (d3, l3) in itertools.product(items, repeat=3):
                u = self.space.basis_element(d1, l1)
                v = self.space.basis_element(d2, l2)
                w = self.space.basis_element(d3, l3)
                lhs = self.bracket(u, self.bracket(v, w))
                rhs = self.bracket(self.bracket(u, v), w) + \
                    self.bracket(v, self.bracket(u, w)).scale(
                        -ONE if (d1 * d2) % 2 else ONE)
                if not (lhs - rhs).is_zero():
                    raise AxiomViolation("Jacobi fails on (%s, %s, %s)" % (l1, l2, l3))


class DglaPresentation:
    """Re-materializable origin of a dgla: a Lie presentation plus an
    optional twisting MC element (coordinates in quotient labels, valid in
    any deeper truncation)."""

    def __init__(self, pres: LiePresentation, twist: Optional[GradedElement] = None):
        self.pres = pres
        self.twist = twist

    def materialize(self, m: int, size_cap: int = 20000, check: str = "auto") -> Dgla:
        q = self.pres.materialize(m, size_cap)
        g = dgla_from_quotient(q, presentation=DglaPresentation(self.pres), check=check)
        if self.twist is not None:
            g = twist(g, q.project(self.twist), check=check)
            g.presentation = self
        return g


def dgla_from_quotient(q: QuotientLie, presentation=None, check: str = "auto") -> Dgla:
    d_map = GradedLinearMap.from_function(
        q.space, q.space, -1, lambda n, lab: q.d_label(lab))

    def bracket_fn(d1, l1, d2, l2):
        return q.bracket_labels(l1, l2)

    return Dgla(q.space, d_map, bracket_fn, weights=q.weight_of_label,
                presentation=presentation, weight_bound=q.m, check=check)


def dgla_from_table(basis: Mapping[int, Sequence[str]],
                    brackets: Mapping[tuple[str, str], GradedElement],
                    differentials: Optional[Mapping[str, GradedElement]] = None,
                    weights: Optional[Mapping[str, int]] = None,
                    check: str = "full") -> Dgla:
    """Finite dgla from explicit structure constants.

    brackets maps (label1, label2) to [e_1, e_2]; missing mirror pairs are
    filled in by graded antisymmetry, everything else is zero.
    """
    space = GradedVectorSpace(basis)
    degree_of = {lab: n for n in space.degrees() for lab in space.labels(n)}
    table: dict[tuple[str, str], GradedElement] = {}
    for (l1, l2), val in brackets.items():
        table[(l1, l2)] = val
    for (l1, l2), val in list(table.items()):
        if (l2, l1) not in table:
            sign = -ONE if (degree_of[l1] * degree_of[l2]) % 2 == 0 else ONE
            table[(l2, l1)] = val.scale(sign)

    differentials = differentials or {}
    d_map = GradedLinearMap.from_function(
        space, space, -1, lambda n, lab: differentials.get(lab, GradedElement()))

    def bracket_fn(d1, l1, d2, l2):
        return table.get((l1, l2), GradedElement())

    return Dgla(space, d_map, bracket_fn, weights=weights, check=check)


# -- stock algebras -----------------------------------------------------------


def zero_dgla() -> Dgla:
    space = GradedVectorSpace({})
    d = GradedLinearMap(space, space, -1, {})
    return Dgla(space, d, lambda *a: GradedElement())


def sphere_dgla(m: int = 2) -> Dgla:
    """The model of the 0-sphere: spanned by x and [x,x] with |x| = -1 and
    d(x) = -1/2 [x,x]."""
    pres = LiePresentation(
        [("x", -1)],
        dgens={"x": GradedElement({(-2, "[x,x]"): QQ(-1, 2)})})
    return DglaPresentation(pres).materialize(max(m, 2))


def abelian_dgla(basis: Mapping[int, Sequence[str]],
                 differentials: Optional[Mapping[str, GradedElement]] = None) -> Dgla:
    return dgla_from_table(basis, {}, differentials)


def heisenberg_dgla() -> Dgla:
    """3-dimensional Heisenberg algebra in degree 0, weight-graded with the
    central generator in weight 2."""
    pres = heisenberg_presentation()
    return DglaPresentation(pres).materialize(3)


def heisenberg_presentation() -> LiePresentation:
    free = FreeLieTruncation([("a", 0), ("b", 0), ("c", 0, 2)], 3)
    a, b, c = (free.generator(n) for n in "abc")
    rels = [free.bracket(a, c), free.bracket(b, c), free.bracket(a, b) - c]
    return LiePresentation([("a", 0), ("b", 0), ("c", 0, 2)], rels)


def g_s_dgla(size: int, m: int = 2) -> Dgla:
    """Free dgla on degree -1 generators x_1..x_size with
    d(x_s) = -1/2 [x_s, x_s]; models the discrete space S + basepoint."""
    gens = [("x%d" % (s + 1), -1) for s in range(size)]
    dgens = {}
    for name, _ in gens:
        dgens[name] = GradedElement({(-2, "[%s,%s]" % (name, name)): QQ(-1, 2)})
    pres = LiePresentation(gens, dgens=dgens)
    return DglaPresentation(pres).materialize(m)


def f_xa_dgla(m: int) -> Dgla:
    """The free dgla on x (degree -1) and a (degree 0) with
    d(x) = -1/2 [x,x], d(a) = 0, truncated at weight m."""
    pres = LiePresentation(
        [("a", 0), ("x", -1)],
        dgens={"x": GradedElement({(-2, "[x,x]"): QQ(-1, 2)})})
    return DglaPresentation(pres).materialize(m)


# -- presentations of arbitrary finite dglas ----------------------------------


def presentation_of(g: Dgla) -> DglaPresentation:
    """A presentation whose weight-m truncations recover g: generators are
    the basis labels, relations encode the bracket table."""
    if g.presentation is not None:
        return g.presentation
    items = g.basis_items()
    weights = g.weights or {lab: 1 for _, lab in items}
    gens = [(lab, n, weights.get(lab, 1)) for n, lab in items]
    depth = max((weights.get(l1, 1) + weights.get(l2, 1)
                 for (_, l1), (_, l2) in itertools.product(items, repeat=2)),
                default=2)
    free = FreeLieTruncation(gens, max(depth, 2))
    rels = []
    for (d1, l1), (d2, l2) in itertools.combinations_with_replacement(items, 2):
        val = g.bracket_labels(d1, l1, d2, l2)
        rels.append(free.bracket(free.generator(l1), free.generator(l2)) - val)
    dgens = {lab: g.d(g.space.basis_element(n, lab)) for n, lab in items}
    return DglaPresentation(LiePresentation(gens, rels, dgens))


def _rename_generators(pres: LiePresentation, taken: set[str]):
    """Rename clashing generator names by priming; returns the renamed
    presentation and the old -> new mapping."""
    mapping = {}
    for name, deg, w in pres.generators:
        new = name
        while new in taken:
            new += "'"
        mapping[name] = new
        taken.add(new)
    if all(k == v for k, v in mapping.items()):
        return pres, mapping

    def rename_elt(e: GradedElement) -> GradedElement:
        out = {}
        for (d, lab), c in e.coeffs.items():
            new = lab
            # labels of relations/differentials only involve generator names
            # and brackets of them; rename leaf names longest-first
            for old in sorted(mapping, key=len, reverse=True):
                new = _replace_label(new, old, mapping[old])
            out[(d, new)] = c
        return GradedElement(out)

    gens = [(mapping[n], d, w) for n, d, w in pres.generators]
    rels = [rename_elt(r) for r in pres.relations]
    dgens = {mapping[n]: rename_elt(v) for n, v in pres.dgens.items()}
    return LiePresentation(gens, rels, dgens), mapping


def _replace_label(label: str, old: str, new: str) -> str:
    """Replace the generator name old by new inside a bracket label,
    matching only complete names (delimited by [ , ])."""
    out = []
    i = 0
    while i < len(label):
        if label.startswith(old, i):
            before = label[i - 1] if i else ""
            j = i + len(old)
            after = label[j] if j < len(label) else ""
            if before in ("", "[", ",") and after in ("", ",", "]"):
                out.append(new)
                i = j
                continue
        out.append(label[i])
        i += 1
    return "".join(out)


# -- MC elements, twisting, covers, gauge -------------------------------------


def mc_residual(g: Dgla, xi: GradedElement) -> GradedElement:
    if not xi.is_zero() and xi.degree() != -1:
        raise DegreeMismatch("MC candidates must be homogeneous of degree -1")
    return g.d(xi) + g.bracket(xi, xi).scale(QQ(1, 2))


def is_mc(g: Dgla, xi: GradedElement) -> tuple[bool, GradedElement]:
    """Exact MC residual d(xi) + 1/2 [xi, xi]; true iff it vanishes."""
    r = mc_residual(g, xi)
    return r.is_zero(), r


def twist(g: Dgla, xi: GradedElement, check: str = "auto") -> Dgla:
    """The dgla with the twisted differential; requires xi MC.

    Internally the twist is the left adjoint d(y) + [xi, y], the degree -1
    derivation; on odd-degree elements (in particular throughout the MC
    theory) this agrees with adding [y, xi]."""
    ok, res = is_mc(g, xi)
    if not ok:
        raise NotMaurerCartan("residual %r" % res)
    d_map = GradedLinearMap.from_function(
        g.space, g.space, -1,
        lambda n, lab: g.d(g.space.basis_element(n, lab)) +
        g.bracket(xi, g.space.basis_element(n, lab)))
    out = Dgla(g.space, d_map, g._bracket_fn, weights=g.weights,
               weight_bound=g.weight_bound, twisted_by=xi, check=check)
    out._bracket_cache = g._bracket_cache
    return out


def adjoin_mc_variable(g: Dgla, m: int, var: str = "x") -> Dgla:
    """g<x>: freely adjoin x with |x| = -1 and d(x) = -1/2 [x,x], truncated
    at weight m.  x is MC in the result."""
    pres_g = presentation_of(g).pres
    taken = {name for name, _, _ in pres_g.generators}
    while var in taken:
        var += "'"
    sq = "[%s,%s]" % (var, var)
    adjoined = LiePresentation(
        list(pres_g.generators) + [(var, -1, 1)],
        pres_g.relations,
        dict(pres_g.dgens, **{var: GradedElement({(-2, sq): QQ(-1, 2)})}))
    out = DglaPresentation(adjoined).materialize(m)
    out.adjoined_variable = var
    x = out.element(var)
    ok, res = is_mc(out, x)
    assert ok, "adjoined variable fails MC: %r" % res
    return out


def disjoint_product(g: Dgla, h: Dgla, m: int, check: str = "auto") -> Dgla:
    """(g * s)^x * h truncated at weight m, carrying the distinguished MC
    element -x (the twist datum x is recorded as .twist_of)."""
    pres_g = presentation_of(g).pres
    taken = {name for name, _, _ in pres_g.generators}
    var = "x"
    while var in taken:
        var += "'"
    taken.add(var)
    pres_h, h_renames = _rename_generators(presentation_of(h).pres, taken)
    sq = "[%s,%s]" % (var, var)
    # twisted differential: d^x(u) = d(u) + [u, x] on the g*s factor
    dgens = {}
    gen_elts = {}
    gens = list(pres_g.generators) + [(var, -1, 1)] + list(pres_h.generators)
    names_g = [name for name, _, _ in pres_g.generators]
    free = FreeLieTruncation(gens, 2 + max(w for _, _, w in gens) if gens else 2)
    for name, deg, w in pres_g.generators:
        base = pres_g.dgens.get(name, GradedElement())
        dgens[name] = base + free.bracket(free.generator(var), free.generator(name))
    dgens[var] = GradedElement({(-2, sq): QQ(1, 2)})
    for name, deg, w in pres_h.generators:
        dgens[name] = pres_h.dgens.get(name, GradedElement())
    pres = LiePresentation(gens, list(pres_g.relations) + list(pres_h.relations), dgens)
    out = DglaPresentation(pres).materialize(m, check=check)
    out.presentation = DglaPresentation(pres)
    out.twist_of = out.element(var)
    out.variable_name = var
    out.second_factor_names = h_renames
    base_point = -out.twist_of
    ok, res = is_mc(out, base_point)
    assert ok, "distinguished MC element fails: %r" % res
    out.distinguished_mc = base_point
    return out


def free_product_dgla(g: Dgla, h: Dgla, m: int, check: str = "auto") -> Dgla:
    """Plain (untwisted) free product g * h truncated at weight m."""
    pres_g = presentation_of(g).pres
    taken = {name for name, _, _ in pres_g.generators}
    pres_h, h_renames = _rename_generators(presentation_of(h).pres, taken)
    pres = free_product_presentation(
        pres_g.generators, pres_g.relations, pres_g.dgens,
        pres_h.generators, pres_h.relations, pres_h.dgens)
    out = DglaPresentation(pres).materialize(m, check=check)
    out.second_factor_names = h_renames
    return out


def connected_cover(g: Dgla) -> tuple[Dgla, GradedLinearMap]:
    """Sub-dgla keeping positive degrees, replacing degree 0 by ker(d_0),
    dropping negative degrees; returns (cover, inclusion)."""
    basis: dict[int, list[str]] = {}
    incl_vectors: dict[str, GradedElement] = {}
    for n in g.space.degrees():
        if n > 0:
            basis[n] = list(g.space.labels(n))
            for lab in basis[n]:
                incl_vectors[lab] = g.space.basis_element(n, lab)
        elif n == 0:
            cols = g.space.dim(0)
            ker = kernel_basis(g.d_map.block(0), cols)
            labs = []
            for i, v in enumerate(ker):
                lab = "ker0_%d" % i
                labs.append(lab)
                incl_vectors[lab] = g.space.from_vector(v, 0)
            if labs:
                basis[0] = labs
    space = GradedVectorSpace(basis)

    def express(elt: GradedElement) -> GradedElement:
        """Coordinates of an element of the cover subspace."""
        out = GradedElement()
        for n in sorted(elt.degrees()):
            part = elt.homogeneous_part(n)
            if n > 0:
                out = out + GradedElement({(n, lab): c for (_, lab), c in part.coeffs.items()})
            elif n == 0:
                labs = space.labels(0)
                cols_matrix = [[incl_vectors[lab].coeff(0, gl) for lab in labs]
                               for gl in g.space.labels(0)]
                rhs = g.space.to_vector(part, 0)
                x = solve_matrix(cols_matrix, len(labs), rhs)
                if x is None:
                    raise AxiomViolation("element not in the connected cover")
                out = out + GradedElement({(0, labs[i]): c for i, c in enumerate(x) if c})
            else:
                raise AxiomViolation("negative-degree component in the cover")
        return out

    def incl(elt: GradedElement) -> GradedElement:
        out = GradedElement()
        for (n, lab), c in elt.coeffs.items():
            out = out + incl_vectors[lab].scale(c)
        return out

    d_map = GradedLinearMap.from_function(
        space, space, -1,
        lambda n, lab: express(g.d(incl_vectors[lab])) if n >= 1 else GradedElement())

    def bracket_fn(d1, l1, d2, l2):
        return express(g.bracket(incl_vectors[l1], incl_vectors[l2]))

    weights = None
    if g.weights is not None:
        weights = {}
        for n in space.degrees():
            for lab in space.labels(n):
                if n > 0:
                    weights[lab] = g.weights[lab]
                else:
                    weights[lab] = min((g.weights[l2]
                                        for (_, l2) in incl_vectors[lab].coeffs),
                                       default=1)
    cover = Dgla(space, d_map, bracket_fn, weights=weights,
                 weight_bound=g.weight_bound, check="auto")
    inclusion = GradedLinearMap.from_function(space, g.space, 0,
                                              lambda n, lab: incl_vectors[lab])
    return cover, inclusion


def _ad_bound(g: Dgla) -> int:
    if g.weight_bound is not None:
        return g.weight_bound + 1
    return g.space.total_dim() + 1


def gauge_act(g: Dgla, a: GradedElement, xi: GradedElement) -> GradedElement:
    """Gauge action exp(a).xi = e^{ad_a} xi - sum_k ad_a^k/(k+1)! (da);
    requires a of degree 0 with nilpotent ad, and xi MC.  The output
    satisfies the MC equation exactly."""
    if not a.is_zero() and a.degree() != 0:
        raise DegreeMismatch("gauge parameters must have degree 0")
    ok, res = is_mc(g, xi)
    if not ok:
        raise NotMaurerCartan("residual %r" % res)
    bound = _ad_bound(g)
    out = GradedElement()
    term = xi
    k = 0
    fact = ONE
    while not term.is_zero():
        out = out + term.scale(ONE / fact)
        k += 1
        fact *= k
        term = g.bracket(a, term)
        if k > bound:
            raise NotNilpotent("ad of the gauge parameter is not nilpotent")
    term = g.d(a)
    k = 0
    fact = ONE  # (k+1)! as k advances
    while not term.is_zero():
        out = out - term.scale(ONE / fact)
        k += 1
        fact *= k + 1
        term = g.bracket(a, term)
        if k > bound:
            raise NotNilpotent("ad of the gauge parameter is not nilpotent")
    ok, res = is_mc(g, out)
    assert ok, "gauge action broke the MC equation: %r" % res
    return out


def _weight_homogeneous_shift(g: Dgla) -> Optional[int]:
    """The uniform weight shift of the differential, or None if mixed."""
    if g.weights is None:
        return None
    shift = None
    for n, lab in g.basis_items():
        img = g.d(g.space.basis_element(n, lab))
        for (_, l2) in img.coeffs:
            s = g.weights[l2] - g.weights[lab]
            if shift is None:
                shift = s
            elif shift != s:
                return None
    return shift


def weighted_homology(g: Dgla) -> dict[tuple[int, int], int]:
    """Per-(weight, degree) homology dimensions; requires the differential
    to be weight-homogeneous (each cell is a finite subcomplex)."""
    if _weight_homogeneous_shift(g) is None:
        raise ValueError("differential is not weight-homogeneous")
    cells: dict[tuple[int, int], list[str]] = {}
    for n, lab in g.basis_items():
        cells.setdefault((g.weights[lab], n), []).append(lab)
    ranks: dict[tuple[int, int], int] = {}
    shift = _weight_homogeneous_shift(g) or 0

    def cell_rank(w, n):
        key = (w, n)
        if key in ranks:
            return ranks[key]
        src = cells.get((w, n), [])
        tgt = cells.get((w + shift, n - 1), [])
        if not src or not tgt:
            ranks[key] = 0
            return 0
        tgt_index = {lab: i for i, lab in enumerate(tgt)}
        mat = [[ZERO] * len(src) for _ in tgt]
        for j, lab in enumerate(src):
            img = g.d(g.space.basis_element(n, lab))
            for (d2, l2), c in img.coeffs.items():
                mat[tgt_index[l2]][j] = c
        ranks[key] = matrix_rank(mat, len(src))
        return ranks[key]

    out = {}
    for (w, n), labs in sorted(cells.items()):
        dim = len(labs)
        out_rank = cell_rank(w, n)
        in_rank = cell_rank(w - shift, n + 1)
        out[(w, n)] = dim - out_rank - in_rank
    return out


def homology_stability(g: Dgla, m: Optional[int] = None) -> dict:
    """Per-degree homology at truncation m with stabilization flags.

    For weight-graded truncations with a differential of uniform weight
    shift +1, the cells of weight <= m-1 are final; "dim" reports their sum
    and "edge" the provisional top-weight contribution, with the final
    cells re-verified against the m+1 truncation.  Otherwise "dim" is the
    full per-degree dimension and "stable" means it is unchanged at m+1.
    """
    if g.presentation is None or (m is None and g.weight_bound is None):
        h = g.homology()
        return {n: {"dim": h.dim(n), "stable": True, "edge": 0} for n in h.degrees()}
    m = m if m is not None else g.weight_bound
    g1 = g if m == g.weight_bound else g.presentation.materialize(m, check="skip")
    g2 = g.presentation.materialize(m + 1, check="skip")
    if _weight_homogeneous_shift(g1) == 1 and _weight_homogeneous_shift(g2) == 1:
        c1 = weighted_homology(g1)
        c2 = weighted_homology(g2)
        degrees = sorted({n for (_, n) in c1} | {n for (_, n) in c2} |
                         set(g1.space.degrees()))
        report = {}
        for n in degrees:
            final = sum(v for (w, nn), v in c1.items() if nn == n and w <= m - 1)
            edge = sum(v for (w, nn), v in c1.items() if nn == n and w == m)
            confirmed = all(c2.get((w, n), 0) == v
                            for (w, nn), v in c1.items() if nn == n and w <= m - 1)
            report[n] = {"dim": final, "stable": confirmed, "edge": edge}
        return report
    h1, h2 = g1.homology(), g2.homology()
    degrees = sorted(set(h1.degrees()) | set(h2.degrees()) |
                     set(g1.space.degrees()) | set(g2.space.degrees()))
    return {n: {"dim": h1.dim(n), "stable": h1.dim(n) == h2.dim(n), "edge": 0}
            for n in degrees}
