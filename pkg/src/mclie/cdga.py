"""Commutative dg algebras: finite multiplication tables and truncated free
graded-commutative presentations, Sullivan-de Rham forms on simplices, path
objects, localization at a cocycle, idempotent splitting, and the tensor of
a dgla with polynomial forms.

Degrees are stored homologically (a cohomological degree n sits in
homological degree -n); constructors take cohomological degrees where that
is the natural reading and negate internally.  Truncated free algebras are
quotients by a dg ideal of high truncation weight, so all axioms hold
exactly on the truncation, with no edge caveats.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from typing import Callable, Mapping, Optional, Sequence

from .linalg import (
    ONE,
    QQ,
    ZERO,
    ChainComplex,
    FiniteCommutativeAlgebra,
    GradedElement,
    GradedLinearMap,
    GradedVectorSpace,
    HomologyReport,
    RowSpace,
    homology as complex_homology,
    idempotents as algebra_idempotents,
    solve_matrix,
)
from .dgla import Dgla

CDGA_PAIR_CAP = 80
CDGA_TRIPLE_CAP = 26


class OddDegreeUnit(Exception):
    """Inverting an odd-degree cocycle only yields the terminal algebra."""


class NonCocycle(Exception):
    """Localization requires du = 0."""


class NoAugmentation(Exception):
    """The operation needs an augmented cdga."""


class CdgaAxiomViolation(Exception):
    pass


class TruncationNotDgStable(Exception):
    """A generator differential lowers truncation weight, so the truncation
    ideal would not be differential-stable."""


class Cdga:
    """Common interface: graded space (homological degrees), lazy basis
    products, differential, unit element, optional augmentation."""

    def __init__(self, space: GradedVectorSpace, differential: GradedLinearMap,
                 mult_fn: Callable[[int, str, int, str], GradedElement],
                 unit: GradedElement,
                 augmentation: Optional[Mapping[str, Fraction]] = None,
                 check: str = "auto"):
        self.space = space
        self.d_map = differential
        self._mult_fn = mult_fn
        if not hasattr(self, "_mult_cache"):
            self._mult_cache: dict[tuple[str, str], GradedElement] = {}
        self.unit = unit
        self.augmentation = dict(augmentation) if augmentation is not None else None
        dd = differential.compose(differential)
        if not dd.is_zero():
            raise CdgaAxiomViolation("d squared is nonzero")
        if check == "full" or (check == "auto" and space.total_dim() <= CDGA_TRIPLE_CAP):
            self.verify_axioms()

    # -- structure ----------------------------------------------------------

    def basis_items(self):
        return [(n, lab) for n in self.space.degrees() for lab in self.space.labels(n)]

    def d(self, elt: GradedElement) -> GradedElement:
        return self.d_map.apply(elt)

    def mult_labels(self, d1: int, l1: str, d2: int, l2: str) -> GradedElement:
        key = (l1, l2)
        out = self._mult_cache.get(key)
        if out is None:
            out = self._mult_fn(d1, l1, d2, l2)
            self._mult_cache[key] = out
        return out

    def multiply(self, u: GradedElement, v: GradedElement) -> GradedElement:
        out = GradedElement()
        for (d1, l1), c1 in u.coeffs.items():
            for (d2, l2), c2 in v.coeffs.items():
                out = out + self.mult_labels(d1, l1, d2, l2).scale(c1 * c2)
        return out

    def eps(self, elt: GradedElement) -> Fraction:
        if self.augmentation is None:
            raise NoAugmentation("cdga has no augmentation")
        s = ZERO
        for (n, lab), c in elt.coeffs.items():
            a = self.augmentation.get(lab, ZERO)
            if a:
                s += c * a
        return s

    def element(self, label: str) -> GradedElement:
        for n in self.space.degrees():
            if self.space.has(n, label):
                return self.space.basis_element(n, label)
        raise KeyError(label)

    def homology(self) -> HomologyReport:
        return complex_homology(ChainComplex(self.space, self.d_map))

    def cohomology_dims(self) -> dict[int, int]:
        """Cohomological report: degree n is homological degree -n."""
        h = self.homology()
        return {-n: h.dim(n) for n in h.degrees() if h.dim(n)}

    def total_dim(self) -> int:
        return self.space.total_dim()

    # -- axioms ---------------------------------------------------------------

    def verify_axioms(self, pair_cap: int = CDGA_PAIR_CAP,
                      triple_cap: int = CDGA_TRIPLE_CAP):
        items = self.basis_items()
        n = len(items)
        for (dd, lab) in items:
            e = self.space.basis_element(dd, lab)
            if not (self.multiply(self.unit, e) - e).is_zero():
                raise CdgaAxiomViolation("unit fails on %s" % lab)
        if not self.d(self.unit).is_zero():
            raise CdgaAxiomViolation("unit is not a cocycle")
        if n <= pair_cap:
            for (d1, l1), (d2, l2) in itertools.product(items, repeat=2):
                u = self.space.basis_element(d1, l1)
                v = self.space.basis_element(d2, l2)
                uv = self.mult_labels(d1, l1, d2, l2)
                vu = self.mult_labels(d2, l2, d1, l1)
                sign = -ONE if (d1 * d2) % 2 else ONE
                if not (uv - vu.scale(sign)).is_zero():
                    raise CdgaAxiomViolation(
                        "graded commutativity fails on (%s, %s)" % (l1, l2))
                lhs = self.d(uv)
                rhs = self.multiply(self.d(u), v) + \
                    self.multiply(u, self.d(v)).scale(-ONE if d1 % 2 else ONE)
                if not (lhs - rhs).is_zero():
                    raise CdgaAxiomViolation("Leibniz fails on (%s, %s)" % (l1, l2))
        if n <= triple_cap:
            for (d1, l1), (d2, l2), (d3, l3) in itertools.product(items, repeat=3):
                u = self.space.basis_element(d1, l1)
                v = self.space.basis_element(d2, l2)
                w = self.space.basis_element(d3, l3)
                if not (self.multiply(self.multiply(u, v), w) -
                        self.multiply(u, self.multiply(v, w))).is_zero():
                    raise CdgaAxiomViolation(
                        "associativity fails on (%s, %s, %s)" % (l1, l2, l3))
        if self.augmentation is not None:
            for (dd, lab) in items:
                if dd != 0 and self.augmentation.get(lab, ZERO):
                    raise CdgaAxiomViolation("augmentation nonzero off degree 0")
                e = self.space.basis_element(dd, lab)
                if self.eps(self.d(e)):
                    raise CdgaAxiomViolation("augmentation is not a dg map")
            if self.eps(self.unit) != ONE:
                raise CdgaAxiomViolation("augmentation of the unit is not 1")


class FiniteTableCdga(Cdga):
    """Cdga from an explicit finite multiplication table.

    basis maps cohomological degree to labels; table maps (l1, l2) to the
    product element (GradedElement in homological degrees); missing mirror
    pairs are filled by graded commutativity, missing pairs are zero.
    """

    def __init__(self, basis_cohomological: Mapping[int, Sequence[str]],
                 table: Mapping[tuple[str, str], GradedElement],
                 unit_label: str,
                 differentials: Optional[Mapping[str, GradedElement]] = None,
                 augmentation: Optional[Mapping[str, Fraction]] = None,
                 check: str = "full"):
        basis = {-n: labs for n, labs in basis_cohomological.items()}
        space = GradedVectorSpace(basis)
        degree_of = {lab: n for n in space.degrees() for lab in space.labels(n)}
        full: dict[tuple[str, str], GradedElement] = dict(table)
        for (l1, l2), val in list(full.items()):
            if (l2, l1) not in full:
                sign = -ONE if (degree_of[l1] * degree_of[l2]) % 2 else ONE
                full[(l2, l1)] = val.scale(sign)
        for lab, n in degree_of.items():
            full.setdefault((unit_label, lab), space.basis_element(n, lab))
            full.setdefault((lab, unit_label), space.basis_element(n, lab))
        differentials = differentials or {}
        d_map = GradedLinearMap.from_function(
            space, space, -1, lambda n, lab: differentials.get(lab, GradedElement()))
        unit = space.basis_element(degree_of[unit_label], unit_label)
        self.table = full
        super().__init__(space, d_map,
                         lambda d1, l1, d2, l2: full.get((l1, l2), GradedElement()),
                         unit, augmentation, check)


class FreePolynomialCdga(Cdga):
    """Free graded-commutative algebra on generators, truncated by a
    per-generator weight; the truncation ideal must be differential-stable
    (generator differentials may not lower weight), so the truncation is an
    honest dg quotient.

    generators: (name, cohomological degree) or (name, cohdeg, weight).
    """

    def __init__(self, generators: Sequence[tuple], max_weight: int,
                 dgens: Optional[Mapping[str, GradedElement]] = None,
                 augmentation_gens: Optional[Mapping[str, Fraction]] = None,
                 check: str = "auto", size_cap: int = 20000):
        self.generators = []
        for g in generators:
            if len(g) == 2:
                name, cohdeg = g
                weight = 1
            else:
                name, cohdeg, weight = g
            self.generators.append((str(name), int(cohdeg), int(weight)))
        self.max_weight = max_weight
        self._gen_index = {n: i for i, (n, _, _) in enumerate(self.generators)}
        self._dgens = dict(dgens or {})
        self._aug_gens = dict(augmentation_gens) if augmentation_gens is not None else None

        monos = self._enumerate_monomials(size_cap)
        self._label_of_mono: dict[tuple, str] = {}
        self._mono_of_label: dict[str, tuple] = {}
        basis: dict[int, list[str]] = {}
        self.mono_weight: dict[str, int] = {}
        for mono in monos:
            lab = self._format(mono)
            deg = -self._mono_cohdeg(mono)
            self._label_of_mono[mono] = lab
            self._mono_of_label[lab] = mono
            basis.setdefault(deg, []).append(lab)
            self.mono_weight[lab] = self._mono_weight(mono)
        space = GradedVectorSpace(basis)

        for name, cohdeg, weight in self.generators:
            val = self._dgens.get(name, GradedElement())
            for (d, lab), _ in val.coeffs.items():
                if d != -(cohdeg + 1):
                    raise CdgaAxiomViolation(
                        "d(%s) must be homogeneous of cohomological degree %d"
                        % (name, cohdeg + 1))
                if self.mono_weight[lab] < weight:
                    raise TruncationNotDgStable(
                        "d(%s) lowers truncation weight" % name)

        self._d_cache: dict[str, GradedElement] = {}
        self._mult_cache = {}
        self._mult_fn = self._mult_labels_build
        self.space = space  # needed by multiply during d construction
        d_map = GradedLinearMap.from_function(
            space, space, -1, lambda n, lab: self._d_label_build(space, lab))

        aug = None
        if self._aug_gens is not None:
            aug = {}
            for mono, lab in self._label_of_mono.items():
                val = ONE
                for gi, e in mono:
                    a = self._aug_gens.get(self.generators[gi][0], ZERO)
                    if self.generators[gi][1] != 0 and a:
                        raise CdgaAxiomViolation(
                            "augmentation nonzero on a nonzero-degree generator")
                    val *= a ** e
                    if not val:
                        break
                if val:
                    aug[lab] = val

        unit = GradedElement({(0, "1"): ONE})
        super().__init__(space, d_map, self._mult_labels_build, unit, aug, check)

    # monomials are tuples of (generator index, exponent), sorted by index

    def _enumerate_monomials(self, size_cap):
        gens = self.generators
        monos = [()]
        for i, (name, cohdeg, weight) in enumerate(gens):
            new = []
            if cohdeg % 2:
                max_e = 1
            else:
                if weight < 1:
                    raise ValueError(
                        "even generator %r needs truncation weight >= 1" % name)
                max_e = self.max_weight // weight
            for mono in monos:
                w0 = self._mono_weight(mono)
                new.append(mono)
                for e in range(1, max_e + 1):
                    if w0 + e * weight > self.max_weight:
                        break
                    new.append(mono + ((i, e),))
            monos = new
            if len(monos) > size_cap:
                raise CdgaAxiomViolation("truncated basis exceeds size cap")
        return sorted(monos, key=lambda m: (self._mono_weight(m), self._format(m)))

    def _mono_weight(self, mono) -> int:
        return sum(self.generators[i][2] * e for i, e in mono)

    def _mono_cohdeg(self, mono) -> int:
        return sum(self.generators[i][1] * e for i, e in mono)

    def _format(self, mono) -> str:
        if not mono:
            return "1"
        parts = []
        for i, e in mono:
            name = self.generators[i][0]
            parts.append(name if e == 1 else "%s^%d" % (name, e))
        return "*".join(parts)

    def monomial(self, pairs: Sequence[tuple[str, int]]) -> GradedElement:
        """Basis monomial from (generator name, exponent) pairs."""
        mono = tuple(sorted((self._gen_index[n], e) for n, e in pairs if e))
        lab = self._label_of_mono[mono]
        return GradedElement({(-self._mono_cohdeg(mono), lab): ONE})

    def generator_element(self, name: str) -> GradedElement:
        return self.monomial([(name, 1)])

    def _odd_letters(self, mono):
        return [i for i, e in mono if self.generators[i][1] % 2]

    def _merge_sign_and_mono(self, m1, m2):
        """Product of two monomials: None for zero (odd square), else
        (sign, merged monomial)."""
        odd1 = self._odd_letters(m1)
        odd2 = self._odd_letters(m2)
        if set(odd1) & set(odd2):
            return None
        inversions = 0
        for i in odd1:
            for j in odd2:
                if j < i:
                    inversions += 1
        d = {}
        for i, e in m1:
            d[i] = d.get(i, 0) + e
        for i, e in m2:
            d[i] = d.get(i, 0) + e
        merged = tuple(sorted(d.items()))
        return (-ONE if inversions % 2 else ONE), merged

    def _mult_labels_build(self, d1, l1, d2, l2) -> GradedElement:
        m1 = self._mono_of_label[l1]
        m2 = self._mono_of_label[l2]
        res = self._merge_sign_and_mono(m1, m2)
        if res is None:
            return GradedElement()
        sign, merged = res
        if self._mono_weight(merged) > self.max_weight:
            return GradedElement()
        lab = self._label_of_mono[merged]
        return GradedElement({(-self._mono_cohdeg(merged), lab): sign})

    def _d_label_build(self, space, lab) -> GradedElement:
        cached = self._d_cache.get(lab)
        if cached is not None:
            return cached
        mono = self._mono_of_label[lab]
        letters = []
        for i, e in mono:
            letters.extend([i] * e)
        out = GradedElement()
        prefix_parity = 0
        for p, gi in enumerate(letters):
            name, cohdeg, _w = self.generators[gi]
            dg = self._dgens.get(name, GradedElement())
            if not dg.is_zero():
                left = self._letters_elt(letters[:p])
                right = self._letters_elt(letters[p + 1:])
                term = self.multiply(left, self.multiply(dg, right))
                if prefix_parity % 2:
                    term = term.scale(-ONE)
                out = out + term
            prefix_parity += cohdeg
        self._d_cache[lab] = out
        return out

    def _letters_elt(self, letters) -> GradedElement:
        d = {}
        for i in letters:
            d[i] = d.get(i, 0) + 1
        mono = tuple(sorted(d.items()))
        lab = self._label_of_mono[mono]
        return GradedElement({(-self._mono_cohdeg(mono), lab): ONE})

    def rebuild(self, max_weight: int, check: str = "skip") -> "FreePolynomialCdga":
        return FreePolynomialCdga(self.generators, max_weight, self._dgens,
                                  self._aug_gens, check=check)


# ---------------------------------------------------------------------------
# Sullivan-de Rham forms
# ---------------------------------------------------------------------------

class DeRhamForms(FreePolynomialCdga):
    """Polynomial forms on the n-simplex in the affine chart t_0 = 1 - sum,
    truncated at total polynomial degree D (deg t_i = deg dt_i = 1).

    The differential preserves total degree, so the truncation is exact:
    within it H^0 = Q and H^k = 0 for 0 < k, with no edge classes.
    """

    def __init__(self, n: int, max_degree: int, check: str = "auto"):
        if n < 0 or max_degree < 1:
            raise ValueError("need n >= 0 and D >= 1")
        self.simplex_dim = n
        gens = []
        dgens = {}
        aug = {}
        for i in range(1, n + 1):
            gens.append(("t%d" % i, 0, 1))
            gens.append(("dt%d" % i, 1, 1))
            dgens["t%d" % i] = GradedElement({(-1, "dt%d" % i): ONE})
            aug["t%d" % i] = ZERO
        super().__init__(gens, max_degree, dgens, aug, check=check)

    def vertex_evaluation(self, vertex: int) -> "CdgaMorphism":
        """Evaluation at the vertex e_vertex (0 <= vertex <= n)."""
        images = {}
        for i in range(1, self.simplex_dim + 1):
            images["t%d" % i] = self.unit.scale(ONE if i == vertex else ZERO)
            images["dt%d" % i] = GradedElement()
        target = DeRhamForms(0, self.max_weight, check="skip")
        return CdgaMorphism(self, target, images)


class CdgaMorphism:
    """Algebra map of free-polynomial cdgas, given on generators and
    extended multiplicatively; dg-compatibility is checked on generators."""

    def __init__(self, source: FreePolynomialCdga, target: Cdga,
                 images: Mapping[str, GradedElement], check: bool = True):
        self.source = source
        self.target = target
        self.images = dict(images)
        if check:
            for name, cohdeg, _w in source.generators:
                img = self.images[name]
                lhs = self.apply(source._dgens.get(name, GradedElement()))
                rhs = target.d(img)
                if not (lhs - rhs).is_zero():
                    raise CdgaAxiomViolation("morphism not dg on %s" % name)

    def apply_label(self, lab: str) -> GradedElement:
        mono = self.source._mono_of_label[lab]
        out = self.target.unit
        for gi, e in mono:
            name = self.source.generators[gi][0]
            for _ in range(e):
                out = self.target.multiply(out, self.images[name])
        return out

    def apply(self, elt: GradedElement) -> GradedElement:
        out = GradedElement()
        for (d, lab), c in elt.coeffs.items():
            out = out + self.apply_label(lab).scale(c)
        return out


def omega_simplex(n: int, max_degree: int) -> DeRhamForms:
    return DeRhamForms(n, max_degree)


def omega_face_map(omega: DeRhamForms, face: int) -> CdgaMorphism:
    """Pullback along the face inclusion d^face: Delta^{n-1} -> Delta^n in
    the chart (t_1..t_n); the target is Omega(Delta^{n-1})."""
    n = omega.simplex_dim
    if n == 0:
        raise ValueError("no faces of a point")
    target = DeRhamForms(n - 1, omega.max_weight, check="skip")
    images = {}
    # vertices of the face are the vertices of Delta^n except `face`;
    # barycentric coordinate t_i pulls back to the coordinate of its
    # preimage vertex, and t_face pulls back to 0.
    for i in range(1, n + 1):
        if i == face:
            images["t%d" % i] = GradedElement()
            images["dt%d" % i] = GradedElement()
        else:
            j = i if i < face else i - 1
            if j == 0:
                # t_0 in the chart is 1 - sum of the rest
                s = target.unit
                for k in range(1, n):
                    s = s - target.generator_element("t%d" % k)
                ds = GradedElement()
                for k in range(1, n):
                    ds = ds - target.generator_element("dt%d" % k)
                images["t%d" % i] = s
                images["dt%d" % i] = ds
            else:
                images["t%d" % i] = target.generator_element("t%d" % j)
                images["dt%d" % i] = target.generator_element("dt%d" % j)
    return CdgaMorphism(omega, target, images)


def omega_degeneracy_map(omega: DeRhamForms, j: int) -> CdgaMorphism:
    """Pullback along the degeneracy s^j: Delta^{n+1} -> Delta^n collapsing
    the edge (j, j+1); the target is Omega(Delta^{n+1})."""
    n = omega.simplex_dim
    target = DeRhamForms(n + 1, omega.max_weight, check="skip")
    images = {}
    # vertex v of Delta^{n+1} maps to v if v <= j else v - 1; the pullback
    # of t_i is the sum of t_v over preimage vertices v.
    for i in range(1, n + 1):
        pre = [v for v in range(n + 2) if (v if v <= j else v - 1) == i]
        s = GradedElement()
        ds = GradedElement()
        for v in pre:
            if v == 0:
                u = target.unit
                du = GradedElement()
                for k in range(1, n + 2):
                    u = u - target.generator_element("t%d" % k)
                    du = du - target.generator_element("dt%d" % k)
                s = s + u
                ds = ds + du
            else:
                s = s + target.generator_element("t%d" % v)
                ds = ds + target.generator_element("dt%d" % v)
        images["t%d" % i] = s
        images["dt%d" % i] = ds
    return CdgaMorphism(omega, target, images)


# ---------------------------------------------------------------------------
# path objects
# ---------------------------------------------------------------------------

def path_object(a: Cdga, t_degree: int = 3):
    """D[t,dt] = D (x) k[t,dt] with |t| = 0, d(t) = dt, truncated at
    polynomial degree t_degree; returns (path, p0, p1, i) where p0, p1 are
    the evaluations at 0 and 1 and i the constant inclusion.

    p0, p1, i are returned as linear maps on basis labels (dicts
    label -> GradedElement into the factor / path algebra).
    """
    K = t_degree
    labels = {}
    basis: dict[int, list[str]] = {}
    for n, lab in a.basis_items():
        for k in range(K + 1):
            name = lab if k == 0 else "%s*t^%d" % (lab, k)
            basis.setdefault(n, []).append(name)
            labels[name] = (lab, n, k, 0)
        for k in range(K):
            name = "%s*t^%d*dt" % (lab, k) if k else "%s*dt" % lab
            basis.setdefault(n - 1, []).append(name)
            labels[name] = (lab, n, k, 1)
    space = GradedVectorSpace(basis)

    def name_of(lab, n, k, e):
        if e == 0:
            return lab if k == 0 else "%s*t^%d" % (lab, k)
        return "%s*t^%d*dt" % (lab, k) if k else "%s*dt" % lab

    def embed(elt: GradedElement, k, e) -> GradedElement:
        out = {}
        for (n, lab), c in elt.coeffs.items():
            out[(n - e, name_of(lab, n, k, e))] = c
        return GradedElement(out)

    def mult_fn(d1, l1, d2, l2):
        lab1, n1, k1, e1 = labels[l1]
        lab2, n2, k2, e2 = labels[l2]
        if e1 and e2:
            return GradedElement()
        # truncation keeps t^k for k <= K and t^k dt for k <= K-1
        k, e = k1 + k2, e1 + e2
        if e == 0 and k > K:
            return GradedElement()
        if e == 1 and k > K - 1:
            return GradedElement()
        prod = a.mult_labels(n1, lab1, n2, lab2)
        # sign: move t^{k1} dt^{e1} past the second table factor
        sign = -ONE if (e1 * n2) % 2 else ONE
        return embed(prod, k, e).scale(sign)

    def d_fn(n, name):
        lab, n0, k, e = labels[name]
        base = a.d(a.space.basis_element(n0, lab))
        out = embed(base, k, e)
        if e == 0 and k >= 1:
            if k - 1 <= K - 1:
                sign = -ONE if n0 % 2 else ONE
                out = out + GradedElement(
                    {(n0 - 1, name_of(lab, n0, k - 1, 1)): sign * QQ(k)})
        return out

    d_map = GradedLinearMap.from_function(space, space, -1, d_fn)
    unit = embed(a.unit, 0, 0)
    path = Cdga(space, d_map, mult_fn, unit, check="auto")

    p0 = {name: (a.space.basis_element(n0, lab)
                 if (k == 0 and e == 0) else GradedElement())
          for name, (lab, n0, k, e) in labels.items()}
    p1 = {name: (a.space.basis_element(n0, lab) if e == 0 else GradedElement())
          for name, (lab, n0, k, e) in labels.items()}
    inc = {lab: embed(a.space.basis_element(n, lab), 0, 0)
           for n, lab in a.basis_items()}
    return path, p0, p1, inc


def apply_linear(mapping: Mapping[str, GradedElement], elt: GradedElement) -> GradedElement:
    out = GradedElement()
    for (n, lab), c in elt.coeffs.items():
        out = out + mapping[lab].scale(c)
    return out


# ---------------------------------------------------------------------------
# localization and idempotent splitting
# ---------------------------------------------------------------------------

def _check_localization_input(a: Cdga, u: GradedElement):
    if not a.d(u).is_zero():
        raise NonCocycle("localization requires a cocycle")
    deg = u.degree()
    if deg is not None and deg % 2:
        raise OddDegreeUnit(
            "invertible odd-degree elements exist only in the terminal algebra")


def localize(a: Cdga, u: GradedElement):
    """Localization A[u^-1] at an even-degree cocycle.

    Finite tables with |u| = 0 use the stabilized colimit of multiplication
    by u and return (localized cdga, localization map as a label dict);
    truncated free algebras (or any even |u| != 0) get the weakly
    equivalent cell model A[y, z] with d(z) = u*y - 1 and return
    (model, None).

    H(A[u^-1]) is the localization of H(A) at [u] (exactness), which
    localization_exactness_report verifies instance by instance on the
    colimit path.
    """
    _check_localization_input(a, u)
    deg = u.degree()
    if isinstance(a, FreePolynomialCdga):
        return localize_cell(a, u), None
    if not (deg is None or deg == 0):
        raise ValueError("the finite-table colimit model needs |u| = 0; "
                         "present the algebra as a truncated free cdga for "
                         "the cell model")
    items = a.basis_items()
    n_total = len(items)
    index = {it: i for i, it in enumerate(items)}

    def mult_u_vec(vec):
        elt = GradedElement()
        for i, c in enumerate(vec):
            if c:
                n, lab = items[i]
                elt = elt + a.multiply(u, a.space.basis_element(n, lab)).scale(c)
        out = [ZERO] * n_total
        for key, c in elt.coeffs.items():
            out[index[key]] = c
        return out

    # eventual image of multiplication by u
    vecs = [[ONE if j == i else ZERO for j in range(n_total)] for i in range(n_total)]
    for _ in range(n_total):
        vecs = [mult_u_vec(v) for v in vecs]
    rs = RowSpace(n_total)
    for v in vecs:
        rs.add(v)
    image_rows = [list(r) for r in rs.rows]
    k = len(image_rows)

    # pick labels for the localized algebra, degreewise
    by_degree: dict[int, list[int]] = {}
    loc_labels: list[str] = []
    basis: dict[int, list[str]] = {}
    row_info = []
    for ridx, row in enumerate(image_rows):
        degs = {items[i][0] for i, c in enumerate(row) if c}
        assert len(degs) == 1
        d = degs.pop()
        lab = "loc%d" % ridx
        basis.setdefault(d, []).append(lab)
        loc_labels.append(lab)
        row_info.append((d, lab))
    space = GradedVectorSpace(basis)

    def to_coords(vec) -> GradedElement:
        red = []
        work = list(vec)
        coords = [ZERO] * k
        for r, row in enumerate(image_rows):
            pc = rs.pivots[r]
            if work[pc]:
                f = work[pc]
                coords[r] = f
                for j in range(n_total):
                    if row[j]:
                        work[j] -= f * row[j]
        if any(work):
            raise ValueError("vector not in the eventual image")
        return GradedElement({(row_info[r][0], row_info[r][1]): c
                              for r, c in enumerate(coords) if c})

    def vec_of_elt(elt: GradedElement):
        out = [ZERO] * n_total
        for key, c in elt.coeffs.items():
            out[index[key]] = c
        return out

    def elt_of_vec(vec) -> GradedElement:
        return GradedElement({items[i]: c for i, c in enumerate(vec) if c})

    # inverse of multiplication by u on the eventual image
    def mult_u_inv(vec):
        # solve mult_u(x) = vec with x in the image
        cols = [mult_u_vec(r) for r in image_rows]
        m = [[cols[j][i] for j in range(k)] for i in range(n_total)]
        x = solve_matrix(m, k, vec)
        assert x is not None
        out = [ZERO] * n_total
        for j, c in enumerate(x):
            if c:
                for t in range(n_total):
                    out[t] += c * image_rows[j][t]
        return out

    N = n_total

    def mult_fn(d1, l1, d2, l2):
        r1 = image_rows[loc_labels.index(l1)]
        r2 = image_rows[loc_labels.index(l2)]
        prod = a.multiply(elt_of_vec(r1), elt_of_vec(r2))
        vec = vec_of_elt(prod)
        for _ in range(N):
            vec = mult_u_inv(vec)
        return to_coords(vec)

    def d_fn(n, lab):
        r = image_rows[loc_labels.index(lab)]
        return to_coords(vec_of_elt(a.d(elt_of_vec(r))))

    d_map = GradedLinearMap.from_function(space, space, -1, d_fn)
    unit_vec = vec_of_elt(a.unit)
    for _ in range(N):
        unit_vec = mult_u_vec(unit_vec)
    unit = to_coords(unit_vec)
    if space.total_dim() == 0:
        loc = Cdga(space, d_map, mult_fn, GradedElement(), check="skip")
    else:
        loc = Cdga(space, d_map, mult_fn, unit, check="auto")
    loc_map = {}
    for n, lab in items:
        vec = [ZERO] * n_total
        vec[index[(n, lab)]] = ONE
        for _ in range(N):
            vec = mult_u_vec(vec)
        loc_map[lab] = to_coords(vec)
    return loc, loc_map


def localize_cell(a: FreePolynomialCdga, u: GradedElement, extra_weight: int = 3):
    """Cell model of the localization for a truncated free cdga: adjoin y
    (cohdeg -|u|) and z (cohdeg -1) with d(z) = u*y - 1, d(y) = 0."""
    _check_localization_input(a, u)
    cohdeg_u = -(u.degree() or 0)
    gens = list(a.generators) + [("y", -cohdeg_u, 1), ("z", -1, 0)]
    target_weight = a.max_weight + extra_weight
    scratch = FreePolynomialCdga(gens, target_weight, a._dgens, check="skip")
    uy = scratch.multiply(GradedElement(u.coeffs), scratch.generator_element("y"))
    dgens = dict(a._dgens)
    dgens["z"] = uy - scratch.unit
    out = FreePolynomialCdga(gens, target_weight, dgens,
                             a._aug_gens if a._aug_gens else None, check="auto")
    return out


def cohomology_algebra(a: Cdga, degree: int = 0):
    """H at the given homological degree as a FiniteCommutativeAlgebra,
    together with representative cycles.  For degree 0 this is the H^0 of
    the idempotent machinery."""
    h = a.homology()
    reps = h.representatives.get(degree, [])
    k = len(reps)
    if k == 0:
        raise ValueError("H is zero in degree %d" % degree)
    bnds = h.boundaries.get(degree, [])
    cols = a.space.dim(degree)
    mat_cols = [a.space.to_vector(r, degree) for r in reps] + \
               [a.space.to_vector(b, degree) for b in bnds]
    m = [[mat_cols[j][i] for j in range(len(mat_cols))] for i in range(cols)]

    def project(elt: GradedElement):
        vec = a.space.to_vector(elt, degree)
        x = solve_matrix(m, len(mat_cols), vec)
        if x is None:
            raise ValueError("element is not a cycle in degree %d" % degree)
        return x[:k]

    table = {}
    for i in range(k):
        for j in range(k):
            table[(i, j)] = project(a.multiply(reps[i], reps[j]))
    unit = project(a.unit)
    alg = FiniteCommutativeAlgebra(["h%d" % i for i in range(k)], table, unit)
    return alg, reps


def idempotent_split(a: Cdga):
    """Split a homologically disconnected cdga along the primitive
    idempotents of H^0: returns a list of (idempotent cocycle, factor,
    factor kind) where kind is "strict" (u*A, for non-negatively graded A)
    or "localization" (A[u^-1]).

    Raises NonSplitAlgebra (from the idempotent machinery) when H^0 is not
    a finite product of copies of Q.
    """
    h0, reps = cohomology_algebra(a, 0)
    idems = algebra_idempotents(h0)
    nonneg = all(n <= 0 for n in a.space.degrees())
    factors = []
    for e in idems:
        u = GradedElement()
        for i, c in enumerate(e):
            u = u + reps[i].scale(c)
        if nonneg and (a.multiply(u, u) - u).is_zero():
            factors.append((u, _strict_factor(a, u), "strict"))
        else:
            loc, _ = localize(a, u)
            factors.append((u, loc, "localization"))
    return factors


def _strict_factor(a: Cdga, u: GradedElement) -> Cdga:
    """The direct factor u*A of an exact idempotent u."""
    items = a.basis_items()
    by_degree: dict[int, list[GradedElement]] = {}
    for n in a.space.degrees():
        span = RowSpace(a.space.dim(n))
        vecs = []
        for lab in a.space.labels(n):
            img = a.multiply(u, a.space.basis_element(n, lab))
            v = a.space.to_vector(img, n)
            if span.add(v):
                pass
        for row in span.rows:
            vecs.append(a.space.from_vector(row, n))
        if vecs:
            by_degree[n] = vecs
    basis = {n: ["f%d_%d" % (n, i) for i in range(len(v))]
             for n, v in by_degree.items()}
    space = GradedVectorSpace(basis)
    vec_of = {}
    for n, vs in by_degree.items():
        for i, v in enumerate(vs):
            vec_of[basis[n][i]] = v

    def express(elt: GradedElement) -> GradedElement:
        out = GradedElement()
        for n in sorted(elt.degrees()):
            part = elt.homogeneous_part(n)
            labs = space.labels(n)
            cols = [[vec_of[lab].coeff(n, gl) for lab in labs]
                    for gl in a.space.labels(n)]
            x = solve_matrix(cols, len(labs), a.space.to_vector(part, n))
            if x is None:
                raise ValueError("element not in the factor")
            out = out + GradedElement({(n, labs[i]): c for i, c in enumerate(x) if c})
        return out

    def mult_fn(d1, l1, d2, l2):
        return express(a.multiply(vec_of[l1], vec_of[l2]))

    d_map = GradedLinearMap.from_function(
        space, space, -1, lambda n, lab: express(a.d(vec_of[lab])))
    return Cdga(space, d_map, mult_fn, express(u), check="auto")


def localization_exactness_report(a: Cdga, u: GradedElement) -> dict:
    """Verify H(A[u^-1]) = H(A)[[u]^-1] per degree: the cohomology of the
    localization against the localization of the cohomology, compared as
    the eventual image of multiplication by [u] on H(A)."""
    loc, loc_map = localize(a, u)
    h_loc = loc.homology()
    h = a.homology()
    # localization of H(A) at [u]: eventual image of [u]-multiplication on
    # the finite graded algebra H(A)
    reps = {n: h.representatives[n] for n in h.degrees()}
    bnds = {n: h.boundaries.get(n, []) for n in h.degrees()}

    def h_coords(elt, n):
        labs = reps.get(n, [])
        cols = [a.space.to_vector(r, n) for r in labs] + \
               [a.space.to_vector(b, n) for b in bnds.get(n, [])]
        m = [[cols[j][i] for j in range(len(cols))] for i in range(a.space.dim(n))]
        x = solve_matrix(m, len(cols), a.space.to_vector(elt, n))
        assert x is not None
        return x[:len(labs)]

    report = {}
    ok = True
    for n in sorted(set(h.degrees()) | set(h_loc.degrees())):
        rs = reps.get(n, [])
        k = len(rs)
        vecs = [[ONE if j == i else ZERO for j in range(k)] for i in range(k)]
        for _ in range(max(1, k)):
            new = []
            for v in vecs:
                elt = GradedElement()
                for i, c in enumerate(v):
                    if c:
                        elt = elt + rs[i].scale(c)
                img = a.multiply(u, elt)
                new.append(h_coords(img, n))
            vecs = new
        span = RowSpace(k)
        for v in vecs:
            span.add(v)
        expected = span.dim()
        got = h_loc.dim(n)
        report[n] = {"H(A) localized": expected, "H(A[u^-1])": got}
        if expected != got:
            ok = False
    report["pass"] = ok
    return report


# ---------------------------------------------------------------------------
# tensor of a dgla with forms
# ---------------------------------------------------------------------------

def tensor_dgla_forms(g: Dgla, n: int, max_degree: int, check: str = "auto") -> Dgla:
    """g (x) Omega(Delta^n), a dgla with Omega^p (x) g_q in homological
    degree q - p; bracket [u(x)a, v(x)b] = (-1)^{|a||v|}[u,v](x)ab and
    d(u(x)a) = du(x)a + (-1)^{|u|} u(x)da."""
    omega = omega_simplex(n, max_degree)
    basis: dict[int, list[str]] = {}
    info = {}
    for ng, glab in g.basis_items():
        for nw, wlab in omega.basis_items():
            deg = ng + nw  # nw is -p for p-forms
            lab = "%s|%s" % (glab, wlab)
            basis.setdefault(deg, []).append(lab)
            info[lab] = (ng, glab, nw, wlab)
    space = GradedVectorSpace(basis)

    def pack(gelt: GradedElement, welt: GradedElement) -> GradedElement:
        out = GradedElement()
        for (ng, glab), cg in gelt.coeffs.items():
            for (nw, wlab), cw in welt.coeffs.items():
                out = out + GradedElement(
                    {(ng + nw, "%s|%s" % (glab, wlab)): cg * cw})
        return out

    def bracket_fn(d1, l1, d2, l2):
        ng1, g1, nw1, w1 = info[l1]
        ng2, g2, nw2, w2 = info[l2]
        sign = -ONE if (nw1 * ng2) % 2 else ONE
        br = g.bracket_labels(ng1, g1, ng2, g2)
        prod = omega.mult_labels(nw1, w1, nw2, w2)
        if br.is_zero() or prod.is_zero():
            return GradedElement()
        return pack(br, prod).scale(sign)

    def d_fn(deg, lab):
        ng, glab, nw, wlab = info[lab]
        ge = g.space.basis_element(ng, glab)
        we = omega.space.basis_element(nw, wlab)
        out = pack(g.d(ge), we)
        sgn = -ONE if ng % 2 else ONE
        out = out + pack(ge, omega.d(we)).scale(sgn)
        return out

    d_map = GradedLinearMap.from_function(space, space, -1, d_fn)
    weights = None
    if g.weights is not None:
        weights = {lab: g.weights[info[lab][1]] for lab in info}
    out = Dgla(space, d_map, bracket_fn, weights=weights,
               weight_bound=g.weight_bound, check=check)
    out.form_algebra = omega
    out.coefficient_dgla = g
    out.tensor_info = info
    return out


# ---------------------------------------------------------------------------
# derivations report
# ---------------------------------------------------------------------------

def derivations_report(a: Cdga, rebuilt: Optional[Cdga] = None) -> dict:
    """Per-degree dimensions of H(I/I^2) for the augmentation ideal I,
    reported by cohomological degree; this is the dual complex of the
    derivation space Der_eps(A, k).

    For truncated free algebras pass the D+1 rebuild as `rebuilt` to get
    stabilization flags.
    """
    if a.augmentation is None:
        raise NoAugmentation("derivations need an augmentation")

    def quotient_dims(alg: Cdga) -> dict[int, int]:
        items = alg.basis_items()
        ideal: dict[int, RowSpace] = {}
        for n in alg.space.degrees():
            ideal[n] = RowSpace(alg.space.dim(n))
        ivecs = []
        for n, lab in items:
            e = alg.space.basis_element(n, lab)
            v = e - alg.unit.scale(alg.eps(e))
            if not v.is_zero():
                ivecs.append((n, v))
        ibasis: dict[int, list[GradedElement]] = {}
        for n, v in ivecs:
            vec = alg.space.to_vector(v, n)
            if ideal[n].add(vec):
                ibasis.setdefault(n, []).append(v)
        # I^2
        sq: dict[int, RowSpace] = {n: RowSpace(alg.space.dim(n))
                                   for n in alg.space.degrees()}
        flat = [v for n in sorted(ibasis) for v in ibasis[n]]
        for v1, v2 in itertools.product(flat, repeat=2):
            p = alg.multiply(v1, v2)
            if p.is_zero():
                continue
            n = p.degree()
            sq[n].add(alg.space.to_vector(p, n))
        # complex I/I^2: coordinates = I-basis reduced mod I^2
        dims = {}
        quo_basis: dict[int, list] = {}
        for n in sorted(ibasis):
            rows = []
            for v in ibasis[n]:
                red = sq[n].reduce(alg.space.to_vector(v, n))
                rows.append(red)
            span = RowSpace(alg.space.dim(n))
            kept = []
            for i, r in enumerate(rows):
                if span.add(r):
                    kept.append(ibasis[n][i])
            if kept:
                quo_basis[n] = (kept, sq[n])
        # differential on I/I^2 and its homology, degreewise
        space = GradedVectorSpace({n: ["q%d_%d" % (n, i) for i in range(len(v[0]))]
                                   for n, v in quo_basis.items()})

        def express(elt, n):
            if n not in quo_basis:
                if elt.is_zero() or not any(
                        sq[n].reduce(alg.space.to_vector(elt, n))):
                    return GradedElement()
                raise ValueError("element escapes the quotient")
            kept, sqn = quo_basis[n]
            labs = space.labels(n)
            cols = [sqn.reduce(alg.space.to_vector(k, n)) for k in kept]
            target = sqn.reduce(alg.space.to_vector(elt, n))
            m = [[cols[j][i] for j in range(len(cols))]
                 for i in range(alg.space.dim(n))]
            x = solve_matrix(m, len(cols), target)
            assert x is not None
            return GradedElement({(n, labs[i]): c for i, c in enumerate(x) if c})

        def d_fn(n, lab):
            kept, _ = quo_basis[n]
            i = list(space.labels(n)).index(lab)
            img = alg.d(kept[i])
            img = img - alg.unit.scale(alg.eps(img))
            return express(img, n - 1)

        d_map = GradedLinearMap.from_function(space, space, -1, d_fn)
        h = complex_homology(ChainComplex(space, d_map))
        return {-n: h.dim(n) for n in h.degrees() if h.dim(n)}

    dims = quotient_dims(a)
    out = {"dims": dims}
    if rebuilt is not None:
        dims2 = quotient_dims(rebuilt)
        out["stable"] = {n: dims.get(n, 0) == dims2.get(n, 0)
                         for n in set(dims) | set(dims2)}
    return out
