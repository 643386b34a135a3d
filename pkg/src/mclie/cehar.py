"""Chevalley-Eilenberg and Harrison functors, free-product cohomology
comparison, the MC/augmentation dictionary, and truncated minimal models
via homotopy transfer.

Sign conventions (calibrated so that d*d = 0 holds on every constructed
instance and the evaluation at an MC element is a dg augmentation; the
two-point algebra maps to the sphere dgla on the nose):

  CE side, generators s(b) dual to the basis b of g, cohdeg |b|+1:
      d_I  s(k) = sum_j D_kj s(j)          D_kj = coeff of b_k in d(b_j)
      d_II s(k) = -1/2 sum_ij (-1)^{|b_i|} c_ij^k s(i) s(j)

  Harrison side, generators T(b) dual to a basis of the augmentation
  ideal, homological degree cohdeg(b) - 1:
      d_I  T(b) = sum_{b'} (coeff of b in d b') T(b')
      d_II T(b) = -1/2 sum (-1)^{cohdeg b'} (coeff of b in b'b'') [T(b'),T(b'')]
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from typing import Mapping, Optional

from .linalg import (
    ONE,
    QQ,
    ZERO,
    ChainComplex,
    GradedElement,
    GradedLinearMap,
    GradedVectorSpace,
    RowSpace,
    homology as complex_homology,
    solve_matrix,
)
from .freelie import LiePresentation
from .dgla import Dgla, DglaPresentation, disjoint_product, free_product_dgla, is_mc
from .cdga import Cdga, FreePolynomialCdga, NoAugmentation


class CEComplex:
    """The Chevalley-Eilenberg cdga C(g) = (S Sigma g*, d_I + d_II),
    truncated by word length (or by the weight grading of g when
    truncate_by="weight"), with the canonical augmentation at 0."""

    def __init__(self, g: Dgla, bound: int, truncate_by: str = "length"):
        self.g = g
        self.bound = bound
        self.truncate_by = truncate_by
        items = g.basis_items()
        self.sigma_of = {lab: "s(%s)" % lab for _, lab in items}
        gens = []
        for n, lab in items:
            if truncate_by == "weight":
                w = (g.weights or {}).get(lab, 1)
            else:
                w = 1
            gens.append((self.sigma_of[lab], n + 1, w))
        dgens = {}
        for k, (nk, labk) in enumerate(items):
            val = GradedElement()
            for nj, labj in items:
                if nj != nk + 1:
                    continue
                Dkj = g.d(g.space.basis_element(nj, labj)).coeff(nk, labk)
                if Dkj:
                    val = val + GradedElement(
                        {(-(nj + 1), self.sigma_of[labj]): Dkj})
            dgens[self.sigma_of[labk]] = val
        # d_II needs products of generators; build the algebra first with a
        # scratch copy to multiply in
        scratch = FreePolynomialCdga(gens, max(bound, 2), {}, check="skip")
        for nk, labk in items:
            val = dgens[self.sigma_of[labk]]
            for (ni, labi), (nj, labj) in itertools.product(items, repeat=2):
                if ni + nj != nk:
                    continue
                c = g.bracket_labels(ni, labi, nj, labj).coeff(nk, labk)
                if not c:
                    continue
                sign = -ONE if ni % 2 else ONE
                prod = scratch.multiply(
                    scratch.generator_element(self.sigma_of[labi]),
                    scratch.generator_element(self.sigma_of[labj]))
                val = val + prod.scale(QQ(-1, 2) * sign * c)
            dgens[self.sigma_of[labk]] = val
        aug = {name: ZERO for name, _, _ in
               [(self.sigma_of[lab], 0, 0) for _, lab in items]}
        self.algebra = FreePolynomialCdga(gens, bound, dgens, aug, check="auto")
        self._gweight_cache: dict[str, int] = {}

    def generator_weight_of_label(self, lab: str) -> int:
        """Total g-weight of a monomial label (each sigma-factor carries the
        weight of its dual basis element)."""
        w = self._gweight_cache.get(lab)
        if w is None:
            mono = self.algebra._mono_of_label[lab]
            weights = self.g.weights or {}
            w = 0
            for gi, e in mono:
                name = self.algebra.generators[gi][0]
                glab = name[2:-1]  # strip "s(" ... ")"
                w += weights.get(glab, 1) * e
            self._gweight_cache[lab] = w
        return w

    def reduced_labels(self):
        return [(n, lab) for n, lab in self.algebra.basis_items() if lab != "1"]

    def reduced_homology_dims(self) -> dict[int, int]:
        """Cohomological dimensions of H(C_+)."""
        h = self._reduced_homology()
        return {-n: h.dim(n) for n in h.degrees() if h.dim(n)}

    def _reduced_homology(self, weight: Optional[int] = None):
        labels = self.reduced_labels()
        if weight is not None:
            labels = [(n, lab) for n, lab in labels
                      if self.generator_weight_of_label(lab) == weight]
        basis: dict[int, list[str]] = {}
        for n, lab in labels:
            basis.setdefault(n, []).append(lab)
        space = GradedVectorSpace(basis)
        keep = {lab for _, lab in labels}

        def d_fn(n, lab):
            img = self.algebra.d(self.algebra.space.basis_element(n, lab))
            return GradedElement({k: c for k, c in img.coeffs.items()
                                  if k[1] in keep})
        d_map = GradedLinearMap.from_function(space, space, -1, d_fn)
        return complex_homology(ChainComplex(space, d_map))

    def weight_block_dims(self, weight: int) -> dict[int, int]:
        """H(C_+) of the given total g-weight block, cohomological keys."""
        h = self._reduced_homology(weight)
        return {-n: h.dim(n) for n in h.degrees() if h.dim(n)}


def ce_complex(g: Dgla, word_bound: int, truncate_by: str = "length") -> CEComplex:
    return CEComplex(g, word_bound, truncate_by)


def ce_cohomology(g: Dgla, word_bound: int,
                  degree_range: Optional[tuple[int, int]] = None) -> dict:
    """Reduced CE cohomology table with exactness flags.

    For non-negatively graded g the degree-n cohomology only involves word
    lengths <= n, so it is flagged exact once word_bound >= n; otherwise
    degrees are flagged by agreement between word_bound and word_bound + 1.
    """
    ce = ce_complex(g, word_bound)
    dims = ce.reduced_homology_dims()
    nonneg = all(n >= 0 for n in g.space.degrees())
    if degree_range is None:
        degs = sorted(set(dims) | {0})
        lo, hi = (min(degs), max(degs)) if degs else (0, 0)
    else:
        lo, hi = degree_range
    out = {}
    bigger = None
    for n in range(lo, hi + 1):
        if nonneg and word_bound >= n:
            out[n] = {"dim": dims.get(n, 0), "flag": "exact"}
        else:
            if bigger is None:
                bigger = ce_complex(g, word_bound + 1).reduced_homology_dims()
            stable = dims.get(n, 0) == bigger.get(n, 0)
            out[n] = {"dim": dims.get(n, 0),
                      "flag": "stable" if stable else "unstable"}
    return out


# ---------------------------------------------------------------------------
# Harrison complex
# ---------------------------------------------------------------------------

class HarrisonComplex:
    """L(A) = (free Lie on the desuspended dual of the augmentation ideal,
    d_I + d_II), truncated at bracket weight m; materialized as a Dgla with
    a re-usable presentation."""

    def __init__(self, a: Cdga, m: int):
        if a.augmentation is None:
            raise NoAugmentation("the Harrison complex needs an augmentation")
        self.source = a
        self.m = m
        items = a.basis_items()
        # basis of A_+ : adjusted basis elements b - eps(b) 1 for b not in
        # the line of the unit; by convention we drop one designated label
        # with eps != 0 (the "unit slot"), which must exist
        unit_slots = [(n, lab) for n, lab in items if a.augmentation.get(lab, ZERO)]
        if not unit_slots:
            raise NoAugmentation("no basis label with nonzero augmentation")
        drop = unit_slots[0]
        plus = [(n, lab) for n, lab in items if (n, lab) != drop]
        self.tau_of = {lab: "T(%s)" % lab for _, lab in plus}
        self.plus_items = plus

        def plus_coords(elt: GradedElement) -> GradedElement:
            """Coordinates of an element of A over the adjusted basis (the
            unit-slot coordinate is determined by eps = 0)."""
            adj = elt - a.unit.scale(a.eps(elt))
            # expand over {b - eps(b) unit}: coordinates equal those of the
            # non-dropped labels once the drop-label coordinate is
            # eliminated via the unit expansion
            coeffs = dict(adj.coeffs)
            dn, dlab = drop
            cdrop = coeffs.pop((dn, dlab), ZERO)
            if cdrop:
                # drop-label appears inside the unit: unit = sum u_k b_k;
                # rewrite c * b_drop = (c / u_drop) (unit - others)
                u = a.unit
                u_drop = u.coeff(dn, dlab)
                assert u_drop, "unit has no component on the unit slot"
                rest = GradedElement({k: v for k, v in u.coeffs.items()
                                      if k != (dn, dlab)})
                corr = rest.scale(-cdrop / u_drop)
                for k, v in corr.coeffs.items():
                    coeffs[k] = coeffs.get(k, ZERO) + v
                # the unit itself contributes eps-zero overall, consistent
                # with adj being in the augmentation ideal
            return GradedElement(coeffs)

        gens = []
        for n, lab in plus:
            cohdeg = -n
            gens.append((self.tau_of[lab], cohdeg - 1, 1))
        from .freelie import FreeLieTruncation
        scratch = FreeLieTruncation(gens, 2)
        dgens = {name: GradedElement() for name, _, _ in gens}
        for n, lab in plus:
            val = GradedElement()
            for n2, lab2 in plus:
                if n2 - 1 != n:
                    continue
                img = plus_coords(a.d(a.space.basis_element(n2, lab2)))
                c = img.coeff(n, lab)
                if c:
                    val = val + scratch.generator(self.tau_of[lab2]).scale(c)
            for (n1, lab1), (n2, lab2) in itertools.product(plus, repeat=2):
                if n1 + n2 != n:
                    continue
                prod = plus_coords(a.multiply(a.space.basis_element(n1, lab1),
                                              a.space.basis_element(n2, lab2)))
                c = prod.coeff(n, lab)
                if not c:
                    continue
                sign = -ONE if (-n1) % 2 else ONE
                br = scratch.bracket(scratch.generator(self.tau_of[lab1]),
                                     scratch.generator(self.tau_of[lab2]))
                val = val + br.scale(QQ(-1, 2) * sign * c)
            dgens[self.tau_of[lab]] = val
        pres = LiePresentation(gens, [], dgens)
        self.presentation = DglaPresentation(pres)
        self.dgla = self.presentation.materialize(m)


def harrison(a: Cdga, m: int) -> HarrisonComplex:
    return HarrisonComplex(a, m)


def cdga_product(a: Cdga, b: Cdga) -> Cdga:
    """Direct product A x B, augmented through the second factor (the
    non-unital monoidal structure on augmented cdgas)."""
    if b.augmentation is None:
        raise NoAugmentation("the second factor must be augmented")
    basis: dict[int, list[str]] = {}
    for n, lab in a.basis_items():
        basis.setdefault(n, []).append("A.%s" % lab)
    for n, lab in b.basis_items():
        basis.setdefault(n, []).append("B.%s" % lab)
    space = GradedVectorSpace(basis)

    def tag(elt: GradedElement, side: str) -> GradedElement:
        return GradedElement({(n, "%s.%s" % (side, lab)): c
                              for (n, lab), c in elt.coeffs.items()})

    def mult_fn(d1, l1, d2, l2):
        s1, lab1 = l1.split(".", 1)
        s2, lab2 = l2.split(".", 1)
        if s1 != s2:
            return GradedElement()
        alg = a if s1 == "A" else b
        return tag(alg.mult_labels(d1, lab1, d2, lab2), s1)

    def d_fn(n, lab):
        s, base = lab.split(".", 1)
        alg = a if s == "A" else b
        return tag(alg.d(alg.space.basis_element(n, base)), s)

    d_map = GradedLinearMap.from_function(space, space, -1, d_fn)
    unit = tag(a.unit, "A") + tag(b.unit, "B")
    aug = {}
    for n, lab in b.basis_items():
        v = b.augmentation.get(lab, ZERO)
        if v:
            aug["B.%s" % lab] = v
    return Cdga(space, d_map, mult_fn, unit, aug, check="auto")


def dgla_map_from_generators(src: Dgla, dst: Dgla,
                             images: Mapping[str, GradedElement]) -> dict:
    """Extend a generator assignment of a presented dgla to all basis
    labels (through the free tree structure), check d-compatibility on
    every generator, and compare dimensions; returns a report with the
    label-by-label image map."""
    q = src.presentation.pres.materialize(src.weight_bound)

    label_images: dict[str, GradedElement] = {}

    def image_of(lab: str) -> GradedElement:
        if lab in label_images:
            return label_images[lab]
        if lab in images:
            label_images[lab] = images[lab]
            return images[lab]
        tree = q.free.tree_of_label[lab]
        t1, t2 = tree
        l1 = q.free.label_of_tree[t1]
        l2 = q.free.label_of_tree[t2]
        out = dst.bracket(image_of(l1), image_of(l2))
        label_images[lab] = out
        return out

    d_compatible = True
    for name in images:
        u = src.element(name)
        du = src.d(u)
        pushed = GradedElement()
        for (n, lab), c in du.coeffs.items():
            pushed = pushed + image_of(lab).scale(c)
        if not (pushed - dst.d(images[name])).is_zero():
            d_compatible = False
            break
    dims_match = all(src.space.dim(n) == dst.space.dim(n)
                     for n in set(src.space.degrees()) | set(dst.space.degrees()))
    surjective = None
    if dims_match and d_compatible:
        surjective = True
        for n in src.space.degrees():
            rs = RowSpace(dst.space.dim(n))
            for lab in src.space.labels(n):
                img = image_of(lab)
                vec = dst.space.to_vector(img, n) if not img.is_zero() else \
                    [ZERO] * dst.space.dim(n)
                rs.add(vec)
            if rs.dim() != dst.space.dim(n):
                surjective = False
    return {"d_compatible": d_compatible, "dims_match": dims_match,
            "bijective": bool(dims_match and d_compatible and surjective),
            "images": label_images}


def harrison_product_comparison(a: Cdga, b: Cdga, m: int) -> dict:
    """The Harrison functor takes products to disjoint products:
    L(A x B) and L(A) u L(B) are isomorphic, checked as truncated structure
    constants under the generator matching T(A.1) -> -x, T(A.b) -> T(b),
    T(B.c) -> T(c)."""
    prod = cdga_product(a, b)
    lhs = harrison(prod, m)
    la = harrison(a, m)
    lb = harrison(b, m)
    rhs = disjoint_product(la.dgla, lb.dgla, m)
    # the unit slot dropped on the product side is B.<unit slot of B>; the
    # A.1-type generator present is the one with eps_A != 0 dropped... the
    # product's augmentation lives on the B side, so all A-labels survive.
    images = {}
    x = rhs.twist_of
    a_unit_labels = [lab for _, lab in a.basis_items()
                     if (a.augmentation or {}).get(lab, ZERO)]
    renames = rhs.second_factor_names
    for n, lab in lhs.plus_items:
        side, base = lab.split(".", 1)
        name = lhs.tau_of[lab]
        if side == "A" and base in a_unit_labels:
            images[name] = -x
        elif side == "A":
            images[name] = rhs.element(la.tau_of[base])
        else:
            images[name] = rhs.element(renames[lb.tau_of[base]])
    report = dgla_map_from_generators(lhs.dgla, rhs, images)
    report.pop("images")
    return report


# ---------------------------------------------------------------------------
# free product cohomology comparison (appendix theorems)
# ---------------------------------------------------------------------------

def compare_free_product(g: Dgla, h: Dgla, m: int, word_bound: int) -> dict:
    """Per-(weight, degree) comparison of H(C_+(g*h)) against
    H(C_+(g)) + H(C_+(h)) in the faithful window weight < m.

    Inputs must be weight-graded with zero differential (the appendix
    hypothesis); word_bound must be at least m - 1 so the window is
    complete.
    """
    if word_bound < m - 1:
        raise ValueError("need word_bound >= m - 1 for a faithful window")
    for alg in (g, h):
        if not alg.d_map.is_zero():
            raise ValueError("free-product comparison needs zero differentials")
    if h.total_dim() == 0:
        prod = g
    elif g.total_dim() == 0:
        prod = h
    else:
        prod = free_product_dgla(g, h, m, check="skip")
    ce_p = ce_complex(prod, m - 1, truncate_by="weight") if prod.total_dim() \
        else None
    ce_g = ce_complex(g, m - 1, truncate_by="weight") if g.total_dim() else None
    ce_h = ce_complex(h, m - 1, truncate_by="weight") if h.total_dim() else None
    table = {}
    ok = True
    for w in range(1, m):
        left = ce_p.weight_block_dims(w) if ce_p else {}
        right: dict[int, int] = {}
        for ce_f in (ce_g, ce_h):
            if ce_f is None:
                continue
            for n, v in ce_f.weight_block_dims(w).items():
                right[n] = right.get(n, 0) + v
        degrees = sorted(set(left) | set(right))
        for n in degrees:
            cell_ok = left.get(n, 0) == right.get(n, 0)
            table[(w, n)] = {"product": left.get(n, 0),
                             "factors": right.get(n, 0), "equal": cell_ok}
            ok = ok and cell_ok
    return {"pass": ok, "cells": table, "window": "weights 1..%d" % (m - 1)}


# ---------------------------------------------------------------------------
# MC <-> augmentation dictionary
# ---------------------------------------------------------------------------

def evaluation_augmentation(ce: CEComplex, xi: GradedElement) -> dict[str, Fraction]:
    """eps_xi on basis monomials: evaluation at the (degree-0) point
    Sigma xi; multiplicative, kills every sigma dual to a basis element of
    degree != -1."""
    values: dict[str, Fraction] = {}
    coeff_of = {lab: xi.coeff(-1, lab) for _, lab in ce.g.basis_items()}
    for n, lab in ce.algebra.basis_items():
        mono = ce.algebra._mono_of_label[lab]
        val = ONE
        for gi, e in mono:
            name = ce.algebra.generators[gi][0]
            glab = name[2:-1]
            c = coeff_of.get(glab, ZERO)
            if ce.algebra.generators[gi][1] != 0:
                # sigma of cohomological degree != 0 evaluates to zero
                c = ZERO
            val *= c ** e
            if not val:
                break
        if val:
            values[lab] = val
    return values


def augmentation_is_dg(ce: CEComplex, eps_values: Mapping[str, Fraction]) -> bool:
    """Whether eps vanishes on the image of d, checked on generators (by
    the derivation property this decides dg-compatibility)."""
    for name, cohdeg, _w in ce.algebra.generators:
        img = ce.algebra._dgens.get(name, GradedElement())
        s = ZERO
        for (n, lab), c in img.coeffs.items():
            v = eps_values.get(lab, ZERO)
            if v:
                s += c * v
        if s:
            return False
    return True


def mc_augmentation_dictionary(g: Dgla, xi: GradedElement, word_bound: int) -> dict:
    """The evaluation augmentation eps_xi of C(g), the shift isomorphism
    phi_xi: C(g) -> C(g^xi), and the commuting triangle eps_0 . phi_xi =
    eps_xi, verified on all monomials up to the word bound.

    eps_xi is dg exactly when xi is Maurer-Cartan; for non-MC xi the first
    failing generator is reported as a witness.
    """
    from .dgla import twist
    ce = ce_complex(g, word_bound)
    eps_xi = evaluation_augmentation(ce, xi)
    eps0 = evaluation_augmentation(ce, GradedElement())
    is_dg = augmentation_is_dg(ce, eps_xi)
    mc, residual = is_mc(g, xi)
    out = {"eps_is_dg": is_dg, "is_mc": mc, "match": is_dg == mc}
    if not mc:
        for name, cohdeg, _w in ce.algebra.generators:
            img = ce.algebra._dgens.get(name, GradedElement())
            s = ZERO
            for (n, lab), c in img.coeffs.items():
                v = eps_xi.get(lab, ZERO)
                if v:
                    s += c * v
            if s:
                out["witness"] = {"generator": name, "value": s}
                break
        return out
    twisted = twist(g, xi, check="skip")
    ce_t = ce_complex(twisted, word_bound)
    # phi_xi on generators: s(b) -> s(b) + xi_b * 1
    phi = {}
    for _, lab in g.basis_items():
        name = ce.sigma_of[lab]
        img = ce_t.algebra.generator_element(name)
        c = xi.coeff(-1, lab)
        if c:
            img = img + ce_t.algebra.unit.scale(c)
        phi[name] = img

    def phi_apply_label(lab: str) -> GradedElement:
        mono = ce.algebra._mono_of_label[lab]
        outl = ce_t.algebra.unit
        for gi, e in mono:
            name = ce.algebra.generators[gi][0]
            for _ in range(e):
                outl = ce_t.algebra.multiply(outl, phi[name])
        return outl

    # dg-compatibility of phi on generators
    phi_dg = True
    for name, cohdeg, _w in ce.algebra.generators:
        img = ce.algebra._dgens.get(name, GradedElement())
        pushed = GradedElement()
        for (n, lab), c in img.coeffs.items():
            pushed = pushed + phi_apply_label(lab).scale(c)
        if not (pushed - ce_t.algebra.d(phi[name])).is_zero():
            phi_dg = False
            break
    out["phi_is_dg"] = phi_dg
    # triangle eps_0(phi(f)) = eps_xi(f) on every monomial
    eps0_t = evaluation_augmentation(ce_t, GradedElement())
    triangle = True
    for n, lab in ce.algebra.basis_items():
        img = phi_apply_label(lab)
        s = ZERO
        for (nn, lab2), c in img.coeffs.items():
            v = eps0_t.get(lab2, ZERO)
            if v:
                s += c * v
        if s != eps_xi.get(lab, ZERO):
            triangle = False
            break
    out["triangle"] = triangle
    return out


# ---------------------------------------------------------------------------
# minimal models by homotopy transfer
# ---------------------------------------------------------------------------

class TransferData:
    """Deterministic Hodge-style splitting: A = B + H + C with d: C ~ B,
    h = (d|C)^{-1} on B and zero on H + C; satisfies the side conditions
    p i = id, h i = 0, p h = 0, h h = 0 and dh + hd = id - i p."""

    def __init__(self, g: Dgla):
        self.g = g
        h = g.homology()
        self.h_reps: dict[int, list[GradedElement]] = {
            n: h.representatives.get(n, []) for n in g.space.degrees()}
        self.boundaries: dict[int, list[GradedElement]] = {
            n: h.boundaries.get(n, []) for n in g.space.degrees()}
        self.preimages: dict[int, list[GradedElement]] = {}
        for n in g.space.degrees():
            pres = []
            for beta in self.boundaries.get(n - 1, []):
                x = g.d_map.solve(beta)
                assert x is not None
                pres.append(x)
            self.preimages[n] = pres
        # decomposition matrices per degree
        self._decomp: dict[int, tuple] = {}
        for n in g.space.degrees():
            cols = [g.space.to_vector(v, n) for v in self.boundaries.get(n, [])] + \
                   [g.space.to_vector(v, n) for v in self.h_reps.get(n, [])] + \
                   [g.space.to_vector(v, n) for v in self.preimages.get(n, [])]
            dim = g.space.dim(n)
            assert len(cols) == dim, "splitting does not span degree %d" % n
            mat = [[cols[j][i] for j in range(len(cols))] for i in range(dim)]
            self._decomp[n] = mat

    def coords(self, elt: GradedElement, n: int):
        mat = self._decomp[n]
        vec = self.g.space.to_vector(elt, n)
        x = solve_matrix(mat, len(mat[0]) if mat else 0, vec)
        assert x is not None
        nb = len(self.boundaries.get(n, []))
        nh = len(self.h_reps.get(n, []))
        return x[:nb], x[nb:nb + nh], x[nb + nh:]

    def p(self, elt: GradedElement) -> dict[tuple[int, int], Fraction]:
        """Projection onto homology coordinates {(degree, index): c}."""
        out = {}
        for n in sorted(elt.degrees()):
            part = elt.homogeneous_part(n)
            _, hcoords, _ = self.coords(part, n)
            for i, c in enumerate(hcoords):
                if c:
                    out[(n, i)] = c
        return out

    def i(self, n: int, idx: int) -> GradedElement:
        return self.h_reps[n][idx]

    def h(self, elt: GradedElement) -> GradedElement:
        out = GradedElement()
        for n in sorted(elt.degrees()):
            part = elt.homogeneous_part(n)
            bcoords, _, _ = self.coords(part, n)
            for i, c in enumerate(bcoords):
                if c:
                    out = out + self.preimages[n + 1][i].scale(c)
        return out


class MinimalModel:
    """Transferred minimal structure on H(g): zero differential, the
    induced bracket l2, and the first homotopy correction l3 (arity <= 3);
    the inclusion of representatives is the quasi-isomorphism datum."""

    def __init__(self, g: Dgla, arity_bound: int = 3):
        if arity_bound < 2 or arity_bound > 3:
            raise ValueError("transfer implemented for arities 2 and 3")
        self.g = g
        self.arity_bound = arity_bound
        self.transfer = TransferData(g)
        t = self.transfer
        self.generators = [(n, i) for n in sorted(t.h_reps)
                           for i in range(len(t.h_reps[n]))]
        self.l2: dict[tuple, dict] = {}
        for (n1, i1), (n2, i2) in itertools.product(self.generators, repeat=2):
            val = t.p(g.bracket(t.i(n1, i1), t.i(n2, i2)))
            if val:
                self.l2[((n1, i1), (n2, i2))] = val
        self.l3: dict[tuple, dict] = {}
        if arity_bound >= 3:
            for a, b, c in itertools.product(self.generators, repeat=3):
                val = self._l3(a, b, c)
                if val:
                    self.l3[(a, b, c)] = val

    def _l3(self, a, b, c):
        t = self.transfer
        g = self.g
        ia, ib, ic = t.i(*a), t.i(*b), t.i(*c)
        da, db, dc = a[0], b[0], c[0]
        term1 = g.bracket(t.h(g.bracket(ia, ib)), ic)
        term2 = g.bracket(t.h(g.bracket(ia, ic)), ib).scale(
            -ONE if (db * dc) % 2 else ONE)
        term3 = g.bracket(t.h(g.bracket(ib, ic)), ia).scale(
            -ONE if (da * (db + dc)) % 2 else ONE)
        return t.p(term1 + term2 + term3)

    def linear_part_is_zero(self) -> bool:
        """The transferred differential p d i vanishes identically."""
        t = self.transfer
        for n, i in self.generators:
            if t.p(self.g.d(t.i(n, i))):
                return False
        return True

    def homology_dims(self) -> dict[int, int]:
        return {n: len(self.transfer.h_reps[n])
                for n in self.transfer.h_reps if self.transfer.h_reps[n]}

    def has_higher_corrections(self) -> bool:
        return bool(self.l3)

    def as_dgla(self) -> Dgla:
        """The honest finite dgla (H, l2, d = 0); only valid when l3 = 0,
        i.e. when no homotopy corrections survived."""
        if self.l3:
            raise ValueError("model carries arity-3 corrections; "
                             "it is an L-infinity structure, not a plain dgla")
        basis: dict[int, list[str]] = {}
        for n, i in self.generators:
            basis.setdefault(n, []).append("h%d_%d" % (n, i))
        space = GradedVectorSpace(basis)

        def bracket_fn(d1, l1, d2, l2):
            i1 = int(l1.rsplit("_", 1)[1])
            i2 = int(l2.rsplit("_", 1)[1])
            val = self.l2.get(((d1, i1), (d2, i2)), {})
            return GradedElement({(n, "h%d_%d" % (n, i)): c
                                  for (n, i), c in val.items()})

        d_map = GradedLinearMap(space, space, -1, {})
        return Dgla(space, d_map, bracket_fn, check="auto")

    def quasi_iso_verified(self, degree_range: Optional[tuple[int, int]] = None) -> bool:
        """The inclusion of representatives induces an isomorphism onto
        H(g) in the requested degree range (all degrees by default)."""
        h = self.g.homology()
        degrees = h.degrees() if degree_range is None else \
            [n for n in h.degrees() if degree_range[0] <= n <= degree_range[1]]
        for n in degrees:
            if len(self.transfer.h_reps.get(n, [])) != h.dim(n):
                return False
        return True


def minimal_model(g: Dgla, arity_bound: int = 3,
                  degree_range: Optional[tuple[int, int]] = None) -> MinimalModel:
    model = MinimalModel(g, arity_bound)
    assert model.linear_part_is_zero()
    assert model.quasi_iso_verified(degree_range)
    return model
