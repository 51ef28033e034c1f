"""Catalog of flat test forms and pointwise form operations for the lab.

A numeric k-form value at a point is a dict from ascending index tuples to
scalars.  The fixed catalog (S^1-invariant, all vanishing flatly at the
origin and along the cone):

    a0 = chi df                          chi = exp(-1/R^2)
    a1 = chi df ^ (-y dx + x dy)         = r^2 chi df ^ dtheta
    a2 = eta df ^ dtheta                 eta = h(f), h(t) = exp(-1/t)1_{t>0}

a2 is supported on {f > 0}, where r^2 >= f > 0 keeps it off the z-axis.
Component functions are generic over floats and Duals, so the exterior
derivative and pullbacks reduce to first-order automatic differentiation.
Contractions use the same first-slot convention as the exact modules.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

from .dual import Dual, constant_like, exp, value
from .flow import w_field


@dataclass(frozen=True)
class NumForm:
    """Pointwise form: degree and a components(point) -> dict callable."""

    name: str
    degree: int
    components: callable

    def __call__(self, p):
        return self.components(p)


def chi_flat(p):
    """exp(-1/R^2); zero at the origin up to every order."""
    x, y, z = p
    R2 = x * x + y * y + z * z
    if value(R2) == 0.0:
        return constant_like(0.0, x)
    return exp(-1.0 / R2)


def h_outer(t):
    """exp(-1/t) for t > 0, else 0; smooth and flat at 0."""
    if value(t) <= 0.0:
        return constant_like(0.0, t)
    return exp(-1.0 / t)


def _a0_components(p):
    x, y, z = p
    chi = chi_flat(p)
    return {(0,): 2 * x * chi, (1,): 2 * y * chi, (2,): -2 * z * chi}


def _a1_components(p):
    x, y, z = p
    chi = chi_flat(p)
    r2 = x * x + y * y
    return {
        (0, 1): 2 * r2 * chi,
        (0, 2): -2 * y * z * chi,
        (1, 2): 2 * x * z * chi,
    }


def _a2_components(p):
    x, y, z = p
    r2 = x * x + y * y
    f = r2 - z * z
    eta = h_outer(f)
    if value(eta) == 0.0:
        zero = constant_like(0.0, x)
        return {(0, 1): zero, (0, 2): zero, (1, 2): zero}
    return {
        (0, 1): 2 * eta,
        (0, 2): -2 * y * z * eta / r2,
        (1, 2): 2 * x * z * eta / r2,
    }


CATALOG = {
    "a0": NumForm("a0", 1, _a0_components),
    "a1": NumForm("a1", 2, _a1_components),
    "a2": NumForm("a2", 2, _a2_components),
}


def catalog_form(name):
    try:
        return CATALOG[name]
    except KeyError:
        raise ValueError(f"unknown form {name!r}; catalog: {sorted(CATALOG)}") from None


def subsets(degree, n=3):
    return list(itertools.combinations(range(n), degree))


def contract_vector_value(vec, form_value, degree):
    """First-slot contraction of a vector value into a form value."""
    out = {}
    for s in subsets(degree - 1):
        total = 0.0
        for j in range(3):
            if j in s:
                continue
            pos = sum(1 for u in s if u < j)
            merged = tuple(sorted(s + (j,)))
            sign = -1.0 if pos % 2 else 1.0
            total = total + sign * vec[j] * form_value[merged]
        out[s] = total
    return out


def contract_with_w(form):
    """i_W form as a new pointwise form."""
    if form.degree == 0:
        return NumForm(f"i_W({form.name})", 0, lambda p: {})

    def components(p):
        return contract_vector_value(w_field(p), form(p), form.degree)

    return NumForm(f"i_W({form.name})", form.degree - 1, components)


def d(form):
    """Exterior derivative via dual-seeded partials of the components."""

    def components(p):
        seeds = Dual.seed(tuple(float(c) for c in p))
        vals = form(seeds)
        out = {}
        for s in subsets(form.degree + 1):
            total = 0.0
            for pos, j in enumerate(s):
                rest = s[:pos] + s[pos + 1 :]
                comp = vals[rest]
                partial = comp.grad[j] if isinstance(comp, Dual) else 0.0
                total += (-1.0 if pos % 2 else 1.0) * partial
            out[s] = total
        return out

    return NumForm(f"d({form.name})", form.degree + 1, components)


def pullback(map_fn, form, name=None):
    """(map)^* form; evaluates the map Jacobian by dual seeds.

    The resulting components accept plain float points only.
    """

    def components(p):
        seeds = Dual.seed(tuple(float(c) for c in p))
        image = map_fn(seeds)
        point = tuple(value(c) for c in image)
        vals = form(point)
        rows = [
            list(c.grad) if isinstance(c, Dual) else [0.0, 0.0, 0.0] for c in image
        ]
        k = form.degree
        out = {}
        for s in subsets(k):
            total = 0.0
            for tset in subsets(k):
                w = vals[tset]
                if w == 0.0:
                    continue
                total += w * _minor_det(rows, tset, s)
            out[s] = total
        return out

    return NumForm(name or f"pullback({form.name})", form.degree, components)


def _minor_det(rows, row_idx, col_idx):
    k = len(row_idx)
    if k == 0:
        return 1.0
    if k == 1:
        return rows[row_idx[0]][col_idx[0]]
    if k == 2:
        a, b = row_idx
        c, d_ = col_idx
        return rows[a][c] * rows[b][d_] - rows[a][d_] * rows[b][c]
    m = [[rows[r][c] for c in col_idx] for r in row_idx]
    return (
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    )


def rotation_map(theta):
    c, s = math.cos(theta), math.sin(theta)

    def mapping(p):
        x, y, z = p
        return (c * x - s * y, s * x + c * y, z)

    return mapping


def average_s1(form, p, nodes=32):
    """Trapezoidal average over the rotation action; spectrally accurate.

    Equals the form itself on the (already invariant) catalog entries and
    projects arbitrary forms onto their invariant part.
    """
    if nodes < 8:
        raise ValueError("need at least 8 rotation nodes")
    acc = {s: 0.0 for s in subsets(form.degree)}
    for j in range(nodes):
        theta = 2.0 * math.pi * j / nodes
        vals = pullback(rotation_map(theta), form)(p)
        for s in acc:
            acc[s] += vals[s]
    return {s: v / nodes for s, v in acc.items()}


def form_max_abs(form_value):
    return max(abs(value(v)) for v in form_value.values()) if form_value else 0.0


def form_difference(a, b):
    return {s: a[s] - b[s] for s in a}
