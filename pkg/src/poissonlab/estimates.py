"""Sampling checks for the contraction factors g, gbar and the deformation
Jacobi residual.

The factors satisfy, pointwise away from the origin,

    g = gbar e^{t f},   0 < g, gbar <= 1,   g gbar <= e^{-t |f|},
    g^p gbar^q <= C(p,q) R^{-(p+q)} t^{-(p+q)/2},

and |D^a g| <= C sigma_{k,-k} g for |a| = k, where sigma_{k,l} is the sum of
the monomials t^j R^{2j+l} with max(0, ceil(-l/2)) <= j <= k.  The samplers
report empirical constants (finite, grid-refinement-stable) and verify the
identities and inequalities at every node, all through log-space formulas
that survive t|f| far beyond floating-point exponent range.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

from .dual import Dual, value
from .flow import derived, g_factor, gbar_factor, log_g, log_gbar


def sigma(k, l, t, R):
    """Sum of t^j R^{2j+l} over max(0, ceil(-l/2)) <= j <= k; sigma_00 = 1."""
    m = max(0, -(l // 2) if l % 2 == 0 else (-l + 1) // 2)
    if m > k:
        return 0.0
    return sum(t**j * R ** (2 * j + l) for j in range(m, k + 1))


@dataclass(frozen=True)
class GridSpec:
    """Product grid over radius, the leaf parameter u = f/R^2, and time.

    Radii and times are log-spaced.  The u nodes are clustered quadratically
    around the cone u = 0, where the sampled quantities have their ridge;
    uniform angular grids need several times more nodes for the same
    refinement stability.  ``azimuth`` rotates the points off the y = 0
    plane (the sampled factors are rotation-invariant, but derivative
    probes need points in general position).
    """

    R_min: float = 0.1
    R_max: float = 2.0
    n_R: int = 10
    n_u: int = 40
    t_min: float = 0.1
    t_max: float = 100.0
    n_t: int = 25
    azimuth: float = 0.0

    def refine(self, factor=2):
        return replace(
            self,
            n_R=self.n_R * factor,
            n_u=self.n_u * factor,
            n_t=self.n_t * factor,
        )

    def nodes(self):
        """(point, t) nodes."""
        cos_a, sin_a = math.cos(self.azimuth), math.sin(self.azimuth)
        out = []
        for i in range(self.n_R):
            frac = i / max(1, self.n_R - 1)
            R = self.R_min * (self.R_max / self.R_min) ** frac
            for j in range(self.n_u):
                s = -1.0 + 2.0 * (j + 0.5) / self.n_u
                u = s * abs(s)
                r = R * math.sqrt((1.0 + u) / 2.0)
                z = R * math.sqrt((1.0 - u) / 2.0)
                point = (r * cos_a, r * sin_a, z)
                for k in range(self.n_t):
                    tfrac = k / max(1, self.n_t - 1)
                    t = self.t_min * (self.t_max / self.t_min) ** tfrac
                    out.append((point, t))
        return out


def node_report(point, t, p_exp, q_exp):
    """All per-node quantities, computed in log space."""
    r2, R2, f = derived(point)
    lg = log_g(point, t)
    lgb = log_gbar(point, t)
    # relative error of g = gbar e^{tf}, stable at any magnitude
    identity_rel = abs(math.expm1(lg - lgb - t * f))
    slack = 1e-10 * (1.0 + abs(t * f))
    product_ok = lg + lgb <= -t * abs(f) + slack
    range_ok = (
        math.isfinite(lg) and math.isfinite(lgb) and lg <= 1e-14 and lgb <= 1e-14
    )
    weighted = math.exp(
        p_exp * lg
        + q_exp * lgb
        + (p_exp + q_exp) * 0.5 * math.log(R2)
        + (p_exp + q_exp) * 0.5 * math.log(t)
    )
    return {
        "x": point[0],
        "y": point[1],
        "z": point[2],
        "t": t,
        "log_g": lg,
        "log_gbar": lgb,
        "identity_rel_err": identity_rel,
        "product_bound_ok": product_ok,
        "range_ok": range_ok,
        "weighted": weighted,
    }


def estimate_sampler(p_exp, q_exp, grid=None, identity_rel_tol=1e-12, refine=True):
    """Sup of g^p gbar^q R^{p+q} t^{(p+q)/2} over the grid plus identity checks.

    Returns a report with the empirical constant, its value on a doubled
    grid, and the relative change between the two.
    """
    if p_exp < 1 or q_exp < 1:
        raise ValueError("exponents must be >= 1")
    grid = grid or GridSpec()
    rows = [node_report(point, t, p_exp, q_exp) for point, t in grid.nodes()]
    sup = max(r["weighted"] for r in rows)
    report = {
        "p": p_exp,
        "q": q_exp,
        "nodes": len(rows),
        "C_empirical": sup,
        "identity_max_rel_err": max(r["identity_rel_err"] for r in rows),
        "identity_ok": all(r["identity_rel_err"] <= identity_rel_tol for r in rows),
        "product_bound_ok": all(r["product_bound_ok"] for r in rows),
        "range_ok": all(r["range_ok"] for r in rows),
        "rows": rows,
    }
    if refine:
        fine = grid.refine()
        sup_fine = max(
            node_report(point, t, p_exp, q_exp)["weighted"] for point, t in fine.nodes()
        )
        report["C_refined"] = sup_fine
        report["stability"] = abs(sup_fine - sup) / max(sup, sup_fine)
    return report


def _g_float(point, t):
    return math.exp(log_g(point, t))


_FACTORIALS = (1, 1, 2)


def derivative_bound_probe(multi_index, grid=None, rel_step=1e-5):
    """Sup over the grid of |D^a g_t| / (sigma_{k,-k} g_t), finite differences.

    D^a carries the 1/a! normalization; |a| <= 2.  The ratio for a = 0 is
    identically 1.
    """
    a = tuple(multi_index)
    k = sum(a)
    if k > 2 or any(v < 0 for v in a):
        raise ValueError("multi-index entries must be >= 0 with |a| <= 2")
    grid = grid or GridSpec(n_R=8, n_angle=8, n_t=20, t_max=50.0)
    norm = 1.0
    for v in a:
        norm *= _FACTORIALS[v]

    def d_a(point, t):
        if k == 0:
            return _g_float(point, t)
        live = [i for i, v in enumerate(a) for _ in range(v)]
        _, R2, _ = derived(point)
        R = math.sqrt(R2)
        if k == 1:
            i = live[0]
            h = rel_step * (abs(point[i]) + R)
            plus = list(point)
            minus = list(point)
            plus[i] += h
            minus[i] -= h
            return (_g_float(tuple(plus), t) - _g_float(tuple(minus), t)) / (2 * h)
        i, j = live
        hi = rel_step * (abs(point[i]) + R)
        hj = rel_step * (abs(point[j]) + R)
        if i == j:
            plus = list(point)
            minus = list(point)
            plus[i] += hi
            minus[i] -= hi
            second = (
                _g_float(tuple(plus), t)
                - 2 * _g_float(point, t)
                + _g_float(tuple(minus), t)
            ) / (hi * hi)
            return second / norm
        out = 0.0
        for si, sj in ((1, 1), (1, -1), (-1, 1), (-1, -1)):
            q = list(point)
            q[i] += si * hi
            q[j] += sj * hj
            out += si * sj * _g_float(tuple(q), t)
        return out / (4 * hi * hj)

    rows = []
    for point, t in grid.nodes():
        _, R2, _ = derived(point)
        R = math.sqrt(R2)
        denom = sigma(k, -k, t, R) * _g_float(point, t)
        rows.append(abs(d_a(point, t)) / denom)
    sup = max(rows)
    fine = grid.refine()
    sup_fine = max(
        abs(d_a(point, t)) / (sigma(k, -k, t, math.sqrt(derived(point)[1])) * _g_float(point, t))
        for point, t in fine.nodes()
    )
    return {
        "multi_index": a,
        "nodes": len(rows),
        "sup_ratio": sup,
        "sup_ratio_refined": sup_fine,
        "stability": abs(sup_fine - sup) / max(sup, sup_fine),
    }


# -- deformation Jacobi residual ---------------------------------------------


def _eta_default(f):
    """h(f) with h(t) = exp(-1/t) for t > 0, else 0."""
    fv = value(f)
    if fv <= 0.0:
        return f * 0.0
    from .dual import exp

    return exp(-1.0 / f)


def _bivector_components(p, variant):
    """Upper-triangular components (B12, B13, B23) of the deformed bivector."""
    x, y, z = p
    r2 = x * x + y * y
    f = r2 - z * z
    B12 = -1.0 * z
    B13 = -1.0 * y
    B23 = x * 1.0
    if variant == "zero":
        return B12, B13, B23
    eta = _eta_default(f)
    if variant == "default":
        # pi + eta N ^ T with N ^ T = (x d/dx + y d/dy) ^ d/dz / (2 r^2)
        return B12, B13 + eta * x / (2 * r2), B23 + eta * y / (2 * r2)
    if variant == "broken":
        # pi + eta N ^ d/dx = pi - eta y/(2 r^2) d/dx ^ d/dy
        return B12 - eta * y / (2 * r2), B13, B23
    raise ValueError(f"unknown deformation variant {variant!r}")


def deformation_jacobi_residual(p, variant="default"):
    """|[B, B]| at p for the deformed bivector, from the coordinate formula

        |[B,B]^{123}| = 2 |sum_l B^{l1} d_l B^{23} + B^{l2} d_l B^{31} + B^{l3} d_l B^{12}|

    (calibrated against the exact Schouten engine on polynomial bivectors).
    First derivatives come from dual numbers, including the chain rule
    through f for eta.  The default deformation needs p in O = {f > 0.1}
    away from the z-axis.
    """
    r2, _, f = derived(p)
    if variant == "default" and (f <= 0.1 or r2 < 1e-8):
        raise ValueError("the deformation check needs f > 0.1 and a point off the z-axis")
    seeds = Dual.seed(tuple(float(c) for c in p))
    B12, B13, B23 = _bivector_components(seeds, variant)

    def grad(component):
        return component.grad if isinstance(component, Dual) else (0.0, 0.0, 0.0)

    def val(component):
        return value(component)

    # full antisymmetric matrix: B[i][j], i != j
    B = [[None, B12, B13], [None, None, B23]]
    Bv = [
        [0.0, val(B12), val(B13)],
        [-val(B12), 0.0, val(B23)],
        [-val(B13), -val(B23), 0.0],
    ]
    dB23 = grad(B23)
    dB31 = tuple(-gk for gk in grad(B13))
    dB12 = grad(B12)
    total = 0.0
    for l in range(3):
        total += Bv[l][0] * dB23[l] + Bv[l][1] * dB31[l] + Bv[l][2] * dB12[l]
    return abs(2.0 * total)
