"""Truncated homotopy operator h(alpha) = int_0^T i_W phi_s^*(alpha) ds and
the residual of the homotopy identity p_X^*(alpha) - alpha = d h(alpha) + h d(alpha).

Quadrature is composite Gauss-Legendre over unit panels.  Exterior
derivatives of the integrated forms commute with the pullback, so
d(h(alpha)) integrates phi_s^*(d i_W alpha) and h(d alpha) integrates
phi_s^*(i_W d alpha); only first-order automatic differentiation is needed.

Near the cone the integrand decays only polynomially, so evaluation points
are restricted to |f| bounded away from zero; a tail sentinel rejects points
whose integrand has not decayed at the truncation time.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .config import DEFAULT_TOLERANCES
from .flatforms import (
    NumForm,
    catalog_form,
    contract_with_w,
    d,
    form_max_abs,
    pullback,
    subsets,
)
from .flow import derived, flow_closed, retraction


class QuadratureDivergence(RuntimeError):
    """The integrand at the truncation time is still above tolerance."""


@dataclass(frozen=True)
class QuadratureSpec:
    T: float = 50.0
    nodes_per_unit: int = 16
    panel_width: float = 1.0

    def nodes_weights(self):
        """Composite Gauss-Legendre nodes and weights on [0, T]."""
        if self.T <= 0:
            raise ValueError("truncation time must be positive")
        base_x, base_w = np.polynomial.legendre.leggauss(max(2, self.nodes_per_unit))
        nodes = []
        weights = []
        left = 0.0
        while left < self.T - 1e-12:
            right = min(left + self.panel_width, self.T)
            half = 0.5 * (right - left)
            mid = 0.5 * (right + left)
            nodes.extend(mid + half * base_x)
            weights.extend(half * base_w)
            left = right
        return nodes, weights


def _resolve(form):
    return form if isinstance(form, NumForm) else catalog_form(form)


def _integrate_pulled_form(form, p, quad, tol):
    """int_0^T (phi_s^* form)(p) ds with the tail sentinel at s = T."""
    nodes, weights = quad.nodes_weights()
    acc = {s: 0.0 for s in subsets(form.degree)}
    for s_time, w in zip(nodes, weights):
        vals = pullback(lambda q, t=s_time: flow_closed(q, t), form)(p)
        for key in acc:
            acc[key] += w * vals[key]
    tail = form_max_abs(pullback(lambda q: flow_closed(q, quad.T), form)(p))
    if tail > tol.tail_tolerance:
        raise QuadratureDivergence(
            f"integrand at T={quad.T} is {tail:.3e} > {tol.tail_tolerance:.3e}; "
            "the point is too close to the cone for the truncated integral"
        )
    return acc, tail


def check_point(p, form_name, f_min=0.1):
    """Precondition screen for homotopy evaluation at p."""
    r2, R2, f = derived(p)
    if abs(f) < f_min:
        return f"|f| = {abs(f):.3g} < {f_min}"
    if form_name == "a2" and r2 < 1e-4:
        return "a2 is only evaluated off the z-axis"
    return None


def homotopy_h(form, p, quad=None, tol=DEFAULT_TOLERANCES):
    """Value of h(form) at p (a (k-1)-form value dict)."""
    form = _resolve(form)
    quad = quad or QuadratureSpec(T=tol.quad_T, nodes_per_unit=tol.quad_nodes_per_unit)
    integrand = contract_with_w(form)
    acc, _ = _integrate_pulled_form(integrand, p, quad, tol)
    return acc


@dataclass(frozen=True)
class HomotopyReport:
    point: tuple
    form: str
    residual: float
    closedness: float
    tail: float


def homotopy_residual(form, p, quad=None, tol=DEFAULT_TOLERANCES):
    """Max-norm residual of the homotopy identity at p, plus |d p_X^* form|.

    residual  = | p_X^*(a) - a - d h(a) - h(d a) |  at p
    closedness = | p_X^*(d a) |  at p   (equals |d p_X^*(a)| by naturality)
    """
    form = _resolve(form)
    quad = quad or QuadratureSpec(T=tol.quad_T, nodes_per_unit=tol.quad_nodes_per_unit)
    d_form = d(form)
    # d(h(a)): differentiate under the integral; d commutes with phi_s^*
    dh_integrand = d(contract_with_w(form))
    hd_integrand = contract_with_w(d_form)
    dh_acc, tail = _integrate_pulled_form(dh_integrand, p, quad, tol)
    hd_acc, _ = _integrate_pulled_form(hd_integrand, p, quad, tol)
    pulled = pullback(retraction, form)(p)
    direct = form(p)
    residual = 0.0
    for s in pulled:
        residual = max(
            residual, abs(pulled[s] - direct[s] - dh_acc[s] - hd_acc[s])
        )
    closedness = form_max_abs(pullback(retraction, d_form)(p))
    return HomotopyReport(tuple(p), form.name, residual, closedness, tail)


def homotopy_sweep(forms, points, quad=None, tol=DEFAULT_TOLERANCES, strict=False):
    """Residual reports over a point set; precondition violations are skipped
    (collected as warnings) unless strict."""
    reports = []
    warnings = []
    for name in forms:
        for p in points:
            reason = check_point(p, name)
            if reason is not None:
                warnings.append((name, tuple(p), reason))
                if strict:
                    raise ValueError(f"point {p} rejected for {name}: {reason}")
                continue
            try:
                reports.append(homotopy_residual(name, p, quad, tol))
            except QuadratureDivergence as exc:
                warnings.append((name, tuple(p), str(exc)))
                if strict:
                    raise
    return reports, warnings
