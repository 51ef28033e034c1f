"""Closed-form flow of W = -z^2 x d/dx - z^2 y d/dy - r^2 z d/dz, its RK4
oracle, and the retraction onto the skeleton X = {x = y = 0} u {z = 0}.

The flow contracts by the two factors

    g(t)    = 1 / sqrt(1 + t z^2 kappa(t f)),
    gbar(t) = 1 / sqrt(1 + t r^2 kappa(-t f)),

with x_t = x g, y_t = y g, z_t = z gbar and kappa(x) = (1 - e^{-2x}) / x.
Both factors are evaluated through overflow-safe branches (rewriting with
e^{-2t|f|} inside the square root), so they work for t f far beyond the
range of e^{t f}.  All functions are generic over floats and Duals.
"""

from __future__ import annotations

import math
import random

from .dual import Dual, constant_like, exp, expm1, sqrt, value

KAPPA_SERIES_THRESHOLD = 1e-4


def kappa(x):
    """(1 - e^{-2x})/x, by series near 0 to avoid cancellation."""
    xv = value(x)
    if abs(xv) >= KAPPA_SERIES_THRESHOLD:
        return -expm1(-2 * x) / x
    # sum_k (-x)^k 2^{k+1}/(k+1)!  truncated far below double precision
    acc = constant_like(0.0, x)
    coeff = 2.0
    power = constant_like(1.0, x)
    for k in range(9):
        acc = acc + coeff * power
        power = power * (-1.0 * x)
        coeff = coeff * 2.0 / (k + 2)
    return acc


def derived(p):
    """(r^2, R^2, f) for a point triple."""
    x, y, z = p
    r2 = x * x + y * y
    z2 = z * z
    return r2, r2 + z2, r2 - z2


def g_factor(p, t):
    """Radial contraction factor x_t / x of the flow."""
    x, y, z = p
    r2, _, f = derived(p)
    tf = t * f
    if value(f) >= 0:
        return 1.0 / sqrt(1.0 + t * (z * z) * kappa(tf))
    # f < 0: 1 + t z^2 kappa(tf) = e^{-2tf} (e^{2tf} + t z^2 kappa(-tf))
    return exp(tf) / sqrt(exp(2 * tf) + t * (z * z) * kappa(-1.0 * tf))


def gbar_factor(p, t):
    """Vertical contraction factor z_t / z of the flow."""
    x, y, z = p
    r2, _, f = derived(p)
    tf = t * f
    if value(f) >= 0:
        # 1 + t r^2 kappa(-tf) = e^{2tf} (e^{-2tf} + t r^2 kappa(tf))
        return exp(-1.0 * tf) / sqrt(exp(-2 * tf) + t * r2 * kappa(tf))
    return 1.0 / sqrt(1.0 + t * r2 * kappa(-1.0 * tf))


def log_g(p, t):
    """log g, stable for arbitrarily large t|f| (floats only)."""
    x, y, z = p
    r2, _, f = derived(p)
    tf = t * f
    z2 = value(z) ** 2
    if f >= 0:
        return -0.5 * math.log1p(t * z2 * kappa(tf))
    return tf - 0.5 * math.log(math.exp(2 * tf) + t * z2 * kappa(-tf))


def log_gbar(p, t):
    x, y, z = p
    r2, _, f = derived(p)
    tf = t * f
    if f >= 0:
        return -tf - 0.5 * math.log(math.exp(-2 * tf) + t * r2 * kappa(tf))
    return -0.5 * math.log1p(t * r2 * kappa(-tf))


def flow_closed(p, t):
    """phi_t(p) by the closed-form solution; forward time only."""
    if t < 0:
        raise ValueError("the flow is only forward-complete; need t >= 0")
    x, y, z = p
    g = g_factor(p, t)
    gb = gbar_factor(p, t)
    return (x * g, y * g, z * gb)


def w_field(p):
    x, y, z = p
    return (-(z * z) * x, -(z * z) * y, -(x * x + y * y) * z)


def flow_rk4(p, t, steps):
    """Classical fixed-step RK4 integration of W; the independent oracle."""
    if steps < 1:
        raise ValueError("need at least one step")
    h = t / steps
    state = tuple(float(c) for c in p)
    for _ in range(steps):
        k1 = w_field(state)
        k2 = w_field(tuple(s + 0.5 * h * k for s, k in zip(state, k1)))
        k3 = w_field(tuple(s + 0.5 * h * k for s, k in zip(state, k2)))
        k4 = w_field(tuple(s + h * k for s, k in zip(state, k3)))
        state = tuple(
            s + h / 6.0 * (a + 2 * b + 2 * c + d)
            for s, a, b, c, d in zip(state, k1, k2, k3, k4)
        )
    return state


def retraction(p):
    """Leafwise limit of the flow: p_X."""
    x, y, z = p
    _, _, f = derived(p)
    fv = value(f)
    if fv > 0:
        scale = sqrt(f) / sqrt(x * x + y * y)
        zero = constant_like(0.0, x) if isinstance(x, Dual) else 0.0
        return (x * scale, y * scale, zero)
    if fv < 0:
        s = 1.0 if value(z) > 0 else -1.0
        zero = constant_like(0.0, z) if isinstance(z, Dual) else 0.0
        return (zero, zero, s * sqrt(-1.0 * f))
    zero = constant_like(0.0, x) if isinstance(x, Dual) else 0.0
    return (zero, zero, zero)


def jacobian(map_fn, p):
    """3x3 Jacobian of a point map via dual seeds; rows are output components."""
    seeds = Dual.seed(tuple(float(c) for c in p))
    image = map_fn(seeds)
    rows = []
    for comp in image:
        if isinstance(comp, Dual):
            rows.append(list(comp.grad))
        else:
            rows.append([0.0, 0.0, 0.0])
    return rows


def jacobian_fd(map_fn, p, rel_step=1e-5):
    """Central finite-difference Jacobian (the oracle for the dual version)."""
    p = tuple(float(c) for c in p)
    cols = []
    for i in range(3):
        h = rel_step * (1.0 + abs(p[i]))
        plus = list(p)
        minus = list(p)
        plus[i] += h
        minus[i] -= h
        fp = map_fn(tuple(plus))
        fm = map_fn(tuple(minus))
        cols.append([(a - b) / (2 * h) for a, b in zip(fp, fm)])
    return [[cols[j][i] for j in range(3)] for i in range(3)]


def distance(a, b):
    return math.sqrt(sum((value(u) - value(v)) ** 2 for u, v in zip(a, b)))


def convergence_probe(p, t_list, jacobian_f_min=0.5):
    """Distances |phi_t(p) - p_X(p)| plus an order-1 probe off the cone.

    The Jacobian gap is only evaluated when |f(p)| >= jacobian_f_min, where
    the retraction is smooth and the flow converges in the C^1 sense.
    """
    target = retraction(p)
    distances = [distance(flow_closed(p, t), target) for t in t_list]
    gap = None
    _, _, f = derived(p)
    if abs(f) >= jacobian_f_min and t_list:
        t_max = max(t_list)
        J_flow = jacobian(lambda q: flow_closed(q, t_max), p)
        J_ret = jacobian(retraction, p)
        gap = max(
            abs(a - b) for ra, rb in zip(J_flow, J_ret) for a, b in zip(ra, rb)
        )
    return {"distances": distances, "jacobian_gap": gap}


def sample_points(
    seed, count, f_min=0.1, big_f_min=None, R_max=2.0, R_min=0.3, r_min=0.05
):
    """Seeded rejection sampler for well-conditioned probe points.

    Points satisfy R_min <= R <= R_max, |f| >= f_min, and r >= r_min (off
    the z-axis).  ``big_f_min`` substitutes a stronger |f| bound when given.
    """
    rng = random.Random(seed)
    bound = big_f_min if big_f_min is not None else f_min
    points = []
    while len(points) < count:
        p = tuple(rng.uniform(-R_max, R_max) for _ in range(3))
        r2, R2, f = derived(p)
        if R2 > R_max**2 or R2 < R_min**2:
            continue
        if abs(f) < bound or r2 < r_min**2:
            continue
        points.append(p)
    return points
