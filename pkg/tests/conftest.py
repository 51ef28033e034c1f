"""Shared helpers: seeded random polynomials, multivectors, and forms."""

import itertools
import random

from poissonlab.exterior import DifferentialForm, MultiVector
from poissonlab.poly import Polynomial


def rand_polynomial(rng, nvars=3, max_degree=2, n_terms=3, coeff_bound=3):
    p = Polynomial.zero(nvars)
    for _ in range(n_terms):
        e = [0] * nvars
        for _ in range(rng.randint(0, max_degree)):
            e[rng.randrange(nvars)] += 1
        p = p + Polynomial.monomial(e, rng.randint(-coeff_bound, coeff_bound))
    return p


def rand_multivector(rng, degree, nvars=3, **kw):
    comps = {}
    for s in itertools.combinations(range(nvars), degree):
        comps[s] = rand_polynomial(rng, nvars, **kw)
    return MultiVector(nvars, degree, comps)


def rand_form(rng, degree, nvars=3, **kw):
    comps = {}
    for s in itertools.combinations(range(nvars), degree):
        comps[s] = rand_polynomial(rng, nvars, **kw)
    return DifferentialForm(nvars, degree, comps)


def seeded_rng(seed=1729):
    return random.Random(seed)
