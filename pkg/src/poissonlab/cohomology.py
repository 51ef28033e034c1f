"""Polynomial Poisson cohomology of linear Poisson structures, slice by slice.

For a linear bivector the differential [pi, .] preserves the polynomial
degree d of the coefficients, so the complex splits into finite-dimensional
slices indexed by (exterior degree q, polynomial degree d).  Each slice has
the fixed ordered basis

    subsets of {0..n-1} ascending  x  degree-d monomials in graded-lex order

and the differential becomes an exact rational matrix.

Two independent constructions of the same matrix ranks are provided: the
Lichnerowicz differential computed through the Schouten bracket machinery,
and the Chevalley-Eilenberg differential of the Lie algebra acting on
symmetric powers of the adjoint representation, built from the structure
constants alone.  Their agreement per slice is the oracle test.
"""

from __future__ import annotations

import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

from .exact_linalg import ExactMatrix, fraction_rows_echelon, rank_kernel, rank_only
from .exterior import MultiVector, schouten_bracket
from .liealg import build_linear_poisson, jacobi_check, jacobi_witness
from .poly import Polynomial

METHODS = ("lichnerowicz", "ce")


class JacobiError(ValueError):
    """Structure constants violate the Jacobi identity; carries a witness."""

    def __init__(self, witness):
        super().__init__(f"Jacobi identity fails: {witness}")
        self.witness = witness


def monomials_of_degree(nvars, degree):
    """Exponent tuples of total degree `degree`, graded-lex (descending)."""
    if degree < 0:
        return []
    out = []

    def rec(prefix, remaining, slots):
        if slots == 1:
            out.append(prefix + (remaining,))
            return
        for k in range(remaining, -1, -1):
            rec(prefix + (k,), remaining - k, slots - 1)

    rec((), degree, nvars)
    return out


class GradedSlice:
    """Ordered basis of q-vectors with degree-d monomial coefficients."""

    def __init__(self, nvars, q, d):
        self.nvars = nvars
        self.q = q
        self.d = d
        if q < 0 or q > nvars or d < 0:
            self.subsets = []
            self.monomials = []
        else:
            self.subsets = list(itertools.combinations(range(nvars), q))
            self.monomials = monomials_of_degree(nvars, d)
        self.index = {}
        for s in self.subsets:
            for m in self.monomials:
                self.index[(s, m)] = len(self.index)
        self.size = len(self.index)

    def basis_pairs(self):
        for s in self.subsets:
            for m in self.monomials:
                yield s, m

    def multivector(self, vector):
        """Assemble a slice coordinate vector into a MultiVector."""
        comps = {}
        for (s, m), idx in self.index.items():
            v = vector[idx]
            if v:
                poly = comps.get(s, Polynomial.zero(self.nvars))
                comps[s] = poly + Polynomial.monomial(m, v)
        return MultiVector(self.nvars, self.q, comps)

    def vector_of(self, P):
        """Coordinates of a multivector that lies in this slice."""
        vec = [Fraction(0)] * self.size
        for s, coeff in P.components.items():
            for m, c in coeff.terms.items():
                key = (s, m)
                if key not in self.index:
                    raise ValueError(f"term {m} on {s} outside slice (q={self.q}, d={self.d})")
                vec[self.index[key]] = c
        return vec


def lichnerowicz_matrix(pi, q, d):
    """Matrix of [pi, .] from slice (q, d) to slice (q+1, d)."""
    n = pi.dim
    source = GradedSlice(n, q, d)
    target = GradedSlice(n, q + 1, d)
    matrix = ExactMatrix(target.size, source.size)
    for col, (s, m) in enumerate(source.basis_pairs()):
        P = MultiVector.basis(s, n, Polynomial.monomial(m))
        image = schouten_bracket(pi, P)
        for t, coeff in image.components.items():
            for e, c in coeff.terms.items():
                key = (t, e)
                if key not in target.index:
                    raise ValueError(
                        "differential left the slice; the bivector is not linear"
                    )
                r = target.index[key]
                matrix.set(r, col, matrix.get(r, col) + c)
    return matrix


def ce_matrix(g, q, d):
    """Chevalley-Eilenberg differential on Lambda^q g* (x) S^d(g).

    Built directly from the structure constants and the derivation extension
    of the adjoint action; shares no code with the Schouten machinery.
    """
    n = g.dim
    source = GradedSlice(n, q, d)
    target = GradedSlice(n, q + 1, d)
    matrix = ExactMatrix(target.size, source.size)

    def add(t_subset, mono, col, value):
        if not value:
            return
        r = target.index[(t_subset, mono)]
        matrix.set(r, col, matrix.get(r, col) + value)

    for col, (s, m) in enumerate(source.basis_pairs()):
        sset = set(s)
        # action term: insert a new index i0 and act on the monomial
        for i0 in range(n):
            if i0 in sset:
                continue
            pos = sum(1 for u in s if u < i0)
            t_subset = tuple(sorted(s + (i0,)))
            sign = -1 if pos % 2 else 1
            for k in range(n):
                if m[k] == 0:
                    continue
                for l, c in g.adjoint(i0, k).items():
                    mono = list(m)
                    mono[k] -= 1
                    mono[l] += 1
                    add(t_subset, tuple(mono), col, sign * m[k] * c)
        # structure term: replace one index of s by a bracketing pair
        for posl, l in enumerate(s):
            rest = s[:posl] + s[posl + 1 :]
            restset = set(rest)
            sign_l = -1 if posl % 2 else 1
            for a in range(n):
                if a in restset:
                    continue
                for b in range(a + 1, n):
                    if b in restset:
                        continue
                    c = g.constant(a, b, l)
                    if not c:
                        continue
                    t_subset = tuple(sorted(rest + (a, b)))
                    i = t_subset.index(a)
                    j = t_subset.index(b)
                    sign = -1 if (i + j) % 2 else 1
                    add(t_subset, m, col, sign * sign_l * c)
    return matrix


def _differential(g, method, q, d):
    if method == "lichnerowicz":
        return lichnerowicz_matrix(build_linear_poisson(g), q, d)
    if method == "ce":
        return ce_matrix(g, q, d)
    raise ValueError(f"unknown method {method!r}; expected one of {METHODS}")


@dataclass(frozen=True)
class CohomologyEntry:
    method: str
    q: int
    d: int
    dim_chain: int
    rank_in: int
    rank_out: int
    dim_h: int


class CohomologyTable:
    """Per-(q,d) chain dimensions, differential ranks, and dim H."""

    def __init__(self, method, q_max, d_max, entries):
        self.method = method
        self.q_max = q_max
        self.d_max = d_max
        self.entries = sorted(entries, key=lambda e: (e.d, e.q))
        self._by_key = {(e.q, e.d): e for e in self.entries}

    def get(self, q, d):
        return self._by_key[(q, d)]

    def dim_h(self, q, d):
        return self._by_key[(q, d)].dim_h

    def dims(self):
        return {(e.q, e.d): e.dim_h for e in self.entries}

    CSV_HEADER = "method,q,d,dim_chain,rank_in,rank_out,dim_H"

    def csv_rows(self):
        for e in self.entries:
            yield f"{e.method},{e.q},{e.d},{e.dim_chain},{e.rank_in},{e.rank_out},{e.dim_h}"


def _rank_task(args):
    g, method, q, d = args
    return (method, q, d, rank_only(_differential(g, method, q, d)))


def cohomology_table(g, q_max, d_max, method="lichnerowicz", jobs=1):
    """Compute the cohomology table; requires the Jacobi identity.

    With ``jobs > 1`` the independent (q, d) slices are processed in a
    process pool; output order is canonical regardless of the schedule.
    """
    witness = jacobi_witness(g)
    if witness is not None:
        raise JacobiError(witness)
    n = g.dim
    q_top = min(q_max, n)
    tasks = [(g, method, q, d) for d in range(d_max + 1) for q in range(q_top + 1)]
    ranks = {}
    if jobs and jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            for m, q, d, r in pool.map(_rank_task, tasks):
                ranks[(q, d)] = r
    else:
        for task in tasks:
            _, q, d, r = _rank_task(task)
            ranks[(q, d)] = r
    entries = []
    for d in range(d_max + 1):
        n_mono = len(monomials_of_degree(n, d))
        euler_h = 0
        euler_chain = 0
        for q in range(q_max + 1):
            dim_chain = _binom(n, q) * n_mono
            rank_out = ranks.get((q, d), 0)
            rank_in = ranks.get((q - 1, d), 0)
            dim_h = dim_chain - rank_out - rank_in
            if dim_h < 0:
                raise AssertionError(f"negative dim H at (q={q}, d={d})")
            entries.append(
                CohomologyEntry(method, q, d, dim_chain, rank_in, rank_out, dim_h)
            )
            sign = -1 if q % 2 else 1
            euler_h += sign * dim_h
            euler_chain += sign * dim_chain
        if q_max >= n and euler_h != euler_chain:
            raise AssertionError(f"Euler characteristic mismatch at d={d}")
    return CohomologyTable(method, q_max, d_max, entries)


def _binom(n, k):
    if k < 0 or k > n:
        return 0
    out = 1
    for i in range(k):
        out = out * (n - i) // (i + 1)
    return out


def representatives(g, q, d, method="lichnerowicz"):
    """Deterministic cohomology class representatives in slice (q, d).

    The kernel basis of the outgoing differential is reduced against the
    image of the incoming one in kernel coordinates; the kernel vectors not
    hit by an image pivot represent a basis of H^q_d.
    """
    source = GradedSlice(g.dim, q, d)
    M_out = _differential(g, method, q, d)
    rank, kernel = rank_kernel(M_out)
    if not kernel:
        return []
    # free columns carry the kernel coordinates: vector i is supported on
    # free column i with all other free columns zero
    from .exact_linalg import _echelon

    _, pivots = _echelon(M_out.integer_rows(), M_out.cols)
    pivot_set = set(pivots)
    free_cols = [c for c in range(M_out.cols) if c not in pivot_set]
    below = GradedSlice(g.dim, q - 1, d)
    if below.size:
        M_in = _differential(g, method, q - 1, d)
        image_coords = []
        for col in range(M_in.cols):
            vec = [Fraction(0)] * M_in.rows
            for (r, c), v in M_in.entries.items():
                if c == col:
                    vec[r] = v
            image_coords.append(tuple(vec[fc] for fc in free_cols))
        _, covered = fraction_rows_echelon(image_coords)
    else:
        covered = []
    covered_set = set(covered)
    return [
        source.multivector(kernel[i])
        for i in range(len(kernel))
        if i not in covered_set
    ]


def casimir_generator_check(g, d_max, method="lichnerowicz"):
    """For algebras with a single quadratic Casimir generator: the degree-d
    scalar kernel is spanned by generator^(d/2) for even d and zero for odd d.

    Rejects inputs without that shape (for instance the abelian algebra,
    where every polynomial is a Casimir).
    """
    _, kernel1 = rank_kernel(_differential(g, method, 0, 1))
    if kernel1:
        raise ValueError("input has linear Casimirs; expected a single quadratic generator")
    slice2 = GradedSlice(g.dim, 0, 2)
    _, kernel2 = rank_kernel(_differential(g, method, 0, 2))
    if len(kernel2) != 1:
        raise ValueError(
            f"expected a one-dimensional quadratic Casimir space, found {len(kernel2)}"
        )
    generator = slice2.multivector(kernel2[0]).scalar()
    for d in range(d_max + 1):
        _, kernel = rank_kernel(_differential(g, method, 0, d))
        if d % 2:
            if kernel:
                return False
        else:
            if len(kernel) != 1:
                return False
            power = generator ** (d // 2)
            target = GradedSlice(g.dim, 0, d)
            vec = target.vector_of(MultiVector.from_scalar(power, g.dim))
            if not _proportional(vec, list(kernel[0])):
                return False
    return True


def _proportional(u, v):
    lead = next(((a, b) for a, b in zip(u, v) if a or b), None)
    if lead is None:
        return True
    a0, b0 = lead
    if not a0 or not b0:
        return False
    return all(a * b0 == b * a0 for a, b in zip(u, v))


def multivector_terms_json(P):
    """Serialize a multivector as a list of subset/monomial/coefficient terms."""
    terms = []
    for subset in sorted(P.components):
        coeff = P.components[subset]
        poly = coeff if isinstance(coeff, Polynomial) else None
        if poly is None:
            raise ValueError("only polynomial coefficients serialize to slice terms")
        for m in sorted(poly.terms, key=lambda e: tuple(-k for k in e)):
            terms.append(
                {
                    "subset": [i + 1 for i in subset],
                    "monomial": list(m),
                    "coeff": str(poly.terms[m]),
                }
            )
    return terms
