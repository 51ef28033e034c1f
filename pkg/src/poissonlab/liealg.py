"""Lie algebra structure constants and the associated linear Poisson bivector.

The JSON file format is 1-indexed:

    {"dim": 3,
     "names": ["x", "y", "z"],
     "brackets": [{"i": 2, "j": 3, "terms": [{"k": 1, "c": "1"}]}]}

with rational constants as strings ("p/q" or an integer literal).  Only pairs
i < j are stored; antisymmetry is implicit.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .exterior import MultiVector, schouten_bracket
from .poly import Polynomial


class LieAlgebraFormatError(ValueError):
    """Malformed structure-constant input; carries a field diagnostic."""


class LieAlgebraData:
    """Structure constants c_{ij}^k, stored sparsely for i < j."""

    def __init__(self, dim, brackets, names=None):
        self.dim = dim
        self.names = list(names) if names else [f"e{i+1}" for i in range(dim)]
        clean = {}
        for (i, j), vec in brackets.items():
            if not (0 <= i < j < dim):
                raise LieAlgebraFormatError(f"bracket pair ({i + 1},{j + 1}) out of range")
            entry = {}
            for k, c in vec.items():
                if not 0 <= k < dim:
                    raise LieAlgebraFormatError(f"bracket target {k + 1} out of range")
                c = Fraction(c)
                if c:
                    entry[k] = c
            if entry:
                clean[(i, j)] = entry
        self.brackets = clean

    def constant(self, i, j, k):
        """c_{ij}^k for arbitrary i, j, via antisymmetry."""
        if i == j:
            return Fraction(0)
        if i < j:
            return self.brackets.get((i, j), {}).get(k, Fraction(0))
        return -self.brackets.get((j, i), {}).get(k, Fraction(0))

    def adjoint(self, i, k):
        """[e_i, e_k] as a sparse map l -> c_{ik}^l."""
        if i == k:
            return {}
        if i < k:
            return self.brackets.get((i, k), {})
        return {l: -c for l, c in self.brackets.get((k, i), {}).items()}

    # -- serialization -----------------------------------------------------

    @classmethod
    def from_json_dict(cls, data):
        try:
            dim = int(data["dim"])
        except (KeyError, TypeError, ValueError) as exc:
            raise LieAlgebraFormatError("missing or non-integer field 'dim'") from exc
        names = data.get("names")
        brackets = {}
        for idx, entry in enumerate(data.get("brackets", [])):
            try:
                i, j = int(entry["i"]) - 1, int(entry["j"]) - 1
            except (KeyError, TypeError, ValueError) as exc:
                raise LieAlgebraFormatError(
                    f"brackets[{idx}]: missing or non-integer 'i'/'j'"
                ) from exc
            if i >= j:
                raise LieAlgebraFormatError(
                    f"brackets[{idx}]: need i < j, got ({i + 1},{j + 1})"
                )
            vec = {}
            for tdx, term in enumerate(entry.get("terms", [])):
                try:
                    k = int(term["k"]) - 1
                    c = Fraction(str(term["c"]))
                except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
                    raise LieAlgebraFormatError(
                        f"brackets[{idx}].terms[{tdx}]: bad 'k' or 'c'"
                    ) from exc
                vec[k] = vec.get(k, Fraction(0)) + c
            key = (i, j)
            if key in brackets:
                raise LieAlgebraFormatError(f"brackets[{idx}]: duplicate pair ({i + 1},{j + 1})")
            brackets[key] = vec
        return cls(dim, brackets, names)

    @classmethod
    def load(cls, path):
        with open(path) as fh:
            try:
                data = json.load(fh)
            except json.JSONDecodeError as exc:
                raise LieAlgebraFormatError(
                    f"{path}: invalid JSON at line {exc.lineno}, column {exc.colno}"
                ) from exc
        return cls.from_json_dict(data)

    def to_json_dict(self):
        return {
            "dim": self.dim,
            "names": self.names,
            "brackets": [
                {
                    "i": i + 1,
                    "j": j + 1,
                    "terms": [{"k": k + 1, "c": str(c)} for k, c in sorted(vec.items())],
                }
                for (i, j), vec in sorted(self.brackets.items())
            ],
        }


def build_linear_poisson(g):
    """Bivector sum over i<j of c_{ij}^k x_k d/dx_i ^ d/dx_j."""
    n = g.dim
    comps = {}
    for (i, j), vec in g.brackets.items():
        coeff = Polynomial(n, {tuple(int(m == k) for m in range(n)): c for k, c in vec.items()})
        if not coeff.is_zero():
            comps[(i, j)] = coeff
    return MultiVector(n, 2, comps)


def jacobi_check(g):
    """[pi, pi]; the zero trivector exactly when the Jacobi identity holds."""
    pi = build_linear_poisson(g)
    return schouten_bracket(pi, pi)


def jacobi_witness(g):
    """A human-readable nonzero component of [pi,pi], or None when Jacobi holds."""
    residual = jacobi_check(g)
    if residual.is_zero():
        return None
    subset, coeff = sorted(residual.components.items())[0]
    basis = "^".join(f"d/d{g.names[i]}" for i in subset)
    return f"[pi,pi] component on {basis}: {coeff}"


# -- bundled algebras --------------------------------------------------------


def sl2():
    """{y,z} = x, {z,x} = y, {x,y} = -z."""
    return LieAlgebraData(
        3,
        {(1, 2): {0: Fraction(1)}, (0, 2): {1: Fraction(-1)}, (0, 1): {2: Fraction(-1)}},
        names=["x", "y", "z"],
    )


def so3():
    """{x,y} = z, {y,z} = x, {z,x} = y."""
    return LieAlgebraData(
        3,
        {(0, 1): {2: Fraction(1)}, (1, 2): {0: Fraction(1)}, (0, 2): {1: Fraction(-1)}},
        names=["x", "y", "z"],
    )


def heisenberg():
    """{x,y} = z, all other brackets zero."""
    return LieAlgebraData(3, {(0, 1): {2: Fraction(1)}}, names=["x", "y", "z"])


def abelian(dim=3):
    return LieAlgebraData(dim, {})


def broken_sl2():
    """sl2 constants with an extra term {y,z} = x + y; the Jacobiator is z != 0.

    Merely rescaling a single constant (for instance c_{12}^3) keeps Jacobi
    intact in dimension 3, so the negative control needs a mixing term.
    """
    g = sl2()
    return LieAlgebraData(
        3,
        {
            (1, 2): {0: Fraction(1), 1: Fraction(1)},
            (0, 2): {1: Fraction(-1)},
            (0, 1): {2: Fraction(-1)},
        },
        names=g.names,
    )


def conjugate(g, matrix):
    """Structure constants in the basis e'_i = sum_a matrix[a][i] e_a.

    The matrix must be invertible over the rationals; the result satisfies
    Jacobi exactly when the input does.
    """
    from .exterior import LinearMap3

    A = LinearMap3(matrix)
    inv = A.inverse()
    n = g.dim
    brackets = {}
    for i in range(n):
        for j in range(i + 1, n):
            # [e'_i, e'_j] in the original basis
            image = {}
            for a in range(n):
                for b in range(n):
                    factor = A.matrix[a][i] * A.matrix[b][j]
                    if factor == 0 or a == b:
                        continue
                    for k, c in g.adjoint(a, b).items():
                        image[k] = image.get(k, Fraction(0)) + factor * c
            # express in the new basis: e_k = sum_l inv[l][k] e'_l
            vec = {}
            for k, c in image.items():
                if c == 0:
                    continue
                for l in range(n):
                    w = inv.matrix[l][k]
                    if w:
                        vec[l] = vec.get(l, Fraction(0)) + c * w
            vec = {l: c for l, c in vec.items() if c != 0}
            if vec:
                brackets[(i, j)] = vec
    return LieAlgebraData(n, brackets, names=[f"e{i+1}'" for i in range(n)])
