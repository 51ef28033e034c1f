"""Multivector fields and differential forms with exact coefficients.

Tensors are stored as maps from strictly increasing index tuples to
coefficients (Polynomial or RationalFunction in the same ambient variables).
Construction accepts unsorted index tuples and normalizes by permutation
parity.  Degree-0 tensors double as scalars.

Sign conventions (fixed once, used everywhere):

* covector into multivector:  i_alpha(e_{s1..sk}) contracts the first slot,
  i_alpha(U ^ V) = alpha(U) V - alpha(V) U for degree 2;
* multivector into form:  i_{e_{s1..sk}} applies the degree-1 contractions
  in ascending index order, each into the first slot of the form, so
  i_{U^V} = i_V o i_U.  With these choices the Poisson bivector
  pi = x dy^dz + y dz^dx - z dx^dy of sl2* satisfies i_pi(dx^dy) = -z and
  i_pi(dx^dy^dz) = (1/2) df for f = x^2 + y^2 - z^2;
* Schouten bracket via the odd Poisson bracket on commuting coordinates and
  anticommuting partials, normalized so [X, Y] is the Lie bracket on vector
  fields, [X, h] = X(h), and the Leibniz rule reads
  [P, Q^R] = [P,Q]^R + (-1)^{(p-1)q} Q^[P,R].
"""

from __future__ import annotations

import itertools
from fractions import Fraction

from .poly import Polynomial, RationalFunction


def _merge_sign(a, b):
    """Sorted concatenation of two strictly increasing tuples with parity.

    Returns (merged, sign) or None when the tuples intersect.
    """
    merged = []
    sign = 1
    i = j = 0
    while i < len(a) and j < len(b):
        if a[i] == b[j]:
            return None
        if a[i] < b[j]:
            merged.append(a[i])
            i += 1
        else:
            # b[j] jumps over the remaining entries of a
            if (len(a) - i) % 2:
                sign = -sign
            merged.append(b[j])
            j += 1
    merged.extend(a[i:])
    merged.extend(b[j:])
    return tuple(merged), sign


def _sort_sign(seq):
    """Sort a tuple of distinct ints, returning (sorted tuple, permutation sign)."""
    items = list(seq)
    sign = 1
    for i in range(1, len(items)):
        j = i
        while j > 0 and items[j - 1] > items[j]:
            items[j - 1], items[j] = items[j], items[j - 1]
            sign = -sign
            j -= 1
    if len(set(items)) != len(items):
        return None
    return tuple(items), sign


def _coerce_scalar(value, dim):
    if isinstance(value, (Polynomial, RationalFunction)):
        if value.nvars != dim:
            raise ValueError("coefficient variable count differs from ambient dimension")
        return value
    if isinstance(value, (int, Fraction)):
        return Polynomial.constant(value, dim)
    raise TypeError(f"cannot use {value!r} as a coefficient")


class _GradedTensor:
    """Common implementation of MultiVector and DifferentialForm."""

    __slots__ = ("dim", "degree", "components")
    _basis_symbols = None  # set by subclasses for display

    def __init__(self, dim, degree, components=None):
        self.dim = dim
        self.degree = degree
        store = {}
        for subset, coeff in (components or {}).items():
            coeff = _coerce_scalar(coeff, dim)
            if coeff.is_zero():
                continue
            if len(subset) != degree:
                raise ValueError(f"index tuple {subset} does not match degree {degree}")
            if any(i < 0 or i >= dim for i in subset):
                raise ValueError(f"index out of range in {subset}")
            sorted_ = _sort_sign(subset)
            if sorted_ is None:
                continue  # repeated index wedges to zero
            key, sign = sorted_
            coeff = coeff if sign == 1 else -coeff
            if key in store:
                s = store[key] + coeff
                if s.is_zero():
                    del store[key]
                else:
                    store[key] = s
            else:
                store[key] = coeff
        self.components = store

    # -- constructors --------------------------------------------------

    @classmethod
    def zero(cls, dim, degree=0):
        return cls(dim, degree)

    @classmethod
    def from_scalar(cls, value, dim):
        return cls(dim, 0, {(): value})

    @classmethod
    def basis(cls, subset, dim, coeff=1):
        return cls(dim, len(subset), {tuple(subset): coeff})

    # -- queries ---------------------------------------------------------

    def is_zero(self):
        return not self.components

    def scalar(self):
        """Coefficient of a degree-0 tensor, as a ring element."""
        if self.degree != 0:
            raise ValueError("not a degree-0 tensor")
        return self.components.get((), Polynomial.zero(self.dim))

    def coefficient(self, subset):
        sorted_ = _sort_sign(tuple(subset))
        if sorted_ is None:
            return Polynomial.zero(self.dim)
        key, sign = sorted_
        c = self.components.get(key)
        if c is None:
            return Polynomial.zero(self.dim)
        return c if sign == 1 else -c

    def _check_mate(self, other, op):
        if type(self) is not type(other):
            raise TypeError(f"cannot {op} {type(self).__name__} with {type(other).__name__}")
        if self.dim != other.dim:
            raise ValueError("ambient dimension mismatch")

    # -- linear structure ---------------------------------------------------

    def __add__(self, other):
        self._check_mate(other, "add")
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        if self.degree != other.degree:
            raise ValueError("cannot add tensors of different degree")
        out = dict(self.components)
        for k, c in other.components.items():
            if k in out:
                s = out[k] + c
                if s.is_zero():
                    del out[k]
                else:
                    out[k] = s
            else:
                out[k] = c
        result = type(self)(self.dim, self.degree)
        result.components = out
        return result

    def __neg__(self):
        result = type(self)(self.dim, self.degree)
        result.components = {k: -c for k, c in self.components.items()}
        return result

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, scalar):
        scalar = _coerce_scalar(scalar, self.dim)
        result = type(self)(self.dim, self.degree)
        store = {}
        for k, c in self.components.items():
            p = c * scalar
            if not p.is_zero():
                store[k] = p
        result.components = store
        return result

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, _GradedTensor):
            return NotImplemented
        if type(self) is not type(other) or self.dim != other.dim:
            return False
        if self.is_zero() and other.is_zero():
            return True
        if self.degree != other.degree:
            return False
        keys = set(self.components) | set(other.components)
        zero = Polynomial.zero(self.dim)
        return all(
            self.components.get(k, zero) == other.components.get(k, zero) for k in keys
        )

    def __hash__(self):
        return hash((type(self).__name__, self.dim, self.degree))

    def __str__(self):
        if not self.components:
            return "0"
        glyph, names = self._basis_symbols
        parts = []
        for k in sorted(self.components):
            basis = "^".join(f"{glyph}{names[i]}" for i in k) or "1"
            parts.append(f"({self.components[k]}) {basis}".strip())
        return " + ".join(parts)

    __repr__ = __str__


class MultiVector(_GradedTensor):
    _basis_symbols = ("d/d", "xyzuvw")


class DifferentialForm(_GradedTensor):
    _basis_symbols = ("d", "xyzuvw")


def as_multivector(value, dim):
    """Coerce a scalar (ring element or number) to a degree-0 multivector."""
    if isinstance(value, MultiVector):
        return value
    return MultiVector.from_scalar(value, dim)


def wedge(a, b):
    """Exterior product of two tensors of the same kind."""
    a._check_mate(b, "wedge")
    result = type(a)(a.dim, a.degree + b.degree)
    if a.degree + b.degree > a.dim:
        return result
    store = {}
    for ka, ca in a.components.items():
        for kb, cb in b.components.items():
            merged = _merge_sign(ka, kb)
            if merged is None:
                continue
            key, sign = merged
            c = ca * cb
            c = c if sign == 1 else -c
            if key in store:
                s = store[key] + c
                if s.is_zero():
                    del store[key]
                else:
                    store[key] = s
            elif not c.is_zero():
                store[key] = c
    result.components = store
    return result


def contract_covector(alpha, P):
    """Contraction i_alpha P of a 1-form into the first slot of a multivector."""
    if not isinstance(alpha, DifferentialForm) or alpha.degree != 1:
        raise ValueError("first argument must be a 1-form")
    if not isinstance(P, MultiVector):
        raise TypeError("second argument must be a multivector")
    if P.degree == 0:
        raise ValueError("cannot contract into a degree-0 multivector")
    if alpha.dim != P.dim:
        raise ValueError("ambient dimension mismatch")
    result = MultiVector(P.dim, P.degree - 1)
    store = {}
    for subset, c in P.components.items():
        for pos, i in enumerate(subset):
            ai = alpha.components.get((i,))
            if ai is None:
                continue
            key = subset[:pos] + subset[pos + 1 :]
            term = ai * c
            if pos % 2:
                term = -term
            if key in store:
                s = store[key] + term
                if s.is_zero():
                    del store[key]
                else:
                    store[key] = s
            elif not term.is_zero():
                store[key] = term
    result.components = store
    return result


def sharp(pi, alpha):
    """pi-sharp of a 1-form: i_alpha pi."""
    return contract_covector(alpha, pi)


def pairing(alpha, X):
    """Evaluation alpha(X) of a 1-form on a vector field, as a ring element."""
    return contract_covector(alpha, X).scalar()


def _contract_one_vector_index(i, subset):
    """First-slot contraction of e_i with dx_subset; (remaining, sign) or None."""
    if i not in subset:
        return None
    pos = subset.index(i)
    return subset[:pos] + subset[pos + 1 :], -1 if pos % 2 else 1


def contract_multivector_into_form(P, omega):
    """Contraction i_P omega, applying P's degree-1 factors in ascending order."""
    if not isinstance(P, MultiVector) or not isinstance(omega, DifferentialForm):
        raise TypeError("expected (MultiVector, DifferentialForm)")
    if P.dim != omega.dim:
        raise ValueError("ambient dimension mismatch")
    out_degree = omega.degree - P.degree
    if out_degree < 0:
        return DifferentialForm.zero(P.dim, 0)
    result = DifferentialForm(P.dim, out_degree)
    store = {}
    for vset, cv in P.components.items():
        for fset, cf in omega.components.items():
            remaining = fset
            sign = 1
            for i in vset:
                step = _contract_one_vector_index(i, remaining)
                if step is None:
                    sign = 0
                    break
                remaining, s = step
                sign *= s
            if sign == 0:
                continue
            term = cv * cf
            if sign < 0:
                term = -term
            if remaining in store:
                s = store[remaining] + term
                if s.is_zero():
                    del store[remaining]
                else:
                    store[remaining] = s
            elif not term.is_zero():
                store[remaining] = term
    result.components = store
    return result


def exterior_derivative(omega):
    """de Rham differential; the quotient rule handles rational coefficients."""
    if not isinstance(omega, DifferentialForm):
        raise TypeError("expected a DifferentialForm")
    result = DifferentialForm(omega.dim, omega.degree + 1)
    store = {}
    for subset, c in omega.components.items():
        for i in range(omega.dim):
            if i in subset:
                continue
            dc = c.diff(i)
            if dc.is_zero():
                continue
            merged = _merge_sign((i,), subset)
            key, sign = merged
            term = dc if sign == 1 else -dc
            if key in store:
                s = store[key] + term
                if s.is_zero():
                    del store[key]
                else:
                    store[key] = s
            else:
                store[key] = term
    result.components = store
    return result


def schouten_bracket(P, Q):
    """Schouten-Nijenhuis bracket of multivector fields.

    Computed as the odd Poisson bracket
      [P,Q] = sum_i dP/dxi_i ^ dQ/dx_i
              - (-1)^{(p-1)(q-1)} sum_i dQ/dxi_i ^ dP/dx_i
    where xi_i are the anticommuting symbols for the coordinate partials.
    """
    if not isinstance(P, MultiVector):
        if not isinstance(Q, MultiVector):
            raise TypeError("at least one argument must be a MultiVector")
        P = as_multivector(P, Q.dim)
    if not isinstance(Q, MultiVector):
        Q = as_multivector(Q, P.dim)
    if P.dim != Q.dim:
        raise ValueError("ambient dimension mismatch")
    p, q = P.degree, Q.degree
    out_degree = max(p + q - 1, 0)
    result = MultiVector(P.dim, out_degree)
    if p + q - 1 < 0 or p + q - 1 > P.dim:
        return result
    store = {}

    def _accumulate(xiset, a, coeffset, b, extra_sign):
        # term: (odd-derivative of first argument) wedge (x-derivative of second)
        merged = _merge_sign(xiset, coeffset)
        if merged is None:
            return
        key, sign = merged
        term = a * b
        if sign * extra_sign < 0:
            term = -term
        if key in store:
            s = store[key] + term
            if s.is_zero():
                del store[key]
            else:
                store[key] = s
        elif not term.is_zero():
            store[key] = term

    swap = -1 if ((p - 1) * (q - 1)) % 2 else 1
    for A, a in P.components.items():
        for B, b in Q.components.items():
            for pos, i in enumerate(A):
                db = b.diff(i)
                if db.is_zero():
                    continue
                # right odd derivative: sign of moving xi_i past the tail of A
                s = -1 if (p - 1 - pos) % 2 else 1
                _accumulate(A[:pos] + A[pos + 1 :], a, B, db, s)
            for pos, i in enumerate(B):
                da = a.diff(i)
                if da.is_zero():
                    continue
                s = -swap * (-1 if (q - 1 - pos) % 2 else 1)
                _accumulate(B[:pos] + B[pos + 1 :], b, A, da, s)
    result.components = store
    return result


def lichnerowicz(pi, P):
    """The differential [pi, .] of the Poisson complex."""
    return schouten_bracket(pi, P)


def lie_derivative(X, tensor):
    """Lie derivative along a vector field X.

    On multivectors (and scalars) this is [X, .]; on forms it is Cartan's
    formula i_X d + d i_X.
    """
    if not isinstance(X, MultiVector) or X.degree != 1:
        raise ValueError("X must be a degree-1 multivector")
    if isinstance(tensor, (Polynomial, RationalFunction, int, Fraction)):
        tensor = as_multivector(tensor, X.dim)
    if isinstance(tensor, MultiVector):
        return schouten_bracket(X, tensor)
    if isinstance(tensor, DifferentialForm):
        return contract_multivector_into_form(X, exterior_derivative(tensor)) + (
            exterior_derivative(contract_multivector_into_form(X, tensor))
        )
    raise TypeError(f"cannot take a Lie derivative of {type(tensor).__name__}")


def koszul_differential(pi, omega):
    """Koszul differential (i_pi d - d i_pi) omega; lowers form degree by one."""
    if pi.degree != 2:
        raise ValueError("pi must be a bivector")
    if omega.degree == 0:
        return DifferentialForm.zero(omega.dim, 0)
    return contract_multivector_into_form(pi, exterior_derivative(omega)) - (
        exterior_derivative(contract_multivector_into_form(pi, omega))
    )


def mu_flat(P):
    """Contraction of a multivector into the standard volume form dx^dy^dz."""
    if P.dim != 3:
        raise ValueError("mu_flat is defined in ambient dimension 3 only")
    mu = DifferentialForm.basis((0, 1, 2), 3)
    return contract_multivector_into_form(P, mu)


class LinearMap3:
    """Square matrix of rationals acting linearly on the ambient space."""

    __slots__ = ("matrix", "dim")

    def __init__(self, rows):
        self.matrix = tuple(tuple(Fraction(v) for v in row) for row in rows)
        self.dim = len(self.matrix)
        if any(len(r) != self.dim for r in self.matrix):
            raise ValueError("matrix must be square")

    @classmethod
    def identity(cls, dim=3):
        return cls([[1 if i == j else 0 for j in range(dim)] for i in range(dim)])

    @classmethod
    def diagonal(cls, entries):
        n = len(entries)
        return cls([[entries[i] if i == j else 0 for j in range(n)] for i in range(n)])

    def compose(self, other):
        n = self.dim
        return LinearMap3(
            [
                [sum(self.matrix[i][k] * other.matrix[k][j] for k in range(n)) for j in range(n)]
                for i in range(n)
            ]
        )

    def is_identity(self):
        return all(
            self.matrix[i][j] == (1 if i == j else 0)
            for i in range(self.dim)
            for j in range(self.dim)
        )

    def determinant(self):
        return _det([list(r) for r in self.matrix])

    def inverse(self):
        n = self.dim
        aug = [list(self.matrix[i]) + [Fraction(int(i == j)) for j in range(n)] for i in range(n)]
        for col in range(n):
            piv = next((r for r in range(col, n) if aug[r][col] != 0), None)
            if piv is None:
                raise ValueError("singular linear map")
            aug[col], aug[piv] = aug[piv], aug[col]
            inv = Fraction(1) / aug[col][col]
            aug[col] = [v * inv for v in aug[col]]
            for r in range(n):
                if r != col and aug[r][col] != 0:
                    factor = aug[r][col]
                    aug[r] = [v - factor * w for v, w in zip(aug[r], aug[col])]
        return LinearMap3([row[n:] for row in aug])

    def __eq__(self, other):
        return isinstance(other, LinearMap3) and self.matrix == other.matrix


def _det(rows):
    n = len(rows)
    if n == 0:
        return Fraction(1)
    if n == 1:
        return rows[0][0]
    total = Fraction(0)
    for j in range(n):
        if rows[0][j] == 0:
            continue
        minor = [r[:j] + r[j + 1 :] for r in rows[1:]]
        term = rows[0][j] * _det(minor)
        total += term if j % 2 == 0 else -term
    return total


def pushforward(L, P):
    """Pushforward of a multivector field by the invertible linear map L."""
    if not isinstance(L, LinearMap3):
        raise TypeError("expected a LinearMap3")
    if L.dim != P.dim:
        raise ValueError("dimension mismatch")
    if L.determinant() == 0:
        raise ValueError("singular linear map")
    inv = L.inverse()
    subs = [
        Polynomial(P.dim, {tuple(int(k == j) for k in range(P.dim)): inv.matrix[i][j]
                           for j in range(P.dim) if inv.matrix[i][j] != 0})
        for i in range(P.dim)
    ]
    result = MultiVector(P.dim, P.degree)
    store = {}
    for subset, c in P.components.items():
        if isinstance(c, RationalFunction):
            moved = RationalFunction(c.num.substitute(subs), c.den.substitute(subs))
        else:
            moved = c.substitute(subs)
        if moved.is_zero():
            continue
        for target in itertools.combinations(range(P.dim), P.degree):
            det = _det([[L.matrix[t][s] for s in subset] for t in target])
            if det == 0:
                continue
            term = moved * det
            if target in store:
                s = store[target] + term
                if s.is_zero():
                    del store[target]
                else:
                    store[target] = s
            else:
                store[target] = term
    result.components = store
    return result
