"""Exact identity battery for the sl2* linear Poisson structure on R^3.

Everything here is rational-function arithmetic on the open sets

    O = {f > 0},   I = {f < 0},   f = x^2 + y^2 - z^2,

so every check is an exact ring identity: a check passes iff its residual is
the zero element.  The transcendental charts never appear; chart statements
are verified through their rational one-forms (dtheta, dxi, dw = dz,
dv = dx).

Frozen sign ledger: the musical isomorphisms extending -pi-sharp and
-omega-flat multiplicatively, and the per-degree signs EPSILON_SIGNS with
mu_flat([pi, P]) = eps_k * delta_pi(mu_flat P).  A debug flag flips the
ledger to demonstrate that the relations are sign-sensitive.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .exterior import (
    DifferentialForm,
    LinearMap3,
    MultiVector,
    contract_covector,
    contract_multivector_into_form,
    exterior_derivative,
    koszul_differential,
    lie_derivative,
    mu_flat,
    pairing,
    pushforward,
    schouten_bracket,
    sharp,
    wedge,
)
from .poly import Polynomial, RationalFunction

# mu_flat([pi,P]) = EPSILON_SIGNS[k] * koszul(mu_flat(P)) for k-vectors P
EPSILON_SIGNS = (-1, 1, -1)


@dataclass
class IdentityCheck:
    identifier: str
    statement: str
    domain: str  # "global" | "O" | "I" | "O+I" | "R3\\0"
    passed: bool
    witness: str | None = None

    def as_dict(self):
        return {
            "id": self.identifier,
            "statement": self.statement,
            "domain": self.domain,
            "passed": self.passed,
            "witness": self.witness,
        }


class Sl2Geometry:
    """All closed-form fields used by the identity battery."""

    def __init__(self):
        n = 3
        x = Polynomial.variable(0, n)
        y = Polynomial.variable(1, n)
        z = Polynomial.variable(2, n)
        self.x, self.y, self.z = x, y, z
        self.f = x * x + y * y - z * z
        self.r2 = x * x + y * y
        self.R2 = x * x + y * y + z * z
        self.pi = MultiVector(n, 2, {(1, 2): x, (2, 0): y, (0, 1): -z})
        self.T_O = MultiVector(
            n,
            1,
            {
                (0,): RationalFunction(z * x, self.r2),
                (1,): RationalFunction(z * y, self.r2),
                (2,): RationalFunction(Polynomial.constant(1, n)),
            },
        )
        self.T_I = MultiVector.zero(n, 1)
        self.N_O = MultiVector(
            n,
            1,
            {
                (0,): RationalFunction(x, 2 * self.r2),
                (1,): RationalFunction(y, 2 * self.r2),
            },
        )
        w2 = y * y - z * z
        self.N_I = MultiVector(
            n,
            1,
            {
                (1,): RationalFunction(y, 2 * w2),
                (2,): RationalFunction(z, 2 * w2),
            },
        )
        self.V = MultiVector(
            n,
            1,
            {
                (0,): RationalFunction(x, 2 * self.R2),
                (1,): RationalFunction(y, 2 * self.R2),
                (2,): RationalFunction(-z, 2 * self.R2),
            },
        )
        self.omega_tilde = DifferentialForm(
            n,
            2,
            {
                (1, 2): RationalFunction(-x, self.R2),
                (0, 2): RationalFunction(y, self.R2),
                (0, 1): RationalFunction(z, self.R2),
            },
        )
        self.W = MultiVector(
            n, 1, {(0,): -z * z * x, (1,): -z * z * y, (2,): -self.r2 * z}
        )
        self.dtheta = DifferentialForm(
            n,
            1,
            {(0,): RationalFunction(-y, self.r2), (1,): RationalFunction(x, self.r2)},
        )
        xi2 = z * z - y * y
        self.dxi = DifferentialForm(
            n,
            1,
            {(1,): RationalFunction(z, xi2), (2,): RationalFunction(-y, xi2)},
        )
        self.dw = DifferentialForm.basis((2,), n)  # dz
        self.dv = DifferentialForm.basis((0,), n)  # dx
        self.df = exterior_derivative(DifferentialForm.from_scalar(self.f, n))
        self.mu = DifferentialForm.basis((0, 1, 2), n)
        self.tau = LinearMap3.diagonal([1, -1, -1])
        t = Polynomial.variable(0, 1)
        self.gamma1 = (
            Polynomial.zero(1),
            (-t - 1) / Fraction(2),
            (1 - t) / Fraction(2),
        )
        self.gamma2 = tuple(-c for c in self.gamma1)

    # -- musical isomorphisms of the dual-map block ------------------------

    def sharp_power(self, form, sign=-1):
        """Multiplicative extension of (sign * pi-sharp) from 1-forms."""
        basis_images = [
            sharp(self.pi, DifferentialForm.basis((i,), 3)) * sign for i in range(3)
        ]
        out = MultiVector.zero(3, form.degree)
        for subset, coeff in form.components.items():
            image = MultiVector.from_scalar(coeff, 3)
            for i in subset:
                image = wedge(image, basis_images[i])
            out = out + image
        return out

    def flat_power(self, mv, sign=-1):
        """Multiplicative extension of (sign * omega-tilde flat) from vectors."""
        basis_images = [
            contract_multivector_into_form(MultiVector.basis((i,), 3), self.omega_tilde)
            * sign
            for i in range(3)
        ]
        out = DifferentialForm.zero(3, mv.degree)
        for subset, coeff in mv.components.items():
            image = DifferentialForm.from_scalar(coeff, 3)
            for i in subset:
                image = wedge(image, basis_images[i])
            out = out + image
        return out

    def j_phi(self, form, flat_sign=-1):
        return self.sharp_power(contract_multivector_into_form(self.V, form))

    def p_phi(self, mv, flat_sign=-1):
        if mv.degree == 0:
            return DifferentialForm.zero(3, 1)
        return wedge(self.df, self.flat_power(contract_covector(self.df, mv), flat_sign))

    def p_V(self, mv, flat_sign=-1):
        return wedge(self.df, self.flat_power(mv, flat_sign))

    def j_V(self, form, flat_sign=-1):
        return wedge(
            self.V, self.sharp_power(contract_multivector_into_form(self.V, form))
        )


def _residual_witness(residual):
    if isinstance(residual, (Polynomial, RationalFunction)):
        if residual.is_zero():
            return None
        return f"scalar residual: {residual}"
    if residual.is_zero():
        return None
    subset, coeff = sorted(residual.components.items())[0]
    glyph = "d/d" if isinstance(residual, MultiVector) else "d"
    names = "xyz"
    basis = "^".join(f"{glyph}{names[i]}" for i in subset) or "1"
    return f"component {basis}: {coeff}"


def _check(identifier, statement, domain, residual):
    witness = _residual_witness(residual)
    return IdentityCheck(identifier, statement, domain, witness is None, witness)


def _is_zero(value):
    return value.is_zero()


# -- the battery -------------------------------------------------------------


def verify_core_fields(geom=None):
    """Poisson vector fields, W, and their pairings; all exact."""
    g = geom or Sl2Geometry()
    checks = []
    checks.append(
        _check("core.01_lie_T_pi", "L_T pi = 0", "O", lie_derivative(g.T_O, g.pi))
    )
    checks.append(
        _check("core.02_lie_N_pi_O", "L_N pi = 0", "O", lie_derivative(g.N_O, g.pi))
    )
    checks.append(
        _check("core.03_lie_N_pi_I", "L_N pi = 0", "I", lie_derivative(g.N_I, g.pi))
    )
    checks.append(
        _check(
            "core.04_N_T_commute",
            "[N, T] = 0",
            "O",
            schouten_bracket(g.N_O, g.T_O),
        )
    )
    checks.append(
        _check(
            "core.05_lie_N_f_O",
            "L_N f = 1",
            "O",
            lie_derivative(g.N_O, g.f).scalar() - 1,
        )
    )
    checks.append(
        _check(
            "core.06_lie_N_f_I",
            "L_N f = 1",
            "I",
            lie_derivative(g.N_I, g.f).scalar() - 1,
        )
    )
    checks.append(
        _check(
            "core.07_lie_T_f",
            "L_T f = 0",
            "O",
            lie_derivative(g.T_O, g.f).scalar(),
        )
    )
    checks.append(
        _check(
            "core.08_sharp_df",
            "pi-sharp(df) = 0 (f is a Casimir)",
            "global",
            sharp(g.pi, g.df),
        )
    )
    checks.append(
        _check(
            "core.09_T_is_sharp_dtheta",
            "T = pi-sharp(dtheta)",
            "O",
            g.T_O - sharp(g.pi, g.dtheta),
        )
    )
    r2z = g.r2 * g.z
    checks.append(
        _check(
            "core.10_W_formula",
            "W = -r^2 z pi-sharp(dtheta) = -z^2 x d/dx - z^2 y d/dy - r^2 z d/dz",
            "global",
            g.W - sharp(g.pi, g.dtheta) * (-r2z),
        )
    )
    checks.append(
        _check("core.11_lie_W_f", "L_W f = 0", "global", lie_derivative(g.W, g.f))
    )
    checks.append(
        _check(
            "core.12_lie_W_R2",
            "L_W R^2 = -4 r^2 z^2",
            "global",
            lie_derivative(g.W, g.R2).scalar() + 4 * g.r2 * g.z * g.z,
        )
    )
    checks.append(
        _check("core.13_dtheta_W", "dtheta(W) = 0", "O", pairing(g.dtheta, g.W))
    )
    return checks


def verify_charts(geom=None):
    """Componentwise content of pi|_O = d/dtheta ^ d/dw and pi|_I = d/dxi ^ d/dv."""
    g = geom or Sl2Geometry()
    sharp_dtheta = sharp(g.pi, g.dtheta)
    sharp_dxi = sharp(g.pi, g.dxi)
    checks = [
        _check(
            "charts.01_dw_sharp_dtheta",
            "dw(pi-sharp(dtheta)) = 1",
            "O",
            pairing(g.dw, sharp_dtheta) - 1,
        ),
        _check(
            "charts.02_df_sharp_dtheta",
            "df(pi-sharp(dtheta)) = 0",
            "O",
            pairing(g.df, sharp_dtheta),
        ),
        _check(
            "charts.03_dv_sharp_dxi",
            "dv(pi-sharp(dxi)) = 1",
            "I",
            pairing(g.dv, sharp_dxi) - 1,
        ),
        _check(
            "charts.04_df_sharp_dxi",
            "df(pi-sharp(dxi)) = 0",
            "I",
            pairing(g.df, sharp_dxi),
        ),
        _check("charts.05_dtheta_N", "dtheta(N) = 0", "O", pairing(g.dtheta, g.N_O)),
        _check("charts.06_dw_N", "dw(N) = 0", "O", pairing(g.dw, g.N_O)),
        _check("charts.07_dxi_N", "dxi(N) = 0", "I", pairing(g.dxi, g.N_I)),
        _check("charts.08_dv_N", "dv(N) = 0", "I", pairing(g.dv, g.N_I)),
    ]
    return checks


def _basis_forms_df_wedge(g):
    """df ^ beta for beta over the constant-coefficient basis forms."""
    betas = [DifferentialForm.from_scalar(1, 3)]
    for i in range(3):
        betas.append(DifferentialForm.basis((i,), 3))
    for s in ((0, 1), (0, 2), (1, 2)):
        betas.append(DifferentialForm.basis(s, 3))
    return [wedge(g.df, b) for b in betas if not wedge(g.df, b).is_zero()]


def verify_dual_map_relations(geom=None, flip_sign_ledger=False):
    """The four relations among j_phi, p_phi, j_V, p_V, verified on bases.

    All four maps are linear over the function ring, so checking them on the
    constant-coefficient basis forms df^beta and on the basis multivectors
    verifies them as module identities on R^3 minus the origin.
    """
    g = geom or Sl2Geometry()
    flat_sign = 1 if flip_sign_ledger else -1
    checks = [
        _check(
            "dual.01_df_V",
            "df(V) = 1",
            "R3\\0",
            pairing(g.df, g.V) - 1,
        ),
        _check(
            "dual.02_iV_omega",
            "i_V omega-tilde = 0",
            "R3\\0",
            contract_multivector_into_form(g.V, g.omega_tilde),
        ),
    ]
    pvjv = []
    pvjphi = []
    pphijv = []
    for eta in _basis_forms_df_wedge(g):
        pvjv.append(g.p_V(g.j_V(eta, flat_sign), flat_sign))
        pvjphi.append(g.p_V(g.j_phi(eta, flat_sign), flat_sign) - eta)
        pphijv.append(g.p_phi(g.j_V(eta, flat_sign), flat_sign) - eta)
    checks.append(
        _check(
            "dual.03_pV_jV",
            "p_V o j_V = 0 on df^Omega",
            "R3\\0",
            _first_nonzero(pvjv),
        )
    )
    checks.append(
        _check(
            "dual.04_pV_jphi",
            "p_V o j_df = Id on df^Omega",
            "R3\\0",
            _first_nonzero(pvjphi),
        )
    )
    checks.append(
        _check(
            "dual.05_pphi_jV",
            "p_df o j_V = Id on df^Omega",
            "R3\\0",
            _first_nonzero(pphijv),
        )
    )
    import itertools

    decomp = []
    for k in range(4):
        for s in itertools.combinations(range(3), k):
            w = MultiVector.basis(s, 3)
            got = g.j_V(g.p_phi(w, flat_sign), flat_sign) + g.j_phi(
                g.p_V(w, flat_sign), flat_sign
            )
            decomp.append(got - w)
    checks.append(
        _check(
            "dual.06_decomposition",
            "j_V o p_df + j_df o p_V = Id on multivector fields",
            "R3\\0",
            _first_nonzero(decomp),
        )
    )
    # orientation of the degree-2 representative under p_df
    NT = wedge(g.N_O, g.T_O)
    checks.append(
        _check(
            "dual.07_pdf_N_wedge_T",
            "p_df(N^T) = -df^dtheta",
            "O",
            g.p_phi(NT, flat_sign) + wedge(g.df, g.dtheta),
        )
    )
    return checks


def _first_nonzero(residuals):
    for r in residuals:
        if not r.is_zero():
            return r
    return residuals[0] if residuals else Polynomial.zero(3)


def verify_involution_and_transversals(geom=None):
    g = geom or Sl2Geometry()
    tau_sq = g.tau.compose(g.tau)
    checks = [
        IdentityCheck(
            "inv.01_tau_squared",
            "tau^2 = id",
            "global",
            tau_sq.is_identity(),
            None if tau_sq.is_identity() else "tau^2 is not the identity matrix",
        ),
        _check(
            "inv.02_tau_pushforward",
            "tau_* pi = pi",
            "global",
            pushforward(g.tau, g.pi) - g.pi,
        ),
    ]
    t = Polynomial.variable(0, 1)
    for tag, curve in (("gamma1", g.gamma1), ("gamma2", g.gamma2)):
        composed = g.f.substitute(list(curve))
        checks.append(
            _check(
                f"inv.03_f_{tag}" if tag == "gamma1" else f"inv.04_f_{tag}",
                f"f o {tag}(t) = t",
                "global",
                composed - t,
            )
        )
    return checks


def _standin_pairs():
    """Concrete low-degree stand-ins (coefficient lists in f, degree <= 3)."""
    return [
        ((0, 1), (0, 0, 1)),  # p = f, q = f^2
        ((1, 1), (0, 0, 0, 1)),  # p = 1 + f, q = f^3
        ((0, 2, 1), (3, 0, 0, 1)),  # p = 2f + f^2, q = 3 + f^3
    ]


def _in_f(coeffs, f):
    """Materialize sum_i coeffs[i] f^i in the ambient ring."""
    out = Polynomial.zero(3)
    for i, c in enumerate(coeffs):
        if c:
            out = out + Fraction(c) * f**i
    return out


def _in_f_derivative(coeffs, f):
    out = Polynomial.zero(3)
    for i, c in enumerate(coeffs):
        if c and i:
            out = out + Fraction(c) * i * f ** (i - 1)
    return out


def verify_bracket_relations_polynomial_stand_ins(geom=None):
    """Bracket relations with polynomial-in-f stand-ins for the Casimirs.

    The flat and outer Casimirs of the smooth theory have no exact
    representation; on O the same Leibniz computations are ring identities
    for any p(f), q(f), so polynomial stand-ins verify them exactly.
    """
    g = geom or Sl2Geometry()
    N, T = g.N_O, g.T_O
    NT = wedge(N, T)
    checks = []
    checks.append(
        _check(
            "standin.01_N_f2",
            "[N, f^2] = 2f",
            "O",
            schouten_bracket(N, g.f**2).scalar() - 2 * g.f,
        )
    )
    for idx, (pc, qc) in enumerate(_standin_pairs(), start=2):
        p, q = _in_f(pc, g.f), _in_f(qc, g.f)
        dp, dq = _in_f_derivative(pc, g.f), _in_f_derivative(qc, g.f)
        checks.append(
            _check(
                f"standin.{idx:02d}a_N_p",
                "[N, p(f)] = p'(f)",
                "O",
                schouten_bracket(N, p).scalar() - dp,
            )
        )
        checks.append(
            _check(
                f"standin.{idx:02d}b_pN_qNT",
                "[pN, qN^T] = (pq' - qp') N^T",
                "O",
                schouten_bracket(N * p, NT * q) - NT * (p * dq - q * dp),
            )
        )
        checks.append(
            _check(
                f"standin.{idx:02d}c_pN_qT",
                "[pN, qT] = pq' T",
                "O",
                schouten_bracket(N * p, T * q) - T * (p * dq),
            )
        )
        pi_p = g.pi + NT * p
        checks.append(
            _check(
                f"standin.{idx:02d}d_deformation",
                "[pi + pN^T, pi + pN^T] = 0",
                "O",
                schouten_bracket(pi_p, pi_p),
            )
        )
    return checks


def _random_polynomial(rng, max_degree=2, coeff_bound=3):
    p = Polynomial.zero(3)
    for _ in range(3):
        e = [0, 0, 0]
        for _ in range(rng.randint(0, max_degree)):
            e[rng.randrange(3)] += 1
        p = p + Polynomial.monomial(e, rng.randint(-coeff_bound, coeff_bound))
    return p


def _random_form(rng, degree):
    import itertools

    comps = {}
    for s in itertools.combinations(range(3), degree):
        comps[s] = _random_polynomial(rng)
    return DifferentialForm(3, degree, comps)


def _random_multivector(rng, degree):
    import itertools

    comps = {}
    for s in itertools.combinations(range(3), degree):
        comps[s] = _random_polynomial(rng)
    return MultiVector(3, degree, comps)


def verify_homology_duality(geom=None, seed=1729, flip_sign_ledger=False):
    """mu-flat duality between the Poisson differential and the Koszul one."""
    g = geom or Sl2Geometry()
    rng = random.Random(seed)
    checks = [
        _check(
            "duality.01_mu_flat_pi",
            "mu-flat(pi) = df/2",
            "global",
            mu_flat(g.pi) - g.df * Fraction(1, 2),
        )
    ]
    anti = []
    sq = []
    for degree in range(3):
        for _ in range(5):
            omega = _random_form(rng, degree)
            anti.append(
                exterior_derivative(koszul_differential(g.pi, omega))
                + koszul_differential(g.pi, exterior_derivative(omega))
            )
            sq.append(koszul_differential(g.pi, koszul_differential(g.pi, omega)))
    checks.append(
        _check(
            "duality.02_anticommute",
            "d delta_pi + delta_pi d = 0 on random polynomial forms",
            "global",
            _first_nonzero(anti),
        )
    )
    checks.append(
        _check(
            "duality.03_koszul_squared",
            "delta_pi^2 = 0 on random polynomial forms",
            "global",
            _first_nonzero(sq),
        )
    )
    signs = EPSILON_SIGNS if not flip_sign_ledger else tuple(-e for e in EPSILON_SIGNS)
    chain = []
    for k in range(3):
        for _ in range(5):
            P = _random_multivector(rng, k)
            chain.append(
                mu_flat(schouten_bracket(g.pi, P))
                - koszul_differential(g.pi, mu_flat(P)) * signs[k]
            )
    checks.append(
        _check(
            "duality.04_chain_map",
            "mu-flat([pi,P]) = eps_k delta_pi(mu-flat P), eps = (-1, 1, -1)",
            "global",
            _first_nonzero(chain),
        )
    )
    checks.append(
        _check(
            "duality.05_top_degree",
            "delta_pi(mu) = 0 and [pi, d/dx^d/dy^d/dz] = 0",
            "global",
            _first_nonzero(
                [
                    koszul_differential(g.pi, g.mu),
                    mu_flat(schouten_bracket(g.pi, MultiVector.basis((0, 1, 2), 3))),
                ]
            ),
        )
    )
    return checks


def run_all(seed=1729, flip_sign_ledger=False):
    """The full battery in canonical identifier order."""
    g = Sl2Geometry()
    checks = []
    checks.extend(verify_core_fields(g))
    checks.extend(verify_charts(g))
    checks.extend(verify_dual_map_relations(g, flip_sign_ledger=flip_sign_ledger))
    checks.extend(verify_involution_and_transversals(g))
    checks.extend(verify_bracket_relations_polynomial_stand_ins(g))
    checks.extend(verify_homology_duality(g, seed=seed, flip_sign_ledger=flip_sign_ledger))
    checks.sort(key=lambda c: c.identifier)
    return checks
