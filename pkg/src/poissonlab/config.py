"""Central tolerance configuration for the numerical lab.

Every numeric threshold used by the flow, homotopy, and estimate checks
lives here; CLI commands accept ``--tol name=value`` overrides.
"""

from __future__ import annotations

from dataclasses import dataclass, fields, replace


@dataclass(frozen=True)
class Tolerances:
    kappa_series_threshold: float = 1e-4
    f_conservation_rel: float = 1e-12
    semigroup_abs: float = 1e-10
    flow_oracle_abs: float = 1e-8
    ad_jacobian_rel: float = 1e-6
    convergence_abs: float = 1e-6
    homotopy_residual: float = 1e-6
    closedness_residual: float = 1e-8
    deformation_residual: float = 1e-10
    negative_control_min: float = 1e-3
    identity_rel: float = 1e-12
    quad_T: float = 50.0
    quad_nodes_per_unit: int = 16
    tail_tolerance: float = 1e-4
    refinement_stability: float = 0.05

    def override(self, **kw):
        return replace(self, **kw)

    @classmethod
    def field_names(cls):
        return [f.name for f in fields(cls)]

    @classmethod
    def from_overrides(cls, pairs):
        """Build from 'name=value' strings."""
        known = set(cls.field_names())
        kw = {}
        for item in pairs or []:
            name, _, raw = item.partition("=")
            if name not in known:
                raise ValueError(f"unknown tolerance {name!r}; known: {sorted(known)}")
            kw[name] = int(raw) if name == "quad_nodes_per_unit" else float(raw)
        return cls(**kw)


DEFAULT_TOLERANCES = Tolerances()
