"""Data types shared by the builders, the certificate codec and the verifier."""

from __future__ import annotations

from dataclasses import asdict, dataclass, field

from .errors import InputError
from .groebner import DEFAULT_STEP_LIMIT, Ideal
from .predicates import PredicateVerdict
from .rings import Polynomial, RingContext

HYPOTHESIS_NAMES = (
    "X-normal",
    "X-Q-Gorenstein",
    "K_X-Cartier",
    "X-CM",
    "X-lc",
    "Z-prime",
    "W-lc",
    "W-irreducible",
    "not-in-SingX",
)

POTENTIAL_LC_REQUIRES = ("X-normal", "X-Q-Gorenstein", "X-CM", "Z-prime", "not-in-SingX")
SPECIAL_LC_REQUIRES = (
    "X-normal",
    "X-lc",
    "K_X-Cartier",
    "X-CM",
    "W-lc",
    "W-irreducible",
    "not-in-SingX",
)


@dataclass(frozen=True)
class HypothesisSet:
    """User declarations: hypothesis name -> free-text provenance."""

    declared: dict = field(default_factory=dict)

    def __post_init__(self):
        for name in self.declared:
            if name not in HYPOTHESIS_NAMES:
                raise InputError(f"unknown hypothesis {name!r}; known: {', '.join(HYPOTHESIS_NAMES)}")

    @classmethod
    def of(cls, *names, provenance: str = "declared by user") -> "HypothesisSet":
        return cls({n: provenance for n in names})

    def __contains__(self, name):
        return name in self.declared

    def missing(self, required) -> list[str]:
        return [n for n in required if n not in self.declared]

    def without(self, name: str) -> "HypothesisSet":
        return HypothesisSet({k: v for k, v in self.declared.items() if k != name})


@dataclass(frozen=True)
class BuildConfig:
    sample_bound: int = 20
    max_retries: int = 10
    max_r: int = 6
    step_limit: int = DEFAULT_STEP_LIMIT
    matrix_retries: int = 64
    workers: int = 1

    def __post_init__(self):
        if self.max_retries < 0:
            raise ValueError("max_retries must be non-negative")
        for name in ("sample_bound", "max_r", "step_limit", "matrix_retries", "workers"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be positive")

    def to_dict(self) -> dict:
        """Parameters that can change a certificate; ``workers`` cannot."""
        d = asdict(self)
        del d["workers"]
        return d


@dataclass(frozen=True)
class CitedStep:
    """An implication taken from the literature, never computed."""

    step: str
    statement: str
    consumes: tuple
    references: tuple = ()


@dataclass(frozen=True)
class GenericCombination:
    lambdas: tuple
    basis_id: str
    g: Polynomial
    retries: int


@dataclass(frozen=True)
class WitnessStep:
    combination: GenericCombination
    verdicts: tuple  # non_zerodivisor, generically_reduced, dimension_drop
    dimension: int


@dataclass(frozen=True)
class CompleteIntersectionWitness:
    ambient: Ideal
    center: Ideal
    degree: int
    basis: tuple
    steps: tuple
    dimension_chain: tuple
    component: PredicateVerdict
    residual: tuple | None  # canonical basis of W : I_Z, None when W = Z

    @property
    def r(self) -> int:
        return len(self.steps)

    @property
    def gens(self) -> list[Polynomial]:
        return [s.combination.g for s in self.steps]

    @property
    def ideal(self) -> Ideal:
        return self.ambient + self.gens

    @property
    def verified(self) -> bool:
        return self.component.passed and all(v.passed for s in self.steps for v in s.verdicts)


@dataclass(frozen=True)
class DiscrepancyRecord:
    """Divisor arithmetic on the normalized blow-up along W.

    One exceptional prime per known component of W.  Every E_j has
    coefficient r - 1 in K_Y - f^*K_X, every D_i pulls back with multiplicity
    one along every E_j, and Delta has coefficient one on each D_i.
    """

    r: int
    components: tuple  # labels of the exceptional primes, e.g. ("center", "residual")
    canonical_coefficient: int
    pullback_multiplicity: tuple  # [i][j] multiplicity of E_j in f^*D_i
    boundary_coefficients: tuple
    discrepancies: tuple

    @classmethod
    def derive(cls, r: int, components) -> "DiscrepancyRecord":
        components = tuple(components)
        mult = tuple(tuple(1 for _ in components) for _ in range(r))
        coeffs = tuple(1 for _ in range(r))
        canon = r - 1
        disc = tuple(
            canon - sum(coeffs[i] * mult[i][j] for i in range(r)) for j in range(len(components))
        )
        return cls(r, components, canon, mult, coeffs, disc)


@dataclass(frozen=True)
class MixingMatrix:
    entries: tuple  # r x r tuple of field elements
    seed: int
    determinant: object

    @property
    def r(self) -> int:
        return len(self.entries)


@dataclass(frozen=True)
class SubsetReport:
    subset: tuple
    ideal_basis: tuple
    reduced: PredicateVerdict
    normal: PredicateVerdict
    smooth_away: PredicateVerdict

    @property
    def passed(self) -> bool:
        return self.reduced.passed and self.normal.passed and self.smooth_away.passed


@dataclass(frozen=True)
class LcCertificate:
    ring: RingContext
    ambient: Ideal
    center: Ideal
    sing_ambient: Ideal
    sing_mode: str
    witness: CompleteIntersectionWitness
    center_checks: tuple
    snc: PredicateVerdict
    snc_attempts: int
    discrepancy: DiscrepancyRecord
    hypotheses: HypothesisSet
    cited_steps: tuple
    conclusion: dict | None
    seed: int
    config: BuildConfig
    builder: str
    kind: str = "potential-lc"

    @property
    def boundary(self) -> list[tuple]:
        return [(g, 1) for g in self.witness.gens]


@dataclass(frozen=True)
class SpecialLcCertificate:
    ring: RingContext
    ambient: Ideal
    center: Ideal  # the ideal of W
    generators: tuple  # F_1..F_r as given
    sing_ambient: Ideal
    sing_mode: str
    input_checks: tuple
    matrix: MixingMatrix
    mixed: tuple  # G_1..G_r
    mixed_checks: tuple
    reports: tuple
    attempts: int
    discrepancy: DiscrepancyRecord
    hypotheses: HypothesisSet
    cited_steps: tuple
    conclusion: dict | None
    seed: int
    config: BuildConfig
    builder: str
    kind: str = "special-lc"

    @property
    def boundary(self) -> list[tuple]:
        return [(g, 1) for g in self.mixed]
