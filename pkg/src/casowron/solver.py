"""Solve (E - lambda)^m y = 0 by recovering 1-periodic coefficient profiles.

Every solution has the shape y(x) = (mu_1(x) + mu_2(x) x + ... +
mu_m(x) x^(m-1)) |lambda|^x where each mu_i repeats with period one for
lambda > 0 and negates across a unit step for lambda < 0.  On a grid of
mesh 1/q the profiles are pinned down residue class by residue class: the
samples y(x), y(x+1), ..., y(x+m-1) feed a moment system whose matrix has
the closed-form determinant |lambda|^(mx) lambda^(m(m-1)/2) prod_{k<m} k!.

Folding the sign of lambda into the row scales (rather than keeping plain
|lambda| powers) is what makes the solved coefficients equal mu_i(x) with
the right parity and makes the determinant match that closed form for
negative lambda as well.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from math import comb

from .casowronsk import casoratian_matrix, row_norm_product
from .determinants import ScalarMatrix, det_float, solve_float
from .errors import ArgumentError, InconsistentInputError, NumericError
from .functions import FunctionFamily
from .scalars import EXACT, FLOAT, superfactorial

#: Maximum relative disagreement tolerated between windows when verifying
#: that input samples really do solve the equation.
PARITY_TOL = 1e-6
#: Relative tolerance for the determinant self-check against the closed form.
DET_CHECK_TOL = 1e-6


@dataclass(frozen=True)
class PeriodicProfile:
    """Samples of one coefficient function over a single period."""

    samples: tuple
    parity: str  # "periodic" | "antiperiodic"

    def __post_init__(self):
        if self.parity not in ("periodic", "antiperiodic"):
            raise ArgumentError("parity must be 'periodic' or 'antiperiodic'")
        samples = tuple(float(v) for v in self.samples)
        if not samples:
            raise ArgumentError("a profile needs at least one sample")
        object.__setattr__(self, "samples", samples)

    @property
    def q(self) -> int:
        return len(self.samples)

    def continuation_sign(self) -> float:
        return 1.0 if self.parity == "periodic" else -1.0

    def value(self, k: int, t: int) -> float:
        """Profile value at residue t, k whole steps past the base period."""
        return self.samples[t] * self.continuation_sign() ** k


@dataclass(frozen=True)
class SolverProblem:
    """Equation parameters plus the sampling grid they act on."""

    lam: float
    m: int
    x0: float = 0.0
    q: int = 1
    horizon: int | None = None

    def __post_init__(self):
        lam = float(self.lam)
        if lam == 0 or not math.isfinite(lam):
            raise ArgumentError("lambda must be nonzero and finite")
        if self.m < 1:
            raise ArgumentError("order m must be at least 1")
        if self.q < 1:
            raise ArgumentError("mesh count q must be at least 1")
        horizon = self.m if self.horizon is None else self.horizon
        if horizon < self.m:
            raise ArgumentError("horizon must cover at least m unit steps")
        object.__setattr__(self, "lam", lam)
        object.__setattr__(self, "x0", float(self.x0))
        object.__setattr__(self, "horizon", horizon)

    @property
    def parity(self) -> str:
        return "periodic" if self.lam > 0 else "antiperiodic"

    def grid(self) -> list:
        """All sample abscissas x0 + n/q for n = 0 .. horizon*q - 1."""
        return [self.x0 + n / self.q for n in range(self.horizon * self.q)]


def build_M(lam: float, m: int, x: float) -> ScalarMatrix:
    """Moment matrix with entry (i, j) = |lam|^x lam^(i-1) (x+i-1)^(j-1)."""
    lam = float(lam)
    if lam == 0:
        raise ArgumentError("lambda must be nonzero")
    if m < 1:
        raise ArgumentError("order m must be at least 1")
    a = abs(lam) ** x
    rows = [
        [a * lam**i * (x + i) ** j for j in range(m)]
        for i in range(m)
    ]
    return ScalarMatrix.from_rows(rows, FLOAT)


def predicted_det(lam: float, m: int, x: float) -> float:
    """Closed form |lam|^(mx) lam^(m(m-1)/2) prod_{k=0}^{m-1} k!."""
    lam = float(lam)
    return abs(lam) ** (m * x) * lam ** (m * (m - 1) // 2) * superfactorial(m - 1)


def _check_det(lam: float, m: int, x: float) -> None:
    got = det_float(build_M(lam, m, x))
    want = predicted_det(lam, m, x)
    if abs(got - want) > DET_CHECK_TOL * abs(want):
        raise NumericError(
            f"moment determinant {got!r} strayed from the closed form "
            f"{want!r}; the window at x = {x} is numerically unusable"
        )


def _solve_window(lam: float, m: int, x: float, window_samples) -> list:
    """Coefficients mu_i(x) from the m samples y(x), y(x+1), ..., y(x+m-1).

    Rows are rescaled by |lam|^(-x) lam^(-r) before solving, leaving a pure
    moment system in the nodes x, x+1, ..., x+m-1.
    """
    abs_l = abs(lam)
    rows = [[(x + r) ** j for j in range(m)] for r in range(m)]
    rhs = [window_samples[r] / (abs_l**x * lam**r) for r in range(m)]
    sol = solve_float(rows, rhs)
    return [v.real for v in sol]


def recover_profiles(problem: SolverProblem, samples,
                     parity_tol: float = PARITY_TOL) -> list:
    """Recover the m coefficient profiles from solution samples.

    ``samples`` holds y on the grid x0 + n/q, n = 0..K*q-1, with K >= m.
    Windows shifted by whole steps re-derive the same coefficients up to
    the parity sign; any disagreement beyond ``parity_tol`` (relative)
    means the samples do not solve the equation and is an error.
    """
    vals = [float(v) for v in samples]
    q, m = problem.q, problem.m
    if len(vals) % q != 0:
        raise ArgumentError("sample count must be a multiple of q")
    steps = len(vals) // q
    if steps < m:
        raise ArgumentError(f"need at least m = {m} unit steps of samples")
    lam = problem.lam
    sign = 1.0 if lam > 0 else -1.0
    _check_det(lam, m, problem.x0)
    per_residue = []
    for t in range(q):
        x = problem.x0 + t / q
        base = _solve_window(lam, m, x, [vals[r * q + t] for r in range(m)])
        scale = max(1.0, max(abs(v) for v in base))
        for k in range(1, min(m, steps - m) + 1):
            shifted = _solve_window(
                lam, m, x + k, [vals[(k + r) * q + t] for r in range(m)]
            )
            expect = [v * sign**k for v in base]
            worst = max(abs(a - b) for a, b in zip(shifted, expect))
            if worst > parity_tol * scale:
                raise InconsistentInputError(
                    f"window at offset {k} disagrees with the base window by "
                    f"{worst:.3e} (residue {t}); samples do not solve the "
                    "equation"
                )
        per_residue.append(base)
    return [
        PeriodicProfile(tuple(per_residue[t][i] for t in range(q)),
                        problem.parity)
        for i in range(m)
    ]


@dataclass(frozen=True)
class SolverSolution:
    """A synthesized solution with its residual under the difference operator."""

    problem: SolverProblem
    profiles: tuple
    grid: tuple
    values: tuple
    max_residual: float


def synthesize(problem: SolverProblem, profiles) -> SolverSolution:
    """Build y from profiles and measure the worst (E - lambda)^m residual."""
    profiles = tuple(profiles)
    if len(profiles) != problem.m:
        raise ArgumentError(f"need exactly m = {problem.m} profiles")
    for p in profiles:
        if p.q != problem.q:
            raise ArgumentError("profile period does not match the problem mesh")
        if p.parity != problem.parity:
            raise ArgumentError(
                f"profile parity {p.parity!r} contradicts lambda = {problem.lam}"
            )
    lam, q = problem.lam, problem.q
    abs_l = abs(lam)
    xs = problem.grid()
    ys = []
    for n, x in enumerate(xs):
        t, k = n % q, n // q
        poly = sum(p.value(k, t) * x**i for i, p in enumerate(profiles))
        ys.append(abs_l**x * poly)
    worst = 0.0
    m = problem.m
    for n in range(len(ys) - m * q):
        acc = 0.0
        for r in range(m + 1):
            acc += comb(m, r) * (-lam) ** (m - r) * ys[n + r * q]
        worst = max(worst, abs(acc))
    return SolverSolution(problem, profiles, tuple(xs), tuple(ys), worst)


@dataclass(frozen=True)
class FundamentalCheck:
    """Whether a family's Casoratian stays clear of zero on a grid."""

    ok: bool
    min_abs: float
    witness_x: object

    def __bool__(self) -> bool:
        return self.ok


def is_fundamental_set(family: FunctionFamily, grid,
                       floor_scale: float = 1e-12) -> FundamentalCheck:
    """Test that the Casoratian is nonzero at every grid point.

    The witness is the point with the smallest Casoratian magnitude.  For
    float families "nonzero" means above ``floor_scale`` times the
    row-norm product of the matrix at that point.
    """
    grid = list(grid)
    if not grid:
        raise ArgumentError("need a non-empty grid")
    ok = True
    min_abs = math.inf
    witness = grid[0]
    for x in grid:
        matrix = casoratian_matrix(family, x)
        c = matrix.det()
        if family.field == EXACT:
            good = c != 0
            mag = float(abs(c))
        else:
            floor = floor_scale * row_norm_product(matrix)
            mag = abs(c)
            good = mag > floor
        if mag < min_abs:
            min_abs = mag
            witness = x
        ok = ok and good
    return FundamentalCheck(ok, min_abs, witness)
