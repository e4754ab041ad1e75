"""Real ternary forms, Kippenhahn polynomials and the envelope pipeline.

The counterexample operator's range closure is bounded by a quartic curve
obtained as the envelope of a one-parameter family of ellipses.  This
module carries that curve, its dual under the tangent-line pairing, and a
sampled hyperbolicity test: a form that divides some Kippenhahn polynomial
``det(t I + x Re(B) + y Im(B))`` must have all-real roots along every
direction, and the dual quartic fails this, so no finite matrix has the
operator's numerical range.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .linalg import adjoint, as_matrix

TAU = 2.0 * math.pi
KIPPENHAHN_SIZE_CAP = 12
REAL_ROOT_RTOL = 1e-7
_GOLDEN_ANGLE = math.pi * (3.0 - math.sqrt(5.0))


class InterpolationError(RuntimeError):
    """Kippenhahn coefficient fit missed its residual contract."""


class PipelineStageError(RuntimeError):
    """Failure inside the nonrepresentability pipeline, labelled by stage."""

    def __init__(self, stage: str, message: str):
        super().__init__(f"stage '{stage}': {message}")
        self.stage = stage


@dataclass(frozen=True)
class TernaryForm:
    """Homogeneous real polynomial in (t, x, y).

    ``coefficients`` maps exponent triples ``(i, j, k)`` with
    ``i + j + k == degree`` to real coefficients; at least one must be
    nonzero.
    """

    degree: int
    coefficients: dict[tuple[int, int, int], float]

    def __post_init__(self):
        if self.degree < 1:
            raise ValueError("form degree must be >= 1")
        cleaned = {}
        for exponents, coeff in self.coefficients.items():
            i, j, k = (int(e) for e in exponents)
            if i < 0 or j < 0 or k < 0 or i + j + k != self.degree:
                raise ValueError(
                    f"exponents {exponents} do not sum to degree {self.degree}"
                )
            value = float(coeff)
            if not math.isfinite(value):
                raise ValueError("form coefficients must be finite")
            if value != 0.0:
                cleaned[(i, j, k)] = value
        if not cleaned:
            raise ValueError("form must have at least one nonzero coefficient")
        object.__setattr__(self, "coefficients", cleaned)

    def to_records(self) -> list[list[float]]:
        return [
            [i, j, k, self.coefficients[(i, j, k)]]
            for (i, j, k) in sorted(self.coefficients)
        ]

    @classmethod
    def from_records(cls, degree: int, records) -> "TernaryForm":
        return cls(
            degree=degree,
            coefficients={(int(i), int(j), int(k)): float(c) for i, j, k, c in records},
        )


def evaluate_form(form: TernaryForm, t, x, y):
    """Evaluate a form; broadcasts over array arguments."""
    t = np.asarray(t, dtype=float)
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    total = np.zeros(np.broadcast(t, x, y).shape)
    for (i, j, k), coeff in form.coefficients.items():
        total = total + coeff * t**i * x**j * y**k
    if total.ndim == 0:
        return float(total)
    return total


def form_gradient(form: TernaryForm, t: float, x: float, y: float) -> np.ndarray:
    """Gradient (d/dt, d/dx, d/dy) at a point."""
    grad = np.zeros(3)
    for (i, j, k), c in form.coefficients.items():
        if i > 0:
            grad[0] += c * i * t ** (i - 1) * x**j * y**k
        if j > 0:
            grad[1] += c * j * t**i * x ** (j - 1) * y**k
        if k > 0:
            grad[2] += c * k * t**i * x**j * y ** (k - 1)
    return grad


def restrict_to_direction(form: TernaryForm, x0: float, y0: float) -> np.ndarray:
    """Coefficients (descending powers of t) of ``F(t, x0, y0)``."""
    coeffs = np.zeros(form.degree + 1)
    for (i, j, k), c in form.coefficients.items():
        coeffs[form.degree - i] += c * x0**j * y0**k
    return coeffs


def boundary_quartic() -> TernaryForm:
    """Quartic whose zero set (minus one isolated interior point) is the
    boundary of the counterexample operator's range closure."""
    return TernaryForm(
        degree=4,
        coefficients={
            (0, 4, 0): 16.0,
            (0, 2, 2): 32.0,
            (0, 0, 4): 16.0,
            (2, 2, 0): -72.0,
            (2, 0, 2): -72.0,
            (3, 1, 0): 64.0,
            (4, 0, 0): -15.0,
        },
    )


def dual_quartic() -> TernaryForm:
    """Dual of ``boundary_quartic`` under the pairing tU + xX + yY = 0."""
    return TernaryForm(
        degree=4,
        coefficients={
            (4, 0, 0): 16.0,
            (3, 1, 0): 32.0,
            (2, 2, 0): -72.0,
            (2, 0, 2): -72.0,
            (1, 3, 0): -216.0,
            (1, 1, 2): -216.0,
            (0, 4, 0): -135.0,
            (0, 2, 2): -162.0,
            (0, 0, 4): -27.0,
        },
    )


@dataclass(frozen=True)
class ConicFamilyCoefficients:
    """Quadratic coefficient polynomials of an ellipse family written as
    ``H(X, Y; theta) = alpha cos(theta) + beta sin(theta) + gamma``.

    Each of alpha/beta/gamma maps ``(i, j)`` to the coefficient of
    ``X^i Y^j`` and has total degree at most two.
    """

    alpha: dict[tuple[int, int], float]
    beta: dict[tuple[int, int], float]
    gamma: dict[tuple[int, int], float]

    def __post_init__(self):
        for name in ("alpha", "beta", "gamma"):
            poly = getattr(self, name)
            for (i, j) in poly:
                if i < 0 or j < 0 or i + j > 2:
                    raise ValueError(f"{name} must be a bivariate quadratic")


def evaluate_bivariate(poly: dict[tuple[int, int], float], x, y):
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    total = np.zeros(np.broadcast(x, y).shape)
    for (i, j), c in poly.items():
        total = total + c * x**i * y**j
    if total.ndim == 0:
        return float(total)
    return total


def ellipse_family() -> ConicFamilyCoefficients:
    """Coefficient polynomials of the counterexample's family of symbol
    range boundary ellipses."""
    return ConicFamilyCoefficients(
        alpha={(2, 0): 16.0, (0, 2): -16.0, (1, 0): -40.0, (0, 0): 16.0},
        beta={(1, 1): 32.0, (0, 1): -40.0},
        gamma={(2, 0): 20.0, (0, 2): 20.0, (1, 0): -32.0, (0, 0): 11.0},
    )


def envelope_residual(family: ConicFamilyCoefficients, x, y):
    """``alpha^2 + beta^2 - gamma^2``; zero exactly on the envelope of the
    family (and proportional to the boundary quartic at t = 1)."""
    a = evaluate_bivariate(family.alpha, x, y)
    b = evaluate_bivariate(family.beta, x, y)
    g = evaluate_bivariate(family.gamma, x, y)
    return a * a + b * b - g * g


def _poly2_mul(p: dict, q: dict) -> dict:
    out: dict[tuple[int, int], float] = {}
    for (i1, j1), c1 in p.items():
        for (i2, j2), c2 in q.items():
            key = (i1 + i2, j1 + j2)
            out[key] = out.get(key, 0) + c1 * c2
    return {k: v for k, v in out.items() if v != 0}


def family_discriminant(family: ConicFamilyCoefficients) -> dict[tuple[int, int], float]:
    """Expanded coefficients of ``alpha^2 + beta^2 - gamma^2``.

    Exact when the family coefficients are integers (Python number
    arithmetic, no floating point rounding for int inputs).
    """

    def as_numbers(poly):
        return {
            k: int(v) if float(v).is_integer() else float(v) for k, v in poly.items()
        }

    a = as_numbers(family.alpha)
    b = as_numbers(family.beta)
    g = as_numbers(family.gamma)
    out: dict[tuple[int, int], float] = {}
    for term, sign in ((_poly2_mul(a, a), 1), (_poly2_mul(b, b), 1), (_poly2_mul(g, g), -1)):
        for key, value in term.items():
            out[key] = out.get(key, 0) + sign * value
    return {k: v for k, v in out.items() if v != 0}


def ellipse_point(theta: float, t: float) -> tuple[float, float]:
    """Parametrization of the symbol range boundary ellipse at angle
    ``theta``: center on the unit circle, axes set by the half-angle."""
    half = 0.5 * theta
    x = math.cos(theta) + 0.5 * math.cos(half) * math.cos(t) - 1.5 * math.sin(half) * math.sin(t)
    y = math.sin(theta) + 0.5 * math.sin(half) * math.cos(t) + 1.5 * math.cos(half) * math.sin(t)
    return x, y


def ellipse_family_residual(theta: float, t: float) -> float:
    """``H(X(t), Y(t); theta)`` for the built-in family; vanishes for every
    (theta, t) because the parametrized ellipse is exactly the conic."""
    family = ellipse_family()
    x, y = ellipse_point(theta, t)
    a = evaluate_bivariate(family.alpha, x, y)
    b = evaluate_bivariate(family.beta, x, y)
    g = evaluate_bivariate(family.gamma, x, y)
    return a * math.cos(theta) + b * math.sin(theta) + g


def _fibonacci_disk(count: int) -> np.ndarray:
    i = np.arange(count)
    radius = np.sqrt((i + 0.5) / count)
    angle = i * _GOLDEN_ANGLE
    return np.stack([radius * np.cos(angle), radius * np.sin(angle)], axis=1)


def kippenhahn_form(b, fit_rtol: float = 1e-8) -> TernaryForm:
    """Kippenhahn polynomial ``det(t I + x Re(B) + y Im(B))`` of a square
    matrix, recovered by determinant sampling on the t = 1 chart.

    Determinants are evaluated on a deterministic Fibonacci disk lattice
    scaled to the pencil's norm, the monomial coefficients are fit by least
    squares, and the fit residual is required to stay below
    ``fit_rtol * (1 + max |det|)``.
    """
    m = as_matrix(b)
    if m.shape[0] != m.shape[1]:
        raise ValueError("Kippenhahn polynomial needs a square matrix")
    size = m.shape[0]
    if size > KIPPENHAHN_SIZE_CAP:
        raise ValueError(f"matrix size {size} exceeds the fit budget {KIPPENHAHN_SIZE_CAP}")
    herm = 0.5 * (m + adjoint(m))
    skew = (m - adjoint(m)) / 2j
    monomials = [(a, c) for a in range(size + 1) for c in range(size + 1 - a)]
    lattice = _fibonacci_disk(2 * len(monomials))
    scale = 1.0 / (1.0 + max(np.linalg.norm(herm, 2), np.linalg.norm(skew, 2)))
    xs = scale * lattice[:, 0]
    ys = scale * lattice[:, 1]
    pencil = (
        np.eye(size)[None, :, :]
        + xs[:, None, None] * herm[None, :, :]
        + ys[:, None, None] * skew[None, :, :]
    )
    dets = np.linalg.det(pencil).real
    vandermonde = np.stack(
        [lattice[:, 0] ** a * lattice[:, 1] ** c for a, c in monomials], axis=1
    )
    coeffs, _, _, singular = np.linalg.lstsq(vandermonde, dets, rcond=None)
    condition = float(singular[0] / singular[-1]) if singular[-1] > 0 else math.inf
    residual = float(np.max(np.abs(vandermonde @ coeffs - dets)))
    if residual > fit_rtol * (1.0 + float(np.max(np.abs(dets)))):
        raise InterpolationError(
            f"fit residual {residual:.3e} with condition estimate {condition:.3e}"
        )
    top = float(np.max(np.abs(coeffs)))
    coefficients = {}
    for (a, c), value in zip(monomials, coeffs):
        unscaled = value / scale ** (a + c)
        if abs(value) > 1e-10 * top:
            coefficients[(size - a - c, a, c)] = unscaled
    return TernaryForm(degree=size, coefficients=coefficients)


def univariate_real_root_count(
    coeffs, tol: float = REAL_ROOT_RTOL
) -> tuple[int, np.ndarray]:
    """All roots of a real polynomial (descending coefficients) via the
    eigenvalues of its companion matrix, plus the count of real ones.

    A root counts as real when ``|Im| <= tol * (1 + |root|)``.
    """
    c = np.atleast_1d(np.asarray(coeffs, dtype=float))
    nonzero = np.nonzero(c)[0]
    if nonzero.size == 0:
        raise ValueError("zero polynomial has no defined root count")
    c = c[nonzero[0] :]
    degree = c.size - 1
    if degree == 0:
        return 0, np.zeros(0, dtype=complex)
    monic = c / c[0]
    companion = np.zeros((degree, degree))
    companion[0, :] = -monic[1:]
    if degree > 1:
        companion[np.arange(1, degree), np.arange(0, degree - 1)] = 1.0
    roots = np.linalg.eigvals(companion)
    roots = roots[np.lexsort((roots.imag, roots.real))]
    real_count = int(np.sum(np.abs(roots.imag) <= tol * (1.0 + np.abs(roots))))
    return real_count, roots


@dataclass(frozen=True)
class HyperbolicityVerdict:
    """Outcome of direction-sampled hyperbolicity testing.

    A failed direction comes with the offending restriction roots; a
    passing verdict is evidence over the sampled directions only, so the
    sampling parameters ride along.
    """

    hyperbolic: bool
    max_imag: float
    direction_count: int
    tol: float
    witness_theta: float | None = None
    witness_direction: tuple[float, float] | None = None
    witness_roots: np.ndarray | None = None

    def to_dict(self) -> dict:
        return {
            "hyperbolic": self.hyperbolic,
            "max_imag": self.max_imag,
            "direction_count": self.direction_count,
            "tol": self.tol,
            "witness_theta": self.witness_theta,
            "witness_direction": (
                list(self.witness_direction) if self.witness_direction else None
            ),
            "witness_roots": (
                [[z.real, z.imag] for z in self.witness_roots]
                if self.witness_roots is not None
                else None
            ),
        }

    @classmethod
    def from_dict(cls, doc: dict) -> "HyperbolicityVerdict":
        roots = doc.get("witness_roots")
        return cls(
            hyperbolic=bool(doc["hyperbolic"]),
            max_imag=float(doc["max_imag"]),
            direction_count=int(doc["direction_count"]),
            tol=float(doc["tol"]),
            witness_theta=doc.get("witness_theta"),
            witness_direction=(
                tuple(doc["witness_direction"]) if doc.get("witness_direction") else None
            ),
            witness_roots=(
                np.array([complex(re, im) for re, im in roots]) if roots else None
            ),
        )


def hyperbolicity_test(
    form: TernaryForm, direction_count: int = 720, tol: float = REAL_ROOT_RTOL
) -> HyperbolicityVerdict:
    """Check whether every directional restriction ``F(t, -cos a, -sin a)``
    has only real roots.

    Failure is certified by the worst witness direction; success is a
    sampled property, not a certificate.  The direction grid always
    includes ``a = pi/2``.
    """
    lead = form.coefficients.get((form.degree, 0, 0), 0.0)
    if lead == 0.0:
        raise ValueError("degenerate leading coefficient: form vanishes at (1, 0, 0)")
    if direction_count < 1:
        raise ValueError("direction_count must be >= 1")
    angles = [TAU * j / direction_count for j in range(direction_count)]
    if not any(math.isclose(a, math.pi / 2.0, abs_tol=1e-15) for a in angles):
        angles.append(math.pi / 2.0)
    max_imag_seen = 0.0
    worst_failure = -1.0
    witness = None
    for angle in angles:
        x0, y0 = -math.cos(angle), -math.sin(angle)
        count, roots = univariate_real_root_count(
            restrict_to_direction(form, x0, y0), tol
        )
        top_imag = float(np.max(np.abs(roots.imag))) if roots.size else 0.0
        max_imag_seen = max(max_imag_seen, top_imag)
        # first direction wins near-ties so the witness is grid-stable
        if count < form.degree and top_imag > worst_failure * (1.0 + 1e-9):
            worst_failure = top_imag
            witness = (angle, (x0, y0), roots)
    if witness is None:
        return HyperbolicityVerdict(
            hyperbolic=True,
            max_imag=max_imag_seen,
            direction_count=direction_count,
            tol=tol,
        )
    angle, direction, roots = witness
    return HyperbolicityVerdict(
        hyperbolic=False,
        max_imag=worst_failure,
        direction_count=direction_count,
        tol=tol,
        witness_theta=angle,
        witness_direction=direction,
        witness_roots=roots,
    )


def quartic_boundary_points(count: int = 32) -> np.ndarray:
    """Points on the boundary quartic found by bisecting rays cast from an
    interior point; (1.5, 0) is always the first entry."""
    quartic = boundary_quartic()
    center = np.array([-0.5, 0.0])
    points = [np.array([1.5, 0.0])]
    for idx in range(count - 1):
        angle = TAU * (idx + 0.37) / count  # avoid the exact real axis
        direction = np.array([math.cos(angle), math.sin(angle)])

        def radial(r):
            p = center + r * direction
            return evaluate_form(quartic, 1.0, p[0], p[1])

        lo, hi = 0.0, 4.0
        if radial(lo) >= 0 or radial(hi) <= 0:
            raise PipelineStageError("duality", "ray bracketing failed")
        for _ in range(80):
            mid = 0.5 * (lo + hi)
            if radial(mid) <= 0:
                lo = mid
            else:
                hi = mid
        points.append(center + 0.5 * (lo + hi) * direction)
    return np.asarray(points)


@dataclass(frozen=True)
class NonrepresentabilityReport:
    """End-to-end verdict that no finite matrix attains the counterexample
    operator's range closure."""

    quartic: TernaryForm
    dual: TernaryForm
    duality_samples: int
    duality_max_residual: float
    verdict: HyperbolicityVerdict
    witness_restriction: list[float]
    witness_real_count: int
    conclusion: str

    def to_dict(self) -> dict:
        return {
            "kind": "nonrepresentability-report",
            "quartic": {"degree": self.quartic.degree, "records": self.quartic.to_records()},
            "dual": {"degree": self.dual.degree, "records": self.dual.to_records()},
            "duality_samples": self.duality_samples,
            "duality_max_residual": self.duality_max_residual,
            "verdict": self.verdict.to_dict(),
            "witness_restriction": list(self.witness_restriction),
            "witness_real_count": self.witness_real_count,
            "conclusion": self.conclusion,
        }

    @classmethod
    def from_dict(cls, doc: dict) -> "NonrepresentabilityReport":
        if doc.get("kind") != "nonrepresentability-report":
            raise ValueError("not a nonrepresentability-report document")
        return cls(
            quartic=TernaryForm.from_records(
                doc["quartic"]["degree"], doc["quartic"]["records"]
            ),
            dual=TernaryForm.from_records(doc["dual"]["degree"], doc["dual"]["records"]),
            duality_samples=int(doc["duality_samples"]),
            duality_max_residual=float(doc["duality_max_residual"]),
            verdict=HyperbolicityVerdict.from_dict(doc["verdict"]),
            witness_restriction=[float(c) for c in doc["witness_restriction"]],
            witness_real_count=int(doc["witness_real_count"]),
            conclusion=str(doc["conclusion"]),
        )


def nonrepresentability_report(
    direction_count: int = 720, duality_samples: int = 32
) -> NonrepresentabilityReport:
    """Run the envelope chain: build the boundary quartic and its dual,
    confirm the duality pairing on sampled boundary tangents, then test the
    dual for hyperbolicity.  A failed test means no matrix of any size has
    the operator's range closure as its numerical range."""
    try:
        quartic = boundary_quartic()
    except Exception as exc:  # pragma: no cover - constructor is static data
        raise PipelineStageError("quartic", str(exc)) from exc
    try:
        dual = dual_quartic()
    except Exception as exc:  # pragma: no cover - constructor is static data
        raise PipelineStageError("dual", str(exc)) from exc

    try:
        points = quartic_boundary_points(duality_samples)
        worst = 0.0
        for x, y in points:
            tangent = form_gradient(quartic, 1.0, x, y)
            tangent = tangent / np.linalg.norm(tangent)
            worst = max(worst, abs(evaluate_form(dual, *tangent)))
        if worst > 1e-6:
            raise PipelineStageError(
                "duality", f"tangent-line residual {worst:.3e} exceeds 1e-6"
            )
    except PipelineStageError:
        raise
    except Exception as exc:
        raise PipelineStageError("duality", str(exc)) from exc

    try:
        verdict = hyperbolicity_test(dual, direction_count)
    except Exception as exc:
        raise PipelineStageError("hyperbolicity", str(exc)) from exc

    if verdict.hyperbolic:
        conclusion = (
            "dual quartic passed sampled hyperbolicity; no obstruction found"
        )
        restriction = restrict_to_direction(dual, -1.0, 0.0)
    else:
        conclusion = (
            "dual quartic is not hyperbolic, so it divides no Kippenhahn "
            "polynomial: no finite matrix numerical range equals the "
            "operator range closure"
        )
        restriction = restrict_to_direction(dual, *verdict.witness_direction)
    real_count, _ = univariate_real_root_count(restriction)
    return NonrepresentabilityReport(
        quartic=quartic,
        dual=dual,
        duality_samples=duality_samples,
        duality_max_residual=worst,
        verdict=verdict,
        witness_restriction=[float(c) for c in restriction],
        witness_real_count=real_count,
        conclusion=conclusion,
    )
