"""Numerical ranges of finite matrices and of periodic banded operators.

The numerical range of a matrix is recovered from its support function: in
direction ``phi`` the support value is the top eigenvalue of the rotated
Hermitian part, and the Rayleigh value of a top eigenvector is a boundary
point attaining it.  The closure of the operator range is approximated by
the convex hull of boundary points collected over a ``theta`` grid of
symbols and a ``phi`` grid of directions; the hull is an inner
approximation whose support gap is controlled by the angular resolution.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import linalg
from .linalg import as_matrix, rotated_hermitian_part
from .operators import (
    TAU,
    PeriodicBandedSpec,
    SpecError,
    is_selfadjoint,
    symbol_batch,
    truncation,
)

HULL_COLLINEARITY_RTOL = 1e-12
HAUSDORFF_GRID = 720
# Batched eigensolves are chunked to roughly this many matrix entries.
_CHUNK_ENTRY_BUDGET = 2_000_000

SAMPLE_DTYPE = np.dtype(
    [
        ("theta", float),
        ("phi", float),
        ("support_value", float),
        ("x", float),
        ("y", float),
    ]
)


@dataclass(frozen=True)
class SupportSample:
    """One direction of a support sweep: the support value and a boundary
    point attaining it."""

    phi: float
    support_value: float
    boundary_point: tuple[float, float]


@dataclass(frozen=True)
class ConvexPolygon:
    """Convex region given by counterclockwise vertices.

    One vertex is a point, two a segment; three or more must describe a
    strictly convex counterclockwise cycle (checked at construction).
    """

    vertices: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.vertices, dtype=float)
        if v.ndim != 2 or v.shape[1] != 2 or v.shape[0] < 1:
            raise ValueError(f"vertices must have shape (k, 2), got {v.shape}")
        if not np.all(np.isfinite(v)):
            raise ValueError("polygon vertices must be finite")
        if v.shape[0] >= 3:
            scale = max(1.0, float(np.max(np.abs(v))))
            edges = np.roll(v, -1, axis=0) - v
            nxt = np.roll(edges, -1, axis=0)
            cross = edges[:, 0] * nxt[:, 1] - edges[:, 1] * nxt[:, 0]
            if np.min(cross) < -HULL_COLLINEARITY_RTOL * scale * scale:
                raise ValueError("vertices are not in convex counterclockwise order")
        v = v.copy()
        v.flags.writeable = False
        object.__setattr__(self, "vertices", v)

    def support(self, phis) -> np.ndarray:
        """Support function max_v <v, (cos phi, sin phi)> on a grid."""
        phis = np.atleast_1d(np.asarray(phis, dtype=float))
        directions = np.stack([np.cos(phis), np.sin(phis)], axis=0)
        return np.max(self.vertices @ directions, axis=0)

    def diameter(self, grid: int = HAUSDORFF_GRID) -> float:
        if self.vertices.shape[0] <= 256:
            diffs = self.vertices[:, None, :] - self.vertices[None, :, :]
            return float(np.max(np.hypot(diffs[..., 0], diffs[..., 1])))
        phis = TAU * np.arange(grid) / grid
        return float(np.max(self.support(phis) + self.support(phis + math.pi)))

    def violation(self, point) -> float:
        """Signed distance outside the region (<= 0 means inside)."""
        p = np.asarray(point, dtype=float)
        v = self.vertices
        if v.shape[0] == 1:
            return float(np.hypot(*(p - v[0])))
        if v.shape[0] == 2:
            a, b = v
            t = np.clip(np.dot(p - a, b - a) / max(np.dot(b - a, b - a), 1e-300), 0, 1)
            return float(np.hypot(*(p - (a + t * (b - a)))))
        edges = np.roll(v, -1, axis=0) - v
        lengths = np.hypot(edges[:, 0], edges[:, 1])
        rel = p[None, :] - v
        cross = edges[:, 0] * rel[:, 1] - edges[:, 1] * rel[:, 0]
        return float(np.max(-cross / lengths))


@dataclass
class RangeReport:
    """Result bundle of an operator range sweep."""

    polygon: ConvexPolygon
    samples: np.ndarray
    theta_count: int
    phi_count: int
    residual_summary: dict[str, float] = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "kind": "range-report",
            "theta_count": self.theta_count,
            "phi_count": self.phi_count,
            "residual_summary": {k: float(v) for k, v in self.residual_summary.items()},
            "polygon": [[float(x), float(y)] for x, y in self.polygon.vertices],
            "samples": [
                [float(row["theta"]), float(row["phi"]), float(row["support_value"]),
                 float(row["x"]), float(row["y"])]
                for row in self.samples
            ],
        }

    @classmethod
    def from_dict(cls, doc: dict) -> "RangeReport":
        if doc.get("kind") != "range-report":
            raise ValueError("not a range-report document")
        samples = np.zeros(len(doc["samples"]), dtype=SAMPLE_DTYPE)
        for i, row in enumerate(doc["samples"]):
            samples[i] = tuple(row)
        return cls(
            polygon=ConvexPolygon(np.asarray(doc["polygon"], dtype=float)),
            samples=samples,
            theta_count=int(doc["theta_count"]),
            phi_count=int(doc["phi_count"]),
            residual_summary=dict(doc["residual_summary"]),
        )

    def flat_table(self) -> str:
        lines = ["theta phi support_value x y"]
        for row in self.samples:
            lines.append(
                " ".join(
                    f"{float(row[name]):.17g}"
                    for name in ("theta", "phi", "support_value", "x", "y")
                )
            )
        return "\n".join(lines) + "\n"


def convex_hull(points) -> ConvexPolygon:
    """Counterclockwise convex hull (monotone chain); collinear points are
    dropped at relative tolerance ``1e-12``."""
    pts = np.asarray(points, dtype=float)
    if pts.ndim != 2 or pts.shape[1] != 2 or pts.shape[0] < 1:
        raise ValueError("expected a nonempty array of planar points")
    if not np.all(np.isfinite(pts)):
        raise ValueError("hull input must be finite")
    pts = np.unique(pts, axis=0)  # lexicographic sort, duplicates removed
    if pts.shape[0] == 1:
        return ConvexPolygon(pts)
    scale = max(1.0, float(np.max(np.abs(pts))))
    tol = HULL_COLLINEARITY_RTOL * scale * scale

    def chain(ordered):
        out = []
        for p in ordered:
            while len(out) >= 2:
                o, a = out[-2], out[-1]
                if (a[0] - o[0]) * (p[1] - o[1]) - (a[1] - o[1]) * (p[0] - o[0]) <= tol:
                    out.pop()
                else:
                    break
            out.append(p)
        return out

    lower = chain(pts)
    upper = chain(pts[::-1])
    hull = lower[:-1] + upper[:-1]
    if len(hull) < 2:
        # all points collinear within tolerance: keep the extreme pair
        hull = [pts[0], pts[-1]]
    return ConvexPolygon(np.asarray(hull))


def _batched_support(matrices: np.ndarray, phis: np.ndarray, want_points: bool):
    """Support values (and boundary points) of a stack of matrices over a
    direction grid.  ``matrices`` has shape (B, d, d); results have shape
    (B, P) and (B, P, 2).  Work is chunked over both axes so the rotated
    Hermitian stack stays within a fixed entry budget."""
    mats = np.asarray(matrices, dtype=complex)
    b, d, _ = mats.shape
    p = phis.size
    supports = np.empty((b, p))
    points = np.empty((b, p, 2)) if want_points else None
    phi_chunk = max(1, min(p, _CHUNK_ENTRY_BUDGET // (d * d)))
    mat_chunk = max(1, _CHUNK_ENTRY_BUDGET // (phi_chunk * d * d))
    for i0 in range(0, b, mat_chunk):
        part = mats[i0 : i0 + mat_chunk]
        for j0 in range(0, p, phi_chunk):
            phases = np.exp(-1j * phis[j0 : j0 + phi_chunk])
            rotated = phases[None, :, None, None] * part[:, None, :, :]
            herm = 0.5 * (rotated + np.conj(np.swapaxes(rotated, -1, -2)))
            if want_points:
                values, vectors = np.linalg.eigh(herm)
                top = vectors[..., :, -1]
                rayleigh = np.einsum("cpi,cij,cpj->cp", np.conj(top), part, top)
                points[i0 : i0 + mat_chunk, j0 : j0 + phi_chunk, 0] = rayleigh.real
                points[i0 : i0 + mat_chunk, j0 : j0 + phi_chunk, 1] = rayleigh.imag
            else:
                values = np.linalg.eigvalsh(herm)
            supports[i0 : i0 + mat_chunk, j0 : j0 + phi_chunk] = values[..., -1]
    return supports, points


def support_function(a, phi: float) -> SupportSample:
    """Support value of W(A) in direction ``phi`` plus an attaining
    boundary point (the Rayleigh value of a top eigenvector)."""
    m = as_matrix(a)
    decomp = linalg.eigh(rotated_hermitian_part(m, phi))
    top = decomp.eigenvectors[:, -1]
    z = complex(np.vdot(top, m @ top))
    return SupportSample(
        phi=float(phi),
        support_value=float(decomp.eigenvalues[-1]),
        boundary_point=(z.real, z.imag),
    )


def matrix_numerical_range(a, phi_count: int = 720) -> ConvexPolygon:
    """Inner polygonal approximation of W(A) from a uniform support sweep."""
    if phi_count < 3:
        raise ValueError("phi_count must be >= 3")
    m = as_matrix(a)
    if m.shape[0] != m.shape[1]:
        raise ValueError("numerical range needs a square matrix")
    phis = TAU * np.arange(phi_count) / phi_count
    _, points = _batched_support(m[None, :, :], phis, want_points=True)
    return convex_hull(points.reshape(-1, 2))


def operator_range(
    spec: PeriodicBandedSpec, theta_count: int = 720, phi_count: int = 720
) -> RangeReport:
    """Convex hull of boundary points of the symbol ranges over a uniform
    ``theta`` x ``phi`` grid, bundled with all support samples."""
    if theta_count < 1:
        raise ValueError("theta_count must be >= 1")
    if phi_count < 3:
        raise ValueError("phi_count must be >= 3")
    thetas = TAU * np.arange(theta_count) / theta_count
    phis = TAU * np.arange(phi_count) / phi_count
    symbols = symbol_batch(spec, thetas)
    supports, points = _batched_support(symbols, phis, want_points=True)

    samples = np.zeros(theta_count * phi_count, dtype=SAMPLE_DTYPE)
    samples["theta"] = np.repeat(thetas, phi_count)
    samples["phi"] = np.tile(phis, theta_count)
    samples["support_value"] = supports.ravel()
    samples["x"] = points[..., 0].ravel()
    samples["y"] = points[..., 1].ravel()

    attained = samples["x"] * np.cos(samples["phi"]) + samples["y"] * np.sin(
        samples["phi"]
    )
    attainment_gap = float(np.max(samples["support_value"] - attained))
    polygon = convex_hull(points.reshape(-1, 2))
    return RangeReport(
        polygon=polygon,
        samples=samples,
        theta_count=theta_count,
        phi_count=phi_count,
        residual_summary={"support_attainment_gap": attainment_gap},
    )


def selfadjoint_interval(
    spec: PeriodicBandedSpec, theta_count: int = 720
) -> tuple[float, float]:
    """Endpoints [a, b] of the range closure of a selfadjoint operator:
    extreme eigenvalues of the symbol over a uniform ``theta`` grid."""
    if theta_count < 1:
        raise ValueError("theta_count must be >= 1")
    if not is_selfadjoint(spec):
        raise SpecError("operator is not selfadjoint")
    thetas = TAU * np.arange(theta_count) / theta_count
    symbols = symbol_batch(spec, thetas)
    hermitized = 0.5 * (symbols + np.conj(np.swapaxes(symbols, -1, -2)))
    values = np.linalg.eigvalsh(hermitized)
    return float(np.min(values[:, 0])), float(np.max(values[:, -1]))


def truncation_inclusion_check(
    spec: PeriodicBandedSpec, n_rows: int, report: RangeReport
) -> float:
    """Worst support excess of the ``n_rows`` truncation over the report's
    polygon across the report's direction grid.

    Inclusion of truncation ranges in the symbol hull makes this at most
    the angular resolution gap of the sweep (plus rounding).
    """
    t_n = truncation(spec, n_rows)
    phis = TAU * np.arange(report.phi_count) / report.phi_count
    supports, _ = _batched_support(t_n[None, :, :], phis, want_points=False)
    return float(np.max(supports[0] - report.polygon.support(phis)))


def angular_resolution_gap(polygon: ConvexPolygon, phi_count: int) -> float:
    """Support-sweep inner-approximation bound: diameter * (1 - cos(pi/P))."""
    return polygon.diameter() * (1.0 - math.cos(math.pi / phi_count))


def hausdorff_distance(p: ConvexPolygon, q: ConvexPolygon) -> float:
    """Hausdorff distance between convex regions via the max support gap
    over a uniform grid of directions."""
    phis = TAU * np.arange(HAUSDORFF_GRID) / HAUSDORFF_GRID
    return float(np.max(np.abs(p.support(phis) - q.support(phis))))
