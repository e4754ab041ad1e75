"""Periodic banded Toeplitz operators through their defining sequences.

An operator is described by a period ``n+1 >= 1``, a band half-width
``m >= 0`` and one ``(n+1)``-periodic sequence per diagonal offset
``r = -m..m``.  The bi-infinite operator itself is never materialized; this
module builds its finite surrogates instead:

* ``truncation``: the leading ``N x N`` compression, with entry
  ``(j, k) = a_{j mod (n+1)}^{(k-j)}`` inside the band.  Positive offsets
  sit above the main diagonal and the sequence is indexed by the row, so a
  spec whose only nonzero offsets are positive yields an upper triangular
  matrix.  Conformance tests pin this convention.
* ``symbol``: the ``(n+1) x (n+1)`` matrix trigonometric polynomial whose
  numerical ranges sweep out the operator's range closure.
* ``c_mu``: the wrapped ``mu x mu`` matrix (``mu = s(n+1)``) that the
  Fourier unitary block-diagonalizes into symbols at s-th roots of unity.

All constructions are pure; returned arrays are fresh and callers may treat
them as immutable.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

import numpy as np

from .linalg import MATRIX_SIZE_CAP, max_norm

TAU = 2.0 * math.pi


class SpecError(ValueError):
    """Malformed or inconsistent operator description."""


def _as_complex_entry(value, where: str) -> complex:
    if isinstance(value, (list, tuple)):
        if len(value) != 2:
            raise SpecError(f"{where}: complex entries must be [re, im] pairs")
        try:
            z = complex(float(value[0]), float(value[1]))
        except (TypeError, ValueError) as exc:
            raise SpecError(f"{where}: complex entries must be [re, im] numbers") from exc
    elif isinstance(value, str):
        raise SpecError(f"{where}: entries must be numbers, not strings")
    else:
        try:
            z = complex(value)
        except (TypeError, ValueError) as exc:
            raise SpecError(
                f"{where}: expected a number or an [re, im] pair, got {value!r}"
            ) from exc
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise SpecError(f"{where}: entries must be finite")
    return z


@dataclass(frozen=True)
class PeriodicBandedSpec:
    """Defining data of an ``(n+1)``-periodic, ``(2m+1)``-banded operator.

    ``diagonals`` maps each offset ``r`` in ``-band..band`` to the length
    ``period`` array of values the r-th diagonal cycles through.  Missing
    offsets are filled with zeros at construction; offsets outside the band
    or arrays of the wrong length are rejected.
    """

    period: int
    band: int
    diagonals: dict[int, np.ndarray] = field(default_factory=dict)

    def __post_init__(self):
        if not isinstance(self.period, (int, np.integer)) or self.period < 1:
            raise SpecError(f"period must be a positive integer, got {self.period!r}")
        if not isinstance(self.band, (int, np.integer)) or self.band < 0:
            raise SpecError(f"band must be a nonnegative integer, got {self.band!r}")
        object.__setattr__(self, "period", int(self.period))
        object.__setattr__(self, "band", int(self.band))
        normalized: dict[int, np.ndarray] = {}
        for key, seq in dict(self.diagonals).items():
            offset = int(key)
            if abs(offset) > self.band:
                raise SpecError(
                    f"offset {offset} lies outside the band -{self.band}..{self.band}"
                )
            if isinstance(seq, np.ndarray):
                entries = seq.tolist()
            elif isinstance(seq, (list, tuple)):
                entries = list(seq)
            else:
                entries = [seq]
            arr = np.asarray(
                [_as_complex_entry(v, f"diagonal {offset}") for v in entries],
                dtype=complex,
            )
            if arr.shape != (self.period,):
                raise SpecError(
                    f"diagonal {offset} has {arr.size} entries, expected {self.period}"
                )
            normalized[offset] = arr
        for offset in range(-self.band, self.band + 1):
            if offset not in normalized:
                normalized[offset] = np.zeros(self.period, dtype=complex)
            normalized[offset].flags.writeable = False
        object.__setattr__(self, "diagonals", normalized)

    def diagonal(self, offset: int) -> np.ndarray:
        """Sequence on offset ``r``; zeros outside the band."""
        if abs(offset) > self.band:
            return np.zeros(self.period, dtype=complex)
        return self.diagonals[offset]

    def max_entry(self) -> float:
        return max(
            (max_norm(seq) for seq in self.diagonals.values()), default=0.0
        )


def validate_spec(raw) -> PeriodicBandedSpec:
    """Normalize a raw description (mapping or spec) into a validated spec."""
    if isinstance(raw, PeriodicBandedSpec):
        return PeriodicBandedSpec(raw.period, raw.band, dict(raw.diagonals))
    if not isinstance(raw, dict):
        raise SpecError(f"expected a mapping with period/band/diagonals, got {type(raw)}")
    try:
        period = int(raw["period"])
        band = int(raw["band"])
    except KeyError as exc:
        raise SpecError(f"missing required field {exc}") from exc
    except (TypeError, ValueError) as exc:
        raise SpecError(f"period/band must be integers: {exc}") from exc
    diagonals_raw = raw.get("diagonals", {})
    if not isinstance(diagonals_raw, dict):
        raise SpecError("diagonals must be a mapping from offset to entry array")
    diagonals = {}
    for key, seq in diagonals_raw.items():
        try:
            offset = int(key)
        except (TypeError, ValueError) as exc:
            raise SpecError(f"diagonal offset {key!r} is not an integer") from exc
        diagonals[offset] = seq
    return PeriodicBandedSpec(period, band, diagonals)


def spec_to_doc(spec: PeriodicBandedSpec) -> dict:
    """JSON-ready document with every offset present (normalized form)."""
    return {
        "period": spec.period,
        "band": spec.band,
        "diagonals": {
            str(r): [[z.real, z.imag] for z in spec.diagonals[r]]
            for r in range(-spec.band, spec.band + 1)
        },
    }


def load_spec(path) -> PeriodicBandedSpec:
    with open(path, "r", encoding="utf-8") as fh:
        doc = json.load(fh)
    return validate_spec(doc)


def counterexample_spec() -> PeriodicBandedSpec:
    """The 2-periodic, 5-banded operator whose range closure no finite
    matrix attains: first superdiagonal alternates -1, 2; second is all ones."""
    return PeriodicBandedSpec(
        period=2, band=2, diagonals={1: [-1.0, 2.0], 2: [1.0, 1.0]}
    )


def free_jacobi_spec() -> PeriodicBandedSpec:
    """Free Jacobi operator: ones on both first off-diagonals."""
    return PeriodicBandedSpec(period=1, band=1, diagonals={-1: [1.0], 1: [1.0]})


def is_selfadjoint(spec: PeriodicBandedSpec, rtol: float = 1e-12) -> bool:
    """Whether every truncation is Hermitian: a_j^(-r) = conj(a_{j-r}^(r))."""
    tol = rtol * (1.0 + spec.max_entry())
    idx = np.arange(spec.period)
    for r in range(0, spec.band + 1):
        lower = spec.diagonal(-r)
        upper = spec.diagonal(r)
        # row j of the -r diagonal pairs with row j-r of the +r diagonal
        if np.max(np.abs(lower - np.conj(upper[(idx - r) % spec.period]))) > tol:
            return False
    return True


def truncation(spec: PeriodicBandedSpec, n_rows: int) -> np.ndarray:
    """Leading ``n_rows x n_rows`` compression of the one-sided operator."""
    if n_rows < 1:
        raise ValueError("truncation size must be >= 1")
    if n_rows > MATRIX_SIZE_CAP:
        raise ValueError(f"truncation size {n_rows} exceeds cap {MATRIX_SIZE_CAP}")
    out = np.zeros((n_rows, n_rows), dtype=complex)
    rows = np.arange(n_rows)
    for r in range(-spec.band, spec.band + 1):
        seq = spec.diagonal(r)
        j = rows[(rows + r >= 0) & (rows + r < n_rows)]
        out[j, j + r] = seq[j % spec.period]
    return out


def symbol(spec: PeriodicBandedSpec, theta: float) -> np.ndarray:
    """Symbol matrix at angle ``theta``.

    Entry ``(j, k)`` sums ``exp(i u theta) * a_j^{(k - j + u(n+1))}`` over
    the finitely many integers ``u`` that keep the offset inside the band.
    """
    d = spec.period
    theta = math.remainder(float(theta), TAU)
    out = np.zeros((d, d), dtype=complex)
    for j in range(d):
        for k in range(d):
            base = k - j
            u_lo = math.ceil((-spec.band - base) / d)
            u_hi = math.floor((spec.band - base) / d)
            acc = 0.0 + 0.0j
            for u in range(u_lo, u_hi + 1):
                coeff = spec.diagonal(base + u * d)[j]
                if coeff != 0.0:
                    acc += coeff * complex(math.cos(u * theta), math.sin(u * theta))
            out[j, k] = acc
    return out


def symbol_batch(spec: PeriodicBandedSpec, thetas) -> np.ndarray:
    """Stack of symbols, shape ``(len(thetas), n+1, n+1)``.

    Same values as ``symbol`` called pointwise, organized for vectorized
    sweeps: the symbol is assembled as a finite Fourier sum
    ``sum_u A_u exp(i u theta)`` with constant harmonic matrices ``A_u``.
    """
    d = spec.period
    thetas = np.atleast_1d(np.asarray(thetas, dtype=float))
    reduced = np.vectorize(lambda t: math.remainder(t, TAU))(thetas)
    u_max = (spec.band + d - 1) // d
    out = np.zeros((reduced.size, d, d), dtype=complex)
    for u in range(-u_max, u_max + 1):
        harmonic = np.zeros((d, d), dtype=complex)
        for j in range(d):
            for k in range(d):
                offset = k - j + u * d
                if abs(offset) <= spec.band:
                    harmonic[j, k] = spec.diagonal(offset)[j]
        if np.any(harmonic != 0.0):
            out += np.exp(1j * u * reduced)[:, None, None] * harmonic
    return out


def c_mu(spec: PeriodicBandedSpec, s: int) -> np.ndarray:
    """Wrapped ``mu x mu`` matrix, ``mu = s(n+1)``, entry (j,k) summing the
    operator entries at columns ``k + u*mu``.  At most one term survives
    because ``mu >= 2m+1``."""
    mu = _check_replication(spec, s)
    out = np.zeros((mu, mu), dtype=complex)
    for j in range(mu):
        for k in range(mu):
            base = k - j
            u_lo = math.ceil((-spec.band - base) / mu)
            u_hi = math.floor((spec.band - base) / mu)
            for u in range(u_lo, u_hi + 1):
                out[j, k] += spec.diagonal(base + u * mu)[j % spec.period]
    return out


def _check_replication(spec: PeriodicBandedSpec, s: int) -> int:
    if s < 2:
        raise ValueError("replication count s must be >= 2")
    mu = s * spec.period
    if mu < 2 * spec.band + 1:
        raise ValueError(
            f"s(n+1) = {mu} must cover the band width {2 * spec.band + 1}"
        )
    if mu > MATRIX_SIZE_CAP:
        raise ValueError(f"mu = {mu} exceeds cap {MATRIX_SIZE_CAP}")
    return mu


def fourier_unitary(n_plus_1: int, s: int) -> np.ndarray:
    """Unitary whose column ``q(n+1) + p`` is the Fourier vector with
    frequency ``q`` replicated over ``s`` blocks at in-block position ``p``."""
    if n_plus_1 < 1:
        raise ValueError("period must be >= 1")
    if s < 2:
        raise ValueError("replication count s must be >= 2")
    u = np.arange(s)
    dft = np.exp(2j * np.pi * np.outer(u, u) / s) / math.sqrt(s)
    return np.kron(dft, np.eye(n_plus_1, dtype=complex))


def block_diagonalization_residual(spec: PeriodicBandedSpec, s: int) -> float:
    """Max-norm of ``U* C_mu U`` minus the direct sum of the symbols at the
    s-th roots of unity.  Contract: <= 1e-10 * (1 + max entry)."""
    mu = _check_replication(spec, s)
    d = spec.period
    c = c_mu(spec, s)
    u = fourier_unitary(d, s)
    conjugated = u.conj().T @ c @ u
    assembled = np.zeros((mu, mu), dtype=complex)
    for q in range(s):
        block = symbol(spec, TAU * q / s)
        assembled[q * d : (q + 1) * d, q * d : (q + 1) * d] = block
    return max_norm(conjugated - assembled)


@dataclass(frozen=True)
class LiftedEigenvector:
    """Eigenvector of a symbol replicated into an eigenvector of ``C_mu``.

    ``lifted[p + u(n+1)] = base[p] * rho**(u * frequency)`` with
    ``rho = exp(2 pi i / replication)``.
    """

    base: np.ndarray
    replication: int
    frequency: int
    lifted: np.ndarray


def lift_eigenvector(v, frequency: int, replication: int) -> LiftedEigenvector:
    base = np.asarray(v, dtype=complex)
    if base.ndim != 1:
        raise ValueError("eigenvector must be one-dimensional")
    if not 0 <= frequency < replication:
        raise ValueError(f"frequency {frequency} not in 0..{replication - 1}")
    phases = np.exp(2j * np.pi * frequency * np.arange(replication) / replication)
    lifted = (phases[:, None] * base[None, :]).ravel()
    base = base.copy()
    base.flags.writeable = False
    lifted.flags.writeable = False
    return LiftedEigenvector(
        base=base, replication=replication, frequency=frequency, lifted=lifted
    )


def spectrum_match_gap(spec: PeriodicBandedSpec, s: int) -> float:
    """Largest normalized gap between characteristic coefficients of
    ``C_mu`` and of the direct sum of symbols at s-th roots of unity.

    Eigenvalue multisets agree exactly in exact arithmetic; this returns
    the floating-point mismatch, compared per coefficient relative to
    ``1 + |c1| + |c2|``.
    """
    _check_replication(spec, s)
    from_c = np.poly(np.linalg.eigvals(c_mu(spec, s)))
    from_blocks = np.array([1.0 + 0.0j])
    for q in range(s):
        from_blocks = np.convolve(
            from_blocks, np.poly(np.linalg.eigvals(symbol(spec, TAU * q / s)))
        )
    gaps = np.abs(from_c - from_blocks) / (
        1.0 + np.abs(from_c) + np.abs(from_blocks)
    )
    return float(np.max(gaps))


def lifting_residual_max(spec: PeriodicBandedSpec, s: int) -> float:
    """Worst residual ``|C_mu w - lambda w|`` over all lifted unit
    eigenvectors of all symbols at the s-th roots of unity, scaled by
    ``1 + |lambda|``."""
    _check_replication(spec, s)
    c = c_mu(spec, s)
    worst = 0.0
    for r in range(s):
        phi = symbol(spec, TAU * r / s)
        values, vectors = np.linalg.eig(phi)
        for lam, vec in zip(values, vectors.T):
            lifted = lift_eigenvector(vec, r, s).lifted
            w = lifted / np.linalg.norm(lifted)
            residual = float(np.linalg.norm(c @ w - lam * w)) / (1.0 + abs(lam))
            worst = max(worst, residual)
    return worst


def random_spec(
    rng: np.random.Generator,
    period: int,
    band: int,
    selfadjoint: bool = False,
) -> PeriodicBandedSpec:
    """Random spec with entries in the closed unit disk (seeded by caller)."""
    diagonals: dict[int, np.ndarray] = {}
    for r in range(0 if selfadjoint else -band, band + 1):
        radius = np.sqrt(rng.uniform(0.0, 1.0, period))
        angle = rng.uniform(0.0, TAU, period)
        diagonals[r] = radius * np.exp(1j * angle)
    if selfadjoint:
        idx = np.arange(period)
        diagonals[0] = diagonals[0].real.astype(complex)
        for r in range(1, band + 1):
            diagonals[-r] = np.conj(diagonals[r][(idx - r) % period])
    return PeriodicBandedSpec(period=period, band=band, diagonals=diagonals)
