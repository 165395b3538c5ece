"""Iterated power-weakness ratio computation with convergence reporting.

For a citation matrix Z the power vector p(k) is proportional to the row sums
of Z^k and the weakness vector w(k) to its column sums.  Both are obtained by
repeated matrix-vector products starting from the ones vector, optionally
renormalized to unit sum every step so large matrices cannot overflow at high
k.  The per-node quotient r_i(k) = p_i(k) / w_i(k) is the power-weakness
ratio; the sequence of k-to-k changes of r drives the convergence diagnostic.

The unit-sum renormalization never changes a ratio: p(k) and w(k) are both
scaled by the grand total of Z^k, which cancels in the quotient.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from .matrix import CitationMatrix, column_sums, matvec, row_sums, transpose, zero_diagonal

log = logging.getLogger(__name__)


class SelfCitations(str, Enum):
    """Whether the main diagonal takes part in the iteration."""

    INCLUDE = "include"
    EXCLUDE = "exclude"


class ZeroDivision(str, Enum):
    """What a ratio becomes when a node's weakness is zero."""

    ZERO = "zero"
    INFINITE = "infinite"
    ERROR = "error"


class ZeroWeaknessError(ValueError):
    """Raised under the error policy when a weakness entry hits zero."""

    def __init__(self, label: str, k: int) -> None:
        super().__init__(f"weakness of {label!r} is zero at iteration k={k}")
        self.label = label
        self.k = k


@dataclass(frozen=True)
class PwrOptions:
    """Iteration controls; the defaults mirror common desk practice."""

    k_max: int = 20
    tol: float = 1e-6
    self_citations: SelfCitations = SelfCitations.INCLUDE
    zero_division: ZeroDivision = ZeroDivision.ZERO
    normalize_each_iteration: bool = True

    def __post_init__(self) -> None:
        object.__setattr__(self, "k_max", int(self.k_max))
        object.__setattr__(self, "tol", float(self.tol))
        object.__setattr__(self, "self_citations", SelfCitations(self.self_citations))
        object.__setattr__(self, "zero_division", ZeroDivision(self.zero_division))
        if self.k_max < 1:
            raise ValueError(f"k_max must be >= 1, got {self.k_max}")
        if self.tol <= 0.0:
            raise ValueError(f"tol must be positive, got {self.tol}")


@dataclass(frozen=True)
class PwrTrace:
    """Power, weakness, and ratio vectors for every k from 1 to k_max."""

    labels: tuple[str, ...]
    powers: tuple[np.ndarray, ...] = field(repr=False)
    weaknesses: tuple[np.ndarray, ...] = field(repr=False)
    ratios: tuple[np.ndarray, ...] = field(repr=False)
    power_scales: tuple[float, ...]
    weakness_scales: tuple[float, ...]
    options: PwrOptions
    degenerate: bool = False

    @property
    def k_max(self) -> int:
        return len(self.ratios)

    def power_at(self, k: int) -> np.ndarray:
        return self.powers[k - 1]

    def weakness_at(self, k: int) -> np.ndarray:
        return self.weaknesses[k - 1]

    def ratio_at(self, k: int) -> np.ndarray:
        return self.ratios[k - 1]


@dataclass(frozen=True)
class ConvergenceReport:
    """Max ratio change per iteration and where it first dips below tol."""

    deltas: tuple[float, ...]
    converged: bool
    k_converged: int | None
    flagged: tuple[str, ...]
    tol: float

    def delta_at(self, k: int) -> float:
        """Change between r(k-1) and r(k); defined for k >= 2."""
        if k < 2 or k > len(self.deltas) + 1:
            raise ValueError(f"delta is defined for 2 <= k <= {len(self.deltas) + 1}")
        return self.deltas[k - 2]

    @property
    def iterations_to_converge(self) -> int | None:
        """Homogeneity hint: small values mean a homogeneous set."""
        return self.k_converged


def _trace_vectors(
    z: CitationMatrix, k_max: int, normalize: bool
) -> tuple[list[np.ndarray], list[float], bool]:
    v = np.ones(z.n, dtype=np.float64)
    vectors: list[np.ndarray] = []
    scales: list[float] = []
    degenerate = False
    for _ in range(k_max):
        v = matvec(z, v)
        total = float(v.sum())
        if total == 0.0:
            degenerate = True
        if normalize and total > 0.0:
            v = v / total
            scales.append(total)
        elif normalize:
            scales.append(0.0)
        else:
            scales.append(1.0)
        vectors.append(v)
    return vectors, scales, degenerate


def power_vector_trace(z: CitationMatrix, options: PwrOptions | None = None) -> list[np.ndarray]:
    """p(k) for k = 1..k_max; unit-sum scaled when normalization is on.

    The matrix is iterated exactly as given; callers wanting the self-citation
    policy applied should use :func:`pwr_trace`.
    """
    opts = options if options is not None else PwrOptions()
    if z.n < 1:
        raise ValueError("matrix must have at least one node")
    vectors, _scales, degenerate = _trace_vectors(z, opts.k_max, opts.normalize_each_iteration)
    if degenerate:
        log.warning("matrix has a zero power iterate; vectors degenerate to zero")
    return vectors


def weakness_vector_trace(z: CitationMatrix, options: PwrOptions | None = None) -> list[np.ndarray]:
    """w(k) for k = 1..k_max, the power trace of the transposed matrix."""
    return power_vector_trace(transpose(z), options)


def _warn_one_sided(z: CitationMatrix) -> None:
    cited_only = [z.labels[i] for i in np.nonzero(column_sums(z) == 0.0)[0]]
    citing_only = [z.labels[i] for i in np.nonzero(row_sums(z) == 0.0)[0]]
    if cited_only:
        log.warning(
            "%d node(s) cite nothing within the set and will score extreme ratios: %s",
            len(cited_only),
            ", ".join(cited_only),
        )
    if citing_only:
        log.warning(
            "%d node(s) are never cited within the set: %s",
            len(citing_only),
            ", ".join(citing_only),
        )


def pwr_trace(z: CitationMatrix, options: PwrOptions | None = None) -> PwrTrace:
    """Full iteration trace with the self-citation and zero-division policies."""
    opts = options if options is not None else PwrOptions()
    if z.n < 1:
        raise ValueError("matrix must have at least one node")
    mat = zero_diagonal(z) if opts.self_citations is SelfCitations.EXCLUDE else z
    _warn_one_sided(mat)
    normalize = opts.normalize_each_iteration
    p_vecs, p_scales, p_degen = _trace_vectors(mat, opts.k_max, normalize)
    w_vecs, w_scales, w_degen = _trace_vectors(transpose(mat), opts.k_max, normalize)

    ratios: list[np.ndarray] = []
    for step, (p, w) in enumerate(zip(p_vecs, w_vecs), start=1):
        zero_mask = w == 0.0
        if zero_mask.any() and opts.zero_division is ZeroDivision.ERROR:
            offender = z.labels[int(np.nonzero(zero_mask)[0][0])]
            raise ZeroWeaknessError(offender, step)
        fill = 0.0 if opts.zero_division is ZeroDivision.ZERO else math.inf
        r = np.divide(p, w, out=np.full(z.n, fill, dtype=np.float64), where=~zero_mask)
        ratios.append(r)

    degenerate = p_degen or w_degen
    if degenerate:
        log.warning("matrix has a zero iterate; trace flagged as degenerate")
    return PwrTrace(
        labels=z.labels,
        powers=tuple(p_vecs),
        weaknesses=tuple(w_vecs),
        ratios=tuple(ratios),
        power_scales=tuple(p_scales),
        weakness_scales=tuple(w_scales),
        options=opts,
        degenerate=degenerate,
    )


def convergence_report(trace: PwrTrace, tol: float) -> ConvergenceReport:
    """Per-k max absolute ratio change, skipping non-finite sentinel entries."""
    if trace.k_max < 2:
        raise ValueError("convergence needs a trace with k_max >= 2")
    if tol <= 0.0:
        raise ValueError(f"tol must be positive, got {tol}")
    deltas: list[float] = []
    k_converged: int | None = None
    for k in range(2, trace.k_max + 1):
        prev = trace.ratio_at(k - 1)
        cur = trace.ratio_at(k)
        usable = np.isfinite(prev) & np.isfinite(cur)
        delta = float(np.abs(cur[usable] - prev[usable]).max()) if usable.any() else 0.0
        deltas.append(delta)
        if k_converged is None and delta <= tol:
            k_converged = k
    sentinel = np.zeros(len(trace.labels), dtype=bool)
    for r in trace.ratios:
        sentinel |= ~np.isfinite(r)
    flagged = tuple(trace.labels[i] for i in np.nonzero(sentinel)[0])
    return ConvergenceReport(
        deltas=tuple(deltas),
        converged=k_converged is not None,
        k_converged=k_converged,
        flagged=flagged,
        tol=float(tol),
    )


def converged_pwr(
    z: CitationMatrix, options: PwrOptions | None = None
) -> tuple[np.ndarray, ConvergenceReport]:
    """Ratio vector at the convergence point, or at k_max when never reached.

    Non-convergence is a diagnostic outcome, not an error: the report says
    so and the k_max vector is returned.
    """
    opts = options if options is not None else PwrOptions()
    trace = pwr_trace(z, opts)
    if trace.k_max >= 2:
        report = convergence_report(trace, opts.tol)
    else:
        sentinel = ~np.isfinite(trace.ratio_at(1))
        flagged = tuple(trace.labels[i] for i in np.nonzero(sentinel)[0])
        report = ConvergenceReport((), False, None, flagged, opts.tol)
    final_k = report.k_converged if report.converged else trace.k_max
    return trace.ratio_at(final_k), report
