"""Power-series engine for F = P^(-beta).

Expands F as a truncated multivariate power series via the coefficient
recurrence obtained from P * (Z_j dF/dZ_j) = -beta * (Z_j dP/dZ_j) * F:
for any axis j with r_j >= 1,

    r_j * a_r = - sum over terms s != 0, s <= r of
                p_s * ((r_j - s_j) + beta * s_j) * a_{r-s},    a_0 = 1,

which needs only O(#terms(P)) work per coefficient. Two independent
oracles cross-check the engine: direct truncated expansion of
sum_k binom(-beta, k) (P-1)^k, and numeric Cauchy integration over a
torus. The exact backend requires rational beta; float beta routes to
the float backend.

The box fill runs in a compiled kernel when the extension built, with a
pure-Python twin selected on ImportError or CONEDIAG_PURE_PYTHON=1.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple, Union

import numpy as np

from .polycore import (
    Monomial,
    Polynomial,
    Rat,
    is_exact,
    normalize_constant,
    rat_str,
    to_rat,
)

if os.environ.get("CONEDIAG_PURE_PYTHON") == "1":
    _kernel_ext = None
else:
    try:
        from . import _serieskernel as _kernel_ext
    except ImportError:
        _kernel_ext = None
from . import _serieskernel_py as _kernel_py

HAVE_COMPILED_KERNEL = _kernel_ext is not None

DEFAULT_MEMORY_CAP = 1 << 27


class MemoryCapExceeded(RuntimeError):
    """Requested coefficient box is larger than the configured cap."""


def _is_nonpositive_integer(beta) -> bool:
    if is_exact(beta):
        b = to_rat(beta)
        return b.denominator == 1 and b <= 0
    return beta <= 0 and float(beta) == math.floor(beta)


class QuasiRationalSpec:
    """The pair (P, beta) defining F = P^(-beta), with P(0) = 1.

    beta may be an exact rational (enabling the exact backend) or a float.
    Nonpositive integer beta is rejected: those powers are polynomials and
    fall outside the quasi-rational setting. ``scaling`` optionally records
    a coordinate change already applied to P.
    """

    __slots__ = ("P", "beta", "scaling")

    def __init__(self, P: Polynomial, beta, scaling: Optional[Sequence] = None):
        if P.constant_term() != 1:
            raise ValueError("P must have constant term 1 (apply normalize_constant first)")
        if is_exact(beta):
            beta = to_rat(beta)
        elif isinstance(beta, float):
            if math.isnan(beta) or math.isinf(beta):
                raise ValueError("beta must be finite")
        else:
            raise TypeError(f"beta must be rational or float, got {type(beta).__name__}")
        if _is_nonpositive_integer(beta):
            raise ValueError(f"beta = {beta} is a nonpositive integer, not a valid exponent")
        self.P = P
        self.beta = beta
        self.scaling = tuple(to_rat(c) for c in scaling) if scaling is not None else None

    @property
    def d(self) -> int:
        return self.P.dim

    @property
    def has_exact_beta(self) -> bool:
        return is_exact(self.beta)

    def __repr__(self):
        return f"QuasiRationalSpec(P={self.P!r}, beta={self.beta})"


def make_spec(P: Polynomial, beta) -> Tuple[QuasiRationalSpec, Rat]:
    """Normalize the constant term and build a spec; returns (spec, P(0))."""
    Pn, c = normalize_constant(P)
    return QuasiRationalSpec(Pn, beta), c


class SeriesBox:
    """Dense truncated coefficient box of P^(-beta).

    Coefficients live in a flat row-major buffer: a list of exact
    rationals on the exact backend, a float64 array on the float backend.
    """

    __slots__ = ("dim", "bounds", "shape", "backend", "flat", "_strides")

    def __init__(self, dim: int, bounds: Tuple[int, ...], backend: str, flat):
        self.dim = dim
        self.bounds = tuple(bounds)
        self.shape = tuple(b + 1 for b in self.bounds)
        self.backend = backend
        self.flat = flat
        self._strides = _row_major_strides(self.shape)
        if self.flat[0] != 1:
            raise ValueError("coefficient at the origin must be 1")

    @property
    def size(self) -> int:
        return math.prod(self.shape)

    def coefficient(self, r: Sequence[int]):
        if len(r) != self.dim:
            raise ValueError(f"index length {len(r)} != dim {self.dim}")
        flat = 0
        for k, (e, b) in enumerate(zip(r, self.bounds)):
            if not 0 <= e <= b:
                raise IndexError(f"index {tuple(r)} outside box bounds {self.bounds}")
            flat += e * self._strides[k]
        return self.flat[flat]

    def array(self) -> np.ndarray:
        """Float view of the box (float backend only)."""
        if self.backend != "float":
            raise TypeError("array() is only available on the float backend")
        return np.asarray(self.flat).reshape(self.shape)


@dataclass
class DiagonalSequence:
    """Diagonal coefficients a_{n,...,n}, values[0] = 1."""

    values: list
    backend: str

    def __post_init__(self):
        if len(self.values) == 0 or self.values[0] != 1:
            raise ValueError("diagonal must start at a_0 = 1")

    def __len__(self):
        return len(self.values)

    def __getitem__(self, n):
        return self.values[n]


def _row_major_strides(shape: Tuple[int, ...]) -> Tuple[int, ...]:
    d = len(shape)
    strides = [1] * d
    for k in range(d - 2, -1, -1):
        strides[k] = strides[k + 1] * shape[k + 1]
    return tuple(strides)


def _graded_order(shape: Tuple[int, ...]):
    """Flat indices sorted by total degree (stable, so row-major within a degree)."""
    d = len(shape)
    size = math.prod(shape)
    rs = np.indices(shape, dtype=np.int64).reshape(d, size).T
    order = np.argsort(rs.sum(axis=1), kind="stable").astype(np.int64)
    return np.ascontiguousarray(rs[order]), order


def _select_kernel(name: Optional[str]):
    if name in (None, "auto"):
        return _kernel_ext if _kernel_ext is not None else _kernel_py
    if name == "cython":
        if _kernel_ext is None:
            raise RuntimeError("compiled kernel is not available in this install")
        return _kernel_ext
    if name == "python":
        return _kernel_py
    raise ValueError(f"unknown kernel {name!r}")


def expand_power(
    spec: QuasiRationalSpec,
    bounds: Sequence[int],
    backend: Optional[str] = None,
    kernel: Optional[str] = None,
    axis: Optional[int] = None,
    memory_cap: int = DEFAULT_MEMORY_CAP,
) -> SeriesBox:
    """Expand P^(-beta) on the box 0 <= r_j <= bounds[j].

    Coefficients are filled in graded (total-degree) order, so an interrupted
    or truncated fill is a valid lower-degree prefix. ``axis`` (1-based)
    selects the preferred recurrence axis; coefficients with a zero entry on
    that axis fall back to the first positive axis. The result is identical
    for every axis choice on the exact backend.
    """
    d = spec.d
    bounds = tuple(int(b) for b in bounds)
    if len(bounds) != d:
        raise ValueError(f"bounds length {len(bounds)} != dimension {d}")
    if any(b < 0 for b in bounds):
        raise ValueError("bounds must be nonnegative")
    shape = tuple(b + 1 for b in bounds)
    size = math.prod(shape)
    if size > memory_cap:
        raise MemoryCapExceeded(f"box of {size} coefficients exceeds cap {memory_cap}")

    if backend is None:
        backend = "exact" if spec.has_exact_beta else "float"
    if backend not in ("exact", "float"):
        raise ValueError(f"unknown backend {backend!r}")
    if backend == "exact" and not spec.has_exact_beta:
        raise ValueError("exact backend requires rational beta")

    if axis is None:
        axis_pref = -1
    else:
        if not 1 <= axis <= d:
            raise ValueError(f"axis {axis} out of range 1..{d}")
        axis_pref = axis - 1

    strides = _row_major_strides(shape)
    # terms s != 0 of P; terms sticking out of the box can never apply
    items = sorted(
        ((m, c) for m, c in spec.P.terms.items() if any(m)),
        key=lambda mc: (sum(mc[0]), tuple(-e for e in mc[0])),
    )
    items = [(m, c) for m, c in items if all(e <= b for e, b in zip(m, bounds))]
    nterms = len(items)
    if nterms:
        svecs = np.array([m for m, _ in items], dtype=np.int64).reshape(nterms, d)
    else:
        svecs = np.zeros((0, d), dtype=np.int64)
    soffs = svecs @ np.array(strides, dtype=np.int64)

    rs, order = _graded_order(shape)
    K = _select_kernel(kernel)

    if backend == "float":
        beta_f = float(spec.beta)
        coeffs = np.array([float(c) for _, c in items], dtype=np.float64)
        bfac = ((beta_f - 1.0) * svecs.astype(np.float64)).reshape(nterms, d)
        bfac = np.ascontiguousarray(bfac)
        flat = K.fill_box_float(rs, order, svecs, soffs, coeffs, bfac, axis_pref, size)
    else:
        beta = to_rat(spec.beta)
        bm1 = beta - 1
        coeffs = [to_rat(c) for _, c in items]
        bfac_flat = [bm1 * int(svecs[t, j]) for t in range(nterms) for j in range(d)]
        flat = K.fill_box_exact(
            rs, order, svecs, soffs, coeffs, bfac_flat, axis_pref, size, Rat(1), Rat(0)
        )
    return SeriesBox(dim=d, bounds=bounds, backend=backend, flat=flat)


def diagonal_of(box: SeriesBox) -> DiagonalSequence:
    """The sequence a_{n,...,n} for n up to the common box bound."""
    if len(set(box.bounds)) != 1:
        raise ValueError(f"diagonal needs equal bounds per axis, got {box.bounds}")
    step = sum(box._strides)
    n_max = box.bounds[0]
    values = [box.flat[n * step] for n in range(n_max + 1)]
    return DiagonalSequence(values=values, backend=box.backend)


def positivity_scan(seq: DiagonalSequence) -> Optional[int]:
    """Smallest n with values[n] <= 0, or None when all entries are positive."""
    for n, v in enumerate(seq.values):
        if v <= 0:
            return n
    return None


def _truncated_mul(a: Dict[Monomial, Rat], b: Dict[Monomial, Rat], cap: int) -> Dict[Monomial, Rat]:
    out: Dict[Monomial, Rat] = {}
    for ma, ca in a.items():
        da = sum(ma)
        for mb, cb in b.items():
            if da + sum(mb) > cap:
                continue
            mono = tuple(x + y for x, y in zip(ma, mb))
            s = out.get(mono, Rat(0)) + ca * cb
            if s == 0:
                out.pop(mono, None)
            else:
                out[mono] = s
    return out


def brute_force_oracle(spec: QuasiRationalSpec, total_degree: int, degree_cap: int = 8) -> Dict[Monomial, Rat]:
    """Exact coefficients of P^(-beta) up to the given total degree.

    Independent of the recurrence engine: expands
    sum_{k>=0} binom(-beta, k) (P-1)^k by truncated polynomial powering.
    Intentionally capped; this is a test oracle, not a production path.
    """
    if total_degree < 0:
        raise ValueError("total degree must be nonnegative")
    if total_degree > degree_cap:
        raise ValueError(f"oracle degree {total_degree} exceeds cap {degree_cap}")
    if not spec.has_exact_beta:
        raise TypeError("brute_force_oracle requires rational beta")
    beta = to_rat(spec.beta)
    d = spec.d
    zero_mono = (0,) * d
    u = {m: c for m, c in spec.P.terms.items() if any(m) and sum(m) <= total_degree}
    result: Dict[Monomial, Rat] = {zero_mono: Rat(1)}
    upow: Dict[Monomial, Rat] = {zero_mono: Rat(1)}
    binom = Rat(1)
    for k in range(1, total_degree + 1):
        binom = binom * (-beta - (k - 1)) / k
        upow = _truncated_mul(upow, u, total_degree)
        if not upow:
            break
        for mono, c in upow.items():
            s = result.get(mono, Rat(0)) + binom * c
            if s == 0:
                result.pop(mono, None)
            else:
                result[mono] = s
    return result


def cauchy_coefficient(
    spec: QuasiRationalSpec,
    r: Sequence[int],
    radius: Sequence[float],
    grid: int = 32,
    shrink: float = 0.9,
    max_retries: int = 5,
) -> complex:
    """Numeric a_r via torus quadrature of the coefficient integral.

    Equal-angle product trapezoidal rule on the torus |Z_j| = radius[j];
    the radius must lie strictly inside the domain of convergence (a safe
    default is half the modulus of the dominant singular point per axis).
    A quadrature node falling on the zero set of P triggers a radius
    shrink by ``shrink``, at most ``max_retries`` times.
    """
    d = spec.d
    if len(r) != d:
        raise ValueError(f"exponent length {len(r)} != dimension {d}")
    if len(radius) != d:
        raise ValueError(f"radius length {len(radius)} != dimension {d}")
    if any(rho <= 0 for rho in radius):
        raise ValueError("radius entries must be positive")
    if grid < 8:
        raise ValueError("grid must be at least 8 points per axis")
    beta_f = float(spec.beta)
    terms = [(m, float(c)) for m, c in spec.P.terms.items()]
    theta = 2.0 * np.pi * np.arange(grid) / grid
    for attempt in range(max_retries + 1):
        rad = [rho * (shrink ** attempt) for rho in radius]
        axes = []
        for j in range(d):
            zj = rad[j] * np.exp(1j * theta)
            axes.append(zj.reshape((1,) * j + (grid,) + (1,) * (d - 1 - j)))
        pv = np.zeros((grid,) * d, dtype=np.complex128)
        for mono, c in terms:
            term = np.full((), c, dtype=np.complex128)
            for j, e in enumerate(mono):
                if e:
                    term = term * axes[j] ** e
            pv = pv + term
        if float(np.min(np.abs(pv))) < 1e-12:
            continue
        fv = pv ** (-beta_f)
        for j in range(d):
            if r[j]:
                phase = np.exp(-1j * r[j] * theta)
                fv = fv * phase.reshape((1,) * j + (grid,) + (1,) * (d - 1 - j))
        scale = 1.0
        for j in range(d):
            scale *= rad[j] ** (-int(r[j]))
        return complex(fv.mean() * scale)
    raise RuntimeError(
        f"P vanishes at a quadrature node for every radius tried ({max_retries} shrinks)"
    )


def _format_value(v) -> str:
    if is_exact(v):
        return rat_str(v)
    return repr(float(v))


def box_to_tsv(box: SeriesBox) -> str:
    """One row per nonzero coefficient: r_1 .. r_d <tab> value, graded order."""
    rs, order = _graded_order(box.shape)
    lines = []
    for i in range(order.shape[0]):
        v = box.flat[int(order[i])]
        if v == 0:
            continue
        idx = "\t".join(str(int(e)) for e in rs[i])
        lines.append(f"{idx}\t{_format_value(v)}")
    return "\n".join(lines) + "\n"


def diagonal_to_tsv(seq: DiagonalSequence) -> str:
    """One row per diagonal entry: n <tab> value."""
    lines = [f"{n}\t{_format_value(v)}" for n, v in enumerate(seq.values)]
    return "\n".join(lines) + "\n"
