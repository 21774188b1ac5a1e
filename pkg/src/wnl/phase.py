"""Phase functions h and the analytic machinery built on them.

A phase is a real 2*pi-quasi-periodic function h with h(t + 2*pi) =
h(t) + 2*pi*k for an integer winding number k, smooth on (0, pi) with
h'' of one sign there.  The quantities everything downstream needs are

* the inverse ``psi`` of h' on [0, pi],
* the Legendre-type transform x*psi(x) - h(psi(x)),
* the modulus of continuity of h'' on [0, pi],
* the cutoff scale Phi_n solving omega(Phi/sqrt(n)) * Phi^4 = 1,
* the four-way index partition at a given scale n.

Convexity convention: the partition and the stationary-phase expansion
are stated for h'' > 0.  ``PhaseFunction.normalized()`` returns sign*h,
which has positive second derivative; ``psi`` and ``legendre`` accept
either orientation and invert the raw slope.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .errors import DomainError

Array = np.ndarray
PhaseCallable = Callable[[Array], Array]

_INTERIOR_MARGIN = 1e-9  # keep evaluation strictly inside (0, pi)


@dataclass(frozen=True)
class PhaseFunction:
    """A phase h bundled with its first three derivatives.

    All four callables must accept and return numpy arrays (scalars are
    promoted).  ``sign`` is +1 when h'' > 0 on (0, pi) and -1 when
    h'' < 0; builders set it, ``validate`` checks it.
    """

    h: PhaseCallable
    d1: PhaseCallable
    d2: PhaseCallable
    d3: PhaseCallable
    winding_k: int
    odd: bool
    sign: int
    label: str

    def normalized(self) -> "PhaseFunction":
        """The phase sign*h, which has positive h'' on (0, pi)."""
        if self.sign == 1:
            return self
        h, d1, d2, d3 = self.h, self.d1, self.d2, self.d3
        return PhaseFunction(
            h=lambda t: -h(t),
            d1=lambda t: -d1(t),
            d2=lambda t: -d2(t),
            d3=lambda t: -d3(t),
            winding_k=-self.winding_k,
            odd=self.odd,
            sign=1,
            label=f"-({self.label})",
        )

    def slope_range(self, grid_size: int = 4097) -> tuple[float, float]:
        """(min, max) of h' on [-pi, pi], sampled densely.

        An odd grid size keeps -pi, 0, pi on the grid, where monotone
        curvature puts the extremes.
        """
        t = np.linspace(-np.pi, np.pi, grid_size)
        v = self.d1(t)
        return float(np.min(v)), float(np.max(v))


@dataclass
class ValidationReport:
    """Outcome of the structural checks on a phase."""

    label: str
    periodicity_ok: bool
    symmetry_ok: bool
    sign_ok: bool
    regularity_0_ok: bool
    regularity_pi_ok: bool
    doubling_ratio_0: float
    doubling_ratio_pi: float
    messages: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return (
            self.periodicity_ok
            and self.symmetry_ok
            and self.sign_ok
            and self.regularity_0_ok
            and self.regularity_pi_ok
        )

    def __repr__(self) -> str:  # compact, log-friendly
        status = "ok" if self.passed else "FAILED"
        flags = (
            f"periodicity={self.periodicity_ok} symmetry={self.symmetry_ok} "
            f"sign={self.sign_ok} reg0={self.regularity_0_ok} "
            f"regpi={self.regularity_pi_ok}"
        )
        return f"<ValidationReport {self.label}: {status} ({flags})>"


# ---------------------------------------------------------------------------
# Builders
# ---------------------------------------------------------------------------


def build_sine() -> PhaseFunction:
    """h(t) = sin t.  Coefficients of e^{ix sin t} are Bessel J_nu(x)."""
    return PhaseFunction(
        h=np.sin,
        d1=np.cos,
        d2=lambda t: -np.sin(t),
        d3=lambda t: -np.cos(t),
        winding_k=0,
        odd=True,
        sign=-1,
        label="sine",
    )


def build_linear(k: int) -> PhaseFunction:
    """h(t) = k*t for integer k.  Degenerate: h'' = 0 everywhere."""
    if k != int(k):
        raise DomainError(f"linear phase needs an integer slope, got {k!r}")
    k = int(k)
    return PhaseFunction(
        h=lambda t: k * np.asarray(t, dtype=float),
        d1=lambda t: np.full_like(np.asarray(t, dtype=float), float(k)),
        d2=lambda t: np.zeros_like(np.asarray(t, dtype=float)),
        d3=lambda t: np.zeros_like(np.asarray(t, dtype=float)),
        winding_k=k,
        odd=True,
        sign=1,
        label=f"linear[{k}]",
    )


def build_piecewise_abs() -> PhaseFunction:
    """h(t) = |t| on [-pi, pi], extended periodically.

    Not smooth at 0 and pi, second derivative vanishes in between; this
    phase exists to exercise the failure modes, and its Fourier side is
    known in closed form.
    """

    def wrap(t: Array) -> Array:
        t = np.asarray(t, dtype=float)
        return t - 2.0 * np.pi * np.round(t / (2.0 * np.pi))

    return PhaseFunction(
        h=lambda t: np.abs(wrap(t)),
        d1=lambda t: np.sign(wrap(t)),
        d2=lambda t: np.zeros_like(np.asarray(t, dtype=float)),
        d3=lambda t: np.zeros_like(np.asarray(t, dtype=float)),
        winding_k=0,
        odd=False,
        sign=1,
        label="abs",
    )


def build_blaschke(alphas: Sequence[float]) -> PhaseFunction:
    """Phase of a finite Blaschke product with real zeros alpha_j in (0, 1).

    One factor (e^{it} - alpha) / (1 - alpha e^{it}) contributes
    t + 2*atan(alpha sin t / (1 - alpha cos t)) to the argument.  The
    convention here takes h = -(sum of factor arguments), which makes
    h'' > 0 on (0, pi); a product of J factors then has winding -J.
    Since Re(1 - alpha e^{it}) > 0, the atan never crosses a branch cut
    and h is smooth.
    """
    a = np.asarray(alphas, dtype=float)
    if a.ndim != 1 or a.size == 0:
        raise DomainError("need a non-empty 1-d sequence of zero moduli")
    if np.any((a <= 0.0) | (a >= 1.0)):
        raise DomainError(f"zero moduli must lie in (0, 1), got {alphas!r}")

    def h(t: Array) -> Array:
        t = np.asarray(t, dtype=float)[..., None]
        phi = np.arctan2(a * np.sin(t), 1.0 - a * np.cos(t))
        return -np.sum(t + 2.0 * phi, axis=-1)

    def d1(t: Array) -> Array:
        t = np.asarray(t, dtype=float)[..., None]
        den = 1.0 + a * a - 2.0 * a * np.cos(t)
        return -np.sum((1.0 - a * a) / den, axis=-1)

    def d2(t: Array) -> Array:
        t = np.asarray(t, dtype=float)[..., None]
        den = 1.0 + a * a - 2.0 * a * np.cos(t)
        return np.sum(2.0 * a * (1.0 - a * a) * np.sin(t) / den**2, axis=-1)

    def d3(t: Array) -> Array:
        t = np.asarray(t, dtype=float)[..., None]
        den = 1.0 + a * a - 2.0 * a * np.cos(t)
        num = -3.0 * a + np.cos(t) + a * a * np.cos(t) + a * np.cos(2.0 * t)
        return np.sum(2.0 * a * (1.0 - a * a) * num / den**3, axis=-1)

    levels = ",".join(f"{v:g}" for v in a)
    return PhaseFunction(
        h=h,
        d1=d1,
        d2=d2,
        d3=d3,
        winding_k=-int(a.size),
        odd=True,
        sign=1,
        label=f"blaschke[{levels}]",
    )


def build_blaschke_general(zeros: Sequence[complex]) -> PhaseFunction:
    """Blaschke phase for complex zeros a_j with 0 < |a_j| < 1.

    Same convention as :func:`build_blaschke`; with zeros off the real
    axis the phase loses its odd symmetry and h'' can change sign, both
    of which ``validate`` will report.  Derivatives are sums of shifted
    Poisson kernels.
    """
    z = np.asarray(zeros, dtype=complex)
    if z.ndim != 1 or z.size == 0:
        raise DomainError("need a non-empty 1-d sequence of zeros")
    if np.any(np.abs(z) >= 1.0) or np.any(np.abs(z) <= 0.0):
        raise DomainError("zeros must satisfy 0 < |a| < 1")
    r = np.abs(z)
    theta = np.angle(z)

    def h(t: Array) -> Array:
        t = np.asarray(t, dtype=float)[..., None]
        u = t - theta
        phi = np.arctan2(r * np.sin(u), 1.0 - r * np.cos(u))
        return -np.sum(t + 2.0 * phi, axis=-1)

    def d1(t: Array) -> Array:
        t = np.asarray(t, dtype=float)[..., None]
        u = t - theta
        den = 1.0 + r * r - 2.0 * r * np.cos(u)
        return -np.sum((1.0 - r * r) / den, axis=-1)

    def d2(t: Array) -> Array:
        t = np.asarray(t, dtype=float)[..., None]
        u = t - theta
        den = 1.0 + r * r - 2.0 * r * np.cos(u)
        return np.sum(2.0 * r * (1.0 - r * r) * np.sin(u) / den**2, axis=-1)

    def d3(t: Array) -> Array:
        t = np.asarray(t, dtype=float)[..., None]
        u = t - theta
        den = 1.0 + r * r - 2.0 * r * np.cos(u)
        num = -3.0 * r + np.cos(u) + r * r * np.cos(u) + r * np.cos(2.0 * u)
        return np.sum(2.0 * r * (1.0 - r * r) * num / den**3, axis=-1)

    levels = ",".join(f"{v:g}" for v in z)
    return PhaseFunction(
        h=h,
        d1=d1,
        d2=d2,
        d3=d3,
        winding_k=-int(z.size),
        odd=bool(np.allclose(theta, 0.0)),
        sign=1,
        label=f"blaschke*[{levels}]",
    )


def build_from_callable(
    h: Callable[[Array], Array],
    winding_k: int = 0,
    label: str = "custom",
    step: float = 1e-5,
) -> PhaseFunction:
    """Wrap a plain callable, supplying derivatives by central differences.

    Good enough for exploration; the finite-difference noise floor
    (~1e-10 on d1, far worse on d3) makes this unsuitable for tight
    tolerance work, so prefer an analytic builder when one exists.
    """

    def hv(t: Array) -> Array:
        return np.asarray(h(np.asarray(t, dtype=float)), dtype=float)

    def d1(t: Array) -> Array:
        return (hv(t + step) - hv(t - step)) / (2.0 * step)

    def d2(t: Array) -> Array:
        return (hv(t + step) - 2.0 * hv(t) + hv(t - step)) / step**2

    def d3(t: Array) -> Array:
        return (
            hv(t + 2 * step) - 2.0 * hv(t + step) + 2.0 * hv(t - step) - hv(t - 2 * step)
        ) / (2.0 * step**3)

    sign = 1 if float(d2(np.asarray([np.pi / 2.0]))[0]) >= 0.0 else -1
    probe = float(hv(np.asarray([0.31]))[0])
    odd = bool(abs(float(hv(np.asarray([-0.31]))[0]) + probe) < 1e-8 * max(1.0, abs(probe)))
    return PhaseFunction(
        h=hv, d1=d1, d2=d2, d3=d3, winding_k=winding_k, odd=odd, sign=sign, label=label
    )


# ---------------------------------------------------------------------------
# Validation
# ---------------------------------------------------------------------------


def validate(
    phase: PhaseFunction,
    grid_size: int = 256,
    doubling_limit: float = 64.0,
    corner: float = math.pi / 8.0,
) -> ValidationReport:
    """Structural checks: periodicity, symmetry, convexity, endpoint growth.

    Regularity near the endpoints is probed through the doubling ratio
    |h''(2s)| / |h''(s)| on a dyadic ladder descending from the corner
    scale; a ratio staying below ``doubling_limit`` certifies the
    controlled growth the partition machinery relies on.  This is a
    sampled proxy for the true supremum, as any finite check must be.
    """
    msgs: list[str] = []
    t = np.linspace(-np.pi + 1e-6, np.pi - 1e-6, grid_size)

    hv = phase.h(t)
    per = phase.h(t + 2.0 * np.pi) - hv - 2.0 * np.pi * phase.winding_k
    periodicity_ok = bool(np.max(np.abs(per)) < 1e-8)
    if not periodicity_ok:
        msgs.append(
            f"h(t+2pi) - h(t) deviates from 2pi*{phase.winding_k} by up to "
            f"{np.max(np.abs(per)):.3e}"
        )

    if phase.odd:
        sym = phase.h(-t) + hv
        symmetry_ok = bool(np.max(np.abs(sym)) < 1e-8)
        if not symmetry_ok:
            msgs.append(f"declared odd but h(-t)+h(t) reaches {np.max(np.abs(sym)):.3e}")
    else:
        symmetry_ok = True
        msgs.append("phase not declared odd; symmetry not required")

    ti = np.linspace(_INTERIOR_MARGIN, np.pi - _INTERIOR_MARGIN, grid_size)[1:-1]
    curv = phase.sign * phase.d2(ti)
    sign_ok = bool(np.all(curv > 0.0))
    if not sign_ok:
        bad = int(np.sum(curv <= 0.0))
        msgs.append(
            f"sign*h'' fails to stay positive on (0, pi) at {bad}/{curv.size} samples"
        )

    def endpoint_ratio(at_zero: bool) -> float:
        scales = corner / 2.0 ** np.arange(0, 24)
        pts = scales if at_zero else np.pi - scales
        vals = np.abs(phase.d2(pts))
        if np.any(vals < 1e-300):
            return math.inf
        ratios = vals[:-1] / vals[1:]  # |h''(2s)| / |h''(s)|
        return float(np.max(ratios))

    ratio0 = endpoint_ratio(True)
    ratiopi = endpoint_ratio(False)
    regularity_0_ok = ratio0 < doubling_limit
    regularity_pi_ok = ratiopi < doubling_limit
    if not regularity_0_ok:
        msgs.append(f"doubling ratio of h'' near 0 is {ratio0:.3g} (limit {doubling_limit:g})")
    if not regularity_pi_ok:
        msgs.append(
            f"doubling ratio of h'' near pi is {ratiopi:.3g} (limit {doubling_limit:g})"
        )

    return ValidationReport(
        label=phase.label,
        periodicity_ok=periodicity_ok,
        symmetry_ok=symmetry_ok,
        sign_ok=sign_ok,
        regularity_0_ok=regularity_0_ok,
        regularity_pi_ok=regularity_pi_ok,
        doubling_ratio_0=ratio0,
        doubling_ratio_pi=ratiopi,
        messages=msgs,
    )


def require_valid(phase: PhaseFunction) -> PhaseFunction:
    """Normalize and validate, raising DomainError with the report on failure."""
    norm = phase.normalized()
    report = validate(norm)
    if not report.passed:
        raise DomainError(
            f"phase {phase.label!r} fails validation: " + "; ".join(report.messages)
        )
    return norm


# ---------------------------------------------------------------------------
# Inverse slope and Legendre transform
# ---------------------------------------------------------------------------


def _invert_increasing_slope(norm: PhaseFunction, targets: np.ndarray) -> np.ndarray:
    """Solve g'(t) = target on [0, pi] for a normalized phase (g'' > 0).

    Vectorized bisection with a short Newton polish.  Targets must lie
    in [g'(0), g'(pi)], up to a relative fuzz absorbed by clipping.
    """
    lo_val = float(norm.d1(np.asarray(0.0)))
    hi_val = float(norm.d1(np.asarray(np.pi)))
    fuzz = 1e-12 * max(1.0, abs(lo_val), abs(hi_val))
    if np.any(targets < lo_val - fuzz) or np.any(targets > hi_val + fuzz):
        raise DomainError(
            f"slope target outside [h'(0), h'(pi)] = [{lo_val!r}, {hi_val!r}]"
        )
    targets = np.clip(targets, lo_val, hi_val)

    lo = np.zeros_like(targets)
    hi = np.full_like(targets, np.pi)
    for _ in range(60):
        mid = 0.5 * (lo + hi)
        below = norm.d1(mid) < targets
        lo = np.where(below, mid, lo)
        hi = np.where(below, hi, mid)
    t = 0.5 * (lo + hi)
    for _ in range(2):  # Newton polish; g'' > 0 keeps it stable
        df = norm.d2(t)
        safe = df > 0.0
        stepv = np.where(safe, (norm.d1(t) - targets) / np.where(safe, df, 1.0), 0.0)
        t = np.clip(t - stepv, lo, hi)
    return t


def psi(phase: PhaseFunction, x: float | Array) -> float | Array:
    """Inverse of the raw slope h' on [0, pi].

    h' is strictly monotone there (h'' has one sign), increasing when
    sign = +1 and decreasing when sign = -1; both orientations are
    handled.  For h = sin this is arccos.  The slope is attained on the
    open interval only, so x must lie strictly between h'(0) and h'(pi);
    anything else raises DomainError.
    """
    norm = phase.normalized()
    xs = np.atleast_1d(np.asarray(x, dtype=float)) * phase.sign
    lo_val = float(norm.d1(np.asarray(0.0)))
    hi_val = float(norm.d1(np.asarray(np.pi)))
    if np.any(xs <= lo_val) or np.any(xs >= hi_val):
        a = float(phase.d1(np.asarray(0.0)))
        b = float(phase.d1(np.asarray(np.pi)))
        raise DomainError(
            f"slope target {x!r} not strictly between h'(0) = {a!r} and "
            f"h'(pi) = {b!r} for {phase.label!r}"
        )
    t = _invert_increasing_slope(norm, xs)
    if np.asarray(x).ndim == 0:
        return float(t[0])
    return t


def legendre(phase: PhaseFunction, x: float) -> float:
    """The Legendre-type transform x * psi(x) - h(psi(x)) of the raw phase.

    For h = sin this is x*arccos(x) - sqrt(1 - x^2); the stationary
    exponent at index nu is n times this transform of the normalized
    phase at nu/n, negated (see :mod:`wnl.stationary`).
    """
    t = psi(phase, float(x))
    return float(x * t - float(phase.h(np.asarray(t))))


# ---------------------------------------------------------------------------
# Modulus of continuity and the cutoff scale
# ---------------------------------------------------------------------------


def modulus_of_continuity(
    phase: PhaseFunction, delta: float, grid_size: int = 4096
) -> float:
    """omega(delta) = sup |h''(u) - h''(v)| over |u - v| <= delta in [0, pi].

    Sliding-window extrema over a uniform grid, with linear
    interpolation between the two bracketing integer window widths so
    the result is continuous in delta (a plain floor produces staircase
    artifacts that poison root finding in :func:`choose_phi`).
    """
    if not (0.0 < delta <= np.pi):
        raise DomainError(f"delta must lie in (0, pi], got {delta!r}")
    spacing = np.pi / (grid_size - 1)
    if delta < 4.0 * spacing:
        raise DomainError(
            f"delta {delta:.3e} is below 4 grid spacings ({4 * spacing:.3e}); "
            "raise grid_size"
        )
    samples = phase.d2(np.linspace(0.0, np.pi, grid_size))
    return _omega_from_samples(samples, spacing, delta)


def _window_extrema(f: np.ndarray, length: int, maximum: bool) -> np.ndarray:
    """Rolling max (or min) over every length-``length`` window, in O(n).

    Block prefix/suffix scans: any window of that exact length spans at
    most two consecutive blocks, so its extreme is the suffix scan of
    the first block joined with the prefix scan of the second.
    """
    ufunc = np.maximum if maximum else np.minimum
    fill = -np.inf if maximum else np.inf
    n = f.size
    pad = (-n) % length
    fp = np.concatenate([f, np.full(pad, fill)]) if pad else f
    blocks = fp.reshape(-1, length)
    pref = ufunc.accumulate(blocks, axis=1).ravel()
    suff = ufunc.accumulate(blocks[:, ::-1], axis=1)[:, ::-1].ravel()
    return ufunc(suff[: n - length + 1], pref[length - 1 : n])


def _sliding_range_max(f: np.ndarray, width: int) -> float:
    """max over i of (max - min) of f[i : i + width + 1]."""
    length = min(width, f.size - 1) + 1
    hi = _window_extrema(f, length, maximum=True)
    lo = _window_extrema(f, length, maximum=False)
    return float(np.max(hi - lo))


def _omega_from_samples(samples: np.ndarray, spacing: float, delta: float) -> float:
    w = delta / spacing
    w0 = int(math.floor(w))
    frac = w - w0
    lo = _sliding_range_max(samples, max(w0, 1))
    if frac == 0.0 or w0 + 1 >= samples.size:
        return lo
    hi = _sliding_range_max(samples, w0 + 1)
    return lo + frac * (hi - lo)


def choose_phi(phase: PhaseFunction, n: float, grid_size: int = 16384) -> float:
    """The cutoff scale Phi solving omega(Phi / sqrt(n)) * Phi^4 = 1.

    omega is the modulus of continuity of h'' on [0, pi]; the product is
    nondecreasing in Phi, so bisection on [1, n^(1/4)] finds the root.
    The scale n may be any real >= 2 (the construction is continuous in
    n, and real scales are first-class downstream).  Degenerate cases
    clamp: if omega never lifts the product to 1 the upper end is
    returned with a warning (h'' constant, e.g. a linear phase), and if
    the product already exceeds 1 at Phi = 1 the lower end is returned.
    """
    if not (n >= 2):
        raise DomainError(f"n must be at least 2, got {n!r}")
    spacing = np.pi / (grid_size - 1)
    sqrt_n = math.sqrt(n)
    upper = n**0.25
    if 1.0 / sqrt_n < 4.0 * spacing:
        raise DomainError(
            f"n = {n} needs delta resolution below {4 * spacing:.3e}; raise grid_size"
        )
    samples = phase.d2(np.linspace(0.0, np.pi, grid_size))

    def product(p: float) -> float:
        return _omega_from_samples(samples, spacing, p / sqrt_n) * p**4

    if product(upper) <= 1.0:
        warnings.warn(
            f"omega(h'') too small to reach the cutoff equation for {phase.label!r}; "
            f"clamping Phi to n^(1/4) = {upper:.6g}",
            stacklevel=2,
        )
        return upper
    if product(1.0) >= 1.0:
        return 1.0
    lo, hi = 1.0, upper
    for _ in range(80):
        mid = 0.5 * (lo + hi)
        if product(mid) < 1.0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


# ---------------------------------------------------------------------------
# Index partition
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class TermPartition:
    """Four-way split of integer indices at scale n.

    With g the normalized phase (g'' > 0), alpha = g'(0), beta = g'(pi),
    delta = min(Phi_n / sqrt(n), pi/8) and

        alpha_n = max(g'(2 delta), alpha + 1/n),
        beta_n  = min(g'(pi - 2 delta), beta - 1/n),

    the index line splits into external (nu <= alpha*n + 1 or
    nu >= beta*n - 1), left periphery (alpha*n + 1 < nu < alpha_n * n),
    central (alpha_n * n <= nu <= beta_n * n) and right periphery
    (beta_n * n < nu < beta*n - 1).  Every integer lands in exactly one
    class; when the central window holds no integer (tiny n) the
    periphery is split at the midpoint so the cover stays disjoint.

    n is usually an integer but any real scale >= 2 is accepted; the
    seams are derived from real arithmetic either way.
    """

    n: float
    phi: float
    delta: float
    alpha: float
    beta: float
    alpha_n: float
    beta_n: float
    label: str

    # real-valued seams
    @property
    def a1(self) -> float:
        return self.alpha * self.n + 1.0

    @property
    def a2(self) -> float:
        return self.alpha_n * self.n

    @property
    def b2(self) -> float:
        return self.beta_n * self.n

    @property
    def b1(self) -> float:
        return self.beta * self.n - 1.0

    # integer seams, mutually consistent by construction
    @property
    def ext_left_max(self) -> int:
        """Largest external index on the left (nu <= alpha*n + 1)."""
        return math.floor(self.a1)

    @property
    def ext_right_min(self) -> int:
        """Smallest external index on the right (nu >= beta*n - 1)."""
        return math.ceil(self.b1)

    @property
    def _central_lo(self) -> int:
        return max(math.ceil(self.a2), self.ext_left_max + 1)

    @property
    def _central_hi(self) -> int:
        return min(math.floor(self.b2), self.ext_right_min - 1)

    @property
    def central_empty(self) -> bool:
        return self._central_lo > self._central_hi

    @property
    def _split(self) -> int:
        """Left/right boundary used only when the central window is empty."""
        mid = math.floor(0.5 * (self.a2 + self.b2))
        return min(max(mid, self.ext_left_max), self.ext_right_min - 1)

    def central_range(self) -> range:
        if self.central_empty:
            return range(0, 0)
        return range(self._central_lo, self._central_hi + 1)

    def periphery_left_range(self) -> range:
        if self.central_empty:
            return range(self.ext_left_max + 1, self._split + 1)
        return range(self.ext_left_max + 1, self._central_lo)

    def periphery_right_range(self) -> range:
        if self.central_empty:
            return range(self._split + 1, self.ext_right_min)
        return range(self._central_hi + 1, self.ext_right_min)

    def classify(self, nu: int) -> str:
        """One of 'external', 'periphery_left', 'central', 'periphery_right'."""
        nu = int(nu)
        if nu <= self.ext_left_max or nu >= self.ext_right_min:
            return "external"
        if self.central_empty:
            return "periphery_left" if nu <= self._split else "periphery_right"
        if nu < self._central_lo:
            return "periphery_left"
        if nu > self._central_hi:
            return "periphery_right"
        return "central"

    def masks(self, nu: np.ndarray) -> dict[str, np.ndarray]:
        """Boolean masks over an integer index array, one per class."""
        nu = np.asarray(nu)
        external = (nu <= self.ext_left_max) | (nu >= self.ext_right_min)
        inside = ~external
        if self.central_empty:
            central = np.zeros_like(external)
            pleft = inside & (nu <= self._split)
            pright = inside & (nu > self._split)
        else:
            central = inside & (nu >= self._central_lo) & (nu <= self._central_hi)
            pleft = inside & (nu < self._central_lo)
            pright = inside & (nu > self._central_hi)
        return {
            "external": external,
            "periphery_left": pleft,
            "central": central,
            "periphery_right": pright,
        }


def partition_terms(
    phase: PhaseFunction, n: float, grid_size: int = 16384
) -> TermPartition:
    """Build the four-way index partition at scale n (real n >= 2).

    Works on the normalized phase; validation must pass.  delta is
    clamped to pi/8 so the slope probes at 2*delta stay inside (0, pi/2).
    """
    if not (n >= 2):
        raise DomainError(f"n must be at least 2, got {n!r}")
    norm = require_valid(phase)
    phi = choose_phi(norm, n, grid_size=grid_size)
    delta = min(phi / math.sqrt(n), math.pi / 8.0)
    alpha = float(norm.d1(np.asarray(0.0)))
    beta = float(norm.d1(np.asarray(np.pi)))
    alpha_n = max(float(norm.d1(np.asarray(2.0 * delta))), alpha + 1.0 / n)
    beta_n = min(float(norm.d1(np.asarray(np.pi - 2.0 * delta))), beta - 1.0 / n)
    return TermPartition(
        n=n,
        phi=phi,
        delta=delta,
        alpha=alpha,
        beta=beta,
        alpha_n=alpha_n,
        beta_n=beta_n,
        label=norm.label,
    )
