"""Windowed occupancy profiles and density estimates.

For a set restricted to a window of length N, the profile value f[n]
(1 <= n <= N) is the maximum number of members in any block of n
consecutive positions inside the window.  The windowed density estimate
is min over n of f[n]/n, an upper bound on how densely the set can pack
any block at the scales the window exposes.

The profile is computed with a vectorized sliding-window maximum over a
prefix-sum array; numpy stays exact here because counts are small
integers.  f_naive is the independent slow path kept for cross-checks.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import BadLength, PreconditionFailed
from .intset import Congruence, ExplicitWindow, Full, IntSet, PolyRuns, PowRuns

__all__ = [
    "WindowProfile",
    "DensityEstimate",
    "RunBoundReport",
    "f_naive",
    "f_naive_all",
    "f_profile",
    "density_estimate",
    "check_subadditivity",
    "fekete_qd_check",
    "longest_run",
    "check_run_bound",
    "forced_density",
    "profile_payload",
    "profile_csv",
]


def _bit_vector(w: ExplicitWindow) -> np.ndarray:
    """0/1 membership array of length w.window.length, uint8."""
    n_bytes = (w.window.length + 7) // 8
    raw = np.frombuffer(w.bits.to_bytes(n_bytes, "little"), dtype=np.uint8)
    return np.unpackbits(raw, bitorder="little")[: w.window.length]


def f_naive(w: ExplicitWindow, n: int) -> int:
    """Best count over every block of n positions, by direct scan.

    Slow on purpose: this is the reference the fast profile is checked
    against, so it shares no machinery with f_profile.
    """
    N = w.window.length
    if not 1 <= n <= N:
        raise BadLength(f"block length must lie in [1, {N}], got {n}")
    mask = (1 << n) - 1
    best = 0
    bits = w.bits
    for u in range(N - n + 1):
        c = ((bits >> u) & mask).bit_count()
        if c > best:
            best = c
            if best == n:
                break
    return best


def f_naive_all(w: ExplicitWindow) -> tuple[int, ...]:
    """All profile values by a widening scan, f[0] = 0 sentinel first.

    Maintains counts[u] = members in [u, u + n - 1]; widening the block by
    one appends the next column.  Independent of both f_naive's bit
    scanning and f_profile's prefix sums.
    """
    a = _bit_vector(w).astype(np.int64)
    N = a.shape[0]
    out = [0]
    counts = a.copy()
    out.append(int(counts.max()))
    for n in range(2, N + 1):
        counts = counts[: N - n + 1] + a[n - 1 :]
        out.append(int(counts.max()))
    return tuple(out)


@dataclass(frozen=True)
class WindowProfile:
    """Profile values for one window; f[0] is a 0 sentinel so f[n] indexes directly."""

    window_base: int
    window_length: int
    f: tuple[int, ...]

    def __post_init__(self):
        if len(self.f) != self.window_length + 1 or self.f[0] != 0:
            raise ValueError("profile must hold one value per block length plus the 0 sentinel")

    @classmethod
    def from_values(cls, w: ExplicitWindow, values: tuple[int, ...]) -> "WindowProfile":
        return cls(w.window.base, w.window.length, values)


@dataclass(frozen=True)
class DensityEstimate:
    value: Fraction
    argmin_n: int
    windowed: bool = True


def f_profile(w: ExplicitWindow) -> WindowProfile:
    """Profile of every block length at once via prefix sums."""
    a = _bit_vector(w).astype(np.int64)
    N = a.shape[0]
    prefix = np.zeros(N + 1, dtype=np.int64)
    np.cumsum(a, out=prefix[1:])
    f = [0] * (N + 1)
    for n in range(1, N + 1):
        f[n] = int((prefix[n:] - prefix[: N - n + 1]).max())
    return WindowProfile(w.window.base, w.window.length, tuple(f))


def density_estimate(profile: WindowProfile) -> DensityEstimate:
    """min f[n]/n over the window's block lengths, smallest minimizer kept."""
    best = Fraction(profile.f[1], 1)
    best_n = 1
    for n in range(2, profile.window_length + 1):
        q = Fraction(profile.f[n], n)
        if q < best:
            best = q
            best_n = n
    return DensityEstimate(best, best_n)


def check_subadditivity(profile: WindowProfile) -> list[tuple[int, int, int]]:
    """Violations of f[n1 + n2] <= f[n1] + f[n2]; empty means the law holds.

    Every block of n1 + n2 positions splits into a block of n1 and a block
    of n2, so the count of the whole cannot beat the two maxima combined.
    Returned tuples are (n1, n2, excess) with n1 <= n2.
    """
    f = np.asarray(profile.f, dtype=np.int64)
    N = profile.window_length
    violations = []
    for n1 in range(1, N // 2 + 1):
        n2 = np.arange(n1, N - n1 + 1)
        excess = f[n1 + n2] - f[n1] - f[n2]
        for idx in np.nonzero(excess > 0)[0]:
            violations.append((n1, int(n2[idx]), int(excess[idx])))
    return violations


def fekete_qd_check(profile: WindowProfile, d: int) -> bool:
    """True iff f[n] <= (n // d) * f[d] + f[n % d] for all n in [d, N]."""
    N = profile.window_length
    if not 1 <= d <= N:
        raise BadLength(f"divisor must lie in [1, {N}], got {d}")
    f = np.asarray(profile.f, dtype=np.int64)
    ns = np.arange(d, N + 1)
    bound = (ns // d) * f[d] + f[ns % d]
    return bool(np.all(f[ns] <= bound))


def longest_run(w: ExplicitWindow) -> int:
    """Length of the longest block of consecutive members in the window."""
    x = w.bits
    length = 0
    while x:
        x &= x >> 1
        length += 1
    return length


@dataclass(frozen=True)
class RunBoundReport:
    """Outcome of checking d*f[n] < (d-1)*n + d at every block length.

    The strict bound is the exact integer form of f[n] < (1 - 1/d)*n + 1,
    which must hold whenever the set has no d consecutive members.
    """

    d: int
    longest_run: int
    n_checked: int
    failures: tuple[tuple[int, int], ...]

    @property
    def ok(self) -> bool:
        return not self.failures


def check_run_bound(w: ExplicitWindow, d: int) -> RunBoundReport:
    if d < 2:
        raise BadLength(f"run bound needs d >= 2, got {d}")
    lr = longest_run(w)
    if lr >= d:
        raise PreconditionFailed(
            f"window contains a run of {lr} consecutive members, so the "
            f"no-run-of-{d} hypothesis does not hold"
        )
    profile = f_profile(w)
    failures = tuple(
        (n, profile.f[n])
        for n in range(1, profile.window_length + 1)
        if d * profile.f[n] >= (d - 1) * n + d
    )
    return RunBoundReport(d, lr, profile.window_length, failures)


def forced_density(s: IntSet) -> Fraction | None:
    """Exact density when the representation pins it down, else None.

    The run generators contain arbitrarily long runs, which forces the
    block maxima to track block length; a congruence class hits exactly
    one position in m.
    """
    if isinstance(s, (Full, PowRuns, PolyRuns)):
        return Fraction(1)
    if isinstance(s, Congruence):
        return Fraction(1, s.m)
    return None


def profile_payload(
    profile: WindowProfile,
    estimate: DensityEstimate,
    generator_density: Fraction | None = None,
) -> dict:
    """JSON-ready report; exact fractions carried as numerator/denominator."""
    payload = {
        "window": {"base": profile.window_base, "length": profile.window_length},
        "f": list(profile.f[1:]),
        "density": {
            "num": estimate.value.numerator,
            "den": estimate.value.denominator,
            "argmin": estimate.argmin_n,
        },
    }
    if generator_density is not None:
        payload["generator_density"] = {
            "num": generator_density.numerator,
            "den": generator_density.denominator,
        }
    return payload


def profile_csv(profile: WindowProfile) -> str:
    """Rows n,f,fn_over_n with the ratio as an exact reduced fraction."""
    lines = ["n,f,fn_over_n"]
    for n in range(1, profile.window_length + 1):
        q = Fraction(profile.f[n], n)
        lines.append(f"{n},{profile.f[n]},{q.numerator}/{q.denominator}")
    return "\n".join(lines) + "\n"
