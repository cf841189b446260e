"""Exact representations of sets of positive integers built from runs.

A set is either finite and explicit (a window bitmap or a list of runs of
consecutive integers) or an infinite symbolic generator (all positive
integers, a congruence class, or an indexed family of runs whose i-th run
has length i).  Every representation answers membership, run search,
translation, and dilation with exact arbitrary-precision arithmetic, so
queries against astronomically large elements stay cheap and correct.

All values are immutable once constructed and safe to share across
threads.  The integer 0 is never a member of any set here, even when an
explicit window happens to cover it.
"""

from __future__ import annotations

import math
from bisect import bisect_right
from dataclasses import dataclass
from typing import Iterable, Iterator

from .errors import HorizonExceeded, NegativeResult, OverlapError, ParseError

__all__ = [
    "Run",
    "Window",
    "IntSet",
    "ExplicitWindow",
    "RunList",
    "PowRuns",
    "PolyRuns",
    "Congruence",
    "Full",
    "AffineImage",
    "parse_set",
    "serialize_set",
    "nth_root_floor",
    "decimal_digits",
]


def decimal_digits(x: int) -> int:
    """Decimal digit count of x >= 0, via bit length (log10(2) ~ 0.30103)."""
    if x < 10:
        return 1
    return (x.bit_length() * 30103) // 100000 + 1


def nth_root_floor(x: int, p: int) -> int:
    """Largest r >= 0 with r**p <= x, by integer Newton iteration."""
    if x < 0:
        raise ValueError("negative radicand")
    if p < 1:
        raise ValueError("root degree must be >= 1")
    if p == 1 or x < 2:
        return x
    if p == 2:
        return math.isqrt(x)
    # start from an overestimate so the iteration decreases monotonically
    r = 1 << -(-x.bit_length() // p)
    while True:
        nr = ((p - 1) * r + x // r ** (p - 1)) // p
        if nr >= r:
            break
        r = nr
    while r ** p > x:
        r -= 1
    while (r + 1) ** p <= x:
        r += 1
    return r


@dataclass(frozen=True)
class Run:
    """The interval of consecutive integers [start, start + length - 1]."""

    start: int
    length: int

    def __post_init__(self):
        if self.start < 1:
            raise ValueError(f"run start must be positive, got {self.start}")
        if self.length < 1:
            raise ValueError(f"run length must be >= 1, got {self.length}")

    @property
    def end(self) -> int:
        return self.start + self.length - 1

    def __contains__(self, x: int) -> bool:
        return self.start <= x <= self.end

    def __iter__(self) -> Iterator[int]:
        return iter(range(self.start, self.end + 1))


@dataclass(frozen=True)
class Window:
    """A finite evaluation region [base, base + length - 1] of the line."""

    base: int
    length: int

    def __post_init__(self):
        if self.base < 0:
            raise ValueError(f"window base must be >= 0, got {self.base}")
        if self.length < 1:
            raise ValueError(f"window length must be >= 1, got {self.length}")

    @property
    def end(self) -> int:
        return self.base + self.length - 1


class IntSet:
    """Base class for immutable sets of positive integers.

    Subclasses fall in two groups.  Finite representations (ExplicitWindow,
    RunList) store their elements outright.  Symbolic representations
    (Full, Congruence, PowRuns, PolyRuns, AffineImage) answer queries by
    formula and may describe infinite sets.
    """

    def member(self, x: int) -> bool:
        """Exact membership; always False for x < 1."""
        raise NotImplementedError

    def __contains__(self, x: int) -> bool:
        return self.member(x)

    def translate(self, t: int) -> IntSet:
        """The set {x + t}; raises NegativeResult if any x + t < 1."""
        raise NotImplementedError

    def dilate(self, m: int, r: int = 0) -> IntSet:
        """The set {m*x + r} for m >= 1, r >= 0."""
        raise NotImplementedError

    def next_run(self, min_len: int, lower_bound: int = 0) -> Run | None:
        """Smallest-start run of min_len consecutive members at or above lower_bound.

        Returns a Run of exactly min_len (its start may sit inside a longer
        run of the set), None when the set provably has no such run, and
        raises HorizonExceeded when a finite representation is exhausted
        without an answer.
        """
        raise NotImplementedError

    def contains_run(self, start: int, length: int) -> bool | None:
        """Whether [start, start+length-1] lies inside the set.

        ExplicitWindow returns None when part of the interval falls outside
        its window and no counterexample exists inside; every other
        representation decides fully.
        """
        raise NotImplementedError

    def next_run_start_digits(self, min_len: int, lower_bound: int = 0) -> int | None:
        """Rough decimal digit count of next_run's start, without computing it.

        Run generators grow so fast that the start of the next admissible
        run can be too large to represent at all; this estimate (within a
        couple of digits when not None) lets callers enforce size budgets
        before asking for the run.  None means "unknown, but searching is
        safe".
        """
        return None

    def first_gap(self, start: int, end: int) -> int | None:
        """Smallest x in [start, end] that is not a member, or None."""
        if start > end:
            return None
        if not self.member(start):
            return start
        stop = self._run_end_at(start)
        if stop is None or stop >= end:
            return None
        # maximal runs are separated by gaps, so stop+1 is a non-member
        return stop + 1

    def _run_end_at(self, x: int) -> int | None:
        """End of the maximal run containing member x; None if unbounded."""
        raise NotImplementedError

    def min_element(self) -> int | None:
        raise NotImplementedError

    def materialize(self, window: Window) -> "ExplicitWindow":
        """Exact bitmap of the intersection with the window."""
        bits = 0
        for off in range(window.length):
            if self.member(window.base + off):
                bits |= 1 << off
        return ExplicitWindow(window, bits)


class ExplicitWindow(IntSet):
    """Bitmap of a set's intersection with a finite window.

    Bit i of ``bits`` records membership of ``window.base + i``.  Whatever
    the set looked like outside the window is not represented; as a set
    value, an ExplicitWindow contains exactly its set bits.
    """

    __slots__ = ("window", "bits")

    def __init__(self, window: Window, bits: int):
        if bits < 0 or bits >> window.length:
            raise ValueError("bitmap does not fit the window")
        if window.base == 0 and bits & 1:
            raise ValueError("0 cannot be a member of a positive-integer set")
        self.window = window
        self.bits = bits

    @classmethod
    def from_elements(cls, window: Window, elements: Iterable[int]) -> "ExplicitWindow":
        bits = 0
        for x in elements:
            if not window.base <= x <= window.end:
                raise ValueError(f"element {x} outside window")
            bits |= 1 << (x - window.base)
        return cls(window, bits)

    def member(self, x: int) -> bool:
        if x < 1 or not self.window.base <= x <= self.window.end:
            return False
        return bool((self.bits >> (x - self.window.base)) & 1)

    def count(self) -> int:
        return self.bits.bit_count()

    def elements(self) -> Iterator[int]:
        """Members in ascending order."""
        base = self.window.base
        data = self.bits.to_bytes((self.window.length + 7) // 8, "little")
        for byte_idx, byte in enumerate(data):
            while byte:
                low = byte & -byte
                yield base + byte_idx * 8 + low.bit_length() - 1
                byte ^= low

    def min_element(self) -> int | None:
        if self.bits == 0:
            return None
        return self.window.base + (self.bits & -self.bits).bit_length() - 1

    def max_element(self) -> int | None:
        if self.bits == 0:
            return None
        return self.window.base + self.bits.bit_length() - 1

    def runs(self) -> list[Run]:
        """Maximal runs of members, ascending."""
        out = []
        b = self.bits
        base = self.window.base
        while b:
            start_off = (b & -b).bit_length() - 1
            shifted = b >> start_off
            length = (~shifted & (shifted + 1)).bit_length() - 1
            out.append(Run(base + start_off, length))
            b &= ~(((1 << length) - 1) << start_off)
        return out

    def to_run_list(self) -> "RunList":
        return RunList(self.runs())

    def translate(self, t: int) -> "ExplicitWindow":
        if t == 0:
            return self
        lo = self.min_element()
        if lo is not None and lo + t < 1:
            raise NegativeResult(f"element {lo} shifted by {t} leaves the positive integers")
        new_base = self.window.base + t
        if new_base >= 0:
            return ExplicitWindow(Window(new_base, self.window.length), self.bits)
        # re-anchor at 0; the dropped low positions are all below any element
        shift = -new_base
        if shift >= self.window.length:
            return ExplicitWindow(Window(0, 1), 0)
        return ExplicitWindow(Window(0, self.window.length - shift), self.bits >> shift)

    def dilate(self, m: int, r: int = 0) -> "ExplicitWindow":
        _check_dilation(m, r)
        if m == 1:
            return self.translate(r)
        w = Window(self.window.base * m + r, (self.window.length - 1) * m + 1)
        bits = 0
        base = self.window.base
        for x in self.elements():
            bits |= 1 << ((x - base) * m)
        return ExplicitWindow(w, bits)

    def next_run(self, min_len: int, lower_bound: int = 0) -> Run:
        _check_min_len(min_len)
        for run in self.runs():
            b = max(run.start, lower_bound)
            if b + min_len - 1 <= run.end:
                return Run(b, min_len)
        raise HorizonExceeded(
            f"no run of length {min_len} at or above {lower_bound} inside the window"
        )

    def contains_run(self, start: int, length: int) -> bool | None:
        end = start + length - 1
        if start < 1:
            return False
        w = self.window
        in_lo, in_hi = max(start, w.base), min(end, w.end)
        if in_lo <= in_hi:
            mask = ((1 << (in_hi - in_lo + 1)) - 1) << (in_lo - w.base)
            if self.bits & mask != mask:
                return False
        if start < w.base or end > w.end:
            return None
        return True

    def _run_end_at(self, x: int) -> int:
        off = x - self.window.base
        tail = self.bits >> off
        ones = (~tail & (tail + 1)).bit_length() - 1
        return x + ones - 1

    def materialize(self, window: Window) -> "ExplicitWindow":
        if window == self.window:
            return self
        delta = self.window.base - window.base
        bits = self.bits << delta if delta >= 0 else self.bits >> -delta
        bits &= (1 << window.length) - 1
        return ExplicitWindow(window, bits)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, ExplicitWindow)
            and self.window == other.window
            and self.bits == other.bits
        )

    def __hash__(self) -> int:
        return hash((self.window, self.bits))

    def __repr__(self) -> str:
        return f"ExplicitWindow({self.window!r}, count={self.count()})"


class RunList(IntSet):
    """Finite set stored as sorted, disjoint, non-adjacent runs.

    Overlapping or adjacent input runs are merged at construction, so the
    stored runs are maximal and separated by gaps of at least one integer.
    """

    __slots__ = ("runs", "_starts")

    def __init__(self, runs: Iterable[Run] = ()):
        merged: list[Run] = []
        for run in sorted(runs, key=lambda r: r.start):
            if merged and run.start <= merged[-1].end + 1:
                last = merged[-1]
                new_end = max(last.end, run.end)
                merged[-1] = Run(last.start, new_end - last.start + 1)
            else:
                merged.append(run)
        self.runs = tuple(merged)
        self._starts = [r.start for r in merged]

    @classmethod
    def from_elements(cls, elements: Iterable[int]) -> "RunList":
        return cls(Run(x, 1) for x in set(elements))

    def _locate(self, x: int) -> Run | None:
        i = bisect_right(self._starts, x) - 1
        if i >= 0 and x <= self.runs[i].end:
            return self.runs[i]
        return None

    def member(self, x: int) -> bool:
        return x >= 1 and self._locate(x) is not None

    def elements(self) -> Iterator[int]:
        for run in self.runs:
            yield from run

    def min_element(self) -> int | None:
        return self.runs[0].start if self.runs else None

    def max_element(self) -> int | None:
        return self.runs[-1].end if self.runs else None

    def translate(self, t: int) -> "RunList":
        if t == 0 or not self.runs:
            return self
        if self.runs[0].start + t < 1:
            raise NegativeResult(
                f"element {self.runs[0].start} shifted by {t} leaves the positive integers"
            )
        return RunList(Run(r.start + t, r.length) for r in self.runs)

    def dilate(self, m: int, r: int = 0) -> "RunList":
        _check_dilation(m, r)
        if m == 1:
            return self.translate(r)
        # stride m >= 2 turns every element into its own run
        return RunList(Run(m * x + r, 1) for run in self.runs for x in run)

    def next_run(self, min_len: int, lower_bound: int = 0) -> Run:
        _check_min_len(min_len)
        for run in self.runs:
            b = max(run.start, lower_bound)
            if b + min_len - 1 <= run.end:
                return Run(b, min_len)
        raise HorizonExceeded(
            f"no run of length {min_len} at or above {lower_bound} in the run list"
        )

    def contains_run(self, start: int, length: int) -> bool:
        if start < 1:
            return False
        run = self._locate(start)
        return run is not None and start + length - 1 <= run.end

    def _run_end_at(self, x: int) -> int:
        run = self._locate(x)
        assert run is not None
        return run.end

    def materialize(self, window: Window) -> ExplicitWindow:
        bits = 0
        for run in self.runs:
            lo = max(run.start, window.base, 1)
            hi = min(run.end, window.end)
            if lo <= hi:
                bits |= ((1 << (hi - lo + 1)) - 1) << (lo - window.base)
        return ExplicitWindow(window, bits)

    def __eq__(self, other) -> bool:
        return isinstance(other, RunList) and self.runs == other.runs

    def __hash__(self) -> int:
        return hash(self.runs)

    def __repr__(self) -> str:
        return f"RunList({list(self.runs)!r})"


@dataclass(frozen=True)
class Full(IntSet):
    """All positive integers."""

    def member(self, x: int) -> bool:
        return x >= 1

    def min_element(self) -> int:
        return 1

    def translate(self, t: int) -> IntSet:
        return AffineImage.of(self, 1, t)

    def dilate(self, m: int, r: int = 0) -> IntSet:
        _check_dilation(m, r)
        return AffineImage.of(self, m, r)

    def next_run(self, min_len: int, lower_bound: int = 0) -> Run:
        _check_min_len(min_len)
        return Run(max(lower_bound, 1), min_len)

    def contains_run(self, start: int, length: int) -> bool:
        return start >= 1

    def first_gap(self, start: int, end: int) -> int | None:
        if start > end:
            return None
        return start if start < 1 else None

    def _run_end_at(self, x: int) -> None:
        return None

    def materialize(self, window: Window) -> ExplicitWindow:
        lo = max(window.base, 1)
        if lo > window.end:
            return ExplicitWindow(window, 0)
        count = window.end - lo + 1
        return ExplicitWindow(window, ((1 << count) - 1) << (lo - window.base))


@dataclass(frozen=True)
class Congruence(IntSet):
    """Positive integers congruent to r modulo m."""

    m: int
    r: int

    def __post_init__(self):
        if self.m < 1:
            raise ValueError(f"modulus must be >= 1, got {self.m}")
        if not 0 <= self.r < self.m:
            raise ValueError(f"residue must lie in [0, {self.m - 1}], got {self.r}")

    def member(self, x: int) -> bool:
        return x >= 1 and x % self.m == self.r

    def min_element(self) -> int:
        return self.r if self.r >= 1 else self.m

    def translate(self, t: int) -> IntSet:
        return AffineImage.of(self, 1, t)

    def dilate(self, m: int, r: int = 0) -> IntSet:
        _check_dilation(m, r)
        return AffineImage.of(self, m, r)

    def next_run(self, min_len: int, lower_bound: int = 0) -> Run | None:
        _check_min_len(min_len)
        lb = max(lower_bound, 1)
        if self.m == 1:
            return Run(lb, min_len)
        if min_len >= 2:
            # two consecutive integers cannot share a residue mod m >= 2
            return None
        lo = max(lb, self.min_element())
        return Run(lo + (self.r - lo) % self.m, 1)

    def contains_run(self, start: int, length: int) -> bool:
        if start < 1:
            return False
        if self.m == 1:
            return True
        return length == 1 and self.member(start)

    def first_gap(self, start: int, end: int) -> int | None:
        if self.m == 1:
            if start > end:
                return None
            return start if start < 1 else None
        return super().first_gap(start, end)

    def _run_end_at(self, x: int) -> int | None:
        return None if self.m == 1 else x

    def materialize(self, window: Window) -> ExplicitWindow:
        if self.m == 1:
            return Full().materialize(window)
        first = max(window.base, self.min_element())
        first += (self.r - first) % self.m
        bits = 0
        for x in range(first, window.end + 1, self.m):
            bits |= 1 << (x - window.base)
        return ExplicitWindow(window, bits)


class _IndexedRuns(IntSet):
    """Union of disjoint runs run(i) for i >= 1.

    Subclasses supply strictly increasing run starts with run(i) of length
    i, and starts growing fast enough that consecutive runs never touch.
    """

    def _run(self, i: int) -> Run:
        raise NotImplementedError

    def _index_for(self, x: int) -> int | None:
        """Largest i >= 1 with run(i).start <= x, or None."""
        raise NotImplementedError

    def runs_disjoint_upto(self, i_max: int) -> bool:
        return all(
            self._run(i).end < self._run(i + 1).start for i in range(1, i_max + 1)
        )

    def member(self, x: int) -> bool:
        if x < 1:
            return False
        i = self._index_for(x)
        return i is not None and x <= self._run(i).end

    def min_element(self) -> int:
        return self._run(1).start

    def translate(self, t: int) -> IntSet:
        return AffineImage.of(self, 1, t)

    def dilate(self, m: int, r: int = 0) -> IntSet:
        _check_dilation(m, r)
        return AffineImage.of(self, m, r)

    def _next_run_index(self, min_len: int, lower_bound: int) -> int | None:
        """Index of the run holding next_run's answer; None if it starts at
        the lower bound inside a straddled run."""
        lb = max(lower_bound, 1)
        i_lo = self._index_for(lb)
        if i_lo is not None and lb + min_len - 1 <= self._run(i_lo).end:
            return None
        # otherwise the earliest candidate is the first whole run that is
        # both long enough and past lb
        return max(min_len, 1 if i_lo is None else i_lo + 1)

    def next_run(self, min_len: int, lower_bound: int = 0) -> Run:
        _check_min_len(min_len)
        i = self._next_run_index(min_len, lower_bound)
        if i is None:
            return Run(max(lower_bound, 1), min_len)
        return Run(self._run(i).start, min_len)

    def next_run_start_digits(self, min_len: int, lower_bound: int = 0) -> int:
        _check_min_len(min_len)
        i = self._next_run_index(min_len, lower_bound)
        if i is None:
            return decimal_digits(max(lower_bound, 1))
        return self._start_digits(i)

    def _start_digits(self, i: int) -> int:
        raise NotImplementedError

    def contains_run(self, start: int, length: int) -> bool:
        if start < 1:
            return False
        i = self._index_for(start)
        if i is None:
            return False
        return start + length - 1 <= self._run(i).end

    def _run_end_at(self, x: int) -> int:
        i = self._index_for(x)
        assert i is not None
        return self._run(i).end

    def materialize(self, window: Window) -> ExplicitWindow:
        bits = 0
        i = self._index_for(window.base) or 1
        prev_end = None
        while True:
            run = self._run(i)
            if run.start > window.end:
                break
            if prev_end is not None and prev_end >= run.start:
                raise AssertionError(f"runs {i - 1} and {i} are not disjoint")
            lo = max(run.start, window.base)
            hi = min(run.end, window.end)
            if lo <= hi:
                bits |= ((1 << (hi - lo + 1)) - 1) << (lo - window.base)
            prev_end = run.end
            i += 1
        return ExplicitWindow(window, bits)


@dataclass(frozen=True)
class PowRuns(_IndexedRuns):
    """Runs [c**i, c**i + i - 1] for every i >= 1, with base c >= 2."""

    c: int

    def __post_init__(self):
        if self.c < 2:
            raise ValueError(f"base must be >= 2, got {self.c}")

    def _run(self, i: int) -> Run:
        return Run(self.c ** i, i)

    def _start_digits(self, i: int) -> int:
        if i.bit_length() > 60:
            # the start itself is too large to ever represent
            return 1 << 62
        return int(i * math.log10(self.c)) + 1

    def _index_for(self, x: int) -> int | None:
        if x < self.c:
            return None
        i = max(1, int((x.bit_length() - 1) / math.log2(self.c)))
        while self.c ** (i + 1) <= x:
            i += 1
        while i > 1 and self.c ** i > x:
            i -= 1
        return i if self.c ** i <= x else None


@dataclass(frozen=True)
class PolyRuns(_IndexedRuns):
    """Runs [i**p, i**p + i - 1] for every i >= 1, with exponent p >= 2."""

    p: int

    def __post_init__(self):
        if self.p < 2:
            raise ValueError(f"exponent must be >= 2, got {self.p}")

    def _run(self, i: int) -> Run:
        return Run(i ** self.p, i)

    def _start_digits(self, i: int) -> int:
        return (self.p * i.bit_length() * 30103) // 100000 + 1

    def _index_for(self, x: int) -> int | None:
        if x < 1:
            return None
        i = nth_root_floor(x, self.p)
        return i if i >= 1 else None


@dataclass(frozen=True)
class AffineImage(IntSet):
    """The set {m*s + offset : s in inner}, for stride m >= 1.

    This is how translated or dilated generators are represented: run
    structure does not survive an affine map with m >= 2, but membership
    and run queries still reduce exactly to queries on the inner set.
    """

    inner: IntSet
    m: int
    offset: int

    def __post_init__(self):
        if self.m < 1:
            raise ValueError(f"stride must be >= 1, got {self.m}")
        lo = self.inner.min_element()
        if lo is not None and self.m * lo + self.offset < 1:
            raise NegativeResult(
                f"element {lo} maps to {self.m * lo + self.offset}, below 1"
            )

    @classmethod
    def of(cls, inner: IntSet, m: int, offset: int) -> IntSet:
        if isinstance(inner, AffineImage):
            return cls.of(inner.inner, m * inner.m, m * inner.offset + offset)
        if m == 1 and offset == 0:
            return inner
        return cls(inner, m, offset)

    def member(self, x: int) -> bool:
        d = x - self.offset
        return d > 0 and d % self.m == 0 and self.inner.member(d // self.m)

    def min_element(self) -> int | None:
        lo = self.inner.min_element()
        return None if lo is None else self.m * lo + self.offset

    def translate(self, t: int) -> IntSet:
        return AffineImage.of(self.inner, self.m, self.offset + t)

    def dilate(self, m: int, r: int = 0) -> IntSet:
        _check_dilation(m, r)
        return AffineImage.of(self.inner, m * self.m, m * self.offset + r)

    def next_run(self, min_len: int, lower_bound: int = 0) -> Run | None:
        _check_min_len(min_len)
        if self.m == 1:
            run = self.inner.next_run(min_len, max(lower_bound - self.offset, 0))
            return None if run is None else Run(run.start + self.offset, min_len)
        if min_len >= 2:
            return None
        s_min = max(1, -((self.offset - lower_bound) // self.m))
        run = self.inner.next_run(1, s_min)
        return None if run is None else Run(self.m * run.start + self.offset, 1)

    def next_run_start_digits(self, min_len: int, lower_bound: int = 0) -> int | None:
        _check_min_len(min_len)
        if self.m == 1:
            est = self.inner.next_run_start_digits(
                min_len, max(lower_bound - self.offset, 0)
            )
        elif min_len >= 2:
            return None
        else:
            s_min = max(1, -((self.offset - lower_bound) // self.m))
            est = self.inner.next_run_start_digits(1, s_min)
        if est is None:
            return None
        return max(est + decimal_digits(self.m), decimal_digits(abs(self.offset) + 1)) + 1

    def contains_run(self, start: int, length: int) -> bool | None:
        if start < 1:
            return False
        if self.m == 1:
            if start - self.offset < 1:
                return False
            return self.inner.contains_run(start - self.offset, length)
        return length == 1 and self.member(start)

    def _run_end_at(self, x: int) -> int | None:
        if self.m >= 2:
            return x
        e = self.inner._run_end_at(x - self.offset)
        return None if e is None else e + self.offset

    def materialize(self, window: Window) -> ExplicitWindow:
        bits = 0
        s_lo = max(1, -((self.offset - window.base) // self.m))
        s_hi = (window.end - self.offset) // self.m
        for s in range(s_lo, s_hi + 1):
            if self.inner.member(s):
                bits |= 1 << (self.m * s + self.offset - window.base)
        return ExplicitWindow(window, bits)


def _check_min_len(min_len: int) -> None:
    if min_len < 1:
        raise ValueError(f"run length must be >= 1, got {min_len}")


def _check_dilation(m: int, r: int) -> None:
    if m < 1:
        raise ValueError(f"dilation factor must be >= 1, got {m}")
    if r < 0:
        raise ValueError(f"dilation shift must be >= 0, got {r}")


_GEN_FORMS = {"pow_runs", "poly_runs", "congruence", "full"}


def parse_set(text: str) -> IntSet:
    """Parse the line-oriented set description grammar.

    One directive per line: ``run <start> <len>``, ``elem <x>``,
    ``gen pow_runs <c>``, ``gen poly_runs <p>``, ``gen congruence <m> <r>``,
    or ``gen full``.  ``#`` starts a comment; blank lines are ignored.  A
    generator directive must be the only directive in the text.  Declared
    runs may touch (they are merged) but must not overlap.
    """
    declared: list[tuple[Run, int]] = []
    gen: IntSet | None = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        head, args = parts[0], parts[1:]
        if gen is not None:
            raise ParseError("a generator must be the only directive", lineno)
        if head == "run":
            start, length = _parse_ints(args, 2, lineno)
            declared.append((_make_run(start, length, lineno), lineno))
        elif head == "elem":
            (x,) = _parse_ints(args, 1, lineno)
            declared.append((_make_run(x, 1, lineno), lineno))
        elif head == "gen":
            if declared:
                raise ParseError("a generator must be the only directive", lineno)
            gen = _parse_gen(args, lineno)
        else:
            raise ParseError(f"unknown directive {head!r}", lineno)
    if gen is not None:
        return gen
    ordered = sorted(declared, key=lambda item: item[0].start)
    for (prev, _), (cur, lineno) in zip(ordered, ordered[1:]):
        if cur.start <= prev.end:
            raise OverlapError(
                f"run [{cur.start}, {cur.end}] overlaps run [{prev.start}, {prev.end}]",
                lineno,
            )
    return RunList(run for run, _ in declared)


def _parse_ints(args: list[str], n: int, lineno: int) -> list[int]:
    if len(args) != n:
        raise ParseError(f"expected {n} argument(s), got {len(args)}", lineno)
    out = []
    for a in args:
        try:
            out.append(int(a, 10))
        except ValueError:
            raise ParseError(f"not an integer: {a!r}", lineno) from None
    return out


def _make_run(start: int, length: int, lineno: int) -> Run:
    try:
        return Run(start, length)
    except ValueError as exc:
        raise ParseError(str(exc), lineno) from None


def _parse_gen(args: list[str], lineno: int) -> IntSet:
    if not args or args[0] not in _GEN_FORMS:
        raise ParseError(
            f"generator must be one of {sorted(_GEN_FORMS)}", lineno
        )
    form, rest = args[0], args[1:]
    try:
        if form == "full":
            if rest:
                raise ParseError("gen full takes no arguments", lineno)
            return Full()
        if form == "pow_runs":
            (c,) = _parse_ints(rest, 1, lineno)
            return PowRuns(c)
        if form == "poly_runs":
            (p,) = _parse_ints(rest, 1, lineno)
            return PolyRuns(p)
        m, r = _parse_ints(rest, 2, lineno)
        return Congruence(m, r)
    except ValueError as exc:
        raise ParseError(str(exc), lineno) from None


def serialize_set(s: IntSet) -> str:
    """Render a set in the grammar accepted by parse_set.

    RunList and generator forms round-trip exactly; an ExplicitWindow is
    written as its runs (and parses back as the equal RunList).
    """
    if isinstance(s, RunList):
        runs = s.runs
    elif isinstance(s, ExplicitWindow):
        runs = tuple(s.runs())
    elif isinstance(s, PowRuns):
        return f"gen pow_runs {s.c}\n"
    elif isinstance(s, PolyRuns):
        return f"gen poly_runs {s.p}\n"
    elif isinstance(s, Congruence):
        return f"gen congruence {s.m} {s.r}\n"
    elif isinstance(s, Full):
        return "gen full\n"
    else:
        raise ValueError(f"no text form for {type(s).__name__}")
    lines = [
        f"elem {r.start}" if r.length == 1 else f"run {r.start} {r.length}"
        for r in runs
    ]
    return "\n".join(lines) + ("\n" if lines else "")
