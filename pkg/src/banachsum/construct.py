"""Constructions with machine-checkable certificates.

Three builders live here, each paired with an independent verifier:

* a greedy base sequence b_1 < b_2 < ... inside a target set, chosen so
  that the sumset of runs [b_j, b_j + ell_j - 1] over ANY nonempty subset
  of indices stays inside the target;
* a split of those runs into pairwise disjoint component sets whose
  selection sumsets inherit the same containment;
* an arithmetic-progression reduction that finds the strongest dilation
  structure in a window and pulls the set back along it.

A fourth block checks, for the quadruple-power run generator, that
doubling an element of the i-th run escapes every translate of the set
once i is large enough.  Verifiers never reuse the builder's reasoning:
they recheck claims from raw membership queries and report the smallest
counterexample when one exists.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence

from .errors import (
    BudgetExceeded,
    DisjointnessViolation,
    HorizonExceeded,
    NoSuitableRun,
    PreconditionFailed,
)
from .intset import (
    ExplicitWindow,
    IntSet,
    PowRuns,
    Run,
    RunList,
    Window,
    decimal_digits,
    serialize_set,
)
from .sumset import (
    Status,
    Verdict,
    enumerate_subsets,
    family_sumset,
    run_sum,
    verify_containment,
)

__all__ = [
    "DEFAULT_DIGIT_BUDGET",
    "BSequence",
    "build_b_sequence",
    "SweepReport",
    "verify_b_sequence",
    "BFamily",
    "build_family",
    "verify_family",
    "APReduction",
    "ap_reduce",
    "escape_i0",
    "EscapeCheck",
    "EscapeReport",
    "verify_escape",
]

DEFAULT_DIGIT_BUDGET = 100_000


@dataclass(frozen=True)
class BSequence:
    """Base points b_j with run lengths ell_j and per-step run certificates.

    certificate j attests that the target set contains one unbroken run
    covering [b_j, sum_{i<=j} (b_i + ell_i) - 1].  That interval contains
    every subset sumset whose largest index is j, which is what makes
    subset verification reducible to j independent run checks.
    """

    ells: tuple[int, ...]
    bs: tuple[int, ...]
    certificates: tuple[Run, ...]

    def __post_init__(self):
        k = len(self.bs)
        if len(self.ells) != k or len(self.certificates) != k:
            raise ValueError("ells, bs, certificates must have equal length")
        if k == 0:
            raise ValueError("a base sequence needs at least one step")
        total = 0
        for j in range(k):
            b, ell, cert = self.bs[j], self.ells[j], self.certificates[j]
            if ell < 1:
                raise ValueError(f"run length {ell} at step {j + 1} must be >= 1")
            if b < 1:
                raise ValueError(f"base {b} at step {j + 1} must be >= 1")
            if j > 0 and b < self.bs[j - 1] + self.ells[j - 1]:
                raise ValueError(
                    f"base at step {j + 1} must clear the previous run entirely"
                )
            total += b + ell
            if cert.start > b or cert.end < total - 1:
                raise ValueError(
                    f"certificate at step {j + 1} must cover [{b}, {total - 1}]"
                )

    @property
    def k(self) -> int:
        return len(self.bs)

    def run(self, j: int) -> Run:
        """The j-th run (1-based)."""
        return Run(self.bs[j - 1], self.ells[j - 1])

    @classmethod
    def from_entries(cls, ells: Sequence[int], bs: Sequence[int]) -> "BSequence":
        """Build with the canonical tight certificates."""
        certs = []
        total = 0
        for b, ell in zip(bs, ells):
            total += b + ell
            certs.append(Run(b, total - b))
        return cls(tuple(ells), tuple(bs), tuple(certs))

    def to_payload(self) -> dict:
        return {
            "ells": list(self.ells),
            "bs": [str(b) for b in self.bs],
            "certificates": [
                {"start": str(c.start), "len": c.length} for c in self.certificates
            ],
        }

    @classmethod
    def from_payload(cls, payload: dict) -> "BSequence":
        return cls(
            tuple(payload["ells"]),
            tuple(int(b) for b in payload["bs"]),
            tuple(
                Run(int(c["start"]), c["len"]) for c in payload["certificates"]
            ),
        )


def build_b_sequence(
    a: IntSet,
    ells: Sequence[int],
    k: int | None = None,
    digit_budget: int = DEFAULT_DIGIT_BUDGET,
) -> BSequence:
    """Greedy base sequence inside a, with certificates found along the way.

    Step j demands a run of length ell_j plus the total mass
    sum_{i<j} (b_i + ell_i) already placed, starting past the previous
    run.  Taking the smallest such run start keeps the sequence canonical
    for a given target and lengths.
    """
    if k is None:
        k = len(ells)
    if k < 1:
        raise PreconditionFailed(f"need at least one step, got k={k}")
    if len(ells) < k:
        raise PreconditionFailed(f"{k} steps need {k} run lengths, got {len(ells)}")
    if any(ell < 1 for ell in ells[:k]):
        raise PreconditionFailed("every run length must be >= 1")
    bs: list[int] = []
    certs: list[Run] = []
    acc = 0
    for j in range(1, k + 1):
        ell = ells[j - 1]
        need = ell + acc
        lb = bs[-1] + ells[j - 2] if j >= 2 else 0
        # size guard BEFORE searching: on fast-growing generators the next
        # base can be far too large to represent at all, so a post-hoc
        # check would never get the chance to run
        est = a.next_run_start_digits(need, lb)
        if est is not None and est > digit_budget + 64:
            raise BudgetExceeded(
                f"step {j}: next base needs about {est} digits, over the "
                f"budget of {digit_budget}"
            )
        try:
            found = a.next_run(need, lb)
        except HorizonExceeded as exc:
            raise NoSuitableRun(
                f"step {j}: target exhausted looking for a run of {need} "
                f"at or above {lb}"
            ) from exc
        if found is None:
            raise NoSuitableRun(
                f"step {j}: target provably has no run of {need} at or above {lb}"
            )
        b = found.start
        if decimal_digits(b) > digit_budget:
            raise BudgetExceeded(
                f"step {j}: base has {decimal_digits(b)} digits, over the "
                f"budget of {digit_budget}"
            )
        bs.append(b)
        certs.append(Run(b, need))
        acc += b + ell
    return BSequence(tuple(ells[:k]), tuple(bs), tuple(certs))


@dataclass(frozen=True)
class SweepReport:
    """Aggregate verdict over a sweep of containment checks.

    Fail dominates PartialWindow dominates Pass.  The witness is the
    smallest failing element seen anywhere, with the selection that
    produced it.
    """

    status: Status
    checked: int
    witness: int | None = None
    witness_subset: tuple[int, ...] | None = None
    partial_count: int = 0

    @property
    def passed(self) -> bool:
        return self.status is Status.PASS

    def to_payload(self) -> dict:
        payload: dict = {"status": self.status.value, "checked": self.checked}
        if self.witness is not None:
            payload["witness"] = str(self.witness)
            payload["witness_subset"] = list(self.witness_subset or ())
        if self.partial_count:
            payload["partial_count"] = self.partial_count
        return payload


class _SweepState:
    """Folds individual verdicts into the aggregate."""

    def __init__(self):
        self.checked = 0
        self.partials = 0
        self.witness: int | None = None
        self.witness_subset: tuple[int, ...] | None = None

    def add(self, v: Verdict) -> None:
        self.checked += 1
        if v.status is Status.PARTIAL_WINDOW:
            self.partials += 1
        elif v.status is Status.FAIL:
            if self.witness is None or v.witness < self.witness:
                self.witness = v.witness
                self.witness_subset = v.subset

    def fail(self, witness: int, subset: tuple[int, ...]) -> None:
        if self.witness is None or witness < self.witness:
            self.witness = witness
            self.witness_subset = subset

    def report(self) -> SweepReport:
        if self.witness is not None:
            status = Status.FAIL
        elif self.partials:
            status = Status.PARTIAL_WINDOW
        else:
            status = Status.PASS
        return SweepReport(
            status, self.checked, self.witness, self.witness_subset, self.partials
        )


def _brute_bounds(a: IntSet, s: Run, brute_span: int) -> tuple[int, int] | None:
    """Range of s to recheck element by element, clipped to decidability."""
    if s.length > brute_span:
        return None
    lo, hi = s.start, s.end
    if isinstance(a, ExplicitWindow):
        lo, hi = max(lo, a.window.base), min(hi, a.window.end)
    if lo > hi:
        return None
    return lo, hi


def verify_b_sequence(
    seq: BSequence,
    a: IntSet,
    k_limit: int | None = None,
    brute_span: int = 10_000,
) -> SweepReport:
    """Recheck every nonempty subset's sumset against the target.

    Two routes per subset: the interval route sums the runs and asks the
    target about one long run; the brute route walks the interval element
    by element when it is short enough.  Both must agree with containment
    for a Pass.
    """
    k = seq.k if k_limit is None else min(k_limit, seq.k)
    state = _SweepState()
    for subset in enumerate_subsets(k):
        s = run_sum([seq.run(j) for j in subset])
        state.add(verify_containment(s, a, subset=subset))
        bounds = _brute_bounds(a, s, brute_span)
        if bounds is not None:
            for x in range(bounds[0], bounds[1] + 1):
                if not a.member(x):
                    state.fail(x, subset)
                    break
    return state.report()


@dataclass(frozen=True)
class BFamily:
    """Disjoint component sets carved out of a base sequence's runs.

    index_sets[i] lists which run indices (1-based) feed component i + 1;
    together they partition {1..k}.  Component sets keep the actual runs,
    so selections of components sum run-by-run.
    """

    k_sets: int
    index_sets: tuple[tuple[int, ...], ...]
    sets: tuple[RunList, ...]
    source: BSequence

    def to_payload(self) -> dict:
        return {
            "k_sets": self.k_sets,
            "index_sets": [list(ix) for ix in self.index_sets],
            "sets": [
                [{"start": str(r.start), "len": r.length} for r in rl.runs]
                for rl in self.sets
            ],
        }


def build_family(seq: BSequence, k_sets: int, scheme: str = "residue") -> BFamily:
    """Partition the k runs into k_sets components.

    "residue" sends run j to component (j mod k_sets), so components
    interleave; "blocks" cuts {1..k} into contiguous chunks as equal as
    possible, longer chunks first.
    """
    k = seq.k
    if not 1 <= k_sets <= k:
        raise PreconditionFailed(
            f"component count must lie in [1, {k}], got {k_sets}"
        )
    if scheme == "residue":
        index_sets = tuple(
            tuple(j for j in range(1, k + 1) if j % k_sets == i % k_sets)
            for i in range(1, k_sets + 1)
        )
    elif scheme == "blocks":
        q, rem = divmod(k, k_sets)
        index_sets = []
        nxt = 1
        for i in range(k_sets):
            size = q + (1 if i < rem else 0)
            index_sets.append(tuple(range(nxt, nxt + size)))
            nxt += size
        index_sets = tuple(index_sets)
    else:
        raise ValueError(f"unknown scheme {scheme!r}")
    sets = tuple(RunList(seq.run(j) for j in ix) for ix in index_sets)
    assert sorted(j for ix in index_sets for j in ix) == list(range(1, k + 1))
    return BFamily(k_sets, index_sets, sets, seq)


def _check_disjoint(family: BFamily) -> None:
    labeled = sorted(
        (run.start, run.end, i)
        for i, rl in enumerate(family.sets, 1)
        for run in rl.runs
    )
    for (s1, e1, i1), (s2, e2, i2) in zip(labeled, labeled[1:]):
        if s2 <= e1:
            raise DisjointnessViolation(
                f"component {i1} run [{s1}, {e1}] overlaps component {i2} "
                f"run [{s2}, {e2}]"
            )


def verify_family(
    family: BFamily,
    a: IntSet,
    brute_span: int = 2048,
) -> SweepReport:
    """Recheck disjointness and every component selection's sumset.

    For each nonempty selection of components, every way of picking one
    source run per selected component gives an interval that must lie in
    the target.  Short selections are additionally rechecked by summing
    materialized component bitmaps and testing each resulting element.
    """
    if family.k_sets > 20:
        raise BudgetExceeded(
            f"sweeping 2**{family.k_sets} - 1 selections is over the "
            f"2**20 budget"
        )
    _check_disjoint(family)
    state = _SweepState()
    cap = brute_span
    parts = [rl.materialize(Window(0, cap + 1)) for rl in family.sets]
    for sel in enumerate_subsets(family.k_sets):
        for combo in itertools.product(*(family.index_sets[i - 1] for i in sel)):
            s = run_sum([family.source.run(j) for j in combo])
            state.add(verify_containment(s, a, subset=sel))
        if all(parts[i - 1].bits for i in sel):
            summed = family_sumset(parts, sel, cap)
            lo, hi = None, None
            if isinstance(a, ExplicitWindow):
                lo, hi = a.window.base, a.window.end
            for x in summed.elements():
                if lo is not None and not lo <= x <= hi:
                    continue
                if not a.member(x):
                    state.fail(x, sel)
                    break
    return state.report()


@dataclass(frozen=True)
class APReduction:
    """Strongest dilation structure found in a window.

    The window's members congruent to r mod m pull back to the quotient
    set stored in derived; dilating derived by (m, r) lands inside the
    original members by construction.  evidence_len is the length of the
    longest unbroken progression with difference m that drove the choice.
    """

    m: int
    r: int
    derived: ExplicitWindow
    evidence_len: int

    def to_payload(self) -> dict:
        return {
            "m": self.m,
            "r": self.r,
            "evidence_len": self.evidence_len,
            "derived_set": serialize_set(self.derived.to_run_list()),
        }


def ap_reduce(w: ExplicitWindow, m_max: int) -> APReduction:
    """Find the longest member progression with difference m <= m_max.

    Every residue class of every difference is scanned for its longest
    unbroken streak of members.  Ties prefer the smallest difference,
    then the smallest residue.  The members of the winning class become
    the derived quotient set {(x - r) / m >= 1}.
    """
    if m_max < 1:
        raise ValueError(f"difference bound must be >= 1, got {m_max}")
    if w.bits == 0:
        raise PreconditionFailed("window has no members to reduce")
    base, end = w.window.base, w.window.end
    N = w.window.length
    # flat 0/1 lookup; indexing the bitmap integer directly would re-scan
    # its limbs on every probe
    raw = w.bits.to_bytes((N + 7) // 8, "little")
    mem = bytearray(N)
    for idx in range(N):
        mem[idx] = (raw[idx >> 3] >> (idx & 7)) & 1
    best_len, best_m, best_r = 0, 0, 0
    for m in range(1, m_max + 1):
        for r in range(m):
            first = base + (r - base) % m
            streak = longest = 0
            for x in range(first - base, N, m):
                if mem[x]:
                    streak += 1
                    if streak > longest:
                        longest = streak
                else:
                    streak = 0
            if longest > best_len:
                best_len, best_m, best_r = longest, m, r
    m, r = best_m, best_r
    q_max = (end - r) // m
    derived_bits = 0
    first = base + (r - base) % m
    for x in range(first, end + 1, m):
        q = (x - r) // m
        if q >= 1 and mem[x - base]:
            derived_bits |= 1 << q
    derived = ExplicitWindow(Window(0, q_max + 1), derived_bits)
    return APReduction(m, r, derived, best_len)


_POW4 = [1, 4]


def _pow4(i: int) -> int:
    while len(_POW4) <= i:
        _POW4.append(_POW4[-1] * 4)
    return _POW4[i]


def escape_i0(t: int) -> int:
    """Smallest i >= 1 with 4**i - i > t."""
    if t < 0:
        raise ValueError(f"shift must be >= 0, got {t}")
    i = 1
    while _pow4(i) - i <= t:
        i += 1
    return i


@dataclass(frozen=True)
class EscapeCheck:
    """One rung of the doubling-escape ladder for run index i.

    The five inequalities chain the end of the shifted i-th run, the
    doubled run, and the start of the shifted next run into one strict
    ordering; doubles_outside rechecks the conclusion from membership
    alone, one doubled element at a time.
    """

    i: int
    below_double: bool
    double_lower: bool
    double_upper: bool
    gap_clearance: bool
    shift_margin: bool
    doubles_outside: bool

    @property
    def chain_ok(self) -> bool:
        return (
            self.below_double
            and self.double_lower
            and self.double_upper
            and self.gap_clearance
            and self.shift_margin
        )


@dataclass(frozen=True)
class EscapeReport:
    t: int
    i0: int
    checked: int
    all_escaped: bool
    checks: tuple[EscapeCheck, ...]

    def to_payload(self) -> dict:
        return {
            "t": self.t,
            "i0": self.i0,
            "checked": self.checked,
            "all_escaped": self.all_escaped,
            "checks": [
                {
                    "i": c.i,
                    "below_double": c.below_double,
                    "double_lower": c.double_lower,
                    "double_upper": c.double_upper,
                    "gap_clearance": c.gap_clearance,
                    "shift_margin": c.shift_margin,
                    "doubles_outside": c.doubles_outside,
                }
                for c in self.checks
            ],
        }


def verify_escape(t: int, i_max: int) -> EscapeReport:
    """Check that doubles of run i escape both shifts of the set, i0(t) <= i <= i_max.

    For each index the inequality chain is evaluated in exact arithmetic,
    and independently every doubled element 2b of the run is tested for
    membership of 2b - t and 2b + t in the set itself.
    """
    i0 = escape_i0(t)
    if i_max < i0:
        raise PreconditionFailed(
            f"need i_max >= {i0} for shift {t}, got {i_max}"
        )
    gen = PowRuns(4)
    checks = []
    for i in range(i0, i_max + 1):
        p, pn = _pow4(i), _pow4(i + 1)
        b_lo, b_hi = p, p + i - 1
        outside = all(
            not gen.member(2 * b - t) and not gen.member(2 * b + t)
            for b in range(b_lo, b_hi + 1)
        )
        checks.append(
            EscapeCheck(
                i=i,
                below_double=p + i + t < 2 * p,
                double_lower=2 * p <= 2 * b_lo,
                double_upper=2 * b_hi < 2 * p + 2 * i,
                gap_clearance=2 * p + 2 * i < pn - 2 * t,
                shift_margin=pn - 2 * t <= pn - t,
                doubles_outside=outside,
            )
        )
    all_ok = all(c.chain_ok and c.doubles_outside for c in checks)
    return EscapeReport(t, i0, len(checks), all_ok, tuple(checks))
