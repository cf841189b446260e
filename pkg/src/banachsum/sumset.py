"""Sumsets, subset enumeration, and containment verdicts.

Pairwise sumsets of finite sets are computed by shift-or on bitmaps:
adding x to every member of C is one shift of C's bitmap, and the union
over x in B is an or.  Containment of a claimed interval or bitmap in a
target set yields a three-way verdict, since a target known only inside
a window cannot always decide.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .errors import BudgetExceeded, EmptySelection
from .intset import ExplicitWindow, IntSet, Run, Window

__all__ = [
    "Status",
    "Verdict",
    "SUBSET_BUDGET_MAX",
    "pairwise_sumset",
    "family_sumset",
    "run_sum",
    "enumerate_subsets",
    "verify_containment",
    "verdict_payload",
]

SUBSET_BUDGET_MAX = 24


class Status(enum.Enum):
    PASS = "Pass"
    FAIL = "Fail"
    PARTIAL_WINDOW = "PartialWindow"


@dataclass(frozen=True)
class Verdict:
    """Outcome of one containment check.

    witness is the smallest offending element on Fail; evaluable records
    how much of the claim a window-limited target could actually decide;
    subset tags which selection of summands produced the claim, when the
    caller is iterating over selections.
    """

    status: Status
    witness: int | None = None
    evaluable: tuple[int, int] | None = None
    subset: tuple[int, ...] | None = None

    @property
    def passed(self) -> bool:
        return self.status is Status.PASS


def pairwise_sumset(b: ExplicitWindow, c: ExplicitWindow, cap: int) -> ExplicitWindow:
    """All sums x + y (x in b, y in c) up to cap, as a bitmap on [0, cap].

    Sums beyond cap are discarded; members of either set above cap still
    contribute the sums that land at or below it.
    """
    if cap < 0:
        raise ValueError(f"cap must be >= 0, got {cap}")
    out_mask = (1 << (cap + 1)) - 1
    cbits = c.bits
    cbase = c.window.base
    acc = 0
    for x in b.elements():
        shift = x + cbase
        if shift > cap:
            break
        acc |= cbits << shift
    return ExplicitWindow(Window(0, cap + 1), acc & out_mask)


def family_sumset(
    family: Sequence[ExplicitWindow], selection: Sequence[int], cap: int
) -> ExplicitWindow:
    """Iterated sumset of the selected (1-based) family members, capped.

    A singleton selection returns that set unchanged.  Folding pairwise
    with the cap at every step is sound because all members are positive:
    a partial sum that already exceeds cap can only grow.
    """
    if not selection:
        raise EmptySelection("sumset of an empty selection of sets")
    parts = [family[i - 1] for i in selection]
    if len(parts) == 1:
        return parts[0]
    acc = parts[0].materialize(Window(0, cap + 1))
    for part in parts[1:]:
        acc = pairwise_sumset(acc, part, cap)
    return acc


def run_sum(runs: Iterable[Run]) -> Run:
    """Sumset of intervals, which is again an interval.

    [s1, s1+l1-1] + [s2, s2+l2-1] = [s1+s2, s1+s2 + (l1+l2-2)], so starts
    add and lengths add minus one per join.
    """
    runs = list(runs)
    if not runs:
        raise EmptySelection("sum of an empty selection of runs")
    start = sum(r.start for r in runs)
    length = sum(r.length for r in runs) - (len(runs) - 1)
    return Run(start, length)


def enumerate_subsets(k: int) -> Iterator[tuple[int, ...]]:
    """Nonempty subsets of {1..k} in binary-counter order.

    Subset number i (1-based) selects the indices of i's set bits, listed
    top bit first, so the stream starts (1,), (2,), (2, 1), (3,), ...
    """
    if k < 0:
        raise ValueError(f"subset count needs k >= 0, got {k}")
    if k > SUBSET_BUDGET_MAX:
        raise BudgetExceeded(
            f"enumerating 2**{k} - 1 subsets exceeds the budget of 2**{SUBSET_BUDGET_MAX}"
        )
    for i in range(1, 1 << k):
        sel = []
        b = i
        while b:
            top = b.bit_length()
            sel.append(top)
            b ^= 1 << (top - 1)
        yield tuple(sel)


def _decidable_bounds(a: IntSet) -> tuple[int, int] | None:
    if isinstance(a, ExplicitWindow):
        return a.window.base, a.window.end
    return None


def verify_containment(
    claim: Run | ExplicitWindow,
    target: IntSet,
    subset: tuple[int, ...] | None = None,
    bounds: tuple[int, int] | None = None,
) -> Verdict:
    """Is every element of the claim a member of the target?

    Fail always reports the smallest witness.  When the target is an
    ExplicitWindow, elements of the claim outside its window are
    undecidable: if everything decidable passes but some of the claim was
    out of reach, the verdict is PartialWindow with the decided span in
    evaluable.  Passing bounds restricts the check to claim elements in
    [bounds[0], bounds[1]]; an empty intersection passes vacuously.
    """
    if bounds is not None and isinstance(claim, Run):
        lo = max(claim.start, bounds[0])
        hi = min(claim.end, bounds[1])
        if lo > hi:
            return Verdict(Status.PASS, subset=subset)
        claim = Run(lo, hi - lo + 1)
    if isinstance(claim, ExplicitWindow):
        if bounds is not None:
            base = max(claim.window.base, bounds[0], 0)
            end = min(claim.window.end, bounds[1])
            if base > end:
                return Verdict(Status.PASS, subset=subset)
            claim = claim.materialize(Window(base, end - base + 1))
        return _verify_bitmap(claim, target, subset)
    bounds = _decidable_bounds(target)
    if bounds is None:
        ok = target.contains_run(claim.start, claim.length)
        if ok:
            return Verdict(Status.PASS, subset=subset)
        witness = target.first_gap(claim.start, claim.end)
        if witness is None:
            # a window-limited set wrapped in a symbolic map: no
            # counterexample found, but part of the claim was out of reach
            return Verdict(Status.PARTIAL_WINDOW, subset=subset)
        return Verdict(Status.FAIL, witness=witness, subset=subset)
    lo, hi = bounds
    in_lo, in_hi = max(claim.start, lo), min(claim.end, hi)
    if in_lo <= in_hi:
        witness = target.first_gap(in_lo, in_hi)
        if witness is not None:
            return Verdict(Status.FAIL, witness=witness, subset=subset)
    if claim.start < lo or claim.end > hi:
        span = (in_lo, in_hi) if in_lo <= in_hi else None
        return Verdict(Status.PARTIAL_WINDOW, evaluable=span, subset=subset)
    return Verdict(Status.PASS, subset=subset)


def _verify_bitmap(
    claim: ExplicitWindow, target: IntSet, subset: tuple[int, ...] | None
) -> Verdict:
    bounds = _decidable_bounds(target)
    undecided = False
    for x in claim.elements():
        if bounds is not None and not bounds[0] <= x <= bounds[1]:
            undecided = True
            continue
        if not target.member(x):
            return Verdict(Status.FAIL, witness=x, subset=subset)
    if undecided:
        return Verdict(Status.PARTIAL_WINDOW, evaluable=bounds, subset=subset)
    return Verdict(Status.PASS, subset=subset)


def verdict_payload(v: Verdict) -> dict:
    """JSON-ready form; witnesses may be huge, so they travel as strings."""
    payload: dict = {"status": v.status.value}
    if v.witness is not None:
        payload["witness"] = str(v.witness)
    if v.evaluable is not None:
        payload["evaluable"] = [str(v.evaluable[0]), str(v.evaluable[1])]
    if v.subset is not None:
        payload["subset"] = list(v.subset)
    return payload
