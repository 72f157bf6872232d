"""Brute-force ground truth: play the dealer's hand card by card.

Nothing here uses the composition calculus in :mod:`dealercomp.counting`.
A composition is legal when mapping its parts to cards and dealing them
reproduces exactly those counted values and finishes on the target.
"""
from __future__ import annotations

import csv
import enum
import io
from dataclasses import asdict, dataclass, field
from typing import Iterable, Iterator, Sequence

from .combinatorics import Composition
from .counting import count, is_closed_regime
from .errors import InvalidQueryError, OverlongSequenceError
from .rules import ACE_HIGH, ACE_LOW, CARD_VALUES, DEFAULT_RULES, Query, RuleSet, check_target, check_upcard

SOFT_DELTA = ACE_HIGH - ACE_LOW


class Outcome(str, enum.Enum):
    STOOD = "stood"
    BUSTED = "busted"
    INCOMPLETE = "incomplete"


@dataclass(frozen=True)
class DealerTrajectory:
    """Result of dealing a card sequence to the dealer.

    ``counted_values`` holds the final point value of each dealt card (aces
    as 1 or 11); ``running_totals[i]`` is the hand total right after card
    ``i`` with the ace states in force at that moment.
    """

    upcard: int
    upcard_value: int
    counted_values: tuple[int, ...]
    running_totals: tuple[int, ...]
    outcome: Outcome

    @property
    def total(self) -> int:
        return self.running_totals[-1] if self.running_totals else self.upcard_value


def simulate(upcard: int, cards: Sequence[int], r: RuleSet = DEFAULT_RULES) -> DealerTrajectory:
    """Deal ``cards`` (1 = ace, 2..10 face value) to a dealer showing ``upcard``.

    An ace counts 11 when that keeps the total within ``r.bust``, otherwise 1.
    On a bust, soft aces are demoted one at a time, oldest first (an ace
    upcard is the oldest). The dealer stops as soon as the total reaches
    ``r.stand``, soft or hard; dealing past that point raises
    :class:`OverlongSequenceError`.
    """
    check_upcard(upcard, r)
    if not cards:
        raise InvalidQueryError("card sequence must be non-empty")

    upcard_value = upcard
    total = upcard
    soft: list[int] = [-1] if upcard == ACE_HIGH else []  # -1 marks the upcard
    values: list[int] = []
    totals: list[int] = []
    outcome = Outcome.INCOMPLETE

    for idx, card in enumerate(cards):
        if outcome is not Outcome.INCOMPLETE:
            raise OverlongSequenceError(
                f"dealer already {outcome.value} on {total} after {idx} card(s)"
            )
        if card not in CARD_VALUES:
            raise InvalidQueryError(f"card values must lie in 1..10, got {card}")
        if card == ACE_LOW and total + ACE_HIGH <= r.bust:
            value = ACE_HIGH
            soft.append(idx)
        else:
            value = card
        values.append(value)
        total += value
        while total > r.bust and soft:
            j = soft.pop(0)
            if j < 0:
                upcard_value = ACE_LOW
            else:
                values[j] = ACE_LOW
            total -= SOFT_DELTA
        totals.append(total)
        if total > r.bust:
            outcome = Outcome.BUSTED
        elif total >= r.stand:
            outcome = Outcome.STOOD

    return DealerTrajectory(upcard, upcard_value, tuple(values), tuple(totals), outcome)


def part_to_card(part: int) -> int | None:
    """Card that can produce a counted ``part``; ``None`` if no card can."""
    if part in (ACE_LOW, ACE_HIGH):
        return ACE_LOW
    if part in CARD_VALUES:
        return part
    return None


def _advance(total: int, soft: int, card: int, r: RuleSet) -> tuple[int, int]:
    if card == ACE_LOW and total + ACE_HIGH <= r.bust:
        total, soft = total + ACE_HIGH, soft + 1
    else:
        total += card
    while total > r.bust and soft:
        total, soft = total - SOFT_DELTA, soft - 1
    return total, soft


def _certified(
    upcard: int, target: int, m: int, upcard_value: int, r: RuleSet
) -> Iterator[Composition]:
    """Candidate compositions of ``target - upcard_value`` with ``m`` parts in
    ``[1, max_card]``, each certified by :func:`simulate`.

    Subtrees whose prefix already ends the hand are skipped; they could only
    produce overlong sequences.
    """
    n = target - upcard_value
    a = r.max_card
    if m < 1 or n < m:
        return
    start_soft = 1 if upcard == ACE_HIGH else 0
    parts: list[int] = []
    cards: list[int] = []

    def rec(remaining: int, slots: int, total: int, soft: int) -> Iterator[Composition]:
        lo = max(1, remaining - (slots - 1) * a)
        hi = min(a, remaining - (slots - 1))
        for part in range(lo, hi + 1):
            card = part_to_card(part)
            if card is None:
                continue
            parts.append(part)
            cards.append(card)
            if slots == 1:
                traj = simulate(upcard, cards, r)
                if (
                    traj.outcome is Outcome.STOOD
                    and traj.total == target
                    and traj.upcard_value == upcard_value
                    and traj.counted_values == tuple(parts)
                ):
                    yield Composition(tuple(parts))
            else:
                t, s = _advance(total, soft, card, r)
                if t < r.stand:
                    yield from rec(remaining - part, slots - 1, t, s)
            parts.pop()
            cards.pop()

    yield from rec(n, m, upcard, start_soft)


def enumerate_legal(q: Query, r: RuleSet = DEFAULT_RULES) -> Iterator[Composition]:
    """Legal compositions of ``target - upcard`` with ``cards`` parts, in
    lexicographic order. The upcard keeps its face value throughout."""
    q.validate(r)
    yield from _certified(q.upcard, q.target, q.cards, q.upcard, r)


def oracle_count(q: Query, r: RuleSet = DEFAULT_RULES) -> int:
    return sum(1 for _ in enumerate_legal(q, r))


def enumerate_hands(upcard: int, target: int, r: RuleSet = DEFAULT_RULES) -> Iterator[Composition]:
    """Every drawn-card sequence (as counted values) that stands on ``target``.

    Covers all hand lengths. With an ace upcard this also includes hands in
    which the upcard itself was demoted to 1, whose drawn parts sum to
    ``target - 1`` rather than ``target - 11``.
    """
    check_upcard(upcard, r)
    check_target(target, r)
    upcard_values = [upcard] + ([ACE_LOW] if upcard == ACE_HIGH else [])
    for value in upcard_values:
        for m in range(1, target - value + 1):
            yield from _certified(upcard, target, m, value, r)


# --- formula vs oracle audit -------------------------------------------------

REPORT_COLUMNS = (
    "m", "w", "s", "d", "b", "max_card", "regime", "formula_net", "oracle_count", "delta",
)


@dataclass(frozen=True)
class DiscrepancyRecord:
    m: int
    w: int
    s: int
    d: int
    b: int
    max_card: int
    regime: str
    formula_net: int
    oracle_count: int
    delta: int

    @property
    def agrees(self) -> bool:
        return self.delta == 0


@dataclass
class SweepReport:
    records: list[DiscrepancyRecord] = field(default_factory=list)

    def summary(self) -> dict[str, dict[str, int]]:
        out = {regime: {"agree": 0, "disagree": 0} for regime in ("closed", "general")}
        for rec in self.records:
            out[rec.regime]["agree" if rec.agrees else "disagree"] += 1
        return out

    @property
    def disagreements(self) -> list[DiscrepancyRecord]:
        return [rec for rec in self.records if not rec.agrees]

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(REPORT_COLUMNS)
        for rec in self.records:
            writer.writerow([getattr(rec, col) for col in REPORT_COLUMNS])
        return buf.getvalue()

    def to_dict(self) -> dict:
        return {
            "records": [asdict(rec) for rec in self.records],
            "summary": self.summary(),
        }


def sweep_queries(
    upcards: Iterable[int], targets: Iterable[int], cards_max: int | None = None
) -> Iterator[Query]:
    targets = list(targets)
    for d in upcards:
        for w in targets:
            top = w - d if cards_max is None else min(w - d, cards_max)
            for m in range(1, top + 1):
                yield Query(upcard=d, target=w, cards=m)


def audit(q: Query, r: RuleSet = DEFAULT_RULES) -> DiscrepancyRecord:
    formula = count(q, r).net
    oracle = oracle_count(q, r)
    return DiscrepancyRecord(
        m=q.cards, w=q.target, s=r.stand, d=q.upcard, b=r.bust, max_card=r.max_card,
        regime="closed" if is_closed_regime(q) else "general",
        formula_net=formula, oracle_count=oracle, delta=formula - oracle,
    )


def verify_sweep(queries: Iterable[Query], r: RuleSet = DEFAULT_RULES) -> SweepReport:
    """Compare the counting formula with the oracle on every query.

    Disagreements are recorded, never raised.
    """
    return SweepReport([audit(q, r) for q in queries])
