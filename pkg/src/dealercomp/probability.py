"""Dealer outcome probabilities under the infinite deck assumption."""
from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field
from functools import lru_cache
from types import MappingProxyType
from typing import Mapping

import numpy as np

from .errors import InvalidQueryError, RegimeError
from .oracle import SOFT_DELTA, enumerate_hands
from .rules import ACE_HIGH, ACE_LOW, CARD_VALUES, DEFAULT_RULES, RuleSet, check_target, check_upcard

# closed-form probability needs target - upcard <= this (no ten-valued draws)
CLOSED_PROBABILITY_MAX_SPAN = 9
MASS_TOLERANCE = 1e-12


class CardDistribution:
    """Probability of drawing each card value; 1 is the ace.

    Pass ``normalized=False`` for diagnostic sub-probability tables such as
    :meth:`uniform_diagnostic`, whose masses need not sum to one.
    """

    def __init__(self, mass: Mapping[int, float], normalized: bool = True):
        if set(mass) != set(CARD_VALUES):
            raise ValueError(f"card masses must cover exactly {CARD_VALUES}")
        if any(p < 0 for p in mass.values()):
            raise ValueError("card masses must be non-negative")
        total = math.fsum(mass.values())
        if normalized and abs(total - 1.0) > MASS_TOLERANCE:
            raise ValueError(f"card masses sum to {total!r}, expected 1")
        self.mass = MappingProxyType({v: float(mass[v]) for v in CARD_VALUES})
        self.normalized = normalized

    @classmethod
    def default(cls) -> "CardDistribution":
        return cls({v: (16 if v == 10 else 4) / 52 for v in CARD_VALUES})

    @classmethod
    def uniform_diagnostic(cls) -> "CardDistribution":
        """Every value at 1/13, tens included (total mass 10/13)."""
        return cls({v: 1 / 13 for v in CARD_VALUES}, normalized=False)

    def part_mass(self, part: int) -> float:
        """Mass of the card behind a counted part (1 and 11 are both the ace)."""
        return self.mass[ACE_LOW if part == ACE_HIGH else part]

    def key(self) -> tuple[float, ...]:
        return tuple(self.mass[v] for v in CARD_VALUES)

    def __eq__(self, other):
        return isinstance(other, CardDistribution) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return f"CardDistribution({dict(self.mass)!r})"


DEFAULT_CARDS = CardDistribution.default()


@dataclass
class OutcomeDistribution:
    """Mass over final dealer totals ``stand..bust`` plus a bust mass.

    ``stderr`` is only filled in for Monte Carlo estimates; it maps each
    total (and the key ``"bust"``) to a binomial standard error.
    """

    final_totals: dict[int, float]
    bust_mass: float
    stderr: dict[int | str, float] | None = None
    trials: int | None = None

    @property
    def total_mass(self) -> float:
        return math.fsum(self.final_totals.values()) + self.bust_mass

    def cells(self) -> list[tuple[int | str, float]]:
        return [*sorted(self.final_totals.items()), ("bust", self.bust_mass)]

    def to_dict(self) -> dict:
        out: dict = {
            "final_totals": {str(t): p for t, p in sorted(self.final_totals.items())},
            "bust": self.bust_mass,
        }
        if self.stderr is not None:
            out["stderr"] = {str(k): v for k, v in self.stderr.items()}
        if self.trials is not None:
            out["trials"] = self.trials
        return out

    @classmethod
    def from_dict(cls, data: Mapping) -> "OutcomeDistribution":
        stderr = data.get("stderr")
        if stderr is not None:
            stderr = {(k if k == "bust" else int(k)): float(v) for k, v in stderr.items()}
        return cls(
            final_totals={int(k): float(v) for k, v in data["final_totals"].items()},
            bust_mass=float(data["bust"]),
            stderr=stderr,
            trials=data.get("trials"),
        )

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["total", "probability", "stderr"])
        for key, p in self.cells():
            se = 0.0 if self.stderr is None else self.stderr[key]
            writer.writerow([key, repr(p), repr(se)])
        return buf.getvalue()


def closed_form_probability(w: int, d: int, r: RuleSet = DEFAULT_RULES) -> float:
    """``(1/13) * (14/13) ** (s - d - 2)``, valid for ``w - d <= 9``.

    ``d`` is the dealer's current hard total; it need not be a card value.
    """
    check_target(w, r)
    exponent = r.stand - d - 2
    if d < 2 or exponent < 0:
        raise InvalidQueryError(
            f"dealer total must lie in [2, {r.stand - 2}] for the closed form, got {d}"
        )
    if w - d > CLOSED_PROBABILITY_MAX_SPAN:
        raise RegimeError(
            f"closed-form probability needs target - upcard <= "
            f"{CLOSED_PROBABILITY_MAX_SPAN} (got {w - d}); use exact_probability"
        )
    return (1 / 13) * (14 / 13) ** exponent


def exact_probability(
    w: int, d: int, r: RuleSet = DEFAULT_RULES, cd: CardDistribution = DEFAULT_CARDS
) -> float:
    """Sum, over every legal hand finishing on ``w``, of the product of its card masses."""
    terms = []
    for comp in enumerate_hands(d, w, r):
        p = 1.0
        for part in comp:
            p *= cd.part_mass(part)
        terms.append(p)
    return math.fsum(terms)


@lru_cache(maxsize=None)
def _finish(total: int, soft: int, r: RuleSet, cd: CardDistribution) -> tuple[float, ...]:
    # returns masses indexed by final total offset from stand, bust last
    width = r.bust - r.stand + 1
    acc = [0.0] * (width + 1)
    for card, p in cd.mass.items():
        if p == 0.0:
            continue
        t, s = total, soft
        if card == ACE_LOW and t + ACE_HIGH <= r.bust:
            t, s = t + ACE_HIGH, s + 1
        else:
            t += card
        while t > r.bust and s:
            t, s = t - SOFT_DELTA, s - 1
        if t > r.bust:
            acc[width] += p
        elif t >= r.stand:
            acc[t - r.stand] += p
        else:
            for i, q in enumerate(_finish(t, s, r, cd)):
                acc[i] += p * q
    return tuple(acc)


def _distribution_from(total: int, soft: int, r: RuleSet, cd: CardDistribution) -> OutcomeDistribution:
    masses = _finish(total, soft, r, cd)
    return OutcomeDistribution(
        final_totals={r.stand + i: masses[i] for i in range(len(masses) - 1)},
        bust_mass=masses[-1],
    )


def outcome_distribution(
    d: int, r: RuleSet = DEFAULT_RULES, cd: CardDistribution = DEFAULT_CARDS
) -> OutcomeDistribution:
    """Exact final-total distribution by forward recursion over (total, soft aces).

    The hidden card is always dealt, even if the upcard alone reaches the
    stand threshold.
    """
    check_upcard(d, r)
    return _distribution_from(d, 1 if d == ACE_HIGH else 0, r, cd)


CHUNK = 1 << 16


def _play_chunk(
    rng: np.random.Generator, n: int, d: int, r: RuleSet, values: np.ndarray, probs: np.ndarray
) -> np.ndarray:
    """Vectorised dealer play; returns final totals (> bust means busted)."""
    total = np.full(n, d, dtype=np.int64)
    soft = np.full(n, 1 if d == ACE_HIGH else 0, dtype=np.int64)
    active = np.ones(n, dtype=bool)
    while active.any():
        idx = np.flatnonzero(active)
        card = rng.choice(values, size=idx.size, p=probs)
        t, s = total[idx], soft[idx]
        high_ace = (card == ACE_LOW) & (t + ACE_HIGH <= r.bust)
        t = t + np.where(high_ace, ACE_HIGH, card)
        s = s + high_ace
        while True:
            demote = (t > r.bust) & (s > 0)
            if not demote.any():
                break
            t = t - SOFT_DELTA * demote
            s = s - demote
        total[idx], soft[idx] = t, s
        active[idx] = t < r.stand
    return total


def monte_carlo(
    d: int,
    r: RuleSet = DEFAULT_RULES,
    cd: CardDistribution = DEFAULT_CARDS,
    trials: int = 1_000_000,
    seed: int = 0,
) -> OutcomeDistribution:
    """Simulate ``trials`` dealer hands and report frequencies with standard errors.

    Hands are played in fixed-size chunks, each with its own generator spawned
    from ``numpy.random.SeedSequence(seed)`` (PCG64), so output is bit-for-bit
    reproducible for fixed inputs.
    """
    check_upcard(d, r)
    if trials < 1:
        raise ValueError("trials must be at least 1")
    if not cd.normalized:
        raise ValueError("Monte Carlo needs a normalised card distribution")
    values = np.array(CARD_VALUES, dtype=np.int64)
    probs = np.array([cd.mass[v] for v in CARD_VALUES])
    probs = probs / probs.sum()

    width = r.bust - r.stand + 1
    counts = np.zeros(width + 1, dtype=np.int64)
    n_chunks = -(-trials // CHUNK)
    children = np.random.SeedSequence(seed).spawn(n_chunks)
    for i, child in enumerate(children):
        n = min(CHUNK, trials - i * CHUNK)
        final = _play_chunk(np.random.Generator(np.random.PCG64(child)), n, d, r, values, probs)
        bins = np.where(final > r.bust, width, final - r.stand)
        counts += np.bincount(bins, minlength=width + 1)

    freq = counts / trials
    se = np.sqrt(freq * (1 - freq) / trials)
    totals = {r.stand + i: float(freq[i]) for i in range(width)}
    stderr: dict[int | str, float] = {r.stand + i: float(se[i]) for i in range(width)}
    stderr["bust"] = float(se[width])
    return OutcomeDistribution(totals, float(freq[width]), stderr=stderr, trials=trials)


def beat_probability(
    dealer_current: int,
    lo: int,
    hi: int,
    r: RuleSet = DEFAULT_RULES,
    cd: CardDistribution = DEFAULT_CARDS,
) -> float:
    """Probability the dealer, now on a hard ``dealer_current``, finishes in ``[lo, hi]``.

    Each target uses the closed form when it applies and otherwise the exact
    recursion from that hard total. Soft aces in the current hand are ignored.
    """
    if not r.stand <= lo <= hi <= r.bust:
        raise InvalidQueryError(f"need {r.stand} <= lo <= hi <= {r.bust}, got [{lo}, {hi}]")
    if not 2 <= dealer_current < r.stand:
        raise InvalidQueryError(
            f"dealer total must lie in [2, {r.stand - 1}], got {dealer_current}"
        )
    exact = None
    terms = []
    for w in range(lo, hi + 1):
        if w - dealer_current <= CLOSED_PROBABILITY_MAX_SPAN and r.stand - dealer_current - 2 >= 0:
            terms.append(closed_form_probability(w, dealer_current, r))
        else:
            if exact is None:
                exact = _distribution_from(dealer_current, 0, r, cd)
            terms.append(exact.final_totals[w])
    return math.fsum(terms)
