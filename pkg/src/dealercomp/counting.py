"""Closed-form and general-case counts of legal dealer compositions.

Every correction term is computed separately and reported in a
:class:`CountBreakdown` so formula output can be audited against the
brute-force oracle.
"""
from __future__ import annotations

from dataclasses import asdict, dataclass

from .combinatorics import Composition, binomial, composition_count, iterate_compositions
from .errors import InvalidQueryError, RegimeError
from .rules import DEFAULT_RULES, Query, RuleSet

# closed form holds (as stated) when target - upcard does not exceed this
CLOSED_FORM_MAX_SPAN = 11
# hidden-ace bookkeeping is tied to a ten-point threshold
TEN = 10

BREAKDOWN_FIELDS = ("unrestricted", "r1", "r2", "r3", "r4", "r_star", "r2_star", "net")


@dataclass(frozen=True)
class CountBreakdown:
    unrestricted: int
    r1: int
    r2: int
    r3: int
    r4: int
    r_star: int
    r2_star: int
    net: int

    def to_dict(self) -> dict[str, int]:
        return asdict(self)

    @classmethod
    def from_dict(cls, data: dict) -> "CountBreakdown":
        return cls(**{k: int(data[k]) for k in BREAKDOWN_FIELDS})

    def identity_holds(self) -> bool:
        return self.net == (
            self.unrestricted - self.r1 - self.r2 - self.r3 - self.r4
            + self.r_star + self.r2_star
        )


def is_closed_regime(q: Query) -> bool:
    return q.span <= CLOSED_FORM_MAX_SPAN


def _base(q: Query, r: RuleSet) -> int:
    return binomial(r.stand - q.upcard - 2, q.cards - 1)


def closed_form_count(q: Query, r: RuleSet = DEFAULT_RULES) -> int:
    """``C(s - d - 2, m - 1)``; does not depend on the target."""
    q.validate(r)
    if not is_closed_regime(q):
        raise RegimeError(
            f"closed form needs target - upcard <= {CLOSED_FORM_MAX_SPAN} "
            f"(got {q.span}); use general_count"
        )
    return _base(q, r)


def i_ace_set(i: int, d: int, r: RuleSet = DEFAULT_RULES) -> set[Composition]:
    """Length-``i`` compositions with parts >= 2 and sum <= ``10 - d``.

    A following ace on any of these would be forced to count 11.
    """
    if i < 1:
        raise InvalidQueryError(f"i must be positive, got {i}")
    if d > TEN:
        raise InvalidQueryError(f"i-ace sets need upcard <= {TEN}, got {d}")
    limit = TEN - d
    out: set[Composition] = set()
    for total in range(2 * i, limit + 1):
        out.update(iterate_compositions(total, i, 2, total))
    return out


def _diagnostic_terms(q: Query, r: RuleSet) -> tuple[int, int, int, int]:
    m, n = q.cards, q.span
    excess = q.target - r.stand
    unrestricted = composition_count(m, n)
    r2 = binomial(n - 2, m - 2)
    r3 = sum(binomial(n - i - 1, m - 2) for i in range(1, excess + 1))
    r_star = sum(binomial(n - i - 2, m - 3) for i in range(1, excess + 1))
    return unrestricted, r2, r3, r_star


def general_count(q: Query, r: RuleSet = DEFAULT_RULES) -> CountBreakdown:
    """Evaluate the general-case formula term by term, exactly as stated.

    ``net = base - r1 - r4 + r2_star`` where ``base = C(s-d-2, m-1)``.
    Negative results are reported, not clamped. For upcards 6..9 the r4 and
    r2_star sums do not vanish even when ``target - upcard <= 11``, so
    :func:`count` uses the closed form there.
    """
    q.validate(r)
    m, d, w = q.cards, q.upcard, q.target
    s, b, a = r.stand, r.bust, r.max_card

    r1 = m * sum(binomial(w - d - i - 1, m - 2) for i in range(a + 1, w - d + 1))
    r4 = sum(
        binomial(j - i - 2, i) * binomial(s - d - j, m - 3 - i)
        for j in range(2, TEN - d + 1)
        for i in range(0, m + 3 + 1)
    )
    r2_star = sum(
        binomial(k - b + s - 2, i - 1) * binomial(w - d - k - 2, m - i - 2)
        for k in range(b - d - TEN, s - d - 2 + 1)
        for i in range(1, m - 2 + 1)
    )
    unrestricted, r2, r3, r_star = _diagnostic_terms(q, r)
    return CountBreakdown(
        unrestricted=unrestricted,
        r1=r1,
        r2=r2,
        r3=r3,
        r4=r4,
        r_star=r_star,
        r2_star=r2_star,
        net=_base(q, r) - r1 - r4 + r2_star,
    )


def count(q: Query, r: RuleSet = DEFAULT_RULES) -> CountBreakdown:
    """Dispatch to the closed form when ``target - upcard <= 11``."""
    q.validate(r)
    if not is_closed_regime(q):
        return general_count(q, r)
    unrestricted, r2, r3, r_star = _diagnostic_terms(q, r)
    return CountBreakdown(
        unrestricted=unrestricted,
        r1=0,
        r2=r2,
        r3=r3,
        r4=0,
        r_star=r_star,
        r2_star=0,
        net=closed_form_count(q, r),
    )
