"""Game parameters and query validation."""
from __future__ import annotations

from dataclasses import dataclass

from .errors import InvalidQueryError

ACE_HIGH = 11
ACE_LOW = 1
CARD_VALUES = tuple(range(1, 11))  # 1 is the ace


@dataclass(frozen=True)
class RuleSet:
    """Dealer rules: stand threshold, bust limit and the highest card value."""

    stand: int = 17
    bust: int = 21
    max_card: int = 11

    def __post_init__(self) -> None:
        if not 2 <= self.stand <= self.bust:
            raise InvalidQueryError(
                f"need 2 <= stand <= bust, got stand={self.stand} bust={self.bust}"
            )
        if self.max_card < 2:
            raise InvalidQueryError(f"max_card must be at least 2, got {self.max_card}")


DEFAULT_RULES = RuleSet()


@dataclass(frozen=True)
class Query:
    """How many ways can the dealer showing ``upcard`` finish on ``target``
    using ``cards`` cards after the upcard (the face-down card included)?
    """

    upcard: int
    target: int
    cards: int

    @property
    def span(self) -> int:
        """Points the hidden and drawn cards must supply, ``target - upcard``."""
        return self.target - self.upcard

    def validate(self, rules: RuleSet = DEFAULT_RULES) -> "Query":
        check_upcard(self.upcard, rules)
        check_target(self.target, rules)
        if not 1 <= self.cards <= self.span:
            raise InvalidQueryError(
                f"cards must lie in [1, {self.span}] for target {self.target} "
                f"and upcard {self.upcard}, got {self.cards}"
            )
        return self


def check_upcard(upcard: int, rules: RuleSet) -> None:
    # an ace upcard is entered as 11
    hi = min(rules.max_card, ACE_HIGH)
    if not 2 <= upcard <= hi:
        raise InvalidQueryError(f"upcard must lie in [2, {hi}], got {upcard}")


def check_target(target: int, rules: RuleSet) -> None:
    if not rules.stand <= target <= rules.bust:
        raise InvalidQueryError(
            f"target must lie in [{rules.stand}, {rules.bust}], got {target}"
        )
