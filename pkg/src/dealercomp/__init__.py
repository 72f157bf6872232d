"""Counting and probability tools for a blackjack dealer's restricted compositions."""
from .combinatorics import (
    Composition,
    binomial,
    composition_count,
    composition_count_min2,
    iterate_compositions,
    render_tableau,
)
from .counting import CountBreakdown, closed_form_count, count, general_count, i_ace_set
from .errors import DealerCompError, InvalidQueryError, OverlongSequenceError, RegimeError
from .oracle import (
    DealerTrajectory,
    Outcome,
    SweepReport,
    enumerate_hands,
    enumerate_legal,
    oracle_count,
    simulate,
    verify_sweep,
)
from .probability import (
    CardDistribution,
    OutcomeDistribution,
    beat_probability,
    closed_form_probability,
    exact_probability,
    monte_carlo,
    outcome_distribution,
)
from .rules import DEFAULT_RULES, Query, RuleSet

__version__ = "0.1.0"
