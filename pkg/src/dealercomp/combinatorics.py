"""Exact integer combinatorics: binomials, compositions and tableaux.

All counts are Python ints checked against a signed 64-bit ceiling so that a
sweep over unusual rule sets fails loudly instead of producing numbers no
downstream consumer can represent.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterator

INT64_MAX = 2**63 - 1

DEFAULT_GLYPH = "■"  # filled square


def _checked(value: int) -> int:
    if value > INT64_MAX or value < -INT64_MAX - 1:
        raise OverflowError(f"integer result {value} exceeds the 64-bit range")
    return value


def binomial(n: int, k: int) -> int:
    """Binomial coefficient as a total function.

    Returns ``C(n, k)`` for ``0 <= k <= n`` and ``0`` everywhere else,
    including negative ``n``. The counting formulas rely on out-of-range
    terms vanishing.

    >>> binomial(6, 1), binomial(4, 7), binomial(-1, 2)
    (6, 0, 0)
    """
    if n < 0 or k < 0 or k > n:
        return 0
    return _checked(math.comb(n, k))


def composition_count(m: int, n: int) -> int:
    """Number of compositions of ``n`` into exactly ``m`` positive parts."""
    return binomial(n - 1, m - 1)


def composition_count_min2(m: int, n: int) -> int:
    """Number of compositions of ``n`` into ``m`` parts, each at least 2.

    Subtracting one from every part is a bijection onto the compositions
    of ``n - m`` with ``m`` parts.
    """
    return composition_count(m, n - m)


@dataclass(frozen=True, order=True)
class Composition:
    """An ordered sequence of positive parts."""

    parts: tuple[int, ...]
    total: int = field(init=False, compare=False)

    def __post_init__(self) -> None:
        parts = tuple(int(p) for p in self.parts)
        if any(p < 1 for p in parts):
            raise ValueError(f"composition parts must be positive: {parts}")
        object.__setattr__(self, "parts", parts)
        object.__setattr__(self, "total", sum(parts))

    @classmethod
    def of(cls, *parts: int) -> "Composition":
        return cls(tuple(parts))

    def __len__(self) -> int:
        return len(self.parts)

    def __iter__(self) -> Iterator[int]:
        return iter(self.parts)

    def __getitem__(self, i):
        return self.parts[i]

    def __str__(self) -> str:
        return "+".join(str(p) for p in self.parts)


def iterate_compositions(
    n: int, m: int, min_part: int = 1, max_part: int | None = None
) -> Iterator[Composition]:
    """Yield every composition of ``n`` with ``m`` parts in ``[min_part, max_part]``.

    Output is in lexicographic order of the part sequence. Impossible
    parameters give an empty stream.
    """
    if max_part is None:
        max_part = max(n, min_part)
    if min_part < 1 or max_part < min_part:
        raise ValueError("need 1 <= min_part <= max_part")
    if m < 0:
        return

    prefix: list[int] = []

    def rec(remaining: int, slots: int) -> Iterator[Composition]:
        if slots == 0:
            if remaining == 0:
                yield Composition(tuple(prefix))
            return
        # every later slot needs at least min_part and at most max_part
        lo = max(min_part, remaining - (slots - 1) * max_part)
        hi = min(max_part, remaining - (slots - 1) * min_part)
        for part in range(lo, hi + 1):
            prefix.append(part)
            yield from rec(remaining - part, slots - 1)
            prefix.pop()

    yield from rec(n, m)


def render_tableau(c: Composition | tuple[int, ...], glyph: str = DEFAULT_GLYPH) -> str:
    """Render a composition as left-aligned rows of boxes, one row per part."""
    parts = tuple(c)
    if not parts:
        raise ValueError("cannot render an empty composition")
    if any(p < 1 for p in parts):
        raise ValueError(f"composition parts must be positive: {parts}")
    return "\n".join(glyph * p for p in parts)
