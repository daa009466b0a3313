"""Lasso traces (ultimately periodic words) and teams of them.

A lasso denotes the infinite word stem . loop^omega over finite sets of
propositions.  Every `LassoTrace` is canonical: the loop is primitive
(not a power of a shorter word) and the stem cannot be folded into the
loop, so two lassos are equal iff they denote the same infinite word.
Instances are interned; a team is just a frozenset of them.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import TeamHyperError

Step = frozenset
Team = frozenset


@dataclass(frozen=True, eq=False)
class LassoTrace:
    stem: tuple[frozenset, ...]
    loop: tuple[frozenset, ...]

    def at(self, i: int) -> frozenset:
        if i < len(self.stem):
            return self.stem[i]
        return self.loop[(i - len(self.stem)) % len(self.loop)]

    def __len__(self):
        return len(self.stem) + len(self.loop)

    def __repr__(self):
        def step(s):
            return "{" + ",".join(sorted(map(str, s))) + "}"
        return ("".join(step(s) for s in self.stem)
                + "(" + "".join(step(s) for s in self.loop) + ")")


_INTERN: dict[tuple, LassoTrace] = {}


def _intern(stem: tuple, loop: tuple) -> LassoTrace:
    key = (stem, loop)
    t = _INTERN.get(key)
    if t is None:
        t = LassoTrace(stem, loop)
        _INTERN[key] = t
    return t


def _primitive_root(loop: tuple) -> tuple:
    n = len(loop)
    for d in range(1, n + 1):
        if n % d == 0 and loop == loop[:d] * (n // d):
            return loop[:d]
    raise AssertionError("unreachable")


def canonicalize(stem, loop) -> LassoTrace:
    """Build the unique canonical lasso denoting stem . loop^omega."""
    stem = tuple(frozenset(s) for s in stem)
    loop = tuple(frozenset(s) for s in loop)
    if not loop:
        raise TeamHyperError("empty loop")
    loop = _primitive_root(loop)
    # Fold: while the stem ends with the loop's last element, the loop can
    # absorb it by rotating one step to the right.
    stem = list(stem)
    while stem and stem[-1] == loop[-1]:
        stem.pop()
        loop = loop[-1:] + loop[:-1]
    return _intern(tuple(stem), loop)


def unroll(t: LassoTrace, n: int) -> list[frozenset]:
    return [t.at(i) for i in range(n)]


def suffix(t: LassoTrace, i: int) -> LassoTrace:
    """Canonical lasso denoting the word from position i on."""
    if i < 0:
        raise TeamHyperError("negative position")
    s = len(t.stem)
    if i <= s:
        if i == 0:
            return t
        return canonicalize(t.stem[i:], t.loop)
    k = (i - s) % len(t.loop)
    return canonicalize((), t.loop[k:] + t.loop[:k])


def suffix_window(t: LassoTrace) -> int:
    """Largest position the team evaluators need to inspect (inclusive).

    Any position beyond stem + 2*loop - 1 denotes the same suffix as one
    loop earlier while only shrinking the min/max data of a suffix
    choice, so confining choices to this window is lossless.
    """
    return len(t.stem) + 2 * len(t.loop) - 1


_DISTINCT: dict[LassoTrace, tuple[LassoTrace, ...]] = {}


def distinct_suffixes(t: LassoTrace) -> tuple[LassoTrace, ...]:
    """All distinct suffixes, ordered by first position of occurrence."""
    out = _DISTINCT.get(t)
    if out is None:
        seen = []
        for i in range(len(t.stem) + len(t.loop)):
            s = suffix(t, i)
            if s not in set(seen):
                seen.append(s)
        out = tuple(seen)
        _DISTINCT[t] = out
    return out


def make_team(traces) -> Team:
    return frozenset(traces)


def team_suffix_set(team: Team, choice: dict) -> Team:
    """T[f,inf): the set of all chosen suffixes (duplicates collapse)."""
    out = set()
    for t in team:
        if t not in choice:
            raise TeamHyperError(f"suffix choice missing trace {t!r}")
        positions = choice[t]
        if not positions:
            raise TeamHyperError("suffix choice must map to a nonempty set")
        for s in positions:
            out.add(suffix(t, s))
    return frozenset(out)


def product(assignment: dict[str, LassoTrace]) -> LassoTrace:
    """Synchronous product over the alphabet of (proposition, variable) pairs.

    Position k of the product carries (p, v) iff p holds at position k of
    assignment[v]; stem length is the max of the stems, loop length the
    lcm of the loops.
    """
    if not assignment:
        raise TeamHyperError("product of an empty assignment")
    items = sorted(assignment.items())
    stem_len = max(len(t.stem) for _, t in items)
    loop_len = math.lcm(*(len(t.loop) for _, t in items))
    steps = []
    for k in range(stem_len + loop_len):
        steps.append(frozenset((p, v) for v, t in items for p in t.at(k)))
    return canonicalize(steps[:stem_len], steps[stem_len:])
