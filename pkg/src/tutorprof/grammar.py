"""Pattern matcher over the UI-state symbol alphabet.

Patterns are concatenations of quantified atoms: a literal class symbol
or a negated class ``[^...]``, each with ``{a,}`` or ``{a,b}`` counts
(a bare atom counts once). That is the entire grammar the action
patterns need, so the matcher is purpose-built rather than a regex
wrapper: match semantics are leftmost-longest, atoms never match the
removal sentinel, and matched spans are blanked in place so later
searches cannot reuse their frames while indices stay aligned with the
score series.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import accel
from .score_model import CLASS_INDEX, CLASS_SYMBOLS, N_CLASSES, SENTINEL, SymbolString


class PatternError(ValueError):
    """Raised for pattern text the matcher cannot represent."""


@dataclass(frozen=True)
class PatternElement:
    """One quantified atom: the class symbols it accepts and its counts."""

    allowed: frozenset[str]
    lo: int
    hi: int | None  # None means unbounded
    source: str

    def __str__(self) -> str:
        return self.source


@dataclass(frozen=True)
class Match:
    """Half-open frame span [start, end) a pattern matched."""

    start: int
    end: int

    def __post_init__(self) -> None:
        if not 0 <= self.start < self.end:
            raise ValueError(f"invalid match span [{self.start}, {self.end})")

    def __len__(self) -> int:
        return self.end - self.start


class Pattern:
    """A compiled pattern; build with ``compile_pattern``."""

    __slots__ = ("text", "elements", "_allow", "_lo", "_hi")

    def __init__(self, text: str, elements: tuple[PatternElement, ...]):
        self.text = text
        self.elements = elements
        allow = np.zeros((len(elements), N_CLASSES), dtype=np.bool_)
        lo = np.zeros(len(elements), dtype=np.int64)
        hi = np.zeros(len(elements), dtype=np.int64)
        for j, el in enumerate(elements):
            for sym in el.allowed:
                allow[j, CLASS_INDEX[sym]] = True
            lo[j] = el.lo
            hi[j] = -1 if el.hi is None else el.hi
        self._allow = allow
        self._lo = lo
        self._hi = hi

    def __repr__(self) -> str:
        return f"Pattern({self.text!r})"

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Pattern):
            return NotImplemented
        return self.elements == other.elements

    def __hash__(self) -> int:
        return hash(self.elements)


def compile_pattern(text: str) -> Pattern:
    """Parse pattern text into a ``Pattern``.

    Accepts literals from the class alphabet, negated classes like
    ``[^cC]``, and quantifiers ``{a,}`` / ``{a,b}`` with non-negative
    integer bounds, a <= b. An unquantified atom means exactly one.
    """
    elements: list[PatternElement] = []
    pos = 0
    n = len(text)
    while pos < n:
        start = pos
        ch = text[pos]
        if ch == "[":
            if text[pos : pos + 2] != "[^":
                raise PatternError(f"only negated classes are supported at {pos}")
            close = text.find("]", pos)
            if close < 0:
                raise PatternError(f"unterminated class at {pos}")
            inner = text[pos + 2 : close]
            if not inner:
                raise PatternError(f"empty negated class at {pos}")
            for sym in inner:
                if sym not in CLASS_INDEX:
                    raise PatternError(f"unknown symbol {sym!r} in class at {pos}")
            allowed = frozenset(CLASS_SYMBOLS) - frozenset(inner)
            pos = close + 1
        elif ch in CLASS_INDEX:
            allowed = frozenset((ch,))
            pos += 1
        else:
            raise PatternError(f"unknown symbol {ch!r} at {pos}")
        lo, hi = 1, 1
        if pos < n and text[pos] == "{":
            close = text.find("}", pos)
            if close < 0:
                raise PatternError(f"unterminated quantifier at {pos}")
            body = text[pos + 1 : close]
            parts = body.split(",")
            if len(parts) != 2 or not parts[0].isdigit():
                raise PatternError(f"malformed quantifier {{{body}}} at {pos}")
            lo = int(parts[0])
            if parts[1] == "":
                hi = None
            elif parts[1].isdigit():
                hi = int(parts[1])
                if lo > hi:
                    raise PatternError(
                        f"quantifier {{{body}}} has lower bound above upper"
                    )
            else:
                raise PatternError(f"malformed quantifier {{{body}}} at {pos}")
            pos = close + 1
        elements.append(PatternElement(allowed, lo, hi, text[start:pos]))
    if not elements:
        raise PatternError("empty pattern")
    return Pattern(text, tuple(elements))


def _match_scan(
    codes: np.ndarray,
    allow: np.ndarray,
    lo: np.ndarray,
    hi: np.ndarray,
    start: int,
) -> tuple[int, int]:
    """Leftmost-longest scan; returns (start, end) or (-1, -1).

    For each candidate start the reachable-positions set is advanced one
    element at a time; any count within an element's bounds that stays
    inside a run of allowed symbols is a legal consumption. The earliest
    start with a non-empty match wins, with the maximal end there.
    """
    n = codes.shape[0]
    k = allow.shape[0]
    # run[j, p]: consecutive frames from p acceptable to element j
    run = np.zeros((k, n + 1), np.int64)
    for j in range(k):
        for p in range(n - 1, -1, -1):
            c = codes[p]
            if c >= 0 and allow[j, c]:
                run[j, p] = run[j, p + 1] + 1
    cur = np.zeros(n + 1, np.bool_)
    nxt = np.zeros(n + 1, np.bool_)
    for s0 in range(start, n):
        if lo[0] > 0 and run[0, s0] < lo[0]:
            continue
        for p in range(s0, n + 1):
            cur[p] = False
        cur[s0] = True
        alive = True
        for j in range(k):
            any_next = False
            for p in range(s0, n + 1):
                nxt[p] = False
            for p in range(s0, n + 1):
                if not cur[p]:
                    continue
                top = run[j, p] if hi[j] < 0 else min(hi[j], run[j, p])
                bot = lo[j]
                if bot == 0:
                    nxt[p] = True
                    any_next = True
                    bot = 1
                for c in range(bot, top + 1):
                    nxt[p + c] = True
                if top >= bot:
                    any_next = True
            cur, nxt = nxt, cur
            if not any_next:
                alive = False
                break
        if not alive:
            continue
        for p in range(n, s0, -1):
            if cur[p]:
                return s0, p
    return -1, -1


_match_scan_jit = accel.jit(_match_scan)


def find_leftmost(pattern: Pattern, s: SymbolString, from_: int = 0) -> Match | None:
    """Earliest match starting at or after ``from_``, longest at that start.

    Zero-length matches are never reported; a match consumes at least
    one frame. Returns ``None`` when the pattern occurs nowhere.
    """
    n = len(s)
    if not 0 <= from_ <= n:
        raise ValueError(f"from_ {from_} outside [0, {n}]")
    if n == 0 or from_ == n:
        return None
    scan = _match_scan_jit if accel.NUMBA_ENABLED else _match_scan
    start, end = scan(s.codes, pattern._allow, pattern._lo, pattern._hi, from_)
    if start < 0:
        return None
    return Match(int(start), int(end))


def remove(s: SymbolString, m: Match) -> SymbolString:
    """Blank the matched span with the sentinel; length is preserved."""
    if m.end > len(s):
        raise ValueError(f"match [{m.start}, {m.end}) exceeds length {len(s)}")
    codes = s.codes.copy()
    codes[m.start : m.end] = SENTINEL
    return SymbolString(codes)
