"""Final-answer extraction, normalization, and equivalence.

Answers are pulled from the last balanced ``\\boxed{...}`` group of a
solution and normalized into exact canonical forms so that voting over
them is well-defined: integers, reduced rationals, and a normalized
opaque string as the fallback for anything symbolic. Decimals are
converted to exact rationals; no float comparison ever happens.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Optional, Union


class AnswerKind(str, Enum):
    INTEGER = "integer"
    RATIONAL = "rational"
    DECIMAL = "decimal"
    OPAQUE = "opaque"


@dataclass(frozen=True)
class RawAnswer:
    """Verbatim contents of a boxed expression plus its location."""

    text: str
    source_span: tuple[int, int]

    def __post_init__(self):
        if not self.text:
            raise ValueError("raw answer text must be non-empty")
        lo, hi = self.source_span
        if lo < 0 or hi < lo:
            raise ValueError(f"bad source span {self.source_span}")


@dataclass(frozen=True)
class CanonicalAnswer:
    """Normalized answer value.

    Payload by kind: INTEGER -> int, RATIONAL -> Fraction (reduced,
    positive denominator, never an integer), DECIMAL -> (significand,
    exponent), OPAQUE -> normalized string.
    """

    kind: AnswerKind
    value: Union[int, Fraction, tuple[int, int], str]

    def as_fraction(self) -> Fraction:
        if self.kind == AnswerKind.INTEGER:
            return Fraction(self.value)
        if self.kind == AnswerKind.RATIONAL:
            return self.value
        if self.kind == AnswerKind.DECIMAL:
            sig, exp = self.value
            return Fraction(sig) * Fraction(10) ** exp
        raise ValueError("opaque answers have no numeric value")

    def is_numeric(self) -> bool:
        return self.kind != AnswerKind.OPAQUE

    def render(self) -> str:
        if self.kind == AnswerKind.INTEGER:
            return str(self.value)
        if self.kind == AnswerKind.RATIONAL:
            return f"{self.value.numerator}/{self.value.denominator}"
        if self.kind == AnswerKind.DECIMAL:
            sig, exp = self.value
            if exp >= 0:
                return str(sig * 10 ** exp)
            digits = str(abs(sig)).rjust(-exp + 1, "0")
            sign = "-" if sig < 0 else ""
            return f"{sign}{digits[:exp]}.{digits[exp:]}"
        return self.value


def integer(n: int) -> CanonicalAnswer:
    return CanonicalAnswer(AnswerKind.INTEGER, int(n))


def rational(num: int, den: int) -> CanonicalAnswer:
    if den == 0:
        raise ZeroDivisionError("rational answer with zero denominator")
    frac = Fraction(num, den)
    if frac.denominator == 1:
        return integer(frac.numerator)
    return CanonicalAnswer(AnswerKind.RATIONAL, frac)


def decimal(significand: int, exponent: int) -> CanonicalAnswer:
    return CanonicalAnswer(AnswerKind.DECIMAL, (int(significand), int(exponent)))


def opaque(text: str) -> CanonicalAnswer:
    return CanonicalAnswer(AnswerKind.OPAQUE, text)


_BOXED_RE = re.compile(r"\\boxed\s*\{")


def extract_final_answer(solution_text: str) -> Optional[RawAnswer]:
    """Return the contents of the last balanced \\boxed{...} group.

    Nested braces are balanced rather than cut at the first ``}``.
    Returns None when no balanced, non-empty boxed group exists.
    """
    found = None
    for match in _BOXED_RE.finditer(solution_text):
        start = match.end()
        depth = 1
        pos = start
        while pos < len(solution_text) and depth > 0:
            ch = solution_text[pos]
            if ch == "{":
                depth += 1
            elif ch == "}":
                depth -= 1
            pos += 1
        if depth == 0:
            content = solution_text[start:pos - 1]
            if content.strip():
                found = RawAnswer(text=content, source_span=(start, pos - 1))
    return found


_INT_RE = re.compile(r"[+-]?\d+\Z")
_SLASH_RE = re.compile(r"([+-]?\d+)\s*/\s*([+-]?\d+)\Z")
_FRAC_RE = re.compile(r"\\[dtc]?frac\s*\{\s*([+-]?\d+)\s*\}\s*\{\s*([+-]?\d+)\s*\}\Z")
_DEC_RE = re.compile(r"[+-]?(?:\d+\.\d*|\.\d+)\Z")
_TRAIL_PUNCT = ".,;:!?"
_WS_RE = re.compile(r"\s+")


def _strip_outer_braces(s: str) -> str:
    while len(s) >= 2 and s[0] == "{" and s[-1] == "}":
        depth = 0
        wraps = True
        for i, ch in enumerate(s):
            if ch == "{":
                depth += 1
            elif ch == "}":
                depth -= 1
            if depth == 0 and i < len(s) - 1:
                wraps = False
                break
        if not wraps or depth != 0:
            break
        s = s[1:-1].strip()
    return s


def _light_clean(s: str) -> str:
    s = s.strip()
    s = s.strip("$").strip()
    while s and s[-1] in _TRAIL_PUNCT:
        s = s[:-1].rstrip()
    return _strip_outer_braces(s)


def _parse_numeric(s: str) -> Optional[CanonicalAnswer]:
    if _INT_RE.fullmatch(s):
        return integer(int(s))
    m = _SLASH_RE.fullmatch(s) or _FRAC_RE.fullmatch(s)
    if m:
        num, den = int(m.group(1)), int(m.group(2))
        if den == 0:
            return None
        return rational(num, den)
    if _DEC_RE.fullmatch(s):
        return _from_fraction(Fraction(s))
    return None


def _from_fraction(frac: Fraction) -> CanonicalAnswer:
    if frac.denominator == 1:
        return integer(frac.numerator)
    return CanonicalAnswer(AnswerKind.RATIONAL, frac)


def _normalize_opaque(s: str) -> str:
    for cmd in ("\\left", "\\right", "\\displaystyle"):
        s = s.replace(cmd, "")
    for cmd in ("\\dfrac", "\\tfrac", "\\cfrac"):
        s = s.replace(cmd, "\\frac")
    s = s.replace("$", "")
    s = s.replace("{", "").replace("}", "")
    s = _WS_RE.sub(" ", s).strip()
    while s and s[-1] in _TRAIL_PUNCT:
        s = s[:-1].rstrip()
    return s


def canonicalize(raw: Union[RawAnswer, str]) -> CanonicalAnswer:
    """Normalize an extracted answer. Total: falls back to OPAQUE."""
    text = raw.text if isinstance(raw, RawAnswer) else raw
    cleaned = _light_clean(text)
    parsed = _parse_numeric(cleaned)
    if parsed is not None:
        return parsed
    normalized = _normalize_opaque(cleaned)
    # normalization can expose a plain numeric form, e.g. "{1}2" -> "12";
    # re-trying keeps render -> re-parse a fixed point
    parsed = _parse_numeric(normalized)
    if parsed is not None:
        return parsed
    return opaque(normalized)


def answers_equivalent(a: CanonicalAnswer, b: CanonicalAnswer) -> bool:
    """Exact-value equality for numeric kinds, string equality for opaque."""
    if a.is_numeric() and b.is_numeric():
        return a.as_fraction() == b.as_fraction()
    if not a.is_numeric() and not b.is_numeric():
        return a.value == b.value
    return False


def equivalence_key(answer: CanonicalAnswer):
    """Hashable key such that equal keys <=> answers_equivalent."""
    if answer.is_numeric():
        return ("num", answer.as_fraction())
    return ("opq", answer.value)
