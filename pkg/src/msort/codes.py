"""Category codes, marker tables and prefix remapping rules.

A category code is a fixed-width string of ten symbols drawn from
``0-9`` followed by ``a-d``.  Codes sort symbol by symbol, digits before
letters, which makes a plain sorted list of codes read top-down through
the thesaurus hierarchy.
"""

from __future__ import annotations

import re
import warnings
from dataclasses import dataclass
from functools import total_ordering
from typing import Sequence, TextIO

from msort._lines import data_lines
from msort.errors import CodeError, ParseError

ALPHABET = "0123456789abcd"
CODE_LENGTH = 10
_RANK = {sym: i for i, sym in enumerate(ALPHABET)}


class UnmatchedCodeWarning(UserWarning):
    """No remap rule matched a code; it was passed through unchanged."""


@total_ordering
@dataclass(frozen=True)
class CategoryCode:
    symbols: str

    def __post_init__(self):
        _check_code(self.symbols)

    def __str__(self):
        return self.symbols

    def __lt__(self, other):
        if not isinstance(other, CategoryCode):
            return NotImplemented
        return compare_codes(self, other) < 0

    def rank_key(self) -> tuple[int, ...]:
        return tuple(_RANK[s] for s in self.symbols)

    def startswith(self, prefix: str) -> bool:
        return self.symbols.startswith(prefix)


def _check_code(s: str) -> None:
    if not isinstance(s, str):
        raise CodeError(f"code must be text, got {type(s).__name__}")
    for i, sym in enumerate(s):
        if sym not in _RANK:
            raise CodeError(
                f"invalid symbol {sym!r} at position {i + 1} in code {s!r}")
    if len(s) != CODE_LENGTH:
        raise CodeError(
            f"code {s!r} has length {len(s)}, expected {CODE_LENGTH}")


def parse_code(s: str) -> CategoryCode:
    """Parse a 10-symbol code, raising :class:`CodeError` on bad input.

    The message names the first offending position, so
    ``parse_code("5363x05022")`` reports symbol ``'x'`` at position 5.
    """
    return CategoryCode(s)


def compare_codes(a: CategoryCode, b: CategoryCode) -> int:
    """Return -1, 0 or 1 as ``a`` sorts before, equal to or after ``b``."""
    ka, kb = a.rank_key(), b.rank_key()
    return (ka > kb) - (ka < kb)


# ---------------------------------------------------------------- remapping

_SLOT_RE = re.compile(r"\[([^\]]*)\]|(.)")


def _expand_class(body: str) -> tuple[str, ...]:
    """Expand a bracket class body such as ``0-58`` into its symbols.

    Ranges follow alphabet order, so ``8-b`` is ``8 9 a b``.  Order of
    the returned symbols is the order they are written, which is what
    positional mapping relies on.
    """
    out: list[str] = []
    i = 0
    while i < len(body):
        if i + 2 < len(body) and body[i + 1] == "-":
            lo, hi = body[i], body[i + 2]
            if lo not in _RANK or hi not in _RANK or _RANK[lo] > _RANK[hi]:
                raise CodeError(f"bad range {lo}-{hi} in class [{body}]")
            out.extend(ALPHABET[_RANK[lo]:_RANK[hi] + 1])
            i += 3
        else:
            if body[i] not in _RANK:
                raise CodeError(f"invalid symbol {body[i]!r} in class [{body}]")
            out.append(body[i])
            i += 1
    if not out:
        raise CodeError("empty symbol class []")
    if len(set(out)) != len(out):
        raise CodeError(f"repeated symbol in class [{body}]")
    return tuple(out)


def _parse_slots(text: str) -> tuple[tuple[str, ...], ...]:
    slots = []
    pos = 0
    for m in _SLOT_RE.finditer(text):
        if m.start() != pos:
            break
        pos = m.end()
        if m.group(1) is not None:
            slots.append(_expand_class(m.group(1)))
        else:
            sym = m.group(2)
            if sym not in _RANK:
                raise CodeError(f"invalid symbol {sym!r} in {text!r}")
            slots.append((sym,))
    if pos != len(text):
        raise CodeError(f"unbalanced bracket in {text!r}")
    return tuple(slots)


@dataclass(frozen=True)
class RemapRule:
    """Rewrite the leading symbols of a code.

    Each slot is a tuple of symbols; a one-symbol tuple is a literal.
    A replacement class maps position-wise onto the pattern class in the
    same slot, so ``[1-3]5[01] -> 91[12]`` sends ``250`` to ``911``.
    """

    pattern: tuple[tuple[str, ...], ...]
    replacement: tuple[tuple[str, ...], ...]
    source: str = ""

    def __post_init__(self):
        if not 1 <= len(self.pattern) <= 3:
            raise CodeError(f"pattern must have 1-3 slots: {self.source!r}")
        if len(self.pattern) != len(self.replacement):
            raise CodeError(
                f"pattern and replacement differ in length: {self.source!r}")
        for pat, rep in zip(self.pattern, self.replacement):
            if len(rep) != 1 and len(rep) != len(pat):
                raise CodeError(
                    f"class cardinality mismatch ({len(pat)} vs {len(rep)}): "
                    f"{self.source!r}")

    @classmethod
    def parse(cls, pattern: str, replacement: str) -> "RemapRule":
        return cls(_parse_slots(pattern), _parse_slots(replacement),
                   f"{pattern}\t{replacement}")

    def matches(self, code: CategoryCode) -> bool:
        return all(sym in slot for sym, slot in zip(code.symbols, self.pattern))

    def apply(self, code: CategoryCode) -> CategoryCode:
        head = []
        for sym, pat, rep in zip(code.symbols, self.pattern, self.replacement):
            head.append(rep[0] if len(rep) == 1 else rep[pat.index(sym)])
        return CategoryCode("".join(head) + code.symbols[len(self.pattern):])


@dataclass(frozen=True)
class RemapTable:
    rules: tuple[RemapRule, ...] = ()

    def match(self, code: CategoryCode) -> RemapRule | None:
        for rule in self.rules:
            if rule.matches(code):
                return rule
        return None

    def __len__(self):
        return len(self.rules)


def remap_code(code: CategoryCode, table: RemapTable) -> CategoryCode:
    """Rewrite ``code`` with the first matching rule of ``table``.

    Codes no rule matches come back unchanged and an
    :class:`UnmatchedCodeWarning` is issued.
    """
    rule = table.match(code)
    if rule is None:
        warnings.warn(UnmatchedCodeWarning(f"no remap rule matches {code}"),
                      stacklevel=2)
        return code
    return rule.apply(code)


def load_remap_table(stream: TextIO, name: str = "<rules>") -> RemapTable:
    """Read ``pattern<TAB>replacement`` lines; ``#`` starts a comment."""
    rules = []
    for lineno, line in data_lines(stream):
        fields = line.split("\t")
        if len(fields) != 2:
            raise ParseError(name, lineno,
                             f"expected 2 tab-separated fields, got {len(fields)}")
        try:
            rules.append(RemapRule.parse(fields[0].strip(), fields[1].strip()))
        except CodeError as exc:
            raise ParseError(name, lineno, str(exc)) from None
    return RemapTable(tuple(rules))


# ------------------------------------------------------------------ markers

@dataclass(frozen=True)
class MarkerTable:
    entries: tuple[tuple[CategoryCode, str], ...] = ()

    def __post_init__(self):
        labels = [label for _, label in self.entries]
        if len(set(labels)) != len(labels):
            dup = next(l for l in labels if labels.count(l) > 1)
            raise CodeError(f"duplicate marker label {dup!r}")

    def __len__(self):
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    @classmethod
    def from_pairs(cls, pairs: Sequence[tuple[str, str]]) -> "MarkerTable":
        return cls(tuple((parse_code(c), label) for c, label in pairs))


def marker_rows(table: MarkerTable) -> list[tuple[CategoryCode, str]]:
    return list(table.entries)


def load_marker_table(stream: TextIO, name: str = "<markers>") -> MarkerTable:
    """Read ``code<TAB>label`` lines, keeping file order."""
    entries = []
    seen: dict[str, int] = {}
    for lineno, line in data_lines(stream):
        fields = line.split("\t")
        if len(fields) != 2:
            raise ParseError(name, lineno,
                             f"expected 2 tab-separated fields, got {len(fields)}")
        try:
            code = parse_code(fields[0].strip())
        except CodeError as exc:
            raise ParseError(name, lineno, str(exc)) from None
        label = fields[1].strip()
        if label in seen:
            raise ParseError(name, lineno,
                             f"label {label!r} already used on line {seen[label]}")
        seen[label] = lineno
        entries.append((code, label))
    return MarkerTable(tuple(entries))
