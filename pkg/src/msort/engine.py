"""The coded meaning-sort pipeline.

Words are expanded to one row per sense, marker rows are merged in,
everything is sorted by code, and the sorted run is cut into groups at
each marker::

    >>> from msort.lexicon import lexicon_from_mapping
    >>> lex = lexicon_from_mapping({"cat": ["5110000001"], "jam": ["6110000001"]})
    >>> [(g.label, g.words) for g in msort(["jam", "cat"], lex).groups]
    [('(Animal)', ['cat']), ('(Product)', ['jam'])]
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from msort.codes import CategoryCode, MarkerTable
from msort.errors import MissingColumnError
from msort.lexicon import Annotation, CodedLexicon, KeyPolicy

UNKNOWN_LABEL = "(Unknown)"

WordInput = str | tuple[str, str | None]


class RowKind(enum.Enum):
    MARKER = "marker"
    WORD = "word"


@dataclass(frozen=True)
class SortedRow:
    code: CategoryCode
    text: str
    kind: RowKind
    payload: str | None = None


@dataclass(frozen=True)
class Item:
    word: str
    payload: str | None = None
    code: CategoryCode | None = None


@dataclass
class Group:
    label: str
    items: list[Item] = field(default_factory=list)
    # Set by group_keywords: items split into display lines.
    lines: list[list[Item]] | None = None

    @property
    def words(self) -> list[str]:
        return [it.word for it in self.items]


@dataclass
class GroupedList:
    groups: list[Group] = field(default_factory=list)
    unknowns: list[Item] = field(default_factory=list)

    def all_groups(self) -> list[Group]:
        """Marker groups followed by the ``(Unknown)`` group, if any."""
        if not self.unknowns:
            return list(self.groups)
        return [*self.groups, Group(UNKNOWN_LABEL, list(self.unknowns))]

    def as_dict(self) -> dict[str, list[str]]:
        return {g.label: g.words for g in self.all_groups()}

    def __len__(self):
        return len(self.groups) + bool(self.unknowns)


def _entries(words: Iterable[WordInput]) -> list[tuple[str, str | None]]:
    out = []
    for w in words:
        if isinstance(w, str):
            out.append((w, None))
        else:
            word, payload = w
            out.append((word, payload))
    return out


def annotate(words: Iterable[WordInput], lex: CodedLexicon
             ) -> tuple[list[Annotation], list[Item]]:
    """Expand each word into one annotation per sense.

    Returns the annotations in input order (senses in lexicon order) and
    the words missing from ``lex``, also in input order.
    """
    rows, unknowns = [], []
    for word, payload in _entries(words):
        codes = lex.lookup(word)
        if codes is None:
            unknowns.append(Item(word, payload))
            continue
        rows.extend(Annotation(c, word, payload) for c in codes)
    return rows, unknowns


def _payload_number(payload: str | None) -> float:
    try:
        value = float(payload)
    except (TypeError, ValueError):
        return -math.inf
    return value if not math.isnan(value) else -math.inf


def sort_annotations(rows: Sequence[Annotation], markers: MarkerTable,
                     payload_tiebreak: bool = False) -> list[SortedRow]:
    """Merge marker rows into ``rows`` and stable-sort by code.

    Markers go in first, so a marker precedes any word carrying the same
    code.  With ``payload_tiebreak`` words with equal codes are further
    ordered by numeric payload, largest first; non-numeric payloads last.
    """
    merged = [SortedRow(code, label, RowKind.MARKER) for code, label in markers]
    merged.extend(SortedRow(a.code, a.word, RowKind.WORD, a.payload) for a in rows)
    if payload_tiebreak:
        def key(r):
            if r.kind is RowKind.MARKER:
                return r.code.rank_key(), 0, 0.0
            return r.code.rank_key(), 1, -_payload_number(r.payload)
    else:
        def key(r):
            return r.code.rank_key()
    return sorted(merged, key=key)


def condense(rows: Iterable[SortedRow], dedup: bool = True,
             drop_empty: bool = True) -> GroupedList:
    """Cut sorted rows into groups at every marker row.

    Word rows before the first marker (only possible when the marker
    table does not cover the lowest codes) form a leading group with an
    empty label.
    """
    groups: list[Group] = []
    current = None
    seen: set[str] = set()
    for row in rows:
        if row.kind is RowKind.MARKER:
            current = Group(row.text)
            groups.append(current)
            seen = set()
            continue
        if current is None:
            current = Group("")
            groups.append(current)
        if dedup and row.text in seen:
            continue
        seen.add(row.text)
        current.items.append(Item(row.text, row.payload, row.code))
    if drop_empty:
        groups = [g for g in groups if g.items]
    return GroupedList(groups)


def msort(words: Iterable[WordInput], lex: CodedLexicon,
          markers: MarkerTable | None = None, dedup: bool = True,
          drop_empty: bool = True, payload_tiebreak: bool = False) -> GroupedList:
    if markers is None:
        from msort.resources import default_markers
        markers = default_markers()
    rows, unknowns = annotate(words, lex)
    ordered = sort_annotations(rows, markers, payload_tiebreak)
    result = condense(ordered, dedup=dedup, drop_empty=drop_empty)
    result.unknowns = unknowns
    return result


def msort_pairs(rows: Sequence[Mapping[str, str]], lex: CodedLexicon,
                key_fields: Sequence[str],
                policy: KeyPolicy = KeyPolicy.MINIMUM_CODE,
                columns: Sequence[str] | None = None) -> list[Mapping[str, str]]:
    """Stable-sort records by the codes of several word columns in turn.

    Each key column contributes the :meth:`CodedLexicon.sort_key` of its
    word; words missing from the lexicon sort after every known code.
    Other columns are carried along untouched.
    """
    if columns is not None:
        for name in key_fields:
            if name not in columns:
                raise MissingColumnError(name, columns)
    for row in rows:
        for name in key_fields:
            if name not in row:
                raise MissingColumnError(name, row.keys())

    def key(row):
        parts = []
        for name in key_fields:
            code = lex.sort_key(row[name], policy)
            parts.append((0, code.rank_key()) if code is not None else (1, ()))
        return tuple(parts)

    return sorted(rows, key=key)


def split_lines(items: Sequence[Item], prefix_length: int) -> list[list[Item]]:
    lines: list[list[Item]] = []
    last = None
    for it in items:
        prefix = it.code.symbols[:prefix_length] if it.code is not None else None
        if not lines or prefix != last or prefix is None:
            lines.append([])
        lines[-1].append(it)
        last = prefix
    return lines


def group_keywords(words: Iterable[WordInput], lex: CodedLexicon,
                   markers: MarkerTable | None = None,
                   prefix_length: int = 3, **options) -> GroupedList:
    """Meaning-sort ``words``, then break each group into display lines.

    Words on one line share the first ``prefix_length`` symbols of the
    code that placed them in the group.
    """
    if not 1 <= prefix_length <= 10:
        raise ValueError(f"prefix_length must be in 1..10, got {prefix_length}")
    result = msort(words, lex, markers, **options)
    for group in result.groups:
        group.lines = split_lines(group.items, prefix_length)
    return result
