"""Word to category-code lexicons."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Iterable, Mapping, TextIO

from msort._lines import data_lines
from msort.codes import CategoryCode, RemapTable, parse_code
from msort.errors import CodeError, ParseError


class KeyPolicy(enum.Enum):
    """How a polysemous word picks the single code it sorts by."""

    FIRST_SENSE = "first-sense"
    MINIMUM_CODE = "minimum-code"


@dataclass(frozen=True)
class Annotation:
    code: CategoryCode
    word: str
    payload: str | None = None


@dataclass
class CodedLexicon:
    senses: dict[str, tuple[CategoryCode, ...]] = field(default_factory=dict)
    warnings: list[str] = field(default_factory=list)

    @classmethod
    def from_pairs(cls, pairs: Iterable[tuple[str, str]],
                   remap: RemapTable | None = None) -> "CodedLexicon":
        lines = (f"{w}\t{c}\n" for w, c in pairs)
        return load_lexicon(lines, remap)

    def __contains__(self, word):
        return word in self.senses

    def __len__(self):
        return len(self.senses)

    def lookup(self, word: str) -> tuple[CategoryCode, ...] | None:
        return self.senses.get(word)

    def sort_key(self, word: str,
                 policy: KeyPolicy = KeyPolicy.MINIMUM_CODE) -> CategoryCode | None:
        codes = self.senses.get(word)
        if not codes:
            return None
        if policy is KeyPolicy.FIRST_SENSE:
            return codes[0]
        return min(codes)

    def pairs(self) -> list[tuple[str, CategoryCode]]:
        return [(w, c) for w, codes in self.senses.items() for c in codes]


def lookup(lex: CodedLexicon, word: str) -> tuple[CategoryCode, ...] | None:
    """All senses of ``word`` in listing order, or None when unknown."""
    return lex.lookup(word)


def sort_key(lex: CodedLexicon, word: str,
             policy: KeyPolicy = KeyPolicy.MINIMUM_CODE) -> CategoryCode | None:
    return lex.sort_key(word, policy)


def load_lexicon(source: Iterable[str] | TextIO, remap: RemapTable | None = None,
                 name: str = "<lexicon>") -> CodedLexicon:
    """Load ``word<TAB>code`` lines, remapping every code through ``remap``.

    Senses keep the order they are listed in and repeated (word, code)
    pairs collapse into one.  Codes that no rule matches are kept as is;
    one message per such line is collected in ``lexicon.warnings``.
    Passing ``remap=None`` skips remapping altogether.
    """
    senses: dict[str, list[CategoryCode]] = {}
    warnings = []
    for lineno, line in data_lines(source):
        fields = line.split("\t")
        if len(fields) != 2:
            raise ParseError(name, lineno,
                             f"expected word<TAB>code, got {len(fields)} field(s)")
        word, raw = fields[0], fields[1].strip()
        if not word:
            raise ParseError(name, lineno, "empty word")
        try:
            code = parse_code(raw)
        except CodeError as exc:
            raise ParseError(name, lineno, str(exc)) from None
        if remap is not None:
            rule = remap.match(code)
            if rule is None:
                warnings.append(f"{name}:{lineno}: no remap rule matches {code}")
            else:
                code = rule.apply(code)
        codes = senses.setdefault(word, [])
        if code not in codes:
            codes.append(code)
    return CodedLexicon({w: tuple(c) for w, c in senses.items()}, warnings)


def lexicon_from_mapping(mapping: Mapping[str, Iterable[str]]) -> CodedLexicon:
    """Build a lexicon directly from already-modified codes."""
    senses = {w: tuple(dict.fromkeys(parse_code(c) for c in codes))
              for w, codes in mapping.items()}
    return CodedLexicon({w: c for w, c in senses.items() if c})
