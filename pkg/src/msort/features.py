"""Dictionaries that describe each word by a record of feature values.

Treating each feature as one level of an imaginary is-a hierarchy lets
the same dictionary be sorted, or turned into a tree, under any ordering
of its features.  Unspecified values (``None``) sort before every
specified value.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator, Sequence, TextIO

from msort._lines import data_lines
from msort.errors import MsortError, ParseError, UnknownWordError
from msort.lexicon import CodedLexicon, KeyPolicy

UNSPECIFIED_CELLS = frozenset({"", "-", "---"})

Record = tuple["str | None", ...]


class FeatureError(MsortError, ValueError):
    pass


@dataclass
class FeatureDictionary:
    features: tuple[str, ...]
    entries: dict[str, Record] = field(default_factory=dict)

    def __post_init__(self):
        self.features = tuple(self.features)
        if len(set(self.features)) != len(self.features):
            raise FeatureError(f"duplicate feature names in {self.features}")
        for word, rec in self.entries.items():
            if len(rec) != len(self.features):
                raise FeatureError(
                    f"{word!r} has {len(rec)} values for {len(self.features)} features")

    @property
    def words(self) -> list[str]:
        return list(self.entries)

    def record(self, word: str) -> Record:
        try:
            return self.entries[word]
        except KeyError:
            raise UnknownWordError(word) from None

    def specified(self, word: str) -> dict[str, str]:
        return {f: v for f, v in zip(self.features, self.record(word)) if v is not None}


def check_priority(d: FeatureDictionary, priority: Sequence[str] | None) -> tuple[int, ...]:
    """Feature indices in priority order; ``priority`` must permute the features."""
    if priority is None:
        return tuple(range(len(d.features)))
    priority = list(priority)
    unknown = [p for p in priority if p not in d.features]
    if unknown:
        raise FeatureError(f"unknown feature(s) {', '.join(unknown)}")
    if len(set(priority)) != len(priority):
        raise FeatureError("priority repeats a feature")
    missing = [f for f in d.features if f not in priority]
    if missing:
        raise FeatureError(f"priority omits feature(s) {', '.join(missing)}")
    return tuple(d.features.index(p) for p in priority)


def value_key(value_lexicon: CodedLexicon | None = None,
              policy: KeyPolicy = KeyPolicy.MINIMUM_CODE):
    """Sort key for specified feature values.

    Plain string order by default.  With a lexicon, values are ordered by
    their own category codes; values the lexicon lacks come after.
    """
    if value_lexicon is None:
        return lambda v: (0, (), v)

    def key(v):
        code = value_lexicon.sort_key(v, policy)
        return (1, (), v) if code is None else (0, code.rank_key(), v)
    return key


def msort_by_features(d: FeatureDictionary, priority: Sequence[str] | None = None,
                      value_lexicon: CodedLexicon | None = None,
                      policy: KeyPolicy = KeyPolicy.MINIMUM_CODE) -> list[str]:
    order = check_priority(d, priority)
    vkey = value_key(value_lexicon, policy)

    def key(word):
        rec = d.entries[word]
        return tuple((0,) if rec[i] is None else (1, vkey(rec[i])) for i in order)

    return sorted(d.entries, key=key)


@dataclass
class ThesaurusNode:
    feature: str | None = None
    value: str | None = None
    words: list[str] = field(default_factory=list)
    children: list["ThesaurusNode"] = field(default_factory=list)

    @property
    def label(self) -> str:
        return "(root)" if self.feature is None else f"{self.feature}={self.value}"

    def child(self, feature: str, value: str) -> "ThesaurusNode | None":
        for c in self.children:
            if c.feature == feature and c.value == value:
                return c
        return None

    def walk(self, depth: int = 0) -> Iterator[tuple[int, "ThesaurusNode"]]:
        yield depth, self
        for c in self.children:
            yield from c.walk(depth + 1)

    def iter_words(self) -> Iterator[str]:
        for _, node in self.walk():
            yield from node.words

    def find(self, *steps: tuple[str, str]) -> "ThesaurusNode | None":
        node = self
        for feature, value in steps:
            node = node.child(feature, value)
            if node is None:
                return None
        return node

    def chain_of(self, word: str) -> list[tuple[str, str]] | None:
        """The (feature, value) steps from this node down to ``word``."""
        if word in self.words:
            return []
        for c in self.children:
            rest = c.chain_of(word)
            if rest is not None:
                return [(c.feature, c.value), *rest]
        return None

    def as_json(self) -> dict:
        out = {"feature": self.feature, "value": self.value, "words": list(self.words)}
        out["children"] = [c.as_json() for c in self.children]
        return out

    @classmethod
    def from_json(cls, data: dict) -> "ThesaurusNode":
        return cls(data.get("feature"), data.get("value"), list(data.get("words", [])),
                   [cls.from_json(c) for c in data.get("children", [])])


def derive_thesaurus(d: FeatureDictionary, priority: Sequence[str] | None = None,
                     value_lexicon: CodedLexicon | None = None,
                     policy: KeyPolicy = KeyPolicy.MINIMUM_CODE) -> ThesaurusNode:
    """Build a tree whose levels follow ``priority``.

    A word walks down through its specified values in priority order,
    skipping unspecified features, and is attached to the node it ends
    on.  Children are ordered so that a depth-first read gives the same
    word sequence as :func:`msort_by_features`: a child branching on a
    later feature comes first (its words are unspecified on the earlier
    ones), and same-feature siblings follow value order.
    """
    order = check_priority(d, priority)
    rank = {d.features[i]: pos for pos, i in enumerate(order)}
    vkey = value_key(value_lexicon, policy)
    root = ThesaurusNode()
    for word, rec in d.entries.items():
        node = root
        for i in order:
            value = rec[i]
            if value is None:
                continue
            feature = d.features[i]
            nxt = node.child(feature, value)
            if nxt is None:
                nxt = ThesaurusNode(feature, value)
                node.children.append(nxt)
            node = nxt
        node.words.append(word)

    def arrange(node):
        node.children.sort(key=lambda c: (-rank[c.feature], vkey(c.value)))
        for c in node.children:
            arrange(c)

    arrange(root)
    return root


def infer_hierarchy(d: FeatureDictionary) -> set[tuple[str, str]]:
    """Superordinate/subordinate pairs from inclusion of specified features.

    ``(a, b)`` is included when every feature ``a`` specifies is specified
    identically in ``b`` and ``b`` specifies strictly more.
    """
    specified = {w: d.specified(w) for w in d.entries}
    pairs = set()
    for a, fa in specified.items():
        for b, fb in specified.items():
            if len(fb) > len(fa) and all(fb.get(f) == v for f, v in fa.items()):
                pairs.add((a, b))
    return pairs


def similarity(d: FeatureDictionary, w1: str, w2: str) -> Fraction:
    """Share of features on which two words agree.

    Two unspecified values count as agreeing.
    """
    r1, r2 = d.record(w1), d.record(w2)
    if not d.features:
        return Fraction(1)
    same = sum(a == b for a, b in zip(r1, r2))
    return Fraction(same, len(d.features))


def load_feature_dictionary(stream: Iterable[str] | TextIO,
                            name: str = "<dictionary>") -> FeatureDictionary:
    features = None
    entries: dict[str, Record] = {}
    for lineno, line in data_lines(stream):
        fields = [f.strip() for f in line.split("\t")]
        if features is None:
            features = tuple(fields[1:])
            if len(set(features)) != len(features) or "" in features:
                raise ParseError(name, lineno, "feature names must be unique and non-empty")
            continue
        if len(fields) != len(features) + 1:
            raise ParseError(name, lineno,
                             f"expected {len(features) + 1} fields, got {len(fields)}")
        word = fields[0]
        if not word:
            raise ParseError(name, lineno, "empty word")
        if word in entries:
            raise ParseError(name, lineno, f"duplicate word {word!r}")
        entries[word] = tuple(None if v in UNSPECIFIED_CELLS else v for v in fields[1:])
    if features is None:
        raise ParseError(name, 1, "missing header row")
    return FeatureDictionary(features, entries)
