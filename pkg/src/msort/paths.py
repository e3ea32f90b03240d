"""Meaning sort over is-a thesauri that carry no category codes.

Every node holds a definition string.  The chain of definitions from a
root down to the node a word is attached to plays the role of the
word's category code: paths are compared term by term, and the first
few terms of the path serve as the division marker.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, TextIO

from msort._lines import data_lines
from msort.engine import Group, GroupedList, Item, WordInput, _entries
from msort.errors import MsortError, ParseError
from msort.lexicon import CodedLexicon, KeyPolicy

SEPARATOR = " : "

DefinitionPath = tuple[str, ...]


class ThesaurusError(MsortError):
    pass


@dataclass(frozen=True)
class Node:
    id: str
    definition: str
    parents: tuple[str, ...] = ()


@dataclass
class PathThesaurus:
    nodes: dict[str, Node]
    word_senses: dict[str, tuple[str, ...]] = field(default_factory=dict)

    def __post_init__(self):
        for node in self.nodes.values():
            if "\t" in node.definition:
                raise ThesaurusError(f"definition of node {node.id!r} contains a tab")
            for p in node.parents:
                if p not in self.nodes:
                    raise ThesaurusError(f"node {node.id!r} has unknown parent {p!r}")
        for word, ids in self.word_senses.items():
            for i in ids:
                if i not in self.nodes:
                    raise ThesaurusError(f"word {word!r} refers to unknown node {i!r}")
        self._paths: dict[str, list[DefinitionPath]] = {}
        self._check_acyclic()

    def _check_acyclic(self):
        state: dict[str, int] = {}

        def visit(nid, trail):
            mark = state.get(nid)
            if mark == 2:
                return
            if mark == 1:
                cycle = " -> ".join([*trail[trail.index(nid):], nid])
                raise ThesaurusError(f"cycle in parent links: {cycle}")
            state[nid] = 1
            trail.append(nid)
            for p in self.nodes[nid].parents:
                visit(p, trail)
            trail.pop()
            state[nid] = 2

        for nid in self.nodes:
            visit(nid, [])

    @property
    def roots(self) -> list[str]:
        return [n.id for n in self.nodes.values() if not n.parents]

    def node_paths(self, node_id: str) -> list[DefinitionPath]:
        """Every root-to-node definition path, following parents in order."""
        cached = self._paths.get(node_id)
        if cached is not None:
            return cached
        node = self.nodes[node_id]
        if not node.parents:
            paths = [(node.definition,)]
        else:
            paths = [p + (node.definition,)
                     for parent in node.parents
                     for p in self.node_paths(parent)]
        self._paths[node_id] = paths
        return paths


def path_keys(th: PathThesaurus, word: str) -> list[DefinitionPath] | None:
    """All definition paths of ``word``: one per sense and route.

    Returns None for words the thesaurus does not know.
    """
    ids = th.word_senses.get(word)
    if ids is None:
        return None
    return [p for nid in ids for p in th.node_paths(nid)]


def _term_key(lex: CodedLexicon | None, policy: KeyPolicy):
    if lex is None:
        return lambda term: term

    def key(term):
        code = lex.sort_key(term, policy)
        if code is None:
            return (1, (), term)
        return (0, code.rank_key(), term)
    return key


def msort_by_path(words: Iterable[WordInput], th: PathThesaurus,
                  marker_depth: int = 3, sibling_lexicon: CodedLexicon | None = None,
                  policy: KeyPolicy = KeyPolicy.MINIMUM_CODE,
                  dedup: bool = True) -> GroupedList:
    """Meaning-sort words by their definition paths.

    Sibling terms compare as plain strings unless ``sibling_lexicon`` is
    given, in which case each term is ordered by its own category code
    (terms missing from that lexicon after all coded ones).  The first
    ``marker_depth`` terms of a path form its group label.
    """
    if marker_depth < 1:
        raise ValueError(f"marker_depth must be >= 1, got {marker_depth}")
    term_key = _term_key(sibling_lexicon, policy)
    rows = []
    unknowns = []
    for word, payload in _entries(words):
        paths = path_keys(th, word)
        if paths is None:
            unknowns.append(Item(word, payload))
            continue
        for path in paths:
            rows.append((tuple(term_key(t) for t in path), path, word, payload))
    rows.sort(key=lambda r: r[0])

    groups: list[Group] = []
    last_label = None
    seen: set[str] = set()
    for _, path, word, payload in rows:
        label = "(" + SEPARATOR.join(path[:marker_depth]) + ")"
        if label != last_label:
            groups.append(Group(label))
            last_label = label
            seen = set()
        if dedup and word in seen:
            continue
        seen.add(word)
        groups[-1].items.append(Item(word, payload))
    return GroupedList(groups, unknowns)


def load_thesaurus(stream: Iterable[str] | TextIO,
                   name: str = "<thesaurus>") -> PathThesaurus:
    """Read ``NODE`` and ``WORD`` records.

    ``NODE<TAB>id<TAB>parents<TAB>definition`` where parents is ``-`` for
    a root or a comma-separated list of node ids, and
    ``WORD<TAB>word<TAB>node-id``; a word listed on several lines has
    several senses.
    """
    nodes: dict[str, Node] = {}
    senses: dict[str, list[str]] = {}
    where: dict[str, int] = {}
    refs: list[tuple[int, str]] = []
    for lineno, line in data_lines(stream):
        fields = line.split("\t")
        kind = fields[0]
        if kind == "NODE":
            if len(fields) != 4:
                raise ParseError(name, lineno, "NODE needs id, parents, definition")
            _, nid, parents, definition = fields
            if not nid or not definition:
                raise ParseError(name, lineno, "empty node id or definition")
            if nid in nodes:
                raise ParseError(name, lineno,
                                 f"node {nid!r} already defined on line {where[nid]}")
            plist = () if parents == "-" else tuple(p.strip() for p in parents.split(","))
            nodes[nid] = Node(nid, definition, plist)
            where[nid] = lineno
        elif kind == "WORD":
            if len(fields) != 3:
                raise ParseError(name, lineno, "WORD needs word and node id")
            _, word, nid = fields
            refs.append((lineno, nid))
            ids = senses.setdefault(word, [])
            if nid not in ids:
                ids.append(nid)
        else:
            raise ParseError(name, lineno, f"unknown record type {kind!r}")
    for nid, node in nodes.items():
        for p in node.parents:
            if p not in nodes:
                raise ParseError(name, where[nid], f"unknown parent node {p!r}")
    for lineno, nid in refs:
        if nid not in nodes:
            raise ParseError(name, lineno, f"unknown node {nid!r}")
    try:
        return PathThesaurus(nodes, {w: tuple(ids) for w, ids in senses.items()})
    except ThesaurusError as exc:
        raise ParseError(name, 0, str(exc)) from None

