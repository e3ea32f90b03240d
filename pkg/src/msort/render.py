"""Text, TSV and JSON renderings of msort results."""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Sequence

from msort.codes import parse_code
from msort.engine import Group, GroupedList, Item, SortedRow
from msort.features import FeatureDictionary, ThesaurusNode
from msort.lexicon import Annotation


def _item_text(items):
    return ", ".join(it.word for it in items)


def grouped_text(result: GroupedList) -> str:
    """One ``(Label) w1, w2, ...`` line per group.

    Groups split into display lines print their extra lines indented
    under the first word.
    """
    out = []
    for g in result.all_groups():
        lines = g.lines if g.lines else [g.items]
        head = f"{g.label} " if g.label else ""
        out.append(head + _item_text(lines[0]))
        pad = " " * len(head)
        out.extend(pad + _item_text(line) for line in lines[1:])
    return "".join(line + "\n" for line in out)


def grouped_tsv(result: GroupedList) -> str:
    out = ["group\tword\tpayload"]
    for g in result.all_groups():
        for it in g.items:
            out.append(f"{g.label}\t{it.word}\t{it.payload or ''}")
    return "".join(line + "\n" for line in out)


def _item_json(it: Item) -> dict:
    return {"word": it.word, "payload": it.payload,
            "code": str(it.code) if it.code is not None else None}


def grouped_json(result: GroupedList) -> str:
    doc = {"groups": [], "unknowns": [_item_json(it) for it in result.unknowns]}
    for g in result.groups:
        entry = {"label": g.label, "words": [_item_json(it) for it in g.items]}
        if g.lines is not None:
            entry["lines"] = [len(line) for line in g.lines]
        doc["groups"].append(entry)
    return json.dumps(doc, ensure_ascii=False, indent=2) + "\n"


def _item_from_json(d: dict) -> Item:
    code = d.get("code")
    return Item(d["word"], d.get("payload"), parse_code(code) if code else None)


def grouped_from_json(text: str) -> GroupedList:
    doc = json.loads(text)
    groups = []
    for g in doc["groups"]:
        items = [_item_from_json(d) for d in g["words"]]
        lines = None
        if "lines" in g:
            lines, pos = [], 0
            for n in g["lines"]:
                lines.append(items[pos:pos + n])
                pos += n
        groups.append(Group(g["label"], items, lines))
    return GroupedList(groups, [_item_from_json(d) for d in doc.get("unknowns", [])])


def render_grouped(result: GroupedList, fmt: str) -> str:
    return {"text": grouped_text, "tsv": grouped_tsv, "json": grouped_json}[fmt](result)


def sorted_rows_text(rows: Sequence[SortedRow]) -> str:
    """``code<TAB>text`` per row, markers and words alike."""
    return "".join(f"{r.code}\t{r.text}\n" for r in rows)


def sorted_rows_tsv(rows: Sequence[SortedRow]) -> str:
    return tsv_text(["code", "text", "kind", "payload"],
                    [[str(r.code), r.text, r.kind.value, r.payload or ""] for r in rows])


def annotations_text(rows: Sequence[Annotation]) -> str:
    return "".join(f"{r.code}\t{r.word}\n" for r in rows)


def annotations_tsv(rows: Sequence[Annotation]) -> str:
    return tsv_text(["code", "word", "payload"],
                    [[str(r.code), r.word, r.payload or ""] for r in rows])


def annotations_json(rows: Sequence[Annotation]) -> str:
    doc = [{"code": str(r.code), "word": r.word, "payload": r.payload} for r in rows]
    return json.dumps(doc, ensure_ascii=False, indent=2) + "\n"


def table_text(header: Sequence[str], rows: Sequence[Sequence[str]]) -> str:
    """Left-aligned columns separated by two spaces, trailing blanks trimmed."""
    widths = [len(h) for h in header]
    for row in rows:
        widths = [max(w, len(c)) for w, c in zip(widths, row)]
    lines = []
    for row in [header, *rows]:
        cells = [c.ljust(w) for c, w in zip(row, widths)]
        lines.append("  ".join(cells).rstrip())
    return "".join(line + "\n" for line in lines)


def tsv_text(header: Sequence[str], rows: Sequence[Sequence[str]]) -> str:
    return "".join("\t".join(r) + "\n" for r in [header, *rows])


def sorted_rows_json(rows: Sequence[SortedRow]) -> str:
    doc = [{"code": str(r.code), "text": r.text, "kind": r.kind.value,
            "payload": r.payload} for r in rows]
    return json.dumps(doc, ensure_ascii=False, indent=2) + "\n"


# ----------------------------------------------------------- feature output

def _cell(value):
    return "---" if value is None else value


def ranking_rows(d: FeatureDictionary, order: Sequence[str]) -> list[list[str]]:
    return [[w, *(_cell(v) for v in d.entries[w])] for w in order]


def ranking_text(d: FeatureDictionary, order: Sequence[str]) -> str:
    return table_text(["word", *d.features], ranking_rows(d, order))


def ranking_tsv(d: FeatureDictionary, order: Sequence[str]) -> str:
    rows = [[w, *("-" if v is None else v for v in d.entries[w])] for w in order]
    return tsv_text(["word", *d.features], rows)


def ranking_json(d: FeatureDictionary, order: Sequence[str]) -> str:
    doc = {"features": list(d.features), "order": list(order),
           "entries": {w: list(d.entries[w]) for w in order}}
    return json.dumps(doc, ensure_ascii=False, indent=2) + "\n"


def ranking_from_json(text: str) -> tuple[FeatureDictionary, list[str]]:
    doc = json.loads(text)
    entries = {w: tuple(v) for w, v in doc["entries"].items()}
    return FeatureDictionary(tuple(doc["features"]), entries), list(doc["order"])


def tree_text(root: ThesaurusNode) -> str:
    """Two spaces per level, ``feature=value`` per node, words in brackets."""
    lines = []
    for depth, node in root.walk():
        line = "  " * depth + node.label
        if node.words:
            line += " [" + ", ".join(node.words) + "]"
        lines.append(line)
    return "".join(line + "\n" for line in lines)


def tree_tsv(root: ThesaurusNode) -> str:
    rows = [[str(depth), node.feature or "", node.value or "", ", ".join(node.words)]
            for depth, node in root.walk()]
    return tsv_text(["depth", "feature", "value", "words"], rows)


def tree_json(root: ThesaurusNode) -> str:
    return json.dumps(root.as_json(), ensure_ascii=False, indent=2) + "\n"


def tree_from_json(text: str) -> ThesaurusNode:
    return ThesaurusNode.from_json(json.loads(text))


def hierarchy_text(pairs: Sequence[tuple[str, str]]) -> str:
    return "".join(f"{a} > {b}\n" for a, b in pairs)


def hierarchy_tsv(pairs: Sequence[tuple[str, str]]) -> str:
    return tsv_text(["superordinate", "subordinate"], [list(p) for p in pairs])


def hierarchy_json(pairs: Sequence[tuple[str, str]]) -> str:
    doc = [{"superordinate": a, "subordinate": b} for a, b in pairs]
    return json.dumps(doc, ensure_ascii=False, indent=2) + "\n"


def hierarchy_from_json(text: str) -> list[tuple[str, str]]:
    return [(d["superordinate"], d["subordinate"]) for d in json.loads(text)]


def _sim_rows(scores):
    return [[a, b, f"{s.numerator}/{s.denominator}", f"{float(s):.4f}"]
            for a, b, s in scores]


def similarity_text(scores: Sequence[tuple[str, str, Fraction]]) -> str:
    return table_text(["word1", "word2", "ratio", "value"], _sim_rows(scores))


def similarity_tsv(scores: Sequence[tuple[str, str, Fraction]]) -> str:
    return tsv_text(["word1", "word2", "ratio", "value"], _sim_rows(scores))


def similarity_json(scores: Sequence[tuple[str, str, Fraction]]) -> str:
    doc = [{"word1": a, "word2": b, "ratio": f"{s.numerator}/{s.denominator}",
            "value": float(s)} for a, b, s in scores]
    return json.dumps(doc, ensure_ascii=False, indent=2) + "\n"


def similarity_from_json(text: str) -> list[tuple[str, str, Fraction]]:
    return [(d["word1"], d["word2"], Fraction(d["ratio"])) for d in json.loads(text)]


# ------------------------------------------------------------- pair records

def records_text(columns: Sequence[str], rows: Sequence[dict]) -> str:
    return table_text(columns, [[r.get(c, "") for c in columns] for r in rows])


def records_tsv(columns: Sequence[str], rows: Sequence[dict]) -> str:
    return tsv_text(columns, [[r.get(c, "") for c in columns] for r in rows])


def records_json(columns: Sequence[str], rows: Sequence[dict]) -> str:
    doc = {"columns": list(columns), "rows": [{c: r.get(c, "") for c in columns} for r in rows]}
    return json.dumps(doc, ensure_ascii=False, indent=2) + "\n"


def records_from_json(text: str) -> tuple[list[str], list[dict]]:
    doc = json.loads(text)
    return list(doc["columns"]), list(doc["rows"])
