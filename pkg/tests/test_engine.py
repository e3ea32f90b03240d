import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from msort.codes import ALPHABET, MarkerTable, compare_codes, parse_code
from msort.engine import (
    RowKind,
    annotate,
    condense,
    group_keywords,
    msort,
    msort_pairs,
    sort_annotations,
)
from msort.errors import MissingColumnError
from msort.lexicon import Annotation, KeyPolicy, lexicon_from_mapping
from msort.resources import load_markers
from tests.conftest import read_lexicon, read_words
from tests.oracles import msort_oracle
from tests.reference import (
    ANNOTATED_EVENT_ROWS,
    EAT_NOMINATIVE_GROUPS,
    EAT_OBJECTIVE_GROUPS,
    EAT_OPTIONAL_GROUPS,
    EVENT_GROUPS,
    KEYWORD_LINES,
    KEYWORDS,
    PAIR_BLOCKS,
    SORTED_EVENT_ROWS,
    TAGGED_PAIRS,
)


def groups_of(result):
    return [(g.label, g.words) for g in result.all_groups()]


def test_annotate_expands_senses_in_input_order(event_lexicon, event_words):
    rows, unknowns = annotate(event_words, event_lexicon)
    assert [(str(r.code), r.word) for r in rows] == ANNOTATED_EVENT_ROWS
    assert unknowns == []


def test_annotate_trivial(event_lexicon):
    assert annotate([], event_lexicon) == ([], [])
    rows, _ = annotate(["a temple"], event_lexicon)
    assert len(rows) == 2
    rows, unknowns = annotate([("xyzzy", "3"), "Japan"], event_lexicon)
    assert [u.word for u in unknowns] == ["xyzzy"] and unknowns[0].payload == "3"


def test_sort_annotations_reproduces_sorted_listing(event_lexicon, event_words, markers):
    rows, _ = annotate(event_words, event_lexicon)
    out = sort_annotations(rows, markers)
    assert [(str(r.code), r.text) for r in out] == SORTED_EVENT_ROWS
    assert sum(r.kind is RowKind.MARKER for r in out) == 14


def test_sort_annotations_trivial():
    row = Annotation(parse_code("5200000001"), "x")
    assert [r.text for r in sort_annotations([row], MarkerTable())] == ["x"]
    a = Annotation(parse_code("5200000001"), "first")
    b = Annotation(parse_code("5200000001"), "second")
    assert [r.text for r in sort_annotations([a, b], MarkerTable())] == ["first", "second"]


def test_marker_precedes_equal_word_code():
    markers = MarkerTable.from_pairs([("5200000000", "(Human)")])
    row = Annotation(parse_code("5200000000"), "x")
    out = sort_annotations([row], markers)
    assert [r.kind for r in out] == [RowKind.MARKER, RowKind.WORD]


def test_payload_tiebreak():
    rows = [Annotation(parse_code("5200000001"), w, p)
            for w, p in [("rare", "2"), ("none", None), ("common", "40"), ("odd", "x")]]
    plain = sort_annotations(rows, MarkerTable())
    assert [r.text for r in plain] == ["rare", "none", "common", "odd"]
    ranked = sort_annotations(rows, MarkerTable(), payload_tiebreak=True)
    assert [r.text for r in ranked] == ["common", "rare", "none", "odd"]


def test_condense_matches_final_grouping(event_lexicon, event_words, short_markers):
    rows, _ = annotate(event_words, event_lexicon)
    result = condense(sort_annotations(rows, short_markers))
    assert groups_of(result) == EVENT_GROUPS


def test_condense_without_dedup_keeps_repeats(event_lexicon, event_words, short_markers):
    rows, _ = annotate(event_words, event_lexicon)
    result = condense(sort_annotations(rows, short_markers), dedup=False)
    org = result.as_dict()["(Organization)"]
    assert org.count("a temple") == 2


def test_condense_markers_only(markers):
    assert condense(sort_annotations([], markers)).groups == []
    kept = condense(sort_annotations([], markers), drop_empty=False)
    assert len(kept.groups) == 14


def test_words_before_first_marker_form_unlabeled_group():
    markers = MarkerTable.from_pairs([("5200000000", "(Human)")])
    rows = [Annotation(parse_code("1000000000"), "early"),
            Annotation(parse_code("5210000000"), "late")]
    result = condense(sort_annotations(rows, markers))
    assert groups_of(result) == [("", ["early"]), ("(Human)", ["late"])]


def test_msort_end_to_end(event_lexicon, event_words, short_markers):
    result = msort(event_words, event_lexicon, short_markers)
    assert groups_of(result) == EVENT_GROUPS
    assert result.unknowns == []


def test_msort_unknown_only(event_lexicon):
    assert groups_of(msort(["xyzzy"], event_lexicon)) == [("(Unknown)", ["xyzzy"])]


@pytest.mark.parametrize("words_file, expected", [
    ("eat_nominative.txt", EAT_NOMINATIVE_GROUPS),
    ("eat_objective.txt", EAT_OBJECTIVE_GROUPS),
    ("eat_optional.txt", EAT_OPTIONAL_GROUPS),
])
def test_case_frame_lists(words_file, expected):
    lex = read_lexicon("eat_lexicon.tsv")
    assert lex.warnings == []
    result = msort(read_words(words_file), lex, load_markers("markers_caseframe.tsv"))
    assert groups_of(result) == expected


def test_no_group_empty_and_no_repeats_within_group(event_lexicon, event_words):
    result = msort(event_words, event_lexicon)
    for g in result.groups:
        assert g.items
        assert len(set(g.words)) == len(g.words)


# ------------------------------------------------------------------ pairs

def test_pairs_restore_block_structure(pair_rows):
    lex = read_lexicon("pairs_lexicon.tsv")
    ordered = msort_pairs(pair_rows, lex, ["X", "Y"])
    xs = [r["X"] for r in ordered]
    blocks = [x for i, x in enumerate(xs) if i == 0 or xs[i - 1] != x]
    assert blocks == PAIR_BLOCKS
    # constructed codes reproduce the printed order inside each block as well
    assert [(r["X"], r["Y"], r["relation"]) for r in ordered] == TAGGED_PAIRS


def test_pairs_trivial():
    lex = lexicon_from_mapping({"a": ["5200000000"], "b": ["5200000000"]})
    assert msort_pairs([{"X": "a"}], lex, ["X"]) == [{"X": "a"}]
    rows = [{"X": "b", "n": "1"}, {"X": "a", "n": "2"}]
    assert msort_pairs(rows, lex, ["X"]) == rows


def test_pairs_unknown_keys_sort_last():
    lex = lexicon_from_mapping({"a": ["ab00000001"], "b": ["5100000001"]})
    rows = [{"X": "zz"}, {"X": "a"}, {"X": "b"}]
    assert [r["X"] for r in msort_pairs(rows, lex, ["X"])] == ["b", "a", "zz"]


def test_pairs_policy():
    lex = lexicon_from_mapping({"a": ["ab00000001", "5100000001"], "b": ["6100000001"]})
    rows = [{"X": "b"}, {"X": "a"}]
    assert [r["X"] for r in msort_pairs(rows, lex, ["X"])] == ["a", "b"]
    first = msort_pairs(rows, lex, ["X"], KeyPolicy.FIRST_SENSE)
    assert [r["X"] for r in first] == ["b", "a"]


def test_pairs_missing_column():
    lex = lexicon_from_mapping({})
    with pytest.raises(MissingColumnError, match="'Z'"):
        msort_pairs([{"X": "a"}], lex, ["Z"])
    with pytest.raises(MissingColumnError, match="'Y'"):
        msort_pairs([], lex, ["X", "Y"], columns=["X"])


# --------------------------------------------------------------- keywords

def keyword_lexicon():
    return read_lexicon("keywords_lexicon.tsv")


def test_keyword_lines():
    result = group_keywords(KEYWORDS, keyword_lexicon())
    got = [(g.label, [[it.word for it in line] for line in g.lines]) for g in result.groups]
    assert got == KEYWORD_LINES


def test_keyword_prefix_ten_gives_one_word_per_line():
    result = group_keywords(KEYWORDS, keyword_lexicon(), prefix_length=10)
    for g in result.groups:
        assert all(len(line) == 1 for line in g.lines)


def test_keyword_single_word():
    result = group_keywords(["a word"], keyword_lexicon())
    assert len(result.groups) == 1 and result.groups[0].lines == [result.groups[0].items]


def test_keyword_prefix_bounds():
    with pytest.raises(ValueError):
        group_keywords(KEYWORDS, keyword_lexicon(), prefix_length=0)
    with pytest.raises(ValueError):
        group_keywords(KEYWORDS, keyword_lexicon(), prefix_length=11)


# ------------------------------------------------------------- properties

SMALL = "0159ad"


@st.composite
def instances(draw):
    n_words = draw(st.integers(0, 8))
    code = st.text(alphabet=SMALL, min_size=10, max_size=10)
    senses = {f"w{i}": draw(st.lists(code, min_size=1, max_size=3, unique=True))
              for i in range(n_words)}
    words = draw(st.lists(st.sampled_from([*senses, "nope"]) if senses else st.just("nope"),
                          max_size=10))
    marker_codes = draw(st.lists(st.text(alphabet=SMALL, min_size=1, max_size=3),
                                 max_size=5, unique=True))
    markers = [(m.ljust(10, "0"), f"(M{i})") for i, m in enumerate(marker_codes)]
    return senses, words, markers


@settings(max_examples=300)
@given(instances(), st.booleans())
def test_msort_matches_brute_force(instance, dedup):
    senses, words, markers = instance
    lex = lexicon_from_mapping(senses)
    result = msort(words, lex, MarkerTable.from_pairs(markers), dedup=dedup)
    expected_groups, expected_unknowns = msort_oracle(words, senses, markers, dedup)
    assert [(g.label, g.words) for g in result.groups] == expected_groups
    assert [u.word for u in result.unknowns] == expected_unknowns


@given(instances())
def test_code_monotonicity_and_conservation(instance):
    senses, words, markers = instance
    lex = lexicon_from_mapping(senses)
    rows, unknowns = annotate(words, lex)
    ordered = sort_annotations(rows, MarkerTable.from_pairs(markers))
    assert all(compare_codes(a.code, b.code) <= 0 for a, b in zip(ordered, ordered[1:]))
    result = msort(words, lex, MarkerTable.from_pairs(markers), dedup=False)
    out = sorted(w for g in result.all_groups() for w in g.words)
    assert out == sorted([r.word for r in rows] + [u.word for u in unknowns])


@given(instances())
def test_condense_idempotent(instance):
    senses, words, markers = instance
    table = MarkerTable.from_pairs(markers)
    lex = lexicon_from_mapping(senses)
    first = msort(words, lex, table)
    # feed the condensed groups back through as rows with their contributing codes
    rows = [Annotation(it.code, it.word, it.payload) for g in first.groups for it in g.items]
    again = condense(sort_annotations(rows, table))
    assert [(g.label, g.words) for g in again.groups] == [(g.label, g.words) for g in first.groups]


@given(st.data())
def test_permutation_robustness(data):
    n = data.draw(st.integers(1, 8))
    codes = data.draw(st.lists(st.text(alphabet=ALPHABET, min_size=10, max_size=10),
                               min_size=n, max_size=n * 3, unique=True))
    senses = {}
    for i, code in enumerate(codes):
        senses.setdefault(f"w{i % n}", []).append(code)
    lex = lexicon_from_mapping(senses)
    words = list(senses)
    shuffled = data.draw(st.permutations(words))
    markers = load_markers("markers.tsv")
    assert groups_of(msort(words, lex, markers)) == groups_of(msort(shuffled, lex, markers))


def test_random_instances_seeded():
    rnd = random.Random(11)
    for _ in range(200):
        senses = {f"w{i}": sorted({"".join(rnd.choice(SMALL) for _ in range(10))
                                   for _ in range(rnd.randint(1, 3))})
                  for i in range(rnd.randint(0, 8))}
        words = [rnd.choice([*senses, "nope"]) for _ in range(rnd.randint(0, 10))]
        markers = [(m.ljust(10, "0"), f"(M{m})") for m in
                   sorted({"".join(rnd.choice(SMALL) for _ in range(rnd.randint(1, 3)))
                            for _ in range(rnd.randint(0, 5))})]
        result = msort(words, lexicon_from_mapping(senses), MarkerTable.from_pairs(markers))
        groups, unknowns = msort_oracle(words, senses, markers)
        assert [(g.label, g.words) for g in result.groups] == groups
        assert [u.word for u in result.unknowns] == unknowns
