"""Sort word lists into meaning order using thesaurus resources."""

from msort.codes import (
    CategoryCode,
    MarkerTable,
    RemapRule,
    RemapTable,
    UnmatchedCodeWarning,
    compare_codes,
    load_marker_table,
    load_remap_table,
    marker_rows,
    parse_code,
    remap_code,
)
from msort.engine import (
    Group,
    GroupedList,
    Item,
    RowKind,
    SortedRow,
    annotate,
    condense,
    group_keywords,
    msort,
    msort_pairs,
    sort_annotations,
)
from msort.errors import (
    CodeError,
    MissingColumnError,
    MsortError,
    ParseError,
    UnknownWordError,
)
from msort.features import (
    FeatureDictionary,
    ThesaurusNode,
    derive_thesaurus,
    infer_hierarchy,
    load_feature_dictionary,
    msort_by_features,
    similarity,
)
from msort.lexicon import (
    Annotation,
    CodedLexicon,
    KeyPolicy,
    load_lexicon,
    lookup,
    sort_key,
)
from msort.paths import PathThesaurus, load_thesaurus, msort_by_path, path_keys

__version__ = "0.1.0"
