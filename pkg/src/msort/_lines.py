from typing import Iterable, Iterator


def data_lines(stream: Iterable[str]) -> Iterator[tuple[int, str]]:
    """Yield (lineno, line) for non-blank, non-comment lines."""
    for lineno, raw in enumerate(stream, 1):
        line = raw.rstrip("\r\n")
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        yield lineno, line
