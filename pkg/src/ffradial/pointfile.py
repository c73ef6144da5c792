"""
Text format for point sets::

    # q=3 n=2
    0,0
    2,1

One point per line, coordinates in [0, q) separated by commas.  Blank lines
are ignored.  Points are written in increasing index order.
"""

import re

from .ambient import AmbientSpace, PointSet
from .errors import FFRadialError, HeaderMismatch, ParseError

_HEADER = re.compile(r"^#\s*q\s*=\s*(\d+)\s+n\s*=\s*(\d+)\s*$")


def format_pointset(E):
    lines = [f"# q={E.space.q} n={E.space.n}"]
    lines.extend(",".join(str(c) for c in x) for x in E)
    return "\n".join(lines) + "\n"


def parse_pointset_text(text, space=None):
    """Parse the text format; if ``space`` is given the header must match it."""
    lines = text.splitlines()
    if not lines:
        raise ParseError("missing header", line=1)
    m = _HEADER.match(lines[0].strip())
    if not m:
        raise ParseError(f"bad header {lines[0]!r}, expected '# q=<q> n=<n>'", line=1)
    q, n = int(m.group(1)), int(m.group(2))
    if space is None:
        try:
            space = AmbientSpace(q, n)
        except FFRadialError as exc:
            raise ParseError(str(exc), line=1) from exc
    elif (space.q, space.n) != (q, n):
        raise HeaderMismatch(f"file is over q={q} n={n}, expected q={space.q} n={space.n}",
                             line=1)
    E = PointSet(space)
    for lineno, raw in enumerate(lines[1:], start=2):
        raw = raw.strip()
        if not raw:
            continue
        try:
            coords = [int(tok) for tok in raw.split(",")]
        except ValueError:
            raise ParseError(f"non-integer coordinate in {raw!r}", line=lineno) from None
        if len(coords) != n:
            raise ParseError(f"expected {n} coordinates, got {len(coords)}", line=lineno)
        if any(not 0 <= c < q for c in coords):
            raise ParseError(f"coordinate outside [0, {q}) in {raw!r}", line=lineno)
        E.add(coords)
    return E


def parse_pointset(path, space=None):
    with open(path, encoding="utf-8") as fh:
        return parse_pointset_text(fh.read(), space)


def write_pointset(path, E):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(format_pointset(E))
