"""Text formats for quasigroup tables (MQT) and transversal designs (TD).

MQT: header line `mq <arity> <order>`, then order**arity integers in
canonical index order (x1 most significant), whitespace-separated.  Lines
starting with `#` are comments.  Tables round-trip bit-exactly.

TD: header `td <classes> <order> <strength> <index>`, then one block per
line as class-count point ids.
"""

from __future__ import annotations

from .core import MultaryQuasigroup
from .designs import TransversalDesign
from .errors import FormatError


def _data_lines(text: str):
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if line:
            yield line


def read_mqt(text: str) -> MultaryQuasigroup:
    lines = list(_data_lines(text))
    if not lines:
        raise FormatError("empty MQT input")
    header = lines[0].split()
    if len(header) != 3 or header[0] != "mq":
        raise FormatError(f"bad MQT header: {lines[0]!r}")
    try:
        arity, order = int(header[1]), int(header[2])
    except ValueError as exc:
        raise FormatError(f"bad MQT header: {lines[0]!r}") from exc
    values = []
    for line in lines[1:]:
        for tok in line.split():
            try:
                values.append(int(tok))
            except ValueError as exc:
                raise FormatError(f"bad table entry {tok!r}") from exc
    return MultaryQuasigroup(arity, order, tuple(values))


def write_mqt(q: MultaryQuasigroup, comments: tuple[str, ...] = ()) -> str:
    out = [f"mq {q.arity} {q.order}"]
    for c in comments:
        out.append(f"# {c}")
    row = q.order
    for start in range(0, len(q.table), row):
        out.append(" ".join(str(v) for v in q.table[start : start + row]))
    return "\n".join(out) + "\n"


def read_td(text: str) -> TransversalDesign:
    lines = list(_data_lines(text))
    if not lines:
        raise FormatError("empty TD input")
    header = lines[0].split()
    if len(header) != 5 or header[0] != "td":
        raise FormatError(f"bad TD header: {lines[0]!r}")
    try:
        classes, order, strength, index = (int(x) for x in header[1:])
    except ValueError as exc:
        raise FormatError(f"bad TD header: {lines[0]!r}") from exc
    blocks = []
    for line in lines[1:]:
        try:
            block = tuple(int(t) for t in line.split())
        except ValueError as exc:
            raise FormatError(f"bad block line {line!r}") from exc
        if len(block) != classes:
            raise FormatError(
                f"block {block} has {len(block)} points, expected {classes}"
            )
        blocks.append(block)
    class_tuples = tuple(
        tuple(c * order + v for v in range(order)) for c in range(classes)
    )
    return TransversalDesign(class_tuples, tuple(blocks), strength, index)


def write_td(design: TransversalDesign, comments: tuple[str, ...] = ()) -> str:
    out = [
        f"td {design.class_count} {design.points_per_class} "
        f"{design.strength} {design.index}"
    ]
    for c in comments:
        out.append(f"# {c}")
    for block in design.blocks:
        out.append(" ".join(str(p) for p in block))
    return "\n".join(out) + "\n"
