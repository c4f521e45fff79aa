"""Text formats: poset files, trace files, and DOT export.

Poset files are line-oriented and list points in creation order, which
makes forward cover references impossible in well-formed files:

    posetfile 1
    A 1 :
    B 1 :
    C 1 : A

Trace files mirror the per-ideal report structure of a construction run
(deletion set, total insertion weight, existing insertion points, new
points with weights). Both formats re-emit byte-identically after a
read/write cycle.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import IO, Iterable, Optional, Sequence, Union

from .poset import Ideal, Poset, PosetError
from .process import ProcessTrace

POSET_HEADER = "posetfile 1"
TRACE_HEADER = "tracefile 1"

_NAME_RE = re.compile(r"^[A-Za-z_][A-Za-z0-9_]*$")


class FormatError(ValueError):
    """Parse failure, reported with a 1-based line number."""

    def __init__(self, message: str, line: Optional[int] = None):
        prefix = f"line {line}: " if line is not None else ""
        super().__init__(prefix + message)
        self.line = line


def poset_to_text(poset: Poset) -> str:
    lines = [POSET_HEADER]
    for pid in poset.point_ids():
        covers = "".join(
            " " + poset.name(c) for c in sorted(poset.lower_covers(pid))
        )
        lines.append(f"{poset.name(pid)} {poset.weight(pid)} :{covers}")
    return "\n".join(lines) + "\n"


def poset_from_text(text: str) -> Poset:
    lines = text.splitlines()
    if not lines or lines[0].strip() != POSET_HEADER:
        raise FormatError(f"expected header {POSET_HEADER!r}", 1)
    poset = Poset()
    for lineno, raw in enumerate(lines[1:], start=2):
        line = raw.strip()
        if not line:
            continue
        head, colon, tail = line.partition(":")
        if not colon:
            raise FormatError("missing ':' separating covers", lineno)
        fields = head.split()
        if len(fields) != 2:
            raise FormatError(
                f"expected '<name> <weight> : <covers...>', got {line!r}", lineno
            )
        name, weight_text = fields
        if not _NAME_RE.match(name):
            raise FormatError(f"invalid point name {name!r}", lineno)
        try:
            weight = int(weight_text)
        except ValueError:
            raise FormatError(f"invalid weight {weight_text!r}", lineno) from None
        cover_ids = []
        for cover_name in tail.split():
            try:
                cover_ids.append(poset.id_of(cover_name))
            except PosetError:
                raise FormatError(
                    f"cover {cover_name!r} does not reference an earlier point",
                    lineno,
                ) from None
        try:
            poset.add_point(weight, cover_ids, name=name)
        except PosetError as exc:
            raise FormatError(str(exc), lineno) from None
    return poset


def write_poset(poset: Poset, file: Union[str, IO[str]]) -> None:
    text = poset_to_text(poset)
    if isinstance(file, str):
        with open(file, "w", encoding="ascii") as fh:
            fh.write(text)
    else:
        file.write(text)


def read_poset(file: Union[str, IO[str]]) -> Poset:
    if isinstance(file, str):
        with open(file, "r", encoding="ascii") as fh:
            text = fh.read()
    else:
        text = file.read()
    return poset_from_text(text)


# -- trace files ---------------------------------------------------------


@dataclass(frozen=True)
class TraceFileRecord:
    """One processed ideal, in point names."""

    ideal: tuple[str, ...]
    deletion: tuple[str, ...]
    total_insertion_weight: int
    existing: tuple[str, ...]
    created: tuple[tuple[str, int], ...]


def trace_records(poset: Poset, trace: ProcessTrace) -> list[TraceFileRecord]:
    out = []
    for rec in trace:
        o = rec.outcome
        out.append(
            TraceFileRecord(
                ideal=tuple(poset.name(p) for p in o.ideal),
                deletion=tuple(poset.name(p) for p in sorted(o.deletion_set)),
                total_insertion_weight=o.total_insertion_weight,
                existing=tuple(
                    poset.name(p) for p in sorted(o.old_insertion_points)
                ),
                created=tuple((poset.name(p), w) for p, w in rec.created),
            )
        )
    return out


def trace_to_text(records: Iterable[TraceFileRecord]) -> str:
    lines = [TRACE_HEADER]
    for rec in records:
        lines.append("ideal:" + "".join(" " + n for n in rec.ideal))
        lines.append("deletion:" + "".join(" " + n for n in rec.deletion))
        lines.append(f"total: {rec.total_insertion_weight}")
        lines.append("existing:" + "".join(" " + n for n in rec.existing))
        lines.append(
            "new:" + "".join(f" {name}={w}" for name, w in rec.created)
        )
        lines.append("")
    return "\n".join(lines) + "\n"


def trace_from_text(text: str) -> list[TraceFileRecord]:
    lines = text.splitlines()
    if not lines or lines[0].strip() != TRACE_HEADER:
        raise FormatError(f"expected header {TRACE_HEADER!r}", 1)
    records: list[TraceFileRecord] = []
    fields: dict[str, str] = {}
    start_line = 0

    def finish(lineno: int) -> None:
        nonlocal fields
        if not fields:
            return
        missing = {"ideal", "deletion", "total", "existing", "new"} - set(fields)
        if missing:
            raise FormatError(
                f"record missing fields {sorted(missing)}", lineno
            )
        try:
            total = int(fields["total"])
        except ValueError:
            raise FormatError(
                f"invalid total {fields['total']!r}", lineno
            ) from None
        created = []
        for token in fields["new"].split():
            name, eq, w = token.partition("=")
            if not eq:
                raise FormatError(f"invalid new-point token {token!r}", lineno)
            created.append((name, int(w)))
        records.append(
            TraceFileRecord(
                ideal=tuple(fields["ideal"].split()),
                deletion=tuple(fields["deletion"].split()),
                total_insertion_weight=total,
                existing=tuple(fields["existing"].split()),
                created=tuple(created),
            )
        )
        fields = {}

    for lineno, raw in enumerate(lines[1:], start=2):
        line = raw.strip()
        if not line:
            finish(lineno)
            continue
        key, colon, value = line.partition(":")
        if not colon or key not in {"ideal", "deletion", "total", "existing", "new"}:
            raise FormatError(f"unexpected trace line {line!r}", lineno)
        if key in fields:
            raise FormatError(f"duplicate field {key!r} in record", lineno)
        if not fields:
            start_line = lineno
        fields[key] = value.strip()
    finish(start_line or len(lines))
    return records


def write_trace(poset: Poset, trace: ProcessTrace, file: Union[str, IO[str]]) -> None:
    text = trace_to_text(trace_records(poset, trace))
    if isinstance(file, str):
        with open(file, "w", encoding="ascii") as fh:
            fh.write(text)
    else:
        file.write(text)


# -- DOT export ----------------------------------------------------------

FILL_IDEAL = "lightgray"
FILL_DELETION = "lightblue"
FILL_INSERTION = "orange"


def export_dot(poset: Poset, highlight_ideal: Optional[Ideal] = None) -> str:
    """Hasse diagram in DOT syntax, reading upward, byte-deterministic.

    With a highlight ideal, members are filled, deletion points are blue
    and insertion points are orange.
    """
    members: set[int] = set()
    deletion: set[int] = set()
    insertion: set[int] = set()
    if highlight_ideal is not None:
        if not poset.is_ideal(highlight_ideal):
            raise PosetError(
                f"highlight set {highlight_ideal.members} is not an ideal"
            )
        members = set(highlight_ideal.members)
        deletion = poset.deletion_points(highlight_ideal)
        insertion = poset.insertion_points(highlight_ideal)

    lines = ["digraph poset {", "  rankdir=BT;", '  node [shape=box];']
    for pid in poset.point_ids():
        attrs = [f'label="{poset.name(pid)} ({poset.weight(pid)})"']
        if pid in deletion:
            attrs.append(f'style=filled fillcolor="{FILL_DELETION}"')
        elif pid in members:
            attrs.append(f'style=filled fillcolor="{FILL_IDEAL}"')
        elif pid in insertion:
            attrs.append(f'style=filled fillcolor="{FILL_INSERTION}"')
        lines.append(f'  "{poset.name(pid)}" [{" ".join(attrs)}];')
    heights = poset.heights()
    for h in sorted(set(heights)):
        group = " ".join(
            f'"{poset.name(p)}";' for p in poset.point_ids() if heights[p] == h
        )
        lines.append(f"  {{ rank=same; {group} }}")
    for q in poset.point_ids():
        for p in sorted(poset.lower_covers(q)):
            lines.append(f'  "{poset.name(p)}" -> "{poset.name(q)}";')
    lines.append("}")
    return "\n".join(lines) + "\n"
