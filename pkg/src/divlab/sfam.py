"""Reader and writer for the ``.sfam`` family text format.

    # optional comment lines
    n=7
    1,2,4
    2,3,5
    {}

One member per nonblank line, elements ascending and 1-based; ``{}`` is the
empty set. Output is always in canonical member order.
"""

from __future__ import annotations

from pathlib import Path

from .errors import FamilyError, SfamParseError
from .setfam import MAX_N, MIN_N, Family


def format_sfam(family: Family) -> str:
    lines = [f"n={family.n}"]
    for s in family:
        lines.append(",".join(map(str, s.elements)) if s.bits else "{}")
    return "\n".join(lines) + "\n"


def parse_sfam(text: str) -> Family:
    n = None
    words, seen = [], set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if n is None:
            key, _, value = line.partition("=")
            if key.strip() != "n" or not _:
                raise SfamParseError(f"expected header 'n=<int>', got {line!r}", lineno)
            try:
                n = int(value)
            except ValueError:
                raise SfamParseError(f"bad ground size {value.strip()!r}", lineno) from None
            if not MIN_N <= n <= MAX_N:
                raise SfamParseError(f"ground size {n} outside {MIN_N}..{MAX_N}", lineno)
            continue
        if line == "{}":
            bits = 0
        else:
            bits, prev = 0, 0
            for tok in line.split(","):
                try:
                    x = int(tok)
                except ValueError:
                    raise SfamParseError(f"bad element {tok.strip()!r}", lineno) from None
                if not 1 <= x <= n:
                    raise SfamParseError(f"element {x} outside [1, {n}]", lineno)
                if x <= prev:
                    raise SfamParseError("elements must be strictly ascending", lineno)
                bits |= 1 << (x - 1)
                prev = x
        if bits in seen:
            raise SfamParseError("duplicate member", lineno)
        seen.add(bits)
        words.append(bits)
    if n is None:
        raise SfamParseError("missing 'n=<int>' header")
    try:
        return Family(n, words)
    except FamilyError as exc:  # pragma: no cover - guarded above
        raise SfamParseError(str(exc)) from exc


def read_sfam(path) -> Family:
    return parse_sfam(Path(path).read_text())


def write_sfam(family: Family, path) -> None:
    Path(path).write_text(format_sfam(family))
