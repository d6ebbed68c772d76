"""Frozen regression values (enumeration counts etc.).

Counts computed by the oracle are recorded once in a line-oriented
"key<TAB>value" file and must reproduce exactly afterwards; nothing here is
hand-entered.  The checked-in file lives next to this module.
"""

from __future__ import annotations

from pathlib import Path

DEFAULT_PATH = Path(__file__).with_name("data") / "counts.tsv"


class FixtureMismatch(AssertionError):
    pass


def load(path: Path = DEFAULT_PATH) -> dict[str, int]:
    if not path.exists():
        return {}
    out: dict[str, int] = {}
    for line in path.read_text().splitlines():
        if not line.strip():
            continue
        key, _, value = line.partition("\t")
        out[key] = int(value)
    return out


def check(key: str, value: int, path: Path = DEFAULT_PATH,
          record_missing: bool = False) -> None:
    """Assert the value matches the frozen one; optionally record new keys."""
    table = load(path)
    if key in table:
        if table[key] != value:
            raise FixtureMismatch(f"{key}: got {value}, frozen {table[key]}")
        return
    if not record_missing:
        raise FixtureMismatch(f"{key}: no frozen value (got {value})")
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("a") as fh:
        fh.write(f"{key}\t{value}\n")
