"""JSON file formats and DOT output.

Three document shapes, all UTF-8 JSON:

* polymatroid: ``{"ground": [labels...], "rank": {subset-key: rational}}``
* lattice:     ``{"ground": [labels...], "elements": [{"set": [labels...], "rank": rational}]}``
* measure:     ``{label: rational, ...}`` (ground set comes from the paired lattice)

A subset key is the sorted member labels joined by commas; the empty string
is the empty set.  Rationals are ``p`` or ``p/q`` with q positive.  Writers
emit subsets ordered by (cardinality, labels), so write -> read -> write is
byte-identical.
"""

from __future__ import annotations

import json
import re
from fractions import Fraction
from pathlib import Path

from .constructions import ExpansionMap
from .lattice import RankedLattice, validate_lattice
from .model import GroundSet, Measure, SetFunction

RATIONAL_RE = re.compile(r"^-?\d+(/\d+)?$")


class FileFormatError(ValueError):
    pass


def format_rational(value: Fraction) -> str:
    return str(value)


def parse_rational(text) -> Fraction:
    if not isinstance(text, str) or not RATIONAL_RE.match(text):
        raise FileFormatError(f"bad rational {text!r}: expected p or p/q")
    try:
        return Fraction(text)
    except ZeroDivisionError:
        raise FileFormatError(f"bad rational {text!r}: zero denominator") from None


def subset_key(ground: GroundSet, mask: int) -> str:
    return ",".join(ground.sorted_labels(mask))


def parse_subset_key(ground: GroundSet, key) -> int:
    if not isinstance(key, str):
        raise FileFormatError(f"bad subset key {key!r}")
    if key == "":
        return 0
    mask = 0
    for label in key.split(","):
        try:
            bit = ground.singleton(label)
        except ValueError:
            raise FileFormatError(
                f"bad subset key {key!r}: unknown element {label!r}"
            ) from None
        if mask & bit:
            raise FileFormatError(f"bad subset key {key!r}: element {label!r} repeats")
        mask |= bit
    return mask


def _ground_from_doc(doc) -> GroundSet:
    if not isinstance(doc, dict) or "ground" not in doc:
        raise FileFormatError("document needs a 'ground' list")
    labels = doc["ground"]
    if not isinstance(labels, list) or not all(isinstance(x, str) for x in labels):
        raise FileFormatError("'ground' must be a list of labels")
    for label in labels:
        if "," in label:
            raise FileFormatError(f"label {label!r} contains a comma")
    try:
        return GroundSet(tuple(labels))
    except ValueError as exc:
        raise FileFormatError(str(exc)) from None


def _ordered_masks(ground: GroundSet):
    return sorted(ground.subsets(), key=lambda m: (m.bit_count(), ground.sorted_labels(m)))


def polymatroid_to_doc(f: SetFunction) -> dict:
    for label in f.ground.names:
        if "," in label:
            raise FileFormatError(f"label {label!r} contains a comma; not serializable")
    rank = {
        subset_key(f.ground, m): format_rational(f.values[m])
        for m in _ordered_masks(f.ground)
    }
    return {"ground": list(f.ground.names), "rank": rank}


def polymatroid_from_doc(doc) -> SetFunction:
    ground = _ground_from_doc(doc)
    rank = doc.get("rank")
    if not isinstance(rank, dict):
        raise FileFormatError("polymatroid document needs a 'rank' map")
    values: list[Fraction | None] = [None] * (1 << ground.n)
    for key, text in rank.items():
        mask = parse_subset_key(ground, key)
        if values[mask] is not None:
            raise FileFormatError(f"subset key {key!r} repeats an earlier subset")
        values[mask] = parse_rational(text)
    for m in _ordered_masks(ground):
        if values[m] is None:
            raise FileFormatError(f"missing subset {subset_key(ground, m)!r}")
    return SetFunction(ground, values)


def lattice_to_doc(lattice: RankedLattice) -> dict:
    for label in lattice.ground.names:
        if "," in label:
            raise FileFormatError(f"label {label!r} contains a comma; not serializable")
    ordered = sorted(
        lattice.items(), key=lambda mr: (mr[0].bit_count(), lattice.ground.sorted_labels(mr[0]))
    )
    return {
        "ground": list(lattice.ground.names),
        "elements": [
            {
                "set": list(lattice.ground.sorted_labels(m)),
                "rank": format_rational(r),
            }
            for m, r in ordered
        ],
    }


def lattice_from_doc(doc) -> RankedLattice:
    """Parse and validate; lattice-law failures surface as LatticeError."""
    ground = _ground_from_doc(doc)
    elements = doc.get("elements")
    if not isinstance(elements, list):
        raise FileFormatError("lattice document needs an 'elements' list")
    family = []
    for entry in elements:
        if not isinstance(entry, dict) or "set" not in entry or "rank" not in entry:
            raise FileFormatError(f"bad lattice element {entry!r}")
        labels = entry["set"]
        if not isinstance(labels, list):
            raise FileFormatError(f"bad member set {labels!r}")
        mask = 0
        for label in labels:
            try:
                bit = ground.singleton(label)
            except ValueError:
                raise FileFormatError(f"unknown element {label!r} in member") from None
            if mask & bit:
                raise FileFormatError(f"element {label!r} repeats in member")
            mask |= bit
        family.append((mask, parse_rational(entry["rank"])))
    return validate_lattice(ground, family)


def measure_to_doc(mu: Measure) -> dict:
    return {
        name: format_rational(mu.singleton[i])
        for i, name in enumerate(mu.ground.names)
    }


def measure_from_doc(doc, ground: GroundSet) -> Measure:
    if not isinstance(doc, dict):
        raise FileFormatError("measure document must be a label -> rational map")
    extra = set(doc) - set(ground.names)
    if extra:
        raise FileFormatError(f"measure names unknown elements {sorted(extra)}")
    missing = [name for name in ground.names if name not in doc]
    if missing:
        raise FileFormatError(f"measure misses elements {missing}")
    values = []
    for name in ground.names:
        v = parse_rational(doc[name])
        if v < 0:
            raise FileFormatError(f"negative measure {v} for element {name!r}")
        values.append(v)
    return Measure(ground, values)


def expansion_to_doc(emap: ExpansionMap) -> dict:
    return {
        "original": list(emap.original.names),
        "expanded": list(emap.expanded.names),
        "blocks": {
            name: list(emap.expanded.sorted_labels(emap.blocks[i]))
            for i, name in enumerate(emap.original.names)
        },
    }


def dumps_canonical(doc: dict) -> str:
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"


def _load(path) -> dict:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise FileFormatError(f"cannot read {path}: {exc}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise FileFormatError(f"{path} is not valid JSON: {exc}") from None


def read_polymatroid(path) -> SetFunction:
    return polymatroid_from_doc(_load(path))


def write_polymatroid(f: SetFunction, path) -> None:
    Path(path).write_text(dumps_canonical(polymatroid_to_doc(f)), encoding="utf-8")


def read_lattice(path) -> RankedLattice:
    return lattice_from_doc(_load(path))


def write_lattice(lattice: RankedLattice, path) -> None:
    Path(path).write_text(dumps_canonical(lattice_to_doc(lattice)), encoding="utf-8")


def read_measure(path, ground: GroundSet) -> Measure:
    return measure_from_doc(_load(path), ground)


def write_measure(mu: Measure, path) -> None:
    Path(path).write_text(dumps_canonical(measure_to_doc(mu)), encoding="utf-8")


def lattice_dot(lattice: RankedLattice) -> str:
    """Hasse diagram in DOT, nodes ordered by (cardinality, labels)."""
    ground = lattice.ground
    ordered = sorted(
        lattice.members, key=lambda m: (m.bit_count(), ground.sorted_labels(m))
    )
    node_id = {m: i for i, m in enumerate(ordered)}
    lines = ["digraph lattice {", "  rankdir=BT;"]
    for m in ordered:
        label = f"{ground.describe(m)}\\n{format_rational(lattice.rank_of(m))}"
        lines.append(f'  n{node_id[m]} [label="{label}"];')
    for low in ordered:
        for high in ordered:
            if low == high or low & ~high:
                continue
            covered = any(
                mid != low and mid != high and low & ~mid == 0 and mid & ~high == 0
                for mid in lattice.members
            )
            if not covered:
                lines.append(f"  n{node_id[low]} -> n{node_id[high]};")
    lines.append("}")
    return "\n".join(lines) + "\n"
