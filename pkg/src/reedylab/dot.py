"""DOT export of Hasse diagrams (covering edges only, stable ordering)."""

from __future__ import annotations

from .obstruction import CrownPoset
from .reedy import FinCategory
from .semilattice import FiniteSemilattice


def semilattice_dot(A: FiniteSemilattice, name: str = "semilattice") -> str:
    lines = [f'digraph "{name}" {{', "  rankdir=BT;"]
    for x in range(A.size):
        lines.append(f'  n{x} [label="{A.label(x)}"];')
    for x, y in A.covers:
        lines.append(f"  n{x} -> n{y};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def crown_dot(C: CrownPoset, name: str = "crown") -> str:
    lines = [f'digraph "{name}" {{', "  rankdir=BT;"]
    for i in range(C.size):
        lines.append(f'  n{i} [label="{i}"];')
    for i in range(0, C.size, 2):
        for j in sorted(set(C.upper_covers(i))):
            lines.append(f"  n{i} -> n{j};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def category_dot(cat: FinCategory, name: str = "category") -> str:
    """Objects as nodes, edges labeled by hom-set cardinality."""
    lines = [f'digraph "{name}" {{']
    for i, O in enumerate(cat.objects):
        lines.append(f'  n{i} [label="#{i} (size {O.size})"];')
    for (a, b), fs in sorted(cat.homs.items()):
        if fs:
            lines.append(f'  n{a} -> n{b} [label="{len(fs)}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def export_dot(obj, name: str | None = None) -> str:
    if isinstance(obj, FiniteSemilattice):
        return semilattice_dot(obj, name or "semilattice")
    if isinstance(obj, CrownPoset):
        return crown_dot(obj, name or "crown")
    if isinstance(obj, FinCategory):
        return category_dot(obj, name or "category")
    raise TypeError(f"no DOT export for {type(obj).__name__}")


def export_dot_json(data: dict) -> str:
    """Dispatch on the JSON shape: semilattice, crown, or category."""
    if "crown" in data:
        return crown_dot(CrownPoset(int(data["crown"])))
    if "join" in data:
        return semilattice_dot(FiniteSemilattice.from_json(data))
    if "objects" in data:
        objs = [FiniteSemilattice.from_json(o) for o in data["objects"]]
        from .reedy import FinCategory as FC

        return category_dot(FC.from_objects(objs))
    raise ValueError("unrecognized input: expected semilattice, crown, or category JSON")
