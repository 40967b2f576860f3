"""The bundled transitive-group catalog and its loader.

Line format (see data/catalog.txt): fields separated by " ; ", first the
label and degree, then one or more generator strings in cycle notation, then
key=value expectation fields.  Expectations are the reference column values
that table runs compare recomputed results against.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from pathlib import Path

from .errors import CatalogError
from .molien import DegreeVector
from .perm import DEFAULT_ELEMENT_CAP, PermGroup


@dataclass(frozen=True)
class CatalogEntry:
    label: str
    degree: int
    generators: tuple[str, ...]
    expected_order: int | None = None
    order_display: str = ""
    expected_subfield: str = ""          # "none" or "Deg. k"
    expected_degrees: DegreeVector | None = None
    expected_result: Fraction | None = None
    expected_malle: Fraction | None = None
    isom: str = ""

    def group(self, cap: int = DEFAULT_ELEMENT_CAP) -> PermGroup:
        return PermGroup.from_cycle_strings(list(self.generators),
                                            self.degree, cap)

    def expected_t(self) -> int | None:
        if self.expected_subfield == "none":
            return 1
        if self.expected_subfield.startswith("Deg. "):
            return int(self.expected_subfield[5:])
        return None

    def validate(self) -> list[str]:
        """Structural check: order and transitivity of the generated group."""
        problems = []
        G = self.group()
        if self.expected_order is not None and G.order != self.expected_order:
            problems.append(
                f"{self.label}: generated order {G.order} != "
                f"expected {self.expected_order}")
        if not G.is_transitive():
            problems.append(f"{self.label}: group is not transitive")
        return problems


def _parse_line(line: str, lineno: int) -> CatalogEntry:
    fields = [f.strip() for f in line.split(";")]
    if len(fields) < 3:
        raise CatalogError("record needs label, degree, and generators", lineno)
    label = fields[0]
    try:
        degree = int(fields[1])
    except ValueError:
        raise CatalogError(f"bad degree {fields[1]!r}", lineno) from None
    gens: list[str] = []
    kv: dict[str, str] = {}
    for f in fields[2:]:
        if "=" in f and not f.startswith("("):
            key, _, value = f.partition("=")
            kv[key.strip()] = value.strip()
        elif kv:
            raise CatalogError("generator after expectation fields", lineno)
        else:
            gens.append(f)
    if not gens:
        raise CatalogError("no generators", lineno)
    try:
        return CatalogEntry(
            label=label,
            degree=degree,
            generators=tuple(gens),
            expected_order=int(kv["order"]) if "order" in kv else None,
            order_display=kv.get("order_display", kv.get("order", "")),
            expected_subfield=kv.get("subfield", ""),
            expected_degrees=(DegreeVector.parse(kv["degrees"])
                              if "degrees" in kv else None),
            expected_result=(Fraction(kv["result"])
                             if "result" in kv else None),
            expected_malle=(Fraction(kv["malle"]) if "malle" in kv else None),
            isom=kv.get("isom", ""),
        )
    except (ValueError, ZeroDivisionError) as err:
        raise CatalogError(f"bad expectation field: {err}", lineno) from None


def load_catalog(path: str | Path | None = None) -> list[CatalogEntry]:
    """Parse a catalog file; default is the bundled one."""
    if path is None:
        text = (resources.files("gextbounds") / "data" / "catalog.txt"
                ).read_text()
    else:
        text = Path(path).read_text()
    entries: list[CatalogEntry] = []
    seen: set[str] = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        entry = _parse_line(line, lineno)
        if entry.label in seen:
            raise CatalogError(f"duplicate label {entry.label}", lineno)
        seen.add(entry.label)
        entries.append(entry)
    return entries


def find_entry(entries: list[CatalogEntry], label: str) -> CatalogEntry:
    for e in entries:
        if e.label == label:
            return e
    raise KeyError(f"unknown catalog label {label!r}")
