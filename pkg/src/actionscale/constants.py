"""Registry of named physical constants with two selectable value sets.

``paper`` holds the rounded decade values the regression catalog reproduces;
``modern`` holds current reference values.  Every name resolves in both sets
with identical dimensions, so a calculation can be replayed on either set to
see how much of a published result is driven by its inputs.

Derived constants (the Compton length ``lambda_c``, the fine-structure
constant ``alpha_em``, and the squared elementary charge ``e2``) are computed
from the stored entries on every lookup, never stored.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Callable

try:
    import tomllib
except ModuleNotFoundError:  # Python 3.10
    import tomli as tomllib

from .dimensions import DimVec, Quantity, parse_quantity

__all__ = [
    "VALUE_SETS",
    "UnknownConstant",
    "ConstantEntry",
    "Registry",
    "builtin_registry",
]

VALUE_SETS = ("paper", "modern")


class UnknownConstant(KeyError):
    """Lookup of a name that is not registered."""

    def __init__(self, name: str):
        super().__init__(name)
        self.name = name

    def __str__(self) -> str:
        return f"unknown constant {self.name!r}"


@dataclass(frozen=True)
class ConstantEntry:
    name: str
    paper: Quantity
    modern: Quantity
    source: str = ""


_Lookup = Callable[[str], Quantity]

_DERIVED: dict[str, Callable[[_Lookup], Quantity]] = {
    "e2": lambda look: look("e") ** 2,
    "lambda_c": lambda look: look("h") / (look("m_e") * look("c")),
    "alpha_em": lambda look: look("e") ** 2 / (look("hbar") * look("c")),
}


class Registry:
    """Read-only constant registry loaded from a versioned TOML file."""

    def __init__(self, entries: dict[str, ConstantEntry], version: str = ""):
        self._entries = dict(entries)
        self.version = version
        for name, entry in self._entries.items():
            if entry.paper.dim != entry.modern.dim:
                raise ValueError(
                    f"constant {name!r}: paper and modern dimensions differ "
                    f"({entry.paper.dim} vs {entry.modern.dim})"
                )

    @classmethod
    def from_toml(cls, path: str | Path) -> Registry:
        with open(path, "rb") as fh:
            doc = tomllib.load(fh)
        version = str(doc.pop("meta", {}).get("version", ""))
        entries = {}
        for name, table in doc.items():
            unit = table.get("unit", "")
            entries[name] = ConstantEntry(
                name=name,
                paper=parse_quantity(f"{table['paper']} {unit}".strip()),
                modern=parse_quantity(f"{table['modern']} {unit}".strip()),
                source=table.get("source", ""),
            )
        return cls(entries, version)

    def __contains__(self, name: str) -> bool:
        return name in self._entries or name in _DERIVED

    def names(self) -> tuple[str, ...]:
        return tuple(sorted(set(self._entries) | set(_DERIVED)))

    def entry(self, name: str) -> ConstantEntry:
        try:
            return self._entries[name]
        except KeyError:
            raise UnknownConstant(name) from None

    def lookup(self, name: str, value_set: str = "paper") -> Quantity:
        if value_set not in VALUE_SETS:
            raise ValueError(
                f"unknown value set {value_set!r}; expected one of {VALUE_SETS}"
            )
        if name in _DERIVED:
            return _DERIVED[name](lambda n: self.lookup(n, value_set))
        return getattr(self.entry(name), value_set)

    def dim(self, name: str) -> DimVec:
        return self.lookup(name, "paper").dim


@functools.lru_cache(maxsize=1)
def builtin_registry() -> Registry:
    """The registry shipped with the package (data/constants.toml)."""
    path = resources.files(__package__) / "data" / "constants.toml"
    with resources.as_file(path) as fp:
        return Registry.from_toml(fp)
