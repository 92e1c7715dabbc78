"""Bundled fixtures: the MO(3) horizontal-sum lattice and its joint map.

The map table lives in data/example1-smap.json (decimal-comma values);
this module resolves the short names the CLI accepts ("example1",
"example1-smap").
"""

from __future__ import annotations

from importlib import resources

from .errors import DocumentError
from .lattice import Oml
from .maps import SMap


def _read_data(name: str) -> str:
    return (resources.files("omlbell") / "data" / name).read_text()


def example1_lattice() -> Oml:
    from .documents import parse_lattice

    return parse_lattice(_read_data("example1-lattice.json"))


def example1_smap() -> SMap:
    from .documents import parse_map

    smap = parse_map(_read_data("example1-smap.json"))
    assert isinstance(smap, SMap)
    return smap


def resolve_lattice(name: str) -> Oml:
    if name in ("example1", "example1-lattice"):
        return example1_lattice()
    raise DocumentError(f"unknown bundled lattice {name!r}")


def resolve_map(name: str):
    if name in ("example1", "example1-smap"):
        return example1_smap()
    raise DocumentError(f"unknown bundled map {name!r}")
