"""Frozen brute-force constants, stored one per line as ``family;params;quantity;value``."""

from __future__ import annotations

from dataclasses import dataclass
from importlib import resources
from pathlib import Path

from . import curves

DEFAULT_FILE = "regression_v1.txt"


@dataclass(frozen=True)
class Record:
    family: str
    params: dict
    quantity: str
    value: str

    def line(self) -> str:
        return f"{self.family};{format_params(self.params)};{self.quantity};{self.value}"


def format_params(params: dict) -> str:
    parts = []
    for k, v in params.items():
        parts.append(f"{k}={'/'.join(map(str, v)) if isinstance(v, (list, tuple)) else v}")
    return ",".join(parts)


def parse_params(text: str) -> dict:
    out: dict = {}
    for part in filter(None, text.split(",")):
        k, v = part.split("=", 1)
        out[k] = [int(x) for x in v.split("/")] if k == "w_basis" else int(v)
    return out


def parse(text: str) -> list[Record]:
    records = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        fields = line.split(";")
        if len(fields) != 4:
            raise ValueError(f"line {lineno}: expected 4 ';'-separated fields, got {len(fields)}")
        family, params, quantity, value = fields
        records.append(Record(family, parse_params(params), quantity, value))
    return records


def load(path: str | Path | None = None) -> list[Record]:
    if path is None:
        text = resources.files("symcurves").joinpath("data", DEFAULT_FILE).read_text()
    else:
        text = Path(path).read_text()
    return parse(text)


def compute(family: str, params: dict, quantity: str) -> str:
    """Recompute one quantity with the library's enumeration routes."""
    p = dict(params)
    if family == "witnesses":
        found = curves.degree_two_witnesses(p["n"], p["q"], p["i"])
        if quantity == "count":
            return str(len(found))
        if quantity == "codes":
            return "/".join(str(e.value) for e in found) or "-"
    elif family == "automorphisms":
        if quantity == "count":
            return str(len(curves.automorphisms(p["n"], p["q"])))
    else:
        spec = curves.spec_from_dict(family, p)
        if quantity == "N1":
            return str(curves.count_N1(spec).N1)
        if quantity == "N2":
            return str(curves.count_N2(spec))
        if quantity == "histogram_digest":
            return curves.count_N1(spec).histogram_digest()
        if quantity == "genus":
            return str(curves.invariants(spec).genus)
    raise ValueError(f"unknown quantity {family}/{quantity}")
