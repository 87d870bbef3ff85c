"""Parser for the line-oriented germ file format.

A germ file declares a polynomial map germ: its variables, an optional
symplectic pairing of those variables, one component expression per
``component:`` line, and optional metadata.  ``#`` starts a comment.

    vars: q1 p1 q2 p2
    symplectic: (q1,p1) (q2,p2)
    component: p1*q1
    component: p2
    singular_dim: 1
    assume: simplifiable

Parse errors carry 1-based line and column numbers.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .poly import PolyParseError, Polynomial, parse_polynomial
from .symplectic import MapGerm, SymplecticContext

ASSUME_TOKENS = ("Tn-type", "simplifiable", "calibrated", "pyramidal")

_IDENT = re.compile(r"[A-Za-z][A-Za-z0-9_]*")
_KEY = re.compile(r"\s*([A-Za-z_][A-Za-z0-9_-]*)\s*:")
_PAIR = re.compile(r"\(([A-Za-z][A-Za-z0-9_]*),([A-Za-z][A-Za-z0-9_]*)\)")


class GermFileError(ValueError):
    """Parse or validation failure in a germ file, with 1-based position."""

    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


@dataclass(frozen=True)
class GermFile:
    """Parsed germ file: variables, optional pairing, components, metadata."""

    source_name: str
    variables: tuple[str, ...]
    symplectic_pairs: tuple[tuple[str, str], ...] | None
    components: tuple[Polynomial, ...]
    singular_dim: int | None
    assumptions: tuple[str, ...]

    def context(self) -> SymplecticContext:
        if self.symplectic_pairs is None:
            raise GermFileError(
                f"{self.source_name} declares no symplectic pairing", 0, 0)
        return SymplecticContext.from_pairs(self.symplectic_pairs)

    def to_map_germ(self) -> MapGerm:
        ctx = self.context() if self.symplectic_pairs is not None else None
        return MapGerm(self.variables, self.components, ctx)


def _fields(line: str, lineno: int) -> tuple[str, str, int] | None:
    """Split a raw line into (key, payload, payload 1-based start column)."""
    stripped = line.split("#", 1)[0]
    if not stripped.strip():
        return None
    m = _KEY.match(stripped)
    if not m:
        col = len(stripped) - len(stripped.lstrip()) + 1
        raise GermFileError("expected '<key>: <payload>'", lineno, col)
    return m.group(1), stripped[m.end():], m.end() + 1


def _names(payload: str, lineno: int, base_col: int) -> list[tuple[str, int]]:
    """Whitespace-separated identifiers with their columns."""
    out = []
    pos = 0
    while pos < len(payload):
        if payload[pos].isspace():
            pos += 1
            continue
        m = _IDENT.match(payload, pos)
        if not m:
            raise GermFileError(f"invalid name at {payload[pos]!r}",
                                lineno, base_col + pos)
        out.append((m.group(0), base_col + pos))
        pos = m.end()
    return out


def parse_germ_text(text: str, source_name: str = "<germ>") -> GermFile:
    """Parse germ file text, validating names, pairing and expressions."""
    variables: tuple[str, ...] | None = None
    pairs: list[tuple[str, str]] | None = None
    components: list[Polynomial] = []
    singular_dim: int | None = None
    assumptions: list[str] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        parts = _fields(raw, lineno)
        if parts is None:
            continue
        key, payload, col = parts
        if key == "vars":
            if variables is not None:
                raise GermFileError("duplicate vars line", lineno, 1)
            names = _names(payload, lineno, col)
            if not names:
                raise GermFileError("vars line declares no variables", lineno, col)
            seen = set()
            for name, ncol in names:
                if name in seen:
                    raise GermFileError(f"variable {name} declared twice",
                                        lineno, ncol)
                seen.add(name)
            variables = tuple(name for name, _ in names)
        elif key == "symplectic":
            if variables is None:
                raise GermFileError("symplectic line must follow vars", lineno, 1)
            if pairs is not None:
                raise GermFileError("duplicate symplectic line", lineno, 1)
            pairs = []
            used = set()
            pos = 0
            while pos < len(payload):
                if payload[pos].isspace():
                    pos += 1
                    continue
                m = _PAIR.match(payload, pos)
                if not m:
                    raise GermFileError("expected a pair of the form (q,p)",
                                        lineno, col + pos)
                q, p = m.group(1), m.group(2)
                for name in (q, p):
                    if name not in variables:
                        raise GermFileError(f"undeclared variable {name}",
                                            lineno, col + pos)
                    if name in used:
                        raise GermFileError(f"variable {name} paired twice",
                                            lineno, col + pos)
                    used.add(name)
                pairs.append((q, p))
                pos = m.end()
            if not pairs:
                raise GermFileError("symplectic line declares no pairs",
                                    lineno, col)
        elif key == "component":
            if variables is None:
                raise GermFileError("component line must follow vars", lineno, 1)
            expr = payload.strip()
            offset = payload.index(expr) if expr else 0
            try:
                components.append(parse_polynomial(expr, variables))
            except PolyParseError as exc:
                raise GermFileError(str(exc), lineno,
                                    col + offset + exc.position) from exc
        elif key == "singular_dim":
            if singular_dim is not None:
                raise GermFileError("duplicate singular_dim line", lineno, 1)
            value = payload.strip()
            if not re.fullmatch(r"\d+", value):
                raise GermFileError("singular_dim must be a non-negative integer",
                                    lineno, col + (payload.index(value) if value else 0))
            singular_dim = int(value)
        elif key == "assume":
            tokens = payload.split()
            if not tokens:
                raise GermFileError("assume line declares no tokens", lineno, col)
            for token in tokens:
                if token not in ASSUME_TOKENS:
                    raise GermFileError(
                        f"unknown assumption {token!r}; expected one of "
                        f"{', '.join(ASSUME_TOKENS)}",
                        lineno, col + payload.index(token))
                if token not in assumptions:
                    assumptions.append(token)
        else:
            raise GermFileError(f"unknown key {key!r}", lineno, 1)
    if variables is None:
        raise GermFileError("missing vars line", 1, 1)
    if not components:
        raise GermFileError("germ file declares no components", 1, 1)
    return GermFile(source_name, variables,
                    tuple(pairs) if pairs is not None else None,
                    tuple(components), singular_dim, tuple(assumptions))


def load_germ_file(path) -> GermFile:
    """Read and parse a germ file from disk."""
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    return parse_germ_text(text, source_name=str(path))
