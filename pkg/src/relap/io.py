"""JSON files for complexes and complex pairs."""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any

from .complex_core import ComplexPair, SimplicialComplex, from_facets
from .errors import DomainError


def complex_to_dict(X: SimplicialComplex, name: str | None = None) -> dict[str, Any]:
    out: dict[str, Any] = {"facets": [list(f) for f in sorted(X.facets()) if f]}
    if name is not None:
        out["name"] = name
    return out


def pair_to_dict(pair: ComplexPair, name: str | None = None) -> dict[str, Any]:
    return {"complex": complex_to_dict(pair.complex, name),
            "subcomplex": complex_to_dict(pair.subcomplex)}


def complex_from_dict(data: Any) -> SimplicialComplex:
    if not isinstance(data, dict) or "facets" not in data:
        raise DomainError("complex object needs a 'facets' list")
    facets = data["facets"]
    if not isinstance(facets, list) or not all(isinstance(f, list) for f in facets):
        raise DomainError("'facets' must be a list of vertex lists")
    return from_facets(facets)


def pair_from_dict(data: Any) -> ComplexPair:
    """Accepts a pair object or a bare complex (paired with ``{∅}``)."""
    if isinstance(data, dict) and "complex" in data:
        X = complex_from_dict(data["complex"])
        A = complex_from_dict(data.get("subcomplex", {"facets": []}))
        return ComplexPair(X, A)
    return ComplexPair.absolute(complex_from_dict(data))


def dumps(data: dict[str, Any]) -> str:
    return json.dumps(data, sort_keys=True) + "\n"


def _read(path: str | Path) -> Any:
    try:
        return json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise DomainError(f"{path}: malformed JSON ({exc.msg})") from None


def load_pair(path: str | Path) -> ComplexPair:
    return pair_from_dict(_read(path))


def load_complex(path: str | Path) -> SimplicialComplex:
    data = _read(path)
    if isinstance(data, dict) and "complex" in data:
        data = data["complex"]
    return complex_from_dict(data)


def save_complex(X: SimplicialComplex, path: str | Path, name: str | None = None) -> None:
    Path(path).write_text(dumps(complex_to_dict(X, name)))


def save_pair(pair: ComplexPair, path: str | Path, name: str | None = None) -> None:
    Path(path).write_text(dumps(pair_to_dict(pair, name)))
