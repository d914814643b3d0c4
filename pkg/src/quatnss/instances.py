"""JSON instance files.

    {
      "name": "...", "theorem": "A", "ring": "Q" | "Hc" | "H",
      "nvars": 1, "rank": 1,
      "generators": ["[x^2]", ...],          matrices, rows or polynomials
      "query": "[x]" or ["x", ...],
      "zero_set": [{"point": ["0"], "vector": ["1"], "provenance": "fixture"}],
      "zero_set_search": {"method": "grid", "box": 1, "denominator": 1},   optional
      "certificate": {"steps": [{"rows": ["(x)"], "uses": [0]}], "target": ["x"]},   optional
      "degree_bound": 2, "max_tuple": 4, "known_radical": false,
      "expect": {"geometric": true, "algebraic": true}
    }
"""

from __future__ import annotations

import json
from pathlib import Path

from .grammar import ParseError, format_value, parse, parse_point, parse_quaternion
from .mring import MatPoly
from .nss import Certificate, Instance, Step, ZeroPair, ZeroSet, grid_zero_set, univariate_zero_set

REQUIRED = ("name", "theorem", "ring", "nvars", "rank", "generators", "query")


class InstanceError(ValueError):
    pass


def _as_list(x) -> list:
    return x if isinstance(x, list) else [x]


def _point(val) -> tuple:
    if isinstance(val, list):
        return tuple(parse_quaternion(x) for x in val)
    return parse_point(val)


def _rows(text: str, ring: str, nvars: int, rank: int) -> list[tuple]:
    v = parse(text, ring, nvars)
    if isinstance(v, MatPoly):
        rows = v.rows()
    elif isinstance(v, tuple):
        rows = [v]
    else:
        rows = [(v,)]
    for r in rows:
        if len(r) != rank:
            raise InstanceError(f"{text!r} has rows of length {len(r)}, expected {rank}")
    return rows


def _generator(text: str, ring: str, nvars: int, rank: int):
    v = parse(text, ring, nvars)
    if isinstance(v, MatPoly):
        if v.shape[1] != rank:
            raise InstanceError(f"generator {text!r} has {v.shape[1]} columns, expected {rank}")
        return v
    return _rows(text, ring, nvars, rank)[0]


def instance_from_dict(data: dict, source: str = "<dict>") -> Instance:
    missing = [k for k in REQUIRED if k not in data]
    if missing:
        raise InstanceError(f"{source}: missing fields {missing}")
    ring, d, n = data["ring"], int(data["nvars"]), int(data["rank"])
    if ring not in ("Q", "Hc", "H"):
        raise InstanceError(f"{source}: unknown ring {ring!r}")
    try:
        gens = tuple(_generator(g, ring, d, n) for g in _as_list(data["generators"]))
        query = tuple(r for q in _as_list(data["query"]) for r in _rows(q, ring, d, n))
        pairs = [ZeroPair(_point(p["point"]), _point(p["vector"]), p.get("provenance", "fixture"))
                 for p in data.get("zero_set", [])]
        zs = ZeroSet(ring, d, n, pairs, gens)
        search = data.get("zero_set_search")
        if search:
            method = search.get("method")
            if method == "grid":
                found = grid_zero_set(gens, ring, d, n, int(search.get("box", 1)),
                                      int(search.get("denominator", 1)))
            elif method == "roots":
                found = univariate_zero_set(gens, ring, n)
            else:
                raise InstanceError(f"{source}: unknown zero-set search {method!r}")
            zs = zs.extended(found)
        cert = None
        if data.get("certificate"):
            c = data["certificate"]
            steps = tuple(Step(tuple(r for t in st["rows"] for r in _rows(t, ring, d, n)),
                               tuple(st["uses"]) if st.get("uses") is not None else None)
                          for st in c.get("steps", []))
            target = None
            if c.get("target") is not None:
                target = tuple(r for t in _as_list(c["target"]) for r in _rows(t, ring, d, n))
            cert = Certificate(steps, target)
    except (ParseError, ValueError, KeyError, TypeError) as e:
        raise InstanceError(f"{source}: {e}") from e
    return Instance(
        name=data["name"], theorem=str(data["theorem"]), ring=ring, nvars=d, n=n,
        generators=gens, query=query, zero_set=zs, certificate=cert,
        degree_bound=int(data.get("degree_bound", 2)), max_tuple=int(data.get("max_tuple", 4)),
        known_radical=bool(data.get("known_radical", False)), expect=dict(data.get("expect", {})),
        order=data.get("order", "degrevlex"), note=data.get("note", ""))


def load_instance(path) -> Instance:
    path = Path(path)
    try:
        data = json.loads(path.read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as e:
        raise InstanceError(f"{path}: {e}") from e
    return instance_from_dict(data, str(path))


def instance_files(directory) -> list[Path]:
    return sorted(Path(directory).glob("*.json"))


def expressions_of(data: dict) -> list[tuple[str, str]]:
    """(text, ring) for every expression in an instance file, for round-trip checks."""
    ring = data["ring"]
    out = [(g, ring) for g in _as_list(data["generators"])]
    out += [(q, ring) for q in _as_list(data["query"])]
    for st in (data.get("certificate") or {}).get("steps", []):
        out += [(r, ring) for r in st["rows"]]
    for p in data.get("zero_set", []):
        for key in ("point", "vector"):
            val = p[key]
            out += [(x, "Hc") for x in _as_list(val)]
    return out


def canonical(text: str, ring: str, nvars: int | None = None) -> str:
    return format_value(parse(text, ring, nvars))
