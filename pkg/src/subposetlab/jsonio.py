"""JSON encoding and decoding for the package's value types.

Exactness rule: rationals are always {"num": str, "den": str}; integers
wider than 53 bits become decimal strings so no consumer is forced through
a double.  Encoders emit keys in a fixed order and dumps() uses fixed
formatting, so equal values serialize to identical bytes.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .hypergraphs import ColoredFamily, Hypergraph, Partition
from .lattice import ChainDecomposition, SubsetFamily, elements_of_mask
from .posets import Poset, from_cover_relations, make_poset
from .representations import KPartiteRepresentation, RepresentationCertificate

_SAFE = 1 << 53


def encode_int(x: int):
    return x if -_SAFE <= x <= _SAFE else str(x)


def decode_int(v) -> int:
    if isinstance(v, bool):
        raise ValueError("expected an integer, got a boolean")
    if isinstance(v, int):
        return v
    if isinstance(v, str):
        return int(v, 10)
    raise ValueError(f"expected an integer, got {type(v).__name__}")


def encode_fraction(x: Fraction) -> dict:
    return {"num": str(x.numerator), "den": str(x.denominator)}


def decode_fraction(v) -> Fraction:
    if not isinstance(v, dict) or set(v) != {"num", "den"}:
        raise ValueError("a rational is an object with keys num and den")
    return Fraction(int(v["num"], 10), int(v["den"], 10))


def family_to_json(fam: SubsetFamily) -> dict:
    return {"n": fam.n, "sets": [list(s) for s in fam.sets()]}


def family_from_json(obj) -> SubsetFamily:
    if not isinstance(obj, dict) or "n" not in obj or "sets" not in obj:
        raise ValueError("a family is an object with keys n and sets")
    return SubsetFamily.from_sets(decode_int(obj["n"]), obj["sets"])


def poset_to_json(p: Poset, name: str | None = None):
    if name is not None:
        return name
    return {"size": p.size, "covers": [list(c) for c in p.cover_relations()]}


def poset_from_json(v) -> Poset:
    if isinstance(v, str):
        return make_poset(v)
    if isinstance(v, dict) and "size" in v and "covers" in v:
        return from_cover_relations(decode_int(v["size"]), v["covers"])
    raise ValueError("a poset is a generator string or {size, covers}")


def hypergraph_to_json(h: Hypergraph) -> dict:
    return {"k": h.k, "l": h.l, "edges": [list(e) for e in h.edge_sets()]}


def hypergraph_from_json(obj) -> Hypergraph:
    if not isinstance(obj, dict) or not {"k", "l", "edges"} <= set(obj):
        raise ValueError("a hypergraph is an object with keys k, l, edges")
    return Hypergraph.from_edge_sets(
        decode_int(obj["k"]), decode_int(obj["l"]), obj["edges"]
    )


def colored_family_to_json(fam: ColoredFamily) -> dict:
    return {
        "k": fam.k,
        "l": fam.l,
        "colors": list(fam.names),
        "edge_lists": [
            [list(e) for e in h.edge_sets()] for h in fam.hypergraphs
        ],
    }


def colored_family_from_json(obj) -> ColoredFamily:
    if not isinstance(obj, dict) or not {"k", "l", "edge_lists"} <= set(obj):
        raise ValueError(
            "a colored family is an object with keys k, l, edge_lists"
        )
    k = decode_int(obj["k"])
    l = decode_int(obj["l"])
    hs = tuple(Hypergraph.from_edge_sets(k, l, edges) for edges in obj["edge_lists"])
    names = tuple(obj.get("colors", ()))
    return ColoredFamily(hs, names)


def partition_to_json(p: Partition) -> list:
    return [list(part) for part in p.parts]


def representation_to_json(rep: KPartiteRepresentation) -> dict:
    return {
        "k": rep.k,
        "l": rep.l,
        "family": [list(s) for s in rep.family.sets()],
        "target": poset_to_json(rep.target, rep.target_name),
    }


def representation_from_json(obj) -> KPartiteRepresentation:
    if not isinstance(obj, dict) or not {"k", "l", "family", "target"} <= set(obj):
        raise ValueError(
            "a representation is an object with keys k, l, family, target"
        )
    k = decode_int(obj["k"])
    l = decode_int(obj["l"])
    fam = SubsetFamily.from_sets(l, obj["family"])
    target = poset_from_json(obj["target"])
    name = obj["target"] if isinstance(obj["target"], str) else None
    return KPartiteRepresentation(k, l, fam, target, name)


def certificate_to_json(cert: RepresentationCertificate) -> dict:
    out = representation_to_json(cert.rep)
    out["embedding"] = list(cert.embedding)
    out["partition"] = partition_to_json(cert.partition)
    return out


def decomposition_to_json(dec: ChainDecomposition) -> dict:
    return {
        "n": dec.n,
        "level_lo": dec.level_lo,
        "level_hi": dec.level_hi,
        "count": len(dec),
        "chains": [
            [list(elements_of_mask(m)) for m in chain] for chain in dec.chains
        ],
    }


def dumps(obj) -> str:
    """Canonical text form: two-space indent, fixed separators, trailing
    newline, keys in insertion order."""
    return json.dumps(obj, indent=2, separators=(",", ": "), sort_keys=False) + "\n"
