"""Reading and writing groups and automorphisms.

Presentation-born groups round-trip through the presentation grammar;
construction-born groups (products, semidirect products, quotients) are
written as explicit multiplication tables under the "maxpair-group-v1"
schema.
"""

from __future__ import annotations

import json
import os
import re

import numpy as np

from .presentations import parse_presentation, render_presentation, build_group
from .engine import ConcreteGroup
from .actions import GroupMap, hom_from_images

GROUP_SCHEMA = "maxpair-group-v1"

__all__ = [
    "GROUP_SCHEMA",
    "group_to_json",
    "group_from_json",
    "save_group",
    "load_group_file",
    "resolve_group",
    "parse_aut_literal",
]


def group_to_json(G: ConcreteGroup) -> dict:
    return {
        "schema": GROUP_SCHEMA,
        "label": G.label,
        "n": int(G.n),
        "gens": [int(g) for g in G.gens],
        "mul": [int(v) for v in G.mul.reshape(-1)],
    }


def group_from_json(doc: dict) -> ConcreteGroup:
    if doc.get("schema") != GROUP_SCHEMA:
        raise ValueError(f"expected schema {GROUP_SCHEMA}, got {doc.get('schema')!r}")
    n = int(doc["n"])
    mul = np.asarray(doc["mul"], dtype=np.int32).reshape(n, n)
    inv = np.empty(n, dtype=np.int32)
    rows, cols = np.nonzero(mul == 0)
    inv[rows] = cols
    return ConcreteGroup(
        n=n, mul=mul, inv=inv,
        gens=[int(g) for g in doc["gens"]],
        label=str(doc.get("label", "group")),
    )


def save_group(G: ConcreteGroup, path: str):
    if path.endswith(".pc"):
        if G.presentation is None:
            raise ValueError(
                "group has no presentation; use a .json path for the "
                "multiplication-table form"
            )
        text = render_presentation(G.presentation)
    else:
        text = json.dumps(group_to_json(G), indent=None, separators=(",", ":"))
    with open(path, "w") as fh:
        fh.write(text)
        fh.write("\n")


def load_group_file(path: str) -> ConcreteGroup:
    with open(path) as fh:
        text = fh.read()
    if path.endswith(".json") or text.lstrip().startswith("{"):
        return group_from_json(json.loads(text))
    return build_group(parse_presentation(text))


def resolve_group(ref: str, p: int | None = None) -> ConcreteGroup:
    """Catalog id first, then file path."""
    from .catalog import get_group, CatalogError, ExtensionSlotError

    try:
        G, _ = get_group(ref, p=p)
        return G
    except ExtensionSlotError:
        raise
    except CatalogError:
        pass
    if os.path.exists(ref):
        return load_group_file(ref)
    raise ValueError(f"cannot resolve group reference {ref!r} "
                     f"(not a catalog id, not a file)")


_TOKEN = re.compile(r"^g(\d+)(?:\^(-?\d+))?$")


def _eval_word(G: ConcreteGroup, text: str) -> int:
    """Evaluate a word like "g1^2 g4" (or "1"/"e" for the identity) as a
    product of the group's distinguished generators."""
    acc = 0
    for tok in text.split():
        if tok in ("1", "e"):
            continue
        m = _TOKEN.match(tok)
        if m is None:
            raise ValueError(f"bad word token {tok!r}")
        k = int(m.group(1))
        exp = int(m.group(2)) if m.group(2) else 1
        if not 1 <= k <= len(G.gens):
            raise ValueError(f"generator g{k} out of range (have {len(G.gens)})")
        x = int(G.gens[k - 1])
        if exp < 0:
            x = int(G.inv[x])
            exp = -exp
        for _ in range(exp):
            acc = int(G.mul[acc, x])
    return acc


def parse_aut_literal(G: ConcreteGroup, text: str) -> GroupMap:
    """Parse "g1->g1^2, g2->g2 g3" into an automorphism of G.

    Every generator must be assigned exactly once; the images must extend
    to a bijective homomorphism.
    """
    images = [None] * len(G.gens)
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        if "->" not in part:
            raise ValueError(f"bad assignment {part!r}; expected gK->word")
        lhs, rhs = part.split("->", 1)
        m = _TOKEN.match(lhs.strip())
        if m is None or m.group(2) is not None:
            raise ValueError(f"left side of {part!r} must be a bare generator")
        k = int(m.group(1))
        if not 1 <= k <= len(G.gens):
            raise ValueError(f"generator g{k} out of range")
        if images[k - 1] is not None:
            raise ValueError(f"generator g{k} assigned twice")
        images[k - 1] = _eval_word(G, rhs.strip())
    missing = [f"g{i + 1}" for i, v in enumerate(images) if v is None]
    if missing:
        raise ValueError(f"missing images for {', '.join(missing)}")
    f = hom_from_images(G, G, images)
    if not f.is_bijective():
        raise ValueError("images define a homomorphism but not a bijection")
    return f
