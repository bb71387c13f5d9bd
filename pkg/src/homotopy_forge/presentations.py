"""Presentations whose centers carry homotopy groups of suspensions.

Three targets:

* ``s3``: generators y_0..y_n, relators every bracket arrangement on
  y_-1, y_0, ..., y_n covering all indices, with y_-1 = (y_0...y_n)^-1.
* ``sigma_kzm``: generators x_0..x_n, relators x_j^m together with the same
  brackets written in x-letters.
* ``wedge_s2``: generators y_k^(a) for circles a in J, relators the covering
  brackets with the circle label free.

Relators are cut off by bracket weight and deduplicated by reduced word up
to inversion.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from . import __version__
from .simplicial import Y_CONVENTION, build_model, moore_boundary_gens
from .words import GenSym, ReducedWord, format_word

TARGETS = ("s3", "sigma_kzm", "wedge_s2")


@dataclass
class Relator:
    label: str
    word: ReducedWord
    family: str = "bracket"

    def to_dict(self) -> dict:
        return {"family": self.family, "label": self.label, "word": format_word(self.word)}


@dataclass
class PresentationDoc:
    generators: list[GenSym]
    relators: list[Relator]
    meta: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {"generators": [str(g) for g in self.generators],
                "relators": [r.to_dict() for r in self.relators],
                "meta": self.meta}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=1, sort_keys=True) + "\n"

    def render_text(self) -> str:
        m = self.meta
        lines = [f"# {m['target']} n={m['n']}" + (f" m={m['m']}" if m.get("m") else "")
                 + (f" J={m['J']}" if m.get("J") else "") + f" weight<={m['weight_cap']}",
                 f"# version {m['version']}",
                 f"# {m['y_convention']}",
                 f"# relators: {m['relator_count']}",
                 "generators: " + ", ".join(str(g) for g in self.generators)]
        for i, r in enumerate(self.relators, start=1):
            lines.append(f"r{i} ({r.family}) {r.label} = {format_word(r.word)}")
        return "\n".join(lines) + "\n"


def emit_presentation(target: str, n: int, *, m: int | None = None, J: int | None = None,
                      weight_cap: int | None = None) -> PresentationDoc:
    if target not in TARGETS:
        raise ValueError(f"unknown target {target!r}; expected one of {TARGETS}")
    if n < 1:
        raise ValueError("n must be >= 1")
    cap = n + 2 if weight_cap is None else weight_cap
    q = n + 1
    meta = {"target": target, "n": n, "level": q, "weight_cap": cap,
            "y_convention": Y_CONVENTION, "version": __version__}
    if target == "wedge_s2":
        if not J or J < 1:
            raise ValueError("wedge_s2 needs J >= 1")
        G = build_model("wedge", q + 1, J=J, verify=False)
        meta["J"] = J
    else:
        G = build_model("circle", q + 1, verify=False)
    bounds = moore_boundary_gens(q, cap, model=G)
    if target == "sigma_kzm":
        if not m or m < 2:
            raise ValueError("sigma_kzm needs m >= 2")
        meta["m"] = m
        gens = list(G.alphabet(q))
        relators = [Relator(f"{g}^{m}", ReducedWord.of(g) ** m, "power") for g in gens]
        seen = set()
        for b in bounds:
            w = G.from_y(b.word, q)
            if w.is_identity() or w in seen or w.inverse() in seen:
                continue
            seen.add(w)
            relators.append(Relator(str(b.tree), w))
    else:
        gens = list(G.y_alphabet(q))
        relators = [Relator(str(b.tree), b.word) for b in bounds]
    meta["relator_count"] = len(relators)
    meta["bracket_relator_count"] = sum(1 for r in relators if r.family == "bracket")
    return PresentationDoc(gens, relators, meta)
