"""JSON forms of the library's objects.

Words are strings over a..z with uppercase for inverses.  Core graphs,
splittings, twists, suspensions and automorphism answers all round-trip
through plain dicts.
"""

from __future__ import annotations

from typing import Dict, List, Optional, Tuple

from .gog import DehnTwist, Splitting
from .graphs import CoreGraph
from .suspension import Suspension, suspend
from .words import Word, format_word, parse_word


def word_to_str(w: Word) -> str:
    return format_word(w)


def str_to_word(s: str, rank: Optional[int] = None) -> Word:
    return parse_word(s, rank)


# -- core graphs ---------------------------------------------------------------


def coregraph_to_dict(g: CoreGraph) -> dict:
    return {
        "rank": g.rank,
        "vertices": list(range(g.nv)),
        "edges": [[u, format_word((lab,)), v] for (u, lab, v) in g.edges],
        "basepoint": g.base,
    }


def dict_to_coregraph(doc: dict) -> CoreGraph:
    rank = int(doc["rank"])
    verts = list(doc["vertices"])
    order = {v: i for i, v in enumerate(verts)}
    edges = []
    for (u, lab, v) in doc["edges"]:
        w = parse_word(lab)
        if len(w) != 1 or w[0] < 0:
            raise ValueError("edge labels must be single positive letters")
        edges.append((order[u], w[0], order[v]))
    base = doc.get("basepoint")
    return CoreGraph(rank, len(verts), edges,
                     order[base] if base is not None else None)


# -- splittings and twists -------------------------------------------------------


def splitting_to_dict(s: Splitting) -> dict:
    vertices = []
    for v in sorted(s.white_ranks):
        vertices.append({"id": v, "color": "white",
                         "rank": s.white_ranks[v], "central": True})
    for b in sorted(s.blacks):
        vertices.append({"id": b, "color": "black", "central": "z2"})
    edges = []
    for e in s.edges:
        edges.append({"id": e.eid, "from": e.black, "to": e.white,
                      "fwd_image": format_word(e.cword), "bwd_image": "a"})
    return {"vertices": vertices, "edges": edges,
            "orientation": [e.eid for e in s.edges],
            "basepoint": s.base}


def dict_to_splitting(doc: dict) -> Splitting:
    whites = {}
    blacks = []
    for v in doc["vertices"]:
        if v.get("color") == "white":
            whites[int(v["id"])] = int(v["rank"])
        elif v.get("color") == "black":
            blacks.append(int(v["id"]))
        else:
            raise ValueError(f"vertex {v.get('id')}: unknown color")
    edges = []
    for e in sorted(doc["edges"], key=lambda x: int(x["id"])):
        bwd = e.get("bwd_image", "a")
        if bwd not in ("a", "A"):
            raise ValueError(f"edge {e['id']}: black image must be a or A")
        edges.append((int(e["from"]), int(e["to"]),
                      parse_word(e["fwd_image"])))
    return Splitting(whites, blacks, edges, int(doc["basepoint"]))


def twist_to_dict(t: DehnTwist) -> dict:
    return {"gamma": {str(eid): n for eid, n in sorted(t.exps.items()) if n}}


def dict_to_twist(s: Splitting, doc: dict) -> DehnTwist:
    exps = {int(k): int(v) for k, v in doc.get("gamma", {}).items()}
    return DehnTwist(s, exps)


# -- suspensions -----------------------------------------------------------------


def suspension_to_dict(s: Suspension) -> dict:
    base = splitting_to_dict(s.splitting)
    base["twist"] = twist_to_dict(s.twist)
    fib = {format_word((i + 1,)): 0 for i in range(s.rank)}
    fib["t"] = 1
    base["fibration"] = fib
    base["t_elements"] = {
        str(v): {"fiber": format_word(s.f_elt[v]), "t": 1}
        for v in sorted(s.splitting.white_ranks)}
    base["black_data"] = {
        str(b): {"fiber": format_word(s.black_val(b)),
                 "offsets": {str(e.eid): s.m_exp[e.eid]
                             for e in s.splitting.edges_at_black(b)}}
        for b in sorted(s.splitting.blacks)}
    return base


def dict_to_suspension(doc: dict) -> Suspension:
    sp = dict_to_splitting(doc)
    tw = dict_to_twist(sp, doc.get("twist", {"gamma": {}}))
    return suspend(sp, tw)


# -- group elements ---------------------------------------------------------------


def gamma_to_dict(x) -> dict:
    return {"fiber": format_word(x[0]), "t": x[1]}


def parse_gamma(doc, rank: int):
    if isinstance(doc, str):
        return (parse_word(doc, rank), 0)
    return (parse_word(doc.get("fiber", ""), rank), int(doc.get("t", 0)))


# -- automorphism answers -----------------------------------------------------------


def automorphism_to_dict(images) -> dict:
    return {format_word((i + 1,)): format_word(w)
            for i, w in enumerate(images)}


def gamma_map_to_dict(fiber_images, t_image) -> dict:
    out = {format_word((i + 1,)): gamma_to_dict(x)
           for i, x in enumerate(fiber_images)}
    out["t"] = gamma_to_dict(t_image)
    return out
