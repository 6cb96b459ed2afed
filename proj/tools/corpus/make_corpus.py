#!/usr/bin/env python3
"""Regenerates the graph corpus under data/graphs. Deterministic, stdlib only."""
import json
import os
import random
import sys

OUT = os.path.join(os.path.dirname(__file__), "..", "..", "data", "graphs")


class G:
    def __init__(self):
        self.vertices, self.edges, self.subgraphs = [], [], {}

    def v(self, vid, order=1):
        self.vertices.append({"id": vid, "order": order})

    def e(self, eid, a, b, order=1, c=0.0, c_rev=0.0, rid=None):
        rid = rid or eid + "_"
        self.edges.append({"id": eid, "from": a, "to": b, "reverse": rid, "order": order, "conductance": c})
        self.edges.append({"id": rid, "from": b, "to": a, "reverse": eid, "order": order, "conductance": c_rev})
        return eid, rid

    def sub(self, name, verts, edges):
        self.subgraphs[name] = {"vertices": verts, "edges": edges}

    def dump(self, name):
        doc = {"vertices": self.vertices, "edges": self.edges, "subgraphs": self.subgraphs}
        with open(os.path.join(OUT, name + ".json"), "w") as f:
            json.dump(doc, f, indent=1)
            f.write("\n")


def fig8():
    g = G()
    g.v("v")
    g.e("a", "v", "v")
    g.e("b", "v", "v")
    g.sub("loop_a", ["v"], ["a", "a_"])
    return g


def petersen():
    g = G()
    for i in range(10):
        g.v(f"p{i}")
    outer = []
    for i in range(5):
        outer += g.e(f"o{i}", f"p{i}", f"p{(i + 1) % 5}")
        g.e(f"s{i}", f"p{i}", f"p{i + 5}")
        g.e(f"i{i}", f"p{5 + i}", f"p{5 + (i + 2) % 5}")
    g.sub("outer", [f"p{i}" for i in range(5)], outer)
    return g


def theta():
    g = G()
    g.v("u")
    g.v("w")
    for k in range(3):
        g.e(f"t{k}", "u", "w")
    g.sub("u_class", ["u"], [])
    return g


def dumbbell():
    g = G()
    g.v("x")
    g.v("y")
    lx = g.e("lx", "x", "x")
    g.e("ly", "y", "y")
    g.e("bridge", "x", "y")
    g.sub("loop_x", ["x"], list(lx))
    return g


def two_vertex():
    g = G()
    g.v("a")
    g.v("b")
    g.e("ab", "a", "b")
    return g


def graph_of_groups():
    # One vertex of order 2; tree degrees all equal 4.
    g = G()
    g.v("A", 2)
    g.v("B")
    g.v("C")
    g.e("ab", "A", "B")
    g.e("ac", "A", "C")
    g.e("bc", "B", "C")
    g.e("lb", "B", "B")
    g.e("lc", "C", "C")
    return g


def nagao_prefix(q=2, k=6):
    # Modular ray, projective convention: |G_v0| = q(q^2-1), |G_vn| = (q-1)q^(n+1).
    g = G()
    g.v("v0", q * (q * q - 1))
    for n in range(1, k):
        g.v(f"v{n}", (q - 1) * q ** (n + 1))
    g.e("r0", "v0", "v1", order=(q - 1) * q)
    for n in range(1, k - 1):
        g.e(f"r{n}", f"v{n}", f"v{n + 1}", order=(q - 1) * q ** (n + 1))
    return g


def biregular():
    # (2,3)-biregular bipartite: 8 vertices of degree 3, 6 of degree 4.
    rnd = random.Random(1)
    while True:
        sp = [v for v in range(8) for _ in range(3)]
        sq = [8 + v for v in range(6) for _ in range(4)]
        rnd.shuffle(sq)
        pairs = list(zip(sp, sq))
        if len(set(pairs)) < 24:
            continue
        adj = {v: set() for v in range(14)}
        for a, b in pairs:
            adj[a].add(b)
            adj[b].add(a)
        seen, st = {0}, [0]
        while st:
            x = st.pop()
            for y in adj[x] - seen:
                seen.add(y)
                st.append(y)
        if len(seen) == 14:
            break
    g = G()
    for v in range(14):
        g.v(f"b{v}")
    eid = {}
    for k, (a, b) in enumerate(pairs):
        e, r = g.e(f"e{k}", f"b{a}", f"b{b}")
        eid[(a, b)], eid[(b, a)] = e, r
    for name, cyc in (("cyc_minus", [0, 13, 2, 12]), ("cyc_plus", [1, 9, 3, 11])):
        es = []
        for i in range(len(cyc)):
            a, b = cyc[i], cyc[(i + 1) % len(cyc)]
            es += [eid[(a, b)], eid[(b, a)]]
        g.sub(name, [f"b{v}" for v in cyc], es)
    return g


def main():
    os.makedirs(OUT, exist_ok=True)
    for name, fn in (("fig8", fig8), ("petersen", petersen), ("theta", theta), ("dumbbell", dumbbell),
                     ("two_vertex", two_vertex), ("graph_of_groups", graph_of_groups),
                     ("nagao_prefix", nagao_prefix), ("biregular_2_3", biregular)):
        fn().dump(name)
    return 0


if __name__ == "__main__":
    sys.exit(main())
