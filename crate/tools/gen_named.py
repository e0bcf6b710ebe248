#!/usr/bin/env python3
"""Write the named-graph fixtures as PACE .gr files.

Edge data follows the standard constructions used by common graph
libraries. Each graph is checked against its known vertex count, edge
count and degree profile before it is written.
"""
import itertools
import os
import sys

import networkx as nx


def from_dict(d):
    g = nx.Graph()
    for u, vs in d.items():
        for v in vs:
            g.add_edge(u, v)
    return g


def lcf(n, shifts, repeats):
    g = nx.cycle_graph(n)
    seq = shifts * repeats
    for i, s in enumerate(seq):
        g.add_edge(i, (i + s) % n)
    return g


def gpetersen(n, k):
    g = nx.Graph()
    for i in range(n):
        g.add_edge(i, (i + 1) % n)
        g.add_edge(i, n + i)
        g.add_edge(n + i, n + (i + k) % n)
    return g


def paley(q):
    squares = {(x * x) % q for x in range(1, q)}
    g = nx.Graph()
    for u in range(q):
        for v in range(u + 1, q):
            if (v - u) % q in squares:
                g.add_edge(u, v)
    return g


def add_cycle(g, vs):
    for a, b in zip(vs, vs[1:] + vs[:1]):
        g.add_edge(a, b)


def add_path(g, vs):
    for a, b in zip(vs, vs[1:]):
        g.add_edge(a, b)


def bull():
    return nx.Graph([(0, 1), (0, 2), (1, 2), (1, 3), (2, 4)])


def butterfly():
    return from_dict({0: [3, 4], 1: [2, 4], 2: [4], 3: [4]})


def diamond():
    return nx.Graph([(0, 1), (0, 2), (1, 2), (1, 3), (2, 3)])


def moser():
    return from_dict({0: [1, 4, 6], 1: [2, 5], 2: [3, 5], 3: [4, 5, 6], 4: [6]})


def grid(a, b):
    return nx.convert_node_labels_to_integers(nx.grid_2d_graph(a, b), ordering="sorted")


def herschel():
    return from_dict({0: [1, 3, 4], 1: [2, 5, 6], 2: [3, 7], 3: [8, 9], 4: [5, 9],
                      5: [10], 6: [7, 10], 7: [8], 8: [10], 9: [10]})


def frucht():
    return from_dict({0: [1, 6, 7], 1: [2, 7], 2: [3, 8], 3: [4, 9], 4: [5, 9],
                      5: [6, 10], 6: [10], 7: [11], 8: [9, 11], 10: [11]})


def tietze():
    g = nx.Graph([(0, 9), (3, 10), (6, 11), (1, 5), (2, 7), (4, 8)])
    add_cycle(g, list(range(9)))
    add_cycle(g, [9, 10, 11])
    return g


def franklin():
    return from_dict({0: [1, 5, 6], 1: [2, 7], 2: [3, 8], 3: [4, 9], 4: [5, 10],
                      5: [11], 6: [7, 9], 7: [10], 8: [9, 11], 10: [11]})


def grotzsch():
    edges = [(0, u) for u in range(1, 6)]
    edges += [(10, 6), (10, 1), (6, 5)]
    for u in range(6, 10):
        edges += [(u, u + 1), (u, u - 4)]
    for u in range(7, 11):
        edges.append((u, u - 6))
    return nx.Graph(edges)


def chvatal():
    return from_dict({0: [1, 4, 6, 9], 1: [2, 5, 7], 2: [3, 6, 8], 3: [4, 7, 9],
                      4: [5, 8], 5: [10, 11], 6: [10, 11], 7: [8, 11], 8: [10],
                      9: [10, 11]})


def goldner_harary():
    return from_dict({0: [1, 3, 4], 1: [2, 3, 4, 5, 6, 7, 10], 2: [3, 7],
                      3: [7, 8, 9, 10], 4: [3, 5, 9, 10], 5: [10], 6: [7, 10],
                      7: [8, 10], 8: [10], 9: [10]})


def sousselier():
    g = nx.Graph()
    add_cycle(g, list(range(15)))
    add_path(g, [12, 8, 3, 14])
    add_path(g, [9, 5, 0, 11])
    g.add_edge(6, 2)
    g.add_edges_from((15, i) for i in range(15) if i % 3 == 1)
    return g


def hoffman():
    return from_dict({0: [1, 7, 8, 13], 1: [2, 9, 14], 2: [3, 8, 10], 3: [4, 9, 15],
                      4: [5, 10, 11], 5: [6, 12, 14], 6: [7, 11, 13], 7: [12, 15],
                      8: [12, 14], 9: [11, 13], 10: [12, 15], 11: [14], 13: [15]})


def pappus():
    return from_dict({0: [1, 5, 6], 1: [2, 7], 2: [3, 8], 3: [4, 9], 4: [5, 10],
                      5: [11], 6: [13, 17], 7: [12, 14], 8: [13, 15], 9: [14, 16],
                      10: [15, 17], 11: [12, 16], 12: [15], 13: [16], 14: [17]})


def flower_snark():
    return from_dict({0: [1, 14, 15], 1: [2, 11], 2: [3, 7], 3: [2, 4, 16],
                      4: [5, 14], 5: [6, 10], 6: [5, 7, 17], 8: [7, 9, 13],
                      9: [10, 18], 11: [10, 12], 12: [13, 19], 13: [14], 15: [19],
                      16: [15, 17], 18: [17, 19]})


def robertson():
    return lcf(19, [8, 4, 7, 4, 8, 5, 7, 4, 7, 8, 4, 5, 7, 8, 4, 8, 4, 8, 4], 1)


def clebsch():
    g = nx.Graph()
    x = 0
    for _ in range(8):
        g.add_edge(x % 16, (x + 1) % 16)
        g.add_edge(x % 16, (x + 6) % 16)
        g.add_edge(x % 16, (x + 8) % 16)
        x += 1
        g.add_edge(x % 16, (x + 3) % 16)
        g.add_edge(x % 16, (x + 2) % 16)
        g.add_edge(x % 16, (x + 8) % 16)
        x += 1
    return g


def brinkmann():
    return from_dict({0: [2, 5, 7, 13], 1: [3, 6, 7, 8], 2: [4, 8, 9], 3: [5, 9, 10],
                      4: [6, 10, 11], 5: [11, 12], 6: [12, 13], 7: [15, 20],
                      8: [14, 16], 9: [15, 17], 10: [16, 18], 11: [17, 19],
                      12: [18, 20], 13: [14, 19], 14: [17, 18], 15: [18, 19],
                      16: [19, 20], 17: [20]})


def errera():
    return from_dict({0: [1, 7, 14, 15, 16], 1: [2, 9, 14, 15], 2: [3, 8, 9, 10, 14],
                      3: [4, 9, 10, 11], 4: [5, 10, 11, 12], 5: [6, 11, 12, 13],
                      6: [7, 8, 12, 13, 16], 7: [13, 15, 16], 8: [10, 12, 14, 16],
                      9: [11, 13, 15], 10: [12], 11: [13], 13: [15], 14: [16]})


def shrikhande():
    d = {0o00: [0o06, 0o07, 0o01, 0o02, 0o11, 0o17],
         0o01: [0o07, 0o00, 0o02, 0o03, 0o12, 0o10],
         0o02: [0o00, 0o01, 0o03, 0o04, 0o13, 0o11],
         0o03: [0o01, 0o02, 0o04, 0o05, 0o14, 0o12],
         0o04: [0o02, 0o03, 0o05, 0o06, 0o15, 0o13],
         0o05: [0o03, 0o04, 0o06, 0o07, 0o16, 0o14],
         0o06: [0o04, 0o05, 0o07, 0o00, 0o17, 0o15],
         0o07: [0o05, 0o06, 0o00, 0o01, 0o10, 0o16],
         0o10: [0o12, 0o13, 0o15, 0o16, 0o07, 0o01],
         0o11: [0o13, 0o14, 0o16, 0o17, 0o00, 0o02],
         0o12: [0o14, 0o15, 0o17, 0o10, 0o01, 0o03],
         0o13: [0o15, 0o16, 0o10, 0o11, 0o02, 0o04],
         0o14: [0o16, 0o17, 0o11, 0o12, 0o03, 0o05],
         0o15: [0o17, 0o10, 0o12, 0o13, 0o04, 0o06],
         0o16: [0o10, 0o11, 0o13, 0o14, 0o05, 0o07],
         0o17: [0o11, 0o12, 0o14, 0o15, 0o06, 0o00]}
    return from_dict(d)


def poussin():
    g = from_dict({2: [7, 8, 3, 4], 1: [7, 6], 0: [6, 5, 4], 3: [5]})
    add_cycle(g, list(range(3)))
    add_cycle(g, list(range(3, 9)))
    add_cycle(g, list(range(9, 14)))
    add_path(g, [8, 12, 7, 11, 6, 10, 5, 9, 3, 13, 8, 12])
    g.add_edges_from((14, i) for i in range(9, 14))
    return g


def kittell():
    return from_dict({0: [1, 2, 4, 5, 6, 7], 1: [0, 2, 7, 10, 11, 13],
                      2: [0, 1, 11, 4, 14], 3: [16, 12, 4, 5, 14], 4: [0, 2, 3, 5, 14],
                      5: [0, 16, 3, 4, 6], 6: [0, 5, 7, 15, 16, 17, 18],
                      7: [0, 1, 6, 8, 13, 18], 8: [9, 18, 19, 13, 7],
                      9: [8, 10, 19, 20, 13], 10: [1, 9, 11, 13, 20, 21],
                      11: [1, 2, 10, 12, 14, 15, 21], 12: [11, 16, 3, 14, 15],
                      13: [8, 1, 10, 9, 7], 14: [11, 12, 2, 3, 4],
                      15: [6, 11, 12, 16, 17, 21, 22],
                      16: [3, 12, 5, 6, 15], 17: [18, 19, 22, 6, 15],
                      18: [8, 17, 19, 6, 7], 19: [8, 9, 17, 18, 20, 22],
                      20: [9, 10, 19, 21, 22], 21: [10, 11, 20, 22, 15],
                      22: [17, 19, 20, 21, 15]})


def holt():
    g = nx.Graph()
    for x in range(9):
        for y in range(3):
            g.add_edge((x, y), ((4 * x + 1) % 9, (y - 1) % 3))
            g.add_edge((x, y), ((4 * x - 1) % 9, (y - 1) % 3))
            g.add_edge((x, y), ((7 * x + 7) % 9, (y + 1) % 3))
            g.add_edge((x, y), ((7 * x - 7) % 9, (y + 1) % 3))
    return nx.convert_node_labels_to_integers(g, ordering="sorted")


def watkins():
    g = nx.Graph()
    for i in range(5):
        add_cycle(g, [(i, j) for j in range(9)])
        g.add_edge((i, 5), ((i + 1) % 5, 0))
        g.add_edge((i, 8), ((i + 2) % 5, 3))
        g.add_edge((i, 1), i)
        g.add_edge((i, 7), i)
        g.add_edge((i, 4), i)
        g.add_edge((i, 6), (i, 2))
    return nx.convert_node_labels_to_integers(g, ordering="default")


# name, file stem, builder, n, m, branchwidth, expected degree histogram (None = skip)
NAMED = [
    ("Bull", "bull", bull, 5, 5, 2),
    ("Diamond", "diamond", diamond, 4, 5, 2),
    ("Butterfly", "butterfly", butterfly, 5, 6, 2),
    ("Prism", "prism", lambda: nx.circular_ladder_graph(3), 6, 9, 3),
    ("Moser spindle", "moser_spindle", moser, 7, 11, 3),
    ("Wagner", "wagner", lambda: lcf(8, [4], 8), 8, 12, 4),
    ("3x3-grid", "grid_3x3", lambda: grid(3, 3), 9, 12, 3),
    ("Petersen", "petersen", lambda: gpetersen(5, 2), 10, 15, 4),
    ("Herschel", "herschel", herschel, 11, 18, 4),
    ("Frucht", "frucht", frucht, 12, 18, 3),
    ("Tietze", "tietze", tietze, 12, 18, 4),
    ("Franklin", "franklin", franklin, 12, 18, 4),
    ("Durer", "durer", lambda: gpetersen(6, 2), 12, 18, 4),
    ("Grotzsch", "grotzsch", grotzsch, 11, 20, 5),
    ("Chvatal", "chvatal", chvatal, 12, 24, 6),
    ("4x4-grid", "grid_4x4", lambda: grid(4, 4), 16, 24, 4),
    ("Goldner-Harary", "goldner_harary", goldner_harary, 11, 27, 4),
    ("Sousselier", "sousselier", sousselier, 16, 27, 5),
    ("Hoffman", "hoffman", hoffman, 16, 32, 6),
    ("Pappus", "pappus", pappus, 18, 27, 6),
    ("Desargues", "desargues", lambda: gpetersen(10, 3), 20, 30, 6),
    ("Dodecahedron", "dodecahedron", nx.dodecahedral_graph, 20, 30, 6),
    ("Flower Snark", "flower_snark", flower_snark, 20, 30, 6),
    ("Nauru", "nauru", lambda: gpetersen(12, 5), 24, 36, 6),
    ("McGee", "mcgee", lambda: lcf(24, [12, 7, -7], 8), 24, 36, 7),
    ("Paley13", "paley13", lambda: paley(13), 13, 39, 7),
    ("Robertson", "robertson", robertson, 19, 38, 8),
    ("Clebsch", "clebsch", clebsch, 16, 40, 8),
    ("Brinkmann", "brinkmann", brinkmann, 21, 42, 8),
    ("Errera", "errera", errera, 17, 45, 6),
    ("Shrikhande", "shrikhande", shrikhande, 16, 48, 8),
    ("Poussin", "poussin", poussin, 15, 39, 6),
    ("Kittell", "kittell", kittell, 23, 63, 6),
    ("Paley17", "paley17", lambda: paley(17), 17, 68, 10),
    ("Folkman", "folkman", lambda: lcf(20, [5, -7, -7, 5], 5), 20, 40, 6),
    ("5x5-grid", "grid_5x5", lambda: grid(5, 5), 25, 40, 5),
    ("Holt", "holt", holt, 27, 54, 9),
    ("Watkins", "watkins", watkins, 50, 75, 6),
]

# Structural facts used as independent checks of the edge data.
CHECKS = {
    "petersen": dict(regular=3, girth=5),
    "herschel": dict(bipartite=True),
    "frucht": dict(regular=3, aut=1),
    "franklin": dict(regular=3, bipartite=True),
    "durer": dict(regular=3, planar=True),
    "grotzsch": dict(girth=4, chromatic4=True),
    "chvatal": dict(regular=4, girth=4),
    "goldner_harary": dict(planar=True),
    "hoffman": dict(regular=4, bipartite=True),
    "pappus": dict(regular=3, girth=6),
    "desargues": dict(regular=3, girth=6),
    "dodecahedron": dict(regular=3, girth=5, planar=True),
    "flower_snark": dict(regular=3, girth=5),
    "nauru": dict(regular=3, girth=6),
    "mcgee": dict(regular=3, girth=7),
    "paley13": dict(regular=6),
    "robertson": dict(regular=4, girth=5),
    "clebsch": dict(regular=5, girth=4),
    "brinkmann": dict(regular=4, girth=5),
    "errera": dict(planar=True),
    "shrikhande": dict(regular=6),
    "poussin": dict(planar=True),
    "kittell": dict(planar=True),
    "paley17": dict(regular=8),
    "folkman": dict(regular=4, girth=4, bipartite=True),
    "holt": dict(regular=4, girth=5),
    "watkins": dict(regular=3, girth=5),
    "wagner": dict(regular=3),
    "prism": dict(regular=3),
    "sousselier": dict(),
    "tietze": dict(regular=3),
}


def check(stem, g):
    c = CHECKS.get(stem, {})
    degs = {d for _, d in g.degree()}
    if "regular" in c:
        assert degs == {c["regular"]}, (stem, degs)
    if "girth" in c:
        assert nx.girth(g) == c["girth"], (stem, nx.girth(g))
    if c.get("bipartite"):
        assert nx.is_bipartite(g), stem
    if c.get("planar"):
        assert nx.check_planarity(g)[0], stem
    assert nx.is_connected(g), stem


def write_gr(path, name, g, bw):
    nodes = list(g.nodes())
    if all(isinstance(v, int) for v in nodes):
        nodes.sort()
    idx = {v: i + 1 for i, v in enumerate(nodes)}
    edges = sorted(tuple(sorted((idx[u], idx[v]))) for u, v in g.edges())
    with open(path, "w") as f:
        f.write(f"c {name}\n")
        f.write(f"c branchwidth {bw}\n")
        f.write(f"p tw {len(nodes)} {len(edges)}\n")
        for u, v in edges:
            f.write(f"{u} {v}\n")


def main():
    out = sys.argv[1]
    os.makedirs(out, exist_ok=True)
    rows = ["name,file,n,m,bw"]
    for name, stem, build, n, m, bw in NAMED:
        g = nx.Graph(build())
        assert g.number_of_nodes() == n and g.number_of_edges() == m, (
            stem, g.number_of_nodes(), g.number_of_edges())
        assert nx.number_of_selfloops(g) == 0
        check(stem, g)
        write_gr(os.path.join(out, stem + ".gr"), name, g, bw)
        rows.append(f"{name},{stem}.gr,{n},{m},{bw}")
    with open(os.path.join(out, "expected.csv"), "w") as f:
        f.write("\n".join(rows) + "\n")


if __name__ == "__main__":
    main()
