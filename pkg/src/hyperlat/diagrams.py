"""Simply laced Coxeter diagrams and their combinatorics.

A diagram is a finite simple graph with stable string labels and an optional
black/white coloring in which every bond joins a black node to a white node.
Builders cover the classical families (A, tilde-A, D, tilde-D, E, tilde-E,
Y_pqr) and the point/line incidence graphs of the projective planes over the
2- and 3-element fields, with the customary node names for those two.

Search utilities: induced subdiagrams, the "not connected to J" complement
Z(J), induced-pattern embeddings with canonical deduplication, induced cycle
counting, and exact automorphism group orders by backtracking.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product


class DiagramError(ValueError):
    """Invalid diagram construction parameters or node references."""


class CoxeterDiagram:
    """Immutable simple graph with optional proper 2-coloring.

    ``nodes`` fixes the label order used by every Gram matrix built from the
    diagram.  ``colors`` maps each label to "b" or "w" when a coloring is
    attached; colored diagrams must be properly bipartite.
    """

    __slots__ = ("nodes", "edges", "colors", "_adj", "_index")

    def __init__(self, nodes, edges, colors=None):
        nodes = tuple(nodes)
        if len(set(nodes)) != len(nodes):
            raise DiagramError("duplicate node labels")
        node_set = set(nodes)
        norm_edges = set()
        for e in edges:
            u, v = tuple(e)
            if u == v:
                raise DiagramError(f"loop at {u!r}")
            if u not in node_set or v not in node_set:
                raise DiagramError(f"edge {u!r}-{v!r} uses unknown nodes")
            norm_edges.add(frozenset((u, v)))
        adj = {u: set() for u in nodes}
        for e in norm_edges:
            u, v = tuple(e)
            adj[u].add(v)
            adj[v].add(u)
        if colors is not None:
            colors = dict(colors)
            if set(colors) != node_set:
                raise DiagramError("coloring must cover exactly the node set")
            for c in colors.values():
                if c not in ("b", "w"):
                    raise DiagramError(f"bad color {c!r}")
            for e in norm_edges:
                u, v = tuple(e)
                if colors[u] == colors[v]:
                    raise DiagramError(f"edge {u!r}-{v!r} joins equal colors")
        object.__setattr__(self, "nodes", nodes)
        object.__setattr__(self, "edges", frozenset(norm_edges))
        object.__setattr__(self, "colors", colors)
        object.__setattr__(self, "_adj", {u: frozenset(s) for u, s in adj.items()})
        object.__setattr__(self, "_index", {u: i for i, u in enumerate(nodes)})

    def __setattr__(self, *_):
        raise AttributeError("diagrams are immutable")

    # -- basic queries -------------------------------------------------------

    def __len__(self):
        return len(self.nodes)

    def adjacent(self, u, v) -> bool:
        return v in self._adj[u]

    def neighbors(self, u):
        return self._adj[u]

    def degree(self, u) -> int:
        return len(self._adj[u])

    def index(self, u) -> int:
        return self._index[u]

    @property
    def is_colored(self) -> bool:
        return self.colors is not None

    def __eq__(self, other):
        if not isinstance(other, CoxeterDiagram):
            return NotImplemented
        return (self.nodes == other.nodes and self.edges == other.edges
                and self.colors == other.colors)

    def __hash__(self):
        colors = None if self.colors is None else tuple(sorted(self.colors.items()))
        return hash((self.nodes, self.edges, colors))

    def __repr__(self):
        return f"CoxeterDiagram({len(self.nodes)} nodes, {len(self.edges)} edges)"

    def components(self):
        """Connected components as sorted label lists, in node order."""
        seen = set()
        comps = []
        for start in self.nodes:
            if start in seen:
                continue
            stack = [start]
            comp = set()
            while stack:
                u = stack.pop()
                if u in comp:
                    continue
                comp.add(u)
                stack.extend(self._adj[u] - comp)
            seen |= comp
            comps.append(sorted(comp, key=self._index.__getitem__))
        return comps

    def is_connected(self) -> bool:
        return len(self.components()) <= 1

    def is_tree(self) -> bool:
        return self.is_connected() and len(self.edges) == len(self.nodes) - 1


def induced(diagram: CoxeterDiagram, subset) -> CoxeterDiagram:
    """Induced subdiagram on ``subset``, inheriting order and coloring."""
    subset = set(subset)
    unknown = subset - set(diagram.nodes)
    if unknown:
        raise DiagramError(f"unknown nodes {sorted(unknown)!r}")
    nodes = [u for u in diagram.nodes if u in subset]
    edges = [e for e in diagram.edges if e <= subset]
    colors = None
    if diagram.colors is not None:
        colors = {u: diagram.colors[u] for u in nodes}
    return CoxeterDiagram(nodes, edges, colors)


def zperp(diagram: CoxeterDiagram, J) -> frozenset:
    """Z(J): the nodes neither in J nor adjacent to any node of J."""
    J = set(J)
    unknown = J - set(diagram.nodes)
    if unknown:
        raise DiagramError(f"unknown nodes {sorted(unknown)!r}")
    closed = set(J)
    for u in J:
        closed |= diagram.neighbors(u)
    return frozenset(u for u in diagram.nodes if u not in closed)


def _try_bipartition(nodes, adj):
    """BFS 2-coloring; None when an odd cycle obstructs."""
    colors = {}
    for start in nodes:
        if start in colors:
            continue
        colors[start] = "b"
        stack = [start]
        while stack:
            u = stack.pop()
            want = "w" if colors[u] == "b" else "b"
            for v in adj[u]:
                if v not in colors:
                    colors[v] = want
                    stack.append(v)
                elif colors[v] != want:
                    return None
    return colors


def _colored(nodes, edges):
    adj = {u: set() for u in nodes}
    for u, v in edges:
        adj[u].add(v)
        adj[v].add(u)
    return _try_bipartition(list(nodes), adj)


# -- families ----------------------------------------------------------------


@dataclass(frozen=True)
class DiagramType:
    """Family tag plus parameters; knows the finite/affine trichotomy."""

    family: str  # A, tildeA, D, tildeD, E, tildeE, Y
    params: tuple

    def y_parameters(self):
        """The (p, q, r) of the equivalent Y diagram, when there is one."""
        f, pr = self.family, self.params
        if f == "Y":
            return pr
        if f == "A":
            return (pr[0] - 1, 0, 0)
        if f == "D":
            return (pr[0] - 3, 1, 1)
        if f == "E":
            return (pr[0] - 4, 2, 1)
        if f == "tildeE":
            return {6: (2, 2, 2), 7: (3, 3, 1), 8: (5, 2, 1)}[pr[0]]
        return None

    def classification(self) -> str:
        """"finite", "affine" or "indefinite" via 1/(p+1)+1/(q+1)+1/(r+1)."""
        if self.family == "tildeA" or self.family == "tildeD":
            return "affine"
        p, q, r = self.y_parameters()
        s = Fraction(1, p + 1) + Fraction(1, q + 1) + Fraction(1, r + 1)
        if s > 1:
            return "finite"
        if s == 1:
            return "affine"
        return "indefinite"


def parse_type(name: str) -> DiagramType:
    """Parse "A5", "tildeA11", "D4", "E8", "tildeE6", "Y555", "Y544", ..."""
    name = name.strip()
    if name.startswith("Y"):
        digits = name[1:]
        if not (digits.isdigit() and len(digits) == 3):
            raise DiagramError(f"cannot parse Y-type {name!r}")
        return DiagramType("Y", tuple(int(c) for c in digits))
    for fam in ("tildeA", "tildeD", "tildeE", "A", "D", "E"):
        if name.startswith(fam) and name[len(fam):].isdigit():
            return DiagramType(fam, (int(name[len(fam):]),))
    raise DiagramError(f"cannot parse diagram type {name!r}")


def _arm_label(arm: int, pos: int) -> str:
    # positions 1..5 give the customary letters b..f per arm
    if 1 <= pos <= 5:
        return "bcdef"[pos - 1] + str(arm)
    return f"arm{arm}n{pos}"


def build_family(dtype) -> CoxeterDiagram:
    """Construct a family diagram with a proper coloring when one exists.

    Trees and even cycles come colored; odd cycles (tilde-A with even index)
    are returned uncolored.
    """
    if isinstance(dtype, str):
        dtype = parse_type(dtype)
    f, pr = dtype.family, dtype.params
    if f == "A":
        (n,) = pr
        if n < 1:
            raise DiagramError("A_n needs n >= 1")
        nodes = [str(i) for i in range(1, n + 1)]
        edges = [(str(i), str(i + 1)) for i in range(1, n)]
    elif f == "tildeA":
        (n,) = pr
        if n < 2:
            raise DiagramError("tilde-A_n needs n >= 2")
        nodes = [str(i) for i in range(0, n + 1)]
        edges = [(str(i), str(i + 1)) for i in range(0, n)] + [("0", str(n))]
    elif f == "tildeD":
        (n,) = pr
        if n < 4:
            raise DiagramError("tilde-D_n needs n >= 4")
        if n == 4:
            nodes = ["0", "u1", "u2", "v1", "v2"]
            edges = [("0", x) for x in ("u1", "u2", "v1", "v2")]
        else:
            path = [str(i) for i in range(1, n - 2)]
            nodes = ["u1", "u2"] + path + ["v1", "v2"]
            edges = ([(path[i], path[i + 1]) for i in range(len(path) - 1)]
                     + [("u1", path[0]), ("u2", path[0]),
                        ("v1", path[-1]), ("v2", path[-1])])
    else:
        ypqr = dtype.y_parameters()
        if ypqr is None:
            raise DiagramError(f"unsupported family {f!r}")
        p, q, r = ypqr
        if f == "D" and pr[0] < 4:
            raise DiagramError("D_n needs n >= 4")
        if f == "E" and pr[0] not in (6, 7, 8):
            raise DiagramError("E_n needs n in 6..8")
        if f == "tildeE" and pr[0] not in (6, 7, 8):
            raise DiagramError("tilde-E_n needs n in 6..8")
        if min(p, q, r) < 0:
            raise DiagramError("Y parameters must be non-negative")
        nodes = ["a"]
        edges = []
        for arm, length in enumerate((p, q, r), start=1):
            prev = "a"
            for pos in range(1, length + 1):
                lab = _arm_label(arm, pos)
                nodes.append(lab)
                edges.append((prev, lab))
                prev = lab
    colors = _colored(nodes, edges)
    return CoxeterDiagram(nodes, edges, colors)


# -- incidence graphs of projective planes ------------------------------------


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    f = 2
    while f * f <= n:
        if n % f == 0:
            return False
        f += 1
    return True


def _projective_points(q: int):
    """Canonical representatives of the 1-spaces of F_q^3 (first nonzero = 1)."""
    pts = []
    for v in product(range(q), repeat=3):
        if v == (0, 0, 0):
            continue
        lead = next(x for x in v if x)
        if lead == 1:
            pts.append(v)
    return pts


def _figure_i26() -> CoxeterDiagram:
    """The 26-node incidence diagram with its customary node names.

    Points (black): a, a_i, c_i, e_i, g_i; lines (white): f, b_i, d_i, f_i,
    z_i.  Same-index bonds: b-a, b-g, b-c, e-f, e-z, e-d, c-d, a-z, g-f;
    different-index bonds: a-f, g-d, c-z; plus a-b_i, f-e_i, a-f.
    """
    idx = ("1", "2", "3")
    nodes = (["a", "f"]
             + [x + i for i in idx for x in ("a", "b", "c", "d", "e", "f", "g", "z")])
    edges = [("a", "f")]
    for i in idx:
        edges += [("a", "b" + i), ("f", "e" + i)]
        edges += [("b" + i, "a" + i), ("b" + i, "g" + i), ("b" + i, "c" + i)]
        edges += [("e" + i, "f" + i), ("e" + i, "z" + i), ("e" + i, "d" + i)]
        edges += [("c" + i, "d" + i), ("a" + i, "z" + i), ("g" + i, "f" + i)]
        for j in idx:
            if i != j:
                edges += [("a" + i, "f" + j), ("g" + i, "d" + j), ("c" + i, "z" + j)]
    black = {"a"} | {x + i for i in idx for x in ("a", "c", "e", "g")}
    colors = {u: ("b" if u in black else "w") for u in nodes}
    return CoxeterDiagram(nodes, edges, colors)


def _figure_i14() -> CoxeterDiagram:
    """The 14-node incidence diagram: points a, a_i, c_i; lines z, b_i, d_i."""
    idx = ("1", "2", "3")
    nodes = ["a", "z"] + [x + i for i in idx for x in ("a", "b", "c", "d")]
    edges = []
    for i in idx:
        edges += [("a", "b" + i), ("z", "c" + i)]
        edges += [("b" + i, "a" + i), ("b" + i, "c" + i), ("c" + i, "d" + i)]
        for j in idx:
            if i != j:
                edges.append(("a" + i, "d" + j))
    black = {"a"} | {x + i for i in idx for x in ("a", "c")}
    colors = {u: ("b" if u in black else "w") for u in nodes}
    return CoxeterDiagram(nodes, edges, colors)


@lru_cache(maxsize=None)
def build_incidence(q: int) -> CoxeterDiagram:
    """Incidence graph of the projective plane over the q-element field.

    Nodes are the 1-dimensional subspaces (points, black) and hyperplanes
    (lines, white) of F_q^3; a point lies on a line when the defining
    functional vanishes on it.  For q = 2 and q = 3 the nodes are renamed to
    the customary letter-index labels via a fixed color-preserving
    isomorphism with the lettered presentation.
    """
    if not _is_prime(q):
        raise DiagramError(f"unsupported order {q}: prime fields only")
    pts = _projective_points(q)
    nodes = [f"p:{''.join(map(str, v))}" for v in pts]
    nodes += [f"l:{''.join(map(str, v))}" for v in pts]
    edges = []
    for pv in pts:
        for lv in pts:
            if sum(a * b for a, b in zip(pv, lv)) % q == 0:
                edges.append((f"p:{''.join(map(str, pv))}", f"l:{''.join(map(str, lv))}"))
    colors = {u: ("b" if u.startswith("p:") else "w") for u in nodes}
    plane = CoxeterDiagram(nodes, edges, colors)
    if q not in (2, 3):
        return plane
    figure = _figure_i26() if q == 3 else _figure_i14()
    search = find_embeddings(figure, plane, respect_colors=True,
                             max_results=1, dedup=False)
    if not search.embeddings:
        raise DiagramError("plane construction does not match the lettered figure")
    relabel = {v: k for k, v in search.embeddings[0].items()}
    renamed = CoxeterDiagram(
        [relabel[u] for u in plane.nodes],
        [tuple(relabel[u] for u in e) for e in plane.edges],
        {relabel[u]: c for u, c in plane.colors.items()},
    )
    if renamed.edges != figure.edges or renamed.colors != figure.colors:
        raise DiagramError("incidence relabeling failed to reproduce the figure")
    return CoxeterDiagram(figure.nodes, renamed.edges, renamed.colors)


def diagram(name: str) -> CoxeterDiagram:
    """Builtin registry: family names plus "I26" and "I14"."""
    if name == "I26":
        return build_incidence(3)
    if name == "I14":
        return build_incidence(2)
    return build_family(name)


# -- induced-pattern search ----------------------------------------------------


@dataclass
class EmbeddingSearch:
    """Result of an induced-pattern search.

    ``complete`` is False when the node budget ran out; the embeddings found
    so far are still valid.
    """

    embeddings: list
    complete: bool
    nodes_explored: int


def _search_order(pattern: CoxeterDiagram):
    """Pattern nodes ordered so each (after component roots) touches a mapped one."""
    order = []
    placed = set()
    for comp in pattern.components():
        root = max(comp, key=pattern.degree)
        frontier = [root]
        placed.add(root)
        order.append(root)
        while frontier:
            nxt = []
            for u in frontier:
                for v in sorted(pattern.neighbors(u), key=pattern.index):
                    if v not in placed:
                        placed.add(v)
                        order.append(v)
                        nxt.append(v)
            frontier = nxt
    return order


def find_embeddings(pattern: CoxeterDiagram, haystack: CoxeterDiagram,
                    respect_colors: bool = False, budget: int | None = None,
                    max_results: int | None = None, dedup: bool = True) -> EmbeddingSearch:
    """All injective maps carrying the pattern onto an induced subdiagram.

    With ``dedup`` the embeddings are collapsed modulo the pattern's own
    automorphisms (the count is then the number of induced *copies*, not of
    labeled maps) and returned in canonical order.
    """
    order = _search_order(pattern)
    n = len(order)
    explored = 0
    out_of_budget = False
    results = []
    if n == 0:
        return EmbeddingSearch([{}], True, 0)

    hay_nodes = haystack.nodes
    hadj = {u: haystack.neighbors(u) for u in hay_nodes}

    def candidates(u, assignment, used):
        pat_nb_mapped = [assignment[v] for v in pattern.neighbors(u) if v in assignment]
        if pat_nb_mapped:
            cand = set(hadj[pat_nb_mapped[0]])
            for img in pat_nb_mapped[1:]:
                cand &= hadj[img]
            cand -= used
        else:
            cand = set(hay_nodes) - used
        good = []
        want = set(pat_nb_mapped)
        for c in cand:
            if haystack.degree(c) < pattern.degree(u):
                continue
            if respect_colors and pattern.colors and haystack.colors \
                    and pattern.colors[u] != haystack.colors[c]:
                continue
            # induced: c may touch previously mapped images only at the
            # images of u's mapped pattern-neighbors
            if hadj[c] & used != want:
                continue
            good.append(c)
        return sorted(good)

    assignment: dict = {}
    used: set = set()

    def extend(depth: int) -> bool:
        nonlocal explored, out_of_budget
        if depth == n:
            results.append(dict(assignment))
            return max_results is not None and len(results) >= max_results
        u = order[depth]
        for c in candidates(u, assignment, used):
            explored += 1
            if budget is not None and explored > budget:
                out_of_budget = True
                return True
            assignment[u] = c
            used.add(c)
            stop = extend(depth + 1)
            used.remove(c)
            del assignment[u]
            if stop:
                return True
        return False

    extend(0)
    complete = not out_of_budget
    if dedup and results:
        autos = find_embeddings(pattern, pattern, respect_colors=False,
                                dedup=False).embeddings
        node_order = pattern.nodes
        seen = {}
        for f in results:
            key = min(tuple(f[a[u]] for u in node_order) for a in autos)
            if key not in seen:
                seen[key] = f
        results = [seen[k] for k in sorted(seen)]
    return EmbeddingSearch(results, complete, explored)


def find_induced(haystack: CoxeterDiagram, pattern: CoxeterDiagram,
                 budget: int | None = None) -> EmbeddingSearch:
    """Induced copies of ``pattern`` inside ``haystack`` (canonical, deduplicated)."""
    return find_embeddings(pattern, haystack, budget=budget, dedup=True)


def automorphism_count(diagram: CoxeterDiagram, respect_colors: bool = False) -> int:
    """Exact order of the (color-preserving) automorphism group."""
    return len(automorphisms(diagram, respect_colors))


def automorphisms(diagram: CoxeterDiagram, respect_colors: bool = False):
    """All automorphisms as node-label dicts."""
    if len(diagram.nodes) > 40:
        raise DiagramError("automorphism search capped at 40 nodes")
    return find_embeddings(diagram, diagram, respect_colors=respect_colors,
                           dedup=False).embeddings


def _perm_closure_order(perms, n: int) -> int:
    """Order of the permutation group generated by tuples of length n."""
    ident = tuple(range(n))
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for p in frontier:
            for g in perms:
                q = tuple(p[g[i]] for i in range(n))
                if q not in seen:
                    seen.add(q)
                    nxt.append(q)
        frontier = nxt
    return len(seen)


@lru_cache(maxsize=None)
def automorphism_generators(diagram: CoxeterDiagram, respect_colors: bool = False):
    """A small verified generating set of the automorphism group.

    Automorphisms are added greedily until the permutation group they
    generate has the full order, so downstream orbit computations can use a
    handful of generators instead of the whole group.
    """
    autos = automorphisms(diagram, respect_colors)
    order = len(autos)
    nodes = diagram.nodes
    pos = {u: i for i, u in enumerate(nodes)}
    perms = [tuple(pos[a[u]] for u in nodes) for a in autos]
    ident = tuple(range(len(nodes)))
    gens = []
    for p in perms:
        if p == ident:
            continue
        gens.append(p)
        if _perm_closure_order(gens, len(nodes)) == order:
            break
    gen_maps = []
    for p in gens:
        gen_maps.append({nodes[i]: nodes[p[i]] for i in range(len(nodes))})
    return tuple(gen_maps)


def count_induced_cycles(diagram: CoxeterDiagram, length: int) -> int:
    """Induced (chordless) cycles of the given length, one count per cycle.

    Independent of the pattern-embedding machinery: plain canonical path
    extension.  Each cycle is counted once by rooting it at its smallest
    node and fixing the direction via its two root neighbors.
    """
    if length < 3:
        raise DiagramError("cycles need length >= 3")
    nodes = sorted(diagram.nodes)
    pos = {u: i for i, u in enumerate(nodes)}
    count = 0

    def extend(path, banned):
        nonlocal count
        u = path[-1]
        if len(path) == length:
            if diagram.adjacent(u, path[0]):
                count += 1
            return
        for v in diagram.neighbors(u):
            if pos[v] <= pos[path[0]] or v in banned:
                continue
            # chordless: v may touch only its predecessor among path nodes
            # (the closing bond to path[0] is permitted for the final node)
            if any(diagram.adjacent(v, w) for w in path[:-1]
                   if not (len(path) == length - 1 and w == path[0])):
                continue
            extend(path + [v], banned | {v})

    for root in nodes:
        nbrs = sorted(diagram.neighbors(root), key=pos.__getitem__)
        for i, first in enumerate(nbrs):
            if pos[first] < pos[root]:
                continue
            extend([root, first], {root, first})
    # each cycle found twice (two directions from the root)
    if count % 2:
        raise AssertionError("direction pairing failed")
    return count // 2


# -- text format ----------------------------------------------------------------


def format_diagram_text(diagram: CoxeterDiagram) -> str:
    """Two-line text form: "nodes: label:color ..." / "edges: a-b ..."."""
    parts = []
    for u in diagram.nodes:
        c = "-" if diagram.colors is None else diagram.colors[u]
        parts.append(f"{u}:{c}")
    edge_parts = sorted("-".join(sorted(e)) for e in diagram.edges)
    return f"nodes: {' '.join(parts)}\nedges: {' '.join(edge_parts)}\n"


def parse_diagram_text(text: str) -> CoxeterDiagram:
    """Inverse of :func:`format_diagram_text`."""
    nodes = []
    colors = {}
    edges = []
    saw_nodes = saw_edges = False
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        if line.startswith("nodes:"):
            saw_nodes = True
            for tok in line[len("nodes:"):].split():
                if ":" not in tok:
                    raise DiagramError(f"bad node token {tok!r}")
                label, c = tok.rsplit(":", 1)
                if "-" in label:
                    raise DiagramError(f"node label {label!r} may not contain '-'")
                nodes.append(label)
                if c not in ("b", "w", "-"):
                    raise DiagramError(f"bad color {c!r}")
                colors[label] = c
        elif line.startswith("edges:"):
            saw_edges = True
            for tok in line[len("edges:"):].split():
                u, _, v = tok.partition("-")
                if not u or not v:
                    raise DiagramError(f"bad edge token {tok!r}")
                edges.append((u, v))
        else:
            raise DiagramError(f"unrecognized line {line!r}")
    if not saw_nodes or not saw_edges:
        raise DiagramError("need both a nodes: and an edges: line")
    col_vals = set(colors.values())
    final_colors = None if col_vals == {"-"} or not colors else {
        u: c for u, c in colors.items()}
    if final_colors is not None and "-" in col_vals:
        raise DiagramError("either color every node or none")
    return CoxeterDiagram(nodes, edges, final_colors)
