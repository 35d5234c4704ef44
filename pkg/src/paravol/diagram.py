"""Local (affine) Dynkin diagrams, parahoric types, realized automorphisms.

Vertices of a split local index are numbered 0 (the extra affine vertex)
and 1..n (the finite simple roots in Bourbaki order).  A parahoric type is
a proper subset of the vertex set; the empty type is the Iwahori.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

from . import roots, twisted
from .errors import ImproperTypeError, UnsupportedTypeError


@dataclass(frozen=True)
class GroupSpec:
    """Absolute type of the group, plus the local form at the place."""

    form: str  # "split" or "twisted"
    family: str
    rank: int
    twisted_index: str | None = None

    def __post_init__(self):
        if self.form == "split":
            if self.twisted_index is not None:
                raise UnsupportedTypeError("unsupported type: split form takes no twisted index")
            if not roots.check_rank(self.family, self.rank):
                raise UnsupportedTypeError(f"unsupported type: {self.family}{self.rank}")
        elif self.form == "twisted":
            data = twisted.TWISTED_INDICES.get(self.twisted_index or "")
            if data is None:
                raise UnsupportedTypeError(f"unsupported type: twisted index {self.twisted_index!r}")
            if (self.family, self.rank) != data["absolute"]:
                raise UnsupportedTypeError(
                    f"unsupported type: {self.twisted_index} has absolute type "
                    f"{data['absolute'][0]}{data['absolute'][1]}")
        else:
            raise UnsupportedTypeError(f"unsupported type: form {self.form!r}")

    @classmethod
    def parse(cls, text):
        """Parse 'split:B3' or 'twisted:C-BC1'."""
        form, _, name = text.partition(":")
        if form == "split":
            if len(name) >= 2 and name[0] in roots.RANK_BOUNDS and name[1:].isdigit():
                return cls("split", name[0], int(name[1:]))
            raise UnsupportedTypeError(f"unsupported type: {text!r}")
        if form == "twisted":
            data = twisted.TWISTED_INDICES.get(name)
            if data is None:
                raise UnsupportedTypeError(f"unsupported type: {text!r}")
            fam, rank = data["absolute"]
            return cls("twisted", fam, rank, name)
        raise UnsupportedTypeError(f"unsupported type: {text!r}")

    @property
    def label(self):
        if self.form == "split":
            return f"split:{self.family}{self.rank}"
        return f"twisted:{self.twisted_index}"

    def dimension(self):
        return roots.group_dimension(self.family, self.rank)


@dataclass(frozen=True)
class FiniteTypeLabel:
    """Isogeny-free label of a finite reductive group: family, rank, form."""

    family: str
    rank: int
    form: str = "split"  # or "unitary" for the unramified quasi-split 2A_r

    def __post_init__(self):
        if self.family not in "ABCDEFG" or self.rank < 1:
            raise UnsupportedTypeError(f"unsupported type: {self.family}{self.rank}")
        if self.form not in ("split", "unitary"):
            raise UnsupportedTypeError(f"unsupported type: form {self.form!r}")
        if self.form == "unitary" and self.family != "A":
            raise UnsupportedTypeError("unsupported type: unitary form needs family A")

    def sort_key(self):
        return (self.family, self.rank, self.form)

    def __str__(self):
        prefix = "2" if self.form == "unitary" else ""
        return f"{prefix}{self.family}{self.rank}"


def canonical_labels(family, rank, form="split"):
    """Labels for one diagram component, low-rank coincidences folded in."""
    if family in ("B", "C") and rank == 1:
        family = "A"
    if family == "D" and rank == 2:
        return (FiniteTypeLabel("A", 1, form), FiniteTypeLabel("A", 1, form))
    if family == "D" and rank == 3:
        family, rank = "A", 3
    return (FiniteTypeLabel(family, rank, form),)


class Edge(NamedTuple):
    u: int
    v: int
    mult: int  # product of the two Cartan pairings: 1, 2, 3 or 4
    arrow: int | None  # vertex on the short side, None for equal lengths


@dataclass(frozen=True, eq=False)
class ParahoricTypeSpec:
    """A parahoric type: sorted tuple of diagram vertex ids."""

    vertices: tuple

    def __init__(self, vertices):
        object.__setattr__(self, "vertices", tuple(sorted(set(vertices))))

    @classmethod
    def coerce(cls, t):
        return t if isinstance(t, cls) else cls(t)

    def __eq__(self, other):
        if isinstance(other, ParahoricTypeSpec):
            return self.vertices == other.vertices
        return NotImplemented

    def __hash__(self):
        return hash(self.vertices)

    def __len__(self):
        return len(self.vertices)

    def __iter__(self):
        return iter(self.vertices)

    def __repr__(self):
        return f"ParahoricTypeSpec({list(self.vertices)})"


IWAHORI = ParahoricTypeSpec(())


@dataclass(frozen=True, eq=False)
class LocalIndex:
    """Decorated local Dynkin diagram of the group at one place."""

    group: GroupSpec
    vertices: tuple
    edges: tuple
    marks: tuple
    hyperspecial: tuple
    realized_auts: tuple
    residual_source: str  # "computed" or "table"
    residual_table: dict | None = None

    @property
    def relative_rank(self):
        return len(self.vertices) - 1

    def is_proper(self, t):
        t = ParahoricTypeSpec.coerce(t)
        return set(t.vertices) < set(self.vertices)

    def check_proper(self, t):
        t = ParahoricTypeSpec.coerce(t)
        if not set(t.vertices) <= set(self.vertices):
            raise ImproperTypeError(f"improper type: unknown vertices in {t!r}")
        if len(t) == len(self.vertices):
            raise ImproperTypeError("improper type: must omit at least one vertex")
        return t

    def apply(self, perm, t):
        return ParahoricTypeSpec(perm[v] for v in ParahoricTypeSpec.coerce(t))

    def orbit(self, t):
        t = self.check_proper(t)
        return sorted({self.apply(g, t).vertices for g in self.realized_auts})

    def proper_types(self):
        """All proper types in lexicographic vertex-tuple order."""
        n = len(self.vertices)
        out = []
        for mask in range(2 ** n - 1):
            out.append(ParahoricTypeSpec(v for v in self.vertices if mask >> v & 1))
        return sorted(out, key=lambda t: t.vertices)

    def default_type(self):
        """Hyperspecial vertex {0} if split, else smallest maximal type."""
        if self.residual_source == "computed":
            return ParahoricTypeSpec((0,))
        maximal = [t for t in self.proper_types() if len(t) == len(self.vertices) - 1]
        return min(maximal, key=lambda t: t.vertices)

    def edge_map(self):
        return {(e.u, e.v): e for e in self.edges}

    def to_json(self):
        return {
            "vertices": [
                {"id": v, "mark": self.marks[v], "hyperspecial": self.hyperspecial[v]}
                for v in self.vertices
            ],
            "edges": [
                {"u": e.u, "v": e.v, "mult": e.mult, "arrow": e.arrow}
                for e in self.edges
            ],
            "realized_aut_order": len(self.realized_auts),
        }

    def to_dot(self):
        lines = [f'graph "{self.group.label}" {{']
        for v in self.vertices:
            shape = "doublecircle" if self.hyperspecial[v] else "circle"
            lines.append(f'  {v} [label="{v} ({self.marks[v]})", shape={shape}];')
        for e in self.edges:
            attrs = [f'label="{e.mult}"'] if e.mult > 1 else []
            if e.arrow is not None:
                head = "normal" if e.arrow == e.v else "none"
                tail = "normal" if e.arrow == e.u else "none"
                attrs += [f"arrowhead={head}", f"arrowtail={tail}", "dir=both"]
            lines.append(f"  {e.u} -- {e.v}" + (f" [{', '.join(attrs)}]" if attrs else "") + ";")
        lines.append("}")
        return "\n".join(lines)


def _edge(u, v, auv, avu):
    """Build a decorated edge from the two Cartan pairings (u against v-coroot)."""
    mult = auv * avu
    if abs(auv) > abs(avu):
        arrow = v  # pairing against v's coroot is large, so v is short
    elif abs(avu) > abs(auv):
        arrow = u
    else:
        arrow = None
    if u > v:
        u, v = v, u
    return Edge(u, v, mult, arrow)


def _split_affine_data(family, rank):
    """Vertices, decorated edges and marks of the split affine diagram."""
    A = roots.cartan_matrix(family, rank)
    theta = roots.highest_root(family, rank)
    n = rank
    edges = []
    for i in range(n):
        for j in range(i + 1, n):
            if A[i][j] != 0:
                edges.append(_edge(i + 1, j + 1, A[i][j], A[j][i]))
    theta_norm = roots.bilinear(theta, theta, family, rank)
    for j in range(n):
        a0j = -sum(theta[i] * A[i][j] for i in range(n))
        if a0j == 0:
            continue
        alpha_j = tuple(1 if i == j else 0 for i in range(n))
        aj0 = Fraction(-2 * roots.bilinear(alpha_j, theta, family, rank), theta_norm)
        assert aj0.denominator == 1
        edges.append(_edge(0, j + 1, a0j, int(aj0)))
    marks = (1,) + theta
    return tuple(range(n + 1)), tuple(sorted(edges)), marks


def _vertex_invariants(vertices, edges, marks, hyperspecial):
    """Per-vertex class key: decorations plus incident edge shapes."""
    incident = {v: [] for v in vertices}
    for e in edges:
        role_u = 0 if e.arrow is None else (1 if e.arrow == e.u else 2)
        role_v = 0 if e.arrow is None else (1 if e.arrow == e.v else 2)
        incident[e.u].append((e.mult, role_u))
        incident[e.v].append((e.mult, role_v))
    return {
        v: (marks[v], hyperspecial[v], tuple(sorted(incident[v])))
        for v in vertices
    }


def _edge_role(x, e):
    return 0 if e.arrow is None else (1 if e.arrow == x else 2)


def _graph_automorphisms(vertices, edges, marks, hyperspecial):
    """All permutations preserving edges with decorations, marks and flags."""
    n = len(vertices)
    inv = _vertex_invariants(vertices, edges, marks, hyperspecial)
    candidates = {v: [w for w in vertices if inv[w] == inv[v]] for v in vertices}
    emap = {(e.u, e.v): e for e in edges}
    adj = {v: [] for v in vertices}
    for e in edges:
        adj[e.u].append((e.v, e.mult, _edge_role(e.u, e)))
        adj[e.v].append((e.u, e.mult, _edge_role(e.v, e)))
    order = sorted(vertices, key=lambda v: (len(candidates[v]), v))
    sigma = {}
    used = set()
    found = []

    def extend(k):
        if k == n:
            found.append(tuple(sigma[v] for v in vertices))
            return
        v = order[k]
        for w in candidates[v]:
            if w in used:
                continue
            ok = True
            for u, mult, role in adj[v]:
                if u not in sigma:
                    continue
                a, b = w, sigma[u]
                e = emap.get((a, b) if a < b else (b, a))
                if e is None or e.mult != mult or _edge_role(w, e) != role:
                    ok = False
                    break
            if ok:
                sigma[v] = w
                used.add(w)
                extend(k + 1)
                used.discard(w)
                del sigma[v]

    extend(0)
    return tuple(sorted(found))


def build_local_index(spec):
    """Construct the decorated affine diagram with its realized automorphisms."""
    if isinstance(spec, str):
        spec = GroupSpec.parse(spec)
    if spec.form == "split":
        vertices, edges, marks = _split_affine_data(spec.family, spec.rank)
        hyper = tuple(m == 1 for m in marks)
        if spec.family == "A":
            # adjoint action realizes exactly the rotations of the cycle
            n1 = spec.rank + 1
            auts = tuple(sorted(tuple((i + k) % n1 for i in range(n1)) for k in range(n1)))
        else:
            auts = _graph_automorphisms(vertices, edges, marks, hyper)
        return LocalIndex(spec, vertices, edges, marks, hyper, auts, "computed")
    data = twisted.TWISTED_INDICES[spec.twisted_index]
    vertices = tuple(range(data["vertex_count"]))
    edges = tuple(Edge(*e) for e in data["edges"])
    marks = data["marks"]
    hyper = tuple(False for _ in vertices)
    auts = _graph_automorphisms(vertices, edges, marks, hyper)
    table = {
        key: (tuple(FiniteTypeLabel(*lbl) for lbl in comps), torus)
        for key, (comps, torus) in data["residues"].items()
    }
    auts = tuple(g for g in auts if _preserves_table(vertices, table, g))
    return LocalIndex(spec, vertices, edges, marks, hyper, auts, "table", table)


def _preserves_table(vertices, table, perm):
    for key, (comps, torus) in table.items():
        image = tuple(sorted(perm[v] for v in key))
        comps2, torus2 = table[image]
        if torus2 != torus or sorted(c.sort_key() for c in comps2) != sorted(
            c.sort_key() for c in comps
        ):
            return False
    return True


def realized_automorphisms(d):
    """The stored automorphism group, as vertex permutation tuples."""
    return d.realized_auts


def _classify_component(comp, edges):
    """Finite type label(s) of one connected decorated component."""
    k = len(comp)
    if k == 1:
        return canonical_labels("A", 1)
    deg = {v: 0 for v in comp}
    for e in edges:
        deg[e.u] += 1
        deg[e.v] += 1
    mults = sorted(e.mult for e in edges)
    if mults[-1] == 1:
        forks = [v for v in comp if deg[v] == 3]
        if not forks and max(deg.values()) <= 2:
            return canonical_labels("A", k)
        if len(forks) == 1 and max(deg.values()) == 3:
            arms = sorted(_arm_lengths(forks[0], comp, edges))
            if arms[0] == arms[1] == 1:
                return canonical_labels("D", k)
            if arms == [1, 2, 2] and k == 6:
                return canonical_labels("E", 6)
            if arms == [1, 2, 3] and k == 7:
                return canonical_labels("E", 7)
            if arms == [1, 2, 4] and k == 8:
                return canonical_labels("E", 8)
    elif mults == [3] and k == 2:
        return canonical_labels("G", 2)
    elif mults.count(2) == 1 and mults[-1] == 2 and max(deg.values()) <= 2:
        if k == 2:
            return canonical_labels("B", 2)
        double = next(e for e in edges if e.mult == 2)
        leaves = [x for x in (double.u, double.v) if deg[x] == 1]
        if leaves:
            return canonical_labels("B" if double.arrow == leaves[0] else "C", k)
        if k == 4:
            return canonical_labels("F", 4)
    raise UnsupportedTypeError(f"unsupported type: unclassifiable component {sorted(comp)}")


def _arm_lengths(center, comp, edges):
    adj = {v: [] for v in comp}
    for e in edges:
        adj[e.u].append(e.v)
        adj[e.v].append(e.u)
    arms = []
    for start in adj[center]:
        length, prev, cur = 1, center, start
        while True:
            nxt = [w for w in adj[cur] if w != prev]
            if not nxt:
                break
            prev, cur = cur, nxt[0]
            length += 1
        arms.append(length)
    return arms


def induced_subdiagram(d, t):
    """Component labels of the decorated subgraph induced on the type."""
    t = d.check_proper(t)
    keep = set(t.vertices)
    edges = [e for e in d.edges if e.u in keep and e.v in keep]
    seen = set()
    labels = []
    for v in sorted(keep):
        if v in seen:
            continue
        comp = {v}
        stack = [v]
        while stack:
            x = stack.pop()
            for e in edges:
                for a, b in ((e.u, e.v), (e.v, e.u)):
                    if a == x and b not in comp:
                        comp.add(b)
                        stack.append(b)
        seen |= comp
        comp_edges = [e for e in edges if e.u in comp]
        labels.extend(_classify_component(comp, comp_edges))
    return tuple(sorted(labels, key=lambda lbl: lbl.sort_key()))
