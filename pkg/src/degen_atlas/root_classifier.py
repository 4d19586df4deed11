"""Generalized root systems of the lattice L = h-perp in xi-perp / Z xi.

For each surface pair the rank-17 negative definite lattice L is computed
exactly, its generalized roots are enumerated (primitive v with v^2 < 0
whose reflection preserves L), and the span of the roots is classified as a
sum of ADE root lattices plus <-4> summands via simple roots and the Dynkin
graph.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Optional, Sequence

from .exact_lattice import (
    GramForm,
    Sublattice,
    Vector,
    content,
    enumerate_short,
    in_span,
    mat,
    matvec,
    orthogonal_complement,
    quotient_by_isotropic,
    row_span_basis,
    snf,
    solve_rational,
)
from .surface_pair import SurfaceModel, check_model_invariants

#: Expected generalized types of the nine catalogue models.
EXPECTED_TYPES = {
    "A15": (("A", 15), ("A", 1), ("A", 1)),
    "A11E6": (("A", 11), ("E", 6)),
    "D12D5": (("D", 12), ("D", 5)),
    "D8D8": (("D", 8), ("D", 8), ("<-4>", 1)),
    "D16": (("D", 16), ("<-4>", 1)),
    "D17": (("D", 17),),
    "E8D9": (("E", 8), ("D", 9)),
    "E7E7A3": (("E", 7), ("E", 7), ("A", 3)),
    "E8E8": (("E", 8), ("E", 8), ("<-4>", 1)),
}


@dataclass(frozen=True)
class ScriptL:
    """h-perp inside xi-perp / Z xi, with a lift back to the pair lattice."""

    gram: GramForm
    reps: tuple[Vector, ...]  # coset representatives in ambient coordinates

    @property
    def rank(self) -> int:
        return self.gram.dim

    def lift(self, v: Vector) -> Vector:
        acc = tuple(0 for _ in self.reps[0])
        for c, r in zip(v, self.reps):
            acc = tuple(a + c * x for a, x in zip(acc, r))
        return acc


def script_L(m: SurfaceModel) -> ScriptL:
    """Compute L for a model; checks rank = ambient - 3 and definiteness."""
    check_model_invariants(m)
    g = m.lattice.gram_form
    xi = m.xi
    perp = orthogonal_complement(g, [m.h, xi])
    sub = Sublattice(g, mat(perp))
    assert sub.rank == m.lattice.rank - 2
    quotient = quotient_by_isotropic(sub, xi)  # validates xi in S, isotropy
    out = ScriptL(gram=quotient.gram, reps=quotient.reps)
    assert out.rank == m.lattice.rank - 3
    if not out.gram.is_negative_definite():
        raise ValueError(
            f"induced form on L is not negative definite for model {m.id}; "
            "the lattice data is inconsistent"
        )
    return out


def discriminant_group_order(g: GramForm) -> int:
    d, _, _ = snf(g.gram)
    order = 1
    for i in range(g.dim):
        order *= d[i][i]
    return abs(order)


@dataclass(frozen=True)
class GeneralizedRootSet:
    roots2: tuple[Vector, ...]  # v^2 = -2 (one per antipodal pair)
    roots4: tuple[Vector, ...]  # v^2 = -4 with integral reflection
    other: tuple[Vector, ...]  # any v^2 in {-1, -3} with integral reflection
    gram: GramForm

    def all_roots(self) -> tuple[Vector, ...]:
        return self.roots2 + self.roots4 + self.other


def has_integral_reflection(g: GramForm, v: Vector) -> bool:
    """R_v(w) = w - 2(v,w)/(v,v) v maps the lattice into itself."""
    norm = g.norm(v)
    row = matvec(g.gram, v)
    return all((2 * x) % norm == 0 for x in row)


def generalized_roots(L: ScriptL, bound: int = 4) -> GeneralizedRootSet:
    """All generalized roots with -bound <= v^2 < 0, one per +-pair.

    v^2 = -2 vectors always reflect integrally; v^2 = -4 vectors qualify when
    all pairings with the lattice are even.  Norms -1 and -3 are collected in
    `other`; the nine catalogue lattices are even, so it stays empty there.
    """
    if bound < 2:
        raise ValueError("bound must be at least 2")
    roots2: list[Vector] = []
    roots4: list[Vector] = []
    other: list[Vector] = []
    for v in enumerate_short(L.gram, bound):
        if content(v) != 1:
            continue
        norm = L.gram.norm(v)
        if not has_integral_reflection(L.gram, v):
            continue
        if norm == -2:
            roots2.append(v)
        elif norm == -4:
            roots4.append(v)
        else:
            other.append(v)
    return GeneralizedRootSet(tuple(roots2), tuple(roots4), tuple(other), L.gram)


@dataclass(frozen=True)
class LatticeType:
    """Isomorphism type of Span(Phi): ADE components plus <-4> summands."""

    components: tuple[tuple[str, int], ...]  # e.g. (("E", 8), ("D", 9))
    minus4_count: int
    simple_roots: tuple[tuple[Vector, ...], ...]
    minus4_generators: tuple[Vector, ...]
    roots2_by_component: tuple[int, ...]

    @property
    def rank(self) -> int:
        return sum(r for _, r in self.components) + self.minus4_count

    def as_multiset(self) -> tuple[tuple[str, int], ...]:
        parts = sorted(self.components, key=lambda c: (-c[1], c[0]))
        parts += [("<-4>", 1)] * self.minus4_count
        return tuple(parts)


_LETTER_ORDER = {"E": 0, "D": 1, "A": 2}


def type_string(t: LatticeType) -> str:
    parts = [f"{letter}{rank}" for letter, rank in
             sorted(t.components, key=lambda c: (_LETTER_ORDER[c[0]], -c[1]))]
    parts += ["<-4>"] * t.minus4_count
    return "+".join(parts)


def classical_root_count(letter: str, rank: int) -> int:
    if letter == "A":
        return rank * (rank + 1)
    if letter == "D":
        return 2 * rank * (rank - 1)
    if letter == "E":
        return {6: 72, 7: 126, 8: 240}[rank]
    raise ValueError(letter)


class UnclassifiableError(ValueError):
    pass


def _classify_tree(gram: GramForm, nodes: Sequence[Vector]) -> tuple[str, int]:
    """Name the Dynkin diagram on `nodes` (edges where the pairing is nonzero)."""
    n = len(nodes)
    adj = {i: [] for i in range(n)}
    edges = 0
    for i in range(n):
        for j in range(i + 1, n):
            if gram.pairing(nodes[i], nodes[j]) != 0:
                adj[i].append(j)
                adj[j].append(i)
                edges += 1
    if edges != n - 1:
        raise UnclassifiableError("component graph is not a tree")
    degrees = sorted((len(adj[i]) for i in range(n)), reverse=True)
    if degrees and degrees[0] > 3:
        raise UnclassifiableError("node of degree > 3")
    branch = [i for i in range(n) if len(adj[i]) == 3]
    if not branch:
        return ("A", n)
    if len(branch) > 1:
        raise UnclassifiableError("more than one branch node")
    b = branch[0]
    arms = []
    for start in adj[b]:
        length = 1
        prev, cur = b, start
        while True:
            nxt = [x for x in adj[cur] if x != prev]
            if not nxt:
                break
            prev, cur = cur, nxt[0]
            length += 1
        arms.append(length)
    arms.sort()
    if arms[0] != 1:
        raise UnclassifiableError(f"arm profile {arms} is not simply laced ADE")
    if arms[1] == 1:
        return ("D", arms[2] + 3)
    if arms[1] == 2 and arms[2] in (2, 3, 4):
        return ("E", {2: 6, 3: 7, 4: 8}[arms[2]])
    raise UnclassifiableError(f"arm profile {arms} is not simply laced ADE")


def classify(roots: GeneralizedRootSet, seed: int = 0) -> LatticeType:
    """Classify Span(Phi) as ADE components plus orthogonal <-4> summands.

    A random linear functional separates the -2 roots into positives, simple
    roots are the positives that are not sums of two positives, and each
    Dynkin-graph component is named from its tree shape.  The <-4> part is
    certified by explicit generators orthogonal to the whole root span.
    """
    if not roots.all_roots():
        raise ValueError("empty root set")
    gram = roots.gram
    rng = random.Random(seed)
    dim = gram.dim

    positives: list[Vector] = []
    for _ in range(1000):
        functional = tuple(rng.randint(-10 ** 6, 10 ** 6) for _ in range(dim))
        values = [sum(f * x for f, x in zip(functional, v)) for v in roots.roots2]
        if all(val != 0 for val in values):
            positives = [
                v if val > 0 else tuple(-x for x in v)
                for v, val in zip(roots.roots2, values)
            ]
            break
    else:
        raise UnclassifiableError("could not separate roots with a functional")

    pos_set = set(positives)
    simples = [
        a
        for a in positives
        if not any(tuple(x - y for x, y in zip(a, b)) in pos_set for b in positives)
    ]

    # Split the simple roots into connected Dynkin components.
    unseen = set(range(len(simples)))
    comps: list[list[Vector]] = []
    while unseen:
        stack = [unseen.pop()]
        comp = [stack[0]]
        while stack:
            i = stack.pop()
            for j in list(unseen):
                if gram.pairing(simples[i], simples[j]) != 0:
                    unseen.remove(j)
                    stack.append(j)
                    comp.append(j)
        comps.append([simples[i] for i in sorted(comp)])

    named = []
    per_comp_counts = []
    for comp in comps:
        named.append(_classify_tree(gram, comp))
        # every -2 root in the rational span of this component belongs to it
        count = sum(
            2 for v in roots.roots2 if solve_rational([tuple(c) for c in comp], v)
        )
        per_comp_counts.append(count)

    # <-4> part: rank deficit of the -2 root span inside Span(Phi).
    all_span = row_span_basis(list(roots.all_roots()))
    r2_span = row_span_basis(simples)
    assert len(r2_span) == len(simples), "simple roots must be independent"
    deficit = len(all_span) - len(r2_span)
    minus4_gens: tuple[Vector, ...] = ()
    if deficit:
        perp4 = [
            v
            for v in roots.roots4
            if all(gram.pairing(v, s) == 0 for s in simples)
        ]
        basis = row_span_basis(perp4)
        if len(basis) != deficit:
            raise UnclassifiableError(
                "the <-4> part does not split off orthogonally"
            )
        for gen in basis:
            if gram.norm(gen) != -4:
                raise UnclassifiableError("orthogonal complement is not <-4>")
            for other_gen in basis:
                if other_gen != gen and gram.pairing(gen, other_gen) != 0:
                    raise UnclassifiableError("<-4> generators are not orthogonal")
        minus4_gens = basis
        # orthogonal decomposition: every root lies in the direct sum
        gens = list(simples) + list(basis)
        for v in roots.all_roots():
            if in_span(v, gens) is None:
                raise UnclassifiableError(
                    "Span(Phi) is a proper overlattice of roots + <-4>"
                )

    lt = LatticeType(
        components=tuple(named),
        minus4_count=deficit,
        simple_roots=tuple(tuple(c) for c in comps),
        minus4_generators=minus4_gens,
        roots2_by_component=tuple(per_comp_counts),
    )
    # cross-checks: simple-root counts are ranks; root counts are classical
    for (letter, rank_), comp, count in zip(named, comps, per_comp_counts):
        assert rank_ == len(comp)
        assert count == classical_root_count(letter, rank_), (
            f"{letter}{rank_}: found {count} roots, "
            f"expected {classical_root_count(letter, rank_)}"
        )
    assert sum(per_comp_counts) == 2 * len(roots.roots2)
    assert lt.rank == len(all_span)
    return lt


def model_type(m: SurfaceModel, bound: int = 4, seed: int = 0) -> tuple[LatticeType, GeneralizedRootSet]:
    roots = generalized_roots(script_L(m), bound)
    return classify(roots, seed), roots


def verify_classification(models: Optional[dict] = None, seed: int = 0) -> dict:
    """Classify all nine models and compare against the expected table.

    Returns a report dict with one entry per model: type, root counts, and
    whether any odd-norm generalized roots appeared (none are expected).
    """
    from .surface_pair import catalogue

    if models is None:
        models = catalogue()
    results = {}
    all_pass = True
    for mid, m in models.items():
        L = script_L(m)
        roots = generalized_roots(L, 4)
        t = classify(roots, seed)
        got = tuple(sorted(t.as_multiset()))
        want = tuple(sorted(EXPECTED_TYPES[mid]))
        ok = got == want and not roots.other
        all_pass &= ok
        results[mid] = {
            "type": type_string(t),
            "ok": ok,
            "rank": t.rank,
            "roots2_count": 2 * len(roots.roots2),
            "roots4_count": 2 * len(roots.roots4),
            "odd_norm_members": 2 * len(roots.other),
            "negative_definite": True,
            "discriminant_order": discriminant_group_order(L.gram),
        }
    return {"suite": "root-lattice classification", "pass": all_pass, "models": results}
