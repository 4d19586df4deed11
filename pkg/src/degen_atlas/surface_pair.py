"""The combined Picard lattice of a two-component Tyurin central fiber.

A model is a pair of rational surfaces V0, V1 (each a blowup of P2 or of
P1xP1) glued along an elliptic curve.  Its lattice is H2(V0) + H2(V1) with
the standard diagonal/hyperbolic intersection form; every basis class
carries a component tag.  Flopping an exceptional curve toggles its tag and
acts on tracked classes by the reflection in that (-1)-class.

The nine catalogue entries carry the polarization h (h^2 = 4) and have
xi = (-E0, E1) recomputed from the tags, where Ei is the class of the
double curve on component i.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, replace
from typing import Iterable, Mapping, Optional, Sequence

from .exact_lattice import GramForm, Vector, add_vec, mat, scale_vec

P2 = "P2"
P1XP1 = "P1xP1"

# (-K)^2 of the unblown base; a model's invariant is d = n0 - k0.
BASE_DEGREE = {P2: 9, P1XP1: 8}


def _base_names(base: str, primed: bool) -> list[str]:
    tick = "'" if primed else ""
    if base == P2:
        return [f"l{tick}"]
    if base == P1XP1:
        return [f"s{tick}", f"f{tick}"]
    raise ValueError(f"unknown base kind {base!r}; expected P2 or P1xP1")


def _exc_names(count: int, primed: bool) -> list[str]:
    tick = "'" if primed else ""
    return [f"e{tick}{i}" for i in range(1, count + 1)]


def is_exceptional(name: str) -> bool:
    return name.startswith("e")


def home_component(name: str) -> int:
    """Component a basis class originally belongs to (primed = V1)."""
    return 1 if "'" in name else 0


@dataclass(frozen=True)
class PairLattice:
    base0: str
    base1: str
    names: tuple[str, ...]
    gram_form: GramForm

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise KeyError(f"unknown basis class {name!r}; alphabet: {', '.join(self.names)}")

    @property
    def rank(self) -> int:
        return len(self.names)


def make_pair_lattice(base0: str, n0: int, base1: str, n1: int) -> PairLattice:
    names = _base_names(base0, False) + _exc_names(n0, False)
    names += _base_names(base1, True) + _exc_names(n1, True)
    dim = len(names)
    g = [[0] * dim for _ in range(dim)]
    for i, a in enumerate(names):
        for j, b in enumerate(names):
            if home_component(a) != home_component(b):
                continue
            if is_exceptional(a):
                g[i][j] = -1 if a == b else 0
            elif a.startswith("l"):
                g[i][j] = 1 if a == b else 0
            else:  # rulings: s.f = 1, s^2 = f^2 = 0
                g[i][j] = 0 if a == b else (1 if not is_exceptional(b) else 0)
    return PairLattice(base0, base1, tuple(names), GramForm(mat(g)))


@dataclass(frozen=True)
class CurveEntry:
    name: str
    cls: Vector
    kind: str  # "floppable" | "moving"


@dataclass(frozen=True)
class SurfaceModel:
    id: str
    lattice: PairLattice
    tags: tuple[int, ...]
    h: Vector
    fiber_classes: tuple[tuple[str, Vector], ...] = ()
    flop_history: tuple[str, ...] = ()
    annotation: Optional[str] = None
    custom_dictionary: Optional[Mapping[str, Mapping[str, int]]] = None

    def __post_init__(self) -> None:
        assert len(self.tags) == self.lattice.rank
        for i, name in enumerate(self.lattice.names):
            if not is_exceptional(name):
                assert self.tags[i] == home_component(name), "base classes never move"

    @property
    def xi(self) -> Vector:
        """(-E0, E1) recomputed from the current tags."""
        e0 = self.double_curve_class(0)
        e1 = self.double_curve_class(1)
        return add_vec(scale_vec(-1, e0), e1)

    def double_curve_class(self, comp: int) -> Vector:
        """Anticanonical class of component comp under the current tags."""
        terms: dict[str, int] = {}
        base = self.lattice.base0 if comp == 0 else self.lattice.base1
        for name in _base_names(base, comp == 1):
            terms[name] = 3 if base == P2 else 2
        for i, name in enumerate(self.lattice.names):
            if is_exceptional(name) and self.tags[i] == comp:
                terms[name] = -1
        return class_vector(self.lattice, terms)

    def component_part(self, v: Vector, comp: int) -> Vector:
        return tuple(
            x if self.tags[i] == comp else 0 for i, x in enumerate(v)
        )

    def exceptionals_on(self, comp: int) -> tuple[str, ...]:
        return tuple(
            name
            for i, name in enumerate(self.lattice.names)
            if is_exceptional(name) and self.tags[i] == comp
        )

    @property
    def d(self) -> int:
        return len(self.exceptionals_on(0)) - BASE_DEGREE[self.lattice.base0]


def class_vector(lattice: PairLattice, terms: Mapping[str, int]) -> Vector:
    v = [0] * lattice.rank
    for name, coeff in terms.items():
        v[lattice.index(name)] = coeff
    return tuple(v)


def class_terms(lattice: PairLattice, v: Vector) -> dict[str, int]:
    return {n: c for n, c in zip(lattice.names, v) if c}


def intersect(m: SurfaceModel, a: Vector, b: Vector) -> int:
    return m.lattice.gram_form.pairing(a, b)


def _sum_terms(names: Iterable[str], coeff: int) -> dict[str, int]:
    return {n: coeff for n in names}


_CATALOGUE_TABLE = {
    # id: (base0, n0, base1, n1, h terms, fiber class names, annotation)
    "A15": (
        P1XP1, 16, P1XP1, 0,
        {"s": 1, "f": 1, "s'": 1, "f'": 1},
        (),
        "two quadrics intersecting transversally",
    ),
    "A11E6": (
        P2, 12, P2, 6,
        {"l": 1, "l'": 3, **_sum_terms(_exc_names(6, True), -1)},
        (),
        "a plane intersecting a cubic surface",
    ),
    "D12D5": (
        P2, 13, P2, 5,
        {"l": 2, "e1": -2, "l'": 3, **_sum_terms(_exc_names(5, True), -1)},
        ({"l": 1, "e1": -1},),
        None,
    ),
    "D8D8": (
        P2, 9, P2, 9,
        {"l": 1, "e1": -1, "l'": 4, "e'1": -2,
         **_sum_terms([f"e'{i}" for i in range(2, 10)], -1)},
        ({"l": 1, "e1": -1}, {"l'": 1, "e'1": -1}),
        None,
    ),
    "D16": (
        P2, 17, P1XP1, 0,
        {"l": 3, "e1": -3, "s'": 1, "f'": 2},
        ({"l": 1, "e1": -1},),
        None,
    ),
    "D17": (
        P2, 18, P2, 0,
        {"l": 3, "e1": -3, "l'": 2},
        ({"l": 1, "e1": -1},),
        None,
    ),
    "E8D9": (
        P2, 8, P2, 10,
        {"l'": 7, "e'1": -3, **_sum_terms([f"e'{i}" for i in range(2, 11)], -2)},
        ({"l'": 1, "e'1": -1},),
        None,
    ),
    "E7E7A3": (
        P2, 7, P2, 11,
        {"l'": 6, **_sum_terms([f"e'{i}" for i in range(1, 8)], -2),
         **_sum_terms([f"e'{i}" for i in range(8, 12)], -1)},
        (),
        None,
    ),
    "E8E8": (
        P2, 8, P2, 10,
        {"l'": 9, **_sum_terms([f"e'{i}" for i in range(1, 9)], -3),
         "e'9": -2, "e'10": -1},
        (),
        None,
    ),
}

CATALOGUE_IDS = tuple(_CATALOGUE_TABLE)


def catalogue_ids() -> tuple[str, ...]:
    return CATALOGUE_IDS


def _make_model(model_id: str) -> SurfaceModel:
    base0, n0, base1, n1, h_terms, fiber_terms, annotation = _CATALOGUE_TABLE[model_id]
    lat = make_pair_lattice(base0, n0, base1, n1)
    tags = tuple(home_component(n) for n in lat.names)
    h = class_vector(lat, h_terms)
    fibers = tuple(
        (format_class(lat, class_vector(lat, t)), class_vector(lat, t))
        for t in fiber_terms
    )
    model = SurfaceModel(
        id=model_id, lattice=lat, tags=tags, h=h,
        fiber_classes=fibers, annotation=annotation,
    )
    check_model_invariants(model)
    return model


def catalogue() -> dict[str, SurfaceModel]:
    """The nine standard models, keyed by their root-lattice id."""
    return {mid: _make_model(mid) for mid in CATALOGUE_IDS}


def catalogue_model(model_id: str) -> SurfaceModel:
    if model_id not in _CATALOGUE_TABLE:
        raise KeyError(
            f"unknown model {model_id!r}; known: {', '.join(CATALOGUE_IDS)}"
        )
    return _make_model(model_id)


def check_model_invariants(m: SurfaceModel) -> None:
    """h^2 = 4, h.xi = 0, xi^2 = 0 and E0^2 + E1^2 = 0."""
    xi = m.xi
    assert intersect(m, m.h, m.h) == 4, "polarization must have square 4"
    assert intersect(m, m.h, xi) == 0, "polarization must be numerically Cartier"
    assert intersect(m, xi, xi) == 0, "double curve class must be isotropic"
    e0, e1 = m.double_curve_class(0), m.double_curve_class(1)
    assert intersect(m, e0, e0) + intersect(m, e1, e1) == 0, "triple-point formula"


def build_model(
    base0: str,
    base1: str,
    n: int,
    h: Optional[Vector] = None,
    h_terms: Optional[Mapping[str, int]] = None,
    dictionary: Optional[Mapping[str, Mapping[str, int]]] = None,
) -> SurfaceModel:
    """Blow up n double-curve points on V0 and k - n on V1.

    k = k0 + k1 with ki = (-K)^2 of the base; the d-semistability shadow
    E0^2 + E1^2 = 0 holds automatically.  A supplied polarization must have
    h^2 = 4 and h.xi = 0.
    """
    k0, k1 = BASE_DEGREE[base0], BASE_DEGREE[base1]
    k = k0 + k1
    if not 0 <= n <= k:
        raise ValueError(f"point count n={n} out of range 0..{k}")
    lat = make_pair_lattice(base0, n, base1, k - n)
    tags = tuple(home_component(nm) for nm in lat.names)
    if h_terms is not None:
        h = class_vector(lat, h_terms)
    model = SurfaceModel(
        id="CUSTOM", lattice=lat, tags=tags,
        h=h if h is not None else (0,) * lat.rank,
        custom_dictionary=dictionary,
    )
    xi = model.xi
    assert intersect(model, xi, xi) == 0
    e0 = model.double_curve_class(0)
    assert intersect(model, e0, e0) == -(n - k0)
    if h is not None:
        if intersect(model, h, h) != 4:
            raise ValueError("h.h must be 4")
        if intersect(model, h, xi) != 0:
            raise ValueError("h.xi must be 0 (numerically Cartier)")
    return model


def reflect(m: SurfaceModel, e: Vector, c: Vector) -> Vector:
    """Reflection of c in the (-1)-class e: c - 2 (c.e)/(e.e) e."""
    ee = intersect(m, e, e)
    ce = intersect(m, c, e)
    num = 2 * ce
    assert num % ee == 0
    return add_vec(c, scale_vec(-(num // ee), e))


def flop(m: SurfaceModel, name: str) -> SurfaceModel:
    """Move the exceptional curve `name` to the other component.

    Tracked classes transport by the reflection in the (-1)-class, which for
    a basis exceptional just negates that coordinate; xi recomputed from the
    new tags must (and does) agree with the transported xi.
    """
    idx = m.lattice.index(name)
    if not is_exceptional(name):
        raise ValueError(f"{name} is not an exceptional class; only exceptionals flop")
    e = tuple(1 if i == idx else 0 for i in range(m.lattice.rank))
    tag = m.tags[idx]
    e_comp = m.double_curve_class(tag)
    assert intersect(m, e, e) == -1
    assert intersect(m, e, e_comp) == 1, "exceptional must meet the double curve once"
    xi_before = m.xi
    new_tags = tuple(
        (1 - t) if i == idx else t for i, t in enumerate(m.tags)
    )
    new_h = reflect(m, e, m.h)
    out = replace(
        m, tags=new_tags, h=new_h, flop_history=m.flop_history + (name,)
    )
    assert out.xi == reflect(m, e, xi_before), "tag-recomputed xi must match transport"
    check_model_invariants(out)
    return out


def flop_all(m: SurfaceModel, names: Sequence[str]) -> SurfaceModel:
    for n in names:
        m = flop(m, n)
    return m


def swap_components(m: SurfaceModel) -> SurfaceModel:
    """Exchange the roles of V0 and V1.

    The lattice is rebuilt with primed and unprimed names exchanged, so the
    swapped model again satisfies the convention that unprimed classes live
    on V0.  xi and the period morphism change sign; every derived result
    (roots, relation spans, fans) is invariant.
    """

    def swap_name(n: str) -> str:
        if "'" in n:
            return n.replace("'", "")
        head = n.rstrip("0123456789")
        return head + "'" + n[len(head):]

    new_names = tuple(swap_name(n) for n in m.lattice.names)
    lat2 = make_pair_lattice(
        m.lattice.base1,
        sum(1 for n in new_names if is_exceptional(n) and "'" not in n),
        m.lattice.base0,
        sum(1 for n in new_names if is_exceptional(n) and "'" in n),
    )
    # Reorder coordinates into the fresh lattice's name order.
    perm = [new_names.index(n) for n in lat2.names]

    def reorder(v: Vector) -> Vector:
        return tuple(v[perm[i]] for i in range(len(perm)))

    tags = tuple(1 - m.tags[perm[i]] for i in range(len(perm)))
    out = SurfaceModel(
        id=m.id, lattice=lat2, tags=tags, h=reorder(m.h),
        fiber_classes=tuple(
            (format_class(lat2, reorder(v)), reorder(v)) for _, v in m.fiber_classes
        ),
        flop_history=m.flop_history,
        annotation=m.annotation,
        custom_dictionary=m.custom_dictionary,
    )
    check_model_invariants(out)
    return out


def curve_catalogue(m: SurfaceModel) -> tuple[CurveEntry, ...]:
    """The finite curve whitelist for the current tagging.

    Floppable: every exceptional basis class, plus the two-point lines
    l - e_i - e_j on P2-type components carrying at least two exceptionals.
    Moving: l (P2) and the two rulings (P1xP1) of each component, plus the
    declared fiber classes of the Hirzebruch-cover models.  For CUSTOM
    models this list is only complete relative to the catalogue.
    """
    lat = m.lattice
    entries: list[CurveEntry] = []
    for i, name in enumerate(lat.names):
        if is_exceptional(name):
            cls = tuple(1 if j == i else 0 for j in range(lat.rank))
            entries.append(CurveEntry(name, cls, "floppable"))
    for comp in (0, 1):
        base = lat.base0 if comp == 0 else lat.base1
        primed = comp == 1
        if base == P2:
            lname = "l'" if primed else "l"
            lvec = class_vector(lat, {lname: 1})
            entries.append(CurveEntry(lname, lvec, "moving"))
            exc = m.exceptionals_on(comp)
            for a in range(len(exc)):
                for b in range(a + 1, len(exc)):
                    terms = {lname: 1, exc[a]: -1, exc[b]: -1}
                    cls = class_vector(lat, terms)
                    entries.append(
                        CurveEntry(f"{lname}-{exc[a]}-{exc[b]}", cls, "floppable")
                    )
        else:
            for rn in _base_names(P1XP1, primed):
                entries.append(
                    CurveEntry(rn, class_vector(lat, {rn: 1}), "moving")
                )
    for fname, fvec in m.fiber_classes:
        support = [i for i, x in enumerate(fvec) if x]
        comps = {m.tags[i] for i in support}
        if len(comps) == 1:  # still a curve class on a single component
            entries.append(CurveEntry(fname, fvec, "moving"))
    return tuple(entries)


@dataclass(frozen=True)
class NefReport:
    is_nonnegative: bool
    zero: tuple[CurveEntry, ...]
    negative: tuple[CurveEntry, ...]


def nef_report(m: SurfaceModel, c: Vector) -> NefReport:
    zero = []
    negative = []
    for entry in curve_catalogue(m):
        val = intersect(m, c, entry.cls)
        if val == 0:
            zero.append(entry)
        elif val < 0:
            negative.append(entry)
    return NefReport(not negative, tuple(zero), tuple(negative))


def surface_name(m: SurfaceModel, comp: int) -> str:
    base = m.lattice.base0 if comp == 0 else m.lattice.base1
    k = len(m.exceptionals_on(comp))
    if k == 0:
        return base
    name = f"Bl{k}P2" if base == P2 else f"Bl{k}(P1xP1)"
    if base == P2 and k <= 8:
        name += f" (dP{9 - k})"
    return name


def export_model(m: SurfaceModel) -> dict:
    """JSON-ready description: basis names, tags, gram, h, xi."""
    return {
        "id": m.id,
        "bases": [m.lattice.base0, m.lattice.base1],
        "basis": [
            {"name": n, "component": t} for n, t in zip(m.lattice.names, m.tags)
        ],
        "gram": [list(row) for row in m.lattice.gram_form.gram],
        "h": list(m.h),
        "xi": list(m.xi),
        "d": m.d,
        "surfaces": [surface_name(m, 0), surface_name(m, 1)],
        "flops": list(m.flop_history),
    }


_TERM_RE = re.compile(r"([+-]?)\s*(\d*)\s*(e'\d+|e\d+|l'|l|s'|s|f'|f)")


def parse_class(lattice: PairLattice, text: str) -> Vector:
    """Parse basis-name syntax like '3l-e1-e2' or "2e'3+f'".

    Rejects symbols outside the lattice's alphabet.
    """
    stripped = text.replace(" ", "")
    pos = 0
    terms: dict[str, int] = {}
    while pos < len(stripped):
        match = _TERM_RE.match(stripped, pos)
        if not match:
            raise ValueError(
                f"cannot parse {text!r} at {stripped[pos:]!r}; "
                f"alphabet: {', '.join(lattice.names)}"
            )
        sign, digits, name = match.groups()
        if name not in lattice.names:
            raise ValueError(
                f"unknown class {name!r} for this model; "
                f"alphabet: {', '.join(lattice.names)}"
            )
        coeff = int(digits) if digits else 1
        if sign == "-":
            coeff = -coeff
        terms[name] = terms.get(name, 0) + coeff
        pos = match.end()
    return class_vector(lattice, terms)


def format_class(lattice: PairLattice, v: Vector) -> str:
    parts = []
    for name, coeff in zip(lattice.names, v):
        if coeff == 0:
            continue
        sign = "-" if coeff < 0 else ("+" if parts else "")
        mag = abs(coeff)
        parts.append(f"{sign}{'' if mag == 1 else mag}{name}")
    return "".join(parts) if parts else "0"
