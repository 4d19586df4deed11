"""Wall-and-chamber decomposition of the effective lifted-polarization cone.

Lifted polarizations are the classes m*h + n*xi.  Starting from the nef ray
(1, 0) the walk moves epsilon in h + eps*xi (direction +1) and h - eps*xi
(direction -1), always in exact rational arithmetic.  At each event ray the
curves that are about to go negative decide what happens, with precedence

    component restriction trivial  >  a moving class hits zero  >  flop.

The first two end the walk (they are the cone's boundary rays: the stable
model there contracts a whole component, or the class stops being
effective); a pure set of floppable curves is an interior wall, the curves
are flopped, and the walk continues in the modified model.  Rays are
reported as primitive (m, n) pairs in the original (h, xi) coordinates;
since flops transport h and xi by isometries, the class at (m, n) keeps
self-intersection 4 m^2 in every chamber.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Optional

from .exact_lattice import Vector, add_vec, scale_vec
from .surface_pair import (
    CurveEntry,
    SurfaceModel,
    catalogue_model,
    curve_catalogue,
    flop,
    intersect,
    nef_report,
    surface_name,
)

MAX_WALK_STEPS = 64

#: Fan shape of each catalogue model: boundary rays, interior walls, chamber
#: count.  Rays are primitive (m, n) meaning m*h + n*xi.
EXPECTED_FANS = {
    "A15": {"boundary": [(2, 1), (2, -1)], "walls": [(1, 0)], "chambers": 2},
    "A11E6": {"boundary": [(3, 1), (1, -1)], "walls": [(1, 0)], "chambers": 2},
    "D12D5": {"boundary": [(1, 0), (1, -1)], "walls": [], "chambers": 1},
    "D8D8": {"boundary": [(1, 0), (1, -1)], "walls": [], "chambers": 1},
    "D16": {"boundary": [(1, 0), (2, -1)], "walls": [], "chambers": 1},
    "D17": {"boundary": [(1, 0), (3, -2)], "walls": [], "chambers": 1},
    "E8D9": {"boundary": [(1, 0), (1, -2)], "walls": [], "chambers": 1},
    "E7E7A3": {"boundary": [(1, 0), (1, -2)], "walls": [(1, -1)], "chambers": 2},
    "E8E8": {
        "boundary": [(1, 0), (1, -3)],
        "walls": [(1, -1), (1, -2)],
        "chambers": 3,
    },
}


def ray_of(eps: Fraction, direction: int) -> tuple[int, int]:
    """Primitive (m, n) along h + direction*eps*xi."""
    num, den = eps.numerator, eps.denominator
    if num == 0:
        return (1, 0)
    g = gcd(num, den)
    return (den // g, direction * (num // g))


def class_at(m: SurfaceModel, ray: tuple[int, int]) -> Vector:
    """m*h_cur + n*xi_cur in the model's current (transported) frame."""
    return add_vec(scale_vec(ray[0], m.h), scale_vec(ray[1], m.xi))


def next_wall(
    m: SurfaceModel, direction: int, start: Fraction = Fraction(0)
) -> Optional[tuple[Fraction, tuple[CurveEntry, ...]]]:
    """First epsilon >= start where h + direction*eps*xi meets a curve.

    Only curves whose pairing with xi decreases along the direction can stop
    the walk; the threshold of such a curve C is (h.C) / |xi.C|.  Returns
    the minimal threshold and every curve attaining it, or None when the
    direction is unobstructed (a data error for catalogue models, whose
    cones are strictly convex).
    """
    best: Optional[Fraction] = None
    hits: list[CurveEntry] = []
    for entry in curve_catalogue(m):
        slope = direction * intersect(m, m.xi, entry.cls)
        if slope >= 0:
            continue
        level = intersect(m, m.h, entry.cls)
        eps = Fraction(level, -slope)
        assert eps >= start, (
            f"curve {entry.name} already negative before eps={start} "
            f"(threshold {eps}); walk state is inconsistent"
        )
        if best is None or eps < best:
            best, hits = eps, [entry]
        elif eps == best:
            hits.append(entry)
    if best is None:
        return None
    return best, tuple(hits)


@dataclass(frozen=True)
class ComponentFate:
    verdict: str  # "birational" | "contracted_to_curve" | "contracted_to_point"
    restricted_square: int
    restricted_class: Vector
    contracted: tuple[str, ...]
    note: str = ""


@dataclass(frozen=True)
class StableModelDescription:
    ray: tuple[int, int]
    components: tuple[ComponentFate, ComponentFate]
    annotation: Optional[str] = None

    def as_json(self) -> dict:
        return {
            "ray": list(self.ray),
            "components": [
                {
                    "verdict": c.verdict,
                    "restricted_square": c.restricted_square,
                    "contracted": list(c.contracted),
                    **({"note": c.note} if c.note else {}),
                }
                for c in self.components
            ],
            **({"annotation": self.annotation} if self.annotation else {}),
        }


def stable_model_at(m: SurfaceModel, ray: tuple[int, int]) -> StableModelDescription:
    """Describe the stable model of the nef class at the given ray.

    Per component: birational when the restricted class has positive square
    (listing the curves it contracts), a map to a curve when the restriction
    is nonzero of square zero, a point when the restriction vanishes.
    """
    c = class_at(m, ray)
    report = nef_report(m, c)
    if report.negative:
        names = [e.name for e in report.negative]
        raise ValueError(f"class at ray {ray} is not nef: negative on {names}")
    fates = []
    for comp in (0, 1):
        restricted = m.component_part(c, comp)
        square = intersect(m, restricted, restricted)
        if all(x == 0 for x in restricted):
            fates.append(ComponentFate("contracted_to_point", 0, restricted, ()))
        elif square == 0:
            fates.append(
                ComponentFate(
                    "contracted_to_curve",
                    0,
                    restricted,
                    (),
                    note="restriction is nonzero of square zero",
                )
            )
        else:
            contracted = tuple(
                e.name
                for e in report.zero
                if any(x and m.tags[i] == comp for i, x in enumerate(e.cls))
            )
            fates.append(ComponentFate("birational", square, restricted, contracted))
    total = sum(f.restricted_square for f in fates)
    assert total == intersect(m, c, c) == 4 * ray[0] * ray[0]
    annotation = None
    if ray == (1, 0) and m.annotation:
        annotation = m.annotation
    return StableModelDescription(ray, (fates[0], fates[1]), annotation)


@dataclass(frozen=True)
class WallEvent:
    ray: tuple[int, int]
    kind: str  # "interior_flop" | "boundary_component_trivial" | "boundary_moving_class"
    zero_classes: tuple[str, ...]
    stable_model: StableModelDescription
    note: str = ""


@dataclass(frozen=True)
class Chamber:
    upper: tuple[int, int]
    lower: tuple[int, int]
    labels: tuple[str, str]
    flops: tuple[str, ...]  # flops applied to reach this chamber from (1, 0)


@dataclass(frozen=True)
class LiftFan:
    model_id: str
    boundary: tuple[tuple[int, int], tuple[int, int]]
    walls: tuple[tuple[int, int], ...]
    chambers: tuple[Chamber, ...]
    events: tuple[WallEvent, ...]

    def as_json(self) -> dict:
        return {
            "model": self.model_id,
            # the curve whitelist of a CUSTOM model is not guaranteed complete
            **({"caveat": "relative to catalogue"} if self.model_id == "CUSTOM" else {}),
            "chambers": len(self.chambers),
            "walls": [list(w) for w in self.walls],
            "boundary": [list(b) for b in self.boundary],
            "chamber_labels": [list(c.labels) for c in self.chambers],
            "chamber_flops": [list(c.flops) for c in self.chambers],
            "events": [
                {
                    "ray": list(e.ray),
                    "kind": e.kind,
                    "zero_classes": list(e.zero_classes),
                    "stable_model": e.stable_model.as_json(),
                    **({"note": e.note} if e.note else {}),
                }
                for e in self.events
            ],
        }


def _walk(model: SurfaceModel, direction: int):
    """Walk one direction; returns (events, states-after-each-interior-wall)."""
    m = model
    eps = Fraction(0)
    events: list[WallEvent] = []
    states: list[SurfaceModel] = []
    for _ in range(MAX_WALK_STEPS):
        hit = next_wall(m, direction, eps)
        if hit is None:
            raise ValueError(
                f"walk in direction {direction:+d} is unbounded for {model.id}; "
                "the curve catalogue must be missing an effective class"
            )
        eps, zero = hit
        ray = ray_of(eps, direction)
        cls = class_at(m, ray)
        trivial_comp = None
        for comp in (0, 1):
            if all(x == 0 for x in m.component_part(cls, comp)):
                trivial_comp = comp
        if trivial_comp is not None:
            events.append(
                WallEvent(
                    ray,
                    "boundary_component_trivial",
                    tuple(e.name for e in zero),
                    stable_model_at(m, ray),
                    note=f"V{trivial_comp} is contracted to a point",
                )
            )
            return events, states
        if any(e.kind == "moving" for e in zero):
            note = ""
            if m.id == "D16" and direction == -1:
                note = (
                    "restriction to V1 is the nonzero square-zero class 2f', "
                    "so V1 maps to a curve here"
                )
            events.append(
                WallEvent(
                    ray,
                    "boundary_moving_class",
                    tuple(e.name for e in zero),
                    stable_model_at(m, ray),
                    note=note,
                )
            )
            return events, states
        # pure floppable set: cross the interior wall
        event = WallEvent(
            ray,
            "interior_flop",
            tuple(e.name for e in zero),
            stable_model_at(m, ray),
        )
        events.append(event)
        for e in zero:
            flop_name = e.name
            assert flop_name in m.lattice.names, "interior walls flop basis classes"
            m = flop(m, flop_name)
        states.append(m)
    raise ValueError(f"walk exceeded {MAX_WALK_STEPS} steps for {model.id}")


def lift_fan(model: SurfaceModel) -> LiftFan:
    """Both walks from (1, 0), assembled top-down (from +xi to -xi side)."""
    plus_events, plus_states = _walk(model, +1)
    minus_events, minus_states = _walk(model, -1)
    assert plus_events[-1].kind != "interior_flop"
    assert minus_events[-1].kind != "interior_flop"

    boundary = (plus_events[-1].ray, minus_events[-1].ray)
    plus_walls = [e.ray for e in plus_events[:-1]]
    minus_walls = [e.ray for e in minus_events[:-1]]
    walls = tuple(reversed(plus_walls)) + tuple(minus_walls)

    def chamber(state: SurfaceModel, upper, lower) -> Chamber:
        return Chamber(
            upper=upper,
            lower=lower,
            labels=(surface_name(state, 0), surface_name(state, 1)),
            flops=state.flop_history[len(model.flop_history):],
        )

    chambers: list[Chamber] = []
    plus_rays = [boundary[0]] + list(reversed(plus_walls))
    for i, state in enumerate(reversed(plus_states)):
        chambers.append(chamber(state, plus_rays[i], plus_rays[i + 1]))
    minus_rays = [plus_rays[-1]] + minus_walls + [boundary[1]]
    chambers.append(chamber(model, minus_rays[0], minus_rays[1]))
    for i, state in enumerate(minus_states):
        chambers.append(chamber(state, minus_rays[i + 1], minus_rays[i + 2]))

    assert len(chambers) == len(walls) + 1
    return LiftFan(
        model_id=model.id,
        boundary=boundary,
        walls=walls,
        chambers=tuple(chambers),
        events=tuple(plus_events) + tuple(minus_events),
    )


def format_ray(ray: tuple[int, int]) -> str:
    m, n = ray
    if n == 0:
        return "h" if m == 1 else f"{m}h"
    mh = "h" if m == 1 else f"{m}h"
    sign = "+" if n > 0 else "-"
    mag = abs(n)
    nxi = "xi" if mag == 1 else f"{mag}xi"
    return f"{mh}{sign}{nxi}"


def fan_diagram(fan: LiftFan) -> str:
    """Plain-text picture of the fan, top (+xi side) to bottom."""
    by_ray = {e.ray: e for e in fan.events}
    lines = [f"Lift>=0 cone for {fan.model_id} (rays are m*h + n*xi):"]
    rays_top_down = [fan.boundary[0]] + list(fan.walls) + [fan.boundary[1]]
    for i, ray in enumerate(rays_top_down):
        event = by_ray.get(ray)
        if event is None:
            desc = ""
        elif event.kind == "interior_flop":
            desc = f"wall: flop {', '.join(event.zero_classes)}"
        elif event.kind == "boundary_component_trivial":
            desc = f"boundary: {event.note}"
        else:
            desc = f"boundary: {', '.join(event.zero_classes)} stop being positive"
        lines.append(f"  {format_ray(ray):10s} {desc}")
        if i < len(rays_top_down) - 1:
            c = fan.chambers[i]
            lines.append(f"      | chamber: {c.labels[0]} U {c.labels[1]}")
    return "\n".join(lines)


def verify_fans() -> dict:
    """Compute all nine fans and compare with the expected decomposition."""
    results = {}
    all_pass = True
    for mid, want in EXPECTED_FANS.items():
        fan = lift_fan(catalogue_model(mid))
        got = {
            "boundary": [tuple(b) for b in fan.boundary],
            "walls": [tuple(w) for w in fan.walls],
            "chambers": len(fan.chambers),
        }
        ok = (
            got["boundary"] == [tuple(b) for b in want["boundary"]]
            and got["walls"] == [tuple(w) for w in want["walls"]]
            and got["chambers"] == want["chambers"]
        )
        all_pass &= ok
        results[mid] = {
            "ok": ok,
            "boundary": [list(b) for b in fan.boundary],
            "walls": [list(w) for w in fan.walls],
            "chambers": len(fan.chambers),
            "chamber_labels": [list(c.labels) for c in fan.chambers],
        }
    return {"suite": "chamber fans", "pass": all_pass, "models": results}
