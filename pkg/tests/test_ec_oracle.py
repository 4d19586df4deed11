import random

import pytest

from degen_atlas.ec_oracle import (
    curve_setup,
    evaluate_divisor,
    group_law,
    negate,
    pinned_curves,
    randomized_membership_test,
    sample_config,
    scalar_mul,
)
from degen_atlas.period_relations import (
    Divisor,
    RelationSystem,
    imposed_relations,
    relation_rows,
)
from degen_atlas.surface_pair import catalogue


@pytest.fixture(scope="module")
def curves():
    return pinned_curves()


@pytest.fixture(scope="module")
def models():
    return catalogue()


def test_curve_setup_small_orders():
    assert curve_setup(5, 0, 1).order == 6
    assert curve_setup(5, 1, 0).order == 4


def test_curve_setup_rejects_bad_input():
    with pytest.raises(ValueError, match="singular"):
        curve_setup(5, 0, 0)  # y^2 = x^3
    with pytest.raises(ValueError, match="prime"):
        curve_setup(15, 1, 1)


def test_pinned_fixture_is_consistent(curves):
    assert len(curves) == 3
    assert len({c.exponent for c in curves}) == 3
    # recount one curve from scratch
    fresh = curve_setup(curves[0].p, curves[0].a, curves[0].b)
    assert fresh.order == curves[0].order
    assert fresh.exponent == curves[0].exponent


def test_group_law_identities(curves):
    c = curves[0]
    g = c.generator
    assert group_law(c, g, None) == g
    assert group_law(c, None, None) is None
    assert scalar_mul(c, c.exponent, g) is None
    assert group_law(c, g, negate(c, g)) is None


def test_group_law_homomorphism(curves):
    c = curves[0]
    rng = random.Random(3)
    for _ in range(30):
        k1 = rng.randrange(c.exponent)
        k2 = rng.randrange(c.exponent)
        lhs = scalar_mul(c, k1 + k2, c.generator)
        rhs = group_law(
            c, scalar_mul(c, k1, c.generator), scalar_mul(c, k2, c.generator)
        )
        assert lhs == rhs


def test_group_law_associative_commutative(curves):
    c = curves[0]
    rng = random.Random(5)
    pts = [scalar_mul(c, rng.randrange(c.exponent), c.generator) for _ in range(60)]
    for _ in range(1000):
        p, q, r = rng.choice(pts), rng.choice(pts), rng.choice(pts)
        assert group_law(c, p, q) == group_law(c, q, p)
        assert group_law(c, group_law(c, p, q), r) == group_law(
            c, p, group_law(c, q, r)
        )


def test_sample_config_a15(models, curves):
    system = imposed_relations(models["A15"])
    c = curves[0]
    assignment = sample_config(system, c, seed=11)
    pts = assignment.points()
    target = Divisor.of({"q": 16, **{f"p{i}": -1 for i in range(1, 17)}})
    assert evaluate_divisor(c, target, pts) is None


def test_sample_config_empty_system(curves):
    system = RelationSystem(r_h=Divisor.of({}), r_xi=Divisor.of({}), aux=())
    assignment = sample_config(system, curves[0], seed=0)
    assert assignment.dlogs == ()


def test_sample_config_two_torsion(curves):
    even = next(c for c in curves if c.exponent % 2 == 0)
    system = RelationSystem(
        r_h=Divisor.of({"q": 2, "q'": -2}), r_xi=Divisor.of({}), aux=()
    )
    seen_nontrivial = False
    for seed in range(20):
        a = sample_config(system, even, seed=seed)
        k = (a.dlog("q") - a.dlog("q'")) % even.exponent
        assert 2 * k % even.exponent == 0
        seen_nontrivial |= k != 0
    assert seen_nontrivial  # the 2-torsion coset really is explored


def test_membership_supported_and_refuted(models, curves):
    system = imposed_relations(models["E8D9"])
    target = Divisor.of(
        {"q'": 21, "p'1": -3, **{f"p'{i}": -2 for i in range(2, 11)}}
    )
    for c in curves:
        verdict = randomized_membership_test(system, target, trials=100, curve=c)
        assert verdict.verdict == "SUPPORTED"
    perturbed = target + Divisor.of({"p'2": 1, "p'3": -1})
    verdict = randomized_membership_test(
        system, perturbed, trials=100, curve=curves[0]
    )
    assert verdict.verdict == "REFUTED"
    assert verdict.witness is not None
    # the witness genuinely violates the perturbed relation on the curve
    pts = verdict.witness.points()
    assert evaluate_divisor(curves[0], perturbed, pts) is not None
    for g in system.generators():
        assert evaluate_divisor(curves[0], g, pts) is None


def test_imposed_generator_always_supported(models, curves):
    system = imposed_relations(models["D12D5"])
    verdict = randomized_membership_test(
        system, system.r_h, trials=25, curve=curves[1]
    )
    assert verdict.verdict == "SUPPORTED"


def test_certificate_implies_supported(models, curves):
    # spot-check the implication formal certificate => numerical support
    from degen_atlas.period_relations import derive

    for row in relation_rows()[:4]:
        m = row.prepare()
        system = imposed_relations(m)
        res = derive(system, row.target())
        assert res.certified
        for c in curves:
            verdict = randomized_membership_test(
                system, row.target(), trials=40, curve=c, seed=1
            )
            assert verdict.verdict == "SUPPORTED"
