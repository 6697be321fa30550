import random
from math import gcd

import pytest

from qweyl.exactfield import order_of_unity
from qweyl.fieldmat import inverse, matmul
from qweyl.repbuild import (
    CyclicConstraint,
    DimensionMismatch,
    EmptyModule,
    FamilyParams,
    FlavorError,
    InconsistentParameters,
    OracleBudgetExceeded,
    Representation,
    SingularZError,
    ZeroParameterError,
    build_alt_case,
    build_cyclic,
    build_family,
    build_from_oracle,
    build_M1,
    build_M2,
    build_M3,
    build_M4,
    build_M5,
    build_M6,
    build_torsion_affine,
    central_values,
    expected_dim,
    sample_params,
    transport_theta,
)
from qweyl.repverify import burnside_dim, central_character, check_relations, is_isomorphic, z_typology
from qweyl.weylalg import AlgebraSpec, generator, z_element

S22M = AlgebraSpec("A2", 2, 2, elam=1)  # lambda = -1
S22 = AlgebraSpec("A2", 2, 2, elam=0)
S23 = AlgebraSpec("A2", 2, 3)
S33 = AlgebraSpec("A2", 3, 3, elam=1)
SPECS = [S22M, S22, S23, S33]
CLOSED = ["M1", "M2", "M3", "M4", "M5", "M6"]


def row(rep, label):
    return rep.basis_labels.index(label)


def rel_ok(rep):
    return all(check_relations(rep).values())


def test_m1_examples():
    K = S22.field
    a1, a2, g1, g2 = K(3), K(5), K(7), K(-3)
    rep = build_M1(S22, a1, a2, g1, g2)
    assert rep.dim == 4
    assert rep.basis_labels == ((0, 0), (0, 1), (1, 0), (1, 1))
    for b in (0, 1):
        i, j = row(rep, (1, b)), row(rep, (0, b))
        assert rep["x1"][i][j] == a1
        assert rep["y1"][i][j] == (g1 + 1) / 2
    assert rel_ok(rep)


@pytest.mark.parametrize("spec", SPECS, ids=lambda s: s.label())
@pytest.mark.parametrize("family", CLOSED)
def test_closed_families(spec, family):
    rng = random.Random(hash((family, spec.l1, spec.l2, spec.elam)) & 0xFFFF)
    fp = sample_params(spec, family, rng)
    rep = build_family(spec, fp)
    assert rep.dim == expected_dim(spec, family)
    assert rel_ok(rep)
    assert burnside_dim(rep) == rep.dim**2
    assert central_character(rep) == central_values(spec, FamilyParams(family, rep.params))
    typ = z_typology(rep)
    if family in ("M5", "M6"):
        assert typ == {"z1": "invertible", "z2": "zero"}
    else:
        assert typ == {"z1": "invertible", "z2": "invertible"}


def test_m2_examples():
    spec = S23
    K = spec.field
    q1 = spec.q1
    rep = build_M2(spec, K(2), K(3), K(5))
    z1 = rep.params["zeta1"]
    assert z1 == q1.inverse()
    assert rep.log["derived_scalars"]["zeta1"] == z1
    for a1, a2 in rep.basis_labels:
        i = row(rep, (a1, a2))
        if a1 == 0:
            assert not any(rep["x1"][i])
        else:
            assert rep["x1"][i][row(rep, (a1 - 1, a2))] == (q1 ** (1 - a1) * z1 - 1) / (q1 - 1)
    # w y1^a is nonzero for a < l1, even with eta1 = 0
    nil = build_M2(spec, 0, K(3), K(5))
    assert rel_ok(nil)
    w = (tuple(K(1) if i == 0 else K(0) for i in range(nil.dim)),)
    v = w
    for _ in range(spec.l1 - 1):
        v = matmul(v, nil["y1"])
        assert any(v[0])
    with pytest.raises(InconsistentParameters):
        build_M2(spec, K(2), K(3), K(5), zeta1=K(2))


def test_m3_m4_examples():
    K = S22.field
    m4 = build_M4(S22, K(3), K(5))
    w = row(m4, (0, 0))
    assert not any(m4["x1"][w]) and not any(m4["x2"][w])
    assert set(m4.basis_labels) == {(a1, a2) for a1 in range(2) for a2 in range(2)}
    assert central_character(m4)["x1^l1"] == 0
    assert rel_ok(m4)
    K = S23.field
    m3 = build_M3(S23, K(3), K(5), K(7))
    assert m3.dim == 6 and rel_ok(m3)
    assert m3.params["zeta2"] == K(7) / S23.q2


def test_m5_examples():
    spec = S23
    K = spec.field
    xi, gamma = K(3), K(5)
    rep = build_M5(spec, K(2), xi, gamma)
    q1, lam = spec.q1, spec.lam
    for r in range(spec.l1):
        assert rep["x2"][r][r] == (q1 * lam) ** r * xi
    assert z_typology(rep)["z2"] == "zero"
    assert rel_ok(rep)


def test_m6_forced_gamma_and_display():
    spec = S23
    K = spec.field
    q1, q2, lam = spec.q1, spec.q2, spec.lam
    rep = build_M6(spec, K(2), K(3))
    assert rep.log["derived_scalars"]["gamma"] == q1.inverse()
    assert rep["x1"][0] == (K(0), K(0))
    assert rep["x1"][1][0] == (q1**-1 - 1) / (q1 - 1)
    assert rel_ok(rep)
    # the printed display: y2 diagonal (q1 lam)^{-r} xi, x2 diagonal lam^r gamma / (xi (1 - q2))
    xi, g = K(3), q1.inverse()
    swapped = dict(rep.mats)
    swapped["y2"] = tuple(tuple((q1 * lam) ** -r * xi if r == c else K(0) for c in range(2)) for r in range(2))
    swapped["x2"] = tuple(tuple(lam**r * g / (xi * (1 - q2)) if r == c else K(0) for c in range(2)) for r in range(2))
    assert not rel_ok(rep.with_mats(swapped))
    with pytest.raises(InconsistentParameters):
        build_M6(spec, K(2), K(3), gamma=K(1))


def test_parameter_errors():
    K = S22.field
    with pytest.raises(ZeroParameterError, match="parameter must be nonzero: alpha1"):
        build_M1(S22, 0, 1, 3, 5)
    with pytest.raises(ZeroParameterError):
        build_M5(S22, 2, 0, 3)
    with pytest.raises(ZeroParameterError):
        build_M6(S22, 1, K(0))
    with pytest.raises(FlavorError):
        build_M1(S22.with_flavor("AltA2"), 1, 2, 3, 5)
    with pytest.raises(ValueError, match="missing"):
        build_family(S22, FamilyParams("M1", {"alpha1": K(1)}))
    with pytest.raises(ValueError, match="unknown"):
        build_family(S22, FamilyParams("M5", {"alpha": 1, "xi": 2, "gamma": 3, "beta": 4}))
    with pytest.raises(ValueError):
        FamilyParams("M7", {})


def test_one_dimensional_torsion_witness():
    K = S22.field
    t = K(3)
    one = lambda c: ((K(c),),)
    rep = Representation(S22, {"x1": one(t), "y1": one(1 / (2 * t)), "x2": one(0), "y2": one(0)}, ((0,),))
    assert rel_ok(rep)
    assert burnside_dim(rep) == 1
    g = {k: generator(S22, k) for k in ("x1", "y1", "x2", "y2")}
    cons = [
        CyclicConstraint.ann(z_element(S22, 1)),
        CyclicConstraint.ann(g["x2"]),
        CyclicConstraint.ann(g["y2"]),
        CyclicConstraint.eig(g["x1"], t),
    ]
    chi = {"x1^l1": t**2, "y1^l1": (1 / (2 * t)) ** 2, "x2^l": 0, "y2^l": 0}
    orc = build_cyclic(S22, cons, chi)
    assert orc.dim == 1 and is_isomorphic(rep, orc)


def test_cyclic_constraint_zero_eigen_is_annihilation():
    c = CyclicConstraint.eig(generator(S22, "x1"), 0)
    assert c.kind == "annihilates"


def test_cyclic_errors():
    K = S22.field
    g = generator(S22, "x1")
    chi = {"x1^l1": K(1), "y1^l1": K(1), "x2^l": K(1), "y2^l": K(1)}
    # x1 acting by 2 contradicts x1^2 = 1
    with pytest.raises(EmptyModule):
        build_cyclic(S22, [CyclicConstraint.eig(g, K(2))], chi)
    with pytest.raises(OracleBudgetExceeded):
        build_cyclic(S22, [], chi, budget=10)
    with pytest.raises(ValueError, match="missing"):
        build_cyclic(S22, [], {"x1^l1": 1})


@pytest.mark.parametrize("spec", SPECS, ids=lambda s: s.label())
@pytest.mark.parametrize("family", ["M1", "M2", "M5"])
def test_oracle_agrees_with_closed_form(spec, family):
    fp = sample_params(spec, family, random.Random(31))
    assert is_isomorphic(build_family(spec, fp), build_from_oracle(spec, fp))


def _ord(x):
    return order_of_unity(x)


@pytest.mark.parametrize("spec", SPECS, ids=lambda s: s.label())
def test_torsion_dimensions(spec):
    rng = random.Random(4)
    lcm = spec.l
    dims = {
        "TorsionCase1": lcm,
        "TorsionCase2": _ord(spec.q1 * spec.lam),
        "TorsionCase3": _ord(spec.lam),
        "TorsionCase4": 1,
    }
    for fam, d in dims.items():
        rep = build_family(spec, sample_params(spec, fam, rng))
        assert rep.dim == d == expected_dim(spec, fam)
        assert rel_ok(rep) and burnside_dim(rep) == d * d
        assert z_typology(rep)["z1"] == "zero"


def test_torsion_errors():
    K = S22.field
    with pytest.raises(ValueError):
        build_torsion_affine(S22, "sideways", {"t": K(1)})
    with pytest.raises(ZeroParameterError):
        build_torsion_affine(S22, "both", {"t": K(0)})
    with pytest.raises(FlavorError):
        build_torsion_affine(S22.with_flavor("AltA2"), "both", {"t": K(1)})
    with pytest.raises(ValueError):
        build_alt_case(S22.with_flavor("AltA2"), "sideways", {})
    with pytest.raises(FlavorError):
        build_alt_case(S22, "both-torsion", {"mu": K(1), "xi": K(1)})


@pytest.mark.parametrize("spec", SPECS, ids=lambda s: s.label())
def test_alt_cases(spec):
    alt = spec.with_flavor("AltA2")
    rng = random.Random(8)
    m = spec.ord_lambda() * spec.l2 // gcd(spec.ord_lambda(), spec.l2)
    dims = {"Alt51": spec.l1 * spec.l2, "Alt52": spec.l1, "Alt53": m, "Alt54": spec.ord_lambda()}
    for fam, d in dims.items():
        rep = build_family(alt, sample_params(alt, fam, rng))
        assert rep.dim == d == expected_dim(alt, fam)
        assert rel_ok(rep) and burnside_dim(rep) == d * d
    if spec.lam == 1:
        assert dims["Alt54"] == 1


@pytest.mark.parametrize("spec", SPECS, ids=lambda s: s.label())
def test_transport(spec):
    fp = sample_params(spec, "M1", random.Random(2))
    m1 = build_family(spec, fp)
    t = transport_theta(m1)
    assert t.spec.flavor == "AltA2" and t.dim == m1.dim
    assert t["y1"] == m1["y1"] and t["y2"] == m1["y2"] and t["x1"] == m1["x1"]
    assert matmul(m1.z_matrix(1), t["x2"]) == m1["x2"]
    assert rel_ok(t) and burnside_dim(t) == t.dim**2
    assert central_character(t) == central_values(spec.with_flavor("AltA2"), FamilyParams("Alt51", fp.scalars))
    inverse(t.z_matrix(1))


def test_transport_rejects_torsion():
    m5 = build_M5(S22, 2, 3, 5)
    with pytest.raises(SingularZError):
        transport_theta(m5)
    tor = build_family(S22, sample_params(S22, "TorsionCase4", random.Random(1)))
    with pytest.raises(SingularZError):
        transport_theta(tor)
    with pytest.raises(FlavorError):
        transport_theta(transport_theta(build_M1(S22, 2, 3, 5, 7)))


def test_rebase_errors():
    fp = sample_params(S22, "M4", random.Random(1))
    cons_rep = build_from_oracle(S22, fp)
    assert cons_rep.dim == 4
    from qweyl.repbuild import oracle_setup

    cons, chi = oracle_setup(S22, fp)
    with pytest.raises(DimensionMismatch):
        build_cyclic(S22, cons, chi, basis_words=[()])
    with pytest.raises(DimensionMismatch):
        build_cyclic(S22, cons, chi, basis_words=[(), (), (), ()])


def test_json_round_trip():
    for rep in (build_M2(S23, 2, 3, 5), build_M6(S22M, 0, 3)):
        back = Representation.from_json(rep.to_json())
        assert back == rep
