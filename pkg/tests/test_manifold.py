import pytest

from crjet import ManifoldSpec, load_manifold, load_map, parse_manifold_file
from crjet.errors import (
    BasePointViolation,
    FormatError,
    RealityViolation,
)
from crjet.exprs import parse_expr

SPHERE = """
# comment line
[manifold]
n = 1
d = 1
order = 8
phi1 = z1*zb1   # trailing comment
"""

CODIM2 = """
[manifold]
n = 1
d = 2
order = 8
phi1 = s1*z1*zb1
phi2 = s2*z1*zb1
gamma1 = 1,0
gamma2 = 0,1
"""

WITH_MAP = """
[manifold]
n = 1
d = 1
order = 8
phi1 = z1*zb1

[map]
rho1 = -1/2*i*Zp2 + 1/2*i*Zbp2 - Zp1*Zbp1
H1 = z1
H2 = s1 + i*z1*zb1
"""


def test_sphere_loads():
    spec, map_spec = parse_manifold_file(SPHERE)
    assert (spec.n, spec.d, spec.work_order) == (1, 1, 8)
    assert spec.phi[0] == parse_expr("z1*zb1", spec.sig, 8)
    assert map_spec is None


def test_codim2_loads_with_gamma():
    spec, _ = parse_manifold_file(CODIM2)
    assert spec.gamma == ((1, 0), (0, 1))
    assert spec.inner_phi(1) == parse_expr("z1*zb1", spec.sig, 8)


def test_map_section():
    spec, map_spec = parse_manifold_file(WITH_MAP)
    assert map_spec is not None
    assert map_spec.n_target == 2
    assert map_spec.d_target == 1
    assert map_spec.source_manifold is spec


def test_reality_violation():
    with pytest.raises(RealityViolation):
        ManifoldSpec.from_exprs(1, 1, 6, ["i*z1*zb1"])


def test_base_point_violations():
    with pytest.raises(BasePointViolation):
        ManifoldSpec.from_exprs(1, 1, 6, ["1 + z1*zb1"])
    with pytest.raises(BasePointViolation):
        ManifoldSpec.from_exprs(1, 1, 6, ["z1 + zb1"])


def test_missing_phi():
    text = "[manifold]\nn = 1\nd = 2\norder = 6\nphi1 = z1*zb1\n"
    with pytest.raises(FormatError):
        parse_manifold_file(text)


def test_duplicate_key():
    text = "[manifold]\nn = 1\nn = 2\nd = 1\norder = 6\nphi1 = z1*zb1\n"
    with pytest.raises(FormatError):
        parse_manifold_file(text)


def test_content_before_header():
    with pytest.raises(FormatError):
        parse_manifold_file("n = 1\n[manifold]\n")


def test_unknown_section():
    with pytest.raises(FormatError):
        parse_manifold_file(SPHERE + "\n[extras]\nfoo = 1\n")


def test_unknown_key():
    with pytest.raises(FormatError):
        parse_manifold_file(SPHERE + "bogus = 3\n")


def test_gamma_wrong_arity():
    text = "[manifold]\nn = 1\nd = 2\norder = 6\nphi1 = s1*z1*zb1\nphi2 = s2*z1*zb1\n" \
           "gamma1 = 1\ngamma2 = 0,1\n"
    with pytest.raises(FormatError):
        parse_manifold_file(text)


def test_gamma_divisibility_enforced():
    text = "[manifold]\nn = 1\nd = 1\norder = 6\nphi1 = z1*zb1\ngamma1 = 1\n"
    with pytest.raises(FormatError):
        parse_manifold_file(text)


def test_map_component_must_fix_base_point():
    text = WITH_MAP.replace("H1 = z1", "H1 = 1 + z1")
    with pytest.raises(BasePointViolation):
        parse_manifold_file(text)


def test_map_rho_must_be_real():
    text = WITH_MAP.replace("rho1 = -1/2*i*Zp2 + 1/2*i*Zbp2 - Zp1*Zbp1",
                            "rho1 = i*Zp1*Zbp1")
    with pytest.raises(RealityViolation):
        parse_manifold_file(text)


def test_load_missing_file():
    with pytest.raises(FormatError):
        load_manifold("/nonexistent/path.mf")


def test_load_map_requires_section(tmp_path):
    path = tmp_path / "plain.mf"
    path.write_text(SPHERE)
    with pytest.raises(FormatError):
        load_map(path)


def test_load_round_trip(tmp_path):
    path = tmp_path / "m.mf"
    path.write_text(WITH_MAP)
    spec = load_manifold(path)
    assert spec.source == str(path)
    map_spec = load_map(path)
    assert map_spec.components_text == ("z1", "s1 + i*z1*zb1")
