import pytest

from nsklab.config import config_from_overrides, parse_config
from nsklab.errors import ConfigError

MINIMAL_CONTACT = """
[thermo]
gamma = 1.1

[scenario]
kind = contact
t_final = 1.0
"""


def test_minimal_contact_config_uses_defaults():
    cfg = parse_config(MINIMAL_CONTACT)
    assert cfg.kind == "contact"
    assert cfg.thermo.gamma == 1.1
    assert cfg.ends.theta_plus == 1.05
    assert cfg.n_points == 2000
    assert cfg.coeff.name == "default"
    assert cfg.resolved["scenario.kind"] == "contact"


def test_negative_volume_rejected():
    text = MINIMAL_CONTACT + "\n[end_states]\nv_minus = -1.0\n"
    with pytest.raises(ConfigError, match="positivity"):
        parse_config(text)


def test_contact_invariants_enforced():
    text = MINIMAL_CONTACT + "\n[end_states]\nu_plus = 0.3\n"
    with pytest.raises(ConfigError, match="u_minus == u_plus"):
        parse_config(text)
    text = MINIMAL_CONTACT + "\n[end_states]\nv_plus = 2.0\n"
    with pytest.raises(ConfigError, match="matched end pressures"):
        parse_config(text)


def test_composite_bracket_probe_at_validation():
    text = """
[scenario]
kind = composite
[end_states]
v_minus = 1.0
u_minus = 1.0
theta_minus = 1.0
v_plus = 1.0
u_plus = -1.0
theta_plus = 1.0
"""
    with pytest.raises(ConfigError, match="admissible"):
        parse_config(text)


def test_unknown_keys_and_sections_rejected():
    with pytest.raises(ConfigError, match="unknown key"):
        parse_config(MINIMAL_CONTACT + "\n[grid]\nnx = 100\n")
    with pytest.raises(ConfigError, match="unknown section"):
        parse_config(MINIMAL_CONTACT + "\n[extra]\nfoo = 1\n")


def test_parse_error_reports_line():
    with pytest.raises(ConfigError) as err:
        parse_config("[thermo]\ngamma 1.1\n")
    assert "line" in str(err.value).lower()


def test_value_conversion_errors():
    with pytest.raises(ConfigError, match="thermo.gamma"):
        parse_config("[thermo]\ngamma = abc\n")


def test_convergence_requires_equal_ends():
    text = """
[scenario]
kind = convergence
[end_states]
v_plus = 1.2
"""
    with pytest.raises(ConfigError, match="equal end states"):
        parse_config(text)


def test_scenario_and_shape_guards():
    with pytest.raises(ConfigError, match="unknown scenario"):
        parse_config("[scenario]\nkind = warp\n")
    with pytest.raises(ConfigError, match="unknown perturbation shape"):
        parse_config(MINIMAL_CONTACT + "\n[perturbation]\nshape = box\n")
    with pytest.raises(ConfigError, match="cfl"):
        parse_config(MINIMAL_CONTACT + "\n[solver]\ncfl = 1.5\n")
    with pytest.raises(ConfigError, match="profile_n"):
        parse_config(MINIMAL_CONTACT + "\n[solver]\nprofile_n = 200\n")


def test_coefficient_params_forwarded():
    cfg = parse_config(MINIMAL_CONTACT + "\n[coefficients]\nmodel = default\nmu0 = 2.5\nK1 = 2.0\n")
    assert cfg.coeff.params["mu0"] == 2.5
    assert cfg.coeff.params["K1"] == 2.0
    with pytest.raises(ConfigError, match="rejected"):
        parse_config(MINIMAL_CONTACT + "\n[coefficients]\nmodel = default\nbogus = 1\n")


def test_overrides_reparse():
    cfg = config_from_overrides(MINIMAL_CONTACT, {"grid.n_points": "512"})
    assert cfg.n_points == 512
    with pytest.raises(ConfigError, match="section.key"):
        config_from_overrides(MINIMAL_CONTACT, {"npoints": "512"})


def test_resolved_echo_is_deterministic():
    a = parse_config(MINIMAL_CONTACT).resolved
    b = parse_config(MINIMAL_CONTACT).resolved
    assert a == b
