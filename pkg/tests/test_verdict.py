import random
from fractions import Fraction

import pytest

from sigmadist import localtower as lt
from sigmadist import verdict
from sigmadist.localtower import Ext, LevelZeroChar, Quad, TowerSpec
from sigmadist.verdict import Outcome, UnramifiedTwist, decide, twist

RAM1 = TowerSpec(3, 3, Ext.RAMIFIED, 1, 1, 0, 1)
RAM2 = TowerSpec(3, 3, Ext.RAMIFIED, 1, 1, 0, 2)
UNR = TowerSpec(3, 3, Ext.UNRAMIFIED, 1, 1, 0, 1)
LZ3 = verdict.level_zero_spec(3, 3)


@pytest.mark.parametrize("s,x,ell,outcome,rule", [
    (RAM1, LevelZeroChar(0, 0), 0, Outcome.DISTINGUISHED, verdict.RULE_RAM_M1),
    (RAM1, LevelZeroChar(1, Fraction(1, 4)), 0, Outcome.OMEGA, verdict.RULE_RAM_M1),
    (RAM2, LevelZeroChar(2, 0), 0, Outcome.DISTINGUISHED, verdict.RULE_RAM_EVEN),
    (RAM2, LevelZeroChar(2, Fraction(1, 2)), 0, Outcome.OMEGA, verdict.RULE_RAM_EVEN),
    (UNR, LevelZeroChar(2, 0), 0, Outcome.DISTINGUISHED, verdict.RULE_UNRAM),
    (UNR, LevelZeroChar(2, Fraction(1, 2)), 0, Outcome.OMEGA, verdict.RULE_UNRAM),
    (RAM1, LevelZeroChar(0, 0), 2, Outcome.DISTINGUISHED, verdict.RULE_ELL_TWO),
])
def test_decide_examples(s, x, ell, outcome, rule):
    v = decide(s, x, ell)
    assert (v.outcome, v.rule) == (outcome, rule)


def test_ramified_even_m_follows_delta0_opposite_way():
    x, y = LevelZeroChar(2, Fraction(1, 2)), LevelZeroChar(2, 0)
    assert lt.compute_delta0(RAM2, x) is Quad.TRIVIAL
    assert decide(RAM2, x).outcome == Outcome.OMEGA
    assert lt.compute_delta0(RAM2, y) is Quad.OMEGA
    assert decide(RAM2, y).outcome == Outcome.DISTINGUISHED


def test_decide_rejects_invalid():
    with pytest.raises(lt.SpecError):
        decide(UNR, LevelZeroChar(1, 0))


def test_verdict_dict():
    d = decide(UNR, LevelZeroChar(2, 0)).to_dict()
    assert d["outcome"] == "Distinguished"
    assert d["invariants"] == {"TT0": "Unramified", "KK0": "Unramified", "delta0": "Trivial",
                               "epsilon0": "Trivial", "torsion": 1, "n": 1,
                               "central_char_on_F0": "Trivial"}


# -- twists ----------------------------------------------------------------------------------------


def test_trivial_twist_is_identity():
    x = LevelZeroChar(26, 0)
    assert twist(LZ3, x, UnramifiedTwist(0)) == x


def test_quadratic_twist_flips_level_zero_cubic():
    x = LevelZeroChar(26, 0)
    assert lt.validate_spec(LZ3, x) == []
    chi = UnramifiedTwist.of_order(2)
    y = twist(LZ3, x, chi)
    assert lt.compute_epsilon0(LZ3, x) is Quad.TRIVIAL
    assert lt.compute_epsilon0(LZ3, y) is Quad.OMEGA
    assert decide(LZ3, y).outcome == Outcome.OMEGA
    assert twist(LZ3, y, chi) == x


def test_twist_respects_ell():
    x = LevelZeroChar(26, 0)
    assert not verdict.twist_is_valid(LZ3, x, UnramifiedTwist.of_order(2), 2)
    assert verdict.twist_is_valid(LZ3, x, UnramifiedTwist.of_order(2), 5)


def test_omega_twist_exists_examples():
    r = verdict.omega_twist_exists(RAM1, LevelZeroChar(0, 0))
    assert not r.exists and r.witness is None
    r = verdict.omega_twist_exists(LZ3, LevelZeroChar(26, 0))
    assert r.exists and r.witness.chi_order == 2
    r = verdict.omega_twist_exists(UNR, LevelZeroChar(2, 0))
    assert r.exists
    assert verdict.exhaustive_twist_scan(UNR, LevelZeroChar(2, 0)) is not None
    assert verdict.exhaustive_twist_scan(RAM1, LevelZeroChar(0, 0)) is None


def test_omega_twist_exists_preconditions():
    with pytest.raises(lt.SpecError):
        verdict.omega_twist_exists(UNR, LevelZeroChar(2, Fraction(1, 2)))
    with pytest.raises(lt.SpecError):
        verdict.omega_twist_exists(RAM1, LevelZeroChar(0, 0), 2)


# -- grid --------------------------------------------------------------------------------------


def test_small_grid():
    rep = verdict.run_grid(verdict.GridConfig(q0s=(3, 5), max_m=4, max_e=4, max_f=2, theta_samples=8))
    assert rep.ok, rep.failures[:3]
    assert rep.specs > 50 and rep.data > 1000


def test_grid_with_ell_five():
    cfg = verdict.GridConfig(q0s=(3, 7, 9), max_m=4, max_e=4, max_f=2, ells=(0, 3, 5), theta_samples=8)
    rep = verdict.run_grid(cfg)
    assert rep.ok, rep.failures[:3]
    assert rep.data > 0


def test_grid_is_deterministic():
    cfg = verdict.GridConfig(q0s=(5,), max_m=3, max_e=3, max_f=2, theta_samples=4, seed=11)
    a, b = verdict.run_grid(cfg, twist_checks=False), verdict.run_grid(cfg, twist_checks=False)
    assert (a.specs, a.data, a.decisions) == (b.specs, b.data, b.decisions)


def test_theta_sampling():
    s = TowerSpec(5, 25, Ext.UNRAMIFIED, 1, 3, 0, 5)
    ths = verdict.sigma_selfdual_thetas(s, 8, random.Random(0))
    assert 0 < len(ths) <= 16
    for th in ths:
        assert lt.validate_spec(s, LevelZeroChar(th, 0)) == []


# -- level zero against the finite engine ------------------------------------------------------------


@pytest.mark.parametrize("q0,m", [(2, 1), (3, 1), (2, 3)])
def test_cross_check_level_zero(q0, m):
    s = verdict.level_zero_spec(q0, m)
    data = verdict.level_zero_data(q0, m)
    assert data
    for x in data:
        assert verdict.cross_check_level_zero(s, x).consistent


def test_cross_check_example():
    s = verdict.level_zero_spec(2, 3)
    yes = verdict.cross_check_level_zero(s, LevelZeroChar(7, 0))
    no = verdict.cross_check_level_zero(s, LevelZeroChar(7, Fraction(1, 2)))
    assert (yes.outcome, yes.finite_dim) == (Outcome.DISTINGUISHED, 1)
    assert (no.outcome, no.finite_dim) == (Outcome.OMEGA, 1)


def test_cross_check_needs_level_zero():
    with pytest.raises(lt.SpecError):
        verdict.cross_check_level_zero(RAM1, LevelZeroChar(0, 0))
