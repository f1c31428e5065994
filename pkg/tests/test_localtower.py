import json
import random
from fractions import Fraction

import hypothesis
import hypothesis.strategies as st
import pytest

from sigmadist import localtower as lt
from sigmadist import verdict
from sigmadist.localtower import Central, Ext, LevelZeroChar, Quad, TowerSpec


def unram(q0=3, e=1, f=1, a=0, m=1, p=None):
    return TowerSpec(p or _p(q0), q0, Ext.UNRAMIFIED, e, f, a, m)


def ram(q0=3, e=1, f=1, a=0, m=1, p=None):
    return TowerSpec(p or _p(q0), q0, Ext.RAMIFIED, e, f, a, m)


def _p(q0):
    return next(p for p in (2, 3, 5, 7, 11, 13) if q0 % p == 0)


def clauses(s, x, ell=0, **kw):
    return {v.clause for v in lt.validate_spec(s, x, ell, **kw)}


# -- classification ---------------------------------------------------------------------------------


@pytest.mark.parametrize("s,TT0,KK0", [
    (unram(), Ext.UNRAMIFIED, Ext.UNRAMIFIED),
    (ram(), Ext.RAMIFIED, Ext.RAMIFIED),
    (ram(m=2), Ext.RAMIFIED, Ext.UNRAMIFIED),
    (ram(e=2), Ext.UNRAMIFIED, Ext.UNRAMIFIED),
    (ram(e=3, m=4), Ext.RAMIFIED, Ext.UNRAMIFIED),
    (unram(e=3, m=3), Ext.UNRAMIFIED, Ext.UNRAMIFIED),
])
def test_classify(s, TT0, KK0):
    assert lt.classify_TT0(s) is TT0
    assert lt.classify_KK0(s) is KK0


def test_trivial_tower_invariants():
    inv = lt.tower_invariants(unram())
    assert (inv.e_TF, inv.f_TF, inv.e_DF, inv.f_DF, inv.f_KF, inv.n) == (1, 1, 1, 1, 1, 1)


def test_tower_degrees():
    # ramified base with e(T0/F0) even: T/F picks up a residual factor 2
    assert lt.degrees_TF(ram(e=2, f=1)) == (1, 2)
    assert lt.degrees_TF(ram(e=3, f=2)) == (3, 2)
    inv = lt.tower_invariants(unram(q0=5, e=2, f=3, a=1, m=3))
    assert inv.n == 3 * 2 * 3 * 5
    assert lt.residue_size_E(unram(q0=5, f=3)) == 5**6
    assert lt.residue_size_E(ram(q0=5, f=3)) == 5**3


# -- validation ----------------------------------------------------------------------------------


def test_valid_examples():
    assert lt.validate_spec(unram(), LevelZeroChar(2, 0)) == []
    assert lt.validate_spec(ram(), LevelZeroChar(0, Fraction(1, 2))) == []
    assert lt.validate_spec(ram(), LevelZeroChar(1, Fraction(1, 4))) == []


@pytest.mark.parametrize("s,x,clause", [
    (TowerSpec(2, 2, Ext.UNRAMIFIED, 1, 1, 0, 1), LevelZeroChar(0, 0), "odd-residue-characteristic"),
    (TowerSpec(4, 4, Ext.UNRAMIFIED, 1, 1, 0, 1), LevelZeroChar(0, 0), "odd-residue-characteristic"),
    (TowerSpec(3, 5, Ext.UNRAMIFIED, 1, 1, 0, 1), LevelZeroChar(0, 0), "residue-field"),
    (unram(m=0), LevelZeroChar(0, 0), "positivity"),
    (unram(e=3), LevelZeroChar(0, 0), "tame-ramification"),
    (unram(f=2), LevelZeroChar(0, 0), "odd-residual-degree"),
    (ram(m=3), LevelZeroChar(0, 0), "ramified-relative-degree"),
    (unram(m=2), LevelZeroChar(0, 0), "unramified-relative-degree"),
    (unram(m=3), LevelZeroChar(0, 0), "admissibility"),
    (unram(), LevelZeroChar(1, 0), "residual-involution"),
    (unram(), LevelZeroChar(2, Fraction(1, 3)), "uniformizer"),
])
def test_invalid_examples(s, x, clause):
    assert clause in clauses(s, x)
    with pytest.raises(lt.SpecError):
        lt.require_valid(s, x)


def test_even_p_is_allowed_on_request():
    s = TowerSpec(2, 2, Ext.UNRAMIFIED, 1, 1, 0, 3)
    x = LevelZeroChar(7, 0)
    assert clauses(s, x, allow_even_p=True) == set()
    assert "odd-residue-characteristic" in clauses(s, x)


def test_coefficient_field_checks():
    s, x = unram(q0=5), LevelZeroChar(4, 0)  # theta of order 6 in l_K^x of order 24
    assert lt.validate_spec(s, x, 7) == []
    assert "coefficient-field" in clauses(s, x, 3)
    assert "coefficient-field" in clauses(s, x, 5)  # ell = p
    assert "coefficient-field" in clauses(s, x, 4)  # not prime


def test_ell_two_rejects_omega_delta0():
    s, x = ram(q0=3), LevelZeroChar(1, Fraction(1, 4))
    assert lt.compute_delta0(s, x) is Quad.OMEGA
    assert lt.validate_spec(s, x) == []
    assert lt.validate_spec(s, x, 2)
    assert lt.validate_spec(s, LevelZeroChar(0, 0), 2) == []


def test_ell_two_data_have_trivial_delta0():
    # odd-order theta and xi(t) leave no room for a quadratic delta0
    cfg = verdict.GridConfig(q0s=(3, 5), max_e=4, max_m=4, max_f=2)
    seen = 0
    for s in verdict.grid_specs(cfg):
        for th in range(min(lt.theta_modulus(s), 200)):
            for xi in map(Fraction, (0, "1/2", "1/4", "3/4", "1/3")):
                x = LevelZeroChar(th, xi)
                if not lt.validate_spec(s, x, 2):
                    seen += 1
                    assert lt.compute_delta0(s, x) is Quad.TRIVIAL
    assert seen > 100


# -- delta0, epsilon0, central character -----------------------------------------------------------------


@pytest.mark.parametrize("s,x,delta0", [
    (ram(), LevelZeroChar(0, 0), Quad.TRIVIAL),
    (ram(), LevelZeroChar(0, Fraction(1, 2)), Quad.TRIVIAL),
    (ram(), LevelZeroChar(1, Fraction(1, 4)), Quad.OMEGA),
    (unram(), LevelZeroChar(2, 0), Quad.TRIVIAL),
    (unram(), LevelZeroChar(2, Fraction(1, 2)), Quad.OMEGA),
])
def test_delta0(s, x, delta0):
    assert lt.validate_spec(s, x) == []
    assert lt.compute_delta0(s, x) is delta0


def test_delta0_ramified_m1_trivial_example():
    # theta = 0, xi(t) = -1: xi(t^2) = 1 and xi is trivial on units
    assert lt.compute_delta0(ram(q0=5), LevelZeroChar(0, Fraction(1, 2))) is Quad.TRIVIAL
    assert lt.compute_delta0(ram(q0=5), LevelZeroChar(2, Fraction(0))) is Quad.OMEGA


def test_epsilon0_only_for_unramified_TT0():
    assert lt.compute_epsilon0(unram(), LevelZeroChar(2, Fraction(1, 2))) is Quad.OMEGA
    with pytest.raises(lt.SpecError):
        lt.compute_epsilon0(ram(), LevelZeroChar(0, 0))


@pytest.mark.parametrize("s,x,cc", [
    (unram(), LevelZeroChar(2, 0), Central.TRIVIAL),
    (unram(), LevelZeroChar(2, Fraction(1, 2)), Central.NONTRIVIAL),
    (ram(), LevelZeroChar(1, Fraction(1, 4)), Central.NONTRIVIAL),
    (ram(), LevelZeroChar(0, Fraction(1, 2)), Central.TRIVIAL),
    (ram(f=2), LevelZeroChar(4, Fraction(1, 2)), Central.TRIVIAL),
    (ram(m=2), LevelZeroChar(2, Fraction(1, 2)), Central.TRIVIAL),
])
def test_central_character(s, x, cc):
    assert lt.validate_spec(s, x) == []
    assert lt.central_char_on_F0(s, x) is cc


def _random_valid(rng, count):
    specs = [s for s in verdict.grid_specs(verdict.GridConfig(q0s=(3, 5, 7), max_e=4, max_m=4, max_f=3))
             if lt.classify_TT0(s) is Ext.UNRAMIFIED]
    out = []
    while len(out) < count:
        s = rng.choice(specs)
        ths = verdict.sigma_selfdual_thetas(s, 8, rng)
        if not ths:
            continue
        x = LevelZeroChar(rng.choice(ths), rng.choice([Fraction(0), Fraction(1, 2)]))
        if not lt.validate_spec(s, x):
            out.append((s, x))
    return out


def test_epsilon0_is_delta0_restricted():
    for s, x in _random_valid(random.Random(7), 100):
        assert lt.compute_epsilon0(s, x) is lt.compute_delta0(s, x)


# -- JSON ----------------------------------------------------------------------------------------


def test_json_round_trip(tmp_path):
    s, x = ram(q0=9, e=1, m=2), LevelZeroChar(10, Fraction(3, 4))
    d = lt.spec_to_dict(s, x, 5)
    path = tmp_path / "spec.json"
    path.write_text(json.dumps(d))
    assert lt.load_spec(str(path)) == (s, x, 5)


@pytest.mark.parametrize("patch", [
    {"colour": 1}, {"p": "3"}, {"base": "Wild"}, {"xi_t": {"num": 1}}, {"xi_t": {"num": 1, "den": 0}},
    {"ell": -1}, {"m": True},
])
def test_parse_rejects(patch):
    d = lt.spec_to_dict(unram(), LevelZeroChar(2, 0))
    d.update(patch)
    with pytest.raises(lt.SpecError):
        lt.parse_spec(d)


def test_parse_missing_key():
    d = lt.spec_to_dict(unram(), LevelZeroChar(2, 0))
    del d["m"]
    with pytest.raises(lt.SpecError):
        lt.parse_spec(d)


def test_load_bad_json(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text("{")
    with pytest.raises(lt.SpecError):
        lt.load_spec(str(path))


@hypothesis.given(st.integers(0, 10**6), st.fractions(), st.integers(1, 6), st.integers(1, 4))
def test_dict_round_trip_property(th, xi, e, m):
    s, x = TowerSpec(5, 25, Ext.RAMIFIED, e, 1, 0, m), LevelZeroChar(th, xi)
    assert lt.parse_spec(lt.spec_to_dict(s, x, 3)) == (s, x, 3)
