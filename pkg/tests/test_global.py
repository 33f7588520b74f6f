import json

import pytest
from hypothesis import given
from hypothesis import strategies as st

from packetc.component_group import Character, center_element, component_group
from packetc.global_admissibility import (
    GlobalSetting,
    LocalData,
    SettingError,
    enumerate_admissible,
    family_for,
    is_admissible,
    is_kernel_coset,
    is_regular,
    kernel,
    multiplicity_table,
    passes_product_formula,
    pullback,
)
from packetc.local_forms import Place, normalized_invariant
from packetc.parameters import GroupKind, Parameter
from strategies import ONE, XI, global_settings

ODD = GroupKind.ODD
PHI = Parameter.of(ODD, [(ONE, 2), (XI, 2)])
IDENTITY = ((1, 0), (0, 1))


def two_places(loc=IDENTITY, arthur=None):
    return GlobalSetting(PHI, (LocalData(Place(3), PHI, loc), LocalData(Place(5), PHI, loc)), arthur)


def test_regularity():
    assert is_regular(PHI)
    assert not is_regular(Parameter.of(ODD, [(ONE, 2, 1, 2)]))
    assert not is_regular(Parameter.of(ODD, [(ONE, 1, 1, 2), (XI, 2)]))


def test_trivial_family_is_admissible():
    g = component_group(PHI)
    setting = two_places()
    assert is_admissible(setting, [g.trivial_character()] * 2)


def test_flip_one_place_breaks_admissibility():
    setting = two_places()
    assert not is_admissible(setting, [Character((-1, 1)), Character((1, 1))])


def test_identity_loc_means_equal_characters():
    setting = two_places()
    chars = list(component_group(PHI).characters())
    for a in chars:
        for b in chars:
            assert is_admissible(setting, [a, b]) == (a == b)


def test_single_place_surjective_loc():
    setting = GlobalSetting(PHI, (LocalData(Place(3), PHI, IDENTITY),))
    found = [f.eps for f in enumerate_admissible(setting)]
    assert found == [(component_group(PHI).trivial_character(),)]


def test_hasse_filter_by_hand():
    # loc sends both generators to the center at each place
    loc = ((1, 1), (1, 1))
    glob = Parameter.of(ODD, [(ONE, 2), (XI, 2)])
    setting = GlobalSetting(glob, (LocalData(Place(3), PHI, loc), LocalData(Place(5), PHI, loc)))
    assert not setting.center_compatible()
    z = center_element(component_group(PHI))
    for fam in enumerate_admissible(setting):
        assert fam.eps[0](z) * fam.eps[1](z) == 1
    admissible = [eps for eps, m in multiplicity_table(setting).items() if m]
    pre_filter = [eps for eps in multiplicity_table(setting) if is_admissible(setting, eps)]
    dropped = [eps for eps in pre_filter if eps not in admissible]
    assert all(eps[0](z) * eps[1](z) == -1 for eps in dropped)


def test_size_guard(monkeypatch):
    import packetc.global_admissibility as ga

    monkeypatch.setattr(ga, "MAX_CANDIDATES", 8)
    with pytest.raises(SettingError):
        enumerate_admissible(two_places())


def test_shape_errors():
    with pytest.raises(SettingError):
        GlobalSetting(PHI, (LocalData(Place(3), PHI, ((1,), (0,))),))
    with pytest.raises(SettingError):
        GlobalSetting(PHI, (LocalData(Place(3), PHI, ((2, 0), (0, 1))),))
    with pytest.raises(SettingError):
        GlobalSetting(PHI, (LocalData(Place(3), PHI, IDENTITY), LocalData(Place(3), PHI, IDENTITY)))
    with pytest.raises(SettingError):
        is_admissible(two_places(), [Character((1, 1))])


def test_json_round_trip():
    setting = two_places(arthur=Character((1, -1)))
    back = GlobalSetting.from_json(json.loads(json.dumps(setting.to_json())))
    assert back == setting


@given(global_settings(arthur=True))
def test_admissible_families_form_a_kernel_coset(setting):
    families = enumerate_admissible(setting)
    assert setting.center_compatible()
    assert is_kernel_coset(setting, families)
    assert len(families) in (0, len(kernel(setting)))
    for fam in families:
        assert passes_product_formula(setting, fam)
        for data, eps, form in zip(setting.places, fam.eps, fam.forms):
            assert normalized_invariant(form) == eps(center_element(data.group))


@given(global_settings(), st.randoms(use_true_random=False))
def test_reordering_places(setting, rng):
    order = list(range(len(setting.places)))
    rng.shuffle(order)
    moved = GlobalSetting(setting.global_parameter, tuple(setting.places[i] for i in order), setting.arthur)
    for fam in enumerate_admissible(setting):
        eps = [fam.eps[i] for i in order]
        assert is_admissible(moved, eps)
        assert passes_product_formula(moved, family_for(moved, eps))


@given(global_settings())
def test_kernel_action_preserves_admissibility(setting):
    families = enumerate_admissible(setting)
    for ker in kernel(setting)[:4]:
        for fam in families[:4]:
            shifted = [a * b for a, b in zip(fam.eps, ker)]
            assert pullback(setting, shifted) == pullback(setting, fam.eps)
