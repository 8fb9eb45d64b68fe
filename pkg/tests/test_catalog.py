import numpy as np
import pytest

from multient import catalog
from multient.errors import InputError
from multient.measures import gme_ame


def test_every_entry_builds_normalized():
    for name, entry in catalog.CATALOG.items():
        params = {p: 0.5 + 0.5j for p in entry.params if p not in entry.defaults}
        s = catalog.named_state(name, **params)
        assert abs(np.linalg.norm(s.amps) - 1) < 1e-12


def test_named_state_errors():
    with pytest.raises(InputError, match="unknown state"):
        catalog.named_state("bogus")
    with pytest.raises(InputError, match="requires"):
        catalog.named_state("l_a4")
    with pytest.raises(InputError, match="takes no"):
        catalog.named_state("cnot", a=1)


def test_named_values():
    assert abs(gme_ame(catalog.named_state("l_05_3")) - 5 / 32) < 1e-12
    assert abs(gme_ame(catalog.named_state("l_07_1")) - 125 / 288) < 1e-12
    assert gme_ame(catalog.named_state("l_03_03")) == 0.0
    assert abs(gme_ame(catalog.named_state("ghz", n=4)) - 8 / 27) < 1e-12


def test_gabcd_ghz_point():
    # a = d = 1, b = c = 0 gives GHZ4
    s = catalog.named_state("g_abcd", a=1, b=0, c=0, d=1)
    assert abs(gme_ame(s) - 8 / 27) < 1e-12


def test_grids():
    g = catalog.default_grid("l_abc2", points=20, seed=4)
    assert g == catalog.default_grid("l_abc2", points=20, seed=4)
    assert all(abs(abs(v) - 1) < 1e-12 for row in g for v in row.values())
    r = catalog.default_grid("l_a4", points=5, kind="real", low=0, high=2)
    assert all(0 <= row["a"] <= 2 for row in r)
    with pytest.raises(InputError):
        catalog.default_grid("ghz")
    with pytest.raises(InputError):
        catalog.default_grid("l_a4", points=0)
    with pytest.raises(InputError):
        catalog.default_grid("l_a4", kind="lattice")


def test_class_sweep():
    rows = list(catalog.class_sweep("l_a2_0", catalog.default_grid("l_a2_0", 10)))
    assert len(rows) == 10
    assert all(0 <= rep.gme_ame <= 1 for _, rep in rows)
    with pytest.raises(InputError):
        list(catalog.class_sweep("l_a2_0", []))
    with pytest.raises(InputError):
        list(catalog.class_sweep("w", [{}]))
