"""Smoke tests for the python bindings: one quick pass over each exposed area."""

from fractions import Fraction

import pytest

sp = pytest.importorskip("subposet")


def test_poset_construction_and_analysis():
    v2 = sp.make_named_poset("fork", 2)
    assert v2.n == 3
    a = sp.analyze(v2, 2)
    assert a == {"height": 2, "tree_hasse": True, "k_saturated": True}
    assert sp.hasse_covers(v2) == [(0, 1), (0, 2)]

    with pytest.raises(Exception):
        sp.Poset.from_relations(2, [(0, 1), (1, 0)])


def test_saturate_and_decompose():
    p = sp.Poset.from_relations(4, [(0, 1), (1, 2), (0, 3)])
    sat = sp.saturate(p)
    assert sat.n == 5
    assert sp.analyze(sat, 3)["k_saturated"]
    steps = sp.decompose(sat)
    assert len(steps) == 1
    assert steps[0]["remaining"].n == 3
    assert sp.find_poset_embedding(sat, p, induced=True) is not None


def test_band_and_zones():
    band = sp.band_bounds(10000)
    assert band.lo == pytest.approx(5000 - 606.96, abs=0.05)
    v = sp.Subset(4, [1, 2, 3])
    zone = sp.forbidden_zone(v, sp.Family.explicit(4, [[1, 4]]), "below", 4, sp.Band(1, 3))
    assert [z.elements() for z in zone] == [[1]]


def test_counting_identities():
    fam = sp.Family.explicit(4, [[], [1], [1, 2], [2], [2, 3]])
    direct = sp.count_marked_chains(fam, 2, 4)
    oracle = sp.count_marked_chains_oracle(fam, 2, 4)
    assert direct == oracle
    assert isinstance(direct, int)

    assert Fraction(sp.lym_sum(sp.Family.explicit(2, [[1], [2]]), 2)) == 1

    r = sp.density_check(sp.Family.explicit(2, [[], [1], [2], [1, 2]]), 2, "1", 2)
    assert r["hypothesis_met"] and r["holds"]
    assert r["count"] == 6

    hist = sp.marker_histogram(sp.Family.explicit(2, [[1]]), 2)
    assert hist == {0: 1, 1: 1}


def test_zone_probability():
    v = sp.Subset(4, [1, 2, 3])
    fam = sp.Family.explicit(4, [[1, 4]])
    r = sp.zone_hit_prob(v, fam, "below", 4, sp.Band(1, 3), mode="exact")
    assert r["hits"] == 2 and r["trials"] == 6
    assert sp.gamma(10000, 1) == pytest.approx(0.8194, abs=1e-3)


def test_extremal_search():
    p2 = sp.make_named_poset("chain", 2)
    assert sp.la_exact(3, p2)["value"] == 3
    assert sp.la_exact(4, sp.make_named_poset("chain", 3), induced=False)["value"] == 10

    v2 = sp.make_named_poset("fork", 2)
    fam = sp.middle_levels(10, 2)
    guided = sp.find_copy_guided(fam, 10, v2, band=sp.band_bounds(10))
    assert guided["verdict"] == "found"
    emb = guided["embedding"]
    assert emb.validated and emb.induced
    images = [s.elements() for s in emb.image]
    assert set(images[0]) < set(images[1]) and set(images[0]) < set(images[2])

    assert sp.construction_avoidance_check(8, sp.make_named_poset("H_m", 2), 1)["avoided"]


def test_hm_certificate():
    h2 = sp.make_named_poset("H_m", 2)
    fam = sp.Family.explicit(6, [[1], [2], [1, 5], [1, 2], [3], [2, 3, 4]])
    found = sp.find_copy_oracle(fam, 6, h2, induced=True)
    assert found["verdict"] == "found"
    cert = sp.hm_certificate(found["embedding"], 2)
    assert cert["holds"] and cert["spread"] >= 1


def test_nested_build():
    fam = sp.Family.explicit(2, [[], [1], [2], [1, 2]])
    build = sp.build_nested(fam, 2, 2, "1", 2, sp.band_bounds(2), fam)
    assert build["iterations"][0]["marked_count"] == 6
    assert build["c_constant"] == 16
