import json

import numpy as np
import pytest

from sdchains.algebra import Ideal, validate_algebra
from sdchains.errors import HypothesisFailed
from sdchains.fmodule import dualizing_module, iso_probe, regular_module
from sdchains.presentation import (
    SubsetLabel,
    all_subsets,
    base_projection,
    build_presentation,
    converse_chain_from_presentation,
    presentation_from_json,
    presentation_to_json,
    quotient_ring,
    verify_intersection_equals_product,
    verify_subset_multiplication,
    verify_tensor_lemmas,
    verify_theorem_main,
)
from sdchains.semidual import Chain

P = 5


@pytest.fixture(scope="module")
def pres2(F2):
    return build_presentation(F2, Chain(F2, [dualizing_module(F2)], names=["D"]))


def test_subset_labels():
    lab = SubsetLabel.of((1, 3), 3)
    assert lab.mask == 0b101 and lab.members == (1, 3) and str(lab) == "{1,3}"
    with pytest.raises(ValueError):
        SubsetLabel(0b100, 2)
    assert all_subsets(2) == [(), (1,), (2,), (1, 2)]


def test_length_one_presentation(F2, pres2):
    assert pres2.q.dim == 6 and pres2.block_dims() == {(): 3, (1,): 3}
    assert pres2.ideals[0].dim == 3 and pres2.ideals[0].is_closed()
    validate_algebra(pres2.q.mult, P)


def test_f3_presentation_shape(pres3):
    assert pres3.q.dim == 36
    assert pres3.block_dims() == {(): 9, (1,): 9, (2,): 9, (1, 2): 9}
    assert [i.dim for i in pres3.ideals] == [18, 18]
    assert [st.correspondence for st in pres3.provenance] == [{1: 2}, {}]


def test_multiplication_rule_via_splitting(pres3):
    """``(r, d) psi`` has value ``r c + f(d)`` at 1 when ``psi`` splits as ``(c, f)``."""
    ext = pres3.provenance[-1].ext  # Q = R_1 |x Hom(R_1, X), X = Hom_R(R |x C_1, C_2)
    x_mod = ext.module.target
    co = x_mod.splitting
    c2 = co.hom.target
    base_dim = pres3.base.dim
    zeros_base = np.zeros(ext.base.dim, dtype=np.int64)
    rng = np.random.default_rng(11)
    for _ in range(10):
        x = rng.integers(0, P, ext.base.dim)
        psi = rng.integers(0, P, ext.module.dim)
        prod = ext.total.mul(np.concatenate([x, np.zeros(ext.module.dim, dtype=np.int64)]), np.concatenate([zeros_base, psi]))
        assert not prod[: ext.base.dim].any()
        value, _ = co.split(ext.module.matrix_of(prod[ext.base.dim:])[:, 0])
        c, f = co.split(ext.module.matrix_of(psi)[:, 0])
        r, d = x[:base_dim], x[base_dim:]
        expect = np.mod(c2.act(r) @ c + co.fiber_hom.matrix_of(f) @ d, P)
        assert np.array_equal(value, expect)


def test_subset_multiplication(pres2, pres3):
    for pres in (pres2, pres3):
        v = verify_subset_multiplication(pres)
        assert v.passed and v.details["overlap_nonzero"] == 0


def test_quotient_rings(pres3):
    q, report = quotient_ring(pres3, ())
    assert q is pres3.q and report.passed
    r1, report = quotient_ring(pres3, (1,))
    assert r1.dim == 18 and report.passed
    assert {pres3.label_of(int(i)).members for i in pres3.keep((1,))} == {(), (2,)}
    top, _ = quotient_ring(pres3, (1, 2))
    assert np.array_equal(top.mult, pres3.base.mult)
    proj = base_projection(pres3)
    assert proj.is_valid() and proj.kernel() == pres3.ideal_sum((1, 2))


def test_intersection_equals_product(pres3):
    assert verify_intersection_equals_product(pres3, (1,)).passed
    v = verify_intersection_equals_product(pres3, (1, 2))
    assert v.passed and v.details == {"intersection": 9, "product": 9}


def test_sabotaged_chain_is_refused(chain3):
    bad = Chain(chain3.ring, [chain3.c(1), chain3.c(1)])
    with pytest.raises(HypothesisFailed):
        build_presentation(chain3.ring, bad)


def test_presentation_needs_dualizing_end(F3, chain3):
    short = Chain(F3, [chain3.c(1)])
    with pytest.raises(HypothesisFailed):
        build_presentation(F3, short)


def test_theorem_for_length_one(pres2):
    v = verify_theorem_main(pres2, bound=4, window=3)
    assert v.status == "pass", [f.condition for f in v.failures]
    assert all(status == "pass" for pairs in v.details["items"].values() for status in pairs.values())


def test_tensor_lemmas_diagonal_and_disjoint(pres3):
    assert verify_tensor_lemmas(pres3, (1,), (1,)).passed
    v = verify_tensor_lemmas(pres3, (1,), (2,))
    assert v.passed
    # R_{1} tensor R_{2} over R_{1,2} = R is Q, checked against the label count
    assert v.details["eta"] == {"tensor_dim": 36, "target_dim": 36}


def test_json_round_trip(pres3):
    doc = json.loads(json.dumps(presentation_to_json(pres3)))
    back = presentation_from_json(doc)
    assert np.array_equal(back.q.mult, pres3.q.mult)
    assert np.array_equal(back.labels, pres3.labels)
    assert all(a == b for a, b in zip(back.ideals, pres3.ideals))
    assert doc["blocks"] == {"{}": 9, "{1}": 9, "{2}": 9, "{1,2}": 9}


def test_converse_length_one(pres2, F2):
    res = converse_chain_from_presentation(pres2.q, pres2.ideals)
    assert res.distinctness.passed
    assert res.degrees == {(): 0, (1,): 0}
    assert res.distinctness.details["bass_distinct"]
    # C_{} is dualizing for R, C_{1} is R itself
    assert iso_probe(res.modules[()], dualizing_module(res.ring)).is_iso
    assert iso_probe(res.modules[(1,)], regular_module(res.ring)).is_iso
    assert res.chain_verdict.passed


def test_converse_refuses_non_gorenstein(F2):
    with pytest.raises(HypothesisFailed):
        converse_chain_from_presentation(F2, [Ideal.from_vectors(F2, [[0, 1, 0]], close=True)])
