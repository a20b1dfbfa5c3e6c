import numpy as np
import pytest

from sdchains.algebra import is_gorenstein, socle_dim, validate_algebra
from sdchains.fmodule import dualizing_module, hom_module, regular_module, zero_module
from sdchains.semidual import Chain, is_suitable_chain
from sdchains.trivext import chain_over_extension, coinduced, restrict, total_as_base_module, trivial_extension

P = 5


def test_trivial_extension_of_dualizing_is_gorenstein(F2):
    ext = trivial_extension(F2, dualizing_module(F2))
    validate_algebra(ext.total.mult, P)
    assert ext.total.dim == 6 and socle_dim(ext.total) == 1 and is_gorenstein(ext.total)
    assert ext.embed.is_valid() and ext.project.is_valid()
    assert ext.labels == ["Base"] * 3 + ["Fiber"] * 3


def test_multiplication_rule(F2):
    d = dualizing_module(F2)
    ext = trivial_extension(F2, d)
    rng = np.random.default_rng(1)
    for _ in range(10):
        r, m, s, n = (rng.integers(0, P, 3) for _ in range(4))
        prod = ext.total.mul(np.concatenate([r, m]), np.concatenate([s, n]))
        expect_base = F2.mul(r, s)
        expect_fiber = np.mod(d.act(r) @ n + d.act(s) @ m, P)
        assert np.array_equal(prod, np.concatenate([expect_base, expect_fiber]))


def test_fiber_squares_to_zero(F2):
    ext = trivial_extension(F2, dualizing_module(F2))
    fib = list(ext.fiber_indices)
    assert not ext.total.mult[np.ix_(fib, fib)].any()


def test_restriction_along_embedding(F2):
    ext = trivial_extension(F2, dualizing_module(F2))
    base = total_as_base_module(ext)
    assert base.ring is F2 and base.dim == 6
    assert restrict(regular_module(ext.total), ext).dim == 6


def test_coinduced_pieces(F2):
    d = dualizing_module(F2)
    ext = trivial_extension(F2, d)
    co = coinduced(ext, d)
    assert co.module.dim == 6 and co.module.ring is ext.total
    co.module.validate()
    assert co.base_piece.dim == 3 and co.fiber_piece.dim == hom_module(d, d).dim == 3
    assert (co.base_piece + co.fiber_piece).dim == 6
    y, f = co.split(co.from_y[:, 1])
    assert y.tolist() == [0, 1, 0] and not f.any()


def test_coinduced_of_zero(F2):
    ext = trivial_extension(F2, dualizing_module(F2))
    assert coinduced(ext, zero_module(F2)).module.dim == 0


def test_extension_of_length_one_chain(F2):
    chain = Chain(F2, [dualizing_module(F2)])
    ext, derived = chain_over_extension(chain, 1)
    assert ext.total.dim == 6 and derived.n == 0


def test_extension_of_f3_chain(chain3):
    for k in (1, 2):
        ext, derived = chain_over_extension(chain3, k)
        assert ext.total.dim == 18 and derived.n == 1
        assert derived.modules[0].dim == 18
        assert is_suitable_chain(derived).passed


def test_extension_index_range(chain3):
    with pytest.raises(ValueError):
        chain_over_extension(chain3, 3)


def test_extension_at_top_of_length_three_chain():
    """``k = 3`` builds the first derived module from ``Hom(C_1, C_3)``."""
    from sdchains.algebra import tensor_algebra
    from sdchains.fixtures import f2, tensor_of_modules_over_product as over

    a = f2(P)
    r2 = tensor_algebra(a, a)
    r = tensor_algebra(r2, a)
    d, one = dualizing_module(a), regular_module(a)
    c1 = over(over(d, one, r2), one, r)
    c2 = over(dualizing_module(r2), one, r)
    c3 = dualizing_module(r)
    ext, derived = chain_over_extension(Chain(r, [c1, c2, c3]), 3, verify=False)
    assert ext.total.dim == 2 * r.dim and derived.n == 2
    first, second = derived.modules
    assert first.splitting.base_piece.dim == hom_module(c1, c3).dim
    assert second.splitting.base_piece.dim == c2.dim
    for m in derived.modules:
        m.validate()
