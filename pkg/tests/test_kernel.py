"""The compiled kernel and the pure fallback must agree exactly."""

import random

import pytest

from conftest import random_reduced
from f2aut import _pure, kernel

try:
    from f2aut import _speedups
except ImportError:
    _speedups = None

BACKENDS = [_pure] if _speedups is None else [_pure, _speedups]


def _random_tables(rng):
    ia = random_reduced(rng, rng.randrange(0, 5)).data
    ib = random_reduced(rng, rng.randrange(0, 5)).data
    return ia, _pure.invert_bytes(ia), ib, _pure.invert_bytes(ib)


def test_backend_names():
    assert _pure.NAME == "pure"
    assert kernel.BACKEND in ("pure", "compiled")
    if _speedups is not None:
        assert _speedups.NAME == "compiled"
        assert kernel.BACKEND == "compiled"


@pytest.mark.skipif(_speedups is None, reason="compiled kernel unavailable")
def test_backends_agree_on_random_inputs():
    rng = random.Random(20240817)
    for trial in range(400):
        raw = bytes(rng.randrange(4) for _ in range(rng.randrange(0, 30)))
        w = _pure.free_reduce(raw)
        assert _speedups.free_reduce(raw) == w

        u = random_reduced(rng, rng.randrange(0, 12)).data
        assert _speedups.concat_reduce(w, u) == _pure.concat_reduce(w, u)
        assert _speedups.invert_bytes(w) == _pure.invert_bytes(w)
        assert _speedups.cyclic_trim(w) == _pure.cyclic_trim(w)

        core, _ = _pure.cyclic_trim(w)
        assert _speedups.least_rotation(core) == _pure.least_rotation(core)

        tabs = _random_tables(rng)
        assert _speedups.apply_mapped(w, *tabs) == _pure.apply_mapped(w, *tabs)
        assert _speedups.apply_mapped_cyclic(core, *tabs) == _pure.apply_mapped_cyclic(core, *tabs)

        step = rng.randrange(4)
        assert _speedups.apply_step_cyclic(core, step) == _pure.apply_step_cyclic(core, step)
        count = rng.randrange(0, 6)
        assert _speedups.step_power_lengths(core, step, count) == _pure.step_power_lengths(core, step, count)


def test_free_reduce_examples():
    for backend in BACKENDS:
        assert backend.free_reduce(b"\x00\x01") == b""
        assert backend.free_reduce(b"\x00\x02\x03\x01") == b""
        assert backend.free_reduce(b"\x00\x02\x03\x02") == b"\x00\x02"
        assert backend.free_reduce(b"") == b""


def test_concat_reduce_matches_full_reduction():
    rng = random.Random(7)
    for backend in BACKENDS:
        for _ in range(200):
            u = random_reduced(rng, rng.randrange(0, 10)).data
            v = random_reduced(rng, rng.randrange(0, 10)).data
            assert backend.concat_reduce(u, v) == backend.free_reduce(u + v)


def test_cyclic_trim_reassembles():
    rng = random.Random(11)
    for backend in BACKENDS:
        for _ in range(200):
            w = random_reduced(rng, rng.randrange(0, 14)).data
            core, conj = backend.cyclic_trim(w)
            rebuilt = backend.concat_reduce(
                backend.concat_reduce(conj, core), backend.invert_bytes(conj))
            assert rebuilt == w
            # the core really is cyclically reduced
            assert not core or core[0] != core[-1] ^ 1


def test_least_rotation_is_minimal():
    rng = random.Random(13)
    for backend in BACKENDS:
        for _ in range(200):
            w = random_reduced(rng, rng.randrange(1, 10)).data
            core, _ = backend.cyclic_trim(w)
            if not core:
                continue
            best = backend.least_rotation(core)
            rotations = [core[i:] + core[:i] for i in range(len(core))]
            assert best == min(rotations)
            assert backend.least_rotation(best) == best


def test_apply_mapped_homomorphism():
    rng = random.Random(17)
    for backend in BACKENDS:
        for _ in range(100):
            tabs = _random_tables(rng)
            u = random_reduced(rng, rng.randrange(0, 8)).data
            v = random_reduced(rng, rng.randrange(0, 8)).data
            lhs = backend.apply_mapped(backend.concat_reduce(u, v), *tabs)
            rhs = backend.concat_reduce(
                backend.apply_mapped(u, *tabs), backend.apply_mapped(v, *tabs))
            assert lhs == rhs


def test_step_power_lengths_match_explicit_application():
    rng = random.Random(19)
    for backend in BACKENDS:
        for _ in range(100):
            w = random_reduced(rng, rng.randrange(1, 8)).data
            core, _ = backend.cyclic_trim(w)
            step = rng.randrange(4)
            lengths = backend.step_power_lengths(core, step, 4)
            assert len(lengths) == 5
            cur = core
            for i, expected in enumerate(lengths):
                assert len(cur) == expected, (core, step, i)
                cur = backend.apply_step_cyclic(cur, step)
