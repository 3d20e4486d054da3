"""Smoke tests for the _srlrc extension module."""

import json
import os
import shutil
import tempfile

import _srlrc

TINY = json.dumps({"g": 2, "r": 2, "delta": 2, "q": 4, "m": 2, "k": 3})


def test_planner():
    entries, argmin = _srlrc.plan_field_size(31, 6, 3)
    assert argmin == 31
    assert entries[0]["base"] == 8 and entries[0]["exponent"] == 186
    assert entries[0]["pow2_exponent"] == 558
    assert entries[30]["base"] == 32 and entries[30]["pow2_exponent"] == 30

    entries7, argmin7 = _srlrc.plan_field_size(7, 6, 3)
    assert argmin7 == 7 and entries7[6]["pow2_exponent"] == 18


def test_verifiers():
    assert _srlrc.verify_mr(TINY) is True
    assert _srlrc.global_distance(TINY) == 3
    assert _srlrc.msrd_distance(TINY) == 2  # N - k + 1 = 4 - 3 + 1

    try:
        _srlrc.verify_mr(json.dumps({"g": 4, "r": 2, "delta": 2, "q": 4, "m": 2, "k": 3}))
    except _srlrc.SrlrcError as e:
        assert "q > g" in str(e)
    else:
        raise AssertionError("expected SrlrcError")


def test_shard_pipeline():
    payload = os.urandom(777)
    workdir = tempfile.mkdtemp(prefix="srlrc_py_")
    try:
        _srlrc.encode_file(TINY, payload, workdir)
        assert _srlrc.decode_file(workdir) == payload

        _srlrc.erase(workdir, pattern="1:1,2")
        assert len(_srlrc.erased_positions(workdir)) == 2
        globally = _srlrc.repair(workdir)
        assert globally == 1  # two erasures beat delta-1, so global repair ran
        assert _srlrc.decode_file(workdir) == payload

        # Reshape: split group 1 into two replication pairs and merge back.
        _srlrc.split_group(workdir, 0, [1, 1], 2, 2)
        assert _srlrc.decode_file(workdir) == payload
        _srlrc.recode_group(workdir, 0, 4, 2)
        assert _srlrc.decode_file(workdir) == payload

        manifest = json.loads(_srlrc.manifest_json(workdir))
        assert manifest["block_count"] > 0
    finally:
        shutil.rmtree(workdir, ignore_errors=True)


def main():
    test_planner()
    test_verifiers()
    test_shard_pipeline()
    print("python smoke: all checks passed")


if __name__ == "__main__":
    main()
