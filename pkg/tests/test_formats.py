import json

import numpy as np
import pytest

from qmetric.errors import FormatError, InvalidPovm, ProfileViolation
from qmetric.formats import dumps, format_float, load_povm, load_profile, load_state, save_povm, save_state
from qmetric.hilbert import BipartiteState, haar_state, make_rng
from qmetric.povm import basis_povm, random_povm


class TestDumps:
    def test_float_round_trip(self):
        for x in (np.pi, 1 / 3, 1e-300, -2.5e17):
            assert float(format_float(x)) == x

    def test_stable(self):
        obj = {"b": [1.0, 2], "a": {"x": None, "y": True}}
        assert dumps(obj) == dumps(obj)
        assert json.loads(dumps(obj)) == obj

    def test_nonfinite(self):
        assert format_float(float("nan")) == "null"


class TestStateFiles:
    def test_round_trip(self, tmp_path):
        v = haar_state(5, make_rng(2))
        save_state(tmp_path / "s.json", v)
        np.testing.assert_array_equal(load_state(tmp_path / "s.json"), v)

    def test_bipartite(self, tmp_path):
        v = haar_state(6, make_rng(2))
        save_state(tmp_path / "s.json", v, 2, 3)
        s = load_state(tmp_path / "s.json")
        assert isinstance(s, BipartiteState) and (s.dim_a, s.dim_b) == (2, 3)

    def test_missing_field(self, tmp_path):
        p = tmp_path / "s.json"
        p.write_text(json.dumps({"dim": 2}))
        with pytest.raises(FormatError, match="amplitudes"):
            load_state(p)

    def test_dim_mismatch(self, tmp_path):
        p = tmp_path / "s.json"
        p.write_text(json.dumps({"dim": 3, "amplitudes": [[1, 0], [0, 0]]}))
        with pytest.raises(FormatError, match="'dim'"):
            load_state(p)

    def test_unnormalized(self, tmp_path):
        p = tmp_path / "s.json"
        p.write_text(json.dumps({"dim": 2, "amplitudes": [[1, 0], [1, 0]]}))
        with pytest.raises(FormatError, match="norm"):
            load_state(p)

    def test_bad_split(self, tmp_path):
        p = tmp_path / "s.json"
        p.write_text(json.dumps({"dim": 2, "amplitudes": [[1, 0], [0, 0]], "dimA": 3, "dimB": 1}))
        with pytest.raises(FormatError, match="dimA"):
            load_state(p)

    def test_not_json(self, tmp_path):
        p = tmp_path / "s.json"
        p.write_text("{")
        with pytest.raises(FormatError, match="s.json"):
            load_state(p)


class TestPovmFiles:
    def test_round_trip(self, tmp_path):
        p = random_povm(3, 4, make_rng(1))
        save_povm(tmp_path / "p.json", p)
        q = load_povm(tmp_path / "p.json")
        np.testing.assert_array_equal(p.effects, q.effects)
        assert q.name == "p"

    def test_invalid(self, tmp_path):
        path = tmp_path / "p.json"
        save_povm(path, basis_povm(2))
        data = json.loads(path.read_text())
        data["effects"] = data["effects"][:1]
        path.write_text(json.dumps(data))
        with pytest.raises(InvalidPovm):
            load_povm(path)


class TestProfileFiles:
    def test_json_arccos(self, tmp_path):
        r = np.linspace(0, 1, 501)
        path = tmp_path / "fs.json"
        path.write_text(json.dumps({"name": "tab", "r": r.tolist(), "f": np.arccos(r).tolist()}))
        p = load_profile(path)
        assert p.name == "tab"
        p.validate()
        theta = np.linspace(0, np.pi / 2, 7)
        np.testing.assert_allclose(p.g(theta), theta, atol=1e-5)

    def test_csv(self, tmp_path):
        path = tmp_path / "lin.csv"
        path.write_text("r,f\n0,1\n0.5,0.5\n1,0\n")
        p = load_profile(path)
        assert p.f(0.25) == pytest.approx(0.75, abs=0.05)
        with pytest.raises(ProfileViolation):
            p.validate()

    def test_must_cover_interval(self, tmp_path):
        path = tmp_path / "short.csv"
        path.write_text("r,f\n0.2,1\n1,0\n")
        with pytest.raises(ProfileViolation):
            load_profile(path)

    def test_bad_columns(self, tmp_path):
        path = tmp_path / "bad.csv"
        path.write_text("x,y\n0,1\n1,0\n")
        with pytest.raises(FormatError):
            load_profile(path)
