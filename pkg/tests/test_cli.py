import io
import json
import os

import pytest

from slarc import __version__
from slarc.cache import Cache, cache_get, cache_key, cache_put
from slarc.cli import run
from slarc.diagram import Diagram, identity
from slarc.render import render_svg, render_text


def call(*argv, cache=None):
    out, err = io.StringIO(), io.StringIO()
    args = list(argv) + (["--cache-dir", str(cache)] if cache else ["--no-cache"])
    code = run(args, stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


def call_json(*argv, **kw):
    code, out, err = call(*argv, "--json", **kw)
    return code, (json.loads(out) if out else None), err


class TestCommands:
    def test_basis(self):
        code, out, _ = call("basis", "--left", "2", "--right", "1")
        assert code == 0 and out.splitlines()[0].startswith("3 diagrams")
        code, js, _ = call_json("basis", "--left", "3", "--right", "2", "--width", "2")
        assert js["count"] == "3"

    def test_flags_before_subcommand(self):
        code, out, _ = call("--json", "--field", "fp:7", "basis", "--left", "1", "--right", "1")
        assert code == 0 and json.loads(out)["count"] == "2"

    def test_mul(self, tmp_path):
        a, b = tmp_path / "a.json", tmp_path / "b.json"
        a.write_text(json.dumps(identity(2).to_json()))
        b.write_text(json.dumps(identity(1).to_json()))
        code, js, _ = call_json("mul", str(a), str(b))
        assert code == 0 and js["terms"] == []
        c = Diagram(1, 1, (), ())
        a.write_text(json.dumps(c.to_json()))
        code, js, _ = call_json("mul", str(a), str(a), "--flavor", "plus")
        assert code == 0 and js["terms"][0]["diagram"] == c.to_json()
        code, js, _ = call_json("mul", str(a), str(a))
        assert js["terms"] == []

    def test_module_dims(self):
        code, js, _ = call_json("module", "dims", "--kind", "standard", "--n", "2", "--max-weight", "4")
        assert js["dims"] == ["0", "0", "1", "3", "6"]
        code, js, _ = call_json("module", "dims", "--kind", "truncation", "--n", "3", "--k", "1", "--max-weight", "2")
        assert js["dims"][2] == "7"

    def test_resolve(self):
        code, js, _ = call_json("resolve", "standard", "2", "--verify", "--max-weight", "5")
        assert code == 0 and js["verification"]["d2"] and js["verification"]["exact"]
        code, js, _ = call_json("resolve", "simple", "1", "--by", "projective", "--t-max", "3", "--verify")
        assert code == 0 and js["verification"]["exact"]
        code, js, _ = call_json("resolve", "simple", "1", "--by", "standard", "--t-max", "4", "--verify")
        assert code == 0

    def test_ext(self):
        code, js, _ = call_json("ext", "standard", "3", "standard", "1")
        assert js["computed"] == {"0": "3", "1": "6", "2": "3", "3": "0"}
        code, js, _ = call_json("ext", "simple", "1", "simple", "0", "--t-max", "3")
        assert js["computed"]["3"] == "2"
        code, _, err = call("ext", "simple", "1", "simple", "2")
        assert code == 2 and "supported" in err

    def test_cartan_bgg(self):
        code, js, _ = call_json("cartan", "--size", "3", "--check-factorization")
        assert code == 0 and js["cartan"] == [["1", "1", "1"], ["1", "2", "3"], ["1", "3", "6"]]
        code, js, _ = call_json("bgg", "--max", "4")
        assert code == 0 and js["bgg_ok"]

    def test_functor_and_cable(self):
        code, js, _ = call_json("functor", "fk", "--k", "2", "--apply", "standard:3")
        assert code == 0 and js["output"] == "0"
        code, js, _ = call_json("functor", "res", "--apply", "projective:2", "--max-weight", "4")
        assert code == 0 and js["iso_verified"]
        code, js, _ = call_json("functor", "ind", "--apply", "standard:1", "--max-weight", "3")
        assert code == 0 and js["ses_verified"]
        code, js, _ = call_json("cable", "--k", "2", "standard", "2", "--max-weight", "3")
        assert code == 0 and js["decomposition"] == {"M_1": "1", "M_2": "4"}

    def test_k0(self):
        code, js, _ = call_json("k0", "convert", "x^3", "--to", "standard")
        assert js["coeffs"] == ["1", "3", "3", "1"]
        code, js, _ = call_json("k0", "op", "--name", "res", "x^3")
        assert js["result"] == "x^3 + x^2 + x + 1"
        code, js, _ = call_json("k0", "inner", "x^2", "x^3")
        assert js["inner"] == "10"
        code, _, _ = call("k0", "convert", "x^-2")
        assert code == 2

    def test_aplus(self):
        code, js, _ = call_json("aplus", "decompose", "2")
        assert js["multiplicities"] == {"0": "1", "1": "2", "2": "1"}
        code, js, _ = call_json("aplus", "homtable", "--max", "3")
        assert code == 0 and js["delta"]
        code, js, _ = call_json("aplus", "k0", "3")
        assert js["class"] == "x^3 - 3*x^2 + 3*x - 1"

    def test_render(self, tmp_path):
        f = tmp_path / "d.json"
        f.write_text(json.dumps(Diagram(3, 1, (2,), (1,)).to_json()))
        code, out, _ = call("render", str(f))
        assert code == 0 and "larc  L2 -- R1" in out
        code, out, _ = call("render", str(f), "--svg")
        assert out.startswith("<svg") and out.count('class="larc"') == 1

    def test_verify_suite(self):
        code, js, _ = call_json("verify", "basis", "--max-n", "3", "--max-weight", "3")
        assert code == 0 and js["summary"]["failed"] == "0"
        ids = [c["id"] for c in js["checks"]]
        assert ids == sorted(ids)


class TestErrors:
    @pytest.mark.parametrize("argv", [
        ["basis", "--left", "x", "--right", "1"],
        ["basis", "--left", "-1", "--right", "1"],
        ["module", "dims", "--kind", "truncation", "--n", "2"],
        ["functor", "res", "--apply", "standard"],
        ["functor", "res", "--apply", "weird:2"],
        ["cable", "--k", "0", "standard", "1"],
        ["--field", "fp:9", "basis", "--left", "1", "--right", "1"],
        ["nosuch"],
    ])
    def test_malformed_exit_2(self, argv):
        assert call(*argv)[0] == 2

    def test_bad_json_files(self, tmp_path):
        f = tmp_path / "bad.json"
        f.write_text("{not json")
        assert call("mul", str(f), str(f))[0] == 2
        f.write_text(json.dumps({"left": 2, "right": 1, "larc_left": [1, 2], "larc_right": [1]}))
        assert call("render", str(f))[0] == 2
        assert call("render", str(tmp_path / "missing.json"))[0] == 2

    def test_verification_failure_exit_1(self, monkeypatch):
        from slarc import verify

        def broken(max_n, max_weight):
            r = verify.Report("basis")
            r.add("basis.fake", {}, 1, 2)
            return r

        monkeypatch.setitem(verify.SUITES, "basis", broken)
        code, js, _ = call_json("verify", "basis")
        assert code == 1 and js["summary"]["failed"] == "1"


class TestCache:
    def test_reuse_reported(self, tmp_path):
        argv = ("resolve", "standard", "3", "--verify", "--json")
        c1, out1, err1 = call(*argv, cache=tmp_path)
        c2, out2, err2 = call(*argv, cache=tmp_path)
        assert c1 == c2 == 0 and out1 == out2
        assert "cache hit" not in err1 and "cache hit" in err2

    def test_poisoned_entry_recomputed(self, tmp_path):
        argv = ("ext", "standard", "2", "simple", "1", "--json")
        _, out1, _ = call(*argv, cache=tmp_path)
        files = [p for p in tmp_path.rglob("*.json")]
        assert len(files) == 1
        files[0].write_text(files[0].read_text()[:10])
        code, out2, err2 = call(*argv, cache=tmp_path)
        assert code == 0 and out2 == out1 and "cache hit" not in err2

    def test_no_cache(self, tmp_path, monkeypatch):
        monkeypatch.setenv("SLARC_CACHE", str(tmp_path))
        out, err = io.StringIO(), io.StringIO()
        run(["bgg", "--max", "2", "--no-cache"], stdout=out, stderr=err)
        assert not list(tmp_path.rglob("*.json"))

    def test_env_var(self, tmp_path, monkeypatch):
        monkeypatch.setenv("SLARC_CACHE", str(tmp_path))
        run(["bgg", "--max", "2"], stdout=io.StringIO(), stderr=io.StringIO())
        assert len(list(tmp_path.rglob("*.json"))) == 1

    def test_key_depends_on_everything(self):
        base = cache_key("ext", {"n": 1}, "q", __version__)
        assert base != cache_key("ext", {"n": 2}, "q", __version__)
        assert base != cache_key("ext", {"n": 1}, "fp:7", __version__)
        assert base != cache_key("ext", {"n": 1}, "q", "0.0.0")
        assert base == cache_key("ext", {"n": 1}, "q", __version__)

    def test_api(self, tmp_path):
        c = Cache(tmp_path)
        cache_put(c, "ab" * 32, {"x": ["1"]})
        assert cache_get(c, "ab" * 32) == {"x": ["1"]}
        assert cache_get(c, "cd" * 32) is None

    @pytest.mark.skipif(hasattr(os, "geteuid") and os.geteuid() == 0, reason="root can write anywhere")
    def test_unwritable_directory_disables(self, tmp_path):
        ro = tmp_path / "ro"
        ro.mkdir()
        ro.chmod(0o500)
        assert not Cache(ro / "sub").enabled

    def test_unwritable_path_disables(self, tmp_path):
        blocker = tmp_path / "file"
        blocker.write_text("")
        c = Cache(blocker / "sub")
        assert not c.enabled
        c.put("k", 1)
        assert c.get("k") is None


def test_render_functions():
    d = Diagram(2, 2, (1,), (2,))
    text = render_text(d)
    assert text.splitlines() == ["2 left, 2 right, width 1", "larc  L1 -- R2", "sarc  L2 -)", "sarc  (- R1"]
    svg = render_svg(d)
    assert svg.count('class="sarc"') == 2 and svg.endswith("</svg>")
