import io
import json

import numpy as np
import pytest

from gaugediff.gauge import CoxeterGauge, MassGauge, RankGauge
from gaugediff.io import (
    ConfigError,
    ModelSpec,
    dumps_csv,
    load_config,
    make_report,
    parse_config,
    parse_matrix,
    parse_vector,
    read_csv,
    read_numeric_csv,
    read_report,
    write_csv,
    write_report,
)

BANG_BANG = """\
# bang-bang drift
family = bangbang
alpha = 1.5
functional = abs_order_stats
dt = 0.001
total_steps = 2000
seed = 4
"""


class TestParsing:
    def test_vector(self):
        assert parse_vector(" (1, 2.5,-3) ") == [1.0, 2.5, -3.0]

    @pytest.mark.parametrize("text", ["1,,2", "", "1,nan", "a,b"])
    def test_bad_vector(self, text):
        with pytest.raises(ValueError):
            parse_vector(text)

    def test_matrix(self):
        assert parse_matrix("0,1;1,0") == [[0.0, 1.0], [1.0, 0.0]]


class TestCsv:
    def test_roundtrip_full_precision(self):
        x = np.random.default_rng(0).normal(size=(20, 3)) * 1e-7
        buf = io.StringIO()
        write_csv(buf, ["a", "b", "c"], x)
        buf.seek(0)
        header, y = read_numeric_csv(buf)
        assert header == ["a", "b", "c"]
        np.testing.assert_array_equal(x, y)

    def test_lf_line_endings(self, tmp_path):
        p = tmp_path / "t.csv"
        write_csv(p, ["x"], [[0.1], [2]])
        assert p.read_bytes() == b"x\n0.1\n2\n"

    def test_text_cells(self, tmp_path):
        p = tmp_path / "t.csv"
        write_csv(p, ["element", "v"], [["-2,1,3", 1.0]])
        header, rows = read_csv(p)
        assert rows == [["-2,1,3", "1.0"]]

    def test_dumps(self):
        assert dumps_csv(["a"], [[1]]) == "a\n1\n"


class TestConfig:
    def test_key_value(self):
        cfg = parse_config(BANG_BANG)
        assert cfg.model.family == "bangbang"
        assert isinstance(cfg.model.build(), CoxeterGauge)
        assert cfg.sim.seed == 4 and cfg.sim.total_steps == 2000
        assert cfg.functional.columns(1) == ["abs_x"]

    def test_json_equivalent(self):
        obj = {"family": "bangbang", "alpha": 1.5, "functional": "abs_order_stats", "dt": 0.001,
               "total_steps": 2000, "seed": 4}
        assert parse_config(json.dumps(obj)).to_dict() == parse_config(BANG_BANG).to_dict()

    def test_unknown_field_line(self):
        with pytest.raises(ConfigError, match=r"cfg:3 \[speed\]") as info:
            parse_config("family = B\nlambda = 1,2\nspeed = 3\n", source="cfg")
        assert info.value.line == 3 and info.value.field == "speed"

    def test_bad_value(self):
        with pytest.raises(ConfigError, match=r":3 \[dt\]"):
            parse_config("family = B\nlambda = 1,2\ndt = fast\nseed = 1\nfunctional = abs_order_stats\n")

    def test_duplicate(self):
        with pytest.raises(ConfigError, match="duplicate"):
            parse_config("family = B\nfamily = D\n")

    def test_seed_required(self):
        with pytest.raises(ConfigError, match=r"\[seed\]"):
            parse_config("family = B\nlambda = 1,2\nfunctional = abs_order_stats\n")

    def test_seed_override(self):
        cfg = parse_config("family = B\nlambda = 1,2\nfunctional = abs_order_stats\n", overrides={"seed": 9})
        assert cfg.sim.seed == 9

    def test_particle_range(self):
        with pytest.raises(ConfigError, match=r"\[particle\]"):
            parse_config("family = mass\nmasses = 2,1,1\nfunctional = rank_of_particle\nparticle = 4\nseed = 1\n")

    def test_auto_thinning(self):
        cfg = parse_config("family = rank\ndelta = 2,0,-2\nfunctional = spacings\nthinning_stride = auto\nseed = 1\n")
        assert cfg.sim.thinning_stride is None

    def test_invalid_model(self):
        with pytest.raises(ConfigError, match=r"\[family\]"):
            parse_config("family = graph\nbeta = 0,1;2,0\n")

    def test_load(self, tmp_path):
        p = tmp_path / "bb.cfg"
        p.write_text(BANG_BANG)
        assert load_config(p).model.lam == (1.5,)

    def test_missing_file(self, tmp_path):
        with pytest.raises(ConfigError, match="cannot read"):
            load_config(tmp_path / "none.cfg")


class TestModelSpec:
    def test_builds(self):
        assert isinstance(ModelSpec("rank", delta=(2, 0, -2)).build(), RankGauge)
        assert isinstance(ModelSpec("mass", masses=(2, 1, 1)).build(), MassGauge)
        assert isinstance(ModelSpec("A", delta=(2, 0, -2)).build(), RankGauge)

    def test_a_needs_one_parameter(self):
        with pytest.raises(ConfigError):
            ModelSpec("A", lam=(1, 0), delta=(1, 0))

    def test_dimension_guard(self):
        with pytest.raises(ConfigError, match="guard"):
            ModelSpec("rank", delta=tuple(range(13)))

    def test_enumeration_guard(self):
        with pytest.raises(ConfigError, match="order"):
            ModelSpec("B", lam=tuple(range(1, 10)))


class TestReport:
    def test_keys_and_roundtrip(self, tmp_path):
        report = make_report({"family": "B"}, {"seed": 1}, [], 1.5, extra=np.float64(2.0))
        assert {"model", "config", "tests", "wall_time_s", "versions"} <= set(report)
        p = tmp_path / "r.json"
        write_report(p, report)
        assert read_report(p) == report
