import math

import pytest

from bqtsim.errors import ParseError, ValidationError
from bqtsim.experiments import PRESETS, SweepSpec, dump_config, parse_config
from bqtsim.experiments.config import parse_number

BASIC = "channel = dephasing\ntau = 0.1\nu_values = 0,0.5\nt = 0,10,200"


class TestParse:
    def test_basic(self):
        spec = parse_config(BASIC)
        assert spec.channel == "dephasing"
        assert spec.tau == (0.1,)
        assert spec.u_values == (0.0, 0.5)
        assert spec.t_grid == (0.0, 10.0, 200)
        assert spec.backend == "closed-form"

    def test_comments_and_blank_lines(self):
        text = "# sweep\n\nchannel = dephasing  # colored noise\ntau = 0.1\nu_values = 0\nt = 0, 1, 2\n"
        assert parse_config(text).tau == (0.1,)

    def test_damping(self):
        spec = parse_config("channel = amplitude_damping\ngamma = 1\nspectral_width = 5\nu_values = 0.3\nt = 0, 3*pi, 300")
        assert spec.model_params == (5.0,)
        assert spec.t_grid[1] == pytest.approx(3 * math.pi)

    def test_angles(self):
        spec = parse_config(BASIC + "\ntheta_a = pi/2\nphi_b = 1.5pi\ntrigger_b = pi")
        assert spec.settings.alice_state.theta == pytest.approx(math.pi / 2)
        assert spec.settings.bob_state.phi == pytest.approx(1.5 * math.pi)

    def test_t_grid_alias(self):
        assert parse_config(BASIC.replace("t =", "t_grid =")).t_grid == (0.0, 10.0, 200)

    def test_outputs(self):
        spec = parse_config(BASIC + "\noutputs = negativity, qfi_thetaA")
        assert spec.outputs == ("negativity", "qfi_thetaA")

    @pytest.mark.parametrize("text", ["pi", "2pi", "0.5*pi", "pi/4", "3 * pi / 2"])
    def test_pi_numbers(self, text):
        assert math.isfinite(parse_number(text))

    def test_pi_values(self):
        assert parse_number("pi/4") == pytest.approx(math.pi / 4)
        assert parse_number("0.5*pi") == pytest.approx(math.pi / 2)


class TestErrors:
    def test_u_out_of_range(self):
        with pytest.raises(ValidationError) as exc:
            parse_config("u_values = 1.5")
        assert exc.value.field == "u_values"

    @pytest.mark.parametrize(
        "text,line",
        [
            (BASIC + "\nmystery = 3", 5),
            (BASIC + "\ntau = 0.2", 5),
            ("channel dephasing", 1),
            ("channel = dephasing\ntau = abc", 2),
            ("channel = dephasing\ntau =", 2),
            (BASIC.replace("0,10,200", "0,10,2.5"), 4),
        ],
        ids=["unknown", "duplicate", "no-equals", "bad-number", "empty", "float-steps"],
    )
    def test_parse_errors(self, text, line):
        with pytest.raises(ParseError) as exc:
            parse_config(text)
        assert exc.value.line == line

    @pytest.mark.parametrize(
        "text,field",
        [
            ("tau = 0.1\nu_values = 0\nt = 0,1,2", "channel"),
            ("channel = noise\ntau = 0.1\nu_values = 0\nt = 0,1,2", "channel"),
            ("channel = dephasing\nu_values = 0\nt = 0,1,2", "tau"),
            ("channel = dephasing\ntau = -1\nu_values = 0\nt = 0,1,2", "tau"),
            ("channel = amplitude_damping\nu_values = 0\nt = 0,1,2", "spectral_width"),
            ("channel = dephasing\ntau = 0.1\nspectral_width = 1\nu_values = 0\nt = 0,1,2", "spectral_width"),
            (BASIC.replace("0,10,200", "5,1,10"), "t"),
            (BASIC.replace("0,10,200", "0,10,1"), "t"),
            (BASIC.replace("0,10,200", "0,10"), "t"),
            (BASIC + "\nbackend = exact", "backend"),
            (BASIC + "\noutputs = entropy", "outputs"),
            (BASIC + "\nnodes = 4", "nodes"),
            (BASIC + "\ntheta_a = 4", "theta_a"),
            (BASIC + "\ntrigger_b = -1", "trigger_b"),
        ],
    )
    def test_validation_errors(self, text, field):
        with pytest.raises(ValidationError) as exc:
            parse_config(text)
        assert exc.value.field == field


class TestRoundTrip:
    @pytest.mark.parametrize("pid", sorted(PRESETS))
    def test_presets(self, pid):
        spec = PRESETS[pid].spec
        assert parse_config(dump_config(spec)) == spec

    def test_custom(self):
        spec = parse_config(BASIC + "\ntheta_a = 0.3\nphi_a = 5.9\nbackend = oracle\nnodes = 12")
        assert parse_config(dump_config(spec)) == spec

    def test_spec_validates_directly(self):
        with pytest.raises(ValidationError):
            SweepSpec("dephasing", (0.0,), (0.0, 1.0, 5), tau=(0.1,), outputs=())
