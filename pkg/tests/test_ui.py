# Copyright 2026 The QRAN Authors

# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at

# http://www.apache.org/licenses/LICENSE-2.0

# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""
End-to-end tests of the command line interface
"""
import math
import numpy as np
import pytest
from numpy.testing import assert_array_equal

import qran
from qran import config, plant, robustness, ui

RESONANCE = """
CONFIG strategy.kind STRING resonance
CONFIG strategy.omega0 FLOAT 1.5707963267948966
CONFIG grid.steps INT 200
"""

AE_SWEEP = """
CONFIG strategy.kind STRING allen-eberly
CONFIG strategy.delta0 FLOAT 2
CONFIG strategy.omega0 FLOAT 1
CONFIG strategy.T FLOAT 5
CONFIG box.lower FLOAT 1.9 0.9
CONFIG box.upper FLOAT 2.1 1.1
CONFIG sweep.resolution INT 3 3
CONFIG sweep.epsilon FLOAT 1e-2
"""

@pytest.fixture
def write(tmp_path):
	"""
	Writes a configuration into the test's directory and returns its path
	"""
	def writer(text: str, name: str = "run.config") -> str:
		path = tmp_path / name
		path.write_text(text)
		return str(path)
	return writer

def run(*args) -> int:
	return qran.main(list(args) + ["--debug"])

def value(out: str, key: str) -> str:
	"""
	The value printed for `key` in a TYAML summary
	"""
	for line in out.splitlines():
		if line.strip().startswith(key + ":"):
			return line.split(":", 1)[1].strip()
	raise KeyError(key)


class TestSimulate:
	def test_resonance_flip(self, write, capsys):
		assert run("simulate", "-c", write(RESONANCE)) == qran.EXIT_OK
		out = capsys.readouterr().out
		assert out.splitlines()[:2] == ["%TYAML 1.1", "---"]
		assert float(value(out, "perr")) <= 1e-12
		assert float(value(out, "perr_analytic")) <= 1e-12
		assert float(value(out, "norm_defect")) <= 1e-12
		assert value(out, "kind") == "resonance"

	def test_allen_eberly_defaults(self, write, capsys):
		assert run("simulate", "-c", write("CONFIG strategy.kind STRING allen-eberly")) == qran.EXIT_OK
		out = capsys.readouterr().out
		assert float(value(out, "perr")) == pytest.approx(7.4418e-3, abs=1e-3)
		populations = value(out, "adiabatic_populations").strip("[]").split(", ")
		assert sum(float(p) for p in populations) == pytest.approx(1)

	def test_landau_zener_without_coupling(self, write, capsys):
		text = "CONFIG strategy.kind STRING landau-zener\nCONFIG strategy.omega0 FLOAT 0\nCONFIG grid.steps INT 100"
		assert run("simulate", "-c", write(text)) == qran.EXIT_OK
		out = capsys.readouterr().out
		assert float(value(out, "perr")) == pytest.approx(1, abs=1e-12)
		assert float(value(out, "perr_analytic")) == 1

	def test_landau_zener_without_detuning(self, write, capsys):
		text = "CONFIG strategy.kind STRING landau-zener\nCONFIG strategy.delta0 FLOAT 0\nCONFIG grid.steps INT 200"
		assert run("simulate", "-c", write(text)) == qran.EXIT_OK
		out = capsys.readouterr().out
		# a constant sigma_x drive over the window [-8, 8]
		assert float(value(out, "perr")) == pytest.approx(math.cos(16)**2, abs=1e-10)
		assert value(out, "perr_analytic") == "undefined"

	def test_summary_file(self, write, tmp_path, capsys):
		path = tmp_path / "summary.yaml"
		assert run("simulate", "-c", write(RESONANCE), "-o", str(path)) == qran.EXIT_OK
		assert path.read_text() == capsys.readouterr().out

	def test_undefined_adiabatic_frame(self, write, capsys):
		text = "CONFIG strategy.kind STRING custom\nCONFIG strategy.envelope STRING linear\n"\
		       "CONFIG strategy.detuning_envelope STRING linear\nCONFIG grid.s_start FLOAT -1\n"\
		       "CONFIG grid.s_end FLOAT 0\nCONFIG grid.steps INT 50"
		assert run("simulate", "-c", write(text)) == qran.EXIT_OK
		out = capsys.readouterr().out
		assert value(out, "adiabatic_populations") == "undefined"
		with pytest.raises(KeyError):
			value(out, "perr_analytic")

	def test_numerical_failure(self, write, capsys):
		text = "CONFIG strategy.kind STRING landau-zener\nCONFIG strategy.delta0 FLOAT 1e200\nCONFIG grid.steps INT 20"
		with pytest.warns(RuntimeWarning):
			assert run("simulate", "-c", write(text)) == qran.EXIT_NUMERIC
		assert "Numerical failure" in capsys.readouterr().err

	def test_unwritable_output(self, write, tmp_path):
		assert run("simulate", "-c", write(RESONANCE), "-o", str(tmp_path)) == qran.EXIT_CONFIG


class TestSweep:
	def test_robust(self, write, tmp_path, capsys):
		path = tmp_path / "map.csv"
		assert run("sweep", "-c", write(AE_SWEEP), "-j", "1", "-o", str(path)) == qran.EXIT_OK
		out = capsys.readouterr().out
		assert value(out, "is_robust") == "true"
		assert float(value(out, "inside_fraction")) == 1
		assert int(value(out, "failed_cells")) == 0

		lines = path.read_text().split('\n')
		assert lines[0] == "theta1,theta2,perr" and lines[-1] == ''
		rows = ui.readErrorMapCSV(str(path))
		assert len(rows) == 9
		assert rows[0][:2] == (1.9, 0.9) and rows[2][:2] == (1.9, 1.1) and rows[8][:2] == (2.1, 1.1)
		assert max(row[2] for row in rows) == float(value(out, "pmax"))
		assert all(0 <= row[2] <= 1e-2 for row in rows)

	def test_csv_reproduces_the_map(self, write, tmp_path):
		cfg = config.validate(config.readRunConfig(write(AE_SWEEP)), requireBox=True)
		errorMap = robustness.sweep(cfg.strategy, cfg.box, cfg.resolution, cfg.strategy.T, cfg.initial, cfg.target)
		path = str(tmp_path / "map.csv")
		ui.writeCSV(("theta1", "theta2", "perr"), ui.errorMapRows(errorMap), path)
		rows = ui.readErrorMapCSV(path)
		assert [row[:2] for row in rows] == [theta for _, theta in errorMap.cells()]
		assert np.array([row[2] for row in rows]).tobytes() == errorMap.values.ravel().tobytes()

	def test_csv_keeps_failed_cells(self, tmp_path):
		values = [0.1, math.nan, 1 / 3, 2e-17, 0.5, math.nan]
		errorMap = robustness.ErrorMap(plant.parameterBox([0, 0], [1, 1]), (2, 3), values, 1.0, "test")
		path = tmp_path / "map.csv"
		ui.writeCSV(("theta1", "theta2", "perr"), ui.errorMapRows(errorMap), str(path))
		assert path.read_text().split('\n')[2] == "0,0.5,nan"
		readBack = np.array([row[2] for row in ui.readErrorMapCSV(str(path))])
		assert_array_equal(readBack, errorMap.values.ravel())
		assert readBack[[0, 2, 3]].tolist() == [0.1, 1 / 3, 2e-17]

	def test_not_robust(self, write, capsys):
		text = AE_SWEEP.replace("strategy.T FLOAT 5", "strategy.T FLOAT 1").replace("1e-2", "1e-6")
		assert run("sweep", "-c", write(text), "-j", "2", "--steps", "400") == qran.EXIT_NOT_ROBUST
		captured = capsys.readouterr()
		assert value(captured.err, "is_robust") == "false"

		# without an output file, stdout is nothing but the error map
		lines = captured.out.split('\n')
		assert lines[0] == "theta1,theta2,perr" and lines[-1] == ''
		assert len(lines) == 11
		assert all(len(line.split(',')) == 3 for line in lines[1:-1])

	def test_resonance_nominal_cell(self, write, capsys):
		text = RESONANCE + "CONFIG box.lower FLOAT 1.5607963267948966 0.99\n"\
		                   "CONFIG box.upper FLOAT 1.5807963267948966 1.01\nCONFIG sweep.resolution INT 1 1\n"
		assert run("sweep", "-c", write(text), "-j", "1") == qran.EXIT_OK
		err = capsys.readouterr().err
		assert float(value(err, "pmax")) <= 1e-12
		expected = math.cos((math.pi / 2 + 0.01) * 1.01)**2
		assert float(value(err, "pmax_analytic")) == pytest.approx(expected, rel=1e-9)

	def test_resonance_far_from_zeros(self, write, capsys):
		text = RESONANCE + "CONFIG box.lower FLOAT 1 1\nCONFIG box.upper FLOAT 1.2 1.2\nCONFIG sweep.resolution INT 5 5\n"
		assert run("sweep", "-c", write(text), "-j", "1") == qran.EXIT_NOT_ROBUST
		err = capsys.readouterr().err
		assert value(err, "worst_theta") == "[1, 1]"
		assert float(value(err, "pmax")) == pytest.approx(math.cos(1)**2, abs=1e-10)
		assert float(value(err, "inside_fraction")) == 0

	def test_box_required(self, write, capsys):
		assert run("sweep", "-c", write(RESONANCE)) == qran.EXIT_CONFIG
		assert "box.lower" in capsys.readouterr().err


class TestCompare:
	def test_resonance_nominal(self, write, capsys):
		assert run("compare", "-c", write(RESONANCE)) == qran.EXIT_OK
		captured = capsys.readouterr()
		assert captured.out.startswith("theta1,theta2,perr_numeric,perr_analytic,abs_diff\n")
		assert len(captured.out.splitlines()) == 2
		assert float(value(captured.err, "max_abs_diff")) <= 1e-12
		assert int(value(captured.err, "cells")) == 1

	def test_summary_follows_output_file(self, write, tmp_path, capsys):
		path = tmp_path / "compare.csv"
		assert run("compare", "-c", write(RESONANCE), "-o", str(path)) == qran.EXIT_OK
		out = capsys.readouterr().out
		assert out.startswith("%TYAML 1.1\n")
		assert int(value(out, "cells")) == 1
		assert path.read_text().startswith("theta1,theta2,perr_numeric,perr_analytic,abs_diff\n")

	def test_allen_eberly(self, write, capsys):
		text = "CONFIG strategy.kind STRING allen-eberly\nCONFIG strategy.T FLOAT 2"
		assert run("compare", "-c", write(text), "-j", "1") == qran.EXIT_OK
		assert float(value(capsys.readouterr().err, "max_abs_diff")) <= 1e-3

	def test_landau_zener_decay(self, write, capsys):
		text = "CONFIG strategy.kind STRING landau-zener\nCONFIG compare.t_min FLOAT 1\n"\
		       "CONFIG compare.t_max FLOAT 2.5\nCONFIG compare.t_points INT 8"
		assert run("compare", "-c", write(text), "-j", "1", "--smax", "40", "--steps", "16000") == qran.EXIT_OK
		err = capsys.readouterr().err
		assert float(value(err, "fitted_slope")) < 0
		assert float(value(err, "printed_slope")) == pytest.approx(-math.pi)

	def test_custom_is_unsupported(self, write, capsys):
		assert run("compare", "-c", write("CONFIG strategy.kind STRING custom")) == qran.EXIT_CONFIG
		assert "Configuration error" in capsys.readouterr().err


class TestTeps:
	def test_example(self, capsys):
		assert run("teps", "-e", "1e-3", "--delta0", "2", "--omega0", "1") == qran.EXIT_OK
		assert float(capsys.readouterr().out) == pytest.approx(4.926, abs=1e-3)

	def test_invalid(self, capsys):
		assert run("teps", "--delta0", "1", "--omega0", "2") == qran.EXIT_CONFIG
		assert "Invalid arguments" in capsys.readouterr().err


class TestMain:
	def test_version(self, capsys):
		assert qran.main(["--version"]) == qran.EXIT_OK
		assert qran.__version__ in capsys.readouterr().out

	def test_no_command(self):
		assert qran.main([]) == qran.EXIT_CONFIG

	def test_config_required(self):
		assert run("simulate") == qran.EXIT_CONFIG

	def test_missing_file(self, tmp_path):
		assert run("simulate", "-c", str(tmp_path / "missing.config")) == qran.EXIT_CONFIG

	def test_bad_config(self, write, capsys):
		assert run("simulate", "-c", write("CONFIG strategy.kind STRING rabi")) == qran.EXIT_CONFIG
		assert "strategy.kind" in capsys.readouterr().err

	def test_negative_threads(self, write):
		assert run("sweep", "-c", write(AE_SWEEP), "-j", "-1") == qran.EXIT_CONFIG
