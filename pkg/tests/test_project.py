import copy

import numpy as np
import pytest

from thermleak.errors import ProjectValidationError
from thermleak.gridfile import csv_to_grid, grid_to_csv, read_grid, write_grid
from thermleak.leakage import gate_static_power
from thermleak.project import (
    UM,
    blocks,
    cosim_config,
    device_params,
    gate_network,
    load_project,
    parse_project,
    parse_vector,
    scene_template,
)
from thermleak.thermal import ThermalGrid, sample_grid
from thermleak.verify import three_block_scene


class TestParsing:
    def test_demo_project_parses(self, demo_project_dict):
        project = parse_project(demo_project_dict)
        assert set(project.gates) == {"inv", "nand2"}
        assert [b.id for b in project.blocks] == ["alu", "cache", "io"]

    def test_load_from_file(self, demo_project_path):
        assert load_project(demo_project_path).die.width == 1000.0

    def test_missing_file(self, tmp_path):
        with pytest.raises(ProjectValidationError, match="cannot read"):
            load_project(tmp_path / "nope.json")

    def test_malformed_json(self, tmp_path):
        bad = tmp_path / "bad.json"
        bad.write_text("{not json")
        with pytest.raises(ProjectValidationError, match="cannot read"):
            load_project(bad)

    def test_unknown_key_rejected(self, demo_project_dict):
        data = copy.deepcopy(demo_project_dict)
        data["die"]["thicknes"] = 1.0
        with pytest.raises(ProjectValidationError):
            parse_project(data)

    def test_bad_input_vector_characters(self, demo_project_dict):
        data = copy.deepcopy(demo_project_dict)
        data["blocks"][0]["gates"][0]["inputs"] = "1x"
        with pytest.raises(ProjectValidationError):
            parse_project(data)


class TestCrossReferences:
    def test_unknown_gate_names_block(self, demo_project_dict):
        data = copy.deepcopy(demo_project_dict)
        data["blocks"][1]["gates"][0]["gate"] = "xor9"
        with pytest.raises(ProjectValidationError, match="'cache'.*'xor9'"):
            parse_project(data)

    def test_wrong_vector_length(self, demo_project_dict):
        data = copy.deepcopy(demo_project_dict)
        data["blocks"][0]["gates"][1]["inputs"] = "000"
        with pytest.raises(ProjectValidationError, match="'alu'.*'nand2'"):
            parse_project(data)

    def test_block_off_die(self, demo_project_dict):
        data = copy.deepcopy(demo_project_dict)
        data["blocks"][2]["x"] = 950.0  # io block, 200 wide: right edge at 1050
        with pytest.raises(ProjectValidationError, match="'io'.*outside"):
            parse_project(data)

    def test_input_index_out_of_range(self, demo_project_dict):
        data = copy.deepcopy(demo_project_dict)
        data["gates"]["inv"]["pull_down"][0][0]["input"] = 3
        with pytest.raises(ProjectValidationError, match="'inv'.*index 3"):
            parse_project(data)


class TestConversion:
    def test_unit_conversions(self, demo_project_dict):
        project = parse_project(demo_project_dict)
        scene = scene_template(project)
        assert scene.die_w == 1000.0 * UM
        assert scene.t_sub == 500.0 * UM
        blks = blocks(project)
        assert blks[0].x == 250.0 * UM
        assert blks[0].dynamic_power == pytest.approx(0.4)

    def test_device_params(self, demo_project_dict):
        project = parse_project(demo_project_dict)
        nmos = device_params(project.technology.nmos, "nmos")
        assert nmos.polarity == "nmos"
        assert nmos.l == pytest.approx(0.12e-6)

    def test_gate_network_usable_for_leakage(self, demo_project_dict):
        project = parse_project(demo_project_dict)
        net = gate_network("nand2", project.gates["nand2"])
        nmos = device_params(project.technology.nmos, "nmos")
        pmos = device_params(project.technology.pmos, "pmos")
        result = gate_static_power(net, (0, 0), nmos, pmos, 1.2, 300.0)
        assert result.side == "pull_down"
        assert result.i_off > 0.0

    def test_parse_vector(self):
        assert parse_vector("0110") == (0, 1, 1, 0)

    def test_cosim_config(self, demo_project_dict):
        cfg = cosim_config(parse_project(demo_project_dict))
        assert (cfg.tol, cfg.max_iter, cfg.damping, cfg.runaway_limit) == (
            0.01,
            50,
            1.0,
            500.0,
        )


class TestGridFile:
    def grid(self):
        return sample_grid(three_block_scene(), 9, 7, mode="rise")

    def test_round_trip_bit_exact(self):
        grid = self.grid()
        back = csv_to_grid(grid_to_csv(grid))
        assert back.values.shape == grid.values.shape
        assert np.array_equal(back.values, grid.values)
        assert (back.nx, back.ny, back.dx, back.dy, back.mode) == (
            grid.nx,
            grid.ny,
            grid.dx,
            grid.dy,
            grid.mode,
        )

    def test_serialized_round_trip_stable(self):
        text = grid_to_csv(self.grid())
        assert grid_to_csv(csv_to_grid(text)) == text

    def test_file_round_trip(self, tmp_path):
        grid = self.grid()
        path = tmp_path / "grid.csv"
        write_grid(grid, path)
        assert np.array_equal(read_grid(path).values, grid.values)

    def test_header_fields(self):
        text = grid_to_csv(self.grid())
        head = [line for line in text.splitlines() if line.startswith("#")]
        assert head[0] == "# nx=9"
        assert head[1] == "# ny=7"
        assert "# mode=rise" in head
        assert "# units=K" in head

    def test_missing_header_rejected(self):
        text = grid_to_csv(self.grid()).replace("# nx=9\n", "")
        with pytest.raises(ProjectValidationError, match="nx"):
            csv_to_grid(text)

    def test_shape_mismatch_rejected(self):
        lines = grid_to_csv(self.grid()).splitlines()
        with pytest.raises(ProjectValidationError, match="does not match"):
            csv_to_grid("\n".join(lines[:-1]))
