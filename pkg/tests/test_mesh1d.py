"""Moving 1D mesh geometry."""

import math

import numpy as np
import pytest

from mmfd import MovingMesh1D, TimeGrid, example_5_1, static_uniform_mesh
from mmfd.errors import TangledMeshError


@pytest.fixture
def grid():
    return TimeGrid.uniform(1.0, 20)


def test_static_mesh_zero_speed(grid):
    mesh = static_uniform_mesh(grid, 4, 0.0, math.pi)
    for n in range(grid.n_steps):
        assert np.all(mesh.speeds_on(n) == 0.0)
    np.testing.assert_allclose(np.diff(mesh.positions_at(0.37)), math.pi / 4)
    assert mesh.cell_width_rate(2, 3) == 0.0


def test_example_mesh_at_zero_is_uniform(grid):
    _, _, gen = example_5_1(2 * math.pi)
    mesh = gen(grid, 40)
    np.testing.assert_allclose(mesh.positions_at(0.0),
                               np.arange(41) * math.pi / 40, atol=1e-14)


def test_example_mesh_quarter_period():
    # At t = 0.25 and omega = 2*pi the displacement factor sin(pi/2) = 1.
    grid = TimeGrid.uniform(1.0, 4)
    _, _, gen = example_5_1(2 * math.pi)
    mesh = gen(grid, 40)
    j = np.arange(41)
    expected = j * math.pi / 40 + 0.25 * np.sin(2 * j * math.pi / 40)
    np.testing.assert_allclose(mesh.positions_at(0.25), expected, atol=1e-14)


def test_positions_interpolate_linearly(grid):
    _, _, gen = example_5_1(2 * math.pi)
    mesh = gen(grid, 10)
    t0, t1 = grid.levels[3], grid.levels[4]
    tm = 0.5 * (t0 + t1)
    np.testing.assert_allclose(
        mesh.positions_at(tm),
        0.5 * (mesh.positions_at(float(t0)) + mesh.positions_at(float(t1))),
        atol=1e-14)


def test_speed_is_interval_difference_quotient(grid):
    _, _, gen = example_5_1(2 * math.pi)
    mesh = gen(grid, 10)
    n = 5
    expected = (mesh.x[n + 1] - mesh.x[n]) / grid.dt(n)
    np.testing.assert_allclose(mesh.speeds_on(n), expected)
    assert mesh.half_point_speed(3, n) == pytest.approx(
        0.5 * (expected[3] + expected[4]))


def test_all_widths_positive_for_example_mesh():
    grid = TimeGrid(np.arange(21) * 0.05)
    _, _, gen = example_5_1(2 * math.pi)
    mesh = gen(grid, 40)
    for t in np.linspace(0.0, 1.0, 50):
        assert np.all(mesh.cell_widths_at(float(t)) > 0.0)


def test_crossing_trajectories_rejected():
    grid = TimeGrid.uniform(1.0, 1)
    pos = np.array([[0.0, 1.0, 2.0], [0.0, 2.5, 2.0]])
    with pytest.raises(TangledMeshError) as err:
        MovingMesh1D(grid, pos)
    assert err.value.index == 2
    assert err.value.time == 1.0


def test_width_rate_matches_mass_sqrt_derivative():
    # d/dt sqrt((h_{j+1}+h_j)/2) computed analytically vs finite differences.
    grid = TimeGrid.uniform(1.0, 5)
    _, _, gen = example_5_1(4 * math.pi)
    mesh = gen(grid, 16)
    t = 0.137
    n = mesh.grid.interval_of(t)
    h = mesh.cell_widths_at(t)
    hd = mesh.cell_width_rates_on(n)
    analytic = (math.sqrt(2) / 4) * (hd[1:] + hd[:-1]) / np.sqrt(h[1:] + h[:-1])
    eps = 1e-6
    hp = mesh.cell_widths_at(t + eps)
    hm = mesh.cell_widths_at(t - eps)
    fd = (np.sqrt((hp[1:] + hp[:-1]) / 2) - np.sqrt((hm[1:] + hm[:-1]) / 2)) / (2 * eps)
    np.testing.assert_allclose(analytic, fd, atol=1e-8)


def test_index_and_time_bounds(grid):
    mesh = static_uniform_mesh(grid, 4, 0.0, 1.0)
    with pytest.raises(IndexError):
        mesh.position(5, 0.0)
    with pytest.raises(IndexError):
        mesh.cell_width(0, 0.0)
    with pytest.raises(ValueError):
        mesh.positions_at(2.0)


def test_trajectory_file_round_trip(tmp_path):
    grid = TimeGrid.uniform(1.0, 6)
    _, _, gen = example_5_1(2 * math.pi)
    mesh = gen(grid, 8)
    path = tmp_path / "mesh.txt"
    mesh.to_file(path)
    loaded = MovingMesh1D.from_file(path, grid)
    np.testing.assert_allclose(loaded.x, mesh.x, atol=1e-15)
