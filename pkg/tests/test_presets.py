import numpy as np
import pytest

from volpot import (disk, get_preset, laplace_fundamental, read_samples_csv,
                    tabulated_from_csv, volume_potential, volume_rule,
                    write_samples_csv)


def test_preset_values_and_gradients():
    y = np.array([[0.3, -0.2], [0.0, 0.5]])
    assert np.allclose(get_preset("one")(y), [1.0, 1.0])
    assert np.allclose(get_preset("x1")(y), [0.3, 0.0])
    assert np.allclose(get_preset("x1sq")(y), [0.09, 0.0])
    assert np.allclose(get_preset("abs_x1")(y), [0.3, 0.0])
    ck = get_preset("cos_k", k=2.0)
    assert np.allclose(ck(y), np.cos(2.0 * y[:, 0]))
    assert np.allclose(ck.grad(y)[:, 0], -2.0 * np.sin(2.0 * y[:, 0]))


def test_unknown_preset():
    with pytest.raises(KeyError):
        get_preset("nope")


def test_samples_csv_roundtrip(tmp_path):
    pts = np.array([[0.1, 0.2], [0.3, -0.4], [-0.5, 0.0]])
    vals = np.array([1.0, -2.5, 0.25])
    path = tmp_path / "cloud.csv"
    write_samples_csv(path, pts, vals)
    assert path.read_text().splitlines()[0] == "x1,x2,value"
    pts2, vals2 = read_samples_csv(path)
    assert np.array_equal(pts, pts2)
    assert np.array_equal(vals, vals2)


def test_tabulated_density_on_quadrature_nodes(tmp_path):
    # tabulate f = 1 on the disk's own quadrature nodes, reuse for a potential
    dom = disk()
    vq = volume_rule(dom, 32)
    path = tmp_path / "density.csv"
    write_samples_csv(path, vq.nodes, np.ones(len(vq.weights)),
                      header_prefix="y")
    assert path.read_text().splitlines()[0] == "y1,y2,value"
    density = tabulated_from_csv(path)
    fs = laplace_fundamental(2)
    val = volume_potential(fs, dom, density, np.zeros(2), 32)
    assert val.real == pytest.approx(-0.25, abs=1e-7)
