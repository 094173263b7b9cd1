import numpy as np

from dfbench.svgplot import scatter_svg


def test_five_class_scatter_has_five_legend_entries(tmp_path):
    rng = np.random.default_rng(0)
    points = rng.normal(size=(50, 2))
    labels = np.repeat(np.arange(5), 10)
    names = ("COVID-19", "Normal", "Pneumonia-bacterial", "Pneumonia-viral", "Tuberculosis")
    path = tmp_path / "plot.svg"
    scatter_svg(points, labels, names, path, title="demo")
    svg = path.read_text()
    assert svg.count('r="6"') == 5  # legend markers
    for name in names:
        assert name in svg
    assert svg.count('r="3"') == 50  # data points


def test_three_dim_points_project_to_first_two(tmp_path):
    rng = np.random.default_rng(1)
    points = rng.normal(size=(12, 3))
    path = tmp_path / "plot3.svg"
    scatter_svg(points, np.zeros(12, dtype=int), ("only",), path)
    assert path.read_text().count('r="3"') == 12


def test_class_names_escaped(tmp_path):
    points = np.array([[0.0, 0.0], [1.0, 1.0]])
    path = tmp_path / "esc.svg"
    scatter_svg(points, [0, 1], ("a<b", "c&d"), path)
    svg = path.read_text()
    assert "a&lt;b" in svg
    assert "c&amp;d" in svg


def test_degenerate_single_point_does_not_crash(tmp_path):
    path = tmp_path / "one.svg"
    scatter_svg(np.array([[2.0, 3.0]]), [0], ("solo",), path)
    assert "circle" in path.read_text()
