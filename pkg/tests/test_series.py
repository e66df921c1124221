import numpy as np
import pytest

from kuramoto_rc.errors import ConfigurationError, InputRangeError
from kuramoto_rc.series import TimeSeries, series_from_csv


def test_scalar_series_becomes_column():
    ts = TimeSeries(0.0, 0.5, np.arange(4.0))
    assert ts.values.shape == (4, 1)
    assert ts.n_channels == 1
    assert ts.t_end == 1.5


def test_linear_interpolation_between_samples():
    ts = TimeSeries(1.0, 1.0, np.array([0.0, 2.0, 4.0]))
    assert ts.at(1.5)[0] == pytest.approx(1.0)
    assert ts.at(2.0)[0] == pytest.approx(2.0)
    out = ts.at(np.array([1.0, 2.5]))
    assert out.shape == (2, 1)
    assert out[1, 0] == pytest.approx(3.0)


def test_out_of_range_lookup_raises():
    ts = TimeSeries(0.0, 0.1, np.zeros(10))
    with pytest.raises(InputRangeError):
        ts.at(-0.2)
    with pytest.raises(InputRangeError):
        ts.at(1.0)


def test_nan_rejected():
    with pytest.raises(ConfigurationError):
        TimeSeries(0.0, 0.1, np.array([1.0, np.nan]))
    with pytest.raises(ConfigurationError):
        TimeSeries(0.0, 0.1, np.array([1.0, np.inf]))


def test_index_of_grid_snapping():
    ts = TimeSeries(-2.0, 0.1, np.zeros(50))
    assert ts.index_of(-2.0) == 0
    assert ts.index_of(0.0) == 20
    with pytest.raises(InputRangeError):
        ts.index_of(0.05)
    with pytest.raises(InputRangeError):
        ts.index_of(3.1)


def test_csv_round_trip(tmp_path):
    rng = np.random.default_rng(3)
    ts = TimeSeries(-1.5, 0.25, rng.standard_normal((17, 3)), ("a", "b", "c"))
    path = tmp_path / "series.csv"
    ts.to_csv(path)
    back = series_from_csv(path)
    assert back.t0 == ts.t0
    assert back.dt == ts.dt
    assert back.channel_names == ts.channel_names
    np.testing.assert_array_equal(back.values, ts.values)


def test_with_t0_shifts_anchor():
    ts = TimeSeries(0.0, 0.1, np.arange(5.0))
    shifted = ts.with_t0(-3.0)
    assert shifted.t0 == -3.0
    assert shifted.at(-3.0)[0] == 0.0
    np.testing.assert_array_equal(shifted.values, ts.values)
