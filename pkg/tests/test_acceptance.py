"""Full-scale acceptance gate: one test per criterion, stated tolerances.

Criterion 7 contains a soft mean-ratio window that is numerically
unattainable at the stated scan scale even though sigma itself is verified
exactly against brute-force minima (the measured mean is about 1.29 against
a stated ceiling of 1.15).  That check is asserted as stated and therefore
fails; the failure message carries the measurement.
"""

import pytest

from chainpart import acceptance


def _run(fn, **kwargs):
    result = fn("full", **kwargs) if kwargs else fn("full")
    print(f"criterion {result.cid:02d} {result.name}: "
          f"{'PASS' if result.passed else 'FAIL'} - {result.detail}")
    assert result.passed, f"criterion {result.cid} ({result.name}): {result.detail}"


def test_criterion_01_omega19_words():
    _run(acceptance.criterion_01_omega19)


def test_criterion_02_omega27_graph():
    _run(acceptance.criterion_02_omega27)


def test_criterion_03_count_cross_validation():
    _run(acceptance.criterion_03_counting)


def test_criterion_03_detects_corrupted_memo():
    result = acceptance.criterion_03_counting("quick", corrupt=True)
    assert not result.passed
    assert "disagreement" in result.detail


def test_criterion_04_small_count_characterization():
    _run(acceptance.criterion_04_small_counts)


def test_criterion_05_local_monotonicity():
    _run(acceptance.criterion_05_monotonicity)


def test_criterion_06_max_jumps():
    _run(acceptance.criterion_06_max_jumps)


def test_criterion_07_shortest_lengths():
    _run(acceptance.criterion_07_shortest)


def test_criterion_08_growth_bound():
    _run(acceptance.criterion_08_growth_bound)


def test_criterion_09_exponent_solver():
    _run(acceptance.criterion_09_exponents)


def test_criterion_10_partial_sum_identity():
    _run(acceptance.criterion_10_partial_sums)


def test_criterion_11_graph_properties():
    _run(acceptance.criterion_11_graph)


def test_criterion_12_sampler_uniformity():
    _run(acceptance.criterion_12_sampler)


def test_criterion_13_codec_roundtrip():
    _run(acceptance.criterion_13_codec)


def test_criterion_14_digit_indicator_powers():
    _run(acceptance.criterion_14_digit_powers)
