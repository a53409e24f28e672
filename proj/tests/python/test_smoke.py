import pytest

import qmoduli


def test_poincare_coefficients():
    assert qmoduli.poincare_coeffs() == [1, 3, 8, 10, 11, 11, 11, 11, 11, 11, 10, 8, 3, 1]
    b = qmoduli.betti()
    assert b["euler"] == 110
    assert b["degree"] == 13


def test_point_count_polynomials():
    assert qmoduli.eval_poincare(2) == 58311
    assert qmoduli.eval_poincare(7) > 2**32
    assert qmoduli.grass_poincare(2, 4) == [1, 1, 2, 1, 1]
    assert qmoduli.proj_poincare(3) == [1, 1, 1, 1]
    with pytest.raises(ValueError):
        qmoduli.grass_poincare(5, 4)


def test_hilbert():
    m0 = qmoduli.hilbert([[(0, 0), (0, 0)], [(-1, -2), (-1, -1)]])
    assert m0["polynomial"] == "3m+2n+2"
    assert m0["chi"] == 2
    curve = qmoduli.hilbert([[(0, 0)], [(-2, -3)]])
    assert (curve["polynomial"], curve["chi"], curve["genus"]) == ("3m+2n-1", -1, 2)
    with pytest.raises(ValueError):
        qmoduli.hilbert([])


def test_det2_of_proportional_columns_vanishes():
    # phi12 = xz + yw, phi22 = xw, u = z
    phi12, phi22 = [1, 0, 0, 1], [0, 1, 0, 0]
    phi11 = [1, 0, 0, 0, 1, 0]
    phi21 = [0, 1, 0, 0, 0, 0]
    assert qmoduli.det2(3, phi11, phi12, phi21, phi22) == [0] * 12


def test_planes_and_fibers():
    planes = qmoduli.planes(2)
    assert len(planes) == 35
    kinds = [p["plane_type"]["kind"] for p in planes]
    assert kinds.count("shared_right") == 3
    assert kinds.count("shared_left") == 3
    xz, xw, yz = [1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0]
    assert qmoduli.fiber_count(2, xz, yz) == 1
    assert qmoduli.fiber_count(2, xz, xw) == 3
    assert qmoduli.fiber_count(3, xz, xw, method="kernel") == 4
    assert qmoduli.raw_count(2, xz, xw) == 16
    with pytest.raises(ValueError):
        qmoduli.fiber_count(2, xz, xz)


def test_locus_and_moduli_counts():
    s = qmoduli.locus_summary(3, workers=2)
    assert s["X_count"] == 20 and s["planes"] == 130 and s["ok"]
    c = qmoduli.moduli_point_count(5)
    assert c["agree"]
    assert c["stratified"] == qmoduli.eval_poincare(5)
    with pytest.raises(ValueError):
        qmoduli.locus_summary(11)
