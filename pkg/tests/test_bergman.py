import numpy as np
import pytest

from berezinlab import bergman_oracle as bo
from berezinlab import symbols as S


def test_identity_section_is_identity():
    sec = bo.symbol_to_section(S.ConstantKernel(1.0), 6.0, 12)
    off = sec.matrix - np.diag(np.diag(sec.matrix))
    assert np.max(np.abs(off)) < 1e-8
    assert np.allclose(np.diag(sec.matrix), 1.0, atol=1e-8)


def test_rank_one_section_has_rank_one():
    sec = bo.symbol_to_section(S.RankOneKernel(1j, 0.3 + 1.1j, 6.0), 6.0, 12)
    assert bo.numerical_rank(sec, 1e-6) == 1


def test_hermitian_symbol_gives_hermitian_matrix():
    k = S.RankOneKernel(0.2 + 1j, 0.2 + 1j, 6.0)
    m = bo.symbol_to_section(k, 6.0, 12).matrix
    assert np.max(np.abs(m - m.conj().T)) < 1e-10


def test_section_is_adjoint_compatible():
    k = S.RankOneKernel(1j, 0.4 + 0.8j, 6.0, 1 + 2j)
    a = bo.symbol_to_section(k.adjoint(), 6.0, 12).matrix
    b = bo.symbol_to_section(k, 6.0, 12).adjoint().matrix
    assert np.max(np.abs(a - b)) < 1e-8


def test_cauchy_and_area_routes_agree():
    k = S.RankOneKernel(1j, 0.4 + 0.8j, 6.0)
    a = bo.symbol_to_section(k, 6.0, 10, "cauchy").matrix
    b = bo.symbol_to_section(k, 6.0, 10, "area").matrix
    assert np.linalg.norm(a - b) / np.linalg.norm(a) < 1e-6


def test_csv_export_header():
    sec = bo.symbol_to_section(S.ConstantKernel(1.0), 6.0, 2)
    lines = sec.to_csv().splitlines()
    assert lines[0] == "row,col,re,im"
    assert len(lines) == 5
