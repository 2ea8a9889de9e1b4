"""Schubert-cell homology of oriented 3-plane Grassmannians, the rank <= 1 frame
variety, and the pointwise curvature-reducibility test for gauge connections."""

__version__ = "0.1.0"

from .intlattice import IntMatrix, integer_kernel_basis, rational_rank, smith_normal_form
from .schubert import CellIndex, Chain, boundary, boundary_matrix, cell, enumerate_cells, s_cycle
from .homology import class_of, euler_consistency, homology_group, is_cycle
from .frames import (
    CellPoint,
    classify_cell,
    embed_cell_point,
    gram_schmidt,
    intersection_sign_complex,
    intersection_sign_real,
    nu_intersect_cell,
    nu_membership,
    orientation_ledger,
    y_membership_complex,
)
from .gauge import (
    ConnectionSpec,
    asd_project,
    bpst_connection,
    classify_boundary_case,
    curvature_at,
    flat_connection,
    linear_connection,
    radial_gauge_residual,
    reducibility,
)
from .tolerance import RankTolerance
