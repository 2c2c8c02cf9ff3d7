"""
服务模块
"""

from app.services.promotion_engine import orbit, orbit_partition, period, promote
from app.services.two_row_runs import build_arc_diagram, classify
from app.services.track_system import rotate_tracks, tableau_to_tracks, tracks_to_tableau
from app.services.divisor_predict import generic_divisor, p_d, p_d_poly
from app.services.quasipolynomial import fit_quasipolynomial
