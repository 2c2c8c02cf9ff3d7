import unittest

from app.models.errors import InvariantViolated, TrackCapacityError
from app.services.enumeration import enumerate_two_row_all
from app.services.promotion_engine import promote
from app.services.tableaux_core import extend_first_row, validate
from app.services.track_system import (
    TrackSystem,
    boundary_zone,
    check_bottleneck,
    check_invariants,
    inverse_rotate_tracks,
    is_clear_of_boundary,
    normalize_starts,
    rotate_tracks,
    tableau_to_tracks,
    track_lengths,
    tracks_to_tableau,
)

EXAMPLE_20 = (
    (1, 3, 4, 5, 6, 7, 8, 11, 14, 15, 16, 19),
    (2, 9, 10, 12, 13, 17, 18, 20),
)


class TestTrackSystem(unittest.TestCase):
    """测试两行杨表与轨道系统之间的双射"""

    def setUp(self):
        self.Tn = validate(EXAMPLE_20)

    def test_track_lengths(self):
        """测试轨道长度公式"""
        self.assertEqual(track_lengths(20, (3, 1), (2, 2)), (13, 15))
        self.assertEqual(track_lengths(10, (2, 1), (1, 1)), (6, 7))

    def test_boundary_zone(self):
        """测试边界区域"""
        self.assertTrue(boundary_zone(13, 3, 12))
        self.assertTrue(boundary_zone(13, 3, 2))
        self.assertFalse(boundary_zone(13, 3, 5))

    def test_normalize_starts(self):
        """测试代表元取 (间隔, 位置) 字典序最小者"""
        self.assertEqual(normalize_starts([12, 6], 13), (6, (6, 7)))
        self.assertEqual(normalize_starts([7, 13], 15), (7, (6, 9)))
        self.assertEqual(normalize_starts([4], 9), (4, (9,)))

    def test_example_tracks(self):
        """测试 n = 20 例子的轨道"""
        ts = tableau_to_tracks(self.Tn)
        self.assertEqual(ts.track_lengths, (13, 15))
        self.assertEqual(ts.starts(0), [6, 12])
        self.assertEqual(ts.gaps, ((6, 7), (6, 9)))
        self.assertEqual(ts.positions, (6, 7))
        check_invariants(ts)
        self.assertIn("●", ts.render())
        self.assertEqual(ts.to_dict()["tracks"][0]["track_len"], 13)

    def test_example_round_trip(self):
        """测试合并轨道得到原杨表"""
        self.assertEqual(tracks_to_tableau(tableau_to_tracks(self.Tn)), self.Tn)

    def test_simple_merge(self):
        """测试远离边界时的直接合并"""
        Tn = extend_first_row(validate([[4, 5, 9]]), 10)
        ts = tableau_to_tracks(Tn)
        self.assertEqual(ts.lengths, (2, 1))
        self.assertEqual(ts.track_lengths, (6, 7))
        self.assertEqual(tracks_to_tableau(ts), Tn)

    def test_rotation_matches_promotion(self):
        """测试一次提升对应一次轨道旋转，且旋转可逆"""
        ts = tableau_to_tracks(self.Tn)
        rotated = rotate_tracks(ts)
        self.assertEqual(rotated, tableau_to_tracks(promote(self.Tn)))
        self.assertEqual(inverse_rotate_tracks(rotated), ts)
        self.assertTrue(check_bottleneck(rotated))

    def test_clear_of_boundary(self):
        """测试远离边界的判定"""
        self.assertFalse(is_clear_of_boundary(tableau_to_tracks(self.Tn)))
        ts = TrackSystem.from_starts(20, (3, 1), (2, 2), [[2, 8], [3, 10]])
        self.assertTrue(is_clear_of_boundary(ts))

    def test_capacity_error(self):
        """测试轨道容量不足"""
        with self.assertRaises(TrackCapacityError):
            tableau_to_tracks(validate([[1, 2], [3, 4]]))

    def test_invalid_track_system(self):
        """测试不合法的轨道系统"""
        ts = TrackSystem(
            n=10, lengths=(2, 1), mults=(1, 1), track_lengths=(6, 7), positions=(1, 1), gaps=((5,), (7,))
        )
        with self.assertRaises(InvariantViolated):
            check_invariants(ts)

    def test_commutation_sweep(self):
        """测试 n ≤ 12 时所有适用的两行杨表的同步旋转"""
        for n in range(4, 13):
            for Tn in enumerate_two_row_all(n):
                try:
                    ts = tableau_to_tracks(Tn)
                except TrackCapacityError:
                    continue
                self.assertEqual(tableau_to_tracks(promote(Tn)), rotate_tracks(ts), msg=str(Tn))

    def test_images_pass_bottleneck_and_merge_back(self):
        """测试 n ≤ 14 时每个适用杨表的轨道都满足瓶颈条件，且合并回原杨表"""
        for n in range(4, 15):
            for Tn in enumerate_two_row_all(n):
                try:
                    ts = tableau_to_tracks(Tn)
                except TrackCapacityError:
                    continue
                self.assertTrue(check_bottleneck(ts), msg=str(Tn))
                self.assertEqual(tracks_to_tableau(ts), Tn, msg=str(Tn))

    def test_short_run_waiting_before_boundary(self):
        """测试长游程在边界区域时，短游程不能停在区域前一格"""
        waiting = validate([[1, 2, 4, 5, 6], [3, 7, 8]])
        ts = TrackSystem.from_starts(8, (2, 1), (1, 1), [[3], [1]])
        self.assertEqual(tableau_to_tracks(waiting), ts)
        self.assertTrue(check_bottleneck(ts))
        self.assertTrue(check_bottleneck(tableau_to_tracks(validate([[1, 3, 5, 6, 7], [2, 4, 8]]))))
        for short_start in (4, 5):
            blocked = TrackSystem.from_starts(8, (2, 1), (1, 1), [[3], [short_start]])
            self.assertFalse(check_bottleneck(blocked))

    def test_long_run_passes_first(self):
        """测试两条游程同时到达边界时，较长的游程先通过"""
        before = validate([[1, 3, 5, 6, 7], [2, 4, 8]])
        ts = TrackSystem.from_starts(8, (2, 1), (1, 1), [[4], [1]])
        self.assertEqual(tableau_to_tracks(before), ts)
        self.assertEqual(rotate_tracks(ts), TrackSystem.from_starts(8, (2, 1), (1, 1), [[3], [1]]))
        self.assertEqual(inverse_rotate_tracks(rotate_tracks(ts)), ts)

    def test_merge_across_boundary(self):
        """测试游程碰到边界时直接由轨道还原杨表"""
        ts = TrackSystem.from_starts(8, (2, 1), (1, 1), [[3], [1]])
        self.assertFalse(is_clear_of_boundary(ts))
        self.assertEqual(tracks_to_tableau(ts), validate([[1, 2, 4, 5, 6], [3, 7, 8]]))
        ts = TrackSystem.from_starts(13, (3, 2), (1, 1), [[2], [1]])
        self.assertFalse(is_clear_of_boundary(ts))
        self.assertEqual(tracks_to_tableau(ts), validate([[1, 2, 5, 6, 7, 8, 12, 13], [3, 4, 9, 10, 11]]))
