import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

from premarshal.model import LaneConfiguration, VirtualLane


class FakeDmat:
    """Distance lookup for tests that do not need a real layout.

    ``table[(p, q)]`` wins; anything missing falls back to |p - q| so every
    pair has some distance.
    """

    def __init__(self, table=None):
        self.table = table or {}

    def between(self, p, q):
        if (p, q) in self.table:
            return self.table[(p, q)]
        if (q, p) in self.table:
            return self.table[(q, p)]
        return abs(p - q)


def make_config(lanes, groups):
    """lanes: list of (capacity, contents tuple, access_point)."""
    built = [
        VirtualLane(lane_id=idx + 1, access_point=ap, capacity=cap, contents=tuple(contents))
        for idx, (cap, contents, ap) in enumerate(lanes)
    ]
    return LaneConfiguration.build(built, groups)
