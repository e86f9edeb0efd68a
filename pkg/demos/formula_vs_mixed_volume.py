"""The closed formula against the exact mixed volume for powers ideals."""
from __future__ import annotations

import itertools

from excesskit import IdealSpec, excess_by_mixed_volume, excess_powers

print(f"{'p':>10} {'d':>12} {'formula':>8} {'mixedvol':>8}")
for p, d in itertools.product([(1,), (2,), (2, 2), (3, 3), (2, 3)], [(3, 3, 3), (3, 4, 5)]):
    f = excess_powers(p, d)
    mv = excess_by_mixed_volume(IdealSpec.powers(p, len(d)), d)
    flag = "" if f.excess == mv else "  MISMATCH"
    print(f"{str(p):>10} {str(d):>12} {f.excess:>8} {mv:>8}{flag}")
