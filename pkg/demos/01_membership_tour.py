"""Tour of the reference catalog: sampled family verdicts and orders.

Every map in the catalog carries claims (family, order); this script
recomputes each claim from scratch on a disk grid and prints the margin
by which it holds.
"""

import warnings

from gftkit import catalog, membership, order_estimate
from gftkit.errors import UnivalenceNotChecked
from gftkit.families import DiskSampler

warnings.simplefilter("ignore", UnivalenceNotChecked)

sampler = DiskSampler(rings=32, points_per_ring=256)

for entry in catalog.entries():
    print(f"{entry.name}: {entry.expr_text}")
    if not entry.claims:
        print("    (no claims; general-purpose test map)")
    for claim in entry.claims:
        if claim.order < 1.0:
            v = membership(entry.expr, claim.family, claim.order, sampler=sampler)
            status = "holds" if v.holds_on_samples else "FAILS"
            print(
                f"    {claim.family.value} at order {claim.order}: {status}, "
                f"margin {v.margin:+.3e}, worst point {v.witness:.4f}"
            )
        else:
            est = order_estimate(entry.expr, claim.family, sampler=sampler)
            print(
                f"    {claim.family.value} at order {claim.order}: "
                f"sampled order {est:.9f}"
            )
    print()

# the quarter pole map is the classic example of a strict-order member:
# its convexity order lands at 0.6..., strictly above the claimed 1/2
qp = catalog.get_entry("quarter_pole").expr
from gftkit.families import Family

print("quarter_pole sampled convexity order:",
      f"{order_estimate(qp, Family.BC, sampler=sampler):.12f}")
