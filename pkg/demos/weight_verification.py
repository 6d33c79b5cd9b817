"""
Checking the weight argument instance by instance
=================================================

For each random instance we compute an optimal packing, assign roles to the
items, and check both halves of the weight inequality.
"""

from collections import Counter

from cardbin.algorithms import first_fit
from cardbin.analysis import (
    assign_roles,
    item_weights,
    opt_bin_bound,
    random_instances,
    verify_weights,
)
from cardbin.oracle import exact_opt

for k in (4, 7, 9, 12):
    heaviest = 0
    roles_seen = Counter()
    for inst in random_instances(k, 200, seed=1):
        ff, opt = first_fit(inst), exact_opt(inst)
        assert all(r.ok for r in verify_weights(k, ff, opt))
        roles = assign_roles(k, ff, opt)
        roles_seen.update(r.value for r in roles)
        w = item_weights(k, inst, roles)
        heaviest = max([heaviest] + [sum(w[i] for i in b.items) for b in opt.packing.bins])
    print(f"k={k}: heaviest certificate bin {float(heaviest):.4f} "
          f"(bound {float(opt_bin_bound(k)):.4f}), roles {dict(roles_seen)}")
