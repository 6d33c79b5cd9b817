"""
First Fit against its worst-case inputs
=======================================

Build the three worst-case families for First Fit, run FF on each, and
compare the finite ratio with the asymptotic value it approaches.
"""

from fractions import Fraction

from cardbin import adversary, first_fit
from cardbin.analysis import asymptotic_ff_ratio, format_table, ratio_table

# k = 4, one copy of the gadget: 32 items, an 8-bin certificate
fam = adversary.gen_ff_killer_small(4, 1)
ff = first_fit(fam.instance)
print(f"k=4: FF uses {ff.num_bins} bins, certificate {fam.certificate.count}")

# the bins FF builds, smallest items first
for j, b in enumerate(ff.bins[:6]):
    sizes = ", ".join(str(fam.instance.sizes[i]) for i in b.items)
    print(f"  bin {j}: {sizes}")

# the mid family needs ell to be a multiple of k
for k in (5, 8):
    fam = adversary.gen_ff_killer_mid(k, k)
    ratio = Fraction(first_fit(fam.instance).num_bins, fam.certificate.count)
    print(f"k={k}: ratio {ratio} = {float(ratio):.4f}, asymptote {float(asymptotic_ff_ratio(k)):.4f}")

# whole table, smallest valid ell per k (k=10 uses 7030 items)
print(format_table(ratio_table(2, 10)))
