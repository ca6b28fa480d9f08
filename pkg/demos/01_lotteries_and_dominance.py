# Monetary lotteries and the stochastic-dominance lattice.
#
# Run from the repo root:  python3 demos/01_lotteries_and_dominance.py

import numpy as np

from recovery_lab import (
    Interval,
    cdf_eval,
    delta,
    enumerate_rational_lotteries,
    fosd_compare,
    lottery,
    lottery_join,
    lottery_meet,
    squeeze_bounds,
)
from recovery_lab.lotteries import UNIT

# ## Building lotteries
#
# A lottery is a finite-support distribution on a money interval.  The
# canonical constructor sorts the support and merges duplicate points.

p = lottery(UNIT, [0.0, 1.0], [0.5, 0.5])   # fair coin between 0 and 1
q = delta(0.6)                               # 0.6 for sure
print("p:", dict(zip(p.support, p.probs)))
print("q:", dict(zip(q.support, q.probs)))
print("cdf of p at 0.5:", cdf_eval(p, 0.5))

# ## First-order stochastic dominance
#
# p dominates q when its CDF sits weakly below q's everywhere.  The coin
# and the sure 0.6 cross, so they are incomparable; more money always wins.

print("p vs q:", fosd_compare(p, q).value)
print("sure 1 vs sure 0:", fosd_compare(delta(1.0), delta(0.0)).value)

# ## Join and meet
#
# The join takes the pointwise CDF minimum (best of both), the meet the
# maximum.  Together they make the lottery space a lattice, which is what
# the squeeze construction below exploits.

j = lottery_join(p, q)
m = lottery_meet(p, q)
print("join:", dict(zip(j.support, j.probs)))
print("meet:", dict(zip(m.support, m.probs)))

# ## Squeezing a sequence
#
# Tail meets and joins of a sequence give monotone staircase bounds that
# pinch every element: lower[n] <= seq[n] <= upper[n].

rng = np.random.default_rng(7)
seq = [lottery(UNIT, [0.0, 0.5, 1.0], w / w.sum()) for w in rng.random((4, 3))]
lower, upper = squeeze_bounds(seq)
for n, (lo, x, up) in enumerate(zip(lower, seq, upper)):
    print(
        f"n={n}",
        fosd_compare(lo, x).value,
        "/",
        fosd_compare(up, x).value,
    )

# ## The countable dense family
#
# Lotteries with rational probabilities on a rational money grid are the
# raw material of the finite experiments: a deterministic, enumerable,
# dense family.

fam = enumerate_rational_lotteries(Interval(0.0, 1.0), 2, 3)
print(f"{len(fam)} lotteries at denominator 2 on a 3-point grid:")
for lot in fam:
    print("  ", dict(zip(lot.support, lot.probs)))
