# Acts, ambiguity-sensitive representations, and certainty equivalents.
#
# Run from the repo root:  python3 demos/02_ambiguity_preferences.py

from recovery_lab import (
    AAPreference,
    Act,
    BernoulliIndex,
    CostFunction,
    Prior,
    act_dominates,
    act_value,
    ce_act,
    ce_lottery,
    expected_utility,
    delta,
    lottery,
    rep_distance,
)
from recovery_lab.aa_prefs import simplex_grid
from recovery_lab.lotteries import UNIT

# ## An act pays a lottery in each state of the world

good_in_s0 = Act((delta(1.0), delta(0.0)))
good_in_s1 = Act((delta(0.0), delta(1.0)))
coin = lottery(UNIT, [0.0, 1.0], [0.5, 0.5])
hedged = Act((coin, coin))

# ## Three representations sharing one utility-of-money index
#
# The index is piecewise linear with u(0) = 0, u(1) = 1; the kink at 0.5
# makes it concave (risk averse).

u = BernoulliIndex(UNIT, (0.0, 0.5, 1.0), (0.0, 0.8, 1.0))
eu = AAPreference.eu(u, Prior((0.5, 0.5)))
cautious = AAPreference.maxmin(u, [Prior((0.2, 0.8)), Prior((0.8, 0.2))])
grid = simplex_grid(2, 8)
costs = tuple(2.0 * (p.weights[0] - 0.5) ** 2 for p in grid)
variational = AAPreference.variational(u, CostFunction(tuple(grid), costs))

for name, pref in [("eu", eu), ("maxmin", cautious), ("variational", variational)]:
    print(
        f"{name:12s} V(bet on s0) = {act_value(pref, good_in_s0):.4f}"
        f"   V(hedged coin) = {act_value(pref, hedged):.4f}"
    )

# The max-min agent dislikes the unhedged bet: its worst-case prior puts
# weight 0.8 on the losing state.  All three agree on constant acts, where
# the value is just the expected utility of the lottery.

print("expected utility of the coin:", expected_utility(u, coin))
print("V(constant coin act), eu:", act_value(eu, Act.constant(coin, 2)))

# ## Certainty equivalents
#
# The sure amount that matches a lottery (or an act) in value.  Concavity
# pushes the certainty equivalent below the mean.

print("ce of the coin under the kinked index:", ce_lottery(u, coin))
for name, pref in [("eu", eu), ("maxmin", cautious), ("variational", variational)]:
    print(f"ce of the s0 bet, {name}: {ce_act(pref, good_in_s0):.4f}")

# ## Statewise dominance

better = Act((delta(1.0), coin))
worse = Act((delta(0.0), coin))
print("dominance verdict:", act_dominates(better, worse).value)

# ## Distance between representations
#
# Sup distance of the indices (exact at knots) and of the act values over
# an evaluation grid; this is the metric the convergence experiments track.

acts = [good_in_s0, good_in_s1, hedged, better, worse]
dv, du = rep_distance(eu, cautious, acts)
print(f"eu vs maxmin: dv = {dv:.4f}, du = {du:.4f}")
