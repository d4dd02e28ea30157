#!/usr/bin/env python3
"""One round of energy teleportation, step by step.

Alice measures spin A along the y axis, tells Bob the outcome, and Bob
rotates spin B about the x axis.  The energy ledger shows where every
bit of energy goes, and an unconditioned control rotation shows why the
classical communication is essential.
"""

import numpy as np

from qetsim import (ModelParams, ProtocolParams, ground_state,
                    max_extracted_energy, no_feedback_reduction, run_protocol)
from qetsim.protocol import outcome_probability

print("=" * 64)
print("Measurement -> classical message -> conditioned rotation")
print("=" * 64)

params = ModelParams(h=0.5, k=1.0)
state = ground_state(params)
print(f"\nground energy {state.energy:+.6f} at h = {params.h}")

# the rotation angle below is the optimal one for these axes
best = max_extracted_energy(state)
pp = best.params
print(f"\nmeasurement axis  (mu, nu) = ({pp.mu:.4f}, {pp.nu:.4f})  -> y axis")
print(f"feedback axis     (xi, eta) = ({pp.xi:.4f}, {pp.eta:.4f})  -> x axis")
print(f"rotation angle    theta = {pp.theta:+.4f}")

for n in (1, -1):
    print(f"outcome n = {n:+d} arrives with probability "
          f"{outcome_probability(state, pp, n):.4f}")

ledger = run_protocol(state, pp)
print("\n--- energy ledger ---")
print(f"after the measurement  {ledger.after_measurement:+.6f}"
      f"   (Alice injected {ledger.injected:+.6f})")
print(f"after the feedback     {ledger.after_feedback:+.6f}")
print(f"extracted by Bob       {ledger.extracted:+.6f}")
print(f"  from Bob's site term {ledger.extracted_site:+.6f}")
print(f"  from the C2-B bond   {ledger.extracted_bond:+.6f}  (= heat)")
print(f"closed-form maximum    {best.value:+.6f}")

print("\nBob ends up with energy even though nothing physical travelled")
print("from A to B; only the measurement outcome did.")

print("\n--- control run: same rotation, no conditioning ---")
for fixed_n in (1, -1):
    site, bond = no_feedback_reduction(state, pp, fixed_n)
    print(f"fixed n = {fixed_n:+d}: site change {site:+.6f}, "
          f"bond change {bond:+.6f}")
print("without the classical message the correlator gain cancels and")
print("the rotation only costs energy.")

print("\n--- the gain needs the rotation angle, not just the axes ---")
for theta in (0.0, best.params.theta, np.pi / 4, np.pi / 2):
    trial = ProtocolParams(pp.mu, pp.nu, pp.xi, pp.eta, theta)
    print(f"theta = {theta:+.4f}: extracted "
          f"{run_protocol(state, trial).extracted:+.6f}")
