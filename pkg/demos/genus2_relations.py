"""Numerical relations among genus-2 theta constants.

Samples random period matrices, finds the quadrics among the fifteen
squared Goepel forms and checks one quartic Riemann relation.
"""
import numpy as np

from goepel import theta as th

samples = th.random_samples(2, 300, seed=0)
fresh = th.random_samples(2, 5, seed=1)

quad = th.find_relations(lambda s: th.gopel_forms(s, 2), 2, samples, fresh)
print("quadrics among the squared Goepel forms:", quad.dimension)

for s in fresh:
    t = np.array([s.value(1) ** 4, -s.value(3) ** 4, -s.value(7) ** 4, -s.value(10) ** 4])
    print(f"theta1^4 - theta3^4 - theta7^4 - theta10^4 = {abs(t.sum()):.2e}  (terms up to {np.abs(t).max():.2f})")
