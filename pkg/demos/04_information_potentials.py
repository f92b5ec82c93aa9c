"""
Information potentials and quadratic mutual information
=======================================================

For a labeled representation, pairwise kernel interactions can be
aggregated into three potentials: within-class (v_in), all-pairs
(v_all), and class-against-all (v_btw).  Their combination
v_in + v_all - 2 v_btw is a quadratic mutual information between the
representation and the labels: zero when geometry ignores the labels,
positive when same-class samples cluster.  Because all three are plain
sums of kernel values, any two embeddings whose kernel matrices agree
pairwise have identical potentials, which gives a cheap certificate
that a transfer preserved them.
"""

import numpy as np

from pkt import (
    cosine_kernel,
    gaussian_kernel,
    information_potentials,
    potential_equality_check,
)

rng = np.random.default_rng(2)

# A representation where classes form real clusters...
centers = rng.normal(size=(3, 8)) * 3.0
labels = rng.integers(0, 3, size=120)
clustered = centers[labels] + 0.4 * rng.normal(size=(120, 8))

# ...and one where the same labels are attached to unrelated points.
unrelated = rng.normal(size=(120, 8))

spec = gaussian_kernel(8.0)
for name, feats in [("clustered", clustered), ("unrelated", unrelated)]:
    pot = information_potentials(feats, labels, spec)
    print(f"{name:10s}  v_in={pot.v_in:.5f}  v_all={pot.v_all:.5f}  "
          f"v_btw={pot.v_btw:.5f}  qmi={pot.qmi:.6f}")

# The clustered representation shows a clearly positive interaction gap;
# the unrelated one sits near zero.

# Equality certificate: a student that reproduces the teacher's pairwise
# kernel values reproduces every potential, for any labeling.  Cosine
# affinities ignore scale, so a rescaled copy is such a student.
teacher = clustered
student = 3.0 * teacher
report = potential_equality_check(
    teacher, student, cosine_kernel(), cosine_kernel(), tol=1e-9)
print("\nrescaled copy, worst pairwise kernel deviation:",
      report.max_deviation, " within 1e-9:", report.within_tol)

pot_t = information_potentials(teacher, labels, cosine_kernel())
pot_s = information_potentials(student, labels, cosine_kernel())
print("qmi teacher vs rescaled student:", pot_t.qmi, "vs", pot_s.qmi)

# A genuinely different embedding fails the certificate.
report = potential_equality_check(
    teacher, teacher + 0.05 * rng.normal(size=teacher.shape),
    cosine_kernel(), cosine_kernel(), tol=1e-9)
print("perturbed copy, worst deviation:", round(report.max_deviation, 5),
      " within 1e-9:", report.within_tol)
