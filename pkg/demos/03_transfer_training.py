"""
Training a student to inherit a teacher's neighborhood structure
================================================================

End to end: synthetic labeled blobs, a fixed nonlinear teacher map, a
small MLP student trained to match the teacher's conditional
probabilities, and a retrieval evaluation showing that neighborhood
structure carried over even though the student never saw a label.
"""

import numpy as np

from pkt import (
    RetrievalIndex,
    TrainConfig,
    evaluate,
    init_student,
    train,
)

rng = np.random.default_rng(5)

# Four Gaussian blobs in 4 informative dimensions plus 6 pure-noise
# dimensions.  The teacher looks only at the informative part.
centers = rng.normal(size=(4, 4)) * 4.0


def draw(n):
    labels = rng.integers(0, 4, size=n)
    signal = centers[labels] + 0.3 * rng.normal(size=(n, 4))
    noise = rng.normal(size=(n, 6))
    return np.hstack([signal, noise]), labels


w_teacher = rng.normal(size=(4, 16)) / 2.0


def teacher(x):
    return np.tanh(x[:, :4] @ w_teacher)


train_x, train_labels = draw(300)
query_x, query_labels = draw(80)

# The student is a 10 -> 32 -> 8 MLP over the raw inputs, trained purely
# on the teacher's conditional structure (no labels involved).
model = init_student([10, 32, 8], seed=0)
cfg = TrainConfig(epochs=80, batch_size=64, lr=1e-3, seed=0)


def retrieval_map(m):
    index = RetrievalIndex(m.forward(train_x), train_labels)
    return evaluate(index, m.forward(query_x), query_labels, ks=[10]).map


print("retrieval mAP of the untrained student:", round(retrieval_map(model), 4))

model, trace = train(model, train_x, teacher(train_x), cfg=cfg)

# Per-epoch mean losses fall as the student's conditionals approach the
# teacher's.
per_epoch = {}
for entry in trace:
    per_epoch.setdefault(entry.epoch, []).append(entry.loss)
for epoch in [0, 9, 39, 79]:
    print(f"epoch {epoch:3d}  mean batch loss {np.mean(per_epoch[epoch]):.5f}")

final = retrieval_map(model)
print("retrieval mAP after transfer:", round(final, 4))

result = evaluate(
    RetrievalIndex(model.forward(train_x), train_labels),
    model.forward(query_x), query_labels, ks=[5, 20])
print("top-5 precision:", round(result.top_k[5], 4),
      " top-20 precision:", round(result.top_k[20], 4))
