#!/usr/bin/env python3
# Copyright 2026 The apisum Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Freezes reference values from scipy into tests/data/ for the statistics
tests. Run once; the C++ tests never call Python."""
import json
import os

import numpy as np
from scipy import stats

HERE = os.path.dirname(os.path.abspath(__file__))
OUT = os.path.join(HERE, "..", "tests", "data")
os.makedirs(OUT, exist_ok=True)

grid = []
for df in [1, 2, 3, 5, 14, 30, 100, 1000]:
    for t in [-10.0, -3.0, -1.5, -0.5, 0.0, 0.3, 1.0, 1.761, 2.5, 4.0, 8.9454, 25.0]:
        grid.append({"t": t, "df": df, "cdf": float(stats.t.cdf(t, df)), "sf": float(stats.t.sf(t, df))})
quantiles = []
for df in [1, 2, 5, 14, 30, 120, 1000000]:
    for p in [0.5, 0.75, 0.9, 0.95, 0.975, 0.99, 0.999]:
        quantiles.append({"p": p, "df": df, "q": float(stats.t.ppf(p, df))})
with open(os.path.join(OUT, "student_t_reference.json"), "w") as f:
    json.dump({"cdf": grid, "quantile": quantiles}, f, indent=1)

# 20 random samples of assorted sizes and shapes for the W / p cross-check.
rng = np.random.default_rng(20260415)
samples = []
for i in range(20):
    n = int(rng.integers(3, 60))
    kind = ["normal", "uniform", "exponential", "lognormal"][i % 4]
    if kind == "normal":
        x = rng.normal(0.5, 0.2, n)
    elif kind == "uniform":
        x = rng.uniform(0, 1, n)
    elif kind == "exponential":
        x = rng.exponential(1.0, n)
    else:
        x = rng.lognormal(0, 0.6, n)
    x = [round(float(v), 6) for v in x]
    w, p = stats.shapiro(x)
    samples.append({"kind": kind, "x": x, "w": float(w), "p": float(p)})

# 100 normal samples of size 50 for the false-rejection-rate check.
normal_reps = []
rng2 = np.random.default_rng(7)
for i in range(100):
    x = [round(float(v), 6) for v in rng2.standard_normal(50)]
    w, p = stats.shapiro(x)
    normal_reps.append({"x": x, "w": float(w), "p": float(p)})

with open(os.path.join(OUT, "shapiro_reference.json"), "w") as f:
    json.dump({"samples": samples, "normal_reps": normal_reps}, f, indent=1)

print("normal reps with p > 0.05:", sum(r["p"] > 0.05 for r in normal_reps))
