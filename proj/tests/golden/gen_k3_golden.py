#!/usr/bin/env python3
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
"""Regenerates the k3 golden tables by brute force, independent of the C++ code.

Base points are searched over a fixed wide box instead of the Hodge-index
bound used by the library.
"""
import itertools
import math
import pathlib

BOX = 30


def pair(G, a, b):
    return sum(a[i] * G[i][j] * b[j] for i in range(len(G)) for j in range(len(G)))


def in_cone(v):
    return all(x >= 0 for x in v) and any(v)


def nef(kind, d):
    if kind == "rank1":
        return d[0] >= 0
    if kind == "hyperbolic":
        return d[0] >= 0 and d[1] >= 0
    return d[0] >= d[1] >= 0


def bpf(G, d):
    d2 = pair(G, d, d)
    if d2 == 0:
        return True
    k = 1 + d2 // 2
    for e in itertools.product(range(-BOX, BOX + 1), repeat=len(G)):
        if pair(G, e, e) != 0 or pair(G, d, e) != 1:
            continue
        r = [d[i] - k * e[i] for i in range(len(G))]
        if in_cone(e) and in_cone(r):
            return False
    return True


def table(kind, G, bound):
    lines = ["coords,D2,primitive,nef,big,bpf,N,genus"]
    for d in itertools.product(range(0, bound + 1), repeat=len(G)):
        if not in_cone(d) or math.gcd(*d) != 1:
            continue
        d2 = pair(G, d, d)
        if d2 < 0:
            continue
        is_nef = nef(kind, d)
        b = bpf(G, d) if is_nef else None
        N = 1 + d2 // 2 if is_nef and b else None
        cells = [
            ";".join(map(str, d)),
            str(d2),
            "true",
            "true" if is_nef else "false",
            "true" if d2 > 0 else "false",
            "" if b is None else ("true" if b else "false"),
            "" if N is None else str(N),
            str(1 + d2 // 2),
        ]
        lines.append(",".join(cells))
    return "\n".join(lines) + "\n"


def main():
    out = pathlib.Path(__file__).resolve().parent
    for k in (1, 2, 3):
        (out / f"rank1_k{k}.csv").write_text(table("rank1", [[2 * k * k]], 5))
    (out / "hyperbolic_b5.csv").write_text(table("hyperbolic", [[0, 1], [1, 0]], 5))
    (out / "mixed_b5.csv").write_text(table("mixed", [[2, 2], [2, -2]], 5))


if __name__ == "__main__":
    main()
