#!/usr/bin/env python3
# Copyright 2026 The bnexplain Authors.
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

"""Regenerates the example networks and evidence files under data/."""

import itertools
import json
import math
import pathlib
import sys

OUT = pathlib.Path(sys.argv[1] if len(sys.argv) > 1 else "data")


def odds(p):
    return p / (1.0 - p)


def prob(o):
    return o / (1.0 + o)


def node(nid, states, parents, cpt, label=None, edges=None):
    n = {"id": nid, "label": label or nid}
    if edges is not None:
        n["kind"] = "binned_continuous"
        n["bin_edges"] = edges
    else:
        n["kind"] = "discrete"
    n["states"] = states
    n["parents"] = parents
    n["cpt"] = cpt
    return n


def write(name, doc):
    (OUT / name).write_text(json.dumps(doc, indent=2, ensure_ascii=False) + "\n")


def network(name, nodes):
    return {"format_version": 1, "name": name, "nodes": nodes}


def evidence(values):
    return {"format_version": 1, "evidence": values}


def six_findings():
    # Prior 0.097 and posterior 0.2 for t1; retracting e_i gives r[i].
    prior, post = 0.097, 0.2
    r = {"e1": 0.19, "e2": 0.15, "e3": 0.27, "e4": 0.11, "e5": 0.21, "e6": 0.26}
    children = ["e1", "e2", "e4", "e5"]
    lam = {c: odds(post) / odds(r[c]) for c in children}
    prod = math.prod(lam.values())
    x = prob(odds(post) / prod)
    y = prob(odds(r["e3"]) / prod)
    z = prob(odds(r["e6"]) / prod)
    t01, t10 = 2 * y - x, 2 * z - x
    t00 = 4 * prior - x - t01 - t10
    nodes = [
        node("e3", ["present", "absent"], [], [[0.5, 0.5]]),
        node("e6", ["present", "absent"], [], [[0.5, 0.5]]),
        node("T", ["t1", "t2"], ["e3", "e6"],
             [[x, 1 - x], [t10, 1 - t10], [t01, 1 - t01], [t00, 1 - t00]], label="Target"),
    ]
    for c in children:
        scale = 0.4 / max(1.0, lam[c])
        nodes.append(node(c, ["present", "absent"], ["T"],
                          [[lam[c] * scale, 1 - lam[c] * scale], [scale, 1 - scale]]))
    write("six_findings.json", network("six_findings", nodes))
    write("six_findings_evidence.json",
          evidence({e: "present" for e in ["e1", "e2", "e3", "e4", "e5", "e6"]}))


def and_gate():
    nodes = [
        node("A", ["false", "true"], [], [[0.5, 0.5]]),
        node("B", ["false", "true"], [], [[0.5, 0.5]]),
        node("T", ["false", "true"], ["A", "B"],
             [[1.0, 0.0], [1.0, 0.0], [1.0, 0.0], [0.0, 1.0]]),
    ]
    write("and_gate.json", network("and_gate", nodes))
    write("and_gate_evidence.json", evidence({"A": "false", "B": "true"}))
    write("and_gate_impossible.json", evidence({"A": "false", "T": "true"}))


def crossroads():
    b = ["no", "yes"]
    nodes = [
        node("A", b, [], [[0.7, 0.3]]),
        node("B", b, [], [[0.6, 0.4]]),
        node("C", b, [], [[0.5, 0.5]]),
        node("G", b, [], [[0.8, 0.2]]),
        node("D", b, ["A"], [[0.9, 0.1], [0.3, 0.7]]),
        node("T", b, ["B", "C", "D"],
             [[0.95, 0.05], [0.6, 0.4], [0.7, 0.3], [0.3, 0.7],
              [0.65, 0.35], [0.25, 0.75], [0.35, 0.65], [0.1, 0.9]]),
        node("E", b, ["G", "T"], [[0.9, 0.1], [0.4, 0.6], [0.5, 0.5], [0.1, 0.9]]),
        node("F", b, ["T"], [[0.85, 0.15], [0.2, 0.8]]),
        node("J", b, ["F"], [[0.9, 0.1], [0.25, 0.75]]),
    ]
    write("crossroads.json", network("crossroads", nodes))
    write("crossroads_evidence.json", evidence({"A": "yes", "C": "no", "J": "yes"}))


def graded(levels, mean, spread=0.4):
    # Discretised bell over `levels` ordered states centred at mean in [0, 1].
    xs = [k / (levels - 1) for k in range(levels)]
    w = [math.exp(-((x - mean) ** 2) / (2 * spread ** 2)) for x in xs]
    s = sum(w)
    return [round(v / s, 6) for v in w[:-1]] + [round(1 - sum(round(v / s, 6) for v in w[:-1]), 6)]


def rows(parent_levels, base, weights, levels, reverse=False):
    out = []
    for combo in itertools.product(*[range(k) for k in parent_levels]):
        m = base
        for k, w, lv in zip(combo, weights, parent_levels):
            m += w * k / (lv - 1)
        m = min(1.0, max(0.0, m))
        row = graded(levels, m)
        out.append(row[::-1] if reverse else row)
    return out


def trauma():
    yn = ["no", "yes"]
    nodes = [
        node("ENERGY", ["low", "high"], [], [[0.55, 0.45]], label="Energy of injury"),
        node("HEAD", yn, [], [[0.8, 0.2]], label="Head injury"),
        node("AGE", [], [], [[0.5, 0.3, 0.2]], label="Age", edges=[0, 45, 65, 110]),
        node("PREHOSP", ["< 500mls", "≥ 500mls"], [], [[0.8, 0.2]], label="Prehospital fluids"),
        node("ISS", ["mild", "moderate", "severe"], ["ENERGY"],
             rows([2], 0.2, [0.45], 3), label="ISS"),
        node("HAEMOTHORAX", yn, ["ISS"], rows([3], 0.15, [0.6], 2), label="Haemothorax"),
        node("LBF", yn, ["ISS"], rows([3], 0.25, [0.5], 2), label="Long bone fracture"),
        node("GCS", [], ["ISS", "HEAD"], rows([3, 2], 0.1, [0.35, 0.5], 3, reverse=True),
             label="GCS", edges=[3, 9, 13, 15]),
        node("PERFUSION", ["normal", "reduced", "poor"], ["HAEMOTHORAX", "LBF"],
             rows([2, 2], 0.15, [0.4, 0.3], 3), label="Perfusion"),
        node("SBP", [], ["PERFUSION"], rows([3], 0.2, [0.6], 3, reverse=True),
             label="Systolic blood pressure", edges=[0, 90, 120, 250]),
        node("LACTATE", [], ["PERFUSION"], rows([3], 0.2, [0.6], 3),
             label="Lactate", edges=[0, 2, 4, 30]),
        node("COAG", yn, ["ISS", "PERFUSION", "PREHOSP", "AGE"],
             rows([3, 3, 2, 3], -0.1, [0.35, 0.4, 0.3, 0.1], 2), label="Coagulopathy"),
    ]
    for lab, label in [("ROTEMA30", "ROTEM A30"), ("ROTEMA5", "ROTEM A5"), ("PTR", "PT ratio"),
                       ("FIBRINOGEN", "Fibrinogen"), ("APTTR", "APTT ratio")]:
        nodes.append(node(lab, ["normal", "abnormal"], ["COAG"], rows([2], 0.2, [0.6], 2),
                          label=label))
    nodes.append(node("DEATH", yn, ["COAG", "HEAD"], rows([2, 2], 0.05, [0.45, 0.4], 2),
                      label="Death"))
    write("trauma.json", network("trauma", nodes))
    write("trauma_evidence.json", evidence({
        "AGE": 35, "PREHOSP": "≥ 500mls", "GCS": 5, "HAEMOTHORAX": "yes",
        "ENERGY": "high", "SBP": 168, "LACTATE": 0.9, "LBF": "no"}))


if __name__ == "__main__":
    OUT.mkdir(parents=True, exist_ok=True)
    six_findings()
    and_gate()
    crossroads()
    trauma()
