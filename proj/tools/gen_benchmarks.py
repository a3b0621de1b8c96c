#!/usr/bin/env python3
"""Writes the bundled benchmark circuits into benchmarks/.

Controlled phases are expanded into u3/cx so every file stays inside the
parser's gate subset. Output is deterministic.
"""

import argparse
import math
import random
from pathlib import Path


class Writer:
    def __init__(self, n, title):
        self.lines = [f"// {title}", "OPENQASM 2.0;", 'include "qelib1.inc";', f"qreg q[{n}];"]

    def gate(self, text):
        self.lines.append(text + ";")

    def phase(self, q, theta):
        self.gate(f"u3(0,0,{theta!r}) q[{q}]")

    def cp(self, theta, control, target):
        self.phase(control, theta / 2)
        self.gate(f"cx q[{control}],q[{target}]")
        self.phase(target, -theta / 2)
        self.gate(f"cx q[{control}],q[{target}]")
        self.phase(target, theta / 2)

    def swap(self, a, b):
        self.gate(f"cx q[{a}],q[{b}]")
        self.gate(f"cx q[{b}],q[{a}]")
        self.gate(f"cx q[{a}],q[{b}]")

    def text(self):
        return "\n".join(self.lines) + "\n"


def qft(n, cutoff=None):
    """Textbook QFT; controlled phases with qubit distance above `cutoff` are dropped."""
    limit = n if cutoff is None else cutoff
    w = Writer(n, f"qft n={n}" + (f" phase cutoff {cutoff}" if cutoff else ""))
    for i in range(n):
        w.gate(f"h q[{i}]")
        for j in range(i + 1, min(n, i + limit + 1)):
            w.cp(math.pi / 2 ** (j - i), j, i)
    for i in range(n // 2):
        w.swap(i, n - 1 - i)
    return w.text()


def qpe(n, phase=0.3125):
    """n-1 counting qubits estimating a single-qubit phase on the last qubit."""
    counting = n - 1
    target = n - 1
    w = Writer(n, f"qpe n={n} phase={phase}")
    w.gate(f"u3(pi,0,pi) q[{target}]")
    for k in range(counting):
        w.gate(f"h q[{k}]")
    for k in range(counting):
        w.cp(2 * math.pi * phase * 2 ** k, k, target)
    for i in range(counting // 2):
        w.swap(i, counting - 1 - i)
    for i in reversed(range(counting)):
        for j in reversed(range(i + 1, counting)):
            w.cp(-math.pi / 2 ** (j - i), j, i)
        w.gate(f"h q[{i}]")
    return w.text()


def graph_state(n, p, seed):
    rng = random.Random(seed)
    w = Writer(n, f"graph state n={n} p={p} seed={seed}")
    for q in range(n):
        w.gate(f"h q[{q}]")
    for a in range(n):
        for b in range(a + 1, n):
            if rng.random() < p:
                w.gate(f"cz q[{a}],q[{b}]")
    return w.text()


def reversible(n, gates, seed):
    """Random NCT-style cascade of cx, ccx and cccx gates."""
    rng = random.Random(seed)
    w = Writer(n, f"reversible n={n} gates={gates} seed={seed}")
    names = {2: "cx", 3: "ccx", 4: "cccx"}
    for _ in range(gates):
        m = rng.choice([2, 3, 3, 4])
        qubits = rng.sample(range(n), m)
        w.gate(f"{names[m]} " + ",".join(f"q[{q}]" for q in qubits))
    return w.text()


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", type=Path, default=Path(__file__).resolve().parent.parent / "benchmarks")
    args = parser.parse_args()
    args.out.mkdir(parents=True, exist_ok=True)
    files = {
        "qft_20.qasm": qft(20),
        "qpe_20.qasm": qpe(20),
        "graph_20.qasm": graph_state(20, 0.2, seed=7),
        "rev_10.qasm": reversible(10, 40, seed=11),
        "rev_20.qasm": reversible(20, 60, seed=23),
        "qft_200.qasm": qft(200, cutoff=26),
    }
    for name, text in files.items():
        (args.out / name).write_text(text)
        print(f"wrote {args.out / name}")


if __name__ == "__main__":
    main()
