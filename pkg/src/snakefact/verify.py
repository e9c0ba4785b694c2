"""Batch invariant suites behind the command line verifier.

Each suite returns a list of CaseResult records; a case passes when its
defect is within tolerance.  All randomness flows through one seeded
generator so runs are reproducible (the CLI seeds it from SNAKE_SEED).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .errors import NumericalError
from .expand import bandwidths, expand_dense
from .oracle import (
    BernsteinSzego,
    Lebesgue,
    moments,
    multiplication_matrix,
    schur_from_moments,
)
from .quadrature import apply_rule, szego_quadrature, truncate_para_unitary
from .schur import SchurSequence
from .snake import (
    GeneratingSequence,
    SnakeFactorization,
    cmv_shape,
    hessenberg_shape,
    materialize_window,
)

__all__ = ["CaseResult", "SUITES", "run_suites", "measured_bandwidths"]


@dataclass
class CaseResult:
    suite: str
    case: str
    defect: float
    tolerance: float

    @property
    def passed(self) -> bool:
        return self.defect <= self.tolerance


def _random_shape(rng, m: int) -> GeneratingSequence:
    return GeneratingSequence(rng.integers(0, 2, size=m))


def _random_schur(rng, count: int, lo: float = 0.05, hi: float = 0.8) -> SchurSequence:
    mods = rng.uniform(lo, hi, size=count)
    args = rng.uniform(-np.pi, np.pi, size=count)
    return SchurSequence(mods * np.exp(1j * args))


def _shape_set(rng, m: int, extra: int = 3) -> dict[str, GeneratingSequence]:
    shapes = {"hessenberg": hessenberg_shape(m), "cmv": cmv_shape(m)}
    for i in range(extra):
        shapes[f"random-{i}"] = _random_shape(rng, m)
    return shapes


def _default_measures() -> dict[str, object]:
    return {
        "lebesgue": Lebesgue(),
        "bernstein-szego-1": BernsteinSzego([0.6]),
        "bernstein-szego-3": BernsteinSzego([0.5, -0.4j, 0.2]),
    }


def measured_bandwidths(gen: GeneratingSequence, schur: SchurSequence | None = None):
    """(lower, upper) bandwidths read off the dense expansion.

    The window must reach index m + 1 so that the extreme of every run of
    stored bits is observable; one extra shape bit and parameter are
    appended for that purpose (no entry inside the window depends on them
    structurally).
    """
    m = len(gen)
    if schur is None:
        alphas = [0.4 * np.exp(0.7j * k) for k in range(m + 2)]
    else:
        alphas = list(schur.alphas) + [0.4]
    extended = SnakeFactorization(SchurSequence(alphas), GeneratingSequence(gen.bits + (0,)))
    dense = expand_dense(extended, m + 2)
    lower = upper = 0
    for i in range(m + 2):
        for j in range(m + 2):
            if dense[i, j] != 0:
                lower = max(lower, i - j)
                upper = max(upper, j - i)
    return lower, upper


def suite_unitarity(rng, m: int = 12, schur: SchurSequence | None = None):
    results = []
    if schur is not None:
        m = len(schur) - 1
    for name, gen in _shape_set(rng, m).items():
        seq = schur if schur is not None else _random_schur(rng, m + 1)
        snake = SnakeFactorization(seq, gen)
        window = materialize_window(snake, m)
        defect = float(np.max(np.abs(window @ window.conj().T - np.eye(m + 2))))
        results.append(CaseResult("unitarity", f"window/{name}/m={m}", defect, 1e-13))
        for n in sorted({max(2, (m + 1) // 2), m + 1}):
            for theta in (0.0, 0.7):
                trunc = truncate_para_unitary(snake, n, theta)
                defect = float(
                    np.max(np.abs(trunc.matrix @ trunc.matrix.conj().T - np.eye(n)))
                )
                results.append(
                    CaseResult(
                        "unitarity",
                        f"truncation/{name}/n={n}/theta={theta}",
                        defect,
                        1e-12,
                    )
                )
    return results


def suite_oracle_equivalence(rng, nmax: int = 8, measures=None):
    results = []
    measures = measures or _default_measures()
    shapes = _shape_set(rng, nmax, extra=2)
    for mname, measure in measures.items():
        table = moments(measure, nmax + 2)
        seq = schur_from_moments(table, nmax + 1)
        for sname, gen in shapes.items():
            snake = SnakeFactorization(seq, gen)
            want = multiplication_matrix(table, gen, nmax + 1)
            got = expand_dense(snake, nmax + 1)
            defect = float(np.max(np.abs(want - got)))
            results.append(
                CaseResult("oracle-equivalence", f"{mname}/{sname}", defect, 1e-9)
            )
    return results


def suite_bandwidth(rng, m: int = 8):
    results = []
    for bits in itertools.product((0, 1), repeat=m):
        gen = GeneratingSequence(bits)
        structural = bandwidths(gen)
        measured = measured_bandwidths(gen)
        defect = float(
            max(abs(structural[0] - measured[0]), abs(structural[1] - measured[1]))
        )
        label = "".join(map(str, bits))
        results.append(
            CaseResult(
                "bandwidth",
                f"{label} structural={structural} measured={measured}",
                defect,
                0.0,
            )
        )
    return results


def suite_round_trip(rng, lengths=(4, 8, 12)):
    results = []
    for length in lengths:
        seq = _random_schur(rng, length, lo=0.1, hi=0.9)
        table = moments(BernsteinSzego(seq), length + 1)
        recovered = schur_from_moments(table, length)
        defect = float(
            np.max(np.abs(np.asarray(recovered.alphas) - np.asarray(seq.alphas)))
        )
        results.append(CaseResult("round-trip", f"length={length}", defect, 1e-8))
    return results


def suite_exactness(rng, sizes=(4, 8), thetas=(0.0, 0.7), measures=None):
    results = []
    measures = measures or _default_measures()
    for mname, measure in measures.items():
        table = moments(measure, max(sizes) + 1)
        for n in sizes:
            seq = schur_from_moments(table, n)
            snake = SnakeFactorization(seq, hessenberg_shape(n - 1))
            for theta in thetas:
                case = f"{mname}/n={n}/theta={theta}"
                try:
                    rule = szego_quadrature(snake, n, theta)
                    defect = max(
                        abs(apply_rule(rule, {j: 1.0}) - table.mu(-j))
                        for j in range(-(n - 1), n)
                    )
                except NumericalError:
                    defect = float("inf")
                results.append(CaseResult("exactness", case, float(defect), 1e-9))
    return results


SUITES = {
    "unitarity": suite_unitarity,
    "oracle-equivalence": suite_oracle_equivalence,
    "bandwidth": suite_bandwidth,
    "round-trip": suite_round_trip,
    "exactness": suite_exactness,
}


def run_suites(
    names=None,
    seed: int = 0,
    m: int | None = None,
    n: int | None = None,
    schur: SchurSequence | None = None,
    measure=None,
):
    """Run the named suites (all by default) and return their case results."""
    names = list(names) if names else list(SUITES)
    for name in names:
        if name not in SUITES:
            raise ValueError(f"unknown suite {name!r}; choose from {sorted(SUITES)}")
    measures = {"measure": measure} if measure is not None else None
    results: list[CaseResult] = []
    for name in names:
        rng = np.random.default_rng(seed)
        if name == "unitarity":
            results += suite_unitarity(rng, m=m or 12, schur=schur)
        elif name == "oracle-equivalence":
            results += suite_oracle_equivalence(rng, nmax=n or 8, measures=measures)
        elif name == "bandwidth":
            results += suite_bandwidth(rng, m=m or 8)
        elif name == "round-trip":
            results += suite_round_trip(rng)
        elif name == "exactness":
            sizes = (n,) if n else (4, 8)
            results += suite_exactness(rng, sizes=sizes, measures=measures)
    return results
