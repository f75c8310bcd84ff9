"""Exact unbiasedness verification via character-sum counting.

For a prime root order p, |sum_k c_k w^k|^2 = sum_m d_m w^m with
d_m = sum_k c_k c_{k+m}; the sum is a rational integer exactly when d_m is
constant for m != 0, and then equals d_0 - d_1.  For m = 4 the sum is a
Gaussian integer (c_0 - c_2) + (c_1 - c_3) i, so |S|^2 is always a rational
integer.  No floating point is involved anywhere on the exact path.
"""

import random
from dataclasses import dataclass, field

import numpy as np

from .constructions import check_compatible
from .errors import InvalidParameters

FULL_MODE_LIMIT = 81


@dataclass(frozen=True)
class InnerProductValue:
    kind: str  # "rational-integer" or "non-rational"
    value: object  # int when rational, None otherwise
    residue_counts: tuple

    @property
    def rational(self):
        return self.kind == "rational-integer"


def inner_product_sq(u, v):
    """|<u, v>|^2 * q^2, exactly, for two exponent vectors."""
    check_compatible(u, v)
    m = u.m
    diff = (v.as_array() - u.as_array()) % m
    counts = np.bincount(diff, minlength=m)
    if m == 4:
        re = int(counts[0]) - int(counts[2])
        im = int(counts[1]) - int(counts[3])
        return InnerProductValue("rational-integer", re * re + im * im,
                                 tuple(int(c) for c in counts))
    d = [int(sum(counts[k] * counts[(k + mm) % m] for k in range(m)))
         for mm in range(m)]
    if all(dm == d[1] for dm in d[1:]):
        return InnerProductValue("rational-integer", d[0] - d[1],
                                 tuple(int(c) for c in counts))
    return InnerProductValue("non-rational", None,
                             tuple(int(c) for c in counts))


def inner_product_sq_float(u, v):
    """Floating-point oracle: |<u, v>|^2 via explicit complex vectors
    (includes the 1/q normalization, so a passing cross pair gives 1/q)."""
    q = len(u.entries)
    pu = np.exp(2j * np.pi * u.as_array() / u.m) / np.sqrt(q)
    pv = np.exp(2j * np.pi * v.as_array() / v.m) / np.sqrt(q)
    return float(abs(np.vdot(pu, pv)) ** 2)


@dataclass
class BasisVerdict:
    passed: bool
    failing_pair: tuple = None
    value: object = None


def verify_orthonormal(basis):
    """Pass iff all distinct pairs have inner_product_sq = 0.  Norms are
    q^2 (unit after normalization) by representation; asserted."""
    for i, u in enumerate(basis):
        assert inner_product_sq(u, u).value == len(u.entries) ** 2
        for j in range(i + 1, len(basis)):
            ip = inner_product_sq(u, basis[j])
            if not (ip.rational and ip.value == 0):
                return BasisVerdict(False, (i, j), ip.value)
    return BasisVerdict(True)


def verify_unbiased(b1, b2):
    """Pass iff every cross pair has inner_product_sq = q."""
    q = len(b1[0].entries)
    for i, u in enumerate(b1):
        for j, v in enumerate(b2):
            ip = inner_product_sq(u, v)
            if not (ip.rational and ip.value == q):
                return BasisVerdict(False, (i, j), ip.value)
    return BasisVerdict(True)


@dataclass
class FamilyReport:
    verdict: bool
    mode: str
    seed: object
    histogram: dict  # inner_product_sq value -> multiplicity
    failures: list = field(default_factory=list)
    pairs_checked: int = 0
    family: dict = field(default_factory=dict)

    def to_json_dict(self):
        return {
            "family": self.family,
            "mode": self.mode,
            "seed": self.seed,
            "verdict": "pass" if self.verdict else "fail",
            "histogram": {str(k): v for k, v in sorted(self.histogram.items(),
                                                       key=lambda kv: str(kv[0]))},
            "failures": self.failures,
            "pairs_checked": self.pairs_checked,
        }


def _pair_values(A, B, m):
    """Exact |S|^2 for all vector pairs of two (q, q) exponent bases.

    Returns (values, rational_mask), each (q, q).  Vectorized version of
    inner_product_sq; the scalar path is the independent cross-check.
    """
    diff = (B[None, :, :] - A[:, None, :]) % m
    counts = np.stack([(diff == k).sum(axis=2) for k in range(m)])
    if m == 4:
        re = counts[0] - counts[2]
        im = counts[1] - counts[3]
        return re * re + im * im, np.ones(re.shape, dtype=bool)
    d = np.stack([sum(counts[k] * counts[(k + mm) % m] for k in range(m))
                  for mm in range(m)])
    rational = np.all(d[1:] == d[1], axis=0)
    return d[0] - d[1], rational


def verify_family(family, mode="full", samples=200, seed=0):
    """Verify each V_a orthonormal and every basis pair unbiased.

    Standard-basis unbiasedness holds by representation (every entry of an
    exponent vector has squared magnitude 1/q); it is asserted, not computed.
    """
    q, m = family.q, family.m
    histogram = {}
    failures = []
    pairs = 0
    meta = {"q": q, "m": m, "construction": family.construction,
            "params": family.params}

    def record(value, rational, count=1):
        key = int(value) if rational else "non-rational"
        histogram[key] = histogram.get(key, 0) + count

    if mode == "full":
        if q > FULL_MODE_LIMIT:
            raise InvalidParameters(
                f"full verification limited to q <= {FULL_MODE_LIMIT}")
        T = family.table
        for a in range(q):
            for b in range(a, q):
                values, rational = _pair_values(T[a], T[b], m)
                if a == b:
                    iu, ju = np.triu_indices(q, k=0)
                    vals, rats = values[iu, ju], rational[iu, ju]
                    expected = np.where(iu == ju, q * q, 0)
                else:
                    vals, rats = values.ravel(), rational.ravel()
                    expected = np.full(vals.shape, q)
                pairs += len(vals)
                bad = ~rats | (vals != expected)
                for v in np.unique(vals[rats]):
                    record(int(v), True, int((vals[rats] == v).sum()))
                if (~rats).any():
                    record(None, False, int((~rats).sum()))
                for k in np.nonzero(bad)[0][:10]:
                    if a == b:
                        i, j = int(iu[k]), int(ju[k])
                    else:
                        i, j = int(k // q), int(k % q)
                    failures.append({
                        "bases": [a, b], "vectors": [i, j],
                        "value": int(vals[k]) if rats[k] else None,
                        "expected": int(expected[k])})
        return FamilyReport(not failures, "full", None, histogram,
                            failures, pairs, meta)

    if mode != "sampled":
        raise InvalidParameters(f"unknown mode: {mode}")
    rng = random.Random(seed)
    for a in range(q):
        for b in range(a, q):
            for _ in range(samples):
                i, j = rng.randrange(q), rng.randrange(q)
                if a == b and i == j:
                    expected = q * q
                elif a == b:
                    expected = 0
                else:
                    expected = q
                ip = inner_product_sq(family.vector(a, i),
                                      family.vector(b, j))
                pairs += 1
                record(ip.value, ip.rational)
                if not (ip.rational and ip.value == expected):
                    failures.append({"bases": [a, b], "vectors": [i, j],
                                     "value": ip.value,
                                     "expected": expected})
    return FamilyReport(not failures, "sampled", seed, histogram,
                        failures, pairs, meta)
