"""Build complete MUB families as exponent matrices.

A family in dimension q is stored as a (q, q, q) integer array ``table``
with table[a, b, x] in Z_m: basis V_a, vector index b, coordinate index x.
The encoded complex vector is (1/sqrt(q)) * omega_m ** table[a, b, :], with
the 1/sqrt(q) scalar implicit.  The standard basis is carried as a symbolic
marker only, since its entries contain zeros.
"""

import csv
from dataclasses import dataclass, field

import numpy as np

from .errors import (CharacteristicTooSmall, InvalidParameters,
                     LengthMismatch)
from .finite_field import Field, require_planar
from .galois_ring import GaloisRing


@dataclass(frozen=True)
class ExponentVector:
    """Length-q vector over Z_m encoding (1/sqrt(q)) * omega_m^entries."""

    entries: tuple
    m: int

    def __post_init__(self):
        if not all(0 <= e < self.m for e in self.entries):
            raise InvalidParameters("entries must lie in [0, m)")

    def __len__(self):
        return len(self.entries)

    def as_array(self):
        return np.array(self.entries, dtype=np.int64)


def check_compatible(u, v):
    if len(u.entries) != len(v.entries) or u.m != v.m:
        raise LengthMismatch(
            f"incompatible vectors: lengths {len(u.entries)}/{len(v.entries)}"
            f", orders {u.m}/{v.m}")


@dataclass
class MubFamily:
    """q exponent bases V_a plus the symbolic standard basis."""

    q: int
    m: int
    construction: str
    params: dict
    table: np.ndarray  # shape (q, q, q), entries in [0, m)
    includes_standard_basis: bool = field(default=True)

    def __post_init__(self):
        self.table = np.asarray(self.table, dtype=np.int64) % self.m
        if self.table.shape != (self.q, self.q, self.q):
            raise InvalidParameters(
                f"table shape {self.table.shape} != {(self.q,) * 3}")

    @property
    def num_bases(self):
        """Counting the standard basis: q + 1."""
        return self.q + (1 if self.includes_standard_basis else 0)

    def vector(self, a, b):
        return ExponentVector(tuple(int(e) for e in self.table[a, b]), self.m)

    def basis(self, a):
        return [self.vector(a, b) for b in range(self.q)]

    def all_rows(self):
        """All q^2 non-standard exponent vectors as a (q^2, q) array."""
        return self.table.reshape(self.q * self.q, self.q)

    def distinct_rows(self):
        return np.unique(self.all_rows(), axis=0)

    # -- serialization ------------------------------------------------------

    def to_json_dict(self):
        return {
            "q": self.q,
            "m": self.m,
            "construction": self.construction,
            "params": self.params,
            "includes_standard_basis": self.includes_standard_basis,
            "bases": self.table.tolist(),
        }

    @classmethod
    def from_json_dict(cls, data):
        return cls(q=data["q"], m=data["m"],
                   construction=data["construction"],
                   params=dict(data["params"]),
                   table=np.array(data["bases"], dtype=np.int64),
                   includes_standard_basis=data.get(
                       "includes_standard_basis", True))

    def to_csv(self, fileobj):
        writer = csv.writer(fileobj)
        writer.writerow(["a", "b"] + [f"e_{x}" for x in range(self.q)])
        for a in range(self.q):
            for b in range(self.q):
                writer.writerow([a, b] + [int(e) for e in self.table[a, b]])

    def to_complex(self):
        """Explicit complex vectors; debug/oracle use only."""
        phases = np.exp(2j * np.pi * self.table / self.m)
        return phases / np.sqrt(self.q)


def _assert_distinct(family):
    # all q^2 non-standard vectors must be pairwise distinct
    assert len(family.distinct_rows()) == family.q ** 2, \
        "constructed family has repeated vectors"


def build_planar(fld, pi=None, pi_coeffs=None):
    """Planar-function family: table[a, b, x] = tr(a*pi(x) + b*x)."""
    if pi is None:
        coeffs = pi_coeffs if pi_coeffs is not None else [0, 0, 1]
        pi = lambda x: fld.eval_int_poly(coeffs, x)  # noqa: E731
        params_poly = list(coeffs)
    else:
        params_poly = pi_coeffs if pi_coeffs is not None else None
    require_planar(fld, pi)
    q, p = fld.q, fld.p
    pi_vals = [pi(x) for x in fld.elements]
    tr_a_pi = np.array([[fld.trace(fld.mul(a, pix)) for pix in pi_vals]
                        for a in fld.elements], dtype=np.int64)
    tr_b_x = np.array([[fld.trace(fld.mul(b, x)) for x in fld.elements]
                       for b in fld.elements], dtype=np.int64)
    table = (tr_a_pi[:, None, :] + tr_b_x[None, :, :]) % p
    fam = MubFamily(q=q, m=p, construction="planar",
                    params={"p": p, "n": fld.n,
                            "modulus": list(fld.modulus),
                            "planar_poly": params_poly},
                    table=table)
    _assert_distinct(fam)
    return fam


def build_alltop(fld):
    """Alltop family: table[a, b, x] = tr((x+a)^3 + b(x+a)); needs p >= 5."""
    if fld.p < 5:
        raise CharacteristicTooSmall(
            f"Alltop construction requires characteristic >= 5, got {fld.p}")
    q, p = fld.q, fld.p
    # shift index: idx(x + a)
    shift = np.array([[fld.index[fld.add(x, a)] for x in fld.elements]
                      for a in fld.elements], dtype=np.int64)
    tr_cube = np.array([fld.trace(fld.pow(y, 3)) for y in fld.elements],
                       dtype=np.int64)
    tr_b_y = np.array([[fld.trace(fld.mul(b, y)) for y in fld.elements]
                       for b in fld.elements], dtype=np.int64)
    table = np.empty((q, q, q), dtype=np.int64)
    for a in range(q):
        y_idx = shift[a]
        table[a] = (tr_cube[y_idx][None, :] + tr_b_y[:, y_idx]) % p
    fam = MubFamily(q=q, m=p, construction="alltop",
                    params={"p": p, "n": fld.n,
                            "modulus": list(fld.modulus)},
                    table=table)
    _assert_distinct(fam)
    return fam


def default_symplectic_s(n):
    """Smallest s with gcd(s, n) = 1 and s < n/2."""
    for s in range(1, (n + 1) // 2):
        if np.gcd(s, n) == 1 and s < n / 2:
            return s
    raise InvalidParameters(f"no valid s exists for n = {n}")


def validate_symplectic_params(n, s=None):
    """Hypothesis check: n odd, 1 <= s < n/2, gcd(s, n) = 1.  Returns the
    validated s (the smallest valid one when omitted)."""
    if n % 2 == 0:
        raise InvalidParameters(f"n must be odd, got {n}")
    if s is None:
        s = default_symplectic_s(n)
    if not (1 <= s < n / 2):
        raise InvalidParameters(f"s must satisfy 1 <= s < n/2, got s={s}")
    if np.gcd(s, n) != 1:
        raise InvalidParameters(f"s and n must be coprime, got s={s}, n={n}")
    return s


def build_symplectic(fld, s=None):
    """Symplectic-spread family indexed by the quadratic-kernel coefficient:
    table[a, b, x] = tr(b*x + a*x^(p^(n-s)+1) + a^(p^s)*x^(p^s+1))."""
    n, p, q = fld.n, fld.p, fld.q
    s = validate_symplectic_params(n, s)
    t1 = [fld.pow(x, p ** (n - s) + 1) for x in fld.elements]
    t2 = [fld.pow(x, p ** s + 1) for x in fld.elements]
    tr_a_x = np.array([[fld.trace(fld.mul(a, x)) for x in fld.elements]
                       for a in fld.elements], dtype=np.int64)
    b_part = np.empty((q, q), dtype=np.int64)
    for bi, b in enumerate(fld.elements):
        bs = fld.pow(b, p ** s)
        b_part[bi] = [(fld.trace(fld.mul(b, t1[xi]))
                       + fld.trace(fld.mul(bs, t2[xi]))) % p
                      for xi in range(q)]
    # bases are labeled by the coefficient of the quadratic kernel; grouping
    # by the linear coefficient instead does not give orthonormal sets
    table = (b_part[:, None, :] + tr_a_x[None, :, :]) % p
    fam = MubFamily(q=q, m=p, construction="symplectic",
                    params={"p": p, "n": n, "s": s,
                            "modulus": list(fld.modulus)},
                    table=table)
    _assert_distinct(fam)
    return fam


def build_galois_ring(ring):
    """Galois-ring family: table[a, b, x] = tr((a + 2b) * x) over the
    Teichmueller enumeration, with m = 4."""
    q = ring.q
    teich = ring.teichmuller
    table = np.empty((q, q, q), dtype=np.int64)
    for ai, a in enumerate(teich):
        for bi, b in enumerate(teich):
            alpha = ring.add(a, ring.scalar_mul(2, b))
            table[ai, bi] = [ring.trace(ring.mul(alpha, x)) for x in teich]
    fam = MubFamily(q=q, m=4, construction="galois-ring",
                    params={"n": ring.n, "modulus": list(ring.modulus)},
                    table=table)
    _assert_distinct(fam)
    return fam


def build_family(construction, p=None, n=None, s=None, planar_poly=None):
    """Dispatch helper used by the CLI and the service layer."""
    if construction == "galois-ring":
        if n is None:
            raise InvalidParameters("galois-ring construction requires n")
        return build_galois_ring(GaloisRing(n))
    if p is None or n is None:
        raise InvalidParameters(f"{construction} construction requires p, n")
    fld = Field(p, n)
    if construction == "planar":
        return build_planar(fld, pi_coeffs=planar_poly)
    if construction == "alltop":
        return build_alltop(fld)
    if construction == "symplectic":
        return build_symplectic(fld, s)
    raise InvalidParameters(f"unknown construction: {construction}")
