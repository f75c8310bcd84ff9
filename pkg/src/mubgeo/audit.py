"""Module-structure audits of MUB exponent sets.

The hat product of unit-magnitude vectors is entrywise exponent addition
(subtraction when the second factor is conjugated).  The audit derives the
pairwise-product set, closes it under addition, checks the module axioms and
scalar action, computes the rank (Gaussian elimination mod p, or invariant
factors over Z_4), and tests freeness over Z_4.
"""

from dataclasses import dataclass, field

import numpy as np

from .constructions import ExponentVector, check_compatible
from .errors import NotAModule
from . import geometry

_CHUNK = 256  # rows per broadcast chunk when forming pairwise sums


def hat_product(u, v, conjugate_second=True):
    """u hat-prod v (or v*): entrywise exponent sum/difference mod m."""
    check_compatible(u, v)
    sign = -1 if conjugate_second else 1
    entries = tuple((a + sign * b) % u.m
                    for a, b in zip(u.entries, v.entries))
    return ExponentVector(entries, u.m)


def encode_rows(rows, m):
    """Injective int64 code per row (base-m digits); rows must satisfy
    m ** ncols < 2^63."""
    rows = np.asarray(rows, dtype=np.int64)
    ncols = rows.shape[1]
    assert m ** ncols < 2 ** 62, "vectors too long for int64 encoding"
    powers = m ** np.arange(ncols, dtype=np.int64)
    return rows @ powers


def decode_rows(codes, m, ncols):
    """Inverse of encode_rows."""
    codes = np.asarray(codes, dtype=np.int64)
    out = np.empty((len(codes), ncols), dtype=np.int64)
    for c in range(ncols):
        out[:, c] = codes % m
        codes = codes // m
    return out


def _unique_rows(rows):
    return np.unique(np.asarray(rows, dtype=np.int64), axis=0)


def pairwise_differences(rows, m):
    """Unique {u - v mod m} over all row pairs, chunked for memory."""
    rows = np.asarray(rows, dtype=np.int64)
    ncols = rows.shape[1]
    powers = m ** np.arange(ncols, dtype=np.int64)
    codes = []
    for lo in range(0, len(rows), _CHUNK):
        chunk = rows[lo:lo + _CHUNK]
        diffs = (chunk[:, None, :] - rows[None, :, :]) % m
        codes.append(np.unique(diffs @ powers))
    # re-sort lexicographically so set comparisons against np.unique(axis=0)
    # output are positional
    return _unique_rows(decode_rows(np.unique(np.concatenate(codes)),
                                    m, ncols))


def additive_closure(rows, m):
    """Subgroup of (Z_m)^q generated by the rows under entrywise addition.

    Incremental span construction: each generator either lies in the current
    subgroup (O(1) membership via row codes) or multiplies its size, so the
    expensive expansion happens at most log_2(|closure|) times.
    """
    rows = _unique_rows(rows)
    ncols = rows.shape[1]
    span = np.zeros((1, ncols), dtype=np.int64)
    codes = {0}
    for g in rows:
        if int(encode_rows(g[None, :], m)[0]) in codes:
            continue
        multiples = np.stack([(span + k * g) % m for k in range(m)])
        span = _unique_rows(multiples.reshape(-1, ncols))
        codes = set(encode_rows(span, m).tolist())
    return span


def nonunit_rows(rows, m):
    """Rows whose every entry is a non-unit of Z_m ({0} for prime m,
    {0, 2} for m = 4)."""
    rows = np.asarray(rows, dtype=np.int64)
    if m == 4:
        mask = np.all(rows % 2 == 0, axis=1)
    else:
        mask = np.all(rows == 0, axis=1)
    return rows[mask]


@dataclass
class DerivedSets:
    """Pairwise hat-product set, its additive closure, and the non-unit
    subset, all as unique (N, q) arrays over Z_m."""

    m: int
    raw: np.ndarray        # distinct exponent vectors of the family itself
    pairwise: np.ndarray   # {u - v} over all family vector pairs
    closure: np.ndarray    # additive closure of `pairwise`
    u_prime: np.ndarray    # rows of `closure` with only non-unit entries

    @property
    def idempotent(self):
        """True when the pairwise set equals the raw set (N' = N)."""
        return (self.raw.shape == self.pairwise.shape
                and bool(np.array_equal(self.raw, self.pairwise)))

    @property
    def pairwise_closed(self):
        return (self.pairwise.shape == self.closure.shape
                and bool(np.array_equal(self.pairwise, self.closure)))


def derive_sets(family):
    rows = family.distinct_rows()
    pairwise = pairwise_differences(rows, family.m)
    closure = additive_closure(pairwise, family.m)
    return DerivedSets(m=family.m, raw=rows, pairwise=pairwise,
                       closure=closure,
                       u_prime=nonunit_rows(closure, family.m))


@dataclass
class AxiomVerdict:
    closure: bool
    identity_present: bool
    inverses: bool
    scalar_action_closed: bool
    witness: dict = None

    @property
    def passed(self):
        return (self.closure and self.identity_present and self.inverses
                and self.scalar_action_closed)


def module_axioms_check(rows, m):
    """Exhaustive check: additive closure, zero, inverses, and closure
    under every Z_m scalar.  Reports the failing axiom with a witness."""
    rows = _unique_rows(rows)
    codes = np.sort(encode_rows(rows, m))
    ncols = rows.shape[1]

    def contained(candidates):
        return np.isin(encode_rows(candidates, m), codes)

    identity = bool(np.isin(np.int64(0), codes))
    inv_ok = bool(contained((-rows) % m).all())

    closure_ok, witness = True, None
    for lo in range(0, len(rows), _CHUNK):
        chunk = rows[lo:lo + _CHUNK]
        sums = ((chunk[:, None, :] + rows[None, :, :]) % m).reshape(-1, ncols)
        ok = contained(sums)
        if not ok.all():
            closure_ok = False
            k = int(np.nonzero(~ok)[0][0])
            i, j = lo + k // len(rows), k % len(rows)
            witness = {"axiom": "closure",
                       "u": rows[i].tolist(), "v": rows[j].tolist(),
                       "sum": sums[k].tolist()}
            break

    scalar_ok = True
    for r in range(2, m):
        ok = contained((r * rows) % m)
        if not ok.all():
            scalar_ok = False
            if witness is None:
                k = int(np.nonzero(~ok)[0][0])
                witness = {"axiom": "scalar", "r": r,
                           "v": rows[k].tolist()}
            break
    return AxiomVerdict(closure_ok, identity, inv_ok, scalar_ok, witness)


def rank_mod_p(rows, p):
    """Row-echelon rank over Z_p."""
    mat = _unique_rows(rows) % p
    rank, col = 0, 0
    nrows, ncols = mat.shape
    while rank < nrows and col < ncols:
        pivot = np.nonzero(mat[rank:, col])[0]
        if len(pivot) == 0:
            col += 1
            continue
        r = rank + int(pivot[0])
        mat[[rank, r]] = mat[[r, rank]]
        mat[rank] = (mat[rank] * pow(int(mat[rank, col]), p - 2, p)) % p
        rest = np.nonzero(mat[:, col])[0]
        rest = rest[rest != rank]
        mat[rest] = (mat[rest] - np.outer(mat[rest, col], mat[rank])) % p
        rank += 1
        col += 1
    return rank


def z4_invariant_counts(rows):
    """Invariant factors of the Z_4-module generated by the rows: returns
    (number of Z_4 summands, number of Z_2 summands)."""
    mat = _unique_rows(rows) % 4
    mat = mat[np.any(mat, axis=1)]
    ones = twos = 0
    while mat.size:
        ur, uc = np.nonzero(mat % 2 == 1)
        if len(ur):
            r, c = int(ur[0]), int(uc[0])
            inv = 1 if mat[r, c] == 1 else 3  # 3 is self-inverse in Z_4
            row = (inv * mat[r]) % 4
            mat = np.delete(mat, r, axis=0)
            mat = (mat - np.outer(mat[:, c], row)) % 4
            mat = np.delete(mat, c, axis=1)
            mat = mat[np.any(mat, axis=1)]
            ones += 1
        else:
            # everything even: the remaining module is 2 * (mod-2 module)
            twos = rank_mod_p(mat // 2, 2)
            break
    return ones, twos


@dataclass
class FreeVerdict:
    passed: bool
    witness: list = None  # a 2-torsion vector with no half, if any


def free_check(rows, m=4):
    """Over Z_4: every 2-torsion element must be twice a module element."""
    rows = _unique_rows(rows) % 4
    torsion = rows[np.all(rows % 2 == 0, axis=1)]
    doubled_codes = np.sort(np.unique(encode_rows((2 * rows) % 4, 4)))
    hit = np.isin(encode_rows(torsion, 4), doubled_codes)
    if hit.all():
        return FreeVerdict(True)
    return FreeVerdict(False, torsion[int(np.nonzero(~hit)[0][0])].tolist())


@dataclass
class AuditReport:
    construction: str
    m: int
    axioms: AxiomVerdict
    rank: int
    free: object  # FreeVerdict for m = 4, None otherwise
    invariants: object  # (z4_summands, z2_summands) for m = 4
    projective_dimension: int
    vector_count: int
    raw_count: int
    pairwise_count: int
    raw_closed: bool
    raw_witness: dict
    idempotent: bool
    census: dict
    discrepancies: list = field(default_factory=list)

    @property
    def passed(self):
        free_ok = self.free.passed if self.free is not None else True
        return self.axioms.passed and free_ok

    def to_json_dict(self):
        return {
            "construction": self.construction,
            "m": self.m,
            "closure": self.axioms.closure,
            "identity_present": self.axioms.identity_present,
            "inverses": self.axioms.inverses,
            "scalar_action_closed": self.axioms.scalar_action_closed,
            "axiom_witness": self.axioms.witness,
            "rank": self.rank,
            "free": None if self.free is None else self.free.passed,
            "free_witness": None if self.free is None else self.free.witness,
            "invariants": list(self.invariants) if self.invariants else None,
            "projective_dimension": self.projective_dimension,
            "vector_count": self.vector_count,
            "raw_count": self.raw_count,
            "pairwise_count": self.pairwise_count,
            "raw_closed": self.raw_closed,
            "raw_witness": self.raw_witness,
            "idempotent": self.idempotent,
            "census": self.census,
            "discrepancies": self.discrepancies,
            "verdict": "pass" if self.passed else "fail",
        }


def audit_family(family):
    """Full structural audit: derived sets, module axioms, rank, freeness,
    and the geometric census, with discrepancy notes."""
    m = family.m
    sets = derive_sets(family)
    audited = sets.closure
    raw_axioms = module_axioms_check(sets.raw, m)

    axioms = module_axioms_check(audited, m)
    if not axioms.passed:
        raise NotAModule("derived closure fails module axioms",
                         witness=axioms.witness)

    discrepancies = []
    free = invariants = None
    if m == 4:
        ones, twos = z4_invariant_counts(audited)
        invariants = (ones, twos)
        rank = ones
        free = free_check(audited)
        if twos:
            discrepancies.append(
                f"module is not free: invariant profile Z4^{ones} x Z2^{twos}")
        n = family.params.get("n")
        discrepancies.append(
            "even-dimension source states a 2^(n-1)-dimensional subspace; "
            f"computed free rank {rank} (projective dimension {rank - 1}) "
            f"for n = {n}")
    else:
        rank = rank_mod_p(audited, m)

    if not sets.idempotent:
        discrepancies.append(
            f"derived pairwise set differs from the raw set "
            f"({sets.pairwise.shape[0]} vs {sets.raw.shape[0]} vectors); "
            "module checks run on the additive closure "
            f"({audited.shape[0]} vectors)")

    census = geometry.subspace_points(audited, m, rank=rank)

    return AuditReport(
        construction=family.construction, m=m, axioms=axioms, rank=rank,
        free=free, invariants=invariants, projective_dimension=rank - 1,
        vector_count=int(audited.shape[0]),
        raw_count=int(sets.raw.shape[0]),
        pairwise_count=int(sets.pairwise.shape[0]),
        raw_closed=raw_axioms.passed, raw_witness=raw_axioms.witness,
        idempotent=sets.idempotent, census=census.to_json_dict(),
        discrepancies=discrepancies)
