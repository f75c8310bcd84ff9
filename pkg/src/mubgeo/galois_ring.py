"""Exact arithmetic in the Galois ring GR(4,n).

Elements are length-n coefficient tuples over Z_4, reduced modulo a basic
primitive polynomial.  The modulus is obtained by Graeffe-iterating the
Hensel lift of the smallest irreducible degree-n polynomial over Z_2, so its
root xi generates the Teichmueller group: xi^(2^n - 1) = 1.  Every element
decomposes uniquely as a + 2b with a, b Teichmueller.
"""

from collections import namedtuple
from itertools import product

from .errors import InvalidDegree, InvalidParameters, ReducibleModulus
from .finite_field import is_irreducible, poly_trim, smallest_irreducible


def _z4_polymul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % 4
    return out


def _z4_polymod(a, f):
    """Remainder of a modulo monic f, over Z_4."""
    a = list(a)
    n = len(f) - 1
    for top in range(len(a) - 1, n - 1, -1):
        lead = a[top]
        if lead:
            for i in range(n + 1):
                a[top - n + i] = (a[top - n + i] - lead * f[i]) % 4
    return a[:n] + [0] * max(0, n - len(a))


def graeffe_lift(f2, n, max_iter=10):
    """Hensel lift of an irreducible f over Z_2 to a basic primitive
    polynomial over Z_4 via the squaring iteration g(x^2) = +-f(x)f(-x)."""
    f = [c % 4 for c in f2]
    for _ in range(max_iter):
        fneg = [c if i % 2 == 0 else (-c) % 4 for i, c in enumerate(f)]
        h = _z4_polymul(f, fneg)
        if n % 2 == 1:
            h = [(-c) % 4 for c in h]
        assert all(c == 0 for i, c in enumerate(h) if i % 2 == 1)
        g = h[0::2]
        if g == f:
            return f
        f = g
    raise AssertionError("Graeffe iteration did not stabilize")


TraceKernelVerdict = namedtuple("TraceKernelVerdict",
                                ["passed", "kernel_size", "image_size"])


class GaloisRing:
    """GR(4,n) with elements as length-n coefficient tuples over Z_4."""

    def __init__(self, n, modulus=None):
        if n < 1:
            raise InvalidDegree(f"degree must be >= 1, got {n}")
        if modulus is None:
            modulus = graeffe_lift(smallest_irreducible(2, n), n)
        else:
            modulus = [c % 4 for c in modulus]
            if len(poly_trim(modulus)) != n + 1 or modulus[n] != 1:
                raise InvalidParameters(
                    f"modulus must be monic of degree {n}: {modulus}")
            if not is_irreducible([c % 2 for c in modulus], 2):
                raise ReducibleModulus(
                    f"modulus mod 2 is reducible over Z_2: {modulus}")
        self.n = n
        self.q = 2 ** n
        self.modulus = tuple(modulus)
        self.zero = (0,) * n
        self.one = tuple([1] + [0] * (n - 1))
        self._build_teichmuller()

    # -- arithmetic ---------------------------------------------------------

    def add(self, a, b):
        return tuple((x + y) % 4 for x, y in zip(a, b))

    def sub(self, a, b):
        return tuple((x - y) % 4 for x, y in zip(a, b))

    def neg(self, a):
        return tuple((-x) % 4 for x in a)

    def scalar_mul(self, r, a):
        return tuple((r * x) % 4 for x in a)

    def mul(self, a, b):
        return tuple(_z4_polymod(_z4_polymul(list(a), list(b)),
                                 list(self.modulus)))

    def pow(self, a, e):
        acc = self.one
        base = a
        while e:
            if e & 1:
                acc = self.mul(acc, base)
            base = self.mul(base, base)
            e >>= 1
        return acc

    def is_unit(self, a):
        return any(c % 2 for c in a)

    def all_elements(self):
        """All 4^n elements, lexicographic by coefficient tuple."""
        return [t[::-1] for t in product(range(4), repeat=self.n)]

    # -- Teichmueller structure --------------------------------------------

    def _build_teichmuller(self):
        if self.n == 1:
            teich = [(0,), (1,)]
        else:
            xi = tuple([0, 1] + [0] * (self.n - 2))
            teich = [self.zero, self.one]
            x = xi
            for _ in range(self.q - 2):
                teich.append(x)
                x = self.mul(x, xi)
            if x != self.one:
                raise InvalidParameters(
                    "modulus is not basic primitive: its root does not "
                    "satisfy x^(2^n - 1) = 1")
        assert len(set(teich)) == self.q
        # mod-2 reductions must be pairwise distinct
        assert len({tuple(c % 2 for c in t) for t in teich}) == self.q
        self.teichmuller = teich
        self.teich_index = {t: i for i, t in enumerate(teich)}
        # unique 2-adic decomposition table: a + 2b -> (a, b)
        decomp = {}
        for a in teich:
            for b in teich:
                elem = self.add(a, self.scalar_mul(2, b))
                assert elem not in decomp
                decomp[elem] = (a, b)
        assert len(decomp) == 4 ** self.n
        self._decomp = decomp

    def decompose(self, x):
        """Unique (a, b) with x = a + 2b and a, b Teichmueller."""
        return self._decomp[x]

    def frobenius(self, x):
        """Generalized Frobenius: a + 2b -> a^2 + 2b^2."""
        a, b = self.decompose(x)
        return self.add(self.mul(a, a), self.scalar_mul(2, self.mul(b, b)))

    def trace(self, x):
        """Sum of generalized Frobenius conjugates; lands in Z_4."""
        acc = self.zero
        y = x
        for _ in range(self.n):
            acc = self.add(acc, y)
            y = self.frobenius(y)
        assert all(c == 0 for c in acc[1:]), acc
        return acc[0]

    def trace_cache(self):
        """tr on the full element set, as a dict keyed by element."""
        if not hasattr(self, "_trace_cache"):
            self._trace_cache = {e: self.trace(e) for e in self.all_elements()}
        return self._trace_cache


def trace_kernel_check(ring):
    """Exhaustively verify ker(tr) = { beta - phi(beta) } in GR(4,n)."""
    if 4 ** ring.n > 65536:
        raise InvalidParameters(f"n = {ring.n} too large for exhaustion")
    elements = ring.all_elements()
    kernel = {e for e in elements if ring.trace(e) == 0}
    image = {ring.sub(b, ring.frobenius(b)) for b in elements}
    return TraceKernelVerdict(kernel == image, len(kernel), len(image))
