"""Exact arithmetic in GF(p^n) with a fixed, reproducible element enumeration.

Polynomials are ascending coefficient lists: x^2 + 1 over Z_3 is [1, 0, 1].
Field elements are length-n coefficient tuples over Z_p.  The enumeration
order is 0, 1, g, g^2, ..., g^(q-2) for the lexicographically smallest
primitive element g, so every artifact indexed "by x in F_q" is bit-for-bit
reproducible.
"""

from collections import namedtuple

from .errors import NonPrime, NotPlanar, ReducibleModulus


def is_prime(m):
    if m < 2:
        return False
    d = 2
    while d * d <= m:
        if m % d == 0:
            return False
        d += 1
    return True


# ---------------------------------------------------------------------------
# polynomial arithmetic over Z_p (ascending coefficient lists)
# ---------------------------------------------------------------------------

def poly_trim(f):
    f = list(f)
    while f and f[-1] == 0:
        f.pop()
    return f


def poly_mul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return poly_trim(out)


def poly_mod(a, f, p):
    """Remainder of a modulo the monic polynomial f."""
    a = list(a)
    n = len(f) - 1
    while len(poly_trim(a)) > n:
        a = poly_trim(a)
        lead = a[-1]
        shift = len(a) - 1 - n
        for i in range(n + 1):
            a[shift + i] = (a[shift + i] - lead * f[i]) % p
    return poly_trim(a)


def poly_sub(a, b, p):
    m = max(len(a), len(b))
    a = list(a) + [0] * (m - len(a))
    b = list(b) + [0] * (m - len(b))
    return poly_trim([(x - y) % p for x, y in zip(a, b)])


def poly_powmod(base, e, f, p):
    result = [1]
    base = poly_mod(base, f, p)
    while e:
        if e & 1:
            result = poly_mod(poly_mul(result, base, p), f, p)
        base = poly_mod(poly_mul(base, base, p), f, p)
        e >>= 1
    return result


def poly_gcd(a, b, p):
    a, b = poly_trim(a), poly_trim(b)
    while b:
        # make b monic so poly_mod applies
        inv = pow(b[-1], p - 2, p)
        b = [(c * inv) % p for c in b]
        a, b = b, poly_mod(a, b, p)
    return poly_trim(a)


def prime_factors(n):
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def is_irreducible(f, p):
    """Rabin test: x^(p^n) = x mod f and gcd(x^(p^(n/l)) - x, f) = 1."""
    f = poly_trim(f)
    n = len(f) - 1
    if n < 1 or f[-1] != 1:
        return False
    if n == 1:
        return True
    if f[0] == 0:  # divisible by x
        return False
    x = [0, 1]
    if poly_sub(poly_powmod(x, p ** n, f, p), x, p) != []:
        return False
    for ell in prime_factors(n):
        diff = poly_sub(poly_powmod(x, p ** (n // ell), f, p), x, p)
        if len(poly_gcd(diff, f, p)) > 1:
            return False
    return True


def smallest_irreducible(p, n):
    """Lexicographically smallest (by ascending coefficients) monic
    irreducible of degree n over Z_p."""
    if n == 1:
        return [0, 1]

    def candidates():
        total = p ** n
        for code in range(total):
            coeffs = []
            c = code
            for _ in range(n):
                coeffs.append(c % p)
                c //= p
            yield coeffs + [1]

    for f in candidates():
        if is_irreducible(f, p):
            return f
    raise AssertionError("no irreducible polynomial found")  # unreachable


# ---------------------------------------------------------------------------
# the field
# ---------------------------------------------------------------------------

PlanarVerdict = namedtuple("PlanarVerdict", ["planar", "witness"])


class Field:
    """GF(p^n) with elements as length-n coefficient tuples over Z_p."""

    def __init__(self, p, n, modulus=None):
        if not is_prime(p) or p == 2:
            raise NonPrime(f"p must be an odd prime, got {p}")
        if n < 1:
            raise ReducibleModulus(f"extension degree must be >= 1, got {n}")
        if modulus is None:
            modulus = smallest_irreducible(p, n)
        else:
            modulus = list(modulus)
            if len(poly_trim(modulus)) != n + 1 or modulus[n] != 1:
                raise ReducibleModulus(
                    f"modulus must be monic of degree {n}: {modulus}")
            if not is_irreducible(modulus, p):
                raise ReducibleModulus(
                    f"modulus is reducible over Z_{p}: {modulus}")
        self.p = p
        self.n = n
        self.q = p ** n
        self.modulus = tuple(modulus)
        self.zero = (0,) * n
        self.one = tuple([1] + [0] * (n - 1))
        self._build_enumeration()

    # -- core arithmetic ----------------------------------------------------

    def add(self, a, b):
        return tuple((x + y) % self.p for x, y in zip(a, b))

    def neg(self, a):
        return tuple((-x) % self.p for x in a)

    def sub(self, a, b):
        return tuple((x - y) % self.p for x, y in zip(a, b))

    def scalar_mul(self, r, a):
        return tuple((r * x) % self.p for x in a)

    def mul(self, a, b):
        if a == self.zero or b == self.zero:
            return self.zero
        k = (self._log[a] + self._log[b]) % (self.q - 1)
        return self._exp[k]

    def inv(self, a):
        if a == self.zero:
            raise ZeroDivisionError("zero has no inverse")
        return self._exp[(-self._log[a]) % (self.q - 1)]

    def pow(self, a, e):
        if a == self.zero:
            return self.one if e == 0 else self.zero
        return self._exp[(self._log[a] * e) % (self.q - 1)]

    def frobenius(self, a):
        return self.pow(a, self.p)

    def trace(self, a):
        """Sum of Frobenius conjugates; lands in the prime subfield."""
        acc = self.zero
        x = a
        for _ in range(self.n):
            acc = self.add(acc, x)
            x = self.frobenius(x)
        assert all(c == 0 for c in acc[1:]), acc
        return acc[0]

    def eval_int_poly(self, coeffs, x):
        """Evaluate sum c_k x^k where the c_k are Z_p scalars (Horner)."""
        acc = self.zero
        for c in reversed(coeffs):
            acc = self.add(self.mul(acc, x),
                           self.scalar_mul(c % self.p, self.one))
        return acc

    # -- enumeration --------------------------------------------------------

    def _mul_slow(self, a, b):
        prod_poly = poly_mul(list(a), list(b), self.p)
        r = poly_mod(prod_poly, list(self.modulus), self.p)
        return tuple(r + [0] * (self.n - len(r)))

    def _build_enumeration(self):
        p, n, q = self.p, self.n, self.q
        # lex order on coefficient tuples, skipping zero
        def all_nonzero():
            for code in range(1, q):
                c, coeffs = code, []
                for _ in range(n):
                    coeffs.append(c % p)
                    c //= p
                yield tuple(coeffs)

        generator = None
        for cand in sorted(all_nonzero()):
            order, x = 1, cand
            while x != self.one:
                x = self._mul_slow(x, cand)
                order += 1
            if order == q - 1:
                generator = cand
                break
        assert generator is not None
        self.generator = generator
        exp = [self.one]
        for _ in range(q - 2):
            exp.append(self._mul_slow(exp[-1], generator))
        self._exp = exp
        self._log = {e: k for k, e in enumerate(exp)}
        self.elements = [self.zero] + exp
        self.index = {e: i for i, e in enumerate(self.elements)}

    def trace_table(self):
        """Trace of every element, indexed by enumeration order."""
        if not hasattr(self, "_trace_table"):
            self._trace_table = tuple(self.trace(e) for e in self.elements)
        return self._trace_table


def planar_check(field, pi):
    """Test whether x -> pi(x + a) - pi(x) is a bijection for every a != 0.

    ``pi`` is a callable element -> element or a list indexed by the field
    enumeration.  Returns a PlanarVerdict with a witness a on failure.
    """
    if not callable(pi):
        table = list(pi)
        pi = lambda x: table[field.index[x]]  # noqa: E731
    for a in field.elements[1:]:
        seen = {field.sub(pi(field.add(x, a)), pi(x)) for x in field.elements}
        if len(seen) != field.q:
            return PlanarVerdict(False, a)
    return PlanarVerdict(True, None)


def require_planar(field, pi):
    verdict = planar_check(field, pi)
    if not verdict.planar:
        raise NotPlanar(
            f"difference map is not bijective for a = {list(verdict.witness)}",
            witness=list(verdict.witness))
