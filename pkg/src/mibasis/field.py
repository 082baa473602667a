"""Prime-field scalars and dense univariate polynomial arithmetic.

Scalars are plain Python ints in [0, p).  A polynomial is a list of such
ints, index i holding the coefficient of X^i, normalized so the last entry
is nonzero; [] is the zero polynomial, whose degree is the distinguished
value MINUS_INF.

All operations hang off a PrimeField instance, which fixes the prime (odd,
below 2**62) and caches the data needed by the NTT multiplication path.
Multiplication walks a three-rung ladder: schoolbook below a size
threshold, NTT when the field supports a large enough power-of-two root of
unity, Karatsuba otherwise.  The three algorithms are exposed separately
and agree bit-exactly.
"""

from __future__ import annotations

try:
    import numpy as _np
except ImportError:  # pragma: no cover
    _np = None

MINUS_INF = float("-inf")

SCHOOLBOOK_THRESHOLD = 32

_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, valid for all n below 3.3e24."""
    if n < 2:
        return False
    for q in _MR_WITNESSES:
        if n % q == 0:
            return n == q
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_WITNESSES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


class PrimeField:
    """Arithmetic context for F_p with p an odd prime below 2**62."""

    __slots__ = ("p", "two_adicity", "_odd_part", "_ntt_root", "_fact", "_inv_fact")

    def __init__(self, p: int):
        if not isinstance(p, int) or not is_prime(p):
            raise ValueError("p is not prime")
        if p == 2:
            raise ValueError("p must be an odd prime")
        if p >= 1 << 62:
            raise ValueError("p must fit in 62 bits")
        self.p = p
        d, a = p - 1, 0
        while d % 2 == 0:
            d //= 2
            a += 1
        self.two_adicity = a
        self._odd_part = d
        self._ntt_root = None
        self._fact = None
        self._inv_fact = None

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("PrimeField", self.p))

    def __repr__(self):
        return f"PrimeField({self.p})"

    # -- scalars -----------------------------------------------------------

    def add(self, a: int, b: int) -> int:
        return (a + b) % self.p

    def sub(self, a: int, b: int) -> int:
        return (a - b) % self.p

    def mul(self, a: int, b: int) -> int:
        return a * b % self.p

    def neg(self, a: int) -> int:
        return -a % self.p

    def inv(self, a: int) -> int:
        if a % self.p == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(a, self.p - 2, self.p)

    # -- polynomial basics -------------------------------------------------

    @staticmethod
    def normalize(coeffs: list[int]) -> list[int]:
        """Strip trailing zeros (coefficients assumed already reduced)."""
        n = len(coeffs)
        while n and coeffs[n - 1] == 0:
            n -= 1
        return coeffs[:n]

    def poly(self, coeffs) -> list[int]:
        """Build a normalized polynomial, reducing coefficients mod p."""
        return self.normalize([c % self.p for c in coeffs])

    @staticmethod
    def deg(f: list[int]):
        """Degree of f, MINUS_INF for the zero polynomial."""
        return len(f) - 1 if f else MINUS_INF

    def poly_add(self, f: list[int], g: list[int]) -> list[int]:
        if len(f) < len(g):
            f, g = g, f
        out = f[:]
        for i, c in enumerate(g):
            out[i] = (out[i] + c) % self.p
        return self.normalize(out)

    def poly_sub(self, f: list[int], g: list[int]) -> list[int]:
        n = max(len(f), len(g))
        out = [0] * n
        for i, c in enumerate(f):
            out[i] = c
        for i, c in enumerate(g):
            out[i] = (out[i] - c) % self.p
        return self.normalize(out)

    def poly_neg(self, f: list[int]) -> list[int]:
        return [-c % self.p for c in f]

    def poly_scale(self, f: list[int], c: int) -> list[int]:
        c %= self.p
        if c == 0:
            return []
        return [c * x % self.p for x in f]

    @staticmethod
    def poly_trunc(f: list[int], k: int) -> list[int]:
        """f mod X^k."""
        return PrimeField.normalize(f[:max(k, 0)])

    @staticmethod
    def poly_shift_up(f: list[int], k: int) -> list[int]:
        """f * X^k."""
        return [0] * k + f if f else []

    def poly_eval(self, f: list[int], x: int) -> int:
        acc = 0
        for c in reversed(f):
            acc = (acc * x + c) % self.p
        return acc

    def poly_monic(self, f: list[int]) -> list[int]:
        if not f:
            return []
        return self.poly_scale(f, self.inv(f[-1]))

    # -- multiplication ladder ----------------------------------------------

    def poly_mul_schoolbook(self, f: list[int], g: list[int]) -> list[int]:
        if not f or not g:
            return []
        p = self.p
        if _np is not None and (p - 1) * (p - 1) * min(len(f), len(g)) < (1 << 63):
            out = _np.convolve(_np.asarray(f, dtype=_np.int64), _np.asarray(g, dtype=_np.int64))
            return self.normalize((out % p).tolist())
        out = [0] * (len(f) + len(g) - 1)
        for i, a in enumerate(f):
            if a:
                for j, b in enumerate(g):
                    out[i + j] += a * b
        return self.normalize([c % p for c in out])

    def poly_mul_karatsuba(self, f: list[int], g: list[int]) -> list[int]:
        if not f or not g:
            return []
        if min(len(f), len(g)) < SCHOOLBOOK_THRESHOLD:
            return self.poly_mul_schoolbook(f, g)
        k = (max(len(f), len(g)) + 1) // 2
        f0, f1 = self.normalize(f[:k]), f[k:]
        g0, g1 = self.normalize(g[:k]), g[k:]
        lo = self.poly_mul_karatsuba(f0, g0)
        hi = self.poly_mul_karatsuba(f1, g1)
        mid = self.poly_mul_karatsuba(self.poly_add(f0, f1), self.poly_add(g0, g1))
        mid = self.poly_sub(self.poly_sub(mid, lo), hi)
        out = self.poly_add(lo, self.poly_shift_up(mid, k))
        return self.poly_add(out, self.poly_shift_up(hi, 2 * k))

    def ntt_root(self) -> int:
        """Generator of the 2-Sylow subgroup of F_p*, of order 2^two_adicity."""
        if self._ntt_root is None:
            p = self.p
            c = 2
            while pow(c, (p - 1) // 2, p) != p - 1:
                c += 1
            self._ntt_root = pow(c, self._odd_part, p)
        return self._ntt_root

    def ntt_capacity(self) -> int:
        """Largest supported transform length (a power of two)."""
        return 1 << self.two_adicity

    def _ntt(self, vec: list[int], n: int, invert: bool) -> list[int]:
        p = self.p
        root = pow(self.ntt_root(), self.ntt_capacity() // n, p)
        if invert:
            root = pow(root, p - 2, p)
        a = vec[:] + [0] * (n - len(vec))
        j = 0
        for i in range(1, n):
            bit = n >> 1
            while j & bit:
                j ^= bit
                bit >>= 1
            j |= bit
            if i < j:
                a[i], a[j] = a[j], a[i]
        length = 2
        while length <= n:
            wl = pow(root, n // length, p)
            half = length // 2
            for start in range(0, n, length):
                w = 1
                for k in range(start, start + half):
                    u = a[k]
                    v = a[k + half] * w % p
                    a[k] = (u + v) % p
                    a[k + half] = (u - v) % p
                    w = w * wl % p
            length <<= 1
        if invert:
            ninv = pow(n, p - 2, p)
            a = [x * ninv % p for x in a]
        return a

    def poly_mul_ntt(self, f: list[int], g: list[int]) -> list[int]:
        if not f or not g:
            return []
        need = len(f) + len(g) - 1
        n = 1
        while n < need:
            n <<= 1
        if n > self.ntt_capacity():
            raise ValueError("field lacks a root of unity of the required order")
        fa = self._ntt(f, n, False)
        ga = self._ntt(g, n, False)
        p = self.p
        prod = [a * b % p for a, b in zip(fa, ga)]
        return self.normalize(self._ntt(prod, n, True)[:need])

    def poly_mul(self, f: list[int], g: list[int]) -> list[int]:
        """Product of two polynomials (schoolbook / NTT / Karatsuba ladder)."""
        if not f or not g:
            return []
        if min(len(f), len(g)) < SCHOOLBOOK_THRESHOLD:
            return self.poly_mul_schoolbook(f, g)
        need = len(f) + len(g) - 1
        n = 1
        while n < need:
            n <<= 1
        if n <= self.ntt_capacity():
            return self.poly_mul_ntt(f, g)
        return self.poly_mul_karatsuba(f, g)

    def poly_pow(self, f: list[int], e: int) -> list[int]:
        result = [1]
        base = f
        while e:
            if e & 1:
                result = self.poly_mul(result, base)
            e >>= 1
            if e:
                base = self.poly_mul(base, base)
        return result

    # -- division, gcd ------------------------------------------------------

    def poly_divmod(self, f: list[int], g: list[int]) -> tuple[list[int], list[int]]:
        if not g:
            raise ZeroDivisionError("polynomial division by zero")
        p = self.p
        r = f[:]
        dg = len(g) - 1
        if len(r) - 1 < dg:
            return [], self.normalize(r)
        inv_lead = self.inv(g[-1])
        q = [0] * (len(r) - dg)
        for i in range(len(r) - 1, dg - 1, -1):
            c = r[i] % p
            if c:
                c = c * inv_lead % p
                q[i - dg] = c
                for j, gc in enumerate(g):
                    r[i - dg + j] = (r[i - dg + j] - c * gc) % p
        return self.normalize(q), self.normalize(r[:dg])

    def poly_mod(self, f: list[int], g: list[int]) -> list[int]:
        return self.poly_divmod(f, g)[1]

    def poly_gcd(self, f: list[int], g: list[int]) -> list[int]:
        a, b = f, g
        while b:
            a, b = b, self.poly_mod(a, b)
        return self.poly_monic(a)

    def poly_xgcd(self, f: list[int], g: list[int]):
        """(g, u, v) monic with u*f + v*g = gcd."""
        r0, r1 = f, g
        u0, u1 = [1], []
        v0, v1 = [], [1]
        while r1:
            q, r = self.poly_divmod(r0, r1)
            r0, r1 = r1, r
            u0, u1 = u1, self.poly_sub(u0, self.poly_mul(q, u1))
            v0, v1 = v1, self.poly_sub(v0, self.poly_mul(q, v1))
        if r0:
            c = self.inv(r0[-1])
            return self.poly_scale(r0, c), self.poly_scale(u0, c), self.poly_scale(v0, c)
        return [], u0, v0

    # -- Taylor shift, simultaneous reduction, Chinese remaindering ---------

    def taylor_shift(self, f: list[int], x: int) -> list[int]:
        """f(X + x), by splitting halves and binary powers of (X + x)."""
        x %= self.p
        if x == 0 or not f:
            return f[:]
        if len(f) <= 16:
            out: list[int] = []
            for c in reversed(f):
                out = self.poly_add(self.poly_mul(out, [x, 1]), [c] if c else [])
            return out
        k = len(f) // 2
        lo = self.taylor_shift(self.normalize(f[:k]), x)
        hi = self.taylor_shift(f[k:], x)
        return self.poly_add(lo, self.poly_mul(self.poly_pow([x, 1], k), hi))

    def multi_mod(self, f: list[int], moduli: list[list[int]]) -> list[list[int]]:
        """Remainders of f by each modulus, via a subproduct tree."""
        if any(not q for q in moduli):
            raise ValueError("zero modulus")
        if not moduli:
            return []
        tree = [moduli[:]]
        while len(tree[-1]) > 1:
            level = tree[-1]
            nxt = [
                self.poly_mul(level[i], level[i + 1]) if i + 1 < len(level) else level[i]
                for i in range(0, len(level), 2)
            ]
            tree.append(nxt)
        out = [None] * len(moduli)

        def descend(level: int, idx: int, rem: list[int]) -> None:
            node = tree[level][idx]
            if len(rem) >= len(node):
                rem = self.poly_mod(rem, node)
            if level == 0:
                out[idx] = rem
                return
            descend(level - 1, 2 * idx, rem)
            if 2 * idx + 1 < len(tree[level - 1]):
                descend(level - 1, 2 * idx + 1, rem)

        descend(len(tree) - 1, 0, f)
        return out

    def crt(self, residues: list[list[int]], moduli: list[list[int]]) -> list[int]:
        """Unique f of degree < sum(deg moduli) matching all residues."""
        if len(residues) != len(moduli):
            raise ValueError("residue/modulus count mismatch")
        if any(not q for q in moduli):
            raise ValueError("zero modulus")
        for r, q in zip(residues, moduli):
            if len(r) >= len(q):
                raise ValueError("residue degree not below modulus degree")
        items = list(zip(residues, moduli))
        if not items:
            return []
        while len(items) > 1:
            merged = []
            for i in range(0, len(items) - 1, 2):
                (r1, m1), (r2, m2) = items[i], items[i + 1]
                g, u, _ = self.poly_xgcd(m1, m2)
                if len(g) != 1:
                    raise ValueError("moduli are not pairwise coprime")
                t = self.poly_mod(self.poly_mul(self.poly_sub(r2, r1), u), m2)
                merged.append((self.poly_add(r1, self.poly_mul(m1, t)), self.poly_mul(m1, m2)))
            if len(items) % 2:
                merged.append(items[-1])
            items = merged
        return items[0][0]

    # -- binomials -----------------------------------------------------------

    def binomial(self, n: int, k: int) -> int:
        """C(n, k) mod p, via the digit product when n >= p."""
        if k < 0 or k > n:
            return 0
        p = self.p
        if n < p:
            return self._binom_small(n, k)
        acc = 1
        while n or k:
            acc = acc * self._binom_small(n % p, k % p) % p
            if acc == 0:
                return 0
            n //= p
            k //= p
        return acc

    def _binom_small(self, n: int, k: int) -> int:
        if k < 0 or k > n:
            return 0
        p = self.p
        if self._fact is not None and n < len(self._fact):
            return self._fact[n] * self._inv_fact[k] % p * self._inv_fact[n - k] % p
        if p <= 1 << 20 and self._fact is None:
            fact = [1] * p
            for i in range(1, p):
                fact[i] = fact[i - 1] * i % p
            inv_fact = [1] * p
            inv_fact[p - 1] = pow(fact[p - 1], p - 2, p)
            for i in range(p - 1, 0, -1):
                inv_fact[i - 1] = inv_fact[i] * i % p
            self._fact, self._inv_fact = fact, inv_fact
            return self._binom_small(n, k)
        num = den = 1
        for t in range(1, min(k, n - k) + 1):
            num = num * ((n - t + 1) % p) % p
            den = den * t % p
        return num * pow(den, p - 2, p) % p
