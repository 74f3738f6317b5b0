"""Partitions, tableau counts, permutations, characters, and central
group-algebra elements.

Partitions are identified up to trailing zeros and ordered graded
lexicographically (by size, then lex on the part tuples); that order
indexes every Plucker-style vector in the package.  Characters of the
symmetric group are computed by the Murnaghan-Nakayama rule on beta
sets, memoized on (shape, cycle type), and are exact integers.
"""

import itertools
from functools import cache
from math import comb, factorial

from .rationals import QQ
from . import linalg


class Partition(tuple):
    """Weakly decreasing nonnegative parts, trailing zeros stripped."""

    def __new__(cls, parts=()):
        parts = tuple(int(p) for p in parts)
        while parts and parts[-1] == 0:
            parts = parts[:-1]
        if any(p < 0 for p in parts):
            raise ValueError(f"negative part in {parts}")
        if any(parts[i] < parts[i + 1] for i in range(len(parts) - 1)):
            raise ValueError(f"parts not weakly decreasing: {parts}")
        return super().__new__(cls, parts)

    @property
    def size(self):
        return sum(self)

    @property
    def length(self):
        return len(self)

    def conjugate(self):
        if not self:
            return Partition()
        return Partition(sum(1 for p in self if p > i) for i in range(self[0]))

    def contains(self, mu):
        mu = Partition(mu)
        if mu.length > self.length:
            return False
        return all(self[i] >= mu[i] for i in range(mu.length))

    def part(self, i):
        """The i-th part (1-based), zero beyond the length."""
        return self[i - 1] if 1 <= i <= len(self) else 0

    def __str__(self):
        return "[" + ",".join(str(p) for p in self) + "]"

    @classmethod
    def parse(cls, text):
        text = text.strip()
        if not (text.startswith("[") and text.endswith("]")):
            raise ValueError(f"not a partition literal: {text!r}")
        inner = text[1:-1].strip()
        return cls(int(p) for p in inner.split(",")) if inner else cls()


EMPTY = Partition()


def conjugate(lam):
    return Partition(lam).conjugate()


@cache
def partitions_of(m):
    """All partitions of m, lexicographically ascending."""
    def gen(rest, maxpart):
        if rest == 0:
            yield ()
            return
        for first in range(min(rest, maxpart), 0, -1):
            for tail in gen(rest - first, first):
                yield (first,) + tail
    return tuple(sorted(Partition(p) for p in gen(m, m)))


@cache
def partitions_upto(bound):
    """All partitions of size <= bound in graded-lex order."""
    out = []
    for m in range(bound + 1):
        out.extend(partitions_of(m))
    return tuple(out)


def syt_count(lam):
    """Number of standard Young tableaux of shape lam (hook lengths)."""
    lam = Partition(lam)
    if not lam:
        return 1
    conj = lam.conjugate()
    count = factorial(lam.size)
    for i, row in enumerate(lam):
        for j in range(row):
            count //= (row - j) + (conj[j] - i) - 1
    return count


def skew_syt_count(lam, mu):
    """Number of standard tableaux of skew shape lam/mu.

    Determinant formula d! * det(1 / (lam_i - mu_j - i + j)!) over the
    first l(lam) rows, with 1/k! = 0 for k < 0.
    """
    lam, mu = Partition(lam), Partition(mu)
    if not lam.contains(mu):
        raise ValueError(f"{mu} is not contained in {lam}")
    l = lam.length
    if l == 0:
        return 1
    d = lam.size - mu.size
    mat = [[QQ(0)] * l for _ in range(l)]
    for i in range(l):
        for j in range(l):
            k = lam[i] - mu.part(j + 1) - i + j
            if k >= 0:
                mat[i][j] = QQ(1, factorial(k))
    value = QQ(factorial(d)) * linalg.det(mat)
    assert value.denominator == 1
    return int(value)


def falling_factorial(x, k):
    out = QQ(1)
    for i in range(k):
        out = out * (QQ(x) - i)
    return out


class Permutation:
    """Bijection of a finite ordered label set onto itself."""

    __slots__ = ("domain", "images")

    def __init__(self, domain, images):
        self.domain = tuple(domain)
        self.images = tuple(images)
        if sorted(self.domain) != sorted(self.images):
            raise ValueError("images are not a rearrangement of the domain")

    @classmethod
    def identity(cls, domain):
        domain = tuple(domain)
        return cls(domain, domain)

    @classmethod
    def from_mapping(cls, mapping):
        domain = tuple(sorted(mapping))
        return cls(domain, tuple(mapping[x] for x in domain))

    @classmethod
    def transposition(cls, domain, a, b):
        domain = tuple(domain)
        images = [b if x == a else a if x == b else x for x in domain]
        return cls(domain, images)

    def __call__(self, label):
        return self.images[self.domain.index(label)]

    def inverse(self):
        mapping = {img: src for src, img in zip(self.domain, self.images)}
        return Permutation(self.domain, tuple(mapping[x] for x in self.domain))

    def __mul__(self, other):
        """Composition self after other."""
        if self.domain != other.domain:
            raise ValueError("permutation domains differ")
        return Permutation(self.domain, tuple(self(other(x)) for x in self.domain))

    def cycle_type(self):
        seen = set()
        lengths = []
        for start in self.domain:
            if start in seen:
                continue
            n, x = 0, start
            while x not in seen:
                seen.add(x)
                x = self(x)
                n += 1
            lengths.append(n)
        return Partition(sorted(lengths, reverse=True))

    def __eq__(self, other):
        return (isinstance(other, Permutation)
                and self.domain == other.domain and self.images == other.images)

    def __hash__(self):
        return hash((self.domain, self.images))

    def __repr__(self):
        return f"Permutation({list(self.domain)} -> {list(self.images)})"


def cycle_type(sigma):
    return sigma.cycle_type()


def all_permutations(domain):
    domain = tuple(domain)
    for images in itertools.permutations(domain):
        yield Permutation(domain, images)


def _beta_set(lam):
    l = len(lam)
    return frozenset(lam[i] + l - 1 - i for i in range(l))


def _partition_from_beta(beta, l):
    vals = sorted(beta, reverse=True)
    return tuple(v - (l - 1 - i) for i, v in enumerate(vals))


@cache
def _character(lam, rho):
    if not rho:
        return 1
    r = rho[0]
    l = len(lam)
    beta = _beta_set(lam)
    total = 0
    for b in beta:
        if b - r < 0 or (b - r) in beta:
            continue
        height = sum(1 for x in beta if b - r < x < b)
        newbeta = (beta - {b}) | {b - r}
        newlam = Partition(_partition_from_beta(newbeta, l))
        total += (-1) ** height * _character(tuple(newlam), rho[1:])
    return total


def character(lam, rho):
    """Irreducible character of S_m at cycle type rho (Murnaghan-Nakayama)."""
    lam, rho = Partition(lam), Partition(rho)
    if lam.size != rho.size:
        raise ValueError(f"|{lam}| != |{rho}|")
    return _character(tuple(lam), tuple(rho))


def cycle_type_order(rho):
    """z_rho = prod k^{m_k} m_k!; the centralizer order of the class."""
    rho = Partition(rho)
    z = 1
    for k in set(rho):
        mk = sum(1 for p in rho if p == k)
        z *= k ** mk * factorial(mk)
    return z


def conjugacy_class_size(rho):
    rho = Partition(rho)
    return factorial(rho.size) // cycle_type_order(rho)


class GroupAlgebraElement:
    """Finite rational combination of permutations of a fixed domain."""

    __slots__ = ("domain", "terms")

    def __init__(self, domain, terms=None):
        self.domain = tuple(domain)
        self.terms = {}
        for sigma, coeff in (terms or {}).items():
            if sigma.domain != self.domain:
                raise ValueError("term domain mismatch")
            coeff = QQ(coeff)
            if coeff != 0:
                self.terms[sigma] = coeff

    @classmethod
    def unit(cls, domain):
        domain = tuple(domain)
        return cls(domain, {Permutation.identity(domain): QQ(1)})

    def __add__(self, other):
        out = dict(self.terms)
        for sigma, coeff in other.terms.items():
            out[sigma] = out.get(sigma, QQ(0)) + coeff
        return GroupAlgebraElement(self.domain, out)

    def __sub__(self, other):
        return self + other.scale(QQ(-1))

    def scale(self, c):
        return GroupAlgebraElement(
            self.domain, {s: QQ(c) * v for s, v in self.terms.items()})

    def __mul__(self, other):
        """Convolution product."""
        if self.domain != other.domain:
            raise ValueError("group algebra domains differ")
        out = {}
        for s1, c1 in self.terms.items():
            for s2, c2 in other.terms.items():
                s = s1 * s2
                out[s] = out.get(s, QQ(0)) + c1 * c2
        return GroupAlgebraElement(self.domain, out)

    def __eq__(self, other):
        return (isinstance(other, GroupAlgebraElement)
                and self.domain == other.domain and self.terms == other.terms)

    def is_central(self):
        """Commutes with every transposition (hence with everything)."""
        for a, b in itertools.combinations(self.domain, 2):
            tau = GroupAlgebraElement(
                self.domain, {Permutation.transposition(self.domain, a, b): QQ(1)})
            if tau * self != self * tau:
                return False
        return True

    def __repr__(self):
        return f"GroupAlgebraElement({len(self.terms)} terms on {list(self.domain)})"


def alpha_element(lam, domain):
    """sum_sigma chi^lam(sigma) sigma, a central element of C[S_domain]."""
    lam = Partition(lam)
    domain = tuple(domain)
    if lam.size != len(domain):
        raise ValueError(f"|{lam}| != |K| = {len(domain)}")
    if not domain:
        return GroupAlgebraElement.unit(domain)
    terms = {}
    for sigma in all_permutations(domain):
        chi = character(lam, sigma.cycle_type())
        if chi:
            terms[sigma] = QQ(chi)
    return GroupAlgebraElement(domain, terms)
