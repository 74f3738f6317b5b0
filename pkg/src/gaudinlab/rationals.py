"""Exact rational scalars and seeded sampling helpers.

The exact backend is gmpy2.mpq when available (roughly an order of
magnitude faster than fractions.Fraction on the dense workloads here),
falling back to the stdlib Fraction otherwise.  Either way the scalar is
immutable, hashable, and closed under field operations; conversion to
float is explicit and one-way.
"""

try:
    from gmpy2 import mpq as QQ
except ImportError:  # pragma: no cover
    from fractions import Fraction as QQ

ZERO = QQ(0)
ONE = QQ(1)


def rational(value):
    """Coerce an int, "p/q" string, or rational to the exact scalar type."""
    if isinstance(value, float):
        raise TypeError("refusing to coerce a float to an exact rational")
    return QQ(value)


def format_rational(q):
    """Render as "p/q" (denominator always written, for stable dumps)."""
    q = QQ(q)
    return f"{q.numerator}/{q.denominator}"


def parse_rational(text):
    return QQ(str(text))


def is_integer(q):
    return QQ(q).denominator == 1


def rand_rational(rng, lo=-6, hi=6, max_den=4):
    """Random p/q with q <= max_den and value in [lo, hi]."""
    d = rng.randint(1, max_den)
    return QQ(rng.randint(lo * d, hi * d), d)


def rand_distinct_rationals(rng, count, lo=-6, hi=6, max_den=4):
    seen = set()
    out = []
    while len(out) < count:
        q = rand_rational(rng, lo, hi, max_den)
        if q not in seen:
            seen.add(q)
            out.append(q)
    return out
