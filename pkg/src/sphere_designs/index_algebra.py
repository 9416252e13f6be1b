"""Index sets for the spaces ``P_L`` (real) and ``P_tau`` (complex).

Real index sets are finite subsets of N, complex ones finite subsets of N^2.
Both are immutable and sorted canonically: real ascending, complex by
``(p + q, p)``.
"""

import re
from dataclasses import dataclass

from .errors import ParseError, UnknownFamily


def _complex_key(pq):
    return (pq[0] + pq[1], pq[0])


@dataclass(frozen=True)
class RealIndexSet:
    members: tuple

    def __init__(self, members=()):
        vals = sorted({int(m) for m in members})
        if any(v < 0 for v in vals):
            raise ValueError("indices must be nonnegative")
        object.__setattr__(self, "members", tuple(vals))

    is_complex = False

    def __iter__(self):
        return iter(self.members)

    def __len__(self):
        return len(self.members)

    def __contains__(self, k):
        return k in self.members

    def __or__(self, other):
        return RealIndexSet(self.members + tuple(other))

    def __le__(self, other):
        return set(self.members) <= set(other.members)

    def nonzero(self):
        return RealIndexSet(m for m in self.members if m != 0)

    def max_degree(self):
        return max(self.members, default=0)

    def to_text(self):
        return ",".join(str(m) for m in self.members)

    def to_list(self):
        return list(self.members)

    def __repr__(self):
        return "{" + ", ".join(str(m) for m in self.members) + "}"


@dataclass(frozen=True)
class ComplexIndexSet:
    members: tuple

    def __init__(self, members=()):
        vals = {(int(p), int(q)) for p, q in members}
        if any(p < 0 or q < 0 for p, q in vals):
            raise ValueError("indices must be nonnegative")
        object.__setattr__(self, "members", tuple(sorted(vals, key=_complex_key)))

    is_complex = True

    def __iter__(self):
        return iter(self.members)

    def __len__(self):
        return len(self.members)

    def __contains__(self, pq):
        return tuple(pq) in self.members

    def __or__(self, other):
        return ComplexIndexSet(self.members + tuple(other))

    def __le__(self, other):
        return set(self.members) <= set(other.members)

    def nonzero(self):
        return ComplexIndexSet(m for m in self.members if m != (0, 0))

    def max_degree(self):
        return max((p + q for p, q in self.members), default=0)

    def to_text(self):
        return ",".join(f"({p},{q})" for p, q in self.members)

    def to_list(self):
        return [list(m) for m in self.members]

    def __repr__(self):
        return "{" + ", ".join(f"({p},{q})" for p, q in self.members) + "}"


def real_product(k, l):
    """``k . l = {k + l - 2j : 0 <= j <= min(k, l)}``."""
    return RealIndexSet(k + l - 2 * j for j in range(min(k, l) + 1))


def real_set_product(K, L):
    out = set()
    for k in K:
        for l in L:
            out.update(real_product(k, l))
    return RealIndexSet(out)


def complex_product(pq, rs, d2_same_index=False):
    """``(p,q).(r,s)``; with ``d2_same_index`` and equal factors only even ``j``."""
    p, q = pq
    r, s = rs
    mu = min(p, s) + min(q, r)
    step = 2 if (d2_same_index and (p, q) == (r, s)) else 1
    return ComplexIndexSet((p + r - j, q + s - j) for j in range(0, mu + 1, step))


def complex_set_product(A, B, d=None):
    out = set()
    for a in A:
        for b in B:
            out.update(complex_product(a, b, d2_same_index=(d == 2)))
    return ComplexIndexSet(out)


def reverse(tau):
    return ComplexIndexSet((q, p) for p, q in tau)


def tau_star(tau):
    """Class closure ``tau | tau^rev | {(0,0)}``."""
    return ComplexIndexSet(tuple(tau) + tuple(reverse(tau)) + ((0, 0),))


def convolution(E):
    """``E * E = E + E^rev`` (Minkowski sum)."""
    return ComplexIndexSet((p + s, q + r) for p, q in E for r, s in E)


def lower_set(tau):
    members = set(tau)
    for p, q in members:
        if p > 0 and (p - 1, q) not in members:
            return False
        if q > 0 and (p, q - 1) not in members:
            return False
    return True


# -- named families --------------------------------------------------------

FAMILIES = ("t_design", "half_design", "harmonic_index", "pq_design", "tt_design",
            "hom_m_complex")


def named_family(name, *params, field="real"):
    """Index set of a named design family.

    ``t_design`` and ``half_design`` are real unless ``field='complex'``, in
    which case they give ``{(p,q): p+q <= t}`` and ``{(p,q): p+q in {m, m-2, ...}}``.
    """
    complex_field = str(getattr(field, "value", field)) == "complex"
    if name == "t_design":
        (t,) = params
        if complex_field:
            return ComplexIndexSet((p, s - p) for s in range(t + 1) for p in range(s + 1))
        return RealIndexSet(range(t + 1))
    if name == "half_design":
        (m,) = params
        if complex_field:
            return named_family("hom_m_complex", m)
        return RealIndexSet(range(m % 2, m + 1, 2))
    if name == "harmonic_index":
        if complex_field:
            p, q = params
            return ComplexIndexSet([(p, q)])
        (m,) = params
        return RealIndexSet([m])
    if name == "pq_design":
        p, q = params
        return ComplexIndexSet((p - j, q - j) for j in range(min(p, q) + 1))
    if name == "tt_design":
        (t,) = params
        return ComplexIndexSet((j, j) for j in range(t + 1))
    if name == "hom_m_complex":
        (m,) = params
        return ComplexIndexSet((p, s - p) for s in range(m % 2, m + 1, 2)
                               for p in range(s + 1))
    raise UnknownFamily(f"unknown design family {name!r}")


_SHORTHAND = {"t": "t_design", "half": "half_design", "harm": "harmonic_index",
              "pq": "pq_design", "tt": "tt_design", "homc": "hom_m_complex"}


def parse_index_set(text, field="real"):
    """Parse CLI index syntax: ``0,2,4``, ``(1,1),(2,2)`` or ``t:5``-style shorthand.

    Returns ``(index_set, family)`` where ``family`` is ``(name, params)`` for
    shorthand input and ``None`` otherwise.
    """
    text = text.strip()
    if not text:
        raise ParseError("empty index set")
    m = re.fullmatch(r"([a-z]+)\s*:\s*([0-9,\s]+)", text)
    if m:
        short, rest = m.groups()
        if short not in _SHORTHAND:
            raise UnknownFamily(f"unknown family shorthand {short!r}")
        try:
            params = tuple(int(x) for x in rest.split(",") if x.strip())
        except ValueError:
            raise ParseError(f"bad family parameters in {text!r}") from None
        name = _SHORTHAND[short]
        try:
            return named_family(name, *params, field=field), (name, params)
        except ValueError:
            raise ParseError(f"wrong number of parameters for {short!r}") from None
    if "(" in text:
        pairs = re.findall(r"\(\s*(\d+)\s*,\s*(\d+)\s*\)", text)
        leftover = re.sub(r"\(\s*\d+\s*,\s*\d+\s*\)", "", text).replace(",", "").strip()
        if not pairs or leftover:
            raise ParseError(f"cannot parse complex index set {text!r}")
        return ComplexIndexSet((int(p), int(q)) for p, q in pairs), None
    try:
        vals = [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise ParseError(f"cannot parse real index set {text!r}") from None
    if str(getattr(field, "value", field)) == "complex":
        raise ParseError("complex index sets use (p,q) pairs")
    return RealIndexSet(vals), None
