"""Chern classes of complex representations of elementary abelian p-groups.

A representation enters as a multiset of weights v in V_n; its total Chern
class is the expanded product of (1 + v) over the weights, a polynomial
class.  The regular representation contains every weight once, and its
total Chern class is the alternating sum of the Dickson classes; powers of
it are detected through divisibility-by-(1+v) profiles.
"""

from __future__ import annotations

import itertools
from functools import lru_cache

from .algebra import ExtClass, LinearSubst, substitute_linear
from .errors import ConsistencyError, ResourceGuardError
from .invariants import (
    DESK_SCALE_POINTS,
    group_generators,
    is_invariant,
    moore_class,
)
from .steenrod import apply_word


class WeightMultiset:
    """Weights of a representation of A_n with multiplicities >= 1."""

    __slots__ = ("cfg", "weights")

    def __init__(self, cfg, weights):
        p = cfg.p
        merged = {}
        for v, m in weights.items() if isinstance(weights, dict) else weights:
            if len(v) != cfg.n:
                raise ValueError(f"weight {v} has wrong length")
            m = int(m)
            if m < 1:
                raise ValueError(f"multiplicity {m} must be >= 1")
            key = tuple(int(c) % p for c in v)
            merged[key] = merged.get(key, 0) + m
        self.cfg = cfg
        self.weights = merged

    @classmethod
    def trivial(cls, cfg, dim=1):
        return cls(cfg, {(0,) * cfg.n: dim})

    @property
    def dimension(self):
        return sum(self.weights.values())

    def items(self):
        return sorted(self.weights.items())

    def __eq__(self, other):
        if not isinstance(other, WeightMultiset):
            return NotImplemented
        return self.cfg == other.cfg and self.weights == other.weights

    def __add__(self, other):
        """Direct sum."""
        if self.cfg != other.cfg:
            raise ValueError("config mismatch in direct sum")
        merged = dict(self.weights)
        for v, m in other.weights.items():
            merged[v] = merged.get(v, 0) + m
        return WeightMultiset(self.cfg, merged)

    def __rmul__(self, a):
        """a-fold direct sum; a == 0 gives the empty multiset."""
        if not isinstance(a, int) or a < 0:
            return NotImplemented
        if a == 0:
            return WeightMultiset(self.cfg, {})
        return WeightMultiset(self.cfg, {v: a * m for v, m in self.weights.items()})

    def act(self, g):
        """The multiset of transformed weights (g invertible, so a bijection)."""
        return WeightMultiset(
            self.cfg, {g.apply_weight(v): m for v, m in self.weights.items()}
        )

    def __repr__(self):
        body = ", ".join(f"{v}x{m}" for v, m in self.items())
        return f"<WeightMultiset dim={self.dimension}: {body}>"

    @classmethod
    def parse(cls, text, cfg):
        """Weights-file format: per line "c1,...,cn [xM]", "#" comments."""
        pairs = []
        for lineno, raw in enumerate(text.splitlines(), start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            fields = line.split()
            if len(fields) > 2 or (len(fields) == 2 and not fields[1].startswith("x")):
                raise ValueError(f"line {lineno}: expected 'c1,..,cn [xM]'")
            mult = 1
            if len(fields) == 2:
                try:
                    mult = int(fields[1][1:])
                except ValueError:
                    raise ValueError(f"line {lineno}: bad multiplicity {fields[1]!r}")
            try:
                coords = tuple(int(c) for c in fields[0].split(","))
            except ValueError:
                raise ValueError(f"line {lineno}: bad weight {fields[0]!r}")
            if len(coords) != cfg.n:
                raise ValueError(f"line {lineno}: expected {cfg.n} coordinates")
            pairs.append((coords, mult))
        return cls(cfg, pairs)


def regular_representation(cfg):
    """Every weight of V_n with multiplicity one (the zero weight included)."""
    if cfg.p**cfg.n > DESK_SCALE_POINTS:
        raise ResourceGuardError(
            f"p^n = {cfg.p ** cfg.n} exceeds the desk-scale bound {DESK_SCALE_POINTS}"
        )
    return WeightMultiset(
        cfg, {v: 1 for v in itertools.product(range(cfg.p), repeat=cfg.n)}
    )


def total_chern(rho):
    """Expanded product of (1 + v)^multiplicity; zero weights contribute 1."""
    cfg = rho.cfg
    result = ExtClass.one(cfg)
    for v, m in rho.items():
        factor = ExtClass.one(cfg) + ExtClass.linear_form(cfg, v)
        result = result * factor**m
    return result


@lru_cache(maxsize=None)
def _chern_of_regular(cfg):
    return total_chern(regular_representation(cfg))


def _require_unital_poly(x):
    if not x.is_polynomial():
        raise ValueError("expected a polynomial class")
    if x.constant_term() != 1:
        raise ValueError("constant term must be 1")


def _coordinate_change(cfg, v):
    """A substitution carrying the linear form of v to t_1."""
    p, n = cfg.p, cfg.n
    k = next(i for i, c in enumerate(v) if c)
    inv = pow(v[k], -1, p)
    rows = [[inv if j == k else 0 for j in range(n)]]
    for j in range(n):
        if j == k:
            continue
        row = [1 if i == j else 0 for i in range(n)]
        row[k] = (-v[j] * inv) % p
        rows.append(row)
    return LinearSubst(cfg, rows).transpose()


def _strip_first_var(poly):
    """Split a polynomial dict into layers by the exponent of t_1."""
    layers = {}
    for mono, c in poly.items():
        layers.setdefault(mono[0], {})[(0,) + mono[1:]] = c
    return layers


def _divide_once(layers, p):
    """Divide sum_i a_i t_1^i by (1 + t_1); returns (quotient_layers, remainder)."""
    if not layers:
        return {}, {}
    top = max(layers)
    quotient = {}
    carry = {}
    for i in range(top, 0, -1):
        coeff = _layer_sub(layers.get(i, {}), carry, p)
        if coeff:
            quotient[i - 1] = coeff
        carry = coeff
    remainder = _layer_sub(layers.get(0, {}), carry, p)
    return quotient, remainder


def _layer_sub(a, b, p):
    out = dict(a)
    for mono, c in b.items():
        v = (out.get(mono, 0) - c) % p
        if v:
            out[mono] = v
        else:
            out.pop(mono, None)
    return out


def divisibility_profile(x, cfg=None):
    """For each nonzero v, the exact power of (1 + v) dividing x.

    x must be a polynomial class with constant term 1.  The exponent is
    found by a coordinate change taking v to t_1 followed by repeated
    univariate division by (1 + t_1).
    """
    _require_unital_poly(x)
    cfg = x.cfg if cfg is None else cfg
    p, n = cfg.p, cfg.n
    profile = {}
    for v in itertools.product(range(p), repeat=n):
        if not any(v):
            continue
        g = _coordinate_change(cfg, v)
        moved = substitute_linear(g, x)
        layers = _strip_first_var(moved.parts.get(0, {}))
        mu = 0
        while True:
            quotient, remainder = _divide_once(layers, p)
            if remainder:
                break
            mu += 1
            layers = quotient
            if not layers:
                break
        profile[v] = mu
    return profile


def power_of_regular(x, cfg=None):
    """The exponent a with x == total_chern(reg)^a exactly, or None."""
    _require_unital_poly(x)
    cfg = x.cfg if cfg is None else cfg
    if x == ExtClass.one(cfg):
        return 0
    reg_degree = 2 * (cfg.p**cfg.n - 1)
    d = x.degree()
    if d % reg_degree:
        return None
    a = d // reg_degree
    return a if _chern_of_regular(cfg) ** a == x else None


def image_generator(cfg, case):
    """The polynomial class the obstruction argument runs on.

    Case "pu" (n = 2): Q_0 Q_1 (dt_1 dt_2).  Case "rank3" (n = 3):
    Q_1 Q_2 Q_0 (dt_1 dt_2 dt_3).  Both equal e_n.
    """
    case = case.lower()
    if case == "pu":
        if cfg.n != 2:
            raise ValueError("case 'pu' requires n = 2")
        word = [("Q", 0), ("Q", 1)]
    elif case == "rank3":
        if cfg.n != 3:
            raise ValueError("case 'rank3' requires n = 3")
        word = [("Q", 1), ("Q", 2), ("Q", 0)]
    else:
        raise ValueError(f"unknown case {case!r}; expected 'pu' or 'rank3'")
    x = apply_word(word, ExtClass.dt_top(cfg))
    if not x.is_polynomial():
        raise ConsistencyError("image generator is not a polynomial class")
    if x != moore_class(cfg):
        raise ConsistencyError("image generator disagrees with the Moore determinant")
    return x


def obstruction_table(cfg, case, a_max):
    """Rows (a, e_n^a is GL-invariant) for a = 1..a_max.

    GL-invariance of the polynomial power decides membership in D_n; the
    expected pattern is invariance exactly when (p-1) | a.
    """
    if a_max < 1:
        raise ValueError("a_max must be >= 1")
    if a_max * cfg.p**cfg.n > 20_000:
        raise ResourceGuardError(
            f"a_max = {a_max} at p^n = {cfg.p ** cfg.n} exceeds the desk scale"
        )
    e = image_generator(cfg, case)
    gl = group_generators(cfg, "GL")
    rows = []
    power = ExtClass.one(cfg)
    for a in range(1, a_max + 1):
        power = power * e
        rows.append((a, is_invariant(power, gl)))
    return rows
