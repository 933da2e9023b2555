"""Quotients of polynomial rings over a base coefficient ring.

``PolyRing(C, names, relations)`` is C[names]/(relations) with elements kept
as reduced normal forms modulo a monic grevlex Groebner basis.  Integer
constants met while computing the basis are absorbed into the coefficient
ring (ZZ/(9, 3) -> ZZ/3, ZZ[1/2]/(3) -> GF(3)), so only genuinely non-monic
relations over non-fields are unsupported.
"""

from __future__ import annotations

from ..errors import NotAUnit, UnsupportedRingClass
from . import groebner as gb
from .coefficients import CoefficientRing, ModularRing


class PolyRing:
    is_field = False
    machine_modulus = None

    def __init__(self, coeff: CoefficientRing, names, relations=(), inverse_of=None, field_order=None):
        self.names = tuple(names)
        self.nvars = len(self.names)
        self.inverse_of = dict(inverse_of or {})
        self._index = {n: i for i, n in enumerate(self.names)}
        self._zero_exp = (0,) * self.nvars
        coeff, basis = _saturate(coeff, [dict(r) for r in relations], self.nvars)
        self.coeff = coeff
        self.basis = basis
        self.is_zero_ring = coeff.is_zero_ring
        self.characteristic = coeff.characteristic
        self.field_order = field_order if not self.is_zero_ring else None
        self.is_field = field_order is not None and not self.is_zero_ring
        self.zero = {}
        self.one = {} if self.is_zero_ring else {self._zero_exp: coeff.one}
        self.key = (
            "Poly",
            coeff.key,
            self.names,
            tuple(tuple(sorted(p.items())) for _, p in basis),
        )

    # -- construction helpers ---------------------------------------------
    @property
    def relations(self):
        return [p for _, p in self.basis]

    def with_relations(self, extra, inverse_of=None):
        inv = dict(self.inverse_of)
        inv.update(inverse_of or {})
        return PolyRing(self.coeff, self.names, self.relations + list(extra), inv)

    def extend(self, names, coeff=None):
        """Same relations in a ring with extra variables appended."""
        pad = (0,) * len(names)
        rels = [{e + pad: c for e, c in p.items()} for p in self.relations]
        C = coeff or self.coeff
        rels = [_coerce_poly(C, p) for p in rels]
        return PolyRing(C, self.names + tuple(names), rels, self.inverse_of)

    def with_coeff(self, coeff):
        rels = [_coerce_poly(coeff, p) for p in self.relations]
        return PolyRing(coeff, self.names, rels, self.inverse_of)

    # -- arithmetic ---------------------------------------------------------
    def reduce(self, p):
        if self.is_zero_ring:
            return {}
        return gb.normal_form(self.coeff, p, self.basis, gb.grevlex_key) if self.basis else p

    def add(self, a, b):
        return gb.padd(self.coeff, a, b)

    def sub(self, a, b):
        return gb.psub(self.coeff, a, b)

    def neg(self, a):
        return gb.pneg(self.coeff, a)

    def mul(self, a, b):
        if not a or not b:
            return {}
        if len(a) == 1 and self._zero_exp in a:
            return gb.pscale(self.coeff, b, a[self._zero_exp])
        if len(b) == 1 and self._zero_exp in b:
            return gb.pscale(self.coeff, a, b[self._zero_exp])
        return self.reduce(gb.pmul(self.coeff, a, b))

    def is_zero(self, a):
        return not a

    def from_int(self, n):
        c = self.coeff.from_int(n)
        return {} if self.coeff.is_zero(c) else {self._zero_exp: c}

    def coerce(self, raw):
        c = self.coeff.coerce(raw)
        return {} if self.coeff.is_zero(c) else {self._zero_exp: c}

    def scale_int(self, a, n):
        return gb.pscale(self.coeff, a, self.coeff.from_int(n))

    def gen(self, name):
        i = self._index[name]
        e = tuple(1 if j == i else 0 for j in range(self.nvars))
        return self.reduce({e: self.coeff.one})

    def pow(self, a, e):
        if e < 0:
            inv = self.unit_inverse(a)
            if inv is None:
                raise NotAUnit(f"{self.format(a)} is not a unit in {self}")
            a, e = inv, -e
        result = self.one
        while e:
            if e & 1:
                result = self.mul(result, a)
            e >>= 1
            if e:
                a = self.mul(a, a)
        return result

    def is_constant(self, a):
        return gb.is_constant(a)

    def constant_value(self, a):
        return a.get(self._zero_exp, self.coeff.zero)

    # -- decisions ----------------------------------------------------------
    def unit_inverse(self, a):
        """Inverse of ``a`` or None; raises UnsupportedRingClass when undecidable."""
        C = self.coeff
        if self.is_zero_ring:
            return {}
        if not a:
            return None
        if self.is_field:
            return self.pow(a, self.field_order - 2)
        if gb.is_constant(a):
            inv = C.unit_inverse(a[self._zero_exp])
            return None if inv is None else {self._zero_exp: inv}
        if not C.content_is_unit(a.values()):
            return None
        try:
            unit_ideal = _saturate(C, self.relations + [a], self.nvars)[0].is_zero_ring
        except UnsupportedRingClass:
            raise UnsupportedRingClass(
                f"is_unit is undecidable for this ring class ({self})"
            ) from None
        if not unit_ideal:
            return None
        # a is a unit, hence regular, so eliminating t from I + (a*t - 1) gives back I
        ext = self._lift_t()
        rel = gb.padd(C, {(1,) + e: c for e, c in a.items()}, {(0,) * (self.nvars + 1): C.neg(C.one)})
        try:
            basis = gb.groebner(C, ext + [rel], gb.elimination_key(1))
        except gb.NonUnitLeading:
            raise UnsupportedRingClass(
                f"is_unit is undecidable for this ring class ({self})"
            ) from None
        t_lead = (1,) + self._zero_exp
        for lead, g in basis:
            if lead == t_lead:
                b = {e[1:]: C.neg(c) for e, c in g.items() if e != t_lead}
                return self.reduce(b)
        return None

    def is_regular(self, a):
        """(True, None) or (False, witness b != 0 with a*b = 0)."""
        C = self.coeff
        if self.is_zero_ring:
            return True, None
        if not a:
            return False, self.one
        if gb.is_constant(a):
            ok, w = C.is_regular(a[self._zero_exp])
            return (True, None) if ok else (False, {self._zero_exp: w})
        try:
            if self.unit_inverse(a) is not None:
                return True, None
        except UnsupportedRingClass:
            pass
        if not self.basis:
            return self._mccoy(a)
        return self._ideal_quotient_test(a)

    def _mccoy(self, a):
        C = self.coeff
        if isinstance(C, ModularRing) and not C.is_field:
            from math import gcd

            g = C.m
            for v in a.values():
                g = gcd(g, v)
            if g == 1:
                return True, None
            return False, {self._zero_exp: C.m // g}
        return True, None

    def _ideal_quotient_test(self, a):
        C = self.coeff
        n = self.nvars
        t_rels = [{(1,) + e: c for e, c in p.items()} for p in self.relations]
        one_minus_t = {(0,) * (n + 1): C.one, (1,) + self._zero_exp: C.neg(C.one)}
        lifted_a = {(0,) + e: c for e, c in a.items()}
        gens = t_rels + [gb.pmul(C, one_minus_t, lifted_a)]
        try:
            basis = gb.groebner(C, gens, gb.elimination_key(1))
            for lead, h in basis:
                if lead[0] != 0:
                    continue
                q = gb.divide_exact(C, {e[1:]: c for e, c in h.items()}, a, gb.grevlex_key)
                if q is None:
                    raise UnsupportedRingClass(f"inexact ideal-quotient division over {self}")
                r = self.reduce(q)
                if r:
                    return False, r
        except gb.NonUnitLeading:
            raise UnsupportedRingClass(
                f"is_regular has no decision procedure for this ring class ({self})"
            ) from None
        return True, None

    def _lift_t(self):
        return [{(0,) + e: c for e, c in p.items()} for p in self.relations]

    # -- printing -----------------------------------------------------------
    def format(self, a):
        if not a:
            return "0"
        C = self.coeff
        parts = []
        for e in sorted(a, key=gb.grevlex_key, reverse=True):
            c = a[e]
            mono = "*".join(
                n if k == 1 else f"{n}^{k}" for n, k in zip(self.names, e) if k
            )
            cs = C.format(c)
            neg = cs.startswith("-")
            if neg:
                cs = cs[1:]
            if mono:
                term = mono if cs == "1" else f"{cs}*{mono}"
            else:
                term = cs
            if not parts:
                parts.append(("-" if neg else "") + term)
            else:
                parts.append((" - " if neg else " + ") + term)
        return "".join(parts)

    def __str__(self):
        base = f"{self.coeff}[{', '.join(self.names)}]" if self.names else str(self.coeff)
        if self.basis:
            base += "/(" + ", ".join(self.format(p) for p in self.relations) + ")"
        return base

    def __repr__(self):
        return f"<ring {self}>"

    def __eq__(self, other):
        return isinstance(other, PolyRing) and self.key == other.key

    def __hash__(self):
        return hash(self.key)


def _coerce_poly(C, p):
    out = {}
    for e, c in p.items():
        v = C.coerce(c)
        if not C.is_zero(v):
            out[e] = v
    return out


def _saturate(coeff, relations, nvars):
    """Absorb constants into the coefficient ring and compute a monic basis."""
    zero = (0,) * nvars
    while True:
        rels = [_coerce_poly(coeff, r) for r in relations]
        rels = [r for r in rels if r]
        consts = [r[zero] for r in rels if gb.is_constant(r)]
        if consts:
            for c in consts:
                coeff = coeff.quotient_constant(c)
            relations = [r for r in rels if not gb.is_constant(r)]
            continue
        if coeff.is_zero_ring:
            return coeff, []
        try:
            basis = gb.groebner(coeff, rels, gb.grevlex_key)
        except gb.NonUnitLeading as exc:
            if gb.is_constant(exc.poly):
                relations = rels + [exc.poly]
                continue
            raise UnsupportedRingClass(
                f"quotient by an ideal with non-unit leading coefficients over {coeff} "
                "is outside the supported ring classes"
            ) from None
        if basis and gb.is_constant(basis[0][1]):
            return ModularRing(1), []
        return coeff, basis
