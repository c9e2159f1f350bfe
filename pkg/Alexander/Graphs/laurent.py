"""
Polinomios de Laurent en una variable t con coeficientes enteros.

Aritmética exacta (enteros de precisión arbitraria), normalización módulo
unidades ±t^r y MCD vía sucesión de subresultantes de sympy.
"""
from __future__ import annotations

import math
from fractions import Fraction
from functools import reduce
from typing import Dict, Iterable, Iterator, List, Mapping, Optional, Tuple

import sympy
from sympy import Poly, ZZ
from sympy.polys.polyerrors import ExactQuotientFailed
from sympy.parsing.sympy_parser import (
    convert_xor,
    implicit_multiplication_application,
    parse_expr,
    standard_transformations,
)

from .exceptions import MalformedInput, PreconditionError

T = sympy.Symbol("t")

_TRANSFORMATIONS = standard_transformations + (convert_xor, implicit_multiplication_application)


class LaurentPoly:
    """
    Valor inmutable: mapa exponente -> coeficiente (sin ceros guardados).
    El polinomio cero es el mapa vacío.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Optional[Mapping[int, int]] = None):
        clean = {}
        for e, c in (terms or {}).items():
            c = int(c)
            if c:
                clean[int(e)] = c
        self._terms: Dict[int, int] = dict(sorted(clean.items()))
        self._hash: Optional[int] = None

    # -----------------------------
    # Constructores
    # -----------------------------
    @classmethod
    def zero(cls) -> "LaurentPoly":
        return cls()

    @classmethod
    def one(cls) -> "LaurentPoly":
        return cls({0: 1})

    @classmethod
    def monomial(cls, coeff: int = 1, exp: int = 0) -> "LaurentPoly":
        return cls({exp: coeff})

    @classmethod
    def from_pairs(cls, pairs: Iterable[Tuple[int, int]]) -> "LaurentPoly":
        acc: Dict[int, int] = {}
        for e, c in pairs:
            acc[int(e)] = acc.get(int(e), 0) + int(c)
        return cls(acc)

    @classmethod
    def from_poly(cls, poly: Poly, shift: int = 0) -> "LaurentPoly":
        return cls({monom[0] + shift: int(c) for monom, c in poly.terms() if c})

    @classmethod
    def coerce(cls, value) -> "LaurentPoly":
        if isinstance(value, LaurentPoly):
            return value
        if isinstance(value, int):
            return cls({0: value})
        raise TypeError(f"no se puede convertir {type(value).__name__} a LaurentPoly")

    # -----------------------------
    # Lectura
    # -----------------------------
    @property
    def terms(self) -> Dict[int, int]:
        return dict(self._terms)

    def items(self) -> Iterator[Tuple[int, int]]:
        return iter(self._terms.items())

    def coeff(self, exp: int) -> int:
        return self._terms.get(exp, 0)

    def is_zero(self) -> bool:
        return not self._terms

    def is_unit(self) -> bool:
        return len(self._terms) == 1 and abs(next(iter(self._terms.values()))) == 1

    def min_degree(self) -> int:
        if not self._terms:
            raise PreconditionError("el polinomio cero no tiene grado")
        return next(iter(self._terms))

    def max_degree(self) -> int:
        if not self._terms:
            raise PreconditionError("el polinomio cero no tiene grado")
        return next(reversed(self._terms))

    def span(self) -> int:
        return self.max_degree() - self.min_degree() if self._terms else 0

    def content(self) -> int:
        return reduce(math.gcd, self._terms.values(), 0)

    def to_pairs(self) -> List[Tuple[int, int]]:
        return list(self._terms.items())

    def to_poly(self) -> Tuple[Poly, int]:
        """Devuelve (P, s) con self = t^s · P y P(0) != 0 (o P = 0, s = 0)."""
        if not self._terms:
            return Poly(0, T, domain=ZZ), 0
        shift = self.min_degree()
        return Poly.from_dict({(e - shift,): c for e, c in self._terms.items()}, T, domain=ZZ), shift

    # -----------------------------
    # Aritmética
    # -----------------------------
    def __add__(self, other) -> "LaurentPoly":
        try:
            other = LaurentPoly.coerce(other)
        except TypeError:
            return NotImplemented
        acc = dict(self._terms)
        for e, c in other._terms.items():
            acc[e] = acc.get(e, 0) + c
        return LaurentPoly(acc)

    __radd__ = __add__

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly({e: -c for e, c in self._terms.items()})

    def __sub__(self, other) -> "LaurentPoly":
        try:
            other = LaurentPoly.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "LaurentPoly":
        return LaurentPoly.coerce(other) - self

    def __mul__(self, other) -> "LaurentPoly":
        try:
            other = LaurentPoly.coerce(other)
        except TypeError:
            return NotImplemented
        acc: Dict[int, int] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                acc[e1 + e2] = acc.get(e1 + e2, 0) + c1 * c2
        return LaurentPoly(acc)

    __rmul__ = __mul__

    def shift(self, r: int) -> "LaurentPoly":
        """Multiplica por t^r."""
        return LaurentPoly({e + r: c for e, c in self._terms.items()})

    def __pow__(self, n: int) -> "LaurentPoly":
        if n < 0:
            if not self.is_unit():
                raise PreconditionError("solo las unidades ±t^r tienen inversa")
            (e, c), = self._terms.items()
            return LaurentPoly({e * n: 1 if n % 2 == 0 else c})
        result = LaurentPoly.one()
        for _ in range(n):
            result = result * self
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = LaurentPoly.coerce(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(tuple(self._terms.items()))
        return self._hash

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __repr__(self) -> str:
        return f"LaurentPoly({to_text(self)!r})"

    def __str__(self) -> str:
        return to_text(self)


# =========================================================
# Operaciones del módulo
# =========================================================
def normalize_unit(p: LaurentPoly) -> LaurentPoly:
    """
    ±t^r · p con exponente mínimo 0 y término constante positivo.
    normalize_unit(0) = 0.
    """
    if p.is_zero():
        return p
    shifted = p.shift(-p.min_degree())
    return -shifted if shifted.coeff(0) < 0 else shifted


def exact_div(p: LaurentPoly, q: LaurentPoly) -> LaurentPoly:
    """Cociente exacto p / q en Z[t^{±1}]; falla si no es entero."""
    if q.is_zero():
        raise PreconditionError("división por el polinomio cero")
    if p.is_zero():
        return p
    P, sp = p.to_poly()
    Q, sq = q.to_poly()
    try:
        # auto=False: sin paso a QQ, el cociente debe ser entero
        quotient = P.exquo(Q, auto=False)
    except ExactQuotientFailed as exc:
        raise PreconditionError(f"not divisible: {to_text(q)} no divide a {to_text(p)}") from exc
    return LaurentPoly.from_poly(quotient, sp - sq)


def divides(q: LaurentPoly, p: LaurentPoly) -> bool:
    """True si q | p en el anillo de Laurent (0 | 0 cuenta como cierto)."""
    if q.is_zero():
        return p.is_zero()
    try:
        exact_div(p, q)
    except PreconditionError:
        return False
    return True


def _primitive_gcd(P: Poly, Q: Poly) -> Poly:
    # P y Q primitivos y no nulos
    if P.degree() <= 0 or Q.degree() <= 0:
        return Poly(1, T, domain=ZZ)
    last = P.subresultants(Q)[-1]
    return last.primitive()[1]


def gcd(p: LaurentPoly, q: LaurentPoly) -> LaurentPoly:
    """
    MCD en Z[t^{±1}] en forma normalizada: MCD de contenidos por MCD de
    partes primitivas (último subresultante no nulo).
    """
    if p.is_zero():
        return normalize_unit(q)
    if q.is_zero():
        return normalize_unit(p)
    P, _ = p.to_poly()
    Q, _ = q.to_poly()
    cp, pp = P.primitive()
    cq, pq = Q.primitive()
    content = math.gcd(int(cp), int(cq))
    g = _primitive_gcd(pp, pq)
    return normalize_unit(LaurentPoly.from_poly(g) * content)


def gcd_all(polys: Iterable[LaurentPoly]) -> LaurentPoly:
    return reduce(gcd, polys, LaurentPoly.zero())


def substitute(p: LaurentPoly, g: int) -> LaurentPoly:
    """t -> t^g; g = -1 realiza t -> t^{-1}."""
    if g == 0:
        raise PreconditionError("la sustitución t -> t^0 no está permitida")
    return LaurentPoly({e * g: c for e, c in p.items()})


def eval_at(p: LaurentPoly, n: int) -> Fraction:
    """Evaluación exacta en t = n (racional si hay exponentes negativos)."""
    if n == 0:
        raise PreconditionError("no se evalúa en t = 0")
    return sum((Fraction(n) ** e * c for e, c in p.items()), Fraction(0))


def eval_int(p: LaurentPoly, n: int) -> int:
    if n == 0:
        raise PreconditionError("no se evalúa en t = 0")
    if p and p.min_degree() < 0:
        raise PreconditionError("eval_int requiere exponentes no negativos")
    return sum(c * n ** e for e, c in p.items())


def eval_mod(p: LaurentPoly, n: int, modulus: int) -> int:
    """Valor de p en t = n módulo `modulus`; exponentes negativos vía inverso de n."""
    return sum(c * pow(n, e, modulus) for e, c in p.items()) % modulus


# -----------------------------
# Forma textual
# -----------------------------
def _monomial_text(e: int) -> str:
    if e == 0:
        return ""
    if e == 1:
        return "t"
    return f"t^{e}"


def to_text(p: LaurentPoly) -> str:
    """Forma "c*t^k ± …" con exponentes descendentes; "0" para el cero."""
    if p.is_zero():
        return "0"
    parts: List[str] = []
    for e, c in sorted(p.items(), reverse=True):
        mono = _monomial_text(e)
        mag = abs(c)
        if not mono:
            body = str(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{mag}*{mono}"
        if not parts:
            parts.append(body if c > 0 else f"-{body}")
        else:
            parts.append(f"+ {body}" if c > 0 else f"- {body}")
    return " ".join(parts)


def parse(text: str, symbols: Optional[Mapping[str, int]] = None) -> LaurentPoly:
    """
    Lee la forma textual ("t^2 - 2*t + 2", "1-t^x", "-t^{-x-y}").
    Los símbolos distintos de t se sustituyen por los enteros de `symbols`.
    """
    symbols = dict(symbols or {})
    cleaned = str(text).replace("−", "-").replace("{", "(").replace("}", ")").strip()
    if not cleaned:
        raise MalformedInput(f"entrada de Laurent vacía: {text!r}")
    local = {name: sympy.Symbol(name) for name in symbols}
    local["t"] = T
    try:
        expr = parse_expr(cleaned, local_dict=local, transformations=_TRANSFORMATIONS)
    except (SyntaxError, TypeError, ValueError, sympy.SympifyError) as exc:
        raise MalformedInput(f"no se pudo leer {text!r}: {exc}") from exc

    expr = sympy.expand(sympy.sympify(expr).subs({local[k]: v for k, v in symbols.items()}))
    free = expr.free_symbols - {T}
    if free:
        names = ", ".join(sorted(str(s) for s in free))
        raise MalformedInput(f"símbolos sin valor en {text!r}: {names}")

    acc: Dict[int, int] = {}
    for term in sympy.Add.make_args(expr):
        coeff, exp = term.as_coeff_exponent(T)
        if not (coeff.is_Integer and exp.is_Integer):
            raise MalformedInput(f"{text!r} no es un polinomio de Laurent con coeficientes enteros")
        acc[int(exp)] = acc.get(int(exp), 0) + int(coeff)
    return LaurentPoly(acc)
