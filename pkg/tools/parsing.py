"""
Text forms for field elements and polynomials.

Canonical forms are JSON-compatible lists:
    element   [c_0, c_1, ...]          coordinates over F_q, low first
    UPoly     [c_0, c_1, ...]          F_q codes, low degree first
    BiPoly    [[i, [c_0, ...]], ...]   z-exponent with its F_q[t] coefficient

Polynomials may also be written as sums of monomials, e.g. "t^2*z + z + 1"
or "(t^2+1)/(t+1)" for a rational function. Coefficients are F_q codes.
"""
import json
import re
from typing import Dict, List, Sequence, Tuple

from tools.base_field import BaseField
from tools.errors import ParseError
from tools.ffield import ExtFieldElem, FieldCtx
from tools.polyring import BiPoly, RatFunc, UPoly


_TERM_TOKEN = re.compile(r"(\d+)|([a-zA-Z])(?:\^(\d+))?|(\*)")


def parse_int_list(text: str) -> List[int]:
    try:
        value = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"not a coefficient list: {text!r}") from exc
    if not isinstance(value, list) or not all(isinstance(c, int) for c in value):
        raise ParseError(f"not a list of integers: {text!r}")
    return value


def parse_range(text: str) -> List[int]:
    """'2-8' -> [2..8], '1,3,5' -> [1, 3, 5], '4' -> [4]."""
    values: List[int] = []
    try:
        for part in text.split(","):
            part = part.strip()
            if "-" in part:
                lo, hi = (int(x) for x in part.split("-", 1))
                if lo > hi:
                    raise ParseError(f"empty range {part!r}")
                values.extend(range(lo, hi + 1))
            else:
                values.append(int(part))
    except ValueError as exc:
        if isinstance(exc, ParseError):
            raise
        raise ParseError(f"not a range: {text!r}") from exc
    return sorted(set(values))


def _check_code(field: BaseField, c: int) -> int:
    if not 0 <= c < field.q:
        raise ParseError(f"coefficient {c} is not a code of {field}")
    return c


def _parse_monomials(text: str, field: BaseField, variables: Sequence[str]) -> Dict[Tuple[int, ...], int]:
    """Parse a sum of monomials into {exponent tuple: F_q code}."""
    compact = text.replace(" ", "")
    if not compact:
        raise ParseError("empty polynomial")
    terms: Dict[Tuple[int, ...], int] = {}
    for sign, body in re.findall(r"([+-]?)([^+-]+)", compact):
        pos = 0
        coef = 1
        exps = [0] * len(variables)
        for match in _TERM_TOKEN.finditer(body):
            if match.start() != pos:
                break
            pos = match.end()
            number, var, power, _ = match.groups()
            if number is not None:
                coef = field.mul(coef, _check_code(field, int(number)))
            elif var is not None:
                if var not in variables:
                    raise ParseError(f"unknown variable {var!r} in {text!r}")
                exps[variables.index(var)] += int(power) if power else 1
        if pos != len(body):
            raise ParseError(f"cannot parse term {body!r}")
        if sign == "-":
            coef = field.neg(coef)
        key = tuple(exps)
        terms[key] = field.add(terms.get(key, 0), coef)
    if re.sub(r"([+-]?)([^+-]+)", "", compact):
        raise ParseError(f"dangling sign in {text!r}")
    return terms


def parse_upoly(text: str, field: BaseField, var: str = "t") -> UPoly:
    text = text.strip()
    if text.startswith("["):
        return UPoly(field, [_check_code(field, c) for c in parse_int_list(text)])
    terms = _parse_monomials(_strip_parens(text), field, [var])
    coeffs = [0] * (max(k[0] for k in terms) + 1)
    for (k,), c in terms.items():
        coeffs[k] = c
    return UPoly(field, coeffs)


def _strip_parens(text: str) -> str:
    text = text.strip()
    while text.startswith("(") and text.endswith(")"):
        text = text[1:-1].strip()
    return text


def parse_ratfunc(text: str, field: BaseField, var: str = "t") -> RatFunc:
    num, slash, den = text.partition("/")
    numerator = parse_upoly(num, field, var)
    denominator = parse_upoly(den, field, var) if slash else UPoly.one(field)
    if denominator.is_zero:
        raise ParseError(f"zero denominator in {text!r}")
    return RatFunc(numerator, denominator)


def parse_bipoly(text: str, field: BaseField) -> BiPoly:
    """Canonical pair list or a monomial sum in t and z (x is accepted for z)."""
    text = text.strip()
    if text.startswith("["):
        try:
            pairs = json.loads(text)
            return bipoly_from_canonical(pairs, field)
        except (json.JSONDecodeError, TypeError, ValueError) as exc:
            if isinstance(exc, ParseError):
                raise
            raise ParseError(f"not a canonical bivariate polynomial: {text!r}") from exc
    terms = _parse_monomials(text, field, ["t", "z", "x"])
    grouped: Dict[int, Dict[int, int]] = {}
    for (i, j, k), c in terms.items():
        row = grouped.setdefault(j + k, {})
        row[i] = field.add(row.get(i, 0), c)
    coeffs = {}
    for j, row in grouped.items():
        dense = [0] * (max(row) + 1)
        for i, c in row.items():
            dense[i] = c
        coeffs[j] = UPoly(field, dense)
    return BiPoly.from_terms(field, coeffs)


def bipoly_from_canonical(pairs, field: BaseField) -> BiPoly:
    if not isinstance(pairs, list):
        raise ParseError("a bivariate polynomial is a list of [exponent, coefficients] pairs")
    terms = {}
    for pair in pairs:
        if not (isinstance(pair, list) and len(pair) == 2 and isinstance(pair[0], int)):
            raise ParseError(f"malformed term {pair!r}")
        terms[pair[0]] = UPoly(field, [_check_code(field, c) for c in pair[1]])
    return BiPoly.from_terms(field, terms)


def parse_element(text: str, ctx: FieldCtx) -> ExtFieldElem:
    coords = parse_int_list(text)
    if len(coords) > ctx.degree:
        raise ParseError(f"{len(coords)} coordinates given for {ctx}")
    for c in coords:
        _check_code(ctx.base, c)
    return ctx.from_coords(coords)


def parse_system(text: str, field: BaseField) -> List[BiPoly]:
    """A JSON list of polynomials (canonical or expressions), or expressions separated by ';'."""
    text = text.strip()
    if text.startswith("["):
        try:
            items = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParseError("malformed polynomial system") from exc
        if not isinstance(items, list):
            raise ParseError("a system is a list of polynomials")
        return [
            parse_bipoly(item, field) if isinstance(item, str) else bipoly_from_canonical(item, field)
            for item in items
        ]
    return [parse_bipoly(part, field) for part in text.split(";") if part.strip()]
