"""Serialization: canonical model text (round-trippable) and LP-format export."""

from . import field
from .errors import ExportError
from .model import Coefficient, Model
from .numeric import Rat, rat_to_str


def coefficient_text(c: Coefficient) -> str:
    """Canonical text for a coefficient; reparses to an equal Coefficient."""
    if c.is_zero():
        return "0"
    parts = []
    for alpha, value in c.items_sorted():
        if alpha.is_zero():
            parts.append(value.to_text())
        else:
            parts.append(f"exp({alpha.to_text()}) * ({value.to_text()})")
    return " + ".join(parts)


def _simple_term(coeff: Coefficient):
    """(sign, body) for a single-monomial pure-radical coefficient, else None."""
    if coeff.has_exp() or len(coeff.groups) != 1:
        return None
    v = coeff.pure_part()
    if len(v.terms) != 1:
        return None
    (mono, c), = v.terms.items()
    factors = []
    for (p, q), k in zip(v.basis.entries, mono):
        if k:
            from .numeric import gcd

            g = gcd(k, q)
            factors.append(f"({p})^({k // g}/{q // g})")
    mag = abs(c)
    pieces = []
    if mag != 1 or not factors:
        pieces.append(rat_to_str(mag))
    pieces.extend(factors)
    return ("-" if c < 0 else "+", "*".join(pieces))


def _term_text(coeff: Coefficient, var: str):
    simple = _simple_term(coeff)
    if simple is not None:
        sign, body = simple
        if body == "1":
            return sign, var
        return sign, f"{body}*{var}"
    return "+", f"({coefficient_text(coeff)})*{var}"


def _linexpr_text(m: Model, coeffs: dict, constant: Coefficient) -> str:
    frags = []
    for v in m.variables:
        c = coeffs.get(v.name)
        if c is None or c.is_zero():
            continue
        frags.append(_term_text(c, v.name))
    if not constant.is_zero():
        simple = _simple_term(constant)
        if simple is not None:
            frags.append(simple)
        else:
            frags.append(("+", f"({coefficient_text(constant)})"))
    if not frags:
        return "0"
    sign0, body0 = frags[0]
    out = ("-" if sign0 == "-" else "") + body0
    for sign, body in frags[1:]:
        out += f" {sign} {body}"
    return out


def write_model(m: Model) -> str:
    """Deterministic canonical rendering; parse_model(write_model(m)) == m."""
    lines = []
    for v in m.variables:
        decl = f"var {v.name}"
        if v.nonneg:
            decl += " >= 0"
        if v.is_integer:
            decl += " integer"
        lines.append(decl + ";")
    lines.append(
        f"{m.sense} {_linexpr_text(m, m.objective, m.objective_constant)};"
    )
    for c in m.constraints:
        head = "s.t. " + (f"{c.name}: " if c.name else "")
        lhs = _linexpr_text(m, c.coeffs, Coefficient.zero())
        rhs = coefficient_text(c.rhs)
        lines.append(f"{head}{lhs} {c.relation} {rhs};")
    return "\n".join(lines) + "\n"


# -- LP-format export ---------------------------------------------------------


def _decimal_exact(r) -> str | None:
    """Exact decimal text when the rational terminates (denominator 2^a 5^b)."""
    den = int(r.denominator)
    a = b = 0
    while den % 2 == 0:
        den //= 2
        a += 1
    while den % 5 == 0:
        den //= 5
        b += 1
    if den != 1:
        return None
    digits = max(a, b)
    scaled = int(r.numerator) * 10**digits // int(r.denominator)
    if digits == 0:
        return str(scaled)
    sign = "-" if scaled < 0 else ""
    s = str(abs(scaled)).rjust(digits + 1, "0")
    return f"{sign}{s[:-digits]}.{s[-digits:]}"


def _sig_round(r, digits: int) -> str:
    """|r| rounded to ``digits`` significant decimal digits (exact int math)."""
    sign = "-" if r < 0 else ""
    r = abs(Rat(r))
    if r == 0:
        return "0"
    # e = floor(log10(r)) by integer comparisons
    e = len(str(int(r.numerator) // int(r.denominator))) - 1 if r >= 1 else None
    if e is None:
        e = -1
        scaled = r
        while scaled < Rat(1, 1):
            scaled = scaled * 10
            if scaled >= 1:
                break
            e -= 1
    shift = digits - 1 - e
    scaled = r * Rat(10) ** shift if shift >= 0 else r / Rat(10) ** (-shift)
    n = int(scaled.numerator * 2 + scaled.denominator) // int(
        2 * scaled.denominator
    )  # round half up
    s = str(n)
    if len(s) > digits:  # rounding bumped a digit (e.g. 9.99 -> 10.0)
        e += 1
        s = s[:digits]
    point = e + 1
    if 0 < point <= len(s):
        txt = s[:point] + ("." + s[point:] if point < len(s) else "")
    elif point <= 0:
        txt = "0." + "0" * (-point) + s
    else:
        txt = s + "0" * (point - len(s))
    return sign + txt


def _lp_number(coeff: Coefficient, precision: int, where: str, warnings: list) -> str:
    if coeff.has_exp():
        raise ExportError(
            f"{where}: exponential coefficients cannot be exported to LP format"
        )
    v = coeff.pure_part()
    if v.is_rational():
        r = v.rational_value()
        exact = _decimal_exact(r)
        if exact is not None:
            return exact
        warnings.append(
            f"{where}: rational {rat_to_str(r)} rounded to {precision} significant digits"
        )
        return _sig_round(r, precision)
    bits = int(3.33 * (precision + 6)) + 16
    enc = field.evaluate(v, bits)
    mid = (enc.lo + enc.hi) / 2
    warnings.append(
        f"{where}: irrational coefficient rounded to {precision} significant digits"
    )
    return _sig_round(mid, precision)


def _lp_terms(m: Model, coeffs: dict, precision: int, where: str, warnings: list) -> str:
    frags = []
    for v in m.variables:
        c = coeffs.get(v.name)
        if c is None or c.is_zero():
            continue
        num = _lp_number(c, precision, f"{where}, variable {v.name}", warnings)
        neg = num.startswith("-")
        mag = num[1:] if neg else num
        frag = v.name if mag in ("1", "1.0") else f"{mag} {v.name}"
        frags.append(("-" if neg else "+", frag))
    if not frags:
        return "0 " + (m.variables[0].name if m.variables else "none")
    sign0, body0 = frags[0]
    out = ("- " if sign0 == "-" else "") + body0
    for sign, body in frags[1:]:
        out += f" {sign} {body}"
    return out


def export_lp(m: Model, precision: int = 10) -> str:
    """CPLEX-style LP text.

    Terminating rationals are rendered exactly; everything else is rounded
    to ``precision`` significant digits with a lossiness warning in the
    header comments.  Models with exp groups are not exportable.
    """
    if m.has_exp():
        raise ExportError("exponential coefficients cannot be exported to LP format")
    warnings: list = []
    body = []
    body.append("Maximize" if m.sense == "max" else "Minimize")
    obj = _lp_terms(m, m.objective, precision, "objective", warnings)
    if not m.objective_constant.is_zero():
        const = _lp_number(
            m.objective_constant, precision, "objective constant", warnings
        )
        obj += f" + {const}" if not const.startswith("-") else f" - {const[1:]}"
    body.append(f" obj: {obj}")
    body.append("Subject To")
    used = set()
    for i, c in enumerate(m.constraints):
        name = c.name or f"c{i + 1}"
        while name in used:
            name += "_"
        used.add(name)
        rel = {"=": "=", "<=": "<=", ">=": ">="}[c.relation]
        lhs = _lp_terms(m, c.coeffs, precision, f"constraint {name}", warnings)
        rhs = _lp_number(c.rhs, precision, f"constraint {name} rhs", warnings)
        body.append(f" {name}: {lhs} {rel} {rhs}")
    frees = [v.name for v in m.variables if not v.nonneg]
    if frees:
        body.append("Bounds")
        body.extend(f" {n} free" for n in frees)
    ints = [v.name for v in m.variables if v.is_integer]
    if ints:
        body.append("General")
        body.extend(f" {n}" for n in ints)
    body.append("End")
    head = ["\\ radrat LP export"]
    head.extend(f"\\ Warning: {w}" for w in warnings)
    return "\n".join(head + body) + "\n"
