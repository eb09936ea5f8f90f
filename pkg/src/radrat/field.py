"""Canonical arithmetic in Q[p_1^(1/q_1), ..., p_m^(1/q_m)].

An element is a sparse map from monomials (exponent tuples, 0 <= k_i < q_i)
to nonzero rational coefficients over an ordered basis of prime roots.  The
all-zeros monomial carries the rational part; the empty map is 0.  Distinct
prime-root monomials are linearly independent over Q, which makes zero
testing coefficient-wise and the representation canonical.

Values are immutable after construction and all operations are pure.
"""

from dataclasses import dataclass

import numpy as np

from . import linsolve
from .config import DEFAULT, Limits
from .errors import DomainError, ResourceLimitError
from .intervals import Interval, cached_root
from .numeric import Rat, gcd, is_probable_prime

ONE_RAT = Rat(1)


@dataclass(frozen=True)
class RadicalBasis:
    """Ordered (prime, degree) pairs; primes strictly increasing, degrees >= 2."""

    entries: tuple

    def __post_init__(self):
        last = 1
        for p, q in self.entries:
            if p <= last:
                raise DomainError(f"basis primes must strictly increase: {self.entries}")
            if q < 2:
                raise DomainError(f"root degree must be >= 2: ({p},{q})")
            last = p

    @property
    def primes(self):
        return tuple(p for p, _ in self.entries)

    @property
    def degrees(self):
        return tuple(q for _, q in self.entries)

    def dim(self) -> int:
        d = 1
        for _, q in self.entries:
            d *= q
        return d

    def __len__(self):
        return len(self.entries)


EMPTY_BASIS = RadicalBasis(())


class RadicalNumber:
    """Element of the prime-root extension field, in canonical sparse form."""

    __slots__ = ("basis", "terms", "_hash")

    def __init__(self, basis: RadicalBasis, terms: dict):
        self.basis = basis
        self.terms = {m: c for m, c in terms.items() if c != 0}
        self._hash = None

    # -- constructors ------------------------------------------------------

    @staticmethod
    def from_rat(value) -> "RadicalNumber":
        v = Rat(value)
        if v == 0:
            return ZERO
        return RadicalNumber(EMPTY_BASIS, {(): v})

    # -- predicates --------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_rational(self) -> bool:
        zero_mono = (0,) * len(self.basis)
        return all(m == zero_mono for m in self.terms)

    def rational_value(self):
        """The exact rational value; DomainError when irrational."""
        if not self.is_rational():
            raise DomainError("not a rational value")
        return next(iter(self.terms.values()), Rat(0))

    # -- structural equality; on minimized bases this is value equality
    #    (use same_value() to compare across coordinate bases) ---------------

    def __eq__(self, other):
        if not isinstance(other, RadicalNumber):
            return NotImplemented
        return self.basis == other.basis and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            key = (self.basis.entries, tuple(sorted(
                (m, (int(c.numerator), int(c.denominator)))
                for m, c in self.terms.items())))
            self._hash = hash(key)
        return self._hash

    def __repr__(self):
        return f"RadicalNumber({self.to_text()})"

    # -- arithmetic (same-basis operands; callers unify first) --------------

    def __add__(self, other):
        return add(self, other)

    def __sub__(self, other):
        return add(self, negate(other))

    def __neg__(self):
        return negate(self)

    def __mul__(self, other):
        return multiply(self, other)

    def sort_key(self):
        """Deterministic total order key for reporting and group ordering."""
        return (
            self.basis.entries,
            tuple(sorted(
                (m, (int(c.numerator), int(c.denominator)))
                for m, c in self.terms.items())),
        )

    def to_text(self) -> str:
        """Canonical rendering, e.g. ``1 - 2/3 * (2)^(2/3) * (3)^(1/6)``.

        Reparses through the model grammar's coefficient rules.
        """
        if not self.terms:
            return "0"
        parts = []
        for mono in sorted(self.terms):
            c = self.terms[mono]
            factors = []
            for (p, q), k in zip(self.basis.entries, mono):
                if k:
                    g = gcd(k, q)
                    factors.append(f"({p})^({k // g}/{q // g})")
            mag = abs(c)
            text = "" if (mag == 1 and factors) else _rat_text(mag)
            joined = " * ".join(([text] if text else []) + factors)
            parts.append(("-" if c < 0 else "+", joined))
        sign0, body0 = parts[0]
        out = ("-" if sign0 == "-" else "") + body0
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out


def _rat_text(r):
    return str(r.numerator) if r.denominator == 1 else f"{r.numerator}/{r.denominator}"


ZERO = RadicalNumber(EMPTY_BASIS, {})
ONE = RadicalNumber.from_rat(1)


def from_prime_powers(coeff, pairs) -> "RadicalNumber":
    """Single term coeff * prod p^(k/q); pairs are (p, q, k), primes ascending."""
    entries = tuple((p, q) for p, q, _ in pairs)
    mono = tuple(k for _, _, k in pairs)
    if not entries:
        return RadicalNumber.from_rat(coeff)
    return RadicalNumber(RadicalBasis(entries), {mono: Rat(coeff)})


def minimize_basis(x: RadicalNumber) -> RadicalNumber:
    """Smallest basis representing x: per-prime degrees reduced, unused
    primes dropped.  Canonical inputs to unify_bases come from here."""
    if not x.terms:
        return ZERO
    m = len(x.basis)
    gs = []
    for i, (_, q) in enumerate(x.basis.entries):
        g = q
        for mono in x.terms:
            g = gcd(g, mono[i])
        gs.append(g)
    keep = [i for i, (_, q) in enumerate(x.basis.entries) if gs[i] != q]
    if not keep:
        return RadicalNumber.from_rat(next(iter(x.terms.values())))
    entries = tuple(
        (x.basis.entries[i][0], x.basis.entries[i][1] // gs[i]) for i in keep
    )
    terms = {}
    for mono, c in x.terms.items():
        terms[tuple(mono[i] // gs[i] for i in keep)] = c
    return RadicalNumber(RadicalBasis(entries), terms)


def unify_bases(xs, limits: Limits = DEFAULT):
    """Common basis (per-prime lcm of degrees) and re-coordinatized copies.

    Values are unchanged; only coordinates move.  Raises ResourceLimitError
    when the unified dimension exceeds ``limits.dim_cap``.
    """
    degs: dict = {}
    for x in xs:
        for p, q in x.basis.entries:
            degs[p] = degs.get(p, 1) * q // gcd(degs.get(p, 1), q)
    entries = tuple(sorted(degs.items()))
    basis = RadicalBasis(entries)
    if basis.dim() > limits.dim_cap:
        raise ResourceLimitError(
            f"unified basis dimension {basis.dim()} exceeds cap {limits.dim_cap}"
        )
    out = []
    for x in xs:
        pos = {p: i for i, (p, _) in enumerate(x.basis.entries)}
        terms = {}
        for mono, c in x.terms.items():
            new = []
            for p, q in entries:
                i = pos.get(p)
                new.append(0 if i is None else mono[i] * (q // x.basis.entries[i][1]))
            terms[tuple(new)] = c
        out.append(RadicalNumber(basis, terms))
    return basis, out


def _require_same_basis(x, y):
    if x.basis != y.basis:
        raise DomainError("operands must share a basis; call unify_bases first")


def add(x: RadicalNumber, y: RadicalNumber) -> RadicalNumber:
    _require_same_basis(x, y)
    terms = dict(x.terms)
    for m, c in y.terms.items():
        s = terms.get(m)
        if s is None:
            terms[m] = c
        else:
            s = s + c
            if s == 0:
                del terms[m]
            else:
                terms[m] = s
    return RadicalNumber(x.basis, terms)


def negate(x: RadicalNumber) -> RadicalNumber:
    return RadicalNumber(x.basis, {m: -c for m, c in x.terms.items()})


def scale(x: RadicalNumber, r) -> RadicalNumber:
    r = Rat(r)
    if r == 0:
        return RadicalNumber(x.basis, {})
    return RadicalNumber(x.basis, {m: c * r for m, c in x.terms.items()})


def _mono_mul(basis, m1, m2):
    """Multiply monomials: exponents add mod q_i, overflow carries p_i into
    the rational coefficient."""
    out = []
    carry = 1
    for (p, q), a, b in zip(basis.entries, m1, m2):
        s = a + b
        if s >= q:
            s -= q
            carry *= p
        out.append(s)
    return tuple(out), carry


def multiply(x: RadicalNumber, y: RadicalNumber) -> RadicalNumber:
    _require_same_basis(x, y)
    basis = x.basis
    terms: dict = {}
    for m1, c1 in x.terms.items():
        for m2, c2 in y.terms.items():
            mono, carry = _mono_mul(basis, m1, m2)
            c = c1 * c2
            if carry != 1:
                c = c * carry
            s = terms.get(mono)
            if s is None:
                terms[mono] = c
            else:
                s = s + c
                if s == 0:
                    del terms[mono]
                else:
                    terms[mono] = s
    return RadicalNumber(basis, terms)


def pow_int(x: RadicalNumber, k: int) -> RadicalNumber:
    if k < 0:
        raise DomainError("negative power; use invert")
    out = RadicalNumber(x.basis, {(0,) * len(x.basis): ONE_RAT})
    for _ in range(k):
        out = multiply(out, x)
    return out


def is_zero(x: RadicalNumber) -> bool:
    return x.is_zero()


def is_rational(x: RadicalNumber) -> bool:
    return x.is_rational()


# -- inversion ---------------------------------------------------------------


def _subgroup_closure(gens, degrees, cap):
    """Subgroup of prod Z_q generated by the exponent tuples, sorted."""
    seen = {tuple(0 for _ in degrees)}
    frontier = list(seen)
    while frontier:
        nxt = []
        for h in frontier:
            for g in gens:
                t = tuple((a + b) % q for a, b, q in zip(h, g, degrees))
                if t not in seen:
                    seen.add(t)
                    if len(seen) > cap:
                        raise ResourceLimitError(
                            f"inversion subspace exceeds dimension cap {cap}"
                        )
                    nxt.append(t)
        frontier = nxt
    return sorted(seen)


def _mult_matrix_rat(x, sub):
    """Exact rational multiplication-by-x matrix on the subalgebra basis."""
    pos = {h: i for i, h in enumerate(sub)}
    d = len(sub)
    rows = [[Rat(0)] * d for _ in range(d)]
    for j, h in enumerate(sub):
        for mono, c in x.terms.items():
            target, carry = _mono_mul(x.basis, mono, h)
            rows[pos[target]][j] += c * carry
    return rows


def invert(x: RadicalNumber, limits: Limits = DEFAULT) -> RadicalNumber:
    """Exact multiplicative inverse.

    Solves the linear system given by the multiplication-by-x map on the
    subalgebra generated by x's monomials.  Small systems go through exact
    elimination; larger ones through p-adic lifting with the result verified
    by an exact product check (so lifting can never return a wrong answer).
    """
    if not x.terms:
        raise DomainError("inverse of zero")
    if x.basis.dim() > limits.dim_cap:
        raise ResourceLimitError(
            f"basis dimension {x.basis.dim()} exceeds cap {limits.dim_cap}"
        )
    zero_mono = (0,) * len(x.basis)
    if x.is_rational():
        return RadicalNumber(x.basis, {zero_mono: 1 / x.rational_value()})
    if len(x.terms) == 1:
        (mono, c), = x.terms.items()
        inv_mono = []
        denom = Rat(c)
        for (p, q), k in zip(x.basis.entries, mono):
            if k:
                inv_mono.append(q - k)
                denom = denom * p
            else:
                inv_mono.append(0)
        return RadicalNumber(x.basis, {tuple(inv_mono): 1 / denom})
    degrees = x.basis.degrees
    sub = _subgroup_closure(list(x.terms), degrees, limits.dim_cap)
    d = len(sub)
    e_zero = sub.index(zero_mono)
    if d <= 8:
        rows = _mult_matrix_rat(x, sub)
        rhs = [Rat(0)] * d
        rhs[e_zero] = Rat(1)
        sol = linsolve.gauss_solve_exact(rows, rhs)
        if sol is None:
            raise DomainError("element is not invertible (zero?)")
        return RadicalNumber(x.basis, dict(zip(sub, sol)))

    y = _invert_lifted(x, sub, e_zero, limits)
    if y is not None:
        return y
    # Definitive (slow) route: exact elimination.
    rows = _mult_matrix_rat(x, sub)
    rhs = [Rat(0)] * d
    rhs[e_zero] = Rat(1)
    sol = linsolve.gauss_solve_exact(rows, rhs)
    if sol is None:
        raise DomainError("element is not invertible (zero?)")
    return RadicalNumber(x.basis, dict(zip(sub, sol)))


def _invert_lifted(x, sub, e_zero, limits):
    """p-adic route of invert(); None when word-size contracts fail."""
    d = len(sub)
    lcm_den = 1
    for c in x.terms.values():
        cd = int(c.denominator)
        lcm_den = lcm_den * cd // gcd(lcm_den, cd)
    max_carry = 1
    for p, _ in x.basis.entries:
        max_carry *= p
    max_entry = max(
        abs(int(c.numerator)) * (lcm_den // int(c.denominator))
        for c in x.terms.values()
    ) * max_carry
    if max_entry >= 1 << 33 or lcm_den >= 1 << 50:
        return None

    pos = {h: i for i, h in enumerate(sub)}
    sub_arr = np.array(sub, dtype=np.int64)
    qs = np.array(x.basis.degrees, dtype=np.int64)
    ps = np.array(x.basis.primes, dtype=np.int64)
    cols = np.arange(d, dtype=np.int64)
    a_int = np.zeros((d, d), dtype=np.int64)
    rows_l, vals_l = [], []
    for mono, c in x.terms.items():
        n = int(c.numerator) * (lcm_den // int(c.denominator))
        s = sub_arr + np.array(mono, dtype=np.int64)
        over = s >= qs
        s = s - over * qs
        carry = np.where(over, ps, 1).prod(axis=1)
        idx = np.array([pos[tuple(t)] for t in s.tolist()], dtype=np.int64)
        a_int[idx, cols] += n * carry
        rows_l.append(idx)
        vals_l.append(n * carry)
    b = np.zeros(d, dtype=np.int64)
    b[e_zero] = lcm_den
    # permute rows so one term's scatter is the diagonal: nonzero pivots in
    # natural order, which keeps block elimination in the kernels alive
    t_best = max(range(len(vals_l)), key=lambda t: abs(int(vals_l[t][0])))
    perm = rows_l[t_best]
    a_int = a_int[perm]
    b = b[perm]
    renumber = np.empty(d, dtype=np.int64)
    renumber[perm] = np.arange(d, dtype=np.int64)
    rows = renumber[np.concatenate(rows_l)]
    vals = np.concatenate(vals_l)
    coo_cols = np.tile(cols, len(vals_l))

    digits = 24
    for _ in range(6):
        sol = linsolve.dixon_solve(a_int, b, coo=(rows, coo_cols, vals),
                                   min_digits=digits)
        if sol is None:
            return None
        y = RadicalNumber(x.basis, dict(zip(sub, sol)))
        prod = multiply(x, y)
        if prod.is_rational() and prod.rational_value() == 1:
            return y
        digits *= 2
    return None


# -- sign and numeric evaluation ----------------------------------------------


def _enclosure(x: RadicalNumber, bits: int) -> Interval:
    """Interval guaranteed to contain the exact value of x, at working
    precision ``bits``."""
    total = Interval.point(0)
    for mono, c in x.terms.items():
        term = Interval.point(c)
        for (p, q), k in zip(x.basis.entries, mono):
            if k:
                term = term * cached_root(p, q, bits).pow_int(k)
        total = total + term
    if len(x.terms) > 4:
        total = total.round_out(bits)
    return total


def sign(x: RadicalNumber, limits: Limits = DEFAULT) -> int:
    """Exact sign in {-1, 0, +1}.

    Zero is decided canonically (empty term map).  Nonzero values with mixed
    coefficient signs are separated from zero by interval refinement at
    doubling precision; monomials are positive reals, so single-sign
    coefficient maps short-circuit.
    """
    if not x.terms:
        return 0
    has_pos = any(c > 0 for c in x.terms.values())
    has_neg = any(c < 0 for c in x.terms.values())
    if not has_neg:
        return 1
    if not has_pos:
        return -1
    bits = limits.sign_bits_start
    while bits <= limits.sign_bits_cap:
        s = _enclosure(x, bits).sign()
        if s is not None:
            return s
        bits *= 2
    raise ResourceLimitError(
        f"sign undecided at precision cap {limits.sign_bits_cap} bits"
    )


def evaluate(x: RadicalNumber, precision_bits: int) -> Interval:
    """Enclosure of x with width <= 2**(1 - precision_bits).

    (Stronger than the relative contract, since max(1, |x|) >= 1.)
    """
    if precision_bits < 16:
        raise DomainError("precision_bits must be >= 16")
    bits = precision_bits + 8 + max(len(x.terms), 1).bit_length()
    goal = Rat(2) / (1 << precision_bits)
    while True:
        enc = _enclosure(x, bits)
        if enc.width() <= goal:
            return enc
        bits *= 2


def same_value(x: RadicalNumber, y: RadicalNumber) -> bool:
    """Value equality regardless of coordinate bases."""
    _, (a, b) = unify_bases([x, y])
    return a.terms == b.terms


def make_basis(pairs) -> RadicalBasis:
    """Validated basis from (prime, degree) pairs (primality checked)."""
    for p, _ in pairs:
        if not is_probable_prime(p):
            raise DomainError(f"{p} is not prime")
    return RadicalBasis(tuple(sorted(pairs)))
