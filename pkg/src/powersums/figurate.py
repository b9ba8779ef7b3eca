"""Exact evaluation of the power-sum identities.

Bernoulli numbers (B_1 = +1/2 convention), Faulhaber's closed formula,
and a registry of every named identity the dissections realise.  Every
closed form here can be checked against a literal-summation oracle; the
registry reports both sides exactly.

Note on convention: the recursion sum_{i<=m} C(m+1, i) B_i = m + 1 forces
B_1 = +1/2, unlike the B_1 = -1/2 ("first kind") convention common in
reference tables.  Even-index values agree between the two.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Callable, Mapping

from .exact import QuadExt, Rat, strip_root


class IdentityError(Exception):
    """Base for registry evaluation failures."""


class MissingParameter(IdentityError):
    pass


class ConstraintViolated(IdentityError):
    pass


@dataclass(frozen=True)
class IdentityReport:
    """Outcome of evaluating one named identity at given parameters."""

    identity_name: str
    parameters: dict[str, int]
    lhs: QuadExt
    rhs: QuadExt
    holds: bool

    def __str__(self) -> str:
        params = " ".join(f"{k}={v}" for k, v in self.parameters.items())
        verdict = "HOLDS" if self.holds else "FAILS"
        return f"{self.identity_name} {params}: {self.lhs} = {self.rhs} {verdict}"


def _report(name: str, params: Mapping[str, int],
            lhs: QuadExt, rhs: QuadExt) -> IdentityReport:
    return IdentityReport(name, dict(params), lhs, rhs, lhs == rhs)


# -- sums and Bernoulli numbers -----------------------------------------


def sum_powers_bruteforce(p: int, n: int) -> int:
    """S_p(n) = 1**p + 2**p + ... + n**p by literal summation."""
    if p < 0 or n < 0:
        raise ValueError("p and n must be non-negative")
    return sum(k**p for k in range(1, n + 1))


def truncated_power_sum(p: int, m: int, n: int) -> int:
    """m**p + (m+1)**p + ... + n**p (empty when m > n)."""
    return sum(k**p for k in range(m, n + 1))


def odd_weighted_squares(n: int) -> int:
    """1*1**2 + 3*2**2 + ... + (2n-1)*n**2, the excess-layer cell count."""
    return sum((2 * k - 1) * k * k for k in range(1, n + 1))


_BERNOULLI: list[Fraction] = [Fraction(1)]
_BERNOULLI_LOCK = threading.Lock()


def bernoulli(m: int) -> Rat:
    """B_m under the sum_{i<=m} C(m+1, i) B_i = m+1 recursion (B_1 = +1/2)."""
    if m < 0:
        raise ValueError("m must be non-negative")
    if m < len(_BERNOULLI):
        return _BERNOULLI[m]
    with _BERNOULLI_LOCK:
        while len(_BERNOULLI) <= m:
            k = len(_BERNOULLI)
            acc = sum(comb(k + 1, i) * _BERNOULLI[i] for i in range(k))
            _BERNOULLI.append(Fraction(k + 1 - acc, k + 1))
    return _BERNOULLI[m]


def bernoulli_table(upto: int) -> list[Rat]:
    """B_0 .. B_upto as a list."""
    bernoulli(upto)
    return _BERNOULLI[: upto + 1]


def faulhaber(p: int, n: int) -> Rat:
    """S_p(n) via the closed formula (1/(p+1)) sum C(p+1,j) B_j n^(p+1-j)."""
    if p < 0 or n < 0:
        raise ValueError("p and n must be non-negative")
    total = sum(
        comb(p + 1, j) * bernoulli(j) * n ** (p + 1 - j) for j in range(p + 1)
    )
    return Fraction(total, p + 1)


# -- identity registry ---------------------------------------------------

_Q = QuadExt
_Pair = tuple[QuadExt, QuadExt]


def _odd_sum_square(n: int) -> _Pair:
    return _Q(sum(2 * k - 1 for k in range(1, n + 1))), _Q(n * n)


def _triangular(n: int) -> _Pair:
    return _Q(sum_powers_bruteforce(1, n)), _Q(Fraction(n * (n + 1), 2))


def _sum_squares(n: int) -> _Pair:
    return _Q(sum_powers_bruteforce(2, n)), _Q(Fraction(n * (n + 1) * (2 * n + 1), 6))


def _archimedes(n: int) -> _Pair:
    lhs = sum_powers_bruteforce(1, n) + (n + 1) * n * n
    return _Q(lhs), _Q(3 * sum_powers_bruteforce(2, n))


def _nicomachus(n: int) -> _Pair:
    t = sum_powers_bruteforce(1, n)
    return _Q(sum_powers_bruteforce(3, n)), _Q(t * t)


def _squares_half(n: int) -> _Pair:
    rhs = Fraction(n) * (n + 1) * (Fraction(n) + Fraction(1, 2)) / 3
    return _Q(sum_powers_bruteforce(2, n)), _Q(rhs)


def _cubes_closed(n: int) -> _Pair:
    return _Q(sum_powers_bruteforce(3, n)), _Q(Fraction(n * n * (n + 1) ** 2, 4))


def _fourth_factored(n: int) -> _Pair:
    rhs = (Fraction(n) * (n + 1) * (Fraction(n) + Fraction(1, 2))
           * (Fraction(n * n + n) - Fraction(1, 3)) / 5)
    return _Q(sum_powers_bruteforce(4, n)), _Q(rhs)


def _fourth_integer_form(n: int) -> _Pair:
    rhs = Fraction(n * (n + 1) * (2 * n + 1) * (3 * n * n + 3 * n - 1), 30)
    return _Q(sum_powers_bruteforce(4, n)), _Q(rhs)


def _rows_cols(p: int, n: int) -> _Pair:
    lhs = sum_powers_bruteforce(p + 1, n)
    suffix = 0
    rhs = 0
    for k in range(n, 0, -1):  # rhs = sum over m of (m^p + ... + n^p)
        suffix += k**p
        rhs += suffix
    return _Q(lhs), _Q(rhs)


def _truncated(p: int, m: int, n: int) -> _Pair:
    # Row layout of the truncated lemma: the full row m^p+...+n^p repeated
    # m-1 times, then the triangular block of suffix sums from m.
    lhs = truncated_power_sum(p + 1, m, n)
    suffix = 0
    triangle = 0
    for k in range(n, m - 1, -1):
        suffix += k**p
        triangle += suffix
    rhs = (m - 1) * suffix + triangle
    return _Q(lhs), _Q(rhs)


def _almost_square(m: int, n: int) -> _Pair:
    lhs = 2 * truncated_power_sum(1, m, n) + m * m
    rhs = (n + 1) ** 2 - (n + 1 - m)
    return _Q(lhs), _Q(rhs)


def _fourth_as_sq_times_sq(n: int) -> _Pair:
    rhs = sum((k * k) * (k * k) for k in range(1, n + 1))
    return _Q(sum_powers_bruteforce(4, n)), _Q(rhs)


def _archimedes_gen(n: int) -> _Pair:
    lhs = 5 * sum_powers_bruteforce(4, n)
    rhs = n**3 * (n + 1) ** 2 + odd_weighted_squares(n)
    return _Q(lhs), _Q(rhs)


def _step2_split(n: int) -> _Pair:
    return _Q(n * n * (n + 1) ** 2), _Q((n * (n + 1)) * (n * (n + 1)))


def _scissor_factor(n: int) -> _Pair:
    x = strip_root()
    lhs = (_Q(n) - x) * (_Q(n + 1) + x)
    rhs = _Q(Fraction(n * n + n) - Fraction(1, 3))
    return lhs, rhs


def _top_layer_double(n: int) -> _Pair:
    lhs = 2 * odd_weighted_squares(n)
    rhs = n * n * (n + 1) ** 2 - 2 * sum_powers_bruteforce(2, n)
    return _Q(lhs), _Q(rhs)


def _r_balance(n: int) -> _Pair:
    leftover = Fraction(1, 3)
    lhs = Fraction(n * n * (n + 1) ** 2) - leftover * n * (n + 1)
    rhs = 2 * (leftover * n * n * (n + 1) + odd_weighted_squares(n))
    return _Q(lhs), _Q(rhs)


def _final_assembly(n: int) -> _Pair:
    # The right side is assembled through irrational intermediates; the
    # sqrt(21) part cancels exactly.
    x = strip_root()
    lhs = _Q(5 * sum_powers_bruteforce(4, n))
    rhs = ((_Q(n) + _Q(Fraction(1, 2))) * _Q(n * (n + 1))
           * (_Q(n) - x) * (_Q(n + 1) + x))
    return lhs, rhs


_RegistryFn = Callable[..., _Pair]

REGISTRY: dict[str, tuple[tuple[str, ...], _RegistryFn]] = {
    "ODD_SUM_SQUARE": (("n",), _odd_sum_square),
    "TRIANGULAR": (("n",), _triangular),
    "SUM_SQUARES": (("n",), _sum_squares),
    "ARCHIMEDES": (("n",), _archimedes),
    "NICOMACHUS": (("n",), _nicomachus),
    "SQUARES_HALF": (("n",), _squares_half),
    "CUBES_CLOSED": (("n",), _cubes_closed),
    "FOURTH_FACTORED": (("n",), _fourth_factored),
    "FOURTH_INTEGER_FORM": (("n",), _fourth_integer_form),
    "ROWS_COLS": (("p", "n"), _rows_cols),
    "TRUNCATED": (("p", "m", "n"), _truncated),
    "ALMOST_SQUARE": (("m", "n"), _almost_square),
    "FOURTH_AS_SQ_TIMES_SQ": (("n",), _fourth_as_sq_times_sq),
    "ARCHIMEDES_GEN": (("n",), _archimedes_gen),
    "STEP2_SPLIT": (("n",), _step2_split),
    "SCISSOR_FACTOR": (("n",), _scissor_factor),
    "TOP_LAYER_DOUBLE": (("n",), _top_layer_double),
    "R_BALANCE": (("n",), _r_balance),
    "FINAL_ASSEMBLY": (("n",), _final_assembly),
}

IDENTITY_NAMES = tuple(REGISTRY)


def evaluate_identity(name: str, params: Mapping[str, int]) -> IdentityReport:
    """Evaluate a registry identity exactly and report both sides.

    Raises ``MissingParameter`` when a required integer is absent and
    ``ConstraintViolated`` on out-of-range parameters (n < 1, m outside
    1..n, p < 0).
    """
    if name not in REGISTRY:
        raise ValueError(f"unknown identity: {name!r}")
    wanted, fn = REGISTRY[name]
    args: dict[str, int] = {}
    for key in wanted:
        if key not in params or params[key] is None:
            raise MissingParameter(f"{name} requires parameter {key!r}")
        args[key] = int(params[key])
    if args["n"] < 1:
        raise ConstraintViolated(f"{name}: n must be >= 1, got {args['n']}")
    if "m" in args and not 1 <= args["m"] <= args["n"]:
        raise ConstraintViolated(
            f"{name}: m must satisfy 1 <= m <= n, got m={args['m']} n={args['n']}"
        )
    if "p" in args and args["p"] < 0:
        raise ConstraintViolated(f"{name}: p must be >= 0, got {args['p']}")
    lhs, rhs = fn(**args)
    return _report(name, args, lhs, rhs)
