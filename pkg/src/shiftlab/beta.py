"""Binary expansions in a non-integer base lambda in (1, 2).

Digits act through the maps T0(x) = lambda * x and T1(x) = lambda * x - 1
on the interval [0, 1/(lambda-1)].  A point has a digit choice exactly when
it lies in the switch region [1/lambda, 1/(lambda*(lambda-1))]; the greedy
expansion always takes the largest admissible digit and the lazy expansion
the smallest.

Floating point cannot decide membership at the region's endpoints, so every
branch test is three-way: strictly inside, strictly outside, or within
membership_tol of an endpoint.  Near-endpoint steps are carried out with
the mathematically closed-endpoint digit (greedy keeps 1, lazy keeps 0) and
flagged as ambiguous rather than silently resolved; tree enumeration
explores both digits there and lets impossible branches die when their
orbit leaves the interval.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from . import sgap
from .sgap import SGapSpec

GOLDEN = (1.0 + math.sqrt(5.0)) / 2.0

FORCED0 = "forced0"
FORCED1 = "forced1"
SWITCH = "switch"
AMBIGUOUS = "ambiguous"


class LeafBudgetError(RuntimeError):
    """Tree enumeration exhausted its leaf budget; partial leaves attached."""

    def __init__(self, message: str, partial: list):
        super().__init__(message)
        self.partial = partial


@dataclass(frozen=True)
class BetaContext:
    """Base lambda with its interval and switch-region endpoints."""

    lam: float
    membership_tol: float = 1e-12

    def __post_init__(self):
        if not (1.0 < self.lam < 2.0):
            raise ValueError("base must lie strictly between 1 and 2")
        if self.membership_tol < 0.0:
            raise ValueError("membership tolerance must be >= 0")

    @property
    def interval_right(self) -> float:
        return 1.0 / (self.lam - 1.0)

    @property
    def switch_lo(self) -> float:
        return 1.0 / self.lam

    @property
    def switch_hi(self) -> float:
        return 1.0 / (self.lam * (self.lam - 1.0))

    def region_of(self, y: float) -> str:
        """Three-way switch-region test with the ambiguity band."""
        tol = self.membership_tol
        if abs(y - self.switch_lo) <= tol or abs(y - self.switch_hi) <= tol:
            return AMBIGUOUS
        if y < self.switch_lo:
            return FORCED0
        if y > self.switch_hi:
            return FORCED1
        return SWITCH

    def in_switch_region(self, y: float) -> bool:
        tol = self.membership_tol
        return self.switch_lo - tol <= y <= self.switch_hi + tol

    def require_in_interval(self, x: float) -> None:
        tol = max(self.membership_tol, 1e-12)
        if not (-tol <= x <= self.interval_right + tol):
            raise ValueError(
                f"{x!r} outside [0, {self.interval_right!r}] for base {self.lam!r}"
            )


def apply_map(digit: int, x: float, ctx: BetaContext) -> float:
    """One digit action: lambda * x - digit."""
    if digit not in (0, 1):
        raise ValueError("digit must be 0 or 1")
    return ctx.lam * x - digit


@dataclass(frozen=True)
class ExpansionPrefix:
    """A finite digit word with its orbit and per-step branch annotations.

    orbit[k] is the image of start after the first k + 1 digits; flags[k]
    describes the switch-region position of the point the k-th digit was
    read from.  periodicity, when set, is (preperiod_len, period_len) for
    the digit sequence; flagged_incomplete marks prefixes cut short by an
    exhausted budget.
    """

    lam: float
    start: float
    digits: tuple[int, ...]
    orbit: tuple[float, ...]
    flags: tuple[str, ...]
    periodicity: tuple[int, int] | None = None
    flagged_incomplete: bool = False

    @property
    def orbit_point(self) -> float:
        return self.orbit[-1] if self.orbit else self.start

    @property
    def ambiguous(self) -> bool:
        return AMBIGUOUS in self.flags

    def digit_word(self) -> str:
        return "".join(str(d) for d in self.digits)

    def partial_sum(self, upto: int | None = None) -> float:
        k = len(self.digits) if upto is None else upto
        return math.fsum(
            d * self.lam ** -(j + 1) for j, d in enumerate(self.digits[:k])
        )

    def residual(self) -> float:
        return abs(self.start - self.partial_sum())

    def to_report(self) -> dict:
        return {
            "lambda": self.lam,
            "digits": self.digit_word(),
            "branch_flags": list(self.flags),
            "residual": self.residual(),
        }


def _expand(x: float, ctx: BetaContext, depth: int, greedy: bool) -> ExpansionPrefix:
    ctx.require_in_interval(x)
    if depth < 1:
        raise ValueError("depth must be >= 1")
    tol = ctx.membership_tol
    digits, orbit, flags = [], [], []
    y = x
    for _ in range(depth):
        flags.append(ctx.region_of(y))
        if greedy:
            digit = 1 if y >= ctx.switch_lo - tol else 0
        else:
            digit = 1 if y > ctx.switch_hi + tol else 0
        y = ctx.lam * y - digit
        digits.append(digit)
        orbit.append(y)
    return ExpansionPrefix(
        lam=ctx.lam,
        start=x,
        digits=tuple(digits),
        orbit=tuple(orbit),
        flags=tuple(flags),
    )


def greedy_expansion(x: float, ctx: BetaContext, depth: int) -> ExpansionPrefix:
    """Largest-digit expansion: digit 1 whenever the point allows it."""
    return _expand(x, ctx, depth, greedy=True)


def lazy_expansion(x: float, ctx: BetaContext, depth: int) -> ExpansionPrefix:
    """Smallest-digit expansion: digit 0 whenever the point allows it."""
    return _expand(x, ctx, depth, greedy=False)


def max_zero_run_bound(delta: float, ctx: BetaContext) -> int:
    """Smallest N whose N-fold zero action escapes the interval from delta.

    Any expansion whose orbit stays strictly above delta has all zero runs
    shorter than the returned N: after N zero digits the point would exceed
    the right interval endpoint.
    """
    if not (0.0 < delta <= ctx.interval_right):
        raise ValueError("delta must lie in (0, interval_right]")
    right = ctx.interval_right
    value = delta
    for n in range(1, 4096):
        value *= ctx.lam
        # Ulp-scale slack so an exact endpoint ratio (delta = right / lam)
        # still counts as reaching the boundary after one step.
        if value >= right * (1.0 - 1e-14):
            return n
    raise ArithmeticError("zero-run bound did not converge within 4096 steps")


def enumerate_expansions_of_one(
    ctx: BetaContext, depth: int, max_leaves: int = 4096
) -> list[ExpansionPrefix]:
    """Depth-first tree of digit choices for expansions of 1.

    Both digits are explored inside the switch region and within tolerance
    of its endpoints (the closed region genuinely branches at endpoints);
    near-endpoint steps mark the prefix ambiguous.  Children whose orbit
    leaves the interval beyond a small slack are dropped, which is how
    spurious ambiguous branches die out.  Leaves come back in digit
    lexicographic order.
    """
    if not (1 <= depth <= 64):
        raise ValueError("depth must be in 1..64")
    slack = max(8.0 * ctx.membership_tol, 1e-10)
    right = ctx.interval_right
    leaves: list[ExpansionPrefix] = []

    def walk(y: float, digits: list[int], orbit: list[float], flags: list[str]):
        if len(digits) == depth:
            if len(leaves) >= max_leaves:
                raise LeafBudgetError(
                    f"leaf budget {max_leaves} exhausted", leaves
                )
            leaves.append(
                ExpansionPrefix(
                    lam=ctx.lam,
                    start=1.0,
                    digits=tuple(digits),
                    orbit=tuple(orbit),
                    flags=tuple(flags),
                )
            )
            return
        region = ctx.region_of(y)
        options = {
            FORCED0: (0,),
            FORCED1: (1,),
            SWITCH: (0, 1),
            AMBIGUOUS: (0, 1),
        }[region]
        for digit in options:
            child = ctx.lam * y - digit
            if child < -slack or child > right + slack:
                continue
            digits.append(digit)
            orbit.append(child)
            flags.append(region)
            walk(child, digits, orbit, flags)
            digits.pop()
            orbit.pop()
            flags.pop()

    walk(1.0, [], [], [])
    return leaves


UNIQUE_UP_TO_DEPTH = "unique_up_to_depth"
BRANCH_AT = "branch_at"
AMBIGUOUS_AT = "ambiguous_at"


@dataclass(frozen=True)
class UnivoqueReport:
    kind: str
    step: int | None


def univoque_check(ctx: BetaContext, depth: int) -> UnivoqueReport:
    """Follow the forced orbit of 1 and report the first digit choice.

    Strict switch-region entry reports a branch; an orbit point within
    tolerance of a region endpoint reports ambiguity (floating point cannot
    decide the side); otherwise the unique digit is applied, and surviving
    all steps reports uniqueness up to the depth.
    """
    if depth < 1:
        raise ValueError("depth must be >= 1")
    y = 1.0
    for step in range(1, depth + 1):
        region = ctx.region_of(y)
        if region == SWITCH:
            return UnivoqueReport(BRANCH_AT, step)
        if region == AMBIGUOUS:
            return UnivoqueReport(AMBIGUOUS_AT, step)
        y = ctx.lam * y - (1 if region == FORCED1 else 0)
    return UnivoqueReport(UNIQUE_UP_TO_DEPTH, None)


def thue_morse(n: int) -> int:
    """n-th bit of the parity-doubling sequence: t(2i) = t(i), t(2i+1) = 1 - t(i)."""
    if n < 0:
        raise ValueError("index must be a natural")
    if n == 0:
        return 0
    bit = thue_morse(n >> 1)
    return bit if n % 2 == 0 else 1 - bit


_KL_SERIES_TERMS = 256


def komornik_loreti_constant(tol: float = 1e-12) -> float:
    """Root of sum_j t(j) * lambda**-j = 1 over the parity-doubling bits.

    This is the smallest base in which 1 has a unique binary expansion.
    Bisection on the truncated, strictly decreasing series; with 256 terms
    the geometric tail is far below any representable tolerance.
    """
    if tol <= 0:
        raise ValueError("tolerance must be positive")
    bits = [thue_morse(j) for j in range(_KL_SERIES_TERMS + 1)]

    def series(lam: float) -> float:
        return math.fsum(
            bits[j] * lam ** -j for j in range(_KL_SERIES_TERMS, 0, -1)
        )

    lo, hi = 1.5, 2.0
    if not (series(lo) > 1.0 > series(hi)):
        raise ArithmeticError("failed to bracket the constant in [1.5, 2]")
    while hi - lo > tol / 2:
        mid = 0.5 * (lo + hi)
        if series(mid) > 1.0:
            lo = mid
        else:
            hi = mid
        if hi - lo < 1e-16:
            break
    return 0.5 * (lo + hi)


def sgap_from_expansion(digits, length: int | None = None) -> SGapSpec:
    """Gap set of a digit sequence: n is a member iff digit n + 1 is one.

    digits is either a finite 0/1 word (optionally truncated to length) or
    a (preperiod, period) pair of 0/1 words for an eventually periodic
    sequence.  Because members are digit positions shifted down by one, the
    characteristic bits of the set are the digit word itself.
    """
    if isinstance(digits, tuple):
        pre, pat = digits
        return sgap.periodic_gaps([int(b) for b in pre], [int(b) for b in pat])
    word = str(digits)
    if length is not None:
        word = word[:length]
    if any(ch not in "01" for ch in word):
        raise ValueError("digit word must be binary")
    members = [j - 1 for j, ch in enumerate(word, start=1) if ch == "1"]
    if not members:
        raise sgap.EmptySetError("digit word with no ones encodes the empty set")
    return sgap.explicit_gaps(members)


def expansion_from_sgap(spec: SGapSpec, length: int) -> str:
    """Indicator digit word of a gap set: digit j is one iff j - 1 is a member."""
    if length < 1:
        raise ValueError("length must be >= 1")
    return "".join("1" if spec.contains(j - 1) else "0" for j in range(1, length + 1))


def spec_from_prefix(prefix: ExpansionPrefix) -> SGapSpec:
    """Gap set of a generated prefix, eventually periodic when detected."""
    word = prefix.digit_word()
    if prefix.periodicity is not None:
        pre_len, period = prefix.periodicity
        return sgap_from_expansion((word[:pre_len], word[pre_len : pre_len + period]))
    return sgap_from_expansion(word)


def _detect_orbit_recurrence(
    orbit: tuple[float, ...], tol: float
) -> tuple[int, int] | None:
    """First (i, j) with orbit[i] ~ orbit[j]; digits repeat from i + 1 on."""
    for j in range(1, len(orbit)):
        for i in range(j):
            if abs(orbit[i] - orbit[j]) <= tol:
                return i, j
    return None


def spec_construction_lazy(
    ctx: BetaContext, depth: int, recurrence_tol: float = 1e-9
) -> ExpansionPrefix:
    """Expansion of 1 with two leading ones and bounded zero runs.

    Valid for bases at or above the golden ratio: after the two forced-or-
    chosen leading ones the lazy orbit is trapped in an interval bounded
    away from zero, which bounds every later zero run.  When the orbit
    settles into a numerically periodic cycle the digit word is annotated
    with its (preperiod, period) split so it can be handed to
    sgap_from_expansion as an eventually periodic description.
    """
    if depth < 3:
        raise ValueError("depth must be >= 3")
    if ctx.lam < GOLDEN - 1e-12:
        raise ValueError("construction needs a base at or above the golden ratio")
    digits, orbit, flags = [], [], []
    y = 1.0
    for _ in range(2):
        flags.append(ctx.region_of(y))
        y = ctx.lam * y - 1
        digits.append(1)
        orbit.append(y)
    tail = lazy_expansion(max(y, 0.0), ctx, depth - 2)
    digits.extend(tail.digits)
    orbit.extend(tail.orbit)
    flags.extend(tail.flags)
    periodicity = None
    rec = _detect_orbit_recurrence(tuple(orbit), recurrence_tol)
    if rec is not None:
        i, j = rec
        periodicity = (i + 1, j - i)
    return ExpansionPrefix(
        lam=ctx.lam,
        start=1.0,
        digits=tuple(digits),
        orbit=tuple(orbit),
        flags=tuple(flags),
        periodicity=periodicity,
    )


def continuum_navigator(
    ctx: BetaContext, choices: str, depth: int
) -> ExpansionPrefix:
    """Choice-driven expansion of 1 for bases below the golden ratio.

    The points 1/(lam^2 - 1) and lam/(lam^2 - 1) form a period-two orbit
    whose interval sits strictly inside the switch region for these bases.
    The prefix applies zeros until the orbit of 1 clears that interval,
    then two ones; afterwards the orbit is driven back into the trap
    (zeros from below, ones from above), and each arrival inside the trap
    consumes one bit of choices as the next digit.  Distinct choice strings
    therefore yield distinct digit words, all with two consecutive ones and
    zero runs bounded via the trapped orbit's distance from zero.
    """
    if depth < 3:
        raise ValueError("depth must be >= 3")
    if not (1.0 < ctx.lam < GOLDEN - 1e-12):
        raise ValueError("navigator needs a base strictly below the golden ratio")
    if any(ch not in "01" for ch in choices):
        raise ValueError("choices must be a 0/1 string")
    trap_lo = 1.0 / (ctx.lam**2 - 1.0)
    trap_hi = ctx.lam / (ctx.lam**2 - 1.0)
    if not (ctx.switch_lo < trap_lo and trap_hi < ctx.switch_hi):
        raise ArithmeticError("trap interval escaped the switch region")

    digits, orbit, flags = [], [], []
    incomplete = False
    choice_iter = iter(choices)
    y = 1.0

    def emit(digit: int):
        nonlocal y
        flags.append(ctx.region_of(y))
        y = ctx.lam * y - digit
        digits.append(digit)
        orbit.append(y)

    # Zeros until the orbit clears the trap from above, then two ones.
    while y <= trap_hi and len(digits) < depth:
        emit(0)
    for _ in range(2):
        if len(digits) < depth:
            emit(1)

    tol = ctx.membership_tol
    while len(digits) < depth:
        if trap_lo - tol <= y <= trap_hi + tol:
            bit = next(choice_iter, None)
            if bit is None:
                incomplete = True
                break
            emit(int(bit))
        elif y < trap_lo:
            emit(0)
        else:
            emit(1)

    return ExpansionPrefix(
        lam=ctx.lam,
        start=1.0,
        digits=tuple(digits),
        orbit=tuple(orbit),
        flags=tuple(flags),
        flagged_incomplete=incomplete,
    )


PERIODIC_10 = "Periodic10"
FAMILY_11_ZEROS = "Family11ZerosTail"
FAMILY_01_ONES = "Family01OnesTail"
NOT_A_PREFIX = "NotAPrefix"


@dataclass(frozen=True)
class EhjMatch:
    """Family decision for prefixes of the golden-base expansions of 1.

    family is the most specific match: a word that never deviates from the
    alternation 1010... is Periodic10 even though it is also a prefix of
    longer members of the other two families; compatible lists every
    (family, n) the word is a prefix of, for n up to half the word length
    plus one.
    """

    family: str
    n: int | None
    compatible: tuple[tuple[str, int | None], ...]


def _alternation_prefix(word: str) -> bool:
    return all(ch == ("1" if i % 2 == 0 else "0") for i, ch in enumerate(word))


def _family_word(family: str, n: int, length: int) -> str:
    if family == FAMILY_11_ZEROS:
        full = "10" * n + "11" + "0" * length
    else:
        full = "10" * n + "0" + "1" * length
    return full[:length]


def ehj_classify(digits: str) -> EhjMatch:
    """Decide which expansion family of the golden base a word begins.

    The three families are the alternation (10)* forever, (10)^n 11 then
    zeros forever, and (10)^n 0 then ones forever.  A word pins one of the
    latter two exactly where it first deviates from the alternation; a word
    that never deviates is the alternation prefix.
    """
    word = str(digits)
    if not word or any(ch not in "01" for ch in word):
        raise ValueError("digits must be a nonempty 0/1 word")

    compatible = []
    if _alternation_prefix(word):
        compatible.append((PERIODIC_10, None))
    for n in range(0, len(word) // 2 + 2):
        if word == _family_word(FAMILY_11_ZEROS, n, len(word)):
            compatible.append((FAMILY_11_ZEROS, n))
        if word == _family_word(FAMILY_01_ONES, n, len(word)):
            compatible.append((FAMILY_01_ONES, n))

    deviation = next(
        (
            i
            for i, ch in enumerate(word)
            if ch != ("1" if i % 2 == 0 else "0")
        ),
        None,
    )
    if deviation is None:
        return EhjMatch(PERIODIC_10, None, tuple(compatible))
    if deviation % 2 == 1 and word[deviation] == "1":
        n = (deviation - 1) // 2
        if all(ch == "0" for ch in word[deviation + 1 :]):
            return EhjMatch(FAMILY_11_ZEROS, n, tuple(compatible))
    if deviation % 2 == 0 and word[deviation] == "0":
        n = deviation // 2
        if all(ch == "1" for ch in word[deviation + 1 :]):
            return EhjMatch(FAMILY_01_ONES, n, tuple(compatible))
    return EhjMatch(NOT_A_PREFIX, None, tuple(compatible))


def greedy_switch_frequency(ctx: BetaContext, iterations: int) -> float:
    """Fraction of the first greedy orbit points of 1 inside the switch region.

    A float-orbit diagnostic: positive frequency witnesses recurring digit
    choice at this base, zero frequency over the window is consistent with
    (but does not prove) unique expansion.
    """
    if iterations < 1:
        raise ValueError("iterations must be >= 1")
    tol = ctx.membership_tol
    y = 1.0
    hits = 0
    for _ in range(iterations):
        if ctx.switch_lo - tol <= y <= ctx.switch_hi + tol:
            hits += 1
        digit = 1 if y >= ctx.switch_lo - tol else 0
        y = ctx.lam * y - digit
    return hits / iterations
