"""Parameter-level rules: classification, feasibility filters and sweeps.

Everything here is arithmetic on integers (with ``Fraction`` where a
quantity may fail to be integral); no matrices are built.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterator

from .core import BshmCertificate, SrgParams

# Strongly regular graph parameters known not to be realisable.
NONEXISTENT_SRGS = frozenset({(96, 45, 24, 18), (96, 57, 36, 30)})


# -- results ---------------------------------------------------------------

@dataclass(frozen=True)
class ParamClass:
    """A feasible parameter set, normalised so that ell <= n/2 (a >= b)."""

    kind: str  # equiangular | type1 | type2 | imprimitive-b0 | imprimitive-bm1
    n: int
    ell: int
    a: int
    b: int
    switched: bool
    graph_options: tuple[SrgParams, ...]
    checks: dict = field(default_factory=dict, compare=False)
    r: int | None = None
    s: int | None = None

    @property
    def params(self) -> tuple[int, int, int, int]:
        return (self.n, self.ell, self.a, self.b)

    @property
    def class_id(self) -> str:
        """One of the five classes: equiangular-primitive, type{1,2}-{primitive,imprimitive}."""
        if self.kind == "imprimitive-b0":
            return "type2-imprimitive"
        if self.kind == "imprimitive-bm1":
            return "type1-imprimitive"
        return f"{self.kind}-primitive"

    def __bool__(self) -> bool:
        return True


@dataclass(frozen=True)
class Infeasible:
    rule: str
    reason: str

    def __bool__(self) -> bool:
        return False


def _int(x: Fraction) -> bool:
    return x.denominator == 1


# -- strongly regular graphs -----------------------------------------------

def srg_eigen(p: SrgParams):
    """Restricted eigenvalues r > s and multiplicities f, g (floats)."""
    v, k, lam, mu = p.as_tuple()
    disc = (lam - mu) ** 2 + 4 * (k - mu)
    sd = math.sqrt(disc)
    r, s = ((lam - mu) + sd) / 2, ((lam - mu) - sd) / 2
    num = 2 * k + (v - 1) * (lam - mu)
    f = ((v - 1) - num / sd) / 2
    g = ((v - 1) + num / sd) / 2
    return r, s, f, g


def srg_feasible(p: SrgParams, strict: bool = False) -> bool:
    """Standard necessary conditions for (v, k, lambda, mu).

    Always: the counting identity, nonnegative complement parameters and
    integral eigenvalue multiplicities (or the conference-graph case).
    With ``strict`` the Krein conditions and the absolute bound are added
    for primitive parameters.
    """
    v, k, lam, mu = p.as_tuple()
    if min(v, k, lam, mu) < 0 or k >= v:
        return False
    if k * (k - lam - 1) != (v - k - 1) * mu:
        return False
    c = p.complement()
    if c.lam < 0 or c.mu < 0:
        return False
    if mu == 0:
        return k == 0 or (v % (k + 1) == 0 and lam == k - 1)
    if c.mu == 0:
        return c.k == 0 or (v % (c.k + 1) == 0 and c.lam == c.k - 1)
    disc = (lam - mu) ** 2 + 4 * (k - mu)
    sd = math.isqrt(disc)
    num = 2 * k + (v - 1) * (lam - mu)
    if sd * sd != disc:
        if num != 0:
            return False
    else:
        if num % sd or ((v - 1) - num // sd) % 2 or (v - 1) - num // sd < 0 or (v - 1) + num // sd < 0:
            return False
    if not strict:
        return True
    r, s, f, g = srg_eigen(p)
    eps = 1e-9
    if (r + 1) * (k + r + 2 * r * s) > (k + r) * (s + 1) ** 2 + eps:
        return False
    if (s + 1) * (k + s + 2 * r * s) > (k + s) * (r + 1) ** 2 + eps:
        return False
    if v > f * (f + 3) / 2 + eps or v > g * (g + 3) / 2 + eps:
        return False
    return True


# -- closed forms ------------------------------------------------------------

def k_a_closed_form(n: int, ell: int, a: int, b: int) -> Fraction:
    """Number of columns meeting a fixed column with inner product a."""
    return Fraction(ell * (n - ell) - b * b * (n - 1), a * a - b * b)


def type_graph(kind: str, n: int, ell: int, a: int, b: int) -> tuple[Fraction, ...]:
    """(k, lambda, mu) of the column graph for a Type 1 or Type 2 split."""
    d = b - a
    if kind == "type1":
        k = Fraction(ell - b + n * b, d)
        mu = Fraction(n * b * (b + 1), d * d)
    elif kind == "type2":
        k = Fraction(ell - b + n * (b - 1), d)
        mu = Fraction(n * b * (b - 1), d * d)
    else:
        raise ValueError(kind)
    lam = mu + Fraction(2 * (ell - b) - n, d)
    return k, lam, mu


def equiangular_graphs(n: int, ell: int, a: int) -> tuple[tuple[Fraction, ...], tuple[Fraction, ...]]:
    """Column graphs after making a row outside / inside H1 all ones."""
    base = (Fraction((n - 1) * a - ell, 2 * a),
            Fraction(n - 4, 4) + Fraction(n - 4 * ell, 4 * a),
            Fraction(n * (a - 1), 4 * a))
    c = Fraction(n, 2 * a)
    return base, tuple(x + c for x in base)


# -- classification -----------------------------------------------------------

def classify_params(n: int, ell: int, a: int, b: int) -> ParamClass | Infeasible:
    if a < b:
        a, b = b, a
    if n < 4 or n % 4:
        return Infeasible("order", f"n = {n} is not a multiple of 4")
    if not 2 < ell < n - 2:
        return Infeasible("range", f"need 2 < ell < n - 2, got ell = {ell}")
    if (ell - a) % 4 or (ell - b) % 4:
        return Infeasible("mod4", f"ell = a = b (mod 4) fails for (ell, a, b) = ({ell}, {a}, {b})")
    if a == b:
        return Infeasible("degenerate", "a single inner product value cannot occur for 2 < ell < n - 2")
    if max(abs(a), abs(b)) > min(ell, n - ell):
        return Infeasible("bound", f"|a|, |b| must not exceed min(ell, n - ell) = {min(ell, n - ell)}")
    if b == -a:
        return _classify_equiangular(n, ell, a)
    return _classify_typed(n, ell, a, b)


def _classify_equiangular(n: int, ell: int, a: int) -> ParamClass | Infeasible:
    switched = False
    if 2 * ell > n:
        ell, switched = n - ell, True
    checks = {
        "relation": n * (ell - a * a) == ell * ell - a * a,
        "a_even": a % 2 == 0,
        "ell_over_a_odd": ell % a == 0 and (ell // a) % 2 == 1,
        "n_over_4a": n % (4 * a) == 0,
        "n_gt_2ell": n > 2 * ell,
    }
    failed = [k for k, ok in checks.items() if not ok]
    if failed:
        return Infeasible("equiangular", f"failed checks: {', '.join(failed)}")
    graphs = []
    for g in equiangular_graphs(n, ell, a):
        if not all(_int(x) for x in g):
            return Infeasible("integrality", f"non-integral graph parameters {g}")
        graphs.append(SrgParams(n, *(int(x) for x in g)))
    return ParamClass("equiangular", n, ell, a, -a, switched, tuple(graphs), checks)


def _classify_typed(n: int, ell: int, a: int, b: int) -> ParamClass | Infeasible:
    lhs = (ell - a) * (ell - b)
    if n * (ell + a * b) == lhs:
        kind = "type1"
    elif n * (ell + a * b - a - b) == lhs:
        kind = "type2"
    else:
        return Infeasible("relation", "neither the Type 1 nor the Type 2 relation holds")
    switched = False
    if (kind == "type1" and 2 * ell >= n) or (kind == "type2" and 2 * ell > n):
        ell, a, b = n - ell, -b, -a
        kind = "type2" if kind == "type1" else "type1"
        switched = True
    if not a > 0 >= b:
        return Infeasible("sign", f"need a > 0 >= b after normalisation, got ({a}, {b})")

    if kind == "type1" and (a, b) == (ell, -1):
        if n % (ell + 1) or n // (ell + 1) < 2:
            return Infeasible("imprimitive", "need n = 4rs with ell = 4s - 1 and r >= 2")
        s, r = (ell + 1) // 4, n // (ell + 1)
        g = SrgParams(n, r - 1, r - 2, 0)
        return ParamClass("imprimitive-bm1", n, ell, a, b, switched, (g,), {}, r, s)
    if kind == "type2" and (a, b) == (ell, 0):
        if n % (2 * ell):
            return Infeasible("imprimitive", "need n = 8rs with ell = 4s")
        s, r = ell // 4, n // (2 * ell)
        g = SrgParams(n, 2 * r - 1, 2 * r - 2, 0)
        return ParamClass("imprimitive-b0", n, ell, a, b, switched, (g,), {}, r, s)

    d = b - a
    bb = b + 1 if kind == "type1" else b - 1
    checks = {
        "(ell-b)/(b-a)": _int(Fraction(ell - b, d)),
        "n/(b-a)": _int(Fraction(n, d)),
        "n(b+-1)/(2(b-a))": _int(Fraction(n * bb, 2 * d)),
        "nb(b+-1)/(b-a)^2": _int(Fraction(n * b * bb, d * d)),
        "k_a integral": _int(k_a_closed_form(n, ell, a, b)),
        "size": n > 2 * ell if kind == "type1" else n >= 2 * ell,
    }
    failed = [k for k, ok in checks.items() if not ok]
    if failed:
        return Infeasible("integrality", f"failed checks: {', '.join(failed)}")
    k, lam, mu = (int(x) for x in type_graph(kind, n, ell, a, b))
    g = SrgParams(n, k, lam, mu)
    comp = g.complement()
    if min(k, lam, mu, comp.lam, comp.mu) < 0:
        return Infeasible("graph", f"negative graph parameters {g.as_tuple()}")
    if k != k_a_closed_form(n, ell, a, b):
        return Infeasible("graph", "valency disagrees with the k_a formula")
    return ParamClass(kind, n, ell, a, b, switched, (g,), checks)


def certificate_class(cert: BshmCertificate) -> ParamClass | Infeasible:
    return classify_params(cert.n, cert.ell, cert.a, cert.b)


# -- equiangular integrality --------------------------------------------------

@dataclass(frozen=True)
class QsbibdParams:
    v: Fraction
    k: Fraction
    lam: Fraction
    r: Fraction
    b: Fraction
    x: Fraction
    y: Fraction

    def is_integral(self) -> bool:
        return all(_int(getattr(self, f)) for f in ("v", "k", "lam", "r", "b", "x", "y"))


@dataclass(frozen=True)
class EquiangularReport:
    n: int
    ell: int
    a: int | None
    design: QsbibdParams | None
    checks: dict

    @property
    def passed(self) -> bool:
        return all(self.checks.values())


def _exact_sqrt(q: Fraction) -> int | None:
    if q < 0 or not _int(q):
        return None
    r = math.isqrt(int(q))
    return r if r * r == q else None


def equiangular_integrality(n: int, ell: int) -> EquiangularReport:
    """Necessary conditions for an ell x n flat equiangular tight frame."""
    checks: dict[str, bool] = {"ell != n/2": 2 * ell != n, "0 < ell < n": 0 < ell < n}
    a = _exact_sqrt(Fraction(ell * (n - ell), n - 1)) if 0 < ell < n else None
    checks["a integral"] = a is not None
    checks["a even"] = a is not None and a % 2 == 0
    r1 = _exact_sqrt(Fraction(ell * (n - 1), n - ell)) if 0 < ell < n else None
    r2 = _exact_sqrt(Fraction((n - ell) * (n - 1), ell)) if 0 < ell < n else None
    checks["sqrt(ell(n-1)/(n-ell)) odd"] = r1 is not None and r1 % 2 == 1
    checks["sqrt((n-ell)(n-1)/ell) odd"] = r2 is not None and r2 % 2 == 1
    third = None
    if 0 < ell < n and r1 is not None:
        # (n - 2 ell) sqrt((n-1)/(ell(n-ell))) = (n - 2 ell) r1 / ell
        third = Fraction((n - 2 * ell) * r1, ell)
    checks["(n-2ell)sqrt((n-1)/(ell(n-ell))) integral"] = third is not None and _int(third)
    checks["gerzon bound"] = n <= min(ell * (ell + 1) // 2, (n - ell) * (n - ell + 1) // 2)
    design = None
    if a is not None and ell > 1:
        design = QsbibdParams(
            v=Fraction(ell),
            k=Fraction(ell - a, 2),
            lam=Fraction((n - 1) * (ell - a) * (ell - a - 2), 4 * ell * (ell - 1)),
            r=Fraction((n - 1) * (ell - a), 2 * ell),
            b=Fraction(n - 1),
            x=Fraction(ell - 3 * a, 4),
            y=Fraction(ell - a, 4),
        )
        checks["design integral"] = design.is_integral()
    else:
        checks["design integral"] = False
    return EquiangularReport(n, ell, a, design, checks)


def two_distance_bound(ell: int) -> int:
    """Largest two-distance set on the unit sphere in R^ell (bound)."""
    small = {2: 5, 3: 6, 4: 10, 5: 16, 6: 27}
    if ell in small:
        return small[ell]
    if ell < 2:
        raise ValueError("ell must be at least 2")
    k = (math.isqrt(ell + 3) - 1) // 2
    if (2 * k + 1) ** 2 - 3 == ell:
        return ell * (ell + 3) // 2
    return ell * (ell + 1) // 2


def sum_of_odd_squares_feasible(total: int, count: int) -> bool:
    """Can ``total`` be written as a sum of exactly ``count`` odd squares?"""
    if count < 0 or total < count:
        return False
    if count == 0:
        return total == 0
    return _odd_square_sums(count, total)


@lru_cache(maxsize=None)
def _odd_square_sums(count: int, total: int) -> bool:
    # every odd square is 1 + 8 * (triangular number); reduce to sums of
    # ``count`` triangular numbers equal to (total - count) / 8
    if (total - count) % 8:
        return False
    target = (total - count) // 8
    tri = [j * (j + 1) // 2 for j in range(math.isqrt(2 * target) + 2) if j * (j + 1) // 2 <= target]
    reach = {0}
    for _ in range(count):
        nxt = {x + t for x in reach for t in tri if x + t <= target}
        if target in nxt:
            return True  # T_0 = 0 pads the remaining terms
        if nxt == reach:
            break
        reach = nxt
    return target in reach


# -- Hadamard existence policy ---------------------------------------------------

@dataclass(frozen=True)
class HadamardPolicy:
    assume_conjecture: bool = True
    range_limit: int = 668  # all multiples of 4 below this are known orders
    skew_limit: int = 47  # skew-type order 4s known for s below this

    def hadamard_exists(self, n: int) -> bool:
        if n in (1, 2):
            return True
        return n % 4 == 0 and (n < self.range_limit or self.assume_conjecture)

    def skew_exists(self, n: int) -> bool:
        if n in (1, 2):
            return True
        return n % 4 == 0 and (n // 4 < self.skew_limit or self.assume_conjecture)


DEFAULT_POLICY = HadamardPolicy()


def imprimitive_existence(r: int, s: int, family: str, policy: HadamardPolicy = DEFAULT_POLICY) -> tuple[str, str]:
    """Status of BSHM(8rs, 4s, 4s, 0) ("b0") or BSHM(4rs, 4s-1, 4s-1, -1) ("bm1")."""
    h = policy.hadamard_exists
    if family == "b0":
        if h(2 * r) and h(4 * s):
            return "yes", "kronecker-2r-4s"
        if h(4 * r) and h(2 * s):
            return "yes", "kronecker-4r-2s"
        return "open", ""
    if family == "bm1":
        if r < 2:
            raise ValueError("need r >= 2")
        if h(r) and h(4 * s):
            return "yes", "kronecker-r-4s"
        if h(2 * r) and h(2 * s):
            return "yes", "kronecker-2r-2s"
        if r == 4 * s - 1 and policy.skew_exists(4 * s):
            return "yes", "skew-hadamard"
        if r % 2 == 1:
            if r < 4 * s - 1:
                return "no", "odd-r-below-4s-1"
            if not sum_of_odd_squares_feasible(r * r, 4 * r * s - 4 * s + 1):
                return "no", "odd-square-sum"
        return "open", ""
    raise ValueError(f"unknown family {family!r}")


# -- existence by known families ---------------------------------------------------

def _pds_family_params(n_max: int) -> Iterator[tuple[str, tuple[int, int, int, int]]]:
    """(n, ell, a, b) of the known regular PDS families in Z_2^r, n <= n_max.

    Yields raw values (a possibly below b); integrality is filtered here.
    """
    def emit(name, n, ell, a, b):
        vals = (n, ell, a, b)
        if n <= n_max and all(_int(Fraction(x)) for x in vals):
            yield name, tuple(int(x) for x in vals)

    top = n_max.bit_length()
    for m in range(1, top):
        for s in range(1, 2 ** m + 2):
            yield from emit("pds-spread", 2 ** (2 * m), s * (2 ** m - 1), 2 ** m - s, -s)
    for m in range(2, top):
        for s in range(1, m):
            yield from emit("pds-family-b", 2 ** (3 * m), (2 ** (m + s) - 2 ** m + 2 ** s) * (2 ** m - 1),
                            2 ** m - 2 ** s, 2 ** m - 2 ** s - 2 ** (m + s))
    for s in range(1, top):
        for m in range(1, top):
            if 2 * s * m >= top:
                continue
            p, q = 2 ** ((s - 1) * m), 2 ** (m - 1)
            yield from emit("pds-family-c", 2 ** (2 * s * m), p * (q - 1) * (2 ** (s * m) - 1), p * (q + 1), -p * (q - 1))
            yield from emit("pds-family-c", 2 ** (2 * s * m), p * (q - 1) * (2 ** (s * m) + 1), p * (q - 1), -p * (q + 1))
    for m in range(1, top):
        if 12 * m >= top:
            break
        base = (2 ** (2 * m) - 1) * (2 ** (2 * m) + 2 ** m + 1)
        for t in range(1, 2 ** m * (2 ** m - 1) + 1):
            yield from emit("pds-family-d", 2 ** (12 * m), t * base * (2 ** (6 * m) + 1), t * base, t * base - 2 ** (6 * m))
    for s in range(1, top):
        for m in range(1, top):
            e = 2 ** m + 1
            if (4 * s + 2) * m < top:
                x = Fraction(2 ** ((2 * s - 1) * m) + 1, e)
                for t in range(1, e + 1):
                    yield from emit("pds-family-e", 2 ** ((4 * s + 2) * m), t * (2 ** ((2 * s + 1) * m) - 1) * x,
                                    2 ** ((2 * s + 1) * m) - t * x, -t * x)
            if 4 * s * m < top:
                for t in range(1, e + 1):
                    yield from emit("pds-family-e", 2 ** (4 * s * m), Fraction(t * (2 ** (4 * s * m) - 1), e),
                                    Fraction(t * (2 ** (2 * s * m) - 1), e),
                                    Fraction(2 ** (2 * s * m) * (t - 1 - 2 ** m) - t, e))
    for s in range(1, top):
        for m in range(1, top):
            if (4 * s + 2) * m >= top:
                continue
            e = 2 ** m + 1
            yield from emit("pds-family-f", 2 ** ((4 * s + 2) * m),
                            Fraction(2 ** m * (2 ** (2 * s * m) - 1), e) * (2 ** ((2 * s + 1) * m) + 1),
                            Fraction(2 ** m * (2 ** (2 * s * m) - 1), e),
                            -Fraction(2 ** m * (2 ** ((2 * s + 1) * m) + 1), e))
    for t in range(3, 2 ** top, 2):
        s = next((j for j in range(1, top) if pow(2, j, t) == t - 1), None)
        if s is None:
            continue
        for m in range(2, top):
            if 4 * s * m >= top:
                break
            q = 2 ** (2 * s * m)
            yield from emit("pds-family-g", q * q, Fraction((q - 1) ** 2, t), Fraction((t - 1) * q + 1, t), -Fraction(q - 1, t))
            yield from emit("pds-family-g", q * q, Fraction(q * q - 1, t), Fraction(q - 1, t), -Fraction((t - 1) * q + 1, t))
    for m in range(3, top):
        if 2 * m >= top:
            break
        for s in range(1, m + 1):
            if m % s:
                continue
            u = 2 ** (m - s)
            yield from emit("pds-family-h", 2 ** (2 * m), (u - 1) * (2 ** m - 1), -u + 1 + 2 ** m, 1 - u)
            yield from emit("pds-family-h", 2 ** (2 * m), (u - 1) * (2 ** m + 1), u - 1, u - 1 - 2 ** m)


FAMILY_PRIORITY = ("pds-spread", "all-ones-row-shift", "pds-family-b", "pds-family-c", "pds-family-d",
                   "pds-family-e", "pds-family-f", "pds-family-g", "pds-family-h")


def _normal_key(n: int, ell: int, a: int, b: int):
    c = classify_params(n, ell, a, b)
    return (c.kind, c.params) if c else None


@lru_cache(maxsize=8)
def known_constructions(n_max: int, policy: HadamardPolicy = DEFAULT_POLICY) -> dict:
    """Map (kind, normalised params) -> reason for parameter sets known to exist."""
    found: dict = {}

    def add(reason, n, ell, a, b):
        key = _normal_key(n, ell, a, b)
        if key is None:
            return
        prev = found.get(key)
        if prev is None or FAMILY_PRIORITY.index(reason) < FAMILY_PRIORITY.index(prev):
            found[key] = reason

    for name, (n, ell, a, b) in _pds_family_params(n_max):
        if a < b:
            a, b = b, a
        if not (1 < ell < n - 2) or b in (-a, -a - 2):
            continue
        add(name, n, ell, a, b)
        add(name, n, ell + 1, a + 1, b + 1)
    u = 2
    while 4 * u * u <= n_max:
        if policy.hadamard_exists(u):
            n = 4 * u * u
            add("all-ones-row-shift", n, 2 * u * u - u - 1, u - 1, -u - 1)
            add("all-ones-row-shift", n, 2 * u * u - u + 1, u + 1, -u + 1)
        u += 1
    return found


# -- table rows and sweeps ------------------------------------------------------------

@dataclass(frozen=True)
class TableRow:
    n: int
    ell: int
    a: int
    b: int
    graph: SrgParams
    exists: str
    reason: str
    extra: tuple = ()  # family specific trailing columns

    @property
    def params(self) -> tuple[int, int, int, int]:
        return (self.n, self.ell, self.a, self.b)


def _srg_status(g: SrgParams) -> tuple[str, str] | None:
    if g.as_tuple() in NONEXISTENT_SRGS:
        return "no", "srg-nonexistent"
    return None


def enumerate_equiangular(ell_max: int, n_max: int | None = None,
                          policy: HadamardPolicy = DEFAULT_POLICY) -> list[TableRow]:
    """Sweep even ell <= ell_max; optionally keep only n <= n_max."""
    rows = []
    for ell in range(2, ell_max + 1, 2):
        a = ell % 4 or 4
        while a * a < ell:
            if ell % a == 0 and (ell // a) % 2 == 1:
                num, den = ell * ell - a * a, ell - a * a
                if num % den == 0:
                    n = num // den
                    if n % (4 * a) == 0 and n > 2 * ell and (n_max is None or n <= n_max):
                        rows.append(_equiangular_row(n, ell, a, policy))
            a += 4
    rows.sort(key=lambda r: (r.n, r.ell))
    return rows


def _equiangular_row(n: int, ell: int, a: int, policy: HadamardPolicy) -> TableRow:
    outside, inside = (SrgParams(n, *(int(x) for x in g)) for g in equiangular_graphs(n, ell, a))
    status = _srg_status(outside) or _srg_status(inside)
    if status is None:
        u = a
        if n == 4 * u * u and ell == 2 * u * u - u and policy.hadamard_exists(u):
            status = ("yes", "etf-from-hadamard")
        else:
            status = ("open", "")
    return TableRow(n, ell, a, -a, outside, status[0], status[1], inside.as_tuple()[1:])


def _typed_candidates(kind: str, n_max: int) -> Iterator[tuple[int, int, int, int]]:
    for ell in range(3, n_max // 2 + 1):
        for a in range(ell % 4 or 4, ell + 1, 4):
            for b in range(-((-ell) % 4), -ell - 1, -4):
                if b == -a:
                    continue
                den = ell + a * b if kind == "type1" else ell + a * b - a - b
                if den <= 0 or (ell - b) % (b - a):
                    continue
                num = (ell - a) * (ell - b)
                if num % den:
                    continue
                n = num // den
                if n > n_max:
                    continue
                bb = b + 1 if kind == "type1" else b - 1
                d = b - a
                if n % d or (n * bb) % (2 * d) or (n * b * bb) % (d * d):
                    continue
                if kind == "type1" and not n > 2 * ell:
                    continue
                if kind == "type2" and not n >= 2 * ell:
                    continue
                yield n, ell, a, b


def enumerate_typed(kind: str, n_max: int, strict: bool = False,
                    policy: HadamardPolicy = DEFAULT_POLICY) -> list[TableRow]:
    """Primitive Type 1 / Type 2 sweep with b != -a and n <= n_max."""
    if kind not in ("type1", "type2"):
        raise ValueError(kind)
    known = known_constructions(n_max, policy)
    rows = []
    for n, ell, a, b in _typed_candidates(kind, n_max):
        k, lam, mu = (int(x) for x in type_graph(kind, n, ell, a, b))
        g = SrgParams(n, k, lam, mu)
        comp = g.complement()
        if comp.lam < 0 or comp.mu < 0 or not srg_feasible(g, strict=strict):
            continue
        status = _srg_status(g)
        if status is None:
            reason = known.get((kind, (n, ell, a, b)))
            status = ("yes", reason) if reason else ("open", "")
        rows.append(TableRow(n, ell, a, b, g, status[0], status[1]))
    rows.sort(key=lambda r: (r.n, r.ell))
    return rows


def enumerate_type1(n_max: int, strict: bool = False, policy: HadamardPolicy = DEFAULT_POLICY) -> list[TableRow]:
    return enumerate_typed("type1", n_max, strict, policy)


def enumerate_type2(n_max: int, strict: bool = False, policy: HadamardPolicy = DEFAULT_POLICY) -> list[TableRow]:
    return enumerate_typed("type2", n_max, strict, policy)


def enumerate_imprimitive(family: str, r_max: int, s_max: int, r_min: int | None = None,
                          policy: HadamardPolicy = DEFAULT_POLICY) -> list[TableRow]:
    """All (r, s) in range with their existence status."""
    if r_min is None:
        r_min = 1 if family == "b0" else 2
    rows = []
    for r in range(r_min, r_max + 1):
        for s in range(1, s_max + 1):
            status, reason = imprimitive_existence(r, s, family, policy)
            if family == "b0":
                n, ell, a, b = 8 * r * s, 4 * s, 4 * s, 0
                g = SrgParams(n, 2 * r - 1, 2 * r - 2, 0)
            else:
                n, ell, a, b = 4 * r * s, 4 * s - 1, 4 * s - 1, -1
                g = SrgParams(n, r - 1, r - 2, 0)
            rows.append(TableRow(n, ell, a, b, g, status, reason, (r, s)))
    rows.sort(key=lambda t: (t.n, t.ell))
    return rows
