"""The exploding double chain H_n and its order-type certification.

H_n consists of the points p_i = (i, y_i) and q_i = (i, -y_i) for i in [n]
where (y_i) is an exploding sequence: y_1 = y_2 = 0 and y_{i+1} > 2*y_i +
y_{i-1}.  Since p_1 = q_1 and p_2 = q_2, |H_n| = 2n - 2.  The default
sequence is y_i = alpha^(i-3) with integer alpha >= 3.

Points are identified by labels ('p', i) / ('q', i); labels with i <= 2 are
canonicalised to the 'p' name since the points coincide.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import InputError
from .geometry import LEFT, ON, RIGHT, orientation, side_of_line

Label = tuple  # ('p', i) or ('q', i)


def canon(label: Label) -> Label:
    kind, i = label
    if i <= 2:
        return ("p", i)
    return label


def mirror(label: Label) -> Label:
    kind, i = label
    return canon(("q" if kind == "p" else "p", i))


@dataclass(frozen=True)
class ExplodingSequence:
    """y_1 = y_2 = 0, y_i = alpha^(i-3); alpha integer > 1 + sqrt(2)."""

    alpha: int = 3

    def __post_init__(self):
        if self.alpha < 3:
            raise InputError("alpha must be an integer >= 3")

    def y(self, i: int) -> int:
        if i < 1:
            raise InputError("sequence index starts at 1")
        if i <= 2:
            return 0
        return self.alpha ** (i - 3)

    def check_exploding(self, n: int) -> bool:
        ys = [self.y(i) for i in range(1, n + 2)]
        return all(ys[i + 1] > 2 * ys[i] + ys[i - 1] for i in range(1, n))


@dataclass(frozen=True)
class PointSet:
    """H_n with exact integer (or rational) coordinates."""

    n: int
    coords: dict = field(compare=False)  # canonical label -> (x, y)

    @property
    def size(self) -> int:
        return len(self.coords)

    def labels(self) -> list[Label]:
        return list(self.coords)

    def point(self, label: Label):
        return self.coords[canon(label)]

    def p(self, i: int):
        return self.coords[canon(("p", i))]

    def q(self, i: int):
        return self.coords[canon(("q", i))]


def build_Hn(n: int, alpha: int = 3) -> PointSet:
    """Construct H_n; raises on n < 2 or a non-exploding parameter."""
    if n < 2:
        raise InputError("H_n needs n >= 2")
    seq = ExplodingSequence(alpha)
    if not seq.check_exploding(n):
        raise InputError("sequence fails the exploding inequality")
    coords = {}
    for i in range(1, n + 1):
        coords[("p", i)] = (i, seq.y(i))
        if i >= 3:
            coords[("q", i)] = (i, -seq.y(i))
    return PointSet(n=n, coords=coords)


def from_sequences(xs: list, ys: list) -> PointSet:
    """Build a double chain from explicit coordinates, admitting it only if
    the order type matches the canonical one (zero violations)."""
    if len(xs) != len(ys) or len(xs) < 2:
        raise InputError("need matching x/y sequences of length >= 2")
    if ys[0] != 0 or ys[1] != 0:
        raise InputError("y_1 and y_2 must be 0")
    n = len(xs)
    coords = {}
    for i in range(1, n + 1):
        coords[("p", i)] = (xs[i - 1], ys[i - 1])
        if i >= 3:
            coords[("q", i)] = (xs[i - 1], -ys[i - 1])
    ps = PointSet(n=n, coords=coords)
    report = verify_order_type(ps)
    if report.violations:
        raise InputError(
            f"sequence does not realize the exploding order type "
            f"({len(report.violations)} violations)"
        )
    return ps


def right_halfplane(a, b, c) -> str:
    """Side of point c relative to the directed line a->b ('left'/'right'/'on')."""
    return side_of_line(a, b, c)


def _base_case_set(i: int, j: int, n: int) -> set:
    """The displayed case formula for H(p_i, q_j), restricted to H_n."""
    out: set = set()
    if i > j:
        out |= {canon(("p", k)) for k in range(1, n + 1) if k <= j or k > i}
        out |= {canon(("q", l)) for l in range(1, n + 1) if l < j}
    elif i == j:
        out |= {canon(("p", k)) for k in range(1, i)}
        out |= {canon(("q", l)) for l in range(1, i)}
    else:
        out |= {canon(("p", k)) for k in range(1, i)}
        out |= {canon(("q", l)) for l in range(1, n + 1) if l <= i or l > j}
    return out


def predicted_halfplane(a: Label, b: Label, n: int) -> set:
    """Predicted H(a, b) per the case formulas, with self-listings removed.

    a, b are role labels (not necessarily canonical); the result is a set of
    canonical labels excluding the two defining points.
    """
    ka, ia = a
    kb, ib = b
    universe = {canon(("p", k)) for k in range(1, n + 1)} | {
        canon(("q", k)) for k in range(3, n + 1)
    }
    defining = {canon(a), canon(b)}
    if ka == "p" and kb == "q":
        out = _base_case_set(ia, ib, n)
    elif ka == "q" and kb == "q":
        if ia < ib:
            out = _base_case_set(ia, ib, n) - {canon(("q", ia))}
        else:
            # mirror of the complement of H(p_i, p_j) with i > j
            pp = _base_case_set(ia, ib, n) - {canon(("p", ib))}
            pp_def = {canon(("p", ia)), canon(("p", ib))}
            out = {mirror(c) for c in universe - pp - pp_def}
    elif ka == "p" and kb == "p":
        if ia > ib:
            out = _base_case_set(ia, ib, n) - {canon(("p", ib))}
        else:
            # mirror of the complement of H(q_i, q_j) with i < j
            qq = _base_case_set(ia, ib, n) - {canon(("q", ia))}
            qq_def = {canon(("q", ia)), canon(("q", ib))}
            out = {mirror(c) for c in universe - qq - qq_def}
    else:  # ('q', i), ('p', j): open left half-plane of (p_j, q_i)
        base = _base_case_set(ib, ia, n)
        base_def = {canon(("p", ib)), canon(("q", ia))}
        out = universe - base - base_def
    return out - defining


@dataclass
class OrderTypeReport:
    n: int
    pairs_checked: int
    violations: list

    @property
    def ok(self) -> bool:
        return not self.violations


def _interpretations(label: Label) -> list[Label]:
    kind, i = label
    if i <= 2:
        return [("p", i), ("q", i)]
    return [label]


def verify_order_type(ps: PointSet) -> OrderTypeReport:
    """Check every ordered pair of distinct points of H_n against the case
    formulas.  Points with index <= 2 are checked under both of their names;
    a violation records the pair and the symmetric difference."""
    n = ps.n
    labels = ps.labels()
    violations = []
    pairs = 0
    for a in labels:
        pa = ps.coords[a]
        for b in labels:
            if a == b:
                continue
            pb = ps.coords[b]
            computed = {
                c
                for c in labels
                if c != a and c != b and orientation(pa, pb, ps.coords[c]) == RIGHT
            }
            for ra in _interpretations(a):
                for rb in _interpretations(b):
                    pairs += 1
                    predicted = predicted_halfplane(ra, rb, n)
                    if predicted != computed:
                        violations.append(
                            {
                                "pair": (ra, rb),
                                "missing": sorted(predicted - computed),
                                "extra": sorted(computed - predicted),
                            }
                        )
    return OrderTypeReport(n=n, pairs_checked=pairs, violations=violations)
